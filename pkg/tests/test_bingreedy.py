import math
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pliable import Instance, InstanceError, Matrix, complete, encode, random_instance, sort_messages, verify
from pliable._greedy import SUBVECTORS, group_index, make_grouping, pair_decoded, pair_satisfied
from pliable.decoding import decodable_set
from pliable.field import rank


def test_sort_five_client(five_client):
    s = sort_messages(five_client)
    assert s.order == (1, 2, 3, 4)
    assert [s.effective_degree[j] for j in s.order] == [3, 2, 0, 0]
    assert s.effective_clients[1] == {1, 2, 4}
    assert s.effective_clients[2] == {3, 5}


def test_sort_forced_prefix(five_client):
    s = sort_messages(five_client, order=[2, 4])
    assert s.order == (2, 4, 1, 3)
    assert [s.effective_degree[j] for j in s.order] == [3, 1, 1, 0]
    assert s.effective_clients[2] == {1, 3, 5}
    assert s.effective_clients[4] == {4}
    assert s.effective_clients[1] == {2}


def test_sort_single():
    s = sort_messages(Instance.from_sets(1, [{1}]))
    assert s.effective_degree == {1: 1}


def test_encode_five_client(five_client):
    res = encode(five_client)
    assert len(res.rounds) == 1
    assert [g.messages for g in res.rounds[0].groups] == [(1, 2)]
    assert res.raw_len == 2 and res.reduced_len == 2
    assert res.code.data == ((1, 0, 0, 0), (0, 1, 0, 0))
    assert verify(res.code, five_client).all_satisfied


def test_encode_single_client():
    res = encode(Instance.from_sets(1, [{1}]))
    assert res.reduced_len == 1
    assert res.reduced.column(0) != (0,)


@pytest.mark.parametrize("m", range(2, 9))
def test_complete_instances_reach_m(m):
    res = encode(complete(m))
    assert res.reduced_len == m
    assert verify(res.reduced, complete(m)).all_satisfied


def test_rejects_t_and_bad_instances():
    with pytest.raises(InstanceError):
        encode(Instance.from_sets(3, [{1, 2}], t=2))
    with pytest.raises(InstanceError):
        encode(Instance(3, (frozenset(),), 1))


def test_pair_rule_matches_rank_criterion():
    # every multiset of at most 4 sub-vector types, as a 2-row code
    for counts in product(range(4), repeat=3):
        if not sum(counts):
            continue
        cols = [v for k, c in enumerate(counts) for v in [SUBVECTORS[k]] * c]
        A = Matrix.from_columns(cols, 2, rows=2)
        D = decodable_set(A, range(1, len(cols) + 1))
        assert pair_satisfied(counts) == bool(D)
        members, pos = ([], [], []), 1
        for k, c in enumerate(counts):
            members[k].extend(range(pos, pos + c))
            pos += c
        d = pair_decoded(members)
        assert (d is None) == (not D)
        if D:
            assert d == min(D)


@pytest.mark.parametrize("base", [1, 5, 8, 13, 64])
def test_group_index_is_dyadic(base):
    for v in range(1, base + 1):
        s = group_index(v, base)
        assert base / 2**s < v <= base / 2 ** (s - 1)


def _check_logs(inst, res):
    n_total = set(range(1, inst.n + 1))
    seen = set()
    for rnd in res.rounds:
        active = set(rnd.active)
        # effective clients partition the active clients
        parts = [set(c) for c in rnd.effective_clients.values()]
        assert sum(map(len, parts)) == len(set().union(*parts)) == len(active)
        vals = [rnd.value[j] for j in rnd.order]
        assert vals == sorted(vals, reverse=True)
        for g in rnd.groups:
            for j in g.messages:
                assert g.scale / 2 < rnd.value[j] <= g.scale
            # at least a third of the group's effective clients end satisfied
            assert len(g.sat) >= math.ceil(len(g.clients) / 3)
            for st in g.steps:
                assert st.scores[SUBVECTORS.index(st.choice)] == max(st.scores)
            for i, j in g.decoded.items():
                assert j in inst.requests[i - 1]
            seen |= set(g.sat)
    assert seen == n_total


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 12), st.integers(1, 60), st.floats(0.05, 0.9), st.integers(0, 2**31))
def test_encode_random_end_to_end(m, n, p, seed):
    inst = random_instance(m, n, p, seed)
    res = encode(inst)
    assert verify(res.code, inst).all_satisfied
    assert verify(res.reduced, inst).all_satisfied
    assert res.reduced_len == rank(res.code) <= res.raw_len
    if n >= 2:
        assert res.raw_len <= 2 / math.log2(1.5) * math.log2(n) ** 2
    _check_logs(inst, res)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 10), st.integers(1, 40), st.floats(0.1, 0.9), st.integers(0, 2**31))
def test_relaxed_variant_also_valid(m, n, p, seed):
    inst = random_instance(m, n, p, seed)
    res = encode(inst, relaxed_unsat=True)
    assert res.relaxed
    assert verify(res.code, inst).all_satisfied
    for rnd in res.rounds:
        for g in rnd.groups:
            assert len(g.sat) >= math.ceil(len(g.clients) / 3)
            assert not any(st.to_sat for st in g.steps)


def test_encode_deterministic():
    inst = random_instance(20, 100, 0.3, seed=5)
    assert encode(inst).code == encode(inst).code


def test_log_dict_is_json():
    import json

    inst = random_instance(8, 30, 0.3, seed=1)
    json.dumps(encode(inst).log_dict())


def test_grouping_overflow_split():
    from pliable._greedy import SortResult

    s = SortResult((1, 2, 3), {1: 16, 2: 3, 3: 1}, {1: frozenset(), 2: frozenset(), 3: frozenset()})
    g = make_grouping(s, 4)
    assert g.S == 2 and g.groups == {1: (1,)} and g.overflow == (2, 3)
