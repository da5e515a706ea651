"""Binary greedy encoder for single-request pliable index coding.

Each round sorts messages by effective degree (peeling off the clients of the
highest-degree message), groups messages whose effective degrees lie within a
factor of two of each other, and spends two binary transmissions per group.
Inside a group, messages are visited in sorted order and each gets the
sub-vector (1,0), (0,1) or (1,1) that keeps the most visited clients
decodable. Clients that can decode at the end of their group leave.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from ._greedy import (
    SUBVECTORS,
    EncodeResult,
    EncodingError,
    GroupLog,
    Grouping,
    RoundLog,
    SortResult,
    StepLog,
    bits,
    make_grouping,
    pair_decoded,
    pair_satisfied,
)
from .field import Matrix
from .instances import Instance, InstanceError, errors

__all__ = ["encode", "sort_messages", "group_messages", "SortResult", "Grouping", "EncodeResult"]


def _neighbor_masks(inst: Instance) -> list[int]:
    masks = [0] * (inst.m + 1)
    for i, R in enumerate(inst.requests):
        for j in R:
            masks[j] |= 1 << i
    return masks


def _to_mask(clients: Iterable[int]) -> int:
    mask = 0
    for i in clients:
        mask |= 1 << (i - 1)
    return mask


def _peel(masks: Sequence[int], messages: Sequence[int], remaining: int, prefix: Sequence[int] = ()) -> SortResult:
    order: list[int] = []
    value: dict[int, int] = {}
    eff: dict[int, frozenset[int]] = {}
    unpicked = [j for j in messages if j not in set(prefix)]

    def take(j):
        nonlocal remaining
        hit = masks[j] & remaining
        order.append(j)
        value[j] = hit.bit_count()
        eff[j] = frozenset(bits(hit))
        remaining &= ~hit

    for j in prefix:
        take(j)
    while unpicked:
        best, best_deg = None, 0
        for j in unpicked:
            d = (masks[j] & remaining).bit_count()
            if d > best_deg:
                best, best_deg = j, d
        if best is None:
            for j in unpicked:
                take(j)
            break
        unpicked.remove(best)
        take(best)
    return SortResult(tuple(order), value, eff)


def sort_messages(
    inst: Instance, active_clients: Iterable[int] | None = None, order: Sequence[int] = ()
) -> SortResult:
    """Effective degrees under the peeling order restricted to ``active_clients``.

    Repeatedly takes the message with the most not-yet-covered active
    neighbours (ties to the lowest index). A forced ``order`` prefix is taken
    first, as given, before peeling resumes.
    """
    active = _to_mask(range(1, inst.n + 1) if active_clients is None else active_clients)
    return _peel(_neighbor_masks(inst), range(1, inst.m + 1), active, order)


def group_messages(sort: SortResult, n_active: int) -> Grouping:
    """Dyadic groups relative to the largest effective degree."""
    return make_grouping(sort, n_active)


def _code_group(
    s: int,
    msgs: Sequence[int],
    sort: SortResult,
    masks: Sequence[int],
    base: int,
    relaxed: bool,
) -> GroupLog:
    n_s = 0
    for j in msgs:
        n_s |= _to_mask(sort.effective_clients[j])
    log = GroupLog(s, tuple(msgs), bits(n_s), base / 2 ** (s - 1))
    counts: dict[int, list[int]] = {}
    members: dict[int, tuple[list[int], list[int], list[int]]] = {}
    in_sat: dict[int, bool] = {}

    for j in msgs:
        added = sorted(sort.effective_clients[j])
        visited = [i for i in bits(masks[j] & n_s) if i in in_sat]
        pool = [i for i in visited if in_sat[i]] if relaxed else visited
        scores = []
        for k in range(3):
            score = 0
            for i in pool:
                c = counts[i]
                c[k] += 1
                score += pair_satisfied(c)
                c[k] -= 1
            scores.append(score)
        choice = max(range(3), key=lambda k: (scores[k], -k))
        to_unsat, to_sat = [], []
        for i in visited:
            counts[i][choice] += 1
            members[i][choice].append(j)
            ok = pair_satisfied(counts[i])
            if in_sat[i] and not ok:
                in_sat[i] = False
                to_unsat.append(i)
            elif not in_sat[i] and ok and not relaxed:
                in_sat[i] = True
                to_sat.append(i)
        for i in added:
            counts[i] = [0, 0, 0]
            counts[i][choice] = 1
            members[i] = ([], [], [])
            members[i][choice].append(j)
            in_sat[i] = True
        log.steps.append(
            StepLog(j, SUBVECTORS[choice], tuple(scores), added, to_unsat, to_sat,
                    float(len(to_unsat)), sum(in_sat.values()))
        )

    log.sat = sorted(i for i, ok in in_sat.items() if ok)
    for i in log.sat:
        d = pair_decoded(members[i])
        if d is None:
            raise EncodingError(f"client {i} marked satisfied but decodes nothing")
        log.decoded[i] = d
    return log


def encode(inst: Instance, relaxed_unsat: bool = False) -> EncodeResult:
    """Run the binary greedy encoder until every client decodes a new message.

    ``relaxed_unsat`` keeps a client in UNSAT for the rest of its group once it
    has lost decodability, instead of letting later assignments restore it.
    """
    if inst.t != 1:
        raise InstanceError(f"encode needs t = 1 (got t={inst.t}); use encode_t")
    errs = errors(inst)
    if errs:
        raise InstanceError("; ".join(e.message for e in errs))

    m = inst.m
    masks = _neighbor_masks(inst)
    active = (1 << inst.n) - 1
    rows: list[list[int]] = []
    rounds: list[RoundLog] = []
    decoded: list[list[int]] = [[] for _ in range(inst.n)]

    while active:
        n_active = active.bit_count()
        sort = _peel(masks, range(1, m + 1), active)
        grouping = make_grouping(sort, n_active)
        if grouping.overflow:
            raise EncodingError(f"degree grouping left messages {grouping.overflow} ungrouped")
        rlog = RoundLog(
            len(rounds) + 1, bits(active), sort.order, dict(sort.value),
            {j: sorted(c) for j, c in sort.effective_clients.items()},
            grouping.base, grouping.S, [], (), float(n_active),
        )
        for s, msgs in grouping.groups.items():
            glog = _code_group(s, msgs, sort, masks, grouping.base, relaxed_unsat)
            top, bottom = [0] * m, [0] * m
            for st in glog.steps:
                top[st.message - 1], bottom[st.message - 1] = st.choice
            rows += [top, bottom]
            for i in glog.sat:
                decoded[i - 1].append(glog.decoded[i])
            active &= ~_to_mask(glog.sat)
            rlog.groups.append(glog)
        rlog.weight_after = float(active.bit_count())
        if active.bit_count() == n_active:
            raise EncodingError(f"round {rlog.index} satisfied no client")
        rounds.append(rlog)

    code = Matrix.from_rows(rows, 2, cols=m)
    return EncodeResult(code, rounds, tuple(tuple(d) for d in decoded), "bingreedy", relaxed_unsat)
