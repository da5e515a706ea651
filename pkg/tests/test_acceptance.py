"""Acceptance criteria, one test each. Every test prints a single
``[ACCEPT n] PASS|FAIL`` line (visible in ``pytest -v`` output) before asserting."""

import math
import time
from itertools import combinations

import numpy as np
import pytest

from _brute import brute_decodable, brute_vector_decodable
from pliable import (
    Instance,
    Matrix,
    SuiteSpec,
    VectorCode,
    complete,
    constant_weight_code,
    decodable_set,
    encode,
    encode_t,
    field_size_instance,
    lower_bound,
    minrank_fit,
    optimal_code_length,
    random_instance,
    rows_to_csv,
    run_benchmark,
    vector_decodable_set,
    verify,
)
from pliable.cli import main

FIVE_CLIENT = [{1, 2}, {1, 3}, {2, 3}, {1, 3, 4}, {2, 4}]


@pytest.fixture
def report(capsys):
    def emit(num, ok, detail, started):
        with capsys.disabled():
            print(f"\n[ACCEPT {num:>2}] {'PASS' if ok else 'FAIL'} {detail} ({time.perf_counter() - started:.1f}s)")
        assert ok, detail

    return emit


def test_01_worked_decoding_example(report):
    t0 = time.perf_counter()
    inst = Instance.from_sets(4, FIVE_CLIENT)
    A = Matrix.from_rows([[1, 1, 0, 0], [1, 0, 1, 1]])
    D = decodable_set(A, inst.requests[3])
    report(1, D == {1}, f"client 4 decodes {sorted(D)}, expected [1]", t0)


def test_02_complete_instance_optimum(report):
    t0 = time.perf_counter()
    got = {m: optimal_code_length(complete(m), q=2).length for m in (2, 3, 4)}
    ok = all(k == m for m, k in got.items()) and time.perf_counter() - t0 < 30
    report(2, ok, f"K* by m: {got}", t0)


def test_03_bingreedy_complete(report):
    t0 = time.perf_counter()
    got = {m: encode(complete(m)).reduced_len for m in range(2, 9)}
    ok = all(k == m for m, k in got.items()) and time.perf_counter() - t0 < 5
    report(3, ok, f"reduced_len by m: {got}", t0)


def test_04_field_size_fixture(report):
    t0 = time.perf_counter()
    inst = field_size_instance(4)
    k3 = optimal_code_length(inst, q=3).length
    k2 = optimal_code_length(inst, q=2).length
    code = Matrix.from_rows([[1, 1, 0, 1], [0, 1, 1, 2]], q=3)
    witness = verify(code, inst).all_satisfied
    ok = k3 == 2 and k2 == 3 and witness and time.perf_counter() - t0 < 10
    report(4, ok, f"K*(q=3)={k3}, K*(q=2)={k2}, two-row ternary code valid={witness}", t0)


N_SCALING = (64, 128, 256, 512)


@pytest.fixture(scope="module")
def scaling_runs():
    t0 = time.perf_counter()
    runs = []
    for n in N_SCALING:
        m = math.ceil(n**0.75)
        for seed in range(100):
            inst = random_instance(m, n, 0.3, seed)
            runs.append((inst, encode(inst)))
    return runs, time.perf_counter() - t0


def test_05_single_request_length_bound(report, scaling_runs):
    t0 = time.perf_counter()
    runs, elapsed = scaling_runs
    bad = []
    worst = 0.0
    for inst, res in runs:
        bound = 2 / math.log2(1.5) * math.log2(inst.n) ** 2
        worst = max(worst, res.raw_len / bound)
        if not verify(res.code, inst).all_satisfied or res.raw_len > bound:
            bad.append((inst.n, res.raw_len))
    ok = not bad and len(runs) == 400 and elapsed < 300
    report(5, ok, f"{len(runs)} runs, violations={len(bad)}, max raw_len/bound={worst:.3f}", t0 - elapsed)


def test_06_third_of_group_satisfied(report, scaling_runs):
    t0 = time.perf_counter()
    runs, _ = scaling_runs
    groups = bad = 0
    for _, res in runs:
        for rnd in res.rounds:
            for g in rnd.groups:
                groups += 1
                bad += len(g.sat) < math.ceil(len(g.clients) / 3)
    report(6, bad == 0, f"{groups} groups checked, violations={bad}", t0)


def test_07_optimality_gap(report):
    t0 = time.perf_counter()
    rows = run_benchmark(SuiteSpec("gap", seed=2024, trials=10, ns=(12,), ms=(4, 5, 6), p=0.3))
    per_m = {}
    for r in rows:
        per_m.setdefault(r.m, []).append(r.gap)
    gaps = [g for v in per_m.values() for g in v]
    complete_rows = all(g is not None for g in gaps) and all(len(v) == 10 for v in per_m.values())
    ok = complete_rows and all(
        0 <= np.mean(v) <= 3 and max(v) <= 4 and min(v) >= 0 for v in per_m.values()
    ) and time.perf_counter() - t0 < 600
    summary = {m: (round(float(np.mean(v)), 2), max(v)) for m, v in per_m.items()}
    report(7, ok, f"(avg gap, max gap) by m: {summary}", t0)


@pytest.fixture(scope="module")
def t_runs():
    runs = []
    for t in (2, 5):
        for seed in range(50):
            n = 128
            inst = random_instance(math.ceil(n**0.75), n, 0.3, 10_000 + seed, t)
            runs.append((inst, encode_t(inst)))
    return runs


def test_08_t_request_length_bound_and_t1_equivalence(report, t_runs):
    t0 = time.perf_counter()
    bad = 0
    for inst, res in t_runs:
        n, t = inst.n, inst.t
        bound = 2 * math.ceil(math.log2(n)) * math.ceil((t + math.log2(n)) / math.log2(12 / 11))
        rep = verify(res.code, inst)
        exact = all(len(d) == t for d in res.decoded)
        bad += not (rep.all_satisfied and exact and res.raw_len <= bound)
    same = 0
    for seed in range(50):
        inst = random_instance(38, 128, 0.3, 20_000 + seed)
        same += encode_t(inst).code.to_json() == encode(inst).code.to_json()
    ok = bad == 0 and same == 50
    report(8, ok, f"t in (2,5): {len(t_runs)} runs, violations={bad}; t=1 byte-identical {same}/50", t0)


def test_09_weight_decay(report, t_runs):
    t0 = time.perf_counter()
    rounds = bad = 0
    worst = 0.0
    for _, res in t_runs:
        for rnd in res.rounds:
            rounds += 1
            ratio = rnd.weight_after / rnd.weight_before
            worst = max(worst, ratio)
            bad += ratio > 11 / 12
    report(9, bad == 0, f"{rounds} rounds, violations={bad}, worst ratio={worst:.3f}", t0)


def _all_small_instances():
    for m in (1, 2, 3):
        subsets = [frozenset(c) for k in range(1, m + 1) for c in combinations(range(1, m + 1), k)]
        for n in range(1, 5):
            for reqs in combinations(subsets, n):
                yield Instance(m, reqs, 1)


def test_10_minrank_equals_optimum(report):
    t0 = time.perf_counter()
    cases = list(_all_small_instances())
    rng = np.random.default_rng(10)
    for _ in range(50):
        m = int(rng.integers(1, 5))
        n = int(rng.integers(1, 6))
        reqs = []
        for _ in range(n):
            row = rng.random(m) < 0.5
            if not row.any():
                row[rng.integers(m)] = True
            reqs.append(frozenset(int(j) + 1 for j in np.flatnonzero(row)))
        cases.append(Instance(m, tuple(reqs), 1))
    mismatch = [c for c in cases if minrank_fit(c, 2) != optimal_code_length(c, 2).length]
    ok = not mismatch and time.perf_counter() - t0 < 300
    report(10, ok, f"{len(cases)} instances, mismatches={len(mismatch)}", t0)


def test_11_criterion_vs_enumeration(report):
    t0 = time.perf_counter()
    rng = np.random.default_rng(11)
    bad_s = bad_v = 0
    for _ in range(500):
        q = int(rng.choice([2, 3]))
        K, m = int(rng.integers(1, 5)), int(rng.integers(1, 5))
        A = Matrix.from_array(rng.integers(0, q, size=(K, m)), q)
        R = {int(j) + 1 for j in rng.choice(m, size=int(rng.integers(1, m + 1)), replace=False)}
        bad_s += decodable_set(A, R) != brute_decodable(A, R)
    for _ in range(200):
        L, m, K = int(rng.integers(1, 3)), int(rng.integers(1, 4)), int(rng.integers(1, 5))
        base = Matrix.from_array(rng.integers(0, 2, size=(K, m * L)))
        R = {int(j) + 1 for j in rng.choice(m, size=int(rng.integers(1, m + 1)), replace=False)}
        bad_v += vector_decodable_set(VectorCode(base, L), R) != brute_vector_decodable(base, L, R)
    ok = bad_s == 0 and bad_v == 0 and time.perf_counter() - t0 < 120
    report(11, ok, f"scalar mismatches={bad_s}/500, vector mismatches={bad_v}/200", t0)


def test_12_random_graph_sandwich(report):
    t0 = time.perf_counter()
    n, p, m = 256, 0.5, 128
    code = constant_weight_code(m, n, p)
    floor = math.ceil(lower_bound(n, p))
    covered = above = 0
    for seed in range(100):
        inst = random_instance(m, n, p, 30_000 + seed)
        covered += verify(code, inst).all_satisfied
        above += encode(inst).reduced_len >= floor
    ok = code.rows == 37 and floor == 2 and covered >= 95 and above >= 95 and time.perf_counter() - t0 < 180
    report(12, ok, f"constant-weight ({code.rows} rows) satisfied {covered}/100; "
                   f"greedy reduced_len >= {floor} in {above}/100", t0)


def test_13_determinism(report, tmp_path):
    t0 = time.perf_counter()
    suites = {
        "scaling": ["--ns", "64,128"],
        "gap": ["--ms", "4,5"],
        "trequests": ["--ns", "64", "--ts", "2,3", "--n", "64"],
        "bounds": ["--ns", "128"],
        "custom": ["--kind", "random", "--m", "10", "--n", "40", "--p", "0.3"],
    }
    same = {}
    for suite, extra in suites.items():
        outs = []
        for k in range(2):
            path = tmp_path / f"{suite}{k}.csv"
            code = main(["bench", "--suite", suite, "--seed", "99", "--trials", "3", "--out", str(path), *extra])
            outs.append((code, path.read_bytes()))
        same[suite] = outs[0] == outs[1] and outs[0][0] == 0 and outs[0][1].count(b"\n") > 1
    spec = SuiteSpec("scaling", seed=5, trials=2, ns=(64,))
    same["library"] = rows_to_csv(run_benchmark(spec)) == rows_to_csv(run_benchmark(spec))
    report(13, all(same.values()), f"byte-identical: {same}", t0)
