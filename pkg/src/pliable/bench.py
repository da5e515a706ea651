"""Desk-scale experiment suites with deterministic CSV output.

Every row derives its instance seed from ``(master seed, row index)``, so a
suite is reproducible from its parameters alone. Wall time is only written
when ``timing=True``; otherwise the ``ms`` column stays empty and repeated
runs produce byte-identical files.
"""

from __future__ import annotations

import csv
import io
import math
import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .bingreedy import encode
from .bingreedy_t import encode_t
from .bounds import bound_report, constant_weight_code
from .decoding import verify
from .instances import GenSpec, Instance, generate, random_instance
from .oracle import NoCodeFound, OracleInfeasible, optimal_code_length

__all__ = [
    "CSV_HEADER",
    "SUITES",
    "BenchRow",
    "SuiteSpec",
    "BenchOutput",
    "VerificationError",
    "derive_seed",
    "run_suite",
    "run_benchmark",
    "rows_to_csv",
]

CSV_HEADER = ("suite", "n", "m", "p", "t", "seed", "alg", "raw_len", "reduced_len", "opt_len", "gap", "ms")
SUITES = ("scaling", "gap", "trequests", "bounds", "custom")


class VerificationError(RuntimeError):
    """An encoder produced a code that leaves some client unsatisfied."""


def derive_seed(master: int, index: int) -> int:
    return int(np.random.SeedSequence([master, index]).generate_state(1, dtype=np.uint64)[0])


@dataclass
class BenchRow:
    suite: str
    n: int
    m: int
    p: float | None
    t: int
    seed: int | None
    alg: str
    raw_len: int
    reduced_len: int
    opt_len: int | None = None
    gap: int | None = None
    ms: float | None = None

    def as_tuple(self) -> tuple:
        return tuple(getattr(self, k) for k in CSV_HEADER)


@dataclass
class SuiteSpec:
    suite: str
    seed: int = 0
    trials: int = 10
    ns: Sequence[int] | None = None
    ms: Sequence[int] | None = None
    p: float | None = None
    t: int | None = None
    ts: Sequence[int] | None = None
    n: int | None = None
    m: int | None = None
    kind: str | None = None
    include_n18: bool = False
    with_opt: bool = False
    timing: bool = False
    instances: Sequence[Instance] = field(default_factory=tuple)


@dataclass
class BenchOutput:
    rows: list[BenchRow]
    summary: dict = field(default_factory=dict)


def scaling_m(n: int) -> int:
    return math.ceil(n**0.75)


class _Runner:
    def __init__(self, spec: SuiteSpec):
        self.spec = spec
        self.index = 0
        self.rows: list[BenchRow] = []

    def next_seed(self) -> int:
        s = derive_seed(self.spec.seed, self.index)
        self.index += 1
        return s

    def encode_row(self, inst: Instance, p, seed, opt: bool = False, q: int = 2) -> BenchRow:
        start = time.perf_counter()
        if inst.t == 1:
            res, alg = encode(inst), "bingreedy"
        else:
            res, alg = encode_t(inst), "bingreedy-t"
        elapsed = (time.perf_counter() - start) * 1e3
        report = verify(res.code, inst)
        if not report.all_satisfied:
            raise VerificationError(f"{alg} left clients {report.unsatisfied_clients()} unsatisfied")
        row = BenchRow(self.spec.suite, inst.n, inst.m, p, inst.t, seed, alg, res.raw_len, res.reduced_len)
        if opt:
            try:
                k = optimal_code_length(inst, q).length
            except (OracleInfeasible, NoCodeFound):
                k = None
            if k is not None:
                row.opt_len, row.gap = k, res.reduced_len - k
        if self.spec.timing:
            row.ms = round(elapsed, 3)
        self.rows.append(row)
        return row


def _scaling(r: _Runner) -> None:
    spec = r.spec
    p = 0.3 if spec.p is None else spec.p
    for n in spec.ns or (64, 128, 256, 512):
        m = scaling_m(n)
        for _ in range(spec.trials):
            seed = r.next_seed()
            r.encode_row(random_instance(m, n, p, seed), p, seed)


def _gap(r: _Runner) -> None:
    spec = r.spec
    p = 0.3 if spec.p is None else spec.p
    ns = list(spec.ns or (12,))
    if spec.include_n18 and 18 not in ns:
        ns.append(18)
    for n in ns:
        for m in spec.ms or (4, 5, 6):
            for _ in range(spec.trials):
                seed = r.next_seed()
                r.encode_row(random_instance(m, n, p, seed), p, seed, opt=True)


def _trequests(r: _Runner) -> None:
    spec = r.spec
    p = 0.3 if spec.p is None else spec.p
    t_fixed = spec.t or 5
    for n in spec.ns or (64, 128, 256):
        for _ in range(spec.trials):
            seed = r.next_seed()
            r.encode_row(random_instance(scaling_m(n), n, p, seed, t_fixed), p, seed)
    n_fixed = spec.n or 128
    for t in spec.ts or (1, 2, 5, 10):
        m = max(scaling_m(n_fixed), t)
        for _ in range(spec.trials):
            seed = r.next_seed()
            r.encode_row(random_instance(m, n_fixed, p, seed, t), p, seed)


def _bounds(r: _Runner) -> dict:
    spec = r.spec
    p = 0.5 if spec.p is None else spec.p
    summary = {"reports": []}
    for n in spec.ns or (256,):
        m = spec.m or max(scaling_m(n), bound_report(n, p).m_required)
        report = bound_report(n, p, m)
        code = constant_weight_code(m, n, p)
        covered = at_least_bound = 0
        for _ in range(spec.trials):
            seed = r.next_seed()
            inst = random_instance(m, n, p, seed)
            covered += verify(code, inst).all_satisfied
            row = r.encode_row(inst, p, seed)
            at_least_bound += row.reduced_len >= math.ceil(report.lower_bound)
        entry = report.to_dict()
        entry.update(trials=spec.trials, constant_weight_satisfied=covered,
                     bingreedy_at_least_lower_bound=at_least_bound)
        summary["reports"].append(entry)
    return summary


def _custom(r: _Runner) -> None:
    spec = r.spec
    for inst in spec.instances:
        r.encode_row(inst, None, None, opt=spec.with_opt)
    if spec.kind:
        for _ in range(spec.trials):
            seed = r.next_seed()
            gen = GenSpec(spec.kind, spec.m, spec.n, spec.p, spec.t or 1, seed)
            inst = generate(gen)
            random_kind = gen.kind.replace("-", "_") in ("random", "heterogeneous")
            r.encode_row(inst, spec.p, seed if random_kind else None, opt=spec.with_opt)


def run_suite(spec: SuiteSpec) -> BenchOutput:
    if spec.suite not in SUITES:
        raise ValueError(f"unknown suite {spec.suite!r}; choose from {SUITES}")
    runner = _Runner(spec)
    summary = {}
    if spec.suite == "scaling":
        _scaling(runner)
    elif spec.suite == "gap":
        _gap(runner)
    elif spec.suite == "trequests":
        _trequests(runner)
    elif spec.suite == "bounds":
        summary = _bounds(runner)
    else:
        _custom(runner)
    return BenchOutput(runner.rows, summary)


def run_benchmark(spec: SuiteSpec) -> list[BenchRow]:
    return run_suite(spec).rows


def _cell(x) -> str:
    return "" if x is None else str(x)


def rows_to_csv(rows: Sequence[BenchRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for row in rows:
        w.writerow([_cell(x) for x in row.as_tuple()])
    return buf.getvalue()
