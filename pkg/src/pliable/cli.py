"""Command-line entry point.

Exit codes: 0 success, 1 verification failure, 2 invalid input,
3 infeasible oracle search.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bench import SUITES, SuiteSpec, VerificationError, rows_to_csv, run_suite
from .bingreedy import encode
from .bingreedy_t import encode_t
from .bounds import bound_report, constant_weight_code
from .decoding import verify
from .field import FieldError, Matrix
from .instances import GenSpec, Instance, InstanceError, generate, validate
from .oracle import NoCodeFound, OracleInfeasible, minrank_fit, optimal_code_length

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_INFEASIBLE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def _float_list(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x.strip()]


def _load_instance(path: str) -> Instance:
    return Instance.from_json(Path(path).read_text())


def _emit(obj, out=None) -> None:
    text = json.dumps(obj, indent=2)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def cmd_gen(a) -> int:
    spec = GenSpec(a.kind, a.m, a.n, a.p, a.t, a.seed, tuple(a.group_probs) if a.group_probs else None)
    inst = generate(spec)
    for v in validate(inst):
        print(f"{v.severity}: {v.message}", file=sys.stderr)
    Path(a.output).write_text(inst.to_json() + "\n")
    return EXIT_OK


def cmd_encode(a) -> int:
    inst = _load_instance(a.input)
    if a.alg == "bingreedy":
        res = encode(inst, relaxed_unsat=a.relaxed_unsat)
    else:
        res = encode_t(inst, relaxed_unsat=a.relaxed_unsat)
    report = verify(res.reduced, inst)
    Path(a.out).write_text(res.reduced.to_json() + "\n")
    if a.log:
        _emit(res.log_dict(), a.log)
    print(json.dumps({"alg": res.algorithm, "raw_len": res.raw_len, "reduced_len": res.reduced_len,
                      "all_satisfied": report.all_satisfied}))
    return EXIT_OK if report.all_satisfied else EXIT_VERIFY


def cmd_verify(a) -> int:
    inst = _load_instance(a.input)
    A = Matrix.from_json(Path(a.matrix).read_text())
    report = verify(A, inst)
    _emit(report.to_dict())
    return EXIT_OK if report.all_satisfied else EXIT_VERIFY


def cmd_opt(a) -> int:
    inst = _load_instance(a.input)
    res = optimal_code_length(inst, a.q, a.max_k)
    _emit({"length": res.length, "q": res.q, "examined": res.examined, "witness": res.witness.to_dict()})
    return EXIT_OK


def cmd_minrank(a) -> int:
    inst = _load_instance(a.input)
    _emit({"minrank": minrank_fit(inst, a.q), "q": a.q})
    return EXIT_OK


def cmd_bounds(a) -> int:
    report = bound_report(a.n, a.p, a.m)
    out = report.to_dict()
    if a.m is not None:
        out["constant_weight_feasible"] = a.m >= report.m_required
        if out["constant_weight_feasible"]:
            out["constant_weight_code"] = constant_weight_code(a.m, a.n, a.p).to_dict()
    _emit(out)
    return EXIT_OK


def cmd_bench(a) -> int:
    instances = tuple(_load_instance(p) for p in a.inputs or ())
    spec = SuiteSpec(
        suite=a.suite, seed=a.seed, trials=a.trials, ns=a.ns, ms=a.ms, p=a.p, t=a.t, ts=a.ts,
        n=a.n, m=a.m, kind=a.kind, include_n18=a.n18, with_opt=a.opt, timing=a.timing,
        instances=instances,
    )
    if a.n18:
        print("warning: n=18 oracle runs may take minutes per instance", file=sys.stderr)
    out = run_suite(spec)
    Path(a.out).write_text(rows_to_csv(out.rows))
    if out.summary:
        _emit(out.summary)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="pliable", description="Linear pliable index codes: build, check, benchmark.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate an instance")
    g.add_argument("--kind", required=True, choices=["random", "complete", "complete-t", "heterogeneous"])
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--n", type=int)
    g.add_argument("--p", type=float)
    g.add_argument("--t", type=int, default=1)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--group-probs", type=_float_list)
    g.add_argument("-o", "--output", required=True)
    g.set_defaults(func=cmd_gen)

    e = sub.add_parser("encode", help="run a greedy encoder")
    e.add_argument("--alg", required=True, choices=["bingreedy", "bingreedy-t"])
    e.add_argument("--in", dest="input", required=True)
    e.add_argument("--out", required=True)
    e.add_argument("--log")
    e.add_argument("--relaxed-unsat", action="store_true")
    e.set_defaults(func=cmd_encode)

    v = sub.add_parser("verify", help="check a code against an instance")
    v.add_argument("--in", dest="input", required=True)
    v.add_argument("--matrix", required=True)
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("opt", help="exhaustive optimal code length")
    o.add_argument("--in", dest="input", required=True)
    o.add_argument("--q", type=int, default=2)
    o.add_argument("--max-k", type=int)
    o.set_defaults(func=cmd_opt)

    r = sub.add_parser("minrank", help="minimum rank over fitting matrices")
    r.add_argument("--in", dest="input", required=True)
    r.add_argument("--q", type=int, default=2)
    r.set_defaults(func=cmd_minrank)

    b = sub.add_parser("bounds", help="random-graph length bounds")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--p", type=float, required=True)
    b.add_argument("--m", type=int)
    b.set_defaults(func=cmd_bounds)

    s = sub.add_parser("bench", help="run an experiment suite to CSV")
    s.add_argument("--suite", required=True, choices=SUITES)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trials", type=int, default=10)
    s.add_argument("--out", required=True)
    s.add_argument("--ns", type=_int_list, help="comma-separated client counts")
    s.add_argument("--ms", type=_int_list, help="comma-separated message counts (gap suite)")
    s.add_argument("--ts", type=_int_list, help="comma-separated t values (trequests suite)")
    s.add_argument("--p", type=float)
    s.add_argument("--t", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--m", type=int)
    s.add_argument("--kind", choices=["random", "complete", "complete-t", "heterogeneous"])
    s.add_argument("--in", dest="inputs", action="append", help="instance file (custom suite, repeatable)")
    s.add_argument("--opt", action="store_true", help="also run the oracle (custom suite)")
    s.add_argument("--n18", action="store_true", help="add n=18 to the gap suite")
    s.add_argument("--timing", action="store_true", help="fill the ms column")
    s.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (OracleInfeasible, NoCodeFound) as exc:
        print(f"oracle: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (InstanceError, FieldError, ValueError, KeyError, TypeError, OSError) as exc:
        # json.JSONDecodeError is a ValueError
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
