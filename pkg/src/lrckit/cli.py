"""Command-line front end.

Subcommands: construct, encode, decode, simulate, analyze, verify.  Exit
codes follow a scriptable contract: 0 success, 1 usage error, 2 domain
error (construction/decoding/validation), 3 verification failure.  Every
randomized operation takes an explicit --seed, so runs are replayable.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .errors import LrckitError
from .evalset import Codeword, PairSet
from .inner import make_explicit_code, make_mds_code
from .lrc2 import LrcCode, build_lrc2, encode2, decode_global2, params_report2
from .lrc3 import Lrc3Code, build_lrc3, encode3, decode_global3, params_report3
from .rm import RMCode, code_report
from .gf import PrimeField
from . import sim, specio

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_VERIFY = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _emit(doc, out: str | None) -> None:
    text = json.dumps(doc, indent=2)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _default_rows(kind: int, q: int, n: int, m: int) -> list[tuple[int, ...]]:
    """Deterministic inner-code geometry per kind.

    kind 2: identity prefix plus (1, a, ..., a^(m-1)) tails, the systematic
    shape.  kind 3: constant-free Vandermonde (a, ..., a^m), which keeps
    the affine extension full rank for the derivative decoder.
    """
    if kind == 3:
        return list(make_mds_code(q, n, m, constant_free=True).rows)
    rows = [tuple(1 if i == j else 0 for j in range(m)) for i in range(m)]
    for a in range(1, n - m + 1):
        rows.append(tuple(pow(a, e, q) for e in range(m)))
    return rows


def _pair_set(spec: str, universe: int) -> PairSet:
    if spec == "chain":
        return PairSet.chain(universe)
    if spec == "all":
        return PairSet.all_pairs(universe)
    try:
        pairs = json.loads(spec)
    except json.JSONDecodeError:
        raise LrckitError(
            f"--pairs must be 'chain', 'all', or a JSON pair list, got {spec!r}"
        )
    return PairSet.of(pairs)


def _cmd_construct(args) -> int:
    q, n, m = args.q, args.n, args.m
    if args.rows:
        rows = [tuple(r) for r in json.loads(args.rows)]
    else:
        rows = _default_rows(args.kind, q, n, m)
    inner = make_explicit_code(q, rows)
    if args.kind == 2:
        pair_set = _pair_set(args.pairs, n)
        code = build_lrc2(inner, pair_set, args.L,
                          allow_uncovered=args.allow_uncovered)
        report = params_report2(code)
    else:
        universe = n
        if args.case == "B":
            provisional = build_lrc3(inner, PairSet.of([(1, 2)]), args.L,
                                     case="B", allow_uncovered=True)
            universe = provisional.sum_set.size
        pair_set = _pair_set(args.pairs, universe)
        code = build_lrc3(inner, pair_set, args.L, case=args.case,
                          allow_uncovered=args.allow_uncovered)
        report = params_report3(code)
    specio.save_code(code, args.out)
    _emit(report, None)
    return EXIT_OK


def _parse_data(args, K: int, q: int) -> list[int]:
    given = [x is not None for x in (args.data, args.data_file)].count(True)
    if args.random_data:
        given += 1
    if given != 1:
        raise LrckitError("pass exactly one of --data, --data-file, --random-data")
    if args.data is not None:
        vals = [int(x) for x in args.data.split(",")]
    elif args.data_file is not None:
        vals = json.loads(Path(args.data_file).read_text())
    else:
        rng = random.Random(args.seed)
        vals = [rng.randrange(q) for _ in range(K)]
    if len(vals) != K:
        raise LrckitError(f"data length {len(vals)} != K={K}")
    return [int(v) % q for v in vals]


def _cmd_encode(args) -> int:
    code = specio.load_code(args.spec)
    data = _parse_data(args, code.K, code.field.q)
    cw = encode3(code, data) if isinstance(code, Lrc3Code) else encode2(code, data)
    specio.save_codeword(cw.symbols, args.out)
    print(f"wrote {len(cw.symbols)} symbols to {args.out}")
    return EXIT_OK


def _cmd_decode(args) -> int:
    code = specio.load_code(args.spec)
    received = specio.load_codeword(args.codeword)
    if isinstance(code, Lrc3Code):
        block = received[: code.sum_set.size]
        if len(block) < code.sum_set.size:
            raise LrckitError("codeword file shorter than the sumset block")
        res = decode_global3(code, block, mode=args.mode)
    else:
        res = decode_global2(code, received)
    doc = {"message": list(res.message), "read_nodes": list(res.read_nodes)}
    _emit(doc, args.out)
    return EXIT_OK


def _load_scenario(args) -> list[dict]:
    given = [x is not None for x in
             (args.fail, args.random_failures, args.scenario)].count(True)
    if given != 1:
        raise LrckitError(
            "pass exactly one of --fail, --random-failures, --scenario")
    if args.fail is not None:
        return [{"fail": [int(x) for x in args.fail.split(",")]},
                {"repair": "auto"}]
    if args.random_failures is not None:
        return [{"fail": {"count": args.random_failures, "seed": args.seed}},
                {"repair": "auto"}]
    doc = json.loads(Path(args.scenario).read_text())
    events = doc.get("events") if isinstance(doc, dict) else doc
    if not isinstance(events, list):
        raise LrckitError("scenario must be a JSON list or {'events': [...]}")
    return events


def _cmd_simulate(args) -> int:
    code = specio.load_code(args.spec)
    received = specio.load_codeword(args.codeword)
    cluster = sim.place(code, Codeword(tuple(received)))
    for event in _load_scenario(args):
        if "fail" in event:
            spec = event["fail"]
            if isinstance(spec, dict):
                sim.inject_failures(cluster, count=int(spec["count"]),
                                    seed=spec.get("seed"))
            else:
                sim.inject_failures(cluster, nodes=[int(x) for x in spec])
        elif "repair" in event:
            sim.auto_repair(cluster, strict=args.strict)
        else:
            raise LrckitError(f"unknown scenario event {event!r}")
    report = sim.stats_report(cluster)
    report["history"] = [e.as_dict() for e in cluster.history]
    _emit(report, args.out)
    return EXIT_OK


def _cmd_analyze(args) -> int:
    if args.rm:
        if None in (args.q, args.m, args.u):
            raise LrckitError("--rm needs --q, --m and --u")
        field = PrimeField(args.q)
        _emit(code_report(RMCode(field, args.m, args.u),
                          brute_force=args.brute_force), args.out)
        return EXIT_OK
    if not args.spec:
        raise LrckitError("pass --spec FILE or --rm with --q/--m/--u")
    code = specio.load_code(args.spec)
    if isinstance(code, Lrc3Code):
        report = params_report3(code, probe_trials=args.probe_trials,
                                seed=args.seed or 0)
    else:
        report = params_report2(code)
    _emit(report, args.out)
    return EXIT_OK


def _verify_codeword(code, received) -> list[str]:
    """Line-consistency check: every registered line must restrict to a
    polynomial of degree below the locality."""
    from .evalset import interpolate_line_value

    problems = []
    if len(received) != code.n_nodes:
        return [f"length {len(received)} != node count {code.n_nodes}"]
    r = code.locality
    for li, line in enumerate(code.eval_set.lines):
        known = [(line.t_of(n), received[n - 1]) for n in line.nodes
                 if received[n - 1] is not None]
        if len(known) <= r:
            continue
        fit, rest = known[:r], known[r:]
        for t, v in rest:
            got = interpolate_line_value(code.field, fit, r - 1, t)
            if got != v % code.field.q:
                problems.append(
                    f"line {li}: symbol at t={t} is {v}, interpolation says {got}"
                )
    return problems


def _cmd_verify(args) -> int:
    if args.acceptance:
        from .acceptance import run_all

        passed, total = run_all(select=args.only)
        return EXIT_OK if passed == total else EXIT_VERIFY
    if not args.spec or not args.codeword:
        raise LrckitError("pass --acceptance, or --spec and --codeword")
    code = specio.load_code(args.spec)
    received = specio.load_codeword(args.codeword)
    problems = _verify_codeword(code, received)
    if args.data is not None:
        data = [int(x) for x in args.data.split(",")]
        cw = encode3(code, data) if isinstance(code, Lrc3Code) else encode2(code, data)
        if list(cw.symbols) != [v % code.field.q for v in received]:
            problems.append("codeword does not match the given data")
    if problems:
        for p in problems:
            print(f"FAIL {p}")
        return EXIT_VERIFY
    print("OK codeword is consistent")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="lrckit",
                     description="locally repairable polynomial-evaluation codes")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a code and write its spec file")
    c.add_argument("--kind", type=int, choices=(2, 3), required=True)
    c.add_argument("--q", type=int, required=True)
    c.add_argument("--n", type=int, required=True, help="inner code length N")
    c.add_argument("--m", type=int, required=True, help="inner code dimension")
    c.add_argument("--L", type=int, required=True, help="extension points per line")
    c.add_argument("--pairs", default="chain",
                   help="'chain', 'all', or JSON [[i,j],...] (1-based)")
    c.add_argument("--case", choices=("A", "B"), default="A")
    c.add_argument("--rows", help="JSON row points overriding the default inner code")
    c.add_argument("--allow-uncovered", action="store_true")
    c.add_argument("--seed", type=int, default=None)
    c.add_argument("--out", required=True)
    c.set_defaults(func=_cmd_construct)

    e = sub.add_parser("encode", help="encode data with a spec file")
    e.add_argument("--spec", required=True)
    e.add_argument("--data", help="comma-separated symbols, length K")
    e.add_argument("--data-file", help="JSON array of symbols")
    e.add_argument("--random-data", action="store_true")
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--out", required=True)
    e.set_defaults(func=_cmd_encode)

    d = sub.add_parser("decode", help="recover data from a (damaged) codeword")
    d.add_argument("--spec", required=True)
    d.add_argument("--codeword", required=True, help="JSON array, null = erasure")
    d.add_argument("--mode", choices=("spanning", "all-pairs"), default="spanning")
    d.add_argument("--out")
    d.set_defaults(func=_cmd_decode)

    s = sub.add_parser("simulate", help="replay failures and repairs on a cluster")
    s.add_argument("--spec", required=True)
    s.add_argument("--codeword", required=True)
    s.add_argument("--fail", help="comma-separated node list")
    s.add_argument("--random-failures", type=int)
    s.add_argument("--scenario", help="JSON scenario file")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--strict", action="store_true",
                   help="error out when nodes are unrecoverable")
    s.add_argument("--out")
    s.set_defaults(func=_cmd_simulate)

    a = sub.add_parser("analyze", help="rate/distance report for a spec or an RM code")
    a.add_argument("--spec")
    a.add_argument("--rm", action="store_true", help="analyze a full-length RM code")
    a.add_argument("--q", type=int)
    a.add_argument("--m", type=int)
    a.add_argument("--u", type=int)
    a.add_argument("--brute-force", action="store_true")
    a.add_argument("--probe-trials", type=int, default=0)
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--out")
    a.set_defaults(func=_cmd_analyze)

    v = sub.add_parser("verify", help="check a codeword file or run the acceptance suite")
    v.add_argument("--acceptance", action="store_true")
    v.add_argument("--only", help="comma-separated criterion numbers")
    v.add_argument("--spec")
    v.add_argument("--codeword")
    v.add_argument("--data", help="expected data symbols, comma-separated")
    v.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except LrckitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
