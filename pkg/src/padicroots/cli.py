"""Command-line front end.

    padicroots solve -p 7 -f "-2,0,1" --seed 3 --method sjm --prec 8
    padicroots roots -p 5 -f "6,-7,1" --prec 10 --json
    padicroots verify-order --builtin sqrt2 --compare newton

Coefficients are given constant term first; ``a/b`` is accepted when b is
a p-adic unit.  Exit codes: 0 success, 1 order check outside [3.8, 4.2],
2 seed rejected, 3 precision exhausted (or real iteration underflow),
64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .errors import (
    DenominatorNotDividing,
    NonConvergence,
    PrecisionExhausted,
    SeedRejected,
    UnderflowTooFast,
)
from .padic import PadicContext
from .poly import parse_poly
from .real_reference import BUILTINS, DEFAULT_DPS, bracketed, builtin, measure_order
from .seedfinder import DEFAULT_MAX_DEPTH, find_all_roots
from .solvers import Method, RootRecord, monitor_invariants, solve

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_REJECTED = 2
EXIT_PRECISION = 3
EXIT_USAGE = 64

SLOPE_WINDOW = (3.8, 4.2)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# JSON records
# ---------------------------------------------------------------------------


def _vjson(v):
    return v.v if v.is_finite else f">={v.v}"


@dataclass
class OutputRecord:
    p: int
    method: str
    precision: int
    residue: str
    digits: list[int]
    trace: list[dict] = field(default_factory=list)
    invariants: dict = field(default_factory=dict)
    prefix: list[int] = field(default_factory=list)

    @classmethod
    def from_root(cls, rec: RootRecord, precision: int) -> OutputRecord:
        root = rec.root
        p = root.p
        report = monitor_invariants(rec.trace, rec.poly, strict=False)
        trace = [
            {
                "n": e.n,
                "x": str(e.x.value),
                "v_f": _vjson(e.v_f),
                "v_fp": e.v_fprime.v,
                "v_e": e.v_e.v if e.v_e is not None and e.v_e.is_finite else None,
            }
            for e in rec.trace.entries
        ]
        return cls(
            p=p,
            method=rec.method.value,
            precision=precision,
            residue=str(root.value % p ** precision),
            digits=root.digits(precision),
            trace=trace,
            invariants={"cond2": report.cond2, "cond3": report.cond3},
            prefix=list(rec.prefix),
        )

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "method": self.method,
            "precision": self.precision,
            "root": {"residue": self.residue, "digits": list(self.digits)},
            "trace": [dict(t) for t in self.trace],
            "invariants": dict(self.invariants),
            "prefix": list(self.prefix),
        }

    @classmethod
    def from_dict(cls, d: dict) -> OutputRecord:
        return cls(
            p=d["p"],
            method=d["method"],
            precision=d["precision"],
            residue=d["root"]["residue"],
            digits=list(d["root"]["digits"]),
            trace=[dict(t) for t in d["trace"]],
            invariants=dict(d["invariants"]),
            prefix=list(d.get("prefix", [])),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> OutputRecord:
        return cls.from_dict(json.loads(text))


def _print_record(rec: OutputRecord, out) -> None:
    print(f"root mod {rec.p}^{rec.precision} = {rec.residue}  [{rec.method}]", file=out)
    print(f"  digits (low first): {rec.digits}", file=out)
    if rec.prefix:
        print(f"  Thurston prefix: {rec.prefix}", file=out)
    print(f"  {'n':>3} {'v(f(x_n))':>10} {'v(f1(x_n))':>11} {'v(e_n)':>8}", file=out)
    for t in rec.trace:
        v_e = "-" if t["v_e"] is None else t["v_e"]
        print(f"  {t['n']:>3} {str(t['v_f']):>10} {t['v_fp']:>11} {str(v_e):>8}", file=out)
    inv = rec.invariants
    print(f"  invariants: cond2={inv['cond2']} cond3={inv['cond3']}", file=out)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _context(args) -> PadicContext:
    try:
        return PadicContext(args.p, args.prec + 16)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _poly(args, ctx):
    try:
        return parse_poly(args.f, ctx)
    except (ValueError, DenominatorNotDividing) as exc:
        raise UsageError(f"bad coefficients {args.f!r}: {exc}") from None


def _check_method(args) -> Method:
    method = Method(args.method)
    if method is not Method.NEWTON and args.p <= 3:
        raise UsageError(f"p must exceed 3 for {method.value}")
    return method


def cmd_solve(args, out=sys.stdout, err=sys.stderr) -> int:
    method = _check_method(args)
    ctx = _context(args)
    f = _poly(args, ctx)
    try:
        rec = solve(f, args.seed, method, args.prec)
    except SeedRejected as exc:
        print(f"seed rejected: {exc}. Try `padicroots roots`, which runs Thurston's chain "
              f"to find admissible seeds.", file=err)
        return EXIT_REJECTED
    except (PrecisionExhausted, NonConvergence) as exc:
        print(f"precision exhausted: {exc}", file=err)
        return EXIT_PRECISION
    record = OutputRecord.from_root(rec, args.prec)
    if args.json:
        print(record.to_json(), file=out)
    else:
        _print_record(record, out)
    return EXIT_OK


def cmd_roots(args, out=sys.stdout, err=sys.stderr) -> int:
    method = _check_method(args)
    ctx = _context(args)
    f = _poly(args, ctx)
    if f.is_zero() or not f.lc.is_unit():
        raise UsageError("the leading coefficient must be a p-adic unit")
    try:
        found = find_all_roots(f, args.prec, max_depth=args.max_depth, method=method)
    except (PrecisionExhausted, NonConvergence) as exc:
        print(f"precision exhausted: {exc}", file=err)
        return EXIT_PRECISION
    records = [OutputRecord.from_root(r, args.prec) for r in found]
    records.sort(key=lambda r: int(r.residue))
    for prefix in found.depth_exceeded:
        print(f"warning: chain below digits {list(prefix)} exceeded depth {args.max_depth}", file=err)
    if args.json:
        print(json.dumps([r.to_dict() for r in records]), file=out)
    else:
        if not records:
            print("[]", file=out)
        for r in records:
            _print_record(r, out)
    return EXIT_OK


def _order_problem(args):
    if args.builtin:
        return builtin(args.builtin)
    if args.f is None or args.bracket is None:
        raise UsageError("verify-order needs --builtin or both -f and --bracket")
    try:
        coeffs = [float(c) for c in args.f.split(",")]
        return bracketed(coeffs, *args.bracket)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_verify_order(args, out=sys.stdout, err=sys.stderr) -> int:
    prob = _order_problem(args)
    x1 = args.x1 if args.x1 is not None else prob.x1
    methods = ["sjm"] + ([args.compare] if args.compare else [])
    reports = {}
    try:
        for m in methods:
            reports[m] = measure_order(prob, x1, method=m, dps=args.dps)
    except UnderflowTooFast as exc:
        print(f"underflow: {exc}", file=err)
        return EXIT_PRECISION
    sjm = reports["sjm"]
    if args.json:
        payload = {
            m: {
                "slope": r.slope,
                "ratios": r.ratios,
                "final_ratio": r.final_ratio,
                "rho_predicted": r.rho_predicted,
                "rho_alternative": r.rho_alternative,
                "exact": r.exact,
            }
            for m, r in reports.items()
        }
        print(json.dumps({"problem": prob.name, "x1": str(x1), "methods": payload}), file=out)
    else:
        print(f"problem {prob.name}, x1 = {x1}", file=out)
        for m, r in reports.items():
            if r.exact:
                print(f"  {m}: exact convergence after {len(r.errors)} step(s); order undefined", file=out)
                continue
            print(f"  {m}: slope {r.slope:.4f}", file=out)
            print(f"    R_n = " + ", ".join(f"{x:.6g}" for x in r.ratios), file=out)
            if r.rho_predicted is not None:
                print(f"    predicted |rho| = {r.rho_predicted:.6f}", file=out)
            if r.rho_alternative is not None:
                print(f"    alternative |rho| = {r.rho_alternative:.6f}", file=out)
    if sjm.exact:
        return EXIT_OK
    lo, hi = SLOPE_WINDOW
    return EXIT_OK if lo <= sjm.slope <= hi else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="padicroots", description="p-adic root finding with Newton, Olver and SJM")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("-p", type=int, required=True, help="prime")
        sp.add_argument("-f", required=True, help="coefficients, constant term first")
        sp.add_argument("--method", choices=[m.value for m in Method], default="sjm")
        sp.add_argument("--prec", type=int, default=20, help="digits of the root to certify")
        sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("solve", help="lift one seed to a root")
    common(sp)
    sp.add_argument("--seed", type=int, required=True)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("roots", help="all roots in Z_p via Thurston's chain")
    common(sp)
    sp.add_argument("--max-depth", type=int, default=DEFAULT_MAX_DEPTH)
    sp.set_defaults(func=cmd_roots)

    sp = sub.add_parser("verify-order", help="real-number order check of SJM")
    sp.add_argument("--builtin", choices=sorted(BUILTINS))
    sp.add_argument("-f", help="real coefficients, constant term first")
    sp.add_argument("--bracket", type=float, nargs=2, metavar=("LO", "HI"))
    sp.add_argument("--x1", type=float)
    sp.add_argument("--compare", choices=["newton", "jarratt"])
    sp.add_argument("--dps", type=int, default=DEFAULT_DPS, help="decimal digits (0 for double)")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_verify_order)
    return parser


def _glue_values(argv: list[str]) -> list[str]:
    # "-f -2,0,1" would otherwise read the coefficient list as an option
    out, it = [], iter(argv)
    for tok in it:
        if tok in ("-f", "--x1"):
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    argv = _glue_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "prec", 1) is not None and getattr(args, "prec", 1) < 1:
        print("padicroots: error: --prec must be positive", file=err)
        return EXIT_USAGE
    if getattr(args, "dps", None) == 0:
        args.dps = None
    try:
        return args.func(args, out, err)
    except UsageError as exc:
        print(f"padicroots: error: {exc}", file=err)
        return EXIT_USAGE
