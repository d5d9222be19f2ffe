"""
Command-line front end.

    oddhecke apply --mode odd --n 2 "eta(1)" "x1"
    oddhecke pair "h[1,2,1]" "h[2,2]"
    oddhecke verify sl2 --n 2 --max-deg 5 --json

Exit codes: 0 success, 1 a relation failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from . import nsymq, verify
from .errors import OddHeckeError
from .parsing import parse_nsym, parse_operator, parse_poly
from .skewring import ODD, QMODE, RingConfig

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass(frozen=True)
class CliConfig:
    mode: str = ODD
    n: int = 2
    modulus: Optional[int] = None
    max_deg: Optional[int] = None
    output: str = "text"

    def __post_init__(self):
        if self.mode not in (ODD, QMODE):
            raise ValueError(f"mode must be {ODD!r} or {QMODE!r}")
        if self.n is not None and self.n < 1:
            raise ValueError("n must be at least 1")
        if self.modulus is not None and self.modulus < 2:
            raise ValueError("modulus must be at least 2")
        if self.max_deg is not None and self.max_deg < 0:
            raise ValueError("max-deg must be non-negative")

    def ring(self) -> RingConfig:
        return RingConfig(self.n, self.mode, self.modulus)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read(text: str) -> str:
    return sys.stdin.read().strip() if text == "-" else text


def cmd_apply(op_text: str, poly_text: str, cfg: CliConfig) -> str:
    ring = cfg.ring()
    expr = parse_operator(op_text, ring)
    f = parse_poly(poly_text, ring)
    return str(verify.eval_expr(expr, f, verify.EvalContext(ring)))


def cmd_pair(left: str, right: str, cfg: CliConfig, oracle: bool = False):
    """Return ``(value, note)``; ``note`` flags a degree mismatch."""
    a = parse_nsym(left, cfg.modulus)
    b = parse_nsym(right, cfg.modulus)
    value = nsymq.pairing(a, b, method="coset" if oracle else "matrix")
    note = None
    da, db = a.degrees(), b.degrees()
    if da and db and not (da & db):
        note = f"degrees {sorted(da)} and {sorted(db)} differ; the pairing vanishes"
    return value, note


def cmd_verify(suite: str, cfg: CliConfig, n: Optional[int], workers: Optional[int] = None):
    reports = verify.run_suite(suite, n=n, max_deg=cfg.max_deg, modulus=cfg.modulus, workers=workers)
    code = EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL
    if cfg.output == "json":
        return verify.reports_to_jsonl(reports), code
    passed = sum(r.passed for r in reports)
    text = verify.reports_to_text(reports) + f"\n{suite}: {passed}/{len(reports)} relations pass"
    return text, code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=(ODD, QMODE), default=ODD, help="commutation mode of the ring")
    common.add_argument("--n", type=int, default=None, help="number of variables")
    common.add_argument("--modulus", type=int, default=None, help="specialise q to a primitive m-th root of unity")
    common.add_argument("--max-deg", type=int, default=None, help="sweep degree bound")
    common.add_argument("--json", action="store_true", help="line-delimited JSON output")

    parser = _Parser(prog="oddhecke", description="Odd and q-deformed nilHecke operators, NSym^q pairings.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("apply", parents=[common], help="apply an operator expression to a polynomial")
    p.add_argument("operator")
    p.add_argument("polynomial", help="polynomial text, or - to read stdin")

    p = sub.add_parser("pair", parents=[common], help="evaluate the NSym^q bilinear form")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--oracle", action="store_true", help="use the double-coset enumeration")

    p = sub.add_parser("verify", parents=[common], help="run a relation suite")
    p.add_argument("suite", help="one of: " + ", ".join(verify.SUITES))
    p.add_argument("--workers", type=int, default=None,
                   help=f"worker processes (default from ${verify.WORKERS_ENV} or 1)")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = CliConfig(args.mode, args.n if args.n is not None else 2, args.modulus,
                        args.max_deg, "json" if args.json else "text")
    except ValueError as exc:
        print(f"oddhecke: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        if args.command == "apply":
            out = cmd_apply(args.operator, _read(args.polynomial), cfg)
            print(_json_line({"result": out}) if args.json else out)
            return EXIT_OK
        if args.command == "pair":
            value, note = cmd_pair(_read(args.left), _read(args.right), cfg, args.oracle)
            if args.json:
                print(_json_line({"result": str(value), "note": note}))
            else:
                print(value)
                if note:
                    print(f"note: {note}", file=sys.stderr)
            return EXIT_OK
        if args.suite not in verify.SUITES:
            print(f"oddhecke: error: unknown suite {args.suite!r}; choose from {', '.join(verify.SUITES)}",
                  file=sys.stderr)
            return EXIT_USAGE
        text, code = cmd_verify(args.suite, cfg, args.n, args.workers)
        print(text)
        return code
    except (OddHeckeError, ValueError) as exc:
        print(f"oddhecke: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def _json_line(d) -> str:
    return json.dumps(d)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
