"""Command line entry point.

    quadpoisson compute dh2 --a 1 --b 1 --rmax 6
    quadpoisson verify --structure dh7 --a 0 --b 1 --c -2 --rmax 10 --format markdown
    quadpoisson les-check dh2 --a 0 --b 1 --rmax 8
    quadpoisson compute custom --tensor lam.txt --rmax 4
    quadpoisson rmatrix yb dh2 --a 1 --b 1

Exit codes: 0 all checks pass, 1 a verification failed, 2 bad usage or input.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import report as rep
from .grammar import ParseError, parse_multivector
from .multivector import NotPoisson, is_poisson
from .rmatrix import from_vec, stabilizer, y_rmatrix, yang_baxter_check
from .structures import (NotAdmissible, StructureParams, TheoremUnavailable,
                         build_structure, y_decomposition)

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


class UsageError(Exception):
    pass


def rational(text: str) -> Fraction:
    if not _RATIONAL.match(text.strip()):
        raise argparse.ArgumentTypeError(f"{text!r} is not an exact rational like 3/2 or -1")
    try:
        return Fraction(text.strip())
    except ZeroDivisionError:
        raise argparse.ArgumentTypeError(f"{text!r} has a zero denominator") from None


def _structure_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("family", nargs="?", choices=("dh2", "dh7", "custom"),
                   help="structure preset (same as --structure)")
    p.add_argument("--structure", dest="structure", choices=("dh2", "dh7", "custom"))
    p.add_argument("--a", type=rational, default=Fraction(0))
    p.add_argument("--b", type=rational, default=Fraction(1))
    p.add_argument("--c", type=rational, default=Fraction(0))
    p.add_argument("--tensor", help="file holding a bivector such as 'x3^2*d12 + x1*x3*d23'")


def _table_args(p: argparse.ArgumentParser, complexes_default: str) -> None:
    p.add_argument("--rmax", type=int, default=6)
    p.add_argument("--complex", choices=("r", "p", "s", "all"), default=complexes_default)
    p.add_argument("--format", choices=("json", "markdown", "csv"), default="json")
    p.add_argument("--jobs", type=int, default=0, help="worker processes (0: run in-process)")
    p.add_argument("--all-slices", action="store_true", help="also list slices of dimension 0")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quadpoisson",
                                     description="Formal Poisson cohomology of quadratic structures on R^3.")
    sub = parser.add_subparsers(dest="mode", required=True)
    for name, help_ in (("compute", "cohomology table up to total degree rmax"),
                        ("verify", "compare the table with the closed-form dimensions"),
                        ("les-check", "check the long exact sequence on every slice")):
        p = sub.add_parser(name, help=help_)
        _structure_args(p)
        if name == "les-check":
            p.add_argument("--rmax", type=int, default=6)
            p.add_argument("--format", choices=("json", "markdown", "csv"), default="json")
            p.add_argument("--jobs", type=int, default=0)
        else:
            _table_args(p, "r")
    p = sub.add_parser("rmatrix", help="r-matrix utilities")
    p.add_argument("action", choices=("stabilizer", "yb"))
    _structure_args(p)
    return parser


def resolve_params(ns) -> StructureParams:
    fam = ns.structure or ns.family
    if ns.structure and ns.family and ns.structure != ns.family:
        raise UsageError(f"conflicting structures {ns.family!r} and {ns.structure!r}")
    if fam is None:
        raise UsageError("choose a structure: dh2, dh7 or custom")
    if fam == "dh2":
        return StructureParams.dh2(ns.a, ns.b)
    if fam == "dh7":
        return StructureParams.dh7(ns.a, ns.b, ns.c)
    if not ns.tensor:
        raise UsageError("custom structure needs --tensor FILE")
    try:
        with open(ns.tensor, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {ns.tensor}: {exc}") from None
    try:
        pi = parse_multivector(text, degree=2)
    except ParseError as exc:
        raise UsageError(f"{ns.tensor}: {exc}") from None
    if not is_poisson(pi):
        err = NotPoisson(pi)
        raise UsageError(f"not a Poisson tensor, [L, L] != 0: [L, L] = {err.bracket}")
    try:
        y_decomposition(pi)
    except NotAdmissible as exc:
        raise UsageError(f"{exc}; the slice method needs an admissible tensor") from None
    return StructureParams("custom", custom=pi)


def _complexes(choice: str) -> tuple:
    return ("R", "P", "S") if choice == "all" else (choice.upper(),)


def _rmatrix(ns, params: StructureParams) -> tuple[dict, int]:
    lam = build_structure(params)
    if ns.action == "stabilizer":
        basis = stabilizer(lam)
        mats = [[[str(x) for x in row] for row in from_vec(v).tolist()] for v in basis.vectors]
        return {"structure": params.describe(), "dim": basis.dim, "basis": mats}, 0
    r = y_rmatrix(params.y_coefficients)
    res = yang_baxter_check(r)
    out = {"structure": params.describe(), "r": repr(r), "bracket": repr(res.bracket),
           "is_zero": res.is_zero, "j_identity": res.j_identity}
    return out, 0 if (res.is_zero and res.j_identity) else 1


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        params = resolve_params(ns)
        if ns.mode == "rmatrix":
            doc, code = _rmatrix(ns, params)
            out.write(json.dumps(doc, indent=2) + "\n")
            return code
        if getattr(ns, "rmax", 0) < 0:
            raise UsageError("--rmax must be non-negative")
        if ns.mode == "compute":
            report = rep.compute(params, ns.rmax, _complexes(ns.complex), ns.jobs, ns.all_slices)
        elif ns.mode == "verify":
            report = rep.verify(params, ns.rmax, _complexes(ns.complex), ns.jobs, ns.all_slices)
        else:
            report = rep.les(params, ns.rmax, ns.jobs)
    except (UsageError, TheoremUnavailable) as exc:
        print(f"quadpoisson: error: {exc}", file=sys.stderr)
        return 2
    text = rep.emit(report, ns.format)
    out.write(text if text.endswith("\n") else text + "\n")
    return 0 if report.ok else 1


def main() -> None:
    sys.exit(run())
