"""Slice tables for the command line: computation, verification and rendering."""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .complexes import get_slice, les_check, represents_basis
from .multivector import MultiVector
from .poly import Bigrade
from .structures import (StructureParams, TheoremUnavailable, classify_regime,
                         expected_dim_complex, generators)
from .yframe import from_y_frame, to_y_frame

FIELDS = ("complex", "d", "k", "r", "dim", "reps", "expected", "status")


@dataclass
class Report:
    mode: str
    slices: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(s.get("status") in (None, "pass") for s in self.slices)

    def as_dict(self) -> dict:
        return {"slices": self.slices, "summary": self.summary}


def grades(rmax: int) -> list[Bigrade]:
    return [Bigrade(k, r) for r in range(rmax + 1) for k in range(r + 1)]


def render_rep(complex: str, c) -> str:
    """A representative in the d-frame and, when that exists, also in the Y-frame."""
    if isinstance(c, MultiVector):
        return f"{c} = {to_y_frame(c) if not c.is_zero() else 0}"
    real = from_y_frame(c)
    if real is not None and complex == "P":
        return f"{real} = {c}"
    return str(c)


def _grade_records(args) -> list[dict]:
    params, grade, complexes = args
    sl = get_slice(grade, params)
    out = []
    for cx in complexes:
        for d in range(4):
            vecs = sl.cohomology_vectors(cx, d)
            reps = [render_rep(cx, sl.cochain(cx, d, v)) for v in vecs.vectors]
            out.append({"complex": cx, "d": d, "k": grade.k, "r": grade.r,
                        "dim": vecs.dim, "reps": reps, "expected": None, "status": None})
    return out


def _map(fn, items, jobs: int):
    if jobs and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def _sort(records: list[dict]) -> list[dict]:
    order = {c: i for i, c in enumerate("RPS")}
    return sorted(records, key=lambda s: (order[s["complex"]], s["d"], s["k"], s["r"]))


def _summary(params: StructureParams, rmax: int, records: list[dict]) -> dict:
    totals: dict = {}
    for s in records:
        key = f"{s['complex']}^{s['d']}"
        totals[key] = totals.get(key, 0) + s["dim"]
    try:
        regime = str(classify_regime(params))
    except TheoremUnavailable:
        regime = None
    return {"structure": params.describe(), "y_coefficients": [str(x) for x in params.y_coefficients],
            "regime": regime, "rmax": rmax, "total_dims": totals}


def compute(params: StructureParams, rmax: int, complexes=("R",), jobs: int = 0,
            all_slices: bool = False) -> Report:
    chunks = _map(_grade_records, [(params, g, tuple(complexes)) for g in grades(rmax)], jobs)
    records = [s for chunk in chunks for s in chunk]
    summary = _summary(params, rmax, records)
    if not all_slices:
        records = [s for s in records if s["dim"]]
    return Report("compute", _sort(records), summary)


def verify(params: StructureParams, rmax: int, complexes=("R",), jobs: int = 0,
           all_slices: bool = False) -> Report:
    """Compare every slice with the closed-form dimension; raises TheoremUnavailable early."""
    classify_regime(params)
    for cx in complexes:
        expected_dim_complex(params, cx, 0, (0, 0))
    chunks = _map(_grade_records, [(params, g, tuple(complexes)) for g in grades(rmax)], jobs)
    records = []
    for chunk in chunks:
        for s in chunk:
            s["expected"] = expected_dim_complex(params, s["complex"], s["d"], (s["k"], s["r"]))
            s["status"] = "pass" if s["expected"] == s["dim"] else "fail"
            if s["complex"] == "R" and s["dim"] and s["status"] == "pass":
                grade, d = (s["k"], s["r"]), s["d"]
                ok, note = represents_basis("R", d, grade, params, generators(params, d, grade))
                s["named"] = [str(g) for g in generators(params, d, grade)]
                s["named_status"] = note
                if not ok:
                    s["status"] = "fail"
            records.append(s)
    summary = _summary(params, rmax, records)
    summary["checked"] = len(records)
    summary["failed"] = sum(s["status"] == "fail" for s in records)
    nonzero: dict = {}
    for s in records:
        if s["dim"]:
            key = f"{s['complex']}^{s['d']}"
            nonzero[key] = nonzero.get(key, 0) + 1
    summary["nonzero_slices"] = dict(sorted(nonzero.items()))
    if not all_slices:
        records = [s for s in records if s["dim"] or s["expected"] or s["status"] == "fail"]
    return Report("verify", _sort(records), summary)


def _les_one(args) -> dict:
    params, grade = args
    return les_check(grade, params).as_dict()


def les(params: StructureParams, rmax: int, jobs: int = 0) -> Report:
    rows = _map(_les_one, [(params, g) for g in grades(rmax)], jobs)
    records = []
    for row in rows:
        records.append({"complex": "LES", "d": None, "k": row["k"], "r": row["r"],
                        "dim": sum(n["dim"] for n in row["nodes"]), "reps": row["failures"],
                        "expected": None, "status": "pass" if row["exact"] else "fail",
                        "nodes": row["nodes"], "maps": row["maps"], "dirsum": row["dirsum"]})
    summary = _summary(params, rmax, [])
    summary.pop("total_dims")
    summary["checked"] = len(records)
    summary["failed"] = sum(s["status"] == "fail" for s in records)
    return Report("les-check", records, summary)


# -- output ------------------------------------------------------------------------

def emit(report: Report, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(report.as_dict(), indent=2, default=str)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(FIELDS)
        for s in report.slices:
            w.writerow(["" if s.get(f) is None else (" ; ".join(s[f]) if f == "reps" else s[f])
                        for f in FIELDS])
        return buf.getvalue()
    if fmt == "markdown":
        return _markdown(report)
    raise ValueError(f"unknown format {fmt!r}")


def _markdown(report: Report) -> str:
    lines = [f"# {report.mode}", ""]
    for key, val in report.summary.items():
        lines.append(f"- **{key}**: {val}")
    lines.append("")
    groups: dict = {}
    for s in report.slices:
        groups.setdefault((s["complex"], s["d"]), []).append(s)
    if not groups:
        lines.append("_no slices_")
    for (cx, d), rows in groups.items():
        title = f"## H^{d}({cx})" if d is not None else "## long exact sequence"
        lines += [title, "", "| k | r | dim | expected | status | representatives |",
                  "|---|---|---|---|---|---|"]
        for s in rows:
            reps = "<br>".join(f"`{x}`" for x in s["reps"])
            exp = "" if s["expected"] is None else s["expected"]
            lines.append(f"| {s['k']} | {s['r']} | {s['dim']} | {exp} | {s['status'] or ''} | {reps} |")
        lines.append("")
    return "\n".join(lines)
