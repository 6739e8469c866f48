"""Batch reports: JSON and aligned text renderings, plus bar-chart figures."""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, List, Optional

from .catalog import PARTITION
from .massfm import fraction_text


@dataclass
class BatchReport:
    curves: List[dict] = dc_field(default_factory=list)      # AutGroupResult.to_dict() rows
    partition: Optional[Dict[int, Fraction]] = None
    galois: List[dict] = dc_field(default_factory=list)
    mass: Optional[List[dict]] = None
    epsilon: Optional[int] = None
    partial: bool = False
    checks: Dict[str, bool] = dc_field(default_factory=dict)

    def by_id(self):
        return {c["curve"]: c for c in self.curves}

    def to_dict(self):
        d = {"curves": self.curves}
        if self.epsilon is not None:
            d["epsilon"] = self.epsilon
        if self.partition is not None:
            d["partition"] = {str(k): fraction_text(v) for k, v in sorted(self.partition.items())}
        if self.galois:
            d["galois"] = self.galois
        if self.mass is not None:
            d["mass"] = self.mass
        if self.checks:
            d["checks"] = self.checks
        if self.partial:
            d["partial"] = True
        return d


def render_report(report: BatchReport, fmt="json") -> str:
    if fmt == "json":
        return json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n"
    if fmt == "text":
        return render_text(report)
    raise ValueError(f"unknown format {fmt!r}")


def _table(rows, headers):
    widths = [max(len(str(x)) for x in col) for col in zip(headers, *rows)]
    line = lambda r: "  ".join(str(x).ljust(w) for x, w in zip(r, widths)).rstrip()
    out = [line(headers), line(["-" * w for w in widths])]
    out.extend(line(r) for r in rows)
    return out


def render_text(report: BatchReport) -> str:
    out = []
    rows = [(c["curve"], c.get("group_name") or "?", c["order"],
             f'F_{c["field"]["p"] ** c["field"]["k"]}', c["engine"],
             f'{c.get("timings", {}).get("total", 0.0):.1f}')
            for c in report.curves]
    if rows:
        out.extend(_table(rows, ["curve", "group", "order", "field", "engine", "seconds"]))
    else:
        out.append("no curves")
    if report.epsilon is not None:
        out.append(f"epsilon = {report.epsilon}")
    by_id = report.by_id()
    closure = [c for c in report.curves if c["curve"].startswith("alc:")]
    if closure:
        out.append("")
        out.append("closure classes and their F_11-forms")
        rows = []
        for c in closure:
            k = int(c["curve"].split(":")[1])
            forms = PARTITION.get(k, [])
            first = True
            for f in forms or [None]:
                rec = by_id.get(f) if f else None
                rows.append((
                    f"C{k}" if first else "", (c.get("group_name") or "?") if first else "",
                    c["order"] if first else "", f or "",
                    (rec.get("group_name") or "?") if rec else "", rec["order"] if rec else ""))
                first = False
        out.extend(_table(rows, ["class", "Aut(C)", "#Aut(C)", "form", "Aut_F11", "#Aut_F11"]))
    if report.partition is not None:
        out.append("")
        out.append("reciprocal sums per class")
        out.extend(_table([(k, fraction_text(v)) for k, v in sorted(report.partition.items())],
                          ["class", "sum"]))
    if report.galois:
        out.append("")
        out.append("sigma-conjugacy")
        rows = [(g["curve"], g["class_count"], ",".join(map(str, g["stabilizer_orders"])),
                 ",".join(map(str, g["expected_from_tables"] or [])),
                 {True: "yes", False: "NO", None: "-"}[g["match"]]) for g in report.galois]
        out.extend(_table(rows, ["curve", "classes", "stabilizers", "forms", "match"]))
    if report.mass is not None:
        out.extend([""] + render_mass_text(report.mass).rstrip("\n").split("\n"))
    if report.checks:
        out.append("")
        for k, v in sorted(report.checks.items()):
            out.append(f"check {k}: {'pass' if v else 'FAIL'}")
    if report.partial:
        out.append("(partial batch)")
    return "\n".join(out) + "\n"


def render_mass_text(rows) -> str:
    table = [(r["p"], r["M4"], r["M4_indecomposable"], r["curve_mass"] or "-",
              r["curve_mass_source"] or "") for r in rows]
    return "\n".join(_table(table, ["p", "M4(p)", "M4'(p)", "curve mass", "source"])) + "\n"


def render_figures(report: BatchReport, prefix) -> List[str]:
    """Bar charts of Aut orders and per-class reciprocal sums; returns paths."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    paths = []
    if report.curves:
        ids = [c["curve"] for c in report.curves]
        orders = [c["order"] for c in report.curves]
        colors = ["tab:orange" if i.startswith("alc:") else "tab:blue" for i in ids]
        fig, ax = plt.subplots(figsize=(max(6, 0.3 * len(ids)), 4))
        ax.bar(range(len(ids)), orders, color=colors)
        ax.set_xticks(range(len(ids)))
        ax.set_xticklabels(ids, rotation=90, fontsize=7)
        ax.set_ylabel("order of automorphism group")
        fig.tight_layout()
        path = f"{prefix}_orders.png"
        fig.savefig(path, dpi=100)
        plt.close(fig)
        paths.append(path)
    if report.partition:
        keys = sorted(report.partition)
        fig, ax = plt.subplots(figsize=(6, 3.5))
        ax.bar([str(k) for k in keys], [float(report.partition[k]) for k in keys])
        ax.axhline(1.0, color="k", lw=0.8, ls="--")
        ax.set_xlabel("closure class")
        ax.set_ylabel("sum of 1/|Aut|")
        fig.tight_layout()
        path = f"{prefix}_reciprocal_sums.png"
        fig.savefig(path, dpi=100)
        plt.close(fig)
        paths.append(path)
    return paths
