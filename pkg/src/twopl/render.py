"""LaTeX, plain-text and JSON renderings of an analysis.

All renderers are pure functions of the analysis and always produce the same
bytes for the same input.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from importlib import resources
from typing import Any, Optional

from .analysis import Analysis
from .constraints import Inequality, Item, Request, RequestKind, TimePoint
from .layout import Column, TableLayout

_RED = "\x1b[31m"
_RESET = "\x1b[0m"

_MACROS = {
    RequestKind.SL: "SLarrow",
    RequestKind.XL: "XLarrow",
    RequestKind.SU: "SUarrow",
    RequestKind.XU: "XUarrow",
}

LEGEND = (
    "\\noindent\\textit{Legend}\\\\\n"
    "\\SLarrow{}: read lock request\\\\\n"
    "\\XLarrow{}: write lock request\\\\\n"
    "\\gradedXLarrow{}: lock upgrade\\\\\n"
    "\\SUarrow{}\\,\\XUarrow{}: unlock request\n"
)


class Format(enum.Enum):
    LATEX = "latex"
    TEXT = "text"
    JSON = "json"


@dataclass(frozen=True)
class RenderOptions:
    format: Format = Format.TEXT
    include_inequalities: bool = False
    include_trace: bool = False
    color: bool = False  # ANSI red culprits in text output
    pretty: bool = False  # indented JSON
    standalone: bool = False  # full LaTeX document with the macro preamble


def latex_preamble() -> str:
    """Macro definitions needed to compile the emitted tables."""
    return resources.files("twopl").joinpath("data/preamble.tex").read_text(encoding="utf-8")


def json_schema() -> dict:
    text = resources.files("twopl").joinpath("data/analysis.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def _upgrades(analysis: Analysis) -> set[tuple[int, str]]:
    return {(r.txn, r.resource) for r in analysis.system.requests if r.kind is RequestKind.SL}


def _is_upgrade(req: Request, upgrades: set[tuple[int, str]]) -> bool:
    return req.kind is RequestKind.XL and (req.txn, req.resource) in upgrades


def _cell_item(col: Column, resource: str, analysis: Analysis) -> Optional[Item]:
    tp = col.time_point
    if tp is not None and analysis.schedule[tp.t].resource == resource:
        return tp
    return next((r for r in col.requests if r.resource == resource), None)


def _arc_line(arc: Inequality) -> str:
    return f"{arc.lhs} < {arc.rhs}  ({arc.reason.value})"


def _appendix(analysis: Analysis, opts: RenderOptions) -> list[str]:
    lines = []
    if opts.include_inequalities:
        lines.append(f"inequalities ({len(analysis.system)}):")
        lines.extend("  " + _arc_line(q) for q in analysis.system.inequalities)
    if opts.include_trace:
        lines.append(f"repair trace ({_count(analysis.report.iterations, 'iteration', 'iterations')}):")
        for i, (cycle, removed) in enumerate(zip(analysis.report.cycles, analysis.report.removed), start=1):
            lines.append(f"  iteration {i}: minimal cycle of {len(cycle)} arcs")
            lines.extend("    " + _arc_line(arc) for arc in cycle)
            lines.append("    removed " + _arc_line(removed))
    return lines


def _count(n: int, singular: str, plural: str) -> str:
    return f"{n} {singular if n == 1 else plural}"


def _verdict(analysis: Analysis) -> str:
    if analysis.member:
        return "in 2PL"
    removed = _count(analysis.report.iterations, "inequality", "inequalities")
    return f"not in 2PL ({removed} removed)"


# -- LaTeX -------------------------------------------------------------------


def _latex_item(item: Item, analysis: Analysis, upgrades: set, culprits: tuple) -> str:
    if isinstance(item, TimePoint):
        op = analysis.schedule[item.t]
        return f"${op.action.value}_{{{op.txn}}}$"
    macro = "gradedXLarrow" if _is_upgrade(item, upgrades) else _MACROS[item.kind]
    text = f"\\{macro}{{{item.txn}}}"
    if item in culprits:
        text = f"\\redcircled{{{text}}}"
    return text


def _latex_resource(name: str) -> str:
    return f"${name}$" if len(name) == 1 else f"$\\mathit{{{name}}}$"


def render_latex(layout: TableLayout, analysis: Analysis, opts: Optional[RenderOptions] = None) -> str:
    """A tabularray table of the lock/unlock timeline followed by a legend.

    Column 1 holds resource names; layout column ``i`` is table column ``i + 2``.
    A plateau after layout column ``c`` is the dashed rule ``vline{c + 3}``.
    """
    opts = opts or RenderOptions(Format.LATEX)
    upgrades = _upgrades(analysis)
    culprits = layout.culprit_items

    spec = [
        "cells={c},",
        "column{1}={5mm},rows={6mm},vline{2}={black},",
        "hlines={black},hline{Z}={0pt},",
    ]
    by_column: dict[int, list[int]] = {}
    for txn, col in layout.plateaus.items():
        by_column.setdefault(col, []).append(txn)
    for col in sorted(by_column):
        rule = col + 3
        label = ",".join(str(t) for t in sorted(by_column[col]))
        spec.append(f"vline{{{rule}}}={{gray,dashed}},")
        spec.append(f"vline{{{rule}}}={{Z}}{{text=\\clap{{{label}}}}},")
    spec[-1] = spec[-1].rstrip(",")

    header = [""] + [str(c.time_point.t) if c.time_point else "" for c in layout.columns] + [""]
    rows = [header]
    for res in layout.resource_rows:
        cells = [_latex_resource(res)]
        for col in layout.columns:
            item = _cell_item(col, res, analysis)
            cells.append("" if item is None else _latex_item(item, analysis, upgrades, culprits))
        cells.append("")
        rows.append(cells)

    out = [
        f"% 2PL analysis of: {analysis.schedule}".rstrip(),
        f"% mode: {analysis.mode.value}; verdict: {_verdict(analysis)}",
        "{\\SetTblrInner{colsep=0pt}",
        "\\begin{tblr}{" + spec[0],
        *spec[1:],
        "}",
        *("&".join(cells) + "\\\\" for cells in rows),
        "&",
        "\\end{tblr}}",
        "",
        LEGEND.rstrip("\n"),
    ]
    extra = _appendix(analysis, opts)
    if extra:
        out.append("")
        out.extend("% " + line for line in extra)
    body = "\n".join(out) + "\n"
    if opts.standalone:
        return (
            "\\documentclass{article}\n"
            + latex_preamble()
            + "\\begin{document}\n"
            + body
            + "\\end{document}\n"
        )
    return body


# -- plain text ----------------------------------------------------------------


def _text_item(item: Item, analysis: Analysis, upgrades: set, culprits: tuple) -> str:
    if isinstance(item, TimePoint):
        op = analysis.schedule[item.t]
        return f"{op.action.value}{op.txn}"
    prefix = "^" if _is_upgrade(item, upgrades) else ""
    token = f"{prefix}{item.kind.value}{item.txn}"
    return token + "!" if item in culprits else token


def render_text(layout: TableLayout, analysis: Analysis, opts: Optional[RenderOptions] = None) -> str:
    """Fixed-width grid; ``|n`` in the footer marks the plateau of transaction n.

    A marker sits at the start of the cell right after the transaction's last
    lock column, so the bar lines up with the plateau boundary.
    """
    opts = opts or RenderOptions()
    upgrades = _upgrades(analysis)
    culprits = layout.culprit_items
    lines = [
        f"schedule: {analysis.schedule}".rstrip(),
        f"mode: {analysis.mode.value}  verdict: {_verdict(analysis)}",
    ]
    if layout.columns:
        width = len(layout.columns) + 1
        grid = [[""] + [str(c.time_point.t) if c.time_point else "" for c in layout.columns] + [""]]
        red = set()
        for res in layout.resource_rows:
            row = [res]
            for col in layout.columns:
                item = _cell_item(col, res, analysis)
                row.append("" if item is None else _text_item(item, analysis, upgrades, culprits))
                if item is not None and item in culprits:
                    red.add((len(grid), len(row) - 1))
            row.append("")
            grid.append(row)
        if layout.plateaus:
            footer = [""] * (width + 1)
            for txn, col in sorted(layout.plateaus.items(), key=lambda kv: (kv[1], kv[0])):
                footer[col + 2] += f"|{txn}"
            grid.append(footer)
        widths = [max(len(row[j]) for row in grid) for j in range(width + 1)]
        lines.append("")
        for i, row in enumerate(grid):
            cells = []
            for j, cell in enumerate(row):
                padded = cell.ljust(widths[j])
                if opts.color and (i, j) in red:
                    padded = _RED + cell + _RESET + " " * (widths[j] - len(cell))
                cells.append(padded)
            lines.append(" ".join(cells).rstrip())
    extra = _appendix(analysis, opts)
    if extra:
        lines.append("")
        lines.extend(extra)
    return "\n".join(lines) + "\n"


# -- JSON -----------------------------------------------------------------------


def canonical_json(obj: Any, pretty: bool = False) -> str:
    if pretty:
        return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"


def _arc_obj(arc: Inequality) -> dict:
    return {"lhs": str(arc.lhs), "rhs": str(arc.rhs), "reason": arc.reason.value}


def analysis_to_dict(analysis: Analysis, opts: Optional[RenderOptions] = None) -> dict:
    opts = opts or RenderOptions(Format.JSON)
    layout = analysis.layout
    culprit = analysis.report.culprit
    doc: dict[str, Any] = {
        "schedule": str(analysis.schedule),
        "mode": analysis.mode.value,
        "member": analysis.member,
        "inequality_count": len(analysis.system),
        "requests": [str(r) for r in analysis.system.requests],
        "removed": [_arc_obj(a) for a in analysis.report.removed],
        "culprit": [str(culprit.lhs), str(culprit.rhs)] if culprit else None,
        "groups": [[str(i) for i in group] for group in analysis.order.groups],
        "columns": [[str(i) for i in col.entries] for col in layout.columns],
        "plateaus": {str(txn): col for txn, col in layout.plateaus.items()},
    }
    if opts.include_inequalities:
        doc["inequalities"] = [_arc_obj(q) for q in analysis.system.inequalities]
    if opts.include_trace:
        doc["trace"] = [
            {"cycle": [_arc_obj(a) for a in cycle], "removed": _arc_obj(removed)}
            for cycle, removed in zip(analysis.report.cycles, analysis.report.removed)
        ]
    return doc


def render_json(analysis: Analysis, opts: Optional[RenderOptions] = None) -> str:
    """Canonical JSON: sorted keys, compact separators, trailing newline."""
    opts = opts or RenderOptions(Format.JSON)
    return canonical_json(analysis_to_dict(analysis, opts), pretty=opts.pretty)


def render(analysis: Analysis, opts: RenderOptions) -> str:
    if opts.format is Format.LATEX:
        return render_latex(analysis.layout, analysis, opts)
    if opts.format is Format.JSON:
        return render_json(analysis, opts)
    return render_text(analysis.layout, analysis, opts)
