"""End-to-end analysis: schedule -> inequalities -> graph -> repair -> layout."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .constraints import InequalitySystem, Mode, build_inequalities
from .graph import ConstraintGraph, GroupedOrder, RepairReport, build_graph, grouped_topological_sort, repair
from .layout import TableLayout, build_layout, push_locks_right
from .schedule import Schedule, parse_schedule


@dataclass
class Analysis:
    schedule: Schedule
    mode: Mode
    system: InequalitySystem
    graph: ConstraintGraph
    residual: ConstraintGraph
    report: RepairReport
    order: GroupedOrder
    pushed: GroupedOrder
    layout: TableLayout

    @property
    def member(self) -> bool:
        return not self.report.removed


def analyze(schedule: Union[Schedule, str], mode: Mode = Mode.STANDARD) -> Analysis:
    """Run the full pipeline; ``schedule`` may be given in textual notation."""
    if isinstance(schedule, str):
        schedule = parse_schedule(schedule)
    system = build_inequalities(schedule, mode)
    graph = build_graph(system)
    residual = graph.copy()
    report = repair(residual)
    order = grouped_topological_sort(residual)
    pushed = push_locks_right(order, residual)
    layout = build_layout(schedule, pushed, report, mode)
    return Analysis(schedule, mode, system, graph, residual, report, order, pushed, layout)
