"""Two-phase locking membership analysis with tabular lock/unlock timelines."""

from .analysis import Analysis, analyze
from .constraints import (
    Inequality,
    InequalitySystem,
    Mode,
    Reason,
    Request,
    RequestKind,
    TimePoint,
    build_inequalities,
    derive_requests,
    lock_for,
    release_for,
)
from .graph import (
    ConstraintGraph,
    CyclicGraphError,
    GroupedOrder,
    RepairReport,
    build_graph,
    find_minimal_cycle,
    grouped_topological_sort,
    repair,
    select_removal_arc,
)
from .layout import Column, TableLayout, assign_columns, build_layout, compute_plateaus, push_locks_right
from .render import Format, RenderOptions, render_json, render_latex, render_text
from .schedule import Action, Operation, ParseError, Schedule, format_schedule, parse_schedule

__version__ = "0.1.0"

__all__ = [
    "Action",
    "Analysis",
    "Column",
    "ConstraintGraph",
    "CyclicGraphError",
    "Format",
    "GroupedOrder",
    "Inequality",
    "InequalitySystem",
    "Mode",
    "Operation",
    "ParseError",
    "Reason",
    "RenderOptions",
    "RepairReport",
    "Request",
    "RequestKind",
    "Schedule",
    "TableLayout",
    "TimePoint",
    "analyze",
    "assign_columns",
    "build_graph",
    "build_inequalities",
    "build_layout",
    "compute_plateaus",
    "derive_requests",
    "find_minimal_cycle",
    "format_schedule",
    "grouped_topological_sort",
    "lock_for",
    "parse_schedule",
    "push_locks_right",
    "release_for",
    "render_json",
    "render_latex",
    "render_text",
    "repair",
    "select_removal_arc",
]
