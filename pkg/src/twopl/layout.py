"""Turn a grouped order into table columns with plateau and culprit marks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .constraints import Inequality, Item, Mode, Request, TimePoint
from .graph import ConstraintGraph, GroupedOrder, RepairReport
from .schedule import Schedule


@dataclass
class Column:
    index: int
    entries: list[Item] = field(default_factory=list)

    @property
    def time_point(self) -> Optional[TimePoint]:
        return next((e for e in self.entries if isinstance(e, TimePoint)), None)

    @property
    def requests(self) -> list[Request]:
        return [e for e in self.entries if isinstance(e, Request)]


@dataclass
class TableLayout:
    columns: list[Column]
    resource_rows: list[str]
    plateaus: dict[int, int]
    culprit_items: tuple[Item, ...]
    mode: Mode = Mode.STANDARD
    member: bool = True

    def column_of(self) -> dict[Item, int]:
        return {item: col.index for col in self.columns for item in col.entries}


def push_locks_right(order: GroupedOrder, g: ConstraintGraph) -> GroupedOrder:
    """Move every lock to the last group that still precedes all of its successors.

    Locks are handled from the end of the sequence backwards. Groups emptied by
    a move are dropped.
    """
    groups = [list(group) for group in order.groups]
    locks = [item for item in order.flat() if isinstance(item, Request) and item.is_lock]
    for lock in reversed(locks):
        where = {item: i for i, group in enumerate(groups) for item in group}
        here = where[lock]
        succ = [where[b] for b in g.successors(lock)]
        target = min(succ) - 1 if succ else len(groups) - 1
        if target <= here:
            continue
        assert all(where[a] < target for a in g.predecessors(lock))
        groups[target].append(lock)
        groups[target].sort(key=g.rank)
        groups[here].remove(lock)
        if not groups[here]:
            del groups[here]
    pushed = GroupedOrder(groups)
    assert pushed.is_valid_for(g) == order.is_valid_for(g)
    return pushed


def _resource_of(item: Item, s: Schedule) -> str:
    return s[item.t].resource if isinstance(item, TimePoint) else item.resource


def assign_columns(order: GroupedOrder, s: Schedule) -> list[Column]:
    """Split each group into as few columns as needed, left to right.

    A column holds at most one time point and never two items on the same
    resource, so an operation is never drawn next to a request on its own
    resource. The time point is placed first, then requests in group order.
    """
    columns: list[Column] = []
    for group in order.groups:
        items = sorted(group, key=lambda item: not isinstance(item, TimePoint))
        local: list[tuple[Column, set[str]]] = []
        for item in items:
            res = _resource_of(item, s)
            for col, used in local:
                if res in used or (isinstance(item, TimePoint) and col.time_point is not None):
                    continue
                col.entries.append(item)
                used.add(res)
                break
            else:
                col = Column(len(columns))
                col.entries.append(item)
                columns.append(col)
                local.append((col, {res}))
    return columns


def disqualified_transactions(removed: Sequence[Inequality]) -> set[int]:
    """Transactions owning a lock at either end of a removed arc."""
    return {
        item.txn
        for arc in removed
        for item in (arc.lhs, arc.rhs)
        if isinstance(item, Request) and item.is_lock
    }


def compute_plateaus(columns: Sequence[Column], removed: Sequence[Inequality]) -> dict[int, int]:
    """Map each qualifying transaction to the column holding its last lock.

    The plateau line is drawn on the right edge of that column.
    """
    out = disqualified_transactions(removed)
    plateaus: dict[int, int] = {}
    for col in columns:
        for req in col.requests:
            if req.is_lock and req.txn not in out:
                plateaus[req.txn] = col.index
    return dict(sorted(plateaus.items()))


def build_layout(s: Schedule, order: GroupedOrder, report: RepairReport, mode: Mode = Mode.STANDARD) -> TableLayout:
    columns = assign_columns(order, s)
    culprit = report.culprit
    return TableLayout(
        columns=columns,
        resource_rows=s.resources,
        plateaus=compute_plateaus(columns, report.removed),
        culprit_items=(culprit.lhs, culprit.rhs) if culprit else (),
        mode=mode,
        member=not report.removed,
    )
