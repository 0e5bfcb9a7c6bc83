"""Lock/unlock requests and the inequality system a schedule imposes under 2PL.

Every operation needs a lock before it and an unlock after it; conflicting
operations of different transactions must not overlap their locks; and each
transaction acquires all of its locks before releasing any. Each of these
conditions becomes an inequality between two items, where an item is either
a time point of the schedule or a lock/unlock request.
"""

from __future__ import annotations

import enum
import re
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Union

from .schedule import Operation, Schedule


class RequestKind(enum.Enum):
    SL = "SL"
    XL = "XL"
    SU = "SU"
    XU = "XU"

    @property
    def is_lock(self) -> bool:
        return self in (RequestKind.SL, RequestKind.XL)

    @property
    def is_unlock(self) -> bool:
        return not self.is_lock


class Reason(enum.Enum):
    LOCK_BEFORE_OP = "LockBeforeOp"
    OP_BEFORE_UNLOCK = "OpBeforeUnlock"
    CONFLICT = "Conflict"
    TWO_PHASE = "TwoPhase"
    TIME_CHAIN = "TimeChain"
    STRICT = "Strict"


class Mode(enum.Enum):
    STANDARD = "standard"
    STRICT = "strict"


@dataclass(frozen=True)
class TimePoint:
    t: int

    def __str__(self) -> str:
        return f"t{self.t}"


@dataclass(frozen=True)
class Request:
    """A lock or unlock request; ``op_time`` is the operation it serves."""

    kind: RequestKind
    txn: int
    resource: str
    op_time: int

    @property
    def is_lock(self) -> bool:
        return self.kind.is_lock

    @property
    def is_unlock(self) -> bool:
        return self.kind.is_unlock

    def __str__(self) -> str:
        return f"{self.kind.value}{self.txn}^{self.resource}[{self.op_time}]"


Item = Union[TimePoint, Request]


_ITEM = re.compile(r"t([1-9][0-9]*)|(SL|XL|SU|XU)([1-9][0-9]*)\^([A-Za-z][A-Za-z0-9]*)\[([1-9][0-9]*)\]")


def parse_item(text: str) -> Item:
    """Inverse of ``str(item)``: ``"t4"`` or ``"SL1^z[8]"``."""
    m = _ITEM.fullmatch(text.strip())
    if m is None:
        raise ValueError(f"not an item: {text!r}")
    if m.group(1):
        return TimePoint(int(m.group(1)))
    return Request(RequestKind(m.group(2)), int(m.group(3)), m.group(4), int(m.group(5)))


def item_key(item: Item) -> tuple:
    """Canonical order: time points by time, then requests by kind, txn, resource, time."""
    if isinstance(item, TimePoint):
        return (0, "", item.t, "", 0)
    return (1, item.kind.value, item.txn, item.resource, item.op_time)


@dataclass(frozen=True)
class Inequality:
    lhs: Item
    rhs: Item
    reason: Reason

    def __post_init__(self):
        if self.lhs == self.rhs:
            raise ValueError(f"degenerate inequality {self.lhs} < {self.rhs}")

    def __str__(self) -> str:
        return f"{self.lhs} < {self.rhs}"


@dataclass
class InequalitySystem:
    inequalities: list[Inequality]
    requests: list[Request]
    n: int
    mode: Mode = Mode.STANDARD
    items: list[Item] = field(default_factory=list)  # canonical order, see item_key

    def __len__(self) -> int:
        return len(self.inequalities)

    def by_reason(self, reason: Reason) -> list[Inequality]:
        return [q for q in self.inequalities if q.reason is reason]


def _groups(s: Schedule) -> dict[tuple[int, str], list[Operation]]:
    groups: dict[tuple[int, str], list[Operation]] = defaultdict(list)
    for op in s.ops:
        groups[op.txn, op.resource].append(op)
    return groups


def derive_requests(s: Schedule) -> list[Request]:
    """Requests needed by every (transaction, resource) group, in first-use order.

    A read-only group gets SL/SU. A group whose first operation is a write gets
    XL/XU only. A group that reads before its first write gets SL, then XL as an
    upgrade, and a single XU; the SU is subsumed by the XU. XU always follows the
    group's last operation of either kind.
    """
    requests: list[Request] = []
    for (txn, res), ops in _groups(s).items():
        reads = [op.time for op in ops if op.is_read]
        writes = [op.time for op in ops if op.is_write]
        last = ops[-1].time
        if not writes:
            requests.append(Request(RequestKind.SL, txn, res, reads[0]))
            requests.append(Request(RequestKind.SU, txn, res, reads[-1]))
            continue
        if reads and reads[0] < writes[0]:
            requests.append(Request(RequestKind.SL, txn, res, reads[0]))
        requests.append(Request(RequestKind.XL, txn, res, writes[0]))
        requests.append(Request(RequestKind.XU, txn, res, last))
    return requests


class _RequestIndex:
    def __init__(self, requests: Iterable[Request]):
        self._by_group: dict[tuple[int, str], dict[RequestKind, Request]] = defaultdict(dict)
        for req in requests:
            self._by_group[req.txn, req.resource][req.kind] = req

    def lock_for(self, op: Operation) -> Request:
        group = self._by_group[op.txn, op.resource]
        xl = group.get(RequestKind.XL)
        if op.is_read and (xl is None or op.time < xl.op_time):
            return group[RequestKind.SL]
        return group[RequestKind.XL]

    def release_for(self, op: Operation) -> Request:
        group = self._by_group[op.txn, op.resource]
        return group.get(RequestKind.SU) or group[RequestKind.XU]


def lock_for(op: Operation, requests: Iterable[Request]) -> Request:
    """The lock request that covers ``op``."""
    return _RequestIndex(requests).lock_for(op)


def release_for(op: Operation, requests: Iterable[Request]) -> Request:
    """The unlock request that ends the coverage of ``op``."""
    return _RequestIndex(requests).release_for(op)


def build_inequalities(s: Schedule, mode: Mode = Mode.STANDARD) -> InequalitySystem:
    requests = derive_requests(s)
    index = _RequestIndex(requests)
    found: dict[tuple[Item, Item], Inequality] = {}

    def add(lhs: Item, rhs: Item, reason: Reason) -> None:
        found.setdefault((lhs, rhs), Inequality(lhs, rhs, reason))

    for req in requests:
        if req.is_lock:
            add(req, TimePoint(req.op_time), Reason.LOCK_BEFORE_OP)
        else:
            add(TimePoint(req.op_time), req, Reason.OP_BEFORE_UNLOCK)

    for earlier, later in combinations(s.ops, 2):
        if earlier.conflicts_with(later):
            add(index.release_for(earlier), index.lock_for(later), Reason.CONFLICT)

    by_txn: dict[int, list[Request]] = defaultdict(list)
    for req in requests:
        by_txn[req.txn].append(req)
    for txn_requests in by_txn.values():
        locks = [r for r in txn_requests if r.is_lock]
        unlocks = [r for r in txn_requests if r.is_unlock]
        for lock in locks:
            for unlock in unlocks:
                add(lock, unlock, Reason.TWO_PHASE)

    for t in range(1, len(s)):
        add(TimePoint(t), TimePoint(t + 1), Reason.TIME_CHAIN)

    if mode is Mode.STRICT:
        last_op = {op.txn: op.time for op in s.ops}
        for req in requests:
            if req.kind is RequestKind.XU:
                add(TimePoint(last_op[req.txn]), req, Reason.STRICT)

    inequalities = list(found.values())
    items = {q.lhs for q in inequalities} | {q.rhs for q in inequalities}
    return InequalitySystem(inequalities, requests, len(s), mode, sorted(items, key=item_key))
