"""Schedules of read/write operations and their textual notation.

A schedule is written as whitespace- (or comma-) separated tokens such as
``r1(y) r2(z) w2(z)``. The position of a token is the time of the operation,
counting from 1.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterator, Sequence

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9]*\Z")
_TXN = re.compile(r"[1-9][0-9]*\Z")
_SEPARATORS = re.compile(r"[\s,]+")


class Action(enum.Enum):
    READ = "r"
    WRITE = "w"


class ParseError(ValueError):
    """Raised for malformed schedule text; ``index`` is the 1-based token position."""

    def __init__(self, index: int, token: str, reason: str):
        self.index = index
        self.token = token
        self.reason = reason
        super().__init__(f"token {index} ({token!r}): {reason}")


@dataclass(frozen=True)
class Operation:
    action: Action
    txn: int
    resource: str
    time: int

    @property
    def is_read(self) -> bool:
        return self.action is Action.READ

    @property
    def is_write(self) -> bool:
        return self.action is Action.WRITE

    def conflicts_with(self, other: Operation) -> bool:
        return (
            self.txn != other.txn
            and self.resource == other.resource
            and (self.is_write or other.is_write)
        )

    def __str__(self) -> str:
        return f"{self.action.value}{self.txn}({self.resource})"


@dataclass(frozen=True)
class Schedule:
    ops: tuple[Operation, ...] = ()

    def __post_init__(self):
        for expected, op in enumerate(self.ops, start=1):
            if op.time != expected:
                raise ValueError(f"operation {op} has time {op.time}, expected {expected}")
            if op.txn < 1:
                raise ValueError(f"transaction id must be positive, got {op.txn}")
            if not _IDENT.match(op.resource):
                raise ValueError(f"bad resource identifier {op.resource!r}")

    @classmethod
    def of(cls, triples: Sequence[tuple[str, int, str]]) -> Schedule:
        """Build from ``(action_letter, txn, resource)`` triples."""
        return cls(tuple(Operation(Action(a), txn, res, t) for t, (a, txn, res) in enumerate(triples, start=1)))

    def __len__(self) -> int:
        return len(self.ops)

    def __iter__(self) -> Iterator[Operation]:
        return iter(self.ops)

    def __getitem__(self, time: int) -> Operation:
        """Operation at ``time`` (1-based)."""
        if not 1 <= time <= len(self.ops):
            raise IndexError(time)
        return self.ops[time - 1]

    @property
    def transactions(self) -> list[int]:
        """Transaction ids in order of first appearance."""
        return list(dict.fromkeys(op.txn for op in self.ops))

    @property
    def resources(self) -> list[str]:
        """Resources in order of first appearance."""
        return list(dict.fromkeys(op.resource for op in self.ops))

    def __str__(self) -> str:
        return format_schedule(self)


def _parse_token(index: int, token: str, time: int) -> Operation:
    letter = token[0]
    if letter not in "rw":
        raise ParseError(index, token, f"unknown action {letter!r} (expected 'r' or 'w')")
    open_at = token.find("(")
    if open_at < 0 or not token.endswith(")"):
        raise ParseError(index, token, "missing parentheses around resource")
    txn_text = token[1:open_at]
    resource = token[open_at + 1 : -1]
    if not txn_text:
        raise ParseError(index, token, "missing transaction id")
    if not txn_text.isdigit():
        raise ParseError(index, token, f"non-numeric transaction id {txn_text!r}")
    if int(txn_text) == 0:
        raise ParseError(index, token, "transaction id 0 is not allowed")
    if not _TXN.match(txn_text):
        raise ParseError(index, token, "transaction id has leading zeros")
    if not resource:
        raise ParseError(index, token, "empty resource")
    if not _IDENT.match(resource):
        raise ParseError(index, token, f"bad resource identifier {resource!r}")
    return Operation(Action(letter), int(txn_text), resource, time)


def parse_schedule(text: str) -> Schedule:
    """Parse schedule notation; raises :class:`ParseError` on the first bad token."""
    tokens = [tok for tok in _SEPARATORS.split(text) if tok]
    ops = [_parse_token(i, tok, i) for i, tok in enumerate(tokens, start=1)]
    return Schedule(tuple(ops))


def format_schedule(s: Schedule) -> str:
    return " ".join(str(op) for op in s.ops)
