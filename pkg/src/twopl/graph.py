"""Constraint graph over items, minimal-cycle repair and grouped topological sort.

The inequality system is satisfiable exactly when its graph is acyclic. When it
is not, cycles are broken one at a time: find a shortest cycle by BFS, drop one
arc of it (preferring a same-transaction lock-before-unlock arc whose lock serves
a later operation than the unlock), and repeat.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .constraints import Inequality, InequalitySystem, Item, Reason, Request, item_key


class CyclicGraphError(ValueError):
    """Raised when an operation that needs an acyclic graph gets a cyclic one."""


class ConstraintGraph:
    """Directed graph whose arcs are inequalities.

    Nodes and arcs remember their creation order; every traversal follows it,
    which makes cycle detection and sorting deterministic.
    """

    def __init__(self, nodes: Iterable[Item] = (), arcs: Iterable[Inequality] = ()):
        self._order: dict[Item, int] = {}
        self._succ: dict[Item, dict[Item, Inequality]] = {}
        self._pred: dict[Item, dict[Item, Inequality]] = {}
        for node in nodes:
            self.add_node(node)
        for arc in arcs:
            self.add_arc(arc)

    def add_node(self, node: Item) -> None:
        if node not in self._order:
            self._order[node] = len(self._order)
            self._succ[node] = {}
            self._pred[node] = {}

    def add_arc(self, arc: Inequality) -> None:
        self.add_node(arc.lhs)
        self.add_node(arc.rhs)
        if arc.rhs in self._succ[arc.lhs]:
            return
        self._succ[arc.lhs][arc.rhs] = arc
        self._pred[arc.rhs][arc.lhs] = arc

    def remove_arc(self, arc: Inequality) -> None:
        del self._succ[arc.lhs][arc.rhs]
        del self._pred[arc.rhs][arc.lhs]

    def has_arc(self, lhs: Item, rhs: Item) -> bool:
        return rhs in self._succ.get(lhs, {})

    def arc(self, lhs: Item, rhs: Item) -> Inequality:
        return self._succ[lhs][rhs]

    @property
    def nodes(self) -> list[Item]:
        return list(self._order)

    @property
    def arcs(self) -> list[Inequality]:
        return [a for succ in self._succ.values() for a in succ.values()]

    def successors(self, node: Item) -> list[Item]:
        return list(self._succ[node])

    def predecessors(self, node: Item) -> list[Item]:
        return list(self._pred[node])

    def rank(self, node: Item) -> int:
        """Creation index of ``node``."""
        return self._order[node]

    def copy(self) -> ConstraintGraph:
        return ConstraintGraph(self.nodes, self.arcs)

    def __contains__(self, node: object) -> bool:
        return node in self._order

    def __len__(self) -> int:
        return len(self._order)

    def is_acyclic(self) -> bool:
        indegree = {n: len(p) for n, p in self._pred.items()}
        ready = [n for n, d in indegree.items() if d == 0]
        seen = 0
        while ready:
            node = ready.pop()
            seen += 1
            for nxt in self._succ[node]:
                indegree[nxt] -= 1
                if indegree[nxt] == 0:
                    ready.append(nxt)
        return seen == len(self._order)


@dataclass
class RepairReport:
    removed: list[Inequality] = field(default_factory=list)
    cycles: list[list[Inequality]] = field(default_factory=list)

    @property
    def culprit(self) -> Optional[Inequality]:
        return self.removed[0] if self.removed else None

    @property
    def iterations(self) -> int:
        return len(self.removed)


@dataclass
class GroupedOrder:
    groups: list[list[Item]]

    def index(self) -> dict[Item, int]:
        return {item: g for g, group in enumerate(self.groups) for item in group}

    def flat(self) -> list[Item]:
        return [item for group in self.groups for item in group]

    def is_valid_for(self, g: ConstraintGraph) -> bool:
        """Every group non-empty, every node placed once, every arc pointing forward."""
        where = self.index()
        if any(not group for group in self.groups):
            return False
        if len(where) != len(self.flat()) or set(where) != set(g.nodes):
            return False
        return all(where[a.lhs] < where[a.rhs] for a in g.arcs)


def build_graph(sys: InequalitySystem) -> ConstraintGraph:
    """One node per item and one arc per inequality, both created in canonical item order."""
    g = ConstraintGraph(sorted(sys.items, key=item_key))
    for arc in sorted(sys.inequalities, key=lambda a: (g.rank(a.lhs), g.rank(a.rhs))):
        g.add_arc(arc)
    return g


def _shortest_cycle_through(g: ConstraintGraph, source: Item, limit: int) -> Optional[list[Item]]:
    """Nodes of a shortest cycle through ``source`` with fewer than ``limit`` arcs."""
    parent: dict[Item, Optional[Item]] = {source: None}
    depth = {source: 0}
    queue = deque([source])
    while queue:
        node = queue.popleft()
        if depth[node] + 1 >= limit:
            return None
        for nxt in g.successors(node):
            if nxt == source:
                path = [node]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return path[::-1]
            if nxt not in parent:
                parent[nxt] = node
                depth[nxt] = depth[node] + 1
                queue.append(nxt)
    return None


def find_minimal_cycle(g: ConstraintGraph) -> Optional[list[Inequality]]:
    """A cycle with the fewest arcs, as arcs in order starting at its source.

    Sources are tried in node creation order and only a strictly shorter cycle
    replaces the current best, so ties go to the earliest source.
    """
    best: Optional[list[Item]] = None
    limit = len(g) + 1
    for source in g.nodes:
        found = _shortest_cycle_through(g, source, limit)
        if found is not None:
            best, limit = found, len(found)
            if limit == 2:
                break
    if best is None:
        return None
    return [g.arc(a, b) for a, b in zip(best, best[1:] + best[:1])]


def _is_preferred(arc: Inequality) -> bool:
    lhs, rhs = arc.lhs, arc.rhs
    return (
        arc.reason is Reason.TWO_PHASE
        and isinstance(lhs, Request)
        and isinstance(rhs, Request)
        and lhs.is_lock
        and rhs.is_unlock
        and lhs.txn == rhs.txn
        and lhs.op_time > rhs.op_time
    )


def select_removal_arc(cycle: Sequence[Inequality]) -> Inequality:
    if not cycle:
        raise ValueError("empty cycle")
    return next((arc for arc in cycle if _is_preferred(arc)), cycle[0])


def repair(g: ConstraintGraph) -> RepairReport:
    """Remove arcs from ``g`` in place until it is acyclic."""
    report = RepairReport()
    while (cycle := find_minimal_cycle(g)) is not None:
        arc = select_removal_arc(cycle)
        g.remove_arc(arc)
        report.cycles.append(cycle)
        report.removed.append(arc)
    return report


def grouped_topological_sort(g: ConstraintGraph) -> GroupedOrder:
    """Kahn's algorithm by layers: each group holds the nodes freed by the previous one."""
    indegree = {n: len(g.predecessors(n)) for n in g.nodes}
    layer = [n for n in g.nodes if indegree[n] == 0]
    groups: list[list[Item]] = []
    placed = 0
    while layer:
        groups.append(layer)
        placed += len(layer)
        freed = []
        for node in layer:
            for nxt in g.successors(node):
                indegree[nxt] -= 1
                if indegree[nxt] == 0:
                    freed.append(nxt)
        layer = sorted(freed, key=g.rank)
    if placed != len(g):
        raise CyclicGraphError("graph has a cycle; no topological order exists")
    return GroupedOrder(groups)
