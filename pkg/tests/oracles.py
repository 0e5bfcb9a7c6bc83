"""Independent reference procedures used by the test suite.

None of these go through the constraint graph: the membership oracle simulates
a lock manager and searches every way of interleaving lock/unlock requests with
the operations; the cycle oracle works on adjacency-matrix powers.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

import numpy as np

from twopl.constraints import Request, RequestKind, derive_requests
from twopl.schedule import Action, Operation, Schedule


def semantic_member(s: Schedule, requests: list[Request] | None = None) -> bool:
    """Decide 2PL membership by searching all legal placements of the requests.

    State is (operations executed so far, set of issued requests). A lock may be
    issued when no other transaction holds an incompatible lock on its resource
    and its transaction has not yet released anything. An unlock may be issued
    once every lock of its transaction is issued and every operation of its
    (transaction, resource) group has run. An operation runs once its
    transaction holds an adequate lock and every lock serving an operation up
    to this one was issued.
    """
    reqs = derive_requests(s) if requests is None else list(requests)
    n = len(s)
    full = (1 << len(reqs)) - 1
    bit = {r: 1 << i for i, r in enumerate(reqs)}
    group_ops: dict[tuple[int, str], list[int]] = {}
    for op in s.ops:
        group_ops.setdefault((op.txn, op.resource), []).append(op.time)
    group_reqs: dict[tuple[int, str], dict[RequestKind, Request]] = {}
    for r in reqs:
        group_reqs.setdefault((r.txn, r.resource), {})[r.kind] = r
    txn_locks = {}
    txn_unlocks = {}
    for r in reqs:
        target = txn_locks if r.is_lock else txn_unlocks
        target[r.txn] = target.get(r.txn, 0) | bit[r]

    def holds(issued: int, txn: int, res: str) -> tuple[bool, bool]:
        """(shared held, exclusive held) for one transaction on one resource."""
        g = group_reqs.get((txn, res), {})
        release = g.get(RequestKind.SU) or g.get(RequestKind.XU)
        released = release is not None and issued & bit[release]
        sl, xl = g.get(RequestKind.SL), g.get(RequestKind.XL)
        shared = sl is not None and bool(issued & bit[sl]) and not released
        exclusive = xl is not None and bool(issued & bit[xl]) and not released
        return shared, exclusive

    def may_issue(r: Request, issued: int, executed: int) -> bool:
        if r.is_lock:
            if issued & txn_unlocks.get(r.txn, 0):
                return False
            for (txn, res) in group_reqs:
                if txn == r.txn or res != r.resource:
                    continue
                shared, exclusive = holds(issued, txn, res)
                if exclusive or (r.kind is RequestKind.XL and shared):
                    return False
            return True
        if (issued & txn_locks.get(r.txn, 0)) != txn_locks.get(r.txn, 0):
            return False
        return all(t <= executed for t in group_ops[r.txn, r.resource])

    def may_run(op: Operation, issued: int) -> bool:
        shared, exclusive = holds(issued, op.txn, op.resource)
        if op.action is Action.WRITE and not exclusive:
            return False
        if op.action is Action.READ and not (shared or exclusive):
            return False
        g = group_reqs[op.txn, op.resource]
        return all(issued & bit[r] for r in g.values() if r.is_lock and r.op_time <= op.time)

    @lru_cache(maxsize=None)
    def search(executed: int, issued: int) -> bool:
        if executed == n and issued == full:
            return True
        if executed < n and may_run(s.ops[executed], issued) and search(executed + 1, issued):
            return True
        for r in reqs:
            if not issued & bit[r] and may_issue(r, issued, executed):
                if search(executed, issued | bit[r]):
                    return True
        return False

    return search(0, 0)


def shortest_cycle_length(nodes: list, arcs: list[tuple]) -> int | None:
    """Girth of a directed graph: smallest k with a nonzero diagonal in A^k."""
    index = {v: i for i, v in enumerate(nodes)}
    size = len(nodes)
    if size == 0:
        return None
    adj = np.zeros((size, size), dtype=np.int64)
    for a, b in arcs:
        adj[index[a], index[b]] = 1
    power = np.eye(size, dtype=np.int64)
    for k in range(1, size + 1):
        power = np.minimum(power @ adj, 1)
        if power.trace() > 0:
            return k
    return None


def has_cycle_of_length_at_most(nodes: list, arcs: list[tuple], k: int) -> bool:
    """Exhaustive search over node sequences of length <= k."""
    arcset = set(arcs)
    succ: dict = {}
    for a, b in arcs:
        succ.setdefault(a, []).append(b)
    for length in range(2, k + 1):
        for start in nodes:
            stack = [(start, (start,))]
            while stack:
                node, path = stack.pop()
                if len(path) == length:
                    if (node, start) in arcset:
                        return True
                    continue
                for nxt in succ.get(node, []):
                    if nxt not in path:
                        stack.append((nxt, path + (nxt,)))
    return False


def all_schedules(n: int, txns: int, resources: int):
    names = "xyzuvw"[:resources]
    token = list(itertools.product("rw", range(1, txns + 1), names))
    for combo in itertools.product(token, repeat=n):
        yield Schedule.of(combo)


def random_schedule(rng: random.Random, max_txns: int, max_resources: int, max_len: int, min_len: int = 0) -> Schedule:
    names = "xyzuvw"[:max_resources]
    n = rng.randint(min_len, max_len)
    return Schedule.of([(rng.choice("rw"), rng.randint(1, max_txns), rng.choice(names)) for _ in range(n)])


def random_serial_schedule(rng: random.Random, max_txns: int, max_resources: int, max_len: int) -> Schedule:
    """Each transaction's operations form one contiguous block."""
    names = "xyzuvw"[:max_resources]
    n = rng.randint(1, max_len)
    txns = list(range(1, rng.randint(1, max_txns) + 1))
    rng.shuffle(txns)
    cuts = sorted(rng.sample(range(1, n), min(len(txns) - 1, n - 1))) if n > 1 else []
    bounds = [0, *cuts, n]
    triples = []
    for txn, (lo, hi) in zip(txns, zip(bounds, bounds[1:])):
        triples.extend((rng.choice("rw"), txn, rng.choice(names)) for _ in range(hi - lo))
    return Schedule.of(triples)
