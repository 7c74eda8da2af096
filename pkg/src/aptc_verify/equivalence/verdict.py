"""Verdicts, counterexample search and trace replay."""

from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Hashable, Iterable, List, Optional, Sequence, Tuple, Union

from ..semantics.lts import StepLTS
from .partition import TAU_KEY, Graph, graph_of, unmatched_edge

DEADLOCK = "δ"
TERMINATION = "√"

TraceItem = Union[Hashable, str]


def _render(item) -> Union[List[str], str]:
    if isinstance(item, str):
        return item
    return item.names()


@dataclass(frozen=True)
class Counterexample:
    """A distinguishing trace.

    ``side`` (0 = left, 1 = right) names the LTS that executes the trace; the
    other one is blocked at ``trace[branch_point]``.  A trace may end with
    the pseudo steps "δ" (the executing side deadlocks there) or "√" (it
    terminates there).  Kinds: "refusal" (replays on one side only),
    "branching" (a path to a pair of inequivalent states plus the unmatched
    step of the first one) and "root" (the rooted condition fails).
    """

    kind: str
    trace: Tuple[TraceItem, ...]
    side: int
    branch_point: int

    def to_dict(self) -> Dict:
        return {
            "kind": self.kind,
            "side": "left" if self.side == 0 else "right",
            "branch_point": self.branch_point,
            "trace": [_render(x) for x in self.trace],
        }

    def describe(self) -> str:
        steps = " ".join(x if isinstance(x, str) else str(x) for x in self.trace) or "(empty)"
        who = "left" if self.side == 0 else "right"
        return f"{self.kind} counterexample ({who} executes): {steps}"


@dataclass(frozen=True)
class EquivalenceVerdict:
    equivalent: bool
    kind: str
    relation: Optional[FrozenSet[Tuple[int, int]]] = None
    counterexample: Optional[Counterexample] = None

    def to_dict(self) -> Dict:
        return {
            "equivalent": self.equivalent,
            "kind": self.kind,
            "relation_size": None if self.relation is None else len(self.relation),
            "counterexample": None if self.counterexample is None else self.counterexample.to_dict(),
        }


def _closure(g: Graph, nodes: Iterable[int], weak: bool) -> FrozenSet[int]:
    seen = set(nodes)
    if not weak:
        return frozenset(seen)
    todo = list(seen)
    while todo:
        s = todo.pop()
        for k, d in g.edges[s]:
            if k == TAU_KEY and d not in seen:
                seen.add(d)
                todo.append(d)
    return frozenset(seen)


def _stuck(g: Graph, s: int) -> bool:
    return not g.edges[s] and not g.terminating[s]


def _path(parent: Dict, node) -> List[str]:
    keys = []
    while parent[node] is not None:
        node, key = parent[node]
        if key is not None:
            keys.append(key)
    return keys[::-1]


def refusal_trace(g: Graph, attacker: int, defender: int, weak: bool) -> Optional[List[str]]:
    """Shortest trace of ``attacker`` that ``defender`` cannot follow, as label keys.

    Explores (attacker state, defender state set) pairs breadth first; in weak
    mode the defender set is tau-closed and attacker tau moves are free.
    """
    start = (attacker, _closure(g, {defender}, weak))
    parent: Dict = {start: None}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        a, ds = node
        if _stuck(g, a) and not any(_stuck(g, d) for d in ds):
            return _path(parent, node) + [DEADLOCK]
        if g.terminating[a] and not any(g.terminating[d] for d in ds):
            return _path(parent, node) + [TERMINATION]
        for k, a2 in sorted(g.edges[a]):
            if weak and k == TAU_KEY:
                nxt, rec = (a2, ds), None
            else:
                ds2 = _closure(g, (d2 for d in ds for k2, d2 in g.edges[d] if k2 == k), weak)
                if not ds2:
                    return _path(parent, node) + [k]
                nxt, rec = (a2, ds2), k
            if nxt not in parent:
                parent[nxt] = (node, rec)
                queue.append(nxt)
    return None


def _items(g: Graph, keys: Sequence[str]) -> Tuple[TraceItem, ...]:
    return tuple(k if k in (DEADLOCK, TERMINATION) else g.labels[k] for k in keys)


def _branching_trace(g: Graph, block: Sequence[int], weak: bool) -> Optional[Counterexample]:
    p0, q0 = g.roots
    start = (p0, q0)
    parent: Dict = {start: None}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        p, q = node
        if block[p] != block[q]:
            path = _path(parent, node)
            for side, (x, y) in enumerate(((p, q), (q, p))):
                edge = unmatched_edge(g, block, x, y)
                if edge is not None:
                    return Counterexample("branching", _items(g, path + [edge[0]]), side, len(path))
            return Counterexample("branching", _items(g, path), 0, len(path))
        moves = []
        for k, p2 in sorted(g.edges[p]):
            if weak and k == TAU_KEY:
                moves.append(((p2, q), None))
            for k2, q2 in sorted(g.edges[q]):
                if k2 == k:
                    moves.append(((p2, q2), k))
        if weak:
            moves.extend(((p, q2), None) for k2, q2 in sorted(g.edges[q]) if k2 == TAU_KEY)
        for nxt, rec in moves:
            if nxt not in parent:
                parent[nxt] = (node, rec)
                queue.append(nxt)
    return None


def find_counterexample(g: Graph, block: Sequence[int], weak: bool) -> Optional[Counterexample]:
    """Refusal traces first (left attacks, then right); otherwise a branching witness."""
    p0, q0 = g.roots
    for side, (a, d) in enumerate(((p0, q0), (q0, p0))):
        keys = refusal_trace(g, a, d, weak)
        if keys is not None:
            return Counterexample("refusal", _items(g, keys), side, len(keys) - 1)
    return _branching_trace(g, block, weak)


def _key(item) -> str:
    if isinstance(item, str):
        return item
    if isinstance(item, (list, tuple)):
        return ",".join(item)
    return item.key


def replay(lts: StepLTS, trace: Sequence, weak: bool = False) -> bool:
    """Whether ``lts`` can execute ``trace`` (items: StepLabels, name lists or keys).

    A final "δ" requires reaching a deadlocked state, a final "√" a terminating one.
    """
    g = graph_of(lts)
    current = _closure(g, {g.roots[0]}, weak)
    for i, item in enumerate(trace):
        key = _key(item)
        last = i == len(trace) - 1
        if key == DEADLOCK and last:
            return any(_stuck(g, s) for s in current)
        if key == TERMINATION and last:
            return any(g.terminating[s] for s in current)
        current = _closure(g, (d for s in current for k, d in g.edges[s] if k == key), weak)
        if not current:
            return False
    return True
