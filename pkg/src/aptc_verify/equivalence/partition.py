"""Disjoint-union graphs and strong partition refinement.

Both LTSs of a comparison are laid out in one graph: the states of the left
LTS, its TICK node, the states of the right LTS, its TICK node.  A TICK node
is a terminating state without transitions.  Labels are compared by key
(the canonical rendering of the step); ``"tau"`` is the silent key.
"""

from dataclasses import dataclass, field
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from ..semantics.lts import TICK, StepLTS

TAU_KEY = "tau"

Edge = Tuple[str, int]


@dataclass
class Graph:
    n: int
    edges: List[List[Edge]]
    terminating: List[bool]
    roots: Tuple[int, ...]
    labels: Dict[str, Hashable] = field(default_factory=dict)
    # per side: (first node, TICK node)
    sides: Tuple[Tuple[int, int], ...] = ()

    def node(self, side: int, state: int) -> int:
        first, tick = self.sides[side]
        return tick if state == TICK else first + state

    def state(self, node: int) -> Tuple[int, int]:
        """Inverse of ``node``: (side, state id or TICK)."""
        for side, (first, tick) in enumerate(self.sides):
            if first <= node <= tick:
                return side, (TICK if node == tick else node - first)
        raise IndexError(node)

    def real_states(self) -> int:
        return sum(tick - first for first, tick in self.sides)


def graph_of(*ltss: StepLTS) -> Graph:
    edges: List[List[Edge]] = []
    terminating: List[bool] = []
    labels: Dict[str, Hashable] = {}
    sides = []
    roots = []
    for lts in ltss:
        first = len(edges)
        tick = first + lts.num_states
        sides.append((first, tick))
        roots.append(first + lts.initial)
        edges.extend([] for _ in range(lts.num_states + 1))
        terminating.extend(s in lts.terminating for s in range(lts.num_states))
        terminating.append(True)
        for src, label, dst in lts.transitions:
            labels.setdefault(label.key, label)
            edges[first + src].append((label.key, tick if dst == TICK else first + dst))
    return Graph(len(edges), edges, terminating, tuple(roots), labels, tuple(sides))


def _relabel(keys: Sequence[Hashable]) -> Tuple[List[int], int]:
    ids: Dict[Hashable, int] = {}
    out = []
    for k in keys:
        out.append(ids.setdefault(k, len(ids)))
    return out, len(ids)


def strong_blocks(g: Graph) -> List[int]:
    """Coarsest strong bisimulation as a block id per node (signature refinement)."""
    block, count = _relabel(g.terminating)
    while True:
        sigs = [(block[s], g.terminating[s], frozenset((k, block[d]) for k, d in g.edges[s])) for s in range(g.n)]
        new, new_count = _relabel(sigs)
        block = new
        if new_count == count:
            return block
        count = new_count


def cross_pairs(g: Graph, block: Sequence[int], left: int = 0, right: int = 1) -> frozenset:
    """All (left state, right state) pairs sharing a block; states are LTS ids or TICK."""
    by_block: Dict[int, List[int]] = {}
    f2, t2 = g.sides[right]
    for node in range(f2, t2 + 1):
        by_block.setdefault(block[node], []).append(node)
    f1, t1 = g.sides[left]
    pairs = set()
    for node in range(f1, t1 + 1):
        for other in by_block.get(block[node], ()):
            pairs.add((g.state(node)[1], g.state(other)[1]))
    return frozenset(pairs)


def signature_of(g: Graph, block: Sequence[int], node: int) -> frozenset:
    return frozenset((k, block[d]) for k, d in g.edges[node])


def unmatched_edge(g: Graph, block: Sequence[int], s: int, t: int) -> Optional[Edge]:
    """First edge of ``s`` whose (label, target block) ``t`` cannot match directly."""
    offered = signature_of(g, block, t)
    for k, d in sorted(g.edges[s]):
        if (k, block[d]) not in offered:
            return k, d
    return None
