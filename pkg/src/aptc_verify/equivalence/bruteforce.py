"""Greatest-fixpoint bisimulation checking, used as a testing oracle.

Starts from the full relation between the two state sets (TICK nodes
included) and removes pairs that violate the transfer conditions until
nothing changes.
"""

from typing import Callable, Iterable, List, Optional, Set, Tuple

from ..config import settings
from ..core.errors import SizeCapError
from ..semantics.lts import StepLTS
from .partition import TAU_KEY, Graph, graph_of
from .verdict import EquivalenceVerdict

Member = Callable[[int, int], bool]

STRONG_KINDS = ("step",)
WEAK_KINDS = ("rbs", "branching")


def _tau_reach(g: Graph, s: int) -> List[int]:
    seen = {s}
    order = [s]
    for x in order:
        for k, d in g.edges[x]:
            if k == TAU_KEY and d not in seen:
                seen.add(d)
                order.append(d)
    return order


def _answers(g: Graph, member: Member, x: int, y: int, weak: bool) -> bool:
    """Every move and the termination of ``x`` are answered by ``y``."""
    ys = _tau_reach(g, y) if weak else [y]
    for k, x2 in g.edges[x]:
        if weak and k == TAU_KEY and member(x2, y):
            continue
        if not any(member(x, y1) and any(k2 == k and member(x2, y2) for k2, y2 in g.edges[y1]) for y1 in ys):
            return False
    if g.terminating[x] and not any(member(x, y1) and g.terminating[y1] for y1 in ys):
        return False
    return True


def _pair_ok(g: Graph, rel: Set[Tuple[int, int]], p: int, q: int, weak: bool) -> bool:
    forward = _answers(g, lambda a, b: (a, b) in rel, p, q, weak)
    return forward and _answers(g, lambda a, b: (b, a) in rel, q, p, weak)


def _rooted(g: Graph, rel: Set[Tuple[int, int]], p: int, q: int) -> bool:
    if g.terminating[p] != g.terminating[q]:
        return False
    for x, y, member in ((p, q, lambda a, b: (a, b) in rel), (q, p, lambda a, b: (b, a) in rel)):
        for k, x2 in g.edges[x]:
            if not any(k2 == k and member(x2, y2) for k2, y2 in g.edges[y]):
                return False
    return True


def _nodes(g: Graph, side: int) -> range:
    first, tick = g.sides[side]
    return range(first, tick + 1)


def _check_kind(kind: str) -> bool:
    if kind in STRONG_KINDS:
        return False
    if kind in WEAK_KINDS:
        return True
    raise ValueError(f"unknown equivalence kind {kind!r}")


def brute_force_bisim(l1: StepLTS, l2: StepLTS, kind: str = "step", cap: Optional[int] = None) -> EquivalenceVerdict:
    weak = _check_kind(kind)
    cap = cap or settings().brute_force_cap
    if l1.num_states + l2.num_states > cap:
        raise SizeCapError(f"brute force limited to {cap} states, got {l1.num_states + l2.num_states}")
    g = graph_of(l1, l2)
    rel = {(p, q) for p in _nodes(g, 0) for q in _nodes(g, 1)}
    changed = True
    while changed:
        changed = False
        for pair in sorted(rel):
            if not _pair_ok(g, rel, pair[0], pair[1], weak):
                rel.discard(pair)
                changed = True
    p0, q0 = g.roots
    equivalent = (p0, q0) in rel and (kind != "rbs" or _rooted(g, rel, p0, q0))
    relation = frozenset((g.state(p)[1], g.state(q)[1]) for p, q in rel) if equivalent else None
    return EquivalenceVerdict(equivalent, kind, relation)


def check_witness(l1: StepLTS, l2: StepLTS, relation: Iterable[Tuple[int, int]], kind: str = "step") -> bool:
    """Re-verify that ``relation`` (pairs of state ids, TICK allowed) is a bisimulation of ``kind``
    relating the initial states."""
    weak = _check_kind(kind)
    g = graph_of(l1, l2)
    rel = {(g.node(0, p), g.node(1, q)) for p, q in relation}
    p0, q0 = g.roots
    if (p0, q0) not in rel:
        return False
    if not all(_pair_ok(g, rel, p, q, weak) for p, q in rel):
        return False
    return kind != "rbs" or _rooted(g, rel, p0, q0)


