"""Recursive specifications, RDP unfolding and the guardedness / linearity check."""

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from ..core.errors import UnknownVariableError
from .actions import ActionLabel
from .terms import (
    Abstract, Alt, Atom, CommMerge, ConflictElim, DELTA_T, Encaps, Par, RecRef, SHADOW_T, Seq, StateOp,
    Term, Unless, Var, WholePar, fold, flatten, is_event_like,
)


@dataclass(frozen=True)
class RecursiveSpec:
    """Equations X = t; bodies refer to each other through Var."""

    equations: Tuple[Tuple[str, Term], ...]

    def __post_init__(self):
        object.__setattr__(self, "equations", tuple(sorted(self.equations, key=lambda eq: eq[0])))
        names = [n for n, _ in self.equations]
        if len(set(names)) != len(names):
            raise ValueError("duplicate equation names")

    def __hash__(self) -> int:
        h = self.__dict__.get("_h")
        if h is None:
            h = hash(self.equations)
            object.__setattr__(self, "_h", h)
        return h

    @classmethod
    def of(cls, equations: Dict[str, Term]) -> "RecursiveSpec":
        return cls(tuple(equations.items()))

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(n for n, _ in self.equations)

    def body(self, name: str) -> Term:
        bodies = self.__dict__.get("_bodies")
        if bodies is None:
            bodies = dict(self.equations)
            object.__setattr__(self, "_bodies", bodies)
        if name not in bodies:
            raise UnknownVariableError(name)
        return bodies[name]

    def ref(self, name: str) -> RecRef:
        self.body(name)
        return RecRef(name, self)


def close(t: Term, spec: RecursiveSpec) -> Term:
    """Replace every Var X (X an equation of spec) by RecRef(X, spec)."""
    if isinstance(t, Var):
        if t.name in spec.names:
            return RecRef(t.name, spec)
        return t
    if isinstance(t, (Atom, RecRef)):
        return t
    kids = t.children()
    new = tuple(close(k, spec) for k in kids)
    if all(a is b for a, b in zip(kids, new)):
        return t
    if isinstance(t, (ConflictElim,)):
        return ConflictElim(new[0])
    if isinstance(t, Encaps):
        return Encaps(t.labels, new[0])
    if isinstance(t, Abstract):
        return Abstract(t.labels, new[0])
    if isinstance(t, StateOp):
        return StateOp(t.state, new[0])
    return type(t)(new[0], new[1])


def unfold(var: str, spec: RecursiveSpec) -> Term:
    """RDP: <X|E> = t_X with every variable closed over E."""
    cache = spec.__dict__.get("_unfolded")
    if cache is None:
        cache = {}
        object.__setattr__(spec, "_unfolded", cache)
    if var not in cache:
        cache[var] = close(spec.body(var), spec)
    return cache[var]


@dataclass(frozen=True)
class GuardVerdict:
    guarded: bool
    linear: bool
    cycle: Tuple[str, ...] = ()
    nonlinear: Tuple[str, ...] = ()

    def to_dict(self) -> Dict:
        return {"guarded": self.guarded, "linear": self.linear,
                "cycle": list(self.cycle), "nonlinear": list(self.nonlinear)}


class _Exposure:
    """Variables reachable from a body before any observable event."""

    def __init__(self, spec: RecursiveSpec, silent: FrozenSet[ActionLabel]):
        self.spec = spec
        self.silent = silent
        self.passable: Dict[str, bool] = {n: False for n in spec.names}

    def _atom_passable(self, label: ActionLabel, hidden: FrozenSet[ActionLabel]) -> bool:
        if label.is_tau or label.is_shadow:
            return True
        return label in hidden or label in self.silent

    def scan(self, t: Term, hidden: FrozenSet[ActionLabel] = frozenset()) -> Tuple[Set[str], bool]:
        if isinstance(t, Atom):
            if t.label.is_delta:
                return set(), False
            return set(), self._atom_passable(t.label, hidden)
        if isinstance(t, (Var, RecRef)):
            return {t.name}, self.passable.get(t.name, False)
        if isinstance(t, Seq):
            vx, px = self.scan(t.left, hidden)
            if not px:
                return vx, False
            vy, py = self.scan(t.right, hidden)
            return vx | vy, py
        if isinstance(t, Alt):
            vx, px = self.scan(t.left, hidden)
            vy, py = self.scan(t.right, hidden)
            return vx | vy, px or py
        if isinstance(t, (Par, WholePar, CommMerge)):
            vx, px = self.scan(t.left, hidden)
            vy, py = self.scan(t.right, hidden)
            return vx | vy, px and py
        if isinstance(t, Unless):
            return self.scan(t.left, hidden)
        if isinstance(t, Abstract):
            return self.scan(t.body, hidden | t.labels)
        if isinstance(t, (ConflictElim, Encaps, StateOp)):
            return self.scan(t.body, hidden)
        raise TypeError(f"not a term: {t!r}")

    def graph(self) -> Dict[str, Set[str]]:
        changed = True
        while changed:
            changed = False
            for name, body in self.spec.equations:
                _, p = self.scan(body)
                if p and not self.passable[name]:
                    self.passable[name] = True
                    changed = True
        return {name: {v for v in self.scan(body)[0] if v in self.passable} for name, body in self.spec.equations}


def _find_cycle(graph: Dict[str, Set[str]]) -> Optional[List[str]]:
    color: Dict[str, int] = {}
    for root in sorted(graph):
        if color.get(root):
            continue
        stack = [(root, iter(sorted(graph[root])))]
        path = [root]
        color[root] = 1
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                stack.pop()
                path.pop()
                color[node] = 2
                continue
            state = color.get(nxt, 0)
            if state == 1:
                return path[path.index(nxt):]
            if state == 0:
                color[nxt] = 1
                path.append(nxt)
                stack.append((nxt, iter(sorted(graph[nxt]))))
    return None


def _linear_summand(t: Term) -> bool:
    if is_event_like(t) or t == DELTA_T:
        return True
    if isinstance(t, Atom) and t.label.is_plain_shadow:
        return True
    return isinstance(t, Seq) and is_event_like(t.left) and isinstance(t.right, (Var, RecRef))


def check_guarded_linear(spec: RecursiveSpec, silent: FrozenSet[ActionLabel] = frozenset()) -> GuardVerdict:
    """Guarded: no cycle of variables reachable through tau / shadow prefixes only.

    ``silent`` lists further actions to treat as tau (an abstraction context).
    """
    graph = _Exposure(spec, frozenset(silent)).graph()
    cycle = _find_cycle(graph)
    nonlinear = tuple(name for name, body in spec.equations
                      if not all(_linear_summand(s) for s in flatten(body, Alt)))
    return GuardVerdict(guarded=cycle is None, linear=not nonlinear,
                        cycle=tuple(cycle or ()), nonlinear=nonlinear)


def lts_to_recursive_spec(lts, prefix: str = "X") -> RecursiveSpec:
    """Linear specification with one variable per LTS state (X0 is the initial state)."""
    from ..semantics.lts import TICK

    buckets: Dict[int, List[Term]] = {s: [] for s in range(lts.num_states)}
    for src, label, dst in lts.transitions:
        events = fold(Par, [Atom(e) for e in label.events])
        buckets[src].append(events if dst == TICK else Seq(events, Var(f"{prefix}{dst}")))
    for s in lts.terminating:
        buckets[s].append(SHADOW_T)
    equations = {f"{prefix}{s}": fold(Alt, summands) for s, summands in buckets.items()}
    if lts.initial != 0:
        equations[f"{prefix}init"] = Var(f"{prefix}{lts.initial}")
    return RecursiveSpec.of(equations)
