"""Structural operational semantics with step labels.

``StepSemantics`` computes, for a closed term, every derivable transition
``t --{e1,..,en}--> t'`` (or ``--> √``).  Steps are computed as sorted event
tuples ("raw steps") that may still carry tau and unmatched shadows; the LTS
builder turns them into StepLabels.

Conventions worth knowing:

* ``x || y`` only moves jointly (both sides contribute to the step); its
  successor is ``x' & y'``.
* ``x & y`` (whole parallel, n-ary after flattening) lets any nonempty subset
  of components move in one step; singleton steps of two components may
  communicate through gamma.
* ``shadow(e)`` is absorbed by an ``e`` contributed by another component of
  the same step.  An ``e`` may not fire unpaired while an idle component
  offers ``shadow(e)``.  Unmatched shadows are blocked by encapsulation and at
  the root of an LTS.
* With an empty conflict relation ``theta(x)`` behaves as ``x``.
"""

from collections import deque
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple, Union

from ..algebra.actions import TAU, ActionLabel
from ..algebra.environment import Environment
from ..algebra.recursion import check_guarded_linear, unfold
from ..algebra.terms import (
    Abstract, Alt, Atom, CommMerge, ConflictElim, DELTA_T, Encaps, Par, RecRef, SHADOW_T, Seq,
    StateOp, Term, Unless, Var, WholePar, fold, flatten, subterms,
)
from ..config import settings
from ..core.errors import GuardednessError, StateBoundError, StateTableError, UnknownVariableError
from ..core.logs import get_logger
from .constraints import CausalityTracker, Constraint
from .lts import TICK, StepLabel, StepLTS, _sorted, renumber

LOGGER = get_logger("aptc_lts", "lts.log")

Raw = Tuple[ActionLabel, ...]


class _Terminated:
    __slots__ = ()

    def __repr__(self) -> str:
        return "√"

    @property
    def text(self) -> str:
        return "√"


TERMINATED = _Terminated()

Successor = Union[Term, _Terminated]
Step = Tuple[Raw, Successor]


def norm_events(events: Sequence[ActionLabel]) -> Raw:
    items = [e for e in events if not e.is_tau]
    if not items:
        items = [TAU] if events else []
    return tuple(sorted(items, key=lambda e: e.text))


def join_events(parts: Sequence[Raw]) -> Tuple[Raw, FrozenSet[ActionLabel]]:
    """Join per-component contributions; a shadow is absorbed by its event from another component.

    Returns the joined events and the set of events that absorbed a shadow.
    """
    owners: List[Tuple[int, ActionLabel]] = [(i, e) for i, part in enumerate(parts) for e in part]
    kept: List[ActionLabel] = []
    paired: Set[ActionLabel] = set()
    for i, e in owners:
        if e.is_shadow and e.base is not None:
            if any(j != i and f == e.base for j, f in owners):
                paired.add(e.base)
                continue
        kept.append(e)
    return norm_events(kept), frozenset(paired)


def _has_shadow(events: Raw) -> bool:
    return any(e.is_shadow for e in events)


class StepSemantics:
    """Memoising step semantics for one environment."""

    def __init__(self, env: Environment):
        self.env = env
        self._steps: Dict[Term, Tuple[Step, ...]] = {}
        self._done: Dict[Term, bool] = {}
        self._canon: Dict[Term, Term] = {}
        self._alpha: Dict[Term, FrozenSet[ActionLabel]] = {}
        self._active: List[RecRef] = []
        self._partners = env.gamma_partners()

    # ------------------------------------------------------------------ #
    # recursion guard

    def _enter(self, ref: RecRef) -> None:
        if ref in self._active:
            names = [r.name for r in self._active[self._active.index(ref):]] + [ref.name]
            raise GuardednessError(names)
        self._active.append(ref)

    def _leave(self) -> None:
        self._active.pop()

    # ------------------------------------------------------------------ #
    # termination predicate

    def done(self, t: Term) -> bool:
        cached = self._done.get(t)
        if cached is not None:
            return cached
        if isinstance(t, Atom):
            result = t.label.is_plain_shadow
        elif isinstance(t, Seq):
            result = self.done(t.left) and self.done(t.right)
        elif isinstance(t, Alt):
            result = self.done(t.left) or self.done(t.right)
        elif isinstance(t, (Par, WholePar, CommMerge)):
            result = self.done(t.left) and self.done(t.right)
        elif isinstance(t, Unless):
            result = self.done(t.left)
        elif isinstance(t, (ConflictElim, Encaps, Abstract, StateOp)):
            result = self.done(t.body)
        elif isinstance(t, RecRef):
            self._enter(t)
            try:
                result = self.done(unfold(t.name, t.spec))
            finally:
                self._leave()
        elif isinstance(t, Var):
            raise UnknownVariableError(t.name)
        else:
            raise TypeError(f"not a term: {t!r}")
        self._done[t] = result
        return result

    # ------------------------------------------------------------------ #
    # syntactic alphabet (through recursion)

    def alphabet(self, t: Term) -> FrozenSet[ActionLabel]:
        cached = self._alpha.get(t)
        if cached is not None:
            return cached
        seen: Set[Tuple[str, int]] = set()
        labels: Set[ActionLabel] = set()
        stack = [t]
        while stack:
            cur = stack.pop()
            if isinstance(cur, Atom):
                if cur.label.is_ordinary:
                    labels.add(cur.label)
            elif isinstance(cur, RecRef):
                key = (cur.name, id(cur.spec))
                if key not in seen:
                    seen.add(key)
                    stack.append(unfold(cur.name, cur.spec))
            else:
                stack.extend(cur.children())
        result = frozenset(labels)
        self._alpha[t] = result
        return result

    # ------------------------------------------------------------------ #
    # structural canonical form for states

    def canon(self, t: Term) -> Term:
        cached = self._canon.get(t)
        if cached is not None:
            return cached
        result = self._canonicalise(t)
        self._canon[t] = result
        self._canon.setdefault(result, result)
        return result

    def _canonicalise(self, t: Term) -> Term:
        if isinstance(t, (Atom, RecRef, Var)):
            return t
        if isinstance(t, Seq):
            left, right = self.canon(t.left), self.canon(t.right)
            if left == DELTA_T:
                return DELTA_T
            if left == SHADOW_T:
                return right
            if right == SHADOW_T:
                return left
            if isinstance(left, Seq):
                return self.canon(Seq(left.left, Seq(left.right, right)))
            return Seq(left, right)
        if isinstance(t, Alt):
            items: List[Term] = []
            for part in flatten(t, Alt):
                items.extend(flatten(self.canon(part), Alt))
            live = [x for x in items if x != DELTA_T] or [DELTA_T]
            unique = {x.text: x for x in live}
            return fold(Alt, [unique[k] for k in sorted(unique)])
        if isinstance(t, WholePar):
            items = []
            for part in flatten(t, WholePar):
                items.extend(flatten(self.canon(part), WholePar))
            live = [x for x in items if x != SHADOW_T]
            if not live:
                return SHADOW_T
            live.sort(key=lambda x: x.text)
            return fold(WholePar, live)
        if isinstance(t, (Par, CommMerge)):
            left, right = self.canon(t.left), self.canon(t.right)
            if right.text < left.text:
                left, right = right, left
            return type(t)(left, right)
        if isinstance(t, ConflictElim):
            body = self.canon(t.body)
            if not self.env.conflicts or body == DELTA_T:
                return body
            return ConflictElim(body)
        if isinstance(t, Unless):
            left = self.canon(t.left)
            if not self.env.conflicts:
                return left
            return Unless(left, self.canon(t.right))
        if isinstance(t, (Encaps, Abstract)):
            body = self.canon(t.body)
            if not t.labels or body == DELTA_T:
                return body
            return type(t)(t.labels, body)
        if isinstance(t, StateOp):
            return StateOp(t.state, self.canon(t.body))
        raise TypeError(f"not a term: {t!r}")

    def successor(self, succ: Successor) -> Successor:
        """Canonical successor; a terminated state without steps is √."""
        if succ is TERMINATED:
            return succ
        c = self.canon(succ)
        if self.done(c) and not self.steps(c):
            return TERMINATED
        return c

    # ------------------------------------------------------------------ #
    # transitions

    def steps(self, t: Term) -> Tuple[Step, ...]:
        cached = self._steps.get(t)
        if cached is not None:
            return cached
        result = tuple(dict.fromkeys(self._derive(t)))
        self._steps[t] = result
        return result

    def _derive(self, t: Term) -> List[Step]:
        if isinstance(t, Atom):
            label = t.label
            if label.is_delta or label.is_plain_shadow:
                return []
            return [((label,), TERMINATED)]
        if isinstance(t, Seq):
            out = [(ev, t.right if x2 is TERMINATED else Seq(x2, t.right)) for ev, x2 in self.steps(t.left)]
            if self.done(t.left):
                out.extend(self.steps(t.right))
            return out
        if isinstance(t, Alt):
            return list(self.steps(t.left)) + list(self.steps(t.right))
        if isinstance(t, Par):
            return self._joint(t.left, t.right, races=False)
        if isinstance(t, CommMerge):
            return self._communicate(t.left, t.right)
        if isinstance(t, WholePar):
            return self._whole(flatten(t, WholePar), None)
        if isinstance(t, ConflictElim):
            return self._conflict_elim(t.body)
        if isinstance(t, Unless):
            return self._unless(t.left, t.right)
        if isinstance(t, Encaps):
            return self._encaps(t.labels, t.body)
        if isinstance(t, Abstract):
            out = []
            for ev, x2 in self.steps(t.body):
                renamed = norm_events([TAU if e in t.labels else e for e in ev])
                out.append((renamed, x2 if x2 is TERMINATED else Abstract(t.labels, x2)))
            return out
        if isinstance(t, StateOp):
            return self._state_op(t.state, t.body)
        if isinstance(t, RecRef):
            self._enter(t)
            try:
                return list(self.steps(unfold(t.name, t.spec)))
            finally:
                self._leave()
        if isinstance(t, Var):
            raise UnknownVariableError(t.name)
        raise TypeError(f"not a term: {t!r}")

    @staticmethod
    def _merge(parts: Sequence[Successor]) -> Successor:
        live = [p for p in parts if p is not TERMINATED]
        if not live:
            return TERMINATED
        return fold(WholePar, live)

    def _joint(self, x: Term, y: Term, races: bool) -> List[Step]:
        sx, sy = self.steps(x), self.steps(y)
        out: List[Step] = []
        for ev1, x2 in sx:
            for ev2, y2 in sy:
                joined, _ = join_events([ev1, ev2])
                if races and self._racing(joined):
                    out.append((ev1, self._merge([x2, y])))
                    out.append((ev2, self._merge([x, y2])))
                else:
                    out.append((joined, self._merge([x2, y2])))
        if self.done(x):
            out.extend(sy)
        if self.done(y):
            out.extend(sx)
        return out

    def _communicate(self, x: Term, y: Term) -> List[Step]:
        out: List[Step] = []
        for ev1, x2 in self.steps(x):
            if len(ev1) != 1 or not ev1[0].is_ordinary:
                continue
            for ev2, y2 in self.steps(y):
                if len(ev2) != 1 or not ev2[0].is_ordinary:
                    continue
                c = self.env.communicate(ev1[0], ev2[0])
                if c is not None:
                    out.append(((c,), self._merge([x2, y2])))
        return out

    def _whole(self, comps: Sequence[Term], block: Optional[FrozenSet[ActionLabel]]) -> List[Step]:
        """Steps of an n-ary whole parallel; ``block`` is an enclosing encapsulation set."""
        n = len(comps)
        all_steps = [self.steps(c) for c in comps]
        partners = self._partners
        solos: List[List[Step]] = []
        singles: List[List[Step]] = []
        offers: List[FrozenSet[ActionLabel]] = []
        for steps in all_steps:
            solos.append([s for s in steps if block is None or not any(e in block for e in s[0])])
            singles.append([s for s in steps if len(s[0]) == 1 and s[0][0] in partners])
            offers.append(frozenset(e.base for ev, _ in steps for e in ev if e.is_shadow and e.base is not None))
        pairs: List[List[Tuple[int, ActionLabel, Successor, Successor]]] = [[] for _ in range(n)]
        for i in range(n):
            for ev1, x2 in singles[i]:
                for j in range(i + 1, n):
                    for ev2, y2 in singles[j]:
                        c = self.env.communicate(ev1[0], ev2[0])
                        if c is not None and (block is None or c not in block):
                            pairs[i].append((j, c, x2, y2))
        if block is not None:
            # under encapsulation a shadow nobody else can absorb never fires
            supply = [{e for ev, _ in steps for e in ev if e.is_ordinary} for steps in all_steps]
            for i in range(n):
                for j, c, _, _ in pairs[i]:
                    supply[i].add(c)
                    supply[j].add(c)
            for i in range(n):
                others = set().union(*(supply[k] for k in range(n) if k != i))
                solos[i] = [s for s in solos[i]
                            if all(e.base is not None and e.base in others for e in s[0] if e.is_shadow)]

        out: List[Step] = []
        choice: List[Optional[Tuple[Raw, Successor]]] = [None] * n
        used = [False] * n

        def emit():
            parts = [(i, ch[0]) for i, ch in enumerate(choice) if ch is not None and ch[0]]
            if not parts:
                return
            joined, paired = join_events([p for _, p in parts])
            moving = {i for i, ch in enumerate(choice) if ch is not None}
            for e in joined:
                if e.is_ordinary and e not in paired:
                    if any(e in offers[k] for k in range(n) if k not in moving):
                        return
            if block is not None and (_has_shadow(joined) or any(e in block for e in joined)):
                return
            succ = []
            for i in range(n):
                ch = choice[i]
                succ.append(comps[i] if ch is None else ch[1])
            out.append((joined, self._merge(succ)))

        def walk(i: int):
            if i == n:
                emit()
                return
            if used[i]:
                walk(i + 1)
                return
            walk(i + 1)
            for ev, x2 in solos[i]:
                choice[i] = (ev, x2)
                walk(i + 1)
            choice[i] = None
            for j, c, x2, y2 in pairs[i]:
                if used[j]:
                    continue
                used[j] = True
                choice[i] = ((c,), x2)
                choice[j] = ((), y2)
                walk(i + 1)
                used[j] = False
                choice[j] = None
            choice[i] = None

        walk(0)
        return out

    def _filtered(self, t: Term, block: Optional[FrozenSet[ActionLabel]]) -> List[Step]:
        steps = self.steps(t)
        if block is None:
            return list(steps)
        return [s for s in steps if not _has_shadow(s[0]) and not any(e in block for e in s[0])]

    def _theta(self, x: Term) -> Optional[Term]:
        """One layer of conflict elimination; None when the operator is pushed through transitions."""
        th = ConflictElim
        if isinstance(x, Atom):
            return x
        if isinstance(x, Alt):
            return Alt(Unless(th(x.left), x.right), Unless(th(x.right), x.left))
        if isinstance(x, Seq):
            return Seq(th(x.left), th(x.right))
        if isinstance(x, Par):
            return Alt(Par(Unless(th(x.left), x.right), x.right), Par(Unless(th(x.right), x.left), x.left))
        if isinstance(x, CommMerge):
            return Alt(CommMerge(Unless(th(x.left), x.right), x.right),
                       CommMerge(Unless(th(x.right), x.left), x.left))
        if isinstance(x, WholePar):
            return WholePar(Unless(th(x.left), x.right), Unless(th(x.right), x.left))
        if isinstance(x, ConflictElim):
            return x
        if isinstance(x, RecRef):
            return th(unfold(x.name, x.spec))
        return None

    def _conflict_elim(self, body: Term) -> List[Step]:
        if not self.env.conflicts:
            return list(self.steps(body))
        expanded = self._theta(body)
        if expanded is not None:
            return list(self.steps(expanded))
        return [(ev, x2 if x2 is TERMINATED else ConflictElim(x2)) for ev, x2 in self.steps(body)]

    def _renamed(self, e: ActionLabel, alpha: FrozenSet[ActionLabel]) -> bool:
        if not e.is_ordinary:
            return False
        if self.env.conflicting(e) & alpha:
            return True
        return any(self.env.conflicting(e2) & alpha for e2 in self.env.causes(e))

    def _unless(self, x: Term, y: Term) -> List[Step]:
        alpha = self.alphabet(y)
        out = []
        for ev, x2 in self.steps(x):
            renamed = norm_events([TAU if self._renamed(e, alpha) else e for e in ev])
            out.append((renamed, x2 if x2 is TERMINATED else Unless(x2, y)))
        return out

    def _encaps(self, labels: FrozenSet[ActionLabel], body: Term) -> List[Step]:
        if isinstance(body, WholePar):
            inner = self._whole(flatten(body, WholePar), labels)
        else:
            inner = self._filtered(body, labels)
        return [(ev, x2 if x2 is TERMINATED else Encaps(labels, x2)) for ev, x2 in inner]

    def _racing(self, events: Raw) -> bool:
        if not self.env.races:
            return False
        return any(self.env.in_race(a, b) for i, a in enumerate(events) for b in events[i + 1:])

    def _state_op(self, state, body: Term) -> List[Step]:
        spec = self.env.state_spec
        if spec is None:
            raise StateTableError("state operator used without a state table")
        if isinstance(body, Par) and self.env.races:
            inner = self._joint(body.left, body.right, races=True)
        else:
            inner = [s for s in self.steps(body) if not self._racing(s[0])]
        out = []
        for ev, x2 in inner:
            labels = norm_events([spec.action(state, e) for e in ev])
            nxt = spec.effect_step(state, ev)
            out.append((labels, x2 if x2 is TERMINATED else StateOp(nxt, x2)))
        return out


def step_outgoing(term: Term, env: Environment) -> List[Tuple[StepLabel, Successor]]:
    """All transitions of ``term``: (step label, canonical successor or TERMINATED)."""
    sem = StepSemantics(env)
    out = {}
    for raw, succ in sem.steps(sem.canon(term)):
        out[(StepLabel.of(raw), sem.successor(succ))] = None
    return sorted(out, key=lambda item: (item[0].key, item[1].text))


def check_guarded(root: Term) -> None:
    """Raise GuardednessError when a recursive specification used by ``root`` is unguarded."""
    specs = dict.fromkeys(sub.spec for _, sub in subterms(root) if isinstance(sub, RecRef))
    for spec in specs:
        verdict = check_guarded_linear(spec)
        if not verdict.guarded:
            LOGGER.warning("lts.unguarded cycle=%s", "->".join(verdict.cycle))
            raise GuardednessError(verdict.cycle)


def _receivable(sem: StepSemantics, root: Term) -> Set[ActionLabel]:
    labels = set(sem.alphabet(root))
    labels.update(c for _, _, c in sem.env.gamma)
    if sem.env.state_spec is not None:
        labels.update(a for _, _, a in sem.env.state_spec.actions)
    return labels


def _ordered(outs: Iterable[Tuple[StepLabel, Successor]]) -> List[Tuple[StepLabel, Successor]]:
    """Sorted by label; successors sharing a label are ordered by their rendering."""
    groups: Dict[str, List[Tuple[StepLabel, Successor]]] = {}
    for label, target in outs:
        groups.setdefault(label.key, []).append((label, target))
    ordered = []
    for key in sorted(groups):
        group = groups[key]
        if len(group) > 1:
            group.sort(key=lambda item: item[1].text)
        ordered.extend(group)
    return ordered


def build_lts(root: Term, env: Environment, bound: Optional[int] = None,
              constraints: Iterable[Constraint] = ()) -> StepLTS:
    """Breadth-first closure of the step relation from ``root``.

    States are terms in structural canonical form; ids follow BFS discovery
    order over label-sorted transitions.  Steps still carrying an unmatched
    shadow are dropped.

    ``constraints`` are causality pairs applied during exploration: the
    result is the LTS ``apply_async_constraints`` would cut out of the
    unconstrained one, without visiting the states it would remove.
    """
    bound = bound or settings().max_states
    check_guarded(root)
    sem = StepSemantics(env)
    start = sem.canon(root)
    tracker = CausalityTracker(constraints, _receivable(sem, start))
    origin = (start, tracker.initial)
    ids: Dict[Tuple[Term, Tuple[int, ...]], int] = {origin: 0}
    queue = deque([origin])
    transitions = []
    terminating = set()
    while queue:
        node = queue.popleft()
        term, balance = node
        sid = ids[node]
        if sem.done(term):
            terminating.add(sid)
        outs = {}
        for raw, succ in sem.steps(term):
            if _has_shadow(raw):
                continue
            outs[(StepLabel.of(raw), sem.successor(succ))] = None
        for label, target in _ordered(outs):
            nxt = tracker.advance(balance, label.events) if tracker else balance
            if nxt is None:
                continue
            if target is TERMINATED:
                transitions.append((sid, label, TICK))
                continue
            key = (target, nxt)
            dst = ids.get(key)
            if dst is None:
                if len(ids) >= bound:
                    LOGGER.warning("lts.bound bound=%d frontier=%d", bound, len(queue) + 1)
                    raise StateBoundError(bound, len(queue) + 1)
                dst = len(ids)
                ids[key] = dst
                queue.append(key)
            transitions.append((sid, label, dst))
    LOGGER.info("lts.built states=%d transitions=%d constraints=%d pruned=%d",
                len(ids), len(transitions), len(tracker.tracked), tracker.pruned)
    if tracker:
        return renumber(len(ids), 0, transitions, terminating)
    return StepLTS(len(ids), 0, _sorted(transitions), frozenset(terminating))
