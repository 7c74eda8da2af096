"""Oriented axiom rewriting towards basic terms.

Normal forms are built from atoms, ``.``, ``+`` and multi-event prefixes
``e1 || .. || en`` (kept as a right-nested Par of sorted atoms).  Rules fire at
the root of a redex; ``rewrite_step`` picks the leftmost-innermost redex and
``normalize_basic`` rewrites bottom-up until no rule applies.

A few traversal rules keep rewriting sound for the step semantics:

* a whole-parallel nest is expanded (P1) only at its top, after every
  component has been normalised; inner nodes of the nest are never redexes;
* the right operand of ``<|`` is left alone (its alphabet drives renaming);
* RecRef is opaque unless RDP unfolding is requested for a single step.
"""

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from ..algebra.actions import TAU, ActionLabel
from ..algebra.environment import Environment
from ..algebra.recursion import unfold
from ..algebra.terms import (
    Abstract, Alt, Atom, CommMerge, ConflictElim, DELTA_T, Encaps, Par, RecRef, SHADOW_T, Seq, StateOp,
    TAU_T, Term, Unless, WholePar, fold, flatten, is_event_like, prefix_events, replace_child,
)
from ..config import settings
from ..core.errors import FuelExhaustedError, StateTableError
from ..core.logs import get_logger
from ..semantics.sos import TERMINATED, StepSemantics
from .axioms import AxiomId

LOGGER = get_logger("aptc_rewriter", "rewriter.log")

Rewrite = Tuple[Term, AxiomId]
Path = Tuple[int, ...]


@dataclass(frozen=True)
class RewriteResult:
    term: Term
    axiom: AxiomId
    path: Path

    def to_dict(self) -> Dict:
        return {"axiom": self.axiom.value, "path": list(self.path), "term": self.term.text}


def prefix(events: Sequence[ActionLabel]) -> Term:
    """Canonical multi-event prefix: right-nested Par of the sorted events."""
    return fold(Par, [Atom(e) for e in sorted(events, key=lambda e: e.text)])


def _hnf_summand(t: Term) -> bool:
    if isinstance(t, Atom):
        return t.label.is_delta or t.label.is_plain_shadow or is_event_like(t)
    if is_event_like(t):
        return True
    return isinstance(t, Seq) and is_event_like(t.left)


def _prefix_form(t: Term) -> Optional[Tuple[List[ActionLabel], Optional[Term]]]:
    """(events, rest) for ``p`` or ``p . rest`` with p event-like."""
    if is_event_like(t):
        return prefix_events(t), None
    if isinstance(t, Seq) and is_event_like(t.left):
        return prefix_events(t.left), t.right
    return None


def _absorb(events: List[ActionLabel]) -> Tuple[List[ActionLabel], bool]:
    ordinary = {e for e in events if e.is_ordinary}
    kept = [e for e in events if not (e.is_shadow and e.base is not None and e.base in ordinary)]
    return kept, len(kept) != len(events)


def _drop_tau(events: List[ActionLabel]) -> Tuple[List[ActionLabel], bool]:
    visible = [e for e in events if not e.is_tau]
    if visible and len(visible) != len(events):
        return visible, True
    return events, False


def _has_shadow(events: Sequence[ActionLabel]) -> bool:
    return any(e.is_shadow and e.base is not None for e in events)


def _then(head: Term, rest: Optional[Term]) -> Term:
    return head if rest is None else Seq(head, rest)


def _rest(rx: Optional[Term], ry: Optional[Term]) -> Optional[Term]:
    if rx is None:
        return ry
    if ry is None:
        return rx
    return WholePar(rx, ry)


class _Rules:
    """Root-level oriented rules for one environment."""

    def __init__(self, env: Environment, include_branching: bool = False, unfold_rdp: bool = False):
        self.env = env
        self.include_branching = include_branching
        self.unfold_rdp = unfold_rdp
        self.sem = StepSemantics(env)
        self._dispatch: Dict[type, Callable[[Term], Optional[Rewrite]]] = {
            Seq: self._seq, Alt: self._alt, Par: self._par, CommMerge: self._comm, WholePar: self._whole,
            ConflictElim: self._theta, Unless: self._unless, Encaps: self._encaps, Abstract: self._abstract,
            StateOp: self._state_op, RecRef: self._rec_ref,
        }

    def apply(self, t: Term, nest_top: bool = True) -> Optional[Rewrite]:
        if isinstance(t, WholePar) and not nest_top:
            return None
        rule = self._dispatch.get(type(t))
        return rule(t) if rule else None

    # -- BATC / shadow constant / branching on sequential composition --

    def _seq(self, t: Seq) -> Optional[Rewrite]:
        x, y = t.left, t.right
        if x == DELTA_T:
            return DELTA_T, AxiomId.A7
        if x == SHADOW_T:
            return y, AxiomId.SC1
        if y == SHADOW_T:
            return x, AxiomId.SC2
        if isinstance(x, Alt):
            return Alt(Seq(x.left, y), Seq(x.right, y)), AxiomId.A4
        if isinstance(x, Seq):
            return Seq(x.left, Seq(x.right, y)), AxiomId.A5
        if self.include_branching and is_event_like(x):
            if y == TAU_T:
                return x, AxiomId.B1
            collapsed = self._b2(y)
            if collapsed is not None:
                return Seq(x, collapsed), AxiomId.B2
        return None

    @staticmethod
    def _b2(y: Term) -> Optional[Term]:
        """e . (tau . z + w) with the summands of w among those of z: yields z."""
        summands = flatten(y, Alt)
        for i, s in enumerate(summands):
            if isinstance(s, Seq) and s.left == TAU_T:
                inner = {u.text for u in flatten(s.right, Alt)}
                others = summands[:i] + summands[i + 1:]
                if all(o.text in inner for o in others):
                    return s.right
        return None

    def _alt(self, t: Alt) -> Optional[Rewrite]:
        items = flatten(t, Alt)
        live = [x for x in items if x != DELTA_T]
        if len(live) != len(items) and live:
            return fold(Alt, live), AxiomId.A6
        unique = {x.text: x for x in items}
        canonical = fold(Alt, [unique[k] for k in sorted(unique)])
        if canonical == t:
            return None
        if len(unique) != len(items):
            return canonical, AxiomId.A3
        if isinstance(t.left, Alt):
            return canonical, AxiomId.A2
        return canonical, AxiomId.A1

    # -- parallel composition --

    def _par(self, t: Par) -> Optional[Rewrite]:
        x, y = t.left, t.right
        if x == DELTA_T:
            return DELTA_T, AxiomId.P9
        if y == DELTA_T:
            return DELTA_T, AxiomId.P10
        if isinstance(x, Alt):
            return Alt(Par(x.left, y), Par(x.right, y)), AxiomId.P7
        if isinstance(y, Alt):
            return Alt(Par(x, y.left), Par(x, y.right)), AxiomId.P8
        if x == SHADOW_T:
            return y, AxiomId.SC3
        if y == SHADOW_T:
            return x, AxiomId.SC3
        fx, fy = _prefix_form(x), _prefix_form(y)
        if fx is None or fy is None:
            return None
        (ex, rx), (ey, ry) = fx, fy
        events, absorbed = _absorb(ex + ey)
        events, dropped = _drop_tau(events)
        result = _then(prefix(events), _rest(rx, ry))
        if result == t:
            return None
        if absorbed:
            from_x = _has_shadow(ex) and not _has_shadow(ey)
            if rx is None and ry is None:
                return result, AxiomId.SC3
            if rx is None:
                return result, AxiomId.SC5 if from_x else AxiomId.SC4
            if ry is None:
                return result, AxiomId.SC7 if from_x else AxiomId.SC6
            return result, AxiomId.SC9 if from_x else AxiomId.SC8
        if dropped:
            return result, AxiomId.B3
        if rx is None and ry is None:
            return result, AxiomId.P3 if isinstance(x, Par) else AxiomId.P2
        if rx is None:
            return result, AxiomId.P4
        if ry is None:
            return result, AxiomId.P5
        return result, AxiomId.P6

    def _comm(self, t: CommMerge) -> Optional[Rewrite]:
        x, y = t.left, t.right
        if x == DELTA_T:
            return DELTA_T, AxiomId.C17
        if y == DELTA_T:
            return DELTA_T, AxiomId.C18
        if isinstance(x, Alt):
            return Alt(CommMerge(x.left, y), CommMerge(x.right, y)), AxiomId.C15
        if isinstance(y, Alt):
            return Alt(CommMerge(x, y.left), CommMerge(x, y.right)), AxiomId.C16
        if x == SHADOW_T or y == SHADOW_T:
            other = y if x == SHADOW_T else x
            if other == SHADOW_T:
                return SHADOW_T, AxiomId.C11
            if _prefix_form(other) is not None:
                return DELTA_T, AxiomId.C11
            return None
        fx, fy = _prefix_form(x), _prefix_form(y)
        if fx is None or fy is None:
            return None
        (ex, rx), (ey, ry) = fx, fy
        c = None
        if len(ex) == 1 and len(ey) == 1 and ex[0].is_ordinary and ey[0].is_ordinary:
            c = self.env.communicate(ex[0], ey[0])
        result = DELTA_T if c is None else _then(Atom(c), _rest(rx, ry))
        if rx is None and ry is None:
            return result, AxiomId.C11
        if rx is None:
            return result, AxiomId.C12
        if ry is None:
            return result, AxiomId.C13
        return result, AxiomId.C14

    def _whole(self, t: WholePar) -> Optional[Rewrite]:
        """Expansion of a whole-parallel nest whose components are in head normal form."""
        comps = flatten(t, WholePar)
        if not all(_hnf_summand(s) for c in comps for s in flatten(c, Alt)):
            return None
        summands: List[Term] = []
        for raw, succ in self.sem.steps(t):
            head = prefix(raw)
            summands.append(head if succ is TERMINATED else Seq(head, succ))
        if self.sem.done(t):
            summands.append(SHADOW_T)
        return fold(Alt, summands), AxiomId.P1

    # -- conflict elimination and unless --

    def _theta(self, t: ConflictElim) -> Optional[Rewrite]:
        x = t.body
        th = ConflictElim
        if isinstance(x, Atom):
            return x, AxiomId.CE20 if x == DELTA_T else AxiomId.CE19
        if isinstance(x, Alt):
            return Alt(Unless(th(x.left), x.right), Unless(th(x.right), x.left)), AxiomId.CE21
        if isinstance(x, Seq):
            return Seq(th(x.left), th(x.right)), AxiomId.CE22
        if isinstance(x, Par):
            return Alt(Par(Unless(th(x.left), x.right), x.right),
                       Par(Unless(th(x.right), x.left), x.left)), AxiomId.CE23
        if isinstance(x, CommMerge):
            return Alt(CommMerge(Unless(th(x.left), x.right), x.right),
                       CommMerge(Unless(th(x.right), x.left), x.left)), AxiomId.CE24
        if isinstance(x, WholePar):
            return WholePar(Unless(th(x.left), x.right), Unless(th(x.right), x.left)), AxiomId.CE23
        return None

    def _unless(self, t: Unless) -> Optional[Rewrite]:
        x, y = t.left, t.right
        if not self.env.conflicts:
            return x, AxiomId.U26
        if x == DELTA_T:
            return DELTA_T, AxiomId.U29
        for kind, axiom in ((Alt, AxiomId.U30), (Seq, AxiomId.U31), (Par, AxiomId.U32), (CommMerge, AxiomId.U33)):
            if isinstance(x, kind):
                return kind(Unless(x.left, y), Unless(x.right, y)), axiom
        if not isinstance(x, Atom):
            return None
        for kind, axiom in ((Alt, AxiomId.U34), (Seq, AxiomId.U35), (Par, AxiomId.U36), (CommMerge, AxiomId.U37)):
            if isinstance(y, kind):
                return Unless(Unless(x, y.left), y.right), axiom
        if not isinstance(y, Atom):
            return None
        e, f = x.label, y.label
        if f.is_delta:
            return x, AxiomId.U28
        if not e.is_ordinary or not f.is_ordinary:
            return x, AxiomId.U26
        if self.env.in_conflict(e, f):
            return TAU_T, AxiomId.U25
        if any(self.env.in_conflict(c, f) for c in self.env.causes(e)):
            return TAU_T, AxiomId.U27
        return x, AxiomId.U26

    # -- encapsulation and abstraction --

    def _encaps(self, t: Encaps) -> Optional[Rewrite]:
        x = t.body
        if isinstance(x, Atom):
            label = x.label
            if label.is_delta:
                return DELTA_T, AxiomId.D3
            if label in t.labels or (label.is_shadow and label.base is not None):
                return DELTA_T, AxiomId.D2
            return x, AxiomId.D1
        for kind, axiom in ((Alt, AxiomId.D4), (Seq, AxiomId.D5), (Par, AxiomId.D6)):
            if isinstance(x, kind):
                return kind(Encaps(t.labels, x.left), Encaps(t.labels, x.right)), axiom
        return None

    def _abstract(self, t: Abstract) -> Optional[Rewrite]:
        x = t.body
        if isinstance(x, Atom):
            if x.label.is_delta:
                return DELTA_T, AxiomId.TI3
            if x.label in t.labels:
                return TAU_T, AxiomId.TI2
            return x, AxiomId.TI1
        for kind, axiom in ((Alt, AxiomId.TI4), (Seq, AxiomId.TI5), (Par, AxiomId.TI6)):
            if isinstance(x, kind):
                return kind(Abstract(t.labels, x.left), Abstract(t.labels, x.right)), axiom
        return None

    # -- state operator --

    def _racing(self, events: Sequence[ActionLabel]) -> bool:
        return any(self.env.in_race(a, b) for i, a in enumerate(events) for b in events[i + 1:])

    def _state_op(self, t: StateOp) -> Optional[Rewrite]:
        spec = self.env.state_spec
        if spec is None:
            raise StateTableError("state operator used without a state table")
        s, x = t.state, t.body
        if x == DELTA_T:
            return DELTA_T, AxiomId.SO2
        if x == SHADOW_T:
            return SHADOW_T, AxiomId.SO1
        if isinstance(x, Alt):
            if self.env.races and any(isinstance(u, (Par, WholePar)) for u in flatten(x, Alt)):
                return None
            return Alt(StateOp(s, x.left), StateOp(s, x.right)), AxiomId.SO3
        form = _prefix_form(x)
        if form is not None:
            events, rest = form
            if self._racing(events):
                return None
            head = prefix([spec.action(s, e) for e in events])
            nxt = spec.effect_step(s, events)
            if rest is None:
                return head, AxiomId.SO1
            return Seq(head, StateOp(nxt, rest)), AxiomId.SO4
        if isinstance(x, Par) and not self.env.races and not spec.effects:
            return Par(StateOp(s, x.left), StateOp(s, x.right)), AxiomId.SO5
        return None

    def _rec_ref(self, t: RecRef) -> Optional[Rewrite]:
        if not self.unfold_rdp:
            return None
        return unfold(t.name, t.spec), AxiomId.RDP


def _frozen_children(t: Term) -> Tuple[int, ...]:
    """Child indices rewriting must not enter."""
    if isinstance(t, Unless):
        return (1,)
    return ()


def rewrite_step(term: Term, env: Environment, include_branching: bool = False,
                 unfold_rdp: bool = False) -> Optional[RewriteResult]:
    """One rule application at the leftmost-innermost redex, or None at a fixpoint."""
    rules = _Rules(env, include_branching, unfold_rdp)

    def visit(t: Term, path: Path, nest_top: bool) -> Optional[RewriteResult]:
        frozen = _frozen_children(t)
        for i, child in enumerate(t.children()):
            if i in frozen:
                continue
            inner_top = not (isinstance(t, WholePar) and isinstance(child, WholePar))
            found = visit(child, path + (i,), inner_top)
            if found is not None:
                return RewriteResult(replace_child(t, i, found.term), found.axiom, found.path)
        hit = rules.apply(t, nest_top)
        if hit is None:
            return None
        return RewriteResult(hit[0], hit[1], path)

    return visit(term, (), True)


class _Normaliser:
    def __init__(self, rules: _Rules, fuel: int, trace: Optional[list]):
        self.rules = rules
        self.fuel = fuel
        self.used = 0
        self.trace = trace
        self.memo: Dict[Term, Term] = {}

    def _charge(self, axiom: AxiomId, path: Path) -> None:
        self.used += 1
        if self.used > self.fuel:
            LOGGER.warning("rewrite.fuel fuel=%d", self.fuel)
            raise FuelExhaustedError(self.fuel)
        if self.trace is not None:
            self.trace.append({"axiom": axiom.value, "path": list(path)})

    def _children(self, t: Term, path: Path) -> Term:
        if isinstance(t, WholePar):
            return self._nest(t, path)
        frozen = _frozen_children(t)
        out = t
        for i, child in enumerate(t.children()):
            if i in frozen:
                continue
            new = self.norm(child, path + (i,))
            if new is not child:
                out = replace_child(out, i, new)
        return out

    def _nest(self, t: Term, path: Path) -> Term:
        if not isinstance(t, WholePar):
            return self.norm(t, path)
        left = self._nest(t.left, path + (0,))
        right = self._nest(t.right, path + (1,))
        if left is t.left and right is t.right:
            return t
        return WholePar(left, right)

    def norm(self, t: Term, path: Path = ()) -> Term:
        if self.trace is None and t in self.memo:
            return self.memo[t]
        cur = self._children(t, path)
        while True:
            hit = self.rules.apply(cur)
            if hit is None:
                break
            self._charge(hit[1], path)
            cur = self._children(hit[0], path)
        self.memo[t] = cur
        return cur


def normalize_basic(term: Term, env: Environment, fuel: Optional[int] = None, trace: Optional[list] = None,
                    include_branching: bool = False) -> Term:
    """Rewrite to a basic term; RecRefs stay opaque.

    ``trace`` (a list) receives one {"axiom", "path"} record per applied rule.
    ``include_branching`` also enables the rules only valid up to rooted
    branching step bisimulation (B1, B2).
    """
    fuel = fuel or settings().rewrite_fuel
    worker = _Normaliser(_Rules(env, include_branching), fuel, trace)
    result = worker.norm(term)
    LOGGER.info("rewrite.normalized rules=%d size_in=%d size_out=%d", worker.used, len(term.text), len(result.text))
    return result
