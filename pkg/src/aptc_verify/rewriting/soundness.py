"""Randomised soundness checks for the axiom system.

Every axiom has an instance generator producing ``(lhs, rhs, env)``: the two
sides of the equation instantiated with random closed terms.  Both sides are
turned into step LTSs and compared under the axiom's equivalence.
"""

import random
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from ..algebra.actions import ActionLabel, act, shadow
from ..algebra.environment import Environment, StateSpec
from ..algebra.recursion import RecursiveSpec, close, unfold
from ..algebra.terms import (
    Abstract, Alt, Atom, CommMerge, ConflictElim, DELTA_T, Encaps, Par, RecRef, SHADOW_T, Seq, StateOp,
    TAU_T, Term, Unless, Var, WholePar, fold,
)
from ..config import settings
from ..core.logs import get_logger
from ..equivalence.checks import check
from ..semantics.sos import build_lts
from .axioms import AXIOMS, AxiomId
from .rewriter import _Rules, normalize_basic

LOGGER = get_logger("aptc_rewriter", "rewriter.log")

A, B, C, D = act("a"), act("b"), act("c"), act("d")
LETTERS = (A, B, C, D)
HIDDEN = act("i")

Instance = Tuple[Term, Term, Environment]
Generator = Callable[[random.Random], Instance]

PLAIN = Environment.create()
GAMMA = Environment.create(gamma={(A, B): C})
CONFLICT = Environment.create(conflicts=[(A, B)], causality=[(B, C)])
STATES = StateSpec(states=(0, 1), initial=0, actions=((0, A, D), (1, B, C)), effects=((0, A, 1),))
STATES_NO_EFFECT = StateSpec(states=(0, 1), initial=0, actions=((0, A, D), (1, B, C)))

# instance bound; generated terms stay far below it
BOUND = 20_000


def _atom(rng: random.Random) -> Term:
    return Atom(rng.choice(LETTERS))


def random_term(rng: random.Random, depth: int = 2) -> Term:
    """Closed term over a..d, delta and a rare tau, built with . + || &."""
    if depth == 0 or rng.random() < 0.3:
        roll = rng.random()
        if roll < 0.08:
            return DELTA_T
        if roll < 0.13:
            return TAU_T
        return _atom(rng)
    op = rng.choice((Seq, Seq, Alt, Alt, Par, WholePar))
    return op(random_term(rng, depth - 1), random_term(rng, depth - 1))


def _terms(rng: random.Random, n: int) -> List[Term]:
    return [random_term(rng) for _ in range(n)]


def _pair(lhs: Term, rhs: Term, env: Environment = PLAIN) -> Instance:
    return lhs, rhs, env


def _ordinary_pair(rng: random.Random) -> Tuple[ActionLabel, ActionLabel]:
    return rng.choice(LETTERS), rng.choice(LETTERS)


def _gamma(env: Environment, e1: ActionLabel, e2: ActionLabel) -> Term:
    c = env.communicate(e1, e2)
    return DELTA_T if c is None else Atom(c)


# -- generators per family --------------------------------------------------

def _batc(axiom: AxiomId) -> Generator:
    def gen(rng):
        x, y, z = _terms(rng, 3)
        return {
            AxiomId.A1: lambda: _pair(Alt(x, y), Alt(y, x), GAMMA),
            AxiomId.A2: lambda: _pair(Alt(Alt(x, y), z), Alt(x, Alt(y, z)), GAMMA),
            AxiomId.A3: lambda: _pair(Alt(x, x), x, GAMMA),
            AxiomId.A4: lambda: _pair(Seq(Alt(x, y), z), Alt(Seq(x, z), Seq(y, z)), GAMMA),
            AxiomId.A5: lambda: _pair(Seq(Seq(x, y), z), Seq(x, Seq(y, z)), GAMMA),
            AxiomId.A6: lambda: _pair(Alt(x, DELTA_T), x, GAMMA),
            AxiomId.A7: lambda: _pair(Seq(DELTA_T, x), DELTA_T, GAMMA),
        }[axiom]()
    return gen


def _parallel(axiom: AxiomId) -> Generator:
    def gen(rng):
        x, y, z = _terms(rng, 3)
        e1, e2 = _atom(rng), _atom(rng)
        if axiom == AxiomId.P1:
            nx, ny = normalize_basic(x, GAMMA), normalize_basic(y, GAMMA)
            lhs = WholePar(nx, ny)
            hit = _Rules(GAMMA).apply(lhs)
            return lhs, hit[0] if hit else lhs, GAMMA
        return {
            AxiomId.P2: lambda: _pair(Par(x, y), Par(y, x), GAMMA),
            AxiomId.P3: lambda: _pair(Par(Par(x, y), z), Par(x, Par(y, z)), GAMMA),
            AxiomId.P4: lambda: _pair(Par(e1, Seq(e2, y)), Seq(Par(e1, e2), y), GAMMA),
            AxiomId.P5: lambda: _pair(Par(Seq(e1, x), e2), Seq(Par(e1, e2), x), GAMMA),
            AxiomId.P6: lambda: _pair(Par(Seq(e1, x), Seq(e2, y)), Seq(Par(e1, e2), WholePar(x, y)), GAMMA),
            AxiomId.P7: lambda: _pair(Par(Alt(x, y), z), Alt(Par(x, z), Par(y, z)), GAMMA),
            AxiomId.P8: lambda: _pair(Par(x, Alt(y, z)), Alt(Par(x, y), Par(x, z)), GAMMA),
            AxiomId.P9: lambda: _pair(Par(DELTA_T, x), DELTA_T, GAMMA),
            AxiomId.P10: lambda: _pair(Par(x, DELTA_T), DELTA_T, GAMMA),
        }[axiom]()
    return gen


def _communication(axiom: AxiomId) -> Generator:
    def gen(rng):
        x, y, z = _terms(rng, 3)
        a, b = _ordinary_pair(rng)
        e1, e2, g = Atom(a), Atom(b), _gamma(GAMMA, a, b)
        return {
            AxiomId.C11: lambda: _pair(CommMerge(e1, e2), g, GAMMA),
            AxiomId.C12: lambda: _pair(CommMerge(e1, Seq(e2, y)), Seq(g, y), GAMMA),
            AxiomId.C13: lambda: _pair(CommMerge(Seq(e1, x), e2), Seq(g, x), GAMMA),
            AxiomId.C14: lambda: _pair(CommMerge(Seq(e1, x), Seq(e2, y)), Seq(g, WholePar(x, y)), GAMMA),
            AxiomId.C15: lambda: _pair(CommMerge(Alt(x, y), z), Alt(CommMerge(x, z), CommMerge(y, z)), GAMMA),
            AxiomId.C16: lambda: _pair(CommMerge(x, Alt(y, z)), Alt(CommMerge(x, y), CommMerge(x, z)), GAMMA),
            AxiomId.C17: lambda: _pair(CommMerge(DELTA_T, x), DELTA_T, GAMMA),
            AxiomId.C18: lambda: _pair(CommMerge(x, DELTA_T), DELTA_T, GAMMA),
        }[axiom]()
    return gen


def _conflict(axiom: AxiomId) -> Generator:
    th = ConflictElim

    def gen(rng):
        x, y, z = _terms(rng, 3)
        e = _atom(rng)
        return {
            AxiomId.CE19: lambda: _pair(th(e), e, CONFLICT),
            AxiomId.CE20: lambda: _pair(th(DELTA_T), DELTA_T, CONFLICT),
            AxiomId.CE21: lambda: _pair(th(Alt(x, y)), Alt(Unless(th(x), y), Unless(th(y), x)), CONFLICT),
            AxiomId.CE22: lambda: _pair(th(Seq(x, y)), Seq(th(x), th(y)), CONFLICT),
            AxiomId.CE23: lambda: _pair(th(Par(x, y)), Alt(Par(Unless(th(x), y), y), Par(Unless(th(y), x), x)),
                                        CONFLICT),
            AxiomId.CE24: lambda: _pair(th(CommMerge(x, y)),
                                        Alt(CommMerge(Unless(th(x), y), y), CommMerge(Unless(th(y), x), x)),
                                        CONFLICT),
            AxiomId.U25: lambda: _pair(Unless(Atom(A), Atom(B)), TAU_T, CONFLICT),
            AxiomId.U26: lambda: _pair(Unless(Atom(A), Atom(C)), Atom(A), CONFLICT),
            AxiomId.U27: lambda: _pair(Unless(Atom(C), Atom(A)), TAU_T, CONFLICT),
            AxiomId.U28: lambda: _pair(Unless(e, DELTA_T), e, CONFLICT),
            AxiomId.U29: lambda: _pair(Unless(DELTA_T, e), DELTA_T, CONFLICT),
            AxiomId.U30: lambda: _pair(Unless(Alt(x, y), z), Alt(Unless(x, z), Unless(y, z)), CONFLICT),
            AxiomId.U31: lambda: _pair(Unless(Seq(x, y), z), Seq(Unless(x, z), Unless(y, z)), CONFLICT),
            AxiomId.U32: lambda: _pair(Unless(Par(x, y), z), Par(Unless(x, z), Unless(y, z)), CONFLICT),
            AxiomId.U33: lambda: _pair(Unless(CommMerge(x, y), z), CommMerge(Unless(x, z), Unless(y, z)),
                                       CONFLICT),
            AxiomId.U34: lambda: _pair(Unless(x, Alt(y, z)), Unless(Unless(x, y), z), CONFLICT),
            AxiomId.U35: lambda: _pair(Unless(x, Seq(y, z)), Unless(Unless(x, y), z), CONFLICT),
            AxiomId.U36: lambda: _pair(Unless(x, Par(y, z)), Unless(Unless(x, y), z), CONFLICT),
            AxiomId.U37: lambda: _pair(Unless(x, CommMerge(y, z)), Unless(Unless(x, y), z), CONFLICT),
        }[axiom]()
    return gen


def _encapsulation(axiom: AxiomId) -> Generator:
    def gen(rng):
        x, y = _terms(rng, 2)
        labels = frozenset(e for e in LETTERS if rng.random() < 0.5) or frozenset([A])
        inside = sorted(labels)
        kept = Atom(rng.choice([e for e in LETTERS if e not in labels] or [TAU_T.label]))
        enc = lambda t: Encaps(labels, t)  # noqa: E731
        return {
            AxiomId.D1: lambda: _pair(enc(kept), kept),
            AxiomId.D2: lambda: _pair(enc(Atom(rng.choice(inside))), DELTA_T),
            AxiomId.D3: lambda: _pair(enc(DELTA_T), DELTA_T),
            AxiomId.D4: lambda: _pair(enc(Alt(x, y)), Alt(enc(x), enc(y))),
            AxiomId.D5: lambda: _pair(enc(Seq(x, y)), Seq(enc(x), enc(y))),
            AxiomId.D6: lambda: _pair(enc(Par(x, y)), Par(enc(x), enc(y))),
        }[axiom]()
    return gen


def _abstraction(axiom: AxiomId) -> Generator:
    def gen(rng):
        x, y = _terms(rng, 2)
        labels = frozenset(e for e in LETTERS if rng.random() < 0.5) or frozenset([A])
        inside = sorted(labels)
        outside = [e for e in LETTERS if e not in labels]
        ab = lambda t: Abstract(labels, t)  # noqa: E731
        kept = Atom(rng.choice(outside)) if outside else TAU_T
        return {
            AxiomId.TI1: lambda: _pair(ab(kept), kept),
            AxiomId.TI2: lambda: _pair(ab(Atom(rng.choice(inside))), TAU_T),
            AxiomId.TI3: lambda: _pair(ab(DELTA_T), DELTA_T),
            AxiomId.TI4: lambda: _pair(ab(Alt(x, y)), Alt(ab(x), ab(y))),
            AxiomId.TI5: lambda: _pair(ab(Seq(x, y)), Seq(ab(x), ab(y))),
            AxiomId.TI6: lambda: _pair(ab(Par(x, y)), Par(ab(x), ab(y))),
        }[axiom]()
    return gen


def _branching(axiom: AxiomId) -> Generator:
    def gen(rng):
        x, y = _terms(rng, 2)
        e = _atom(rng)
        return {
            AxiomId.B1: lambda: _pair(Seq(e, TAU_T), e),
            AxiomId.B2: lambda: _pair(Seq(e, Alt(Seq(TAU_T, Alt(x, y)), x)), Seq(e, Alt(x, y))),
            AxiomId.B3: lambda: _pair(Par(x, TAU_T), x),
        }[axiom]()
    return gen


def _shadows(axiom: AxiomId) -> Generator:
    def gen(rng):
        x, y = _terms(rng, 2)
        label = rng.choice(LETTERS)
        e, s = Atom(label), Atom(shadow(label))
        return {
            AxiomId.SC1: lambda: _pair(Seq(SHADOW_T, x), x),
            AxiomId.SC2: lambda: _pair(Seq(x, SHADOW_T), x),
            AxiomId.SC3: lambda: _pair(Par(s, e), e),
            AxiomId.SC4: lambda: _pair(Par(e, Seq(s, y)), Seq(e, y)),
            AxiomId.SC5: lambda: _pair(Par(s, Seq(e, y)), Seq(e, y)),
            AxiomId.SC6: lambda: _pair(Par(Seq(e, x), s), Seq(e, x)),
            AxiomId.SC7: lambda: _pair(Par(Seq(s, x), e), Seq(e, x)),
            AxiomId.SC8: lambda: _pair(Par(Seq(e, x), Seq(s, y)), Seq(e, WholePar(x, y))),
            AxiomId.SC9: lambda: _pair(Par(Seq(s, x), Seq(e, y)), Seq(e, WholePar(x, y))),
        }[axiom]()
    return gen


def _state(axiom: AxiomId) -> Generator:
    def gen(rng):
        x, y = _terms(rng, 2)
        s = rng.choice(STATES.states)
        label = rng.choice(LETTERS)
        env = Environment.create(state_spec=STATES)
        mapped = Atom(STATES.action(s, label))
        if axiom == AxiomId.SO5:
            env = Environment.create(state_spec=STATES_NO_EFFECT)
            return StateOp(s, Par(x, y)), Par(StateOp(s, x), StateOp(s, y)), env
        return {
            AxiomId.SO1: lambda: (StateOp(s, Atom(label)), mapped, env),
            AxiomId.SO2: lambda: (StateOp(s, DELTA_T), DELTA_T, env),
            AxiomId.SO3: lambda: (StateOp(s, Alt(x, y)), Alt(StateOp(s, x), StateOp(s, y)), env),
            AxiomId.SO4: lambda: (StateOp(s, Seq(Atom(label), y)),
                                  Seq(mapped, StateOp(STATES.effect(s, label), y)), env),
        }[axiom]()
    return gen


def random_guarded_spec(rng: random.Random, size: int = 3) -> RecursiveSpec:
    """Linear specification whose every summand starts with an observable event."""
    names = [f"X{i}" for i in range(size)]
    equations = {}
    for name in names:
        summands = []
        for _ in range(rng.randint(1, 2)):
            head = _atom(rng)
            summands.append(Seq(head, Var(rng.choice(names))) if rng.random() < 0.7 else head)
        equations[name] = fold(Alt, summands)
    return RecursiveSpec.of(equations)


def _rdp(rng: random.Random) -> Instance:
    spec = random_guarded_spec(rng)
    name = rng.choice(spec.names)
    return RecRef(name, spec), unfold(name, spec), PLAIN


def cluster_spec(rng: random.Random) -> Tuple[RecursiveSpec, Term]:
    """A cluster of 2-3 variables linked by the hidden action, with random exits.

    Returns the specification and the sum of the exits (closed).
    """
    size = rng.randint(2, 3)
    names = [f"X{i}" for i in range(size)]
    exits: List[Term] = []
    equations: Dict[str, Term] = {"Y": Atom(rng.choice(LETTERS))}
    for i, name in enumerate(names):
        summands: List[Term] = [Seq(Atom(HIDDEN), Var(names[(i + 1) % size]))]
        head = _atom(rng)
        leave = Seq(head, Var("Y")) if rng.random() < 0.5 else head
        summands.append(leave)
        exits.append(leave)
        equations[name] = fold(Alt, summands)
    spec = RecursiveSpec.of(equations)
    return spec, close(fold(Alt, exits), spec)


def _cfar(rng: random.Random) -> Instance:
    spec, exits = cluster_spec(rng)
    hidden = frozenset([HIDDEN])
    lhs = Seq(TAU_T, Abstract(hidden, RecRef("X0", spec)))
    rhs = Seq(TAU_T, Abstract(hidden, exits))
    return lhs, rhs, PLAIN


def _generator(axiom: AxiomId) -> Generator:
    name = axiom.value
    family = name.rstrip("0123456789")
    if family == "A":
        return _batc(axiom)
    if family == "P":
        return _parallel(axiom)
    if family == "C":
        return _communication(axiom)
    if family in ("CE", "U"):
        return _conflict(axiom)
    if family == "D":
        return _encapsulation(axiom)
    if family == "TI":
        return _abstraction(axiom)
    if family == "B":
        return _branching(axiom)
    if family == "SC":
        return _shadows(axiom)
    if family == "SO":
        return _state(axiom)
    if axiom == AxiomId.RDP:
        return _rdp
    return _cfar


GENERATORS: Dict[AxiomId, Generator] = {a: _generator(a) for a in AxiomId}


@dataclass
class AxiomReport:
    axiom: AxiomId
    kind: str
    instances: int = 0
    passed: bool = True
    failure: Optional[Dict] = None

    def to_dict(self) -> Dict:
        return {"axiom": self.axiom.value, "kind": self.kind, "instances": self.instances,
                "passed": self.passed, "failure": self.failure}


def check_instance(lhs: Term, rhs: Term, env: Environment, kind: str):
    equation = "step" if kind == "strong" else "rbs"
    return check(build_lts(lhs, env, BOUND), build_lts(rhs, env, BOUND), equation)


def run_soundness_suite(seed: Optional[int] = None, instances: Optional[int] = None,
                        ids: Optional[Iterable[AxiomId]] = None) -> List[AxiomReport]:
    """Check ``instances`` random instances of every axiom in ``ids`` (default: all)."""
    cfg = settings()
    seed = cfg.seed if seed is None else seed
    instances = instances or cfg.axiom_instances
    reports = []
    for axiom in (list(ids) if ids else list(AxiomId)):
        meta = AXIOMS[axiom]
        rng = random.Random(f"{seed}:{axiom.value}")
        report = AxiomReport(axiom, meta.kind)
        for i in range(instances):
            lhs, rhs, env = GENERATORS[axiom](rng)
            verdict = check_instance(lhs, rhs, env, meta.kind)
            report.instances += 1
            if not verdict.equivalent:
                report.passed = False
                report.failure = {"instance": i, "lhs": lhs.text, "rhs": rhs.text,
                                  "counterexample": verdict.counterexample.to_dict()
                                  if verdict.counterexample else None}
                break
        LOGGER.info("soundness.axiom id=%s kind=%s instances=%d passed=%s",
                    axiom.value, meta.kind, report.instances, report.passed)
        reports.append(report)
    return reports
