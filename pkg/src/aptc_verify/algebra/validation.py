from typing import Dict, List, Set, Tuple

from ..core.errors import Diagnostic
from .actions import ActionLabel
from .environment import Environment
from .recursion import RecursiveSpec
from .terms import Abstract, Atom, Encaps, RecRef, StateOp, Term, Var, subterms


def _err(message: str, path: Tuple = ()) -> Diagnostic:
    return Diagnostic("error", message, tuple(path))


def _acyclic(pairs) -> bool:
    succ: Dict[ActionLabel, Set[ActionLabel]] = {}
    for a, b in pairs:
        succ.setdefault(a, set()).add(b)
    state: Dict[ActionLabel, int] = {}

    def visit(node) -> bool:
        state[node] = 1
        for nxt in succ.get(node, ()):
            if state.get(nxt) == 1:
                return False
            if not state.get(nxt) and not visit(nxt):
                return False
        state[node] = 2
        return True

    return all(state.get(n) or visit(n) for n in list(succ))


def _check_env(env: Environment) -> List[Diagnostic]:
    out: List[Diagnostic] = []
    table = {(a, b): c for a, b, c in env.gamma}
    for (a, b), c in sorted(table.items(), key=lambda kv: (kv[0][0].text, kv[0][1].text)):
        mirrored = table.get((b, a))
        if mirrored is None:
            out.append(_err(f"gamma asymmetric: gamma({a},{b})={c} without gamma({b},{a})", ("gamma",)))
        elif mirrored != c:
            out.append(_err(f"gamma({a},{b})={c} but gamma({b},{a})={mirrored}", ("gamma",)))
        for x in (a, b, c):
            if not x.is_ordinary:
                out.append(_err(f"gamma may only mention ordinary actions, not {x}", ("gamma",)))
    for name, pairs in (("conflict", env.conflicts), ("race", env.races)):
        for a, b in pairs:
            if a == b:
                out.append(_err(f"{name} relation must be irreflexive ({a})", (name,)))
    if not _acyclic(env.causality):
        out.append(_err("causality relation has a cycle", ("causal",)))
    if env.declared:
        for label in sorted(env.mentioned()):
            if label.is_ordinary and label not in env.declared:
                out.append(_err(f"undeclared action {label}", ("env",)))
    return out


def _check_term(t: Term, env: Environment, where: Tuple, bound: Set[str], out: List[Diagnostic],
                shadows: Dict[ActionLabel, Tuple]) -> None:
    for path, sub in subterms(t):
        full = where + path
        if isinstance(sub, Var) and sub.name not in bound:
            out.append(_err(f"unbound variable {sub.name}", full))
        elif isinstance(sub, (Encaps, Abstract)):
            kind = "H" if isinstance(sub, Encaps) else "I"
            for label in sorted(sub.labels):
                if not label.is_ordinary:
                    out.append(_err(f"{label} not allowed in {kind}", full))
                elif env.declared and label not in env.declared:
                    out.append(_err(f"undeclared action {label} in {kind}", full))
        elif isinstance(sub, StateOp):
            if env.state_spec is None:
                out.append(_err("state operator without a state table", full))
            elif sub.state not in env.state_spec.states:
                out.append(_err(f"unknown state {sub.state}", full))
        elif isinstance(sub, Atom):
            label = sub.label
            if label.is_ordinary and env.declared and label not in env.declared:
                out.append(_err(f"undeclared action {label}", full))
            if label.is_shadow and label.base is not None and label.index is not None:
                if label in shadows and shadows[label] != full:
                    out.append(_err(f"duplicate shadow {label}", full))
                shadows.setdefault(label, full)


def validate(term: Term, env: Environment) -> List[Diagnostic]:
    """All well-formedness problems of a closed term under ``env``; empty when fine."""
    out = _check_env(env)
    shadows: Dict[ActionLabel, Tuple] = {}
    _check_term(term, env, (), set(), out, shadows)
    seen: Set[int] = set()
    specs: List[RecursiveSpec] = []
    for _, sub in subterms(term):
        if isinstance(sub, RecRef) and id(sub.spec) not in seen:
            seen.add(id(sub.spec))
            specs.append(sub.spec)
            if sub.name not in sub.spec.names:
                out.append(_err(f"unknown recursion variable {sub.name}"))
    for spec in specs:
        names = set(spec.names)
        for name, body in spec.equations:
            _check_term(body, env, (name,), names, out, shadows)
    return out
