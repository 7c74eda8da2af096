"""Canonical text of an expanded PatternSpec; ``parse(pretty_print(s)) == s``."""

from typing import Iterable, List

from ..algebra.actions import ActionLabel, Value
from ..algebra.terms import (
    Abstract, Alt, Atom, CommMerge, ConflictElim, Encaps, Par, RecRef, Seq, StateOp, Term, Unless, Var, WholePar,
)
from .model import PatternSpec

# binding strength, loosest first; operands of equal strength nest to the right
_LEVEL = {Alt: 1, WholePar: 2, Par: 3, CommMerge: 4, Unless: 5, Seq: 6}
_SYMBOL = {Alt: "+", WholePar: "&", Par: "||", CommMerge: "|", Unless: "<|", Seq: "."}


def print_value(value: Value) -> str:
    return str(value)


def print_label(label: ActionLabel) -> str:
    if label.is_shadow and label.base is not None:
        if label.index is None:
            return f"shadow({print_label(label.base)})"
        return f"shadow({print_label(label.base)}, {label.index})"
    if label.is_ordinary and label.data:
        return f"{label.name}({', '.join(print_value(v) for v in label.data)})"
    return label.text


def _labels(labels: Iterable[ActionLabel]) -> str:
    return "{" + ", ".join(print_label(l) for l in sorted(labels)) + "}"


def print_term(t: Term, context: int = 0) -> str:
    level = _LEVEL.get(type(t))
    if level is not None:
        text = f"{print_term(t.left, level + 1)} {_SYMBOL[type(t)]} {print_term(t.right, level)}"
        return f"({text})" if level < context else text
    if isinstance(t, Atom):
        return print_label(t.label)
    if isinstance(t, (Var, RecRef)):
        return t.name
    if isinstance(t, ConflictElim):
        return f"theta({print_term(t.body)})"
    if isinstance(t, Encaps):
        return f"encap{_labels(t.labels)}({print_term(t.body)})"
    if isinstance(t, Abstract):
        return f"abs{_labels(t.labels)}({print_term(t.body)})"
    if isinstance(t, StateOp):
        return f"state[{print_value(t.state)}]({print_term(t.body)})"
    raise TypeError(f"not a term: {t!r}")


def pretty_print(spec: PatternSpec) -> str:
    out: List[str] = [f"spec {spec.name};"]
    for p in spec.params:
        out.append(f"param {p.name} = {p.value} in {p.low}..{p.high};")
    for name, values in spec.domains:
        out.append(f"domain {name} = {{{', '.join(print_value(v) for v in values)}}};")
    for instance, sorts in spec.actions:
        out.append(f"act {instance}({', '.join(sorts)});" if sorts else f"act {instance};")
    for m in spec.maps:
        rows = ", ".join(f"{print_value(a)} -> {print_value(b)}" for a, b in m.rows)
        out.append(f"map {m.name} : {m.domain} = {{{rows}}};")

    env = spec.env
    for a, b, c in env.gamma:
        out.append(f"gamma({print_label(a)}, {print_label(b)}) = {print_label(c)};")
    for keyword, pairs in (("conflict", env.conflicts), ("race", env.races)):
        for a, b in pairs:
            out.append(f"{keyword}({print_label(a)}, {print_label(b)});")
    for a, b in env.causality:
        out.append(f"causal({print_label(a)} <= {print_label(b)});")
    states = env.state_spec
    if states is not None:
        out.append(f"states {{{', '.join(print_value(s) for s in states.states)}}} initial {print_value(states.initial)};")
        for s, e, result in states.actions:
            out.append(f"action({print_value(s)}, {print_label(e)}) = {print_label(result)};")
        for s, e, target in states.effects:
            out.append(f"effect({print_value(s)}, {print_label(e)}) = {print_value(target)};")
    if spec.encapsulated:
        out.append(f"encap {_labels(spec.encapsulated)};")
    if spec.hidden:
        out.append(f"hide {_labels(spec.hidden)};")

    for name, body in spec.processes.equations:
        out.append(f"proc {name} = {print_term(body)};")
    if spec.system is not None:
        out.append(f"system = {print_term(spec.system)};")
    if spec.claim is not None:
        out.append(f"claim = {print_term(spec.claim)};")
    return "\n".join(out) + "\n"


__all__ = ["pretty_print", "print_label", "print_term", "print_value"]
