"""APTC abstract syntax.

Operators and their constructors:

    Atom(e)              e            atomic event, tau, delta or a shadow
    Seq(x, y)            x . y
    Alt(x, y)            x + y
    Par(x, y)            x || y       parallel: both sides move together
    CommMerge(x, y)      x | y        communication merge
    WholePar(x, y)       x & y        whole parallel (interleaving, joint steps, communication)
    ConflictElim(x)      theta(x)
    Unless(x, y)         x <| y
    Encaps(H, x)         encap{H}(x)
    Abstract(I, x)       abs{I}(x)
    StateOp(s, x)        state[s](x)
    Var(X)               recursion variable inside an equation body
    RecRef(X, E)         <X | E>

Terms are immutable and hash once; structural equality is field equality.
"""

from dataclasses import dataclass, fields
from typing import TYPE_CHECKING, Callable, FrozenSet, Iterable, Iterator, List, Tuple

from .actions import DELTA, PLAIN_SHADOW, TAU, ActionLabel, Value

if TYPE_CHECKING:  # pragma: no cover
    from .recursion import RecursiveSpec


def _cached_hash(self) -> int:
    h = self.__dict__.get("_h")
    if h is None:
        h = hash((type(self).__name__,) + tuple(getattr(self, name) for name in self._field_names))
        object.__setattr__(self, "_h", h)
    return h


def _node(cls):
    cls = dataclass(frozen=True)(cls)
    cls._field_names = tuple(f.name for f in fields(cls))
    cls.__hash__ = _cached_hash
    return cls


class Term:
    """Base of all term nodes."""

    _field_names: Tuple[str, ...] = ()

    def children(self) -> Tuple["Term", ...]:
        return tuple(getattr(self, n) for n in self._field_names if isinstance(getattr(self, n), Term))

    @property
    def text(self) -> str:
        cached = self.__dict__.get("_text")
        if cached is None:
            cached = render(self)
            object.__setattr__(self, "_text", cached)
        return cached

    def __str__(self) -> str:
        return self.text


@_node
class Atom(Term):
    label: ActionLabel


@_node
class Seq(Term):
    left: Term
    right: Term


@_node
class Alt(Term):
    left: Term
    right: Term


@_node
class Par(Term):
    left: Term
    right: Term


@_node
class CommMerge(Term):
    left: Term
    right: Term


@_node
class WholePar(Term):
    left: Term
    right: Term


@_node
class ConflictElim(Term):
    body: Term


@_node
class Unless(Term):
    left: Term
    right: Term


@_node
class Encaps(Term):
    labels: FrozenSet[ActionLabel]
    body: Term


@_node
class Abstract(Term):
    labels: FrozenSet[ActionLabel]
    body: Term


@_node
class StateOp(Term):
    state: Value
    body: Term


@_node
class Var(Term):
    name: str


@_node
class RecRef(Term):
    name: str
    spec: "RecursiveSpec"


BINARY = (Seq, Alt, Par, CommMerge, WholePar, Unless)

DELTA_T = Atom(DELTA)
TAU_T = Atom(TAU)
SHADOW_T = Atom(PLAIN_SHADOW)

_OPS = {Seq: ".", Alt: "+", Par: "||", CommMerge: "|", WholePar: "&", Unless: "<|"}


def render(t: Term) -> str:
    """Fully parenthesised rendering; used for canonical ordering and logs."""
    if isinstance(t, Atom):
        return t.label.text
    if isinstance(t, BINARY):
        return f"({t.left.text} {_OPS[type(t)]} {t.right.text})"
    if isinstance(t, ConflictElim):
        return f"theta({t.body.text})"
    if isinstance(t, Encaps):
        return f"encap{{{','.join(sorted(l.text for l in t.labels))}}}({t.body.text})"
    if isinstance(t, Abstract):
        return f"abs{{{','.join(sorted(l.text for l in t.labels))}}}({t.body.text})"
    if isinstance(t, StateOp):
        return f"state[{t.state}]({t.body.text})"
    if isinstance(t, Var):
        return t.name
    if isinstance(t, RecRef):
        return f"<{t.name}>"
    raise TypeError(f"not a term: {t!r}")


def atom(label: ActionLabel) -> Atom:
    return Atom(label)


def fold(op: Callable[[Term, Term], Term], terms: Iterable[Term], empty: Term = DELTA_T) -> Term:
    """Right-nested fold: fold(Alt, [a, b, c]) = a + (b + c)."""
    items = list(terms)
    if not items:
        return empty
    acc = items[-1]
    for t in reversed(items[:-1]):
        acc = op(t, acc)
    return acc


def fold_left(op: Callable[[Term, Term], Term], terms: Iterable[Term], empty: Term = DELTA_T) -> Term:
    items = list(terms)
    if not items:
        return empty
    acc = items[0]
    for t in items[1:]:
        acc = op(acc, t)
    return acc


def flatten(t: Term, kind) -> List[Term]:
    """Operands of a nest of one associative operator."""
    out: List[Term] = []
    stack = [t]
    while stack:
        cur = stack.pop()
        if isinstance(cur, kind):
            stack.append(cur.right)
            stack.append(cur.left)
        else:
            out.append(cur)
    return out


def subterms(t: Term) -> Iterator[Tuple[Tuple[int, ...], Term]]:
    """Pre-order walk yielding (path, subterm); does not enter RecRef bodies."""
    stack = [((), t)]
    while stack:
        path, cur = stack.pop()
        yield path, cur
        kids = cur.children()
        for i in range(len(kids) - 1, -1, -1):
            stack.append((path + (i,), kids[i]))


def replace_child(t: Term, index: int, new: Term) -> Term:
    names = [n for n in t._field_names if isinstance(getattr(t, n), Term)]
    values = {n: getattr(t, n) for n in t._field_names}
    values[names[index]] = new
    return type(t)(**values)


def atoms(t: Term) -> Iterator[ActionLabel]:
    for _, sub in subterms(t):
        if isinstance(sub, Atom):
            yield sub.label


def is_event_like(t: Term) -> bool:
    """An event or a multi-event prefix (a || b || ..)."""
    if isinstance(t, Atom):
        return not t.label.is_delta and not t.label.is_plain_shadow
    if isinstance(t, Par):
        return is_event_like(t.left) and is_event_like(t.right)
    return False


def prefix_events(t: Term) -> List[ActionLabel]:
    return [a.label for a in flatten(t, Par)]
