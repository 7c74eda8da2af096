"""Atomic events.

An ActionLabel is one of: an ordinary action ``name(v1, ..)`` over a finite
data domain, the silent step ``tau``, the deadlock ``delta``, or a shadow.
A shadow either belongs to an event (``shadow(e, i)``, the i-th shadow of e)
or is the plain shadow constant, which terminates without doing anything.
Labels order by their canonical rendering.
"""

import re
from dataclasses import dataclass
from functools import cached_property, total_ordering
from typing import Optional, Tuple, Union

from ..core.errors import LtsFormatError

Value = Union[int, str]

ACT = "act"
TAU_KIND = "tau"
DELTA_KIND = "delta"
SHADOW = "shadow"

_KINDS = (ACT, TAU_KIND, DELTA_KIND, SHADOW)


def render_value(value: Value) -> str:
    return str(value)


@total_ordering
@dataclass(frozen=True)
class ActionLabel:
    kind: str
    name: str = ""
    data: Tuple[Value, ...] = ()
    base: Optional["ActionLabel"] = None
    index: Optional[int] = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown label kind {self.kind!r}")
        if self.kind == ACT and not self.name:
            raise ValueError("ordinary actions need a name")
        if self.kind in (TAU_KIND, DELTA_KIND) and (self.name or self.data):
            raise ValueError(f"{self.kind} carries no name or data")
        if self.base is not None and self.base.kind != ACT:
            raise ValueError("a shadow belongs to an ordinary action")

    @cached_property
    def text(self) -> str:
        if self.kind == TAU_KIND:
            return "tau"
        if self.kind == DELTA_KIND:
            return "delta"
        if self.kind == SHADOW:
            if self.base is None:
                return "shadow"
            if self.index is None:
                return f"shadow({self.base.text})"
            return f"shadow({self.base.text},{self.index})"
        if not self.data:
            return self.name
        return f"{self.name}({','.join(render_value(v) for v in self.data)})"

    @cached_property
    def _hash(self) -> int:
        return hash((self.kind, self.name, self.data, self.base, self.index))

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return self.text

    def __lt__(self, other: "ActionLabel") -> bool:
        if not isinstance(other, ActionLabel):
            return NotImplemented
        return self.text < other.text

    @property
    def is_ordinary(self) -> bool:
        return self.kind == ACT

    @property
    def is_tau(self) -> bool:
        return self.kind == TAU_KIND

    @property
    def is_delta(self) -> bool:
        return self.kind == DELTA_KIND

    @property
    def is_shadow(self) -> bool:
        return self.kind == SHADOW

    @property
    def is_plain_shadow(self) -> bool:
        return self.kind == SHADOW and self.base is None

    def with_index(self, index: int) -> "ActionLabel":
        return ActionLabel(SHADOW, base=self.base, index=index)

    @classmethod
    def parse(cls, text: str) -> "ActionLabel":
        """Inverse of ``text`` for tau, delta, ordinary actions and shadows."""
        text = text.strip()
        if text == "tau":
            return TAU
        if text == "delta":
            return DELTA
        if text == "shadow":
            return PLAIN_SHADOW
        m = re.fullmatch(r"shadow\((.+?)(?:,(\d+))?\)", text)
        if m and not m.group(1).endswith("("):
            base = cls.parse(m.group(1))
            return shadow(base, int(m.group(2)) if m.group(2) else None)
        m = re.fullmatch(r"([A-Za-z_][A-Za-z0-9_'\[\]]*)(?:\((.*)\))?", text)
        if not m:
            raise LtsFormatError(f"cannot read action label {text!r}")
        values = tuple(_read_value(v) for v in m.group(2).split(",")) if m.group(2) else ()
        return ActionLabel(ACT, m.group(1), values)


def _read_value(text: str) -> Value:
    text = text.strip()
    return int(text) if re.fullmatch(r"-?\d+", text) else text


TAU = ActionLabel(TAU_KIND)
DELTA = ActionLabel(DELTA_KIND)
PLAIN_SHADOW = ActionLabel(SHADOW)


def act(name: str, *data: Value) -> ActionLabel:
    return ActionLabel(ACT, name, tuple(data))


def shadow(base: ActionLabel, index: Optional[int] = None) -> ActionLabel:
    return ActionLabel(SHADOW, base=base, index=index)
