"""Environments: communication function, conflict / race / causality relations and state tables."""

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Optional, Sequence, Tuple

from ..core.errors import StateTableError
from .actions import ActionLabel, Value

Pair = Tuple[ActionLabel, ActionLabel]


def _pairs(items: Iterable[Pair]) -> Tuple[Pair, ...]:
    """Unordered pairs stored sorted, deduplicated."""
    return tuple(sorted({(a, b) if a.text <= b.text else (b, a) for a, b in items}, key=lambda p: (p[0].text, p[1].text)))


@dataclass(frozen=True)
class StateSpec:
    """Finite states with action / effect tables; missing rows default to identity."""

    states: Tuple[Value, ...]
    initial: Value
    actions: Tuple[Tuple[Value, ActionLabel, ActionLabel], ...] = ()
    effects: Tuple[Tuple[Value, ActionLabel, Value], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "actions", tuple(sorted(set(self.actions), key=lambda r: (str(r[0]), r[1].text))))
        object.__setattr__(self, "effects", tuple(sorted(set(self.effects), key=lambda r: (str(r[0]), r[1].text))))

    def _tables(self):
        tables = self.__dict__.get("_tables_cache")
        if tables is None:
            tables = ({(s, e): a for s, e, a in self.actions}, {(s, e): t for s, e, t in self.effects})
            object.__setattr__(self, "_tables_cache", tables)
        return tables

    def action(self, state: Value, event: ActionLabel) -> ActionLabel:
        if not event.is_ordinary:
            return event
        return self._tables()[0].get((state, event), event)

    def effect(self, state: Value, event: ActionLabel) -> Value:
        if not event.is_ordinary:
            return state
        return self._tables()[1].get((state, event), state)

    def effect_step(self, state: Value, events: Sequence[ActionLabel]) -> Value:
        """Effect of a joint step; the events must commute on ``state``."""
        ordinary = [e for e in events if e.is_ordinary]
        for i, a in enumerate(ordinary):
            for b in ordinary[i + 1:]:
                if self.effect(self.effect(state, a), b) != self.effect(self.effect(state, b), a):
                    raise StateTableError(f"effects of {a} and {b} do not commute in state {state}")
        for e in ordinary:
            state = self.effect(state, e)
        return state


@dataclass(frozen=True)
class Environment:
    gamma: Tuple[Tuple[ActionLabel, ActionLabel, ActionLabel], ...] = ()
    conflicts: Tuple[Pair, ...] = ()
    races: Tuple[Pair, ...] = ()
    causality: Tuple[Pair, ...] = ()
    state_spec: Optional[StateSpec] = None
    declared: FrozenSet[ActionLabel] = field(default_factory=frozenset)

    @classmethod
    def create(cls, gamma: Optional[Dict[Pair, ActionLabel]] = None, conflicts: Iterable[Pair] = (),
               races: Iterable[Pair] = (), causality: Iterable[Pair] = (), state_spec: Optional[StateSpec] = None,
               declared: Iterable[ActionLabel] = (), symmetric: bool = True) -> "Environment":
        """Build an environment; ``symmetric`` completes gamma with the mirrored entries."""
        table = dict(gamma or {})
        if symmetric:
            for (a, b), c in list(table.items()):
                table.setdefault((b, a), c)
        return cls(
            gamma=tuple(sorted(((a, b, c) for (a, b), c in table.items()), key=lambda r: (r[0].text, r[1].text))),
            conflicts=_pairs(conflicts),
            races=_pairs(races),
            causality=tuple(sorted(set(causality), key=lambda p: (p[0].text, p[1].text))),
            state_spec=state_spec,
            declared=frozenset(declared),
        )

    def __hash__(self) -> int:
        h = self.__dict__.get("_h")
        if h is None:
            h = hash((self.gamma, self.conflicts, self.races, self.causality, self.state_spec, self.declared))
            object.__setattr__(self, "_h", h)
        return h

    def _index(self):
        idx = self.__dict__.get("_idx")
        if idx is None:
            conflict: Dict[ActionLabel, set] = {}
            for a, b in self.conflicts:
                conflict.setdefault(a, set()).add(b)
                conflict.setdefault(b, set()).add(a)
            race = set()
            for a, b in self.races:
                race.add((a, b))
                race.add((b, a))
            below: Dict[ActionLabel, set] = {}
            for a, b in self.causality:
                below.setdefault(b, set()).add(a)
            idx = ({(a, b): c for a, b, c in self.gamma}, conflict, race, below)
            object.__setattr__(self, "_idx", idx)
        return idx

    def communicate(self, a: ActionLabel, b: ActionLabel) -> Optional[ActionLabel]:
        """gamma(a, b), or None where undefined (the merge deadlocks)."""
        return self._index()[0].get((a, b))

    def gamma_partners(self) -> FrozenSet[ActionLabel]:
        return frozenset(a for a, _, _ in self.gamma)

    def in_conflict(self, a: ActionLabel, b: ActionLabel) -> bool:
        return b in self._index()[1].get(a, ())

    def conflicting(self, a: ActionLabel) -> FrozenSet[ActionLabel]:
        return frozenset(self._index()[1].get(a, ()))

    def in_race(self, a: ActionLabel, b: ActionLabel) -> bool:
        return (a, b) in self._index()[2]

    def causes(self, a: ActionLabel) -> FrozenSet[ActionLabel]:
        """Events declared <= a."""
        return frozenset(self._index()[3].get(a, ()))

    def mentioned(self) -> FrozenSet[ActionLabel]:
        labels = set()
        for row in self.gamma:
            labels.update(row)
        for pairs in (self.conflicts, self.races, self.causality):
            for a, b in pairs:
                labels.update((a, b))
        return frozenset(labels)

    def without_conflicts(self) -> "Environment":
        return Environment(self.gamma, (), self.races, self.causality, self.state_spec, self.declared)
