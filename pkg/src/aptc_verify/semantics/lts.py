"""Step labels and step-labelled transition systems."""

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from ..algebra.actions import TAU, ActionLabel
from ..core.errors import LtsFormatError

TICK = -1


@dataclass(frozen=True)
class StepLabel:
    """A nonempty multiset of concurrently executed events (sorted)."""

    events: Tuple[ActionLabel, ...]

    @classmethod
    def of(cls, events: Iterable[ActionLabel]) -> "StepLabel":
        items = [e for e in events if not e.is_delta]
        visible = [e for e in items if not e.is_tau]
        if visible:
            items = visible
        elif items:
            items = [TAU]
        else:
            raise ValueError("a step needs at least one event")
        return cls(tuple(sorted(items, key=lambda e: e.text)))

    @property
    def key(self) -> str:
        cached = self.__dict__.get("_key")
        if cached is None:
            cached = ",".join(e.text for e in self.events)
            object.__setattr__(self, "_key", cached)
        return cached

    @property
    def is_tau(self) -> bool:
        return len(self.events) == 1 and self.events[0].is_tau

    @property
    def size(self) -> int:
        return len(self.events)

    def names(self) -> List[str]:
        return [e.text for e in self.events]

    def __str__(self) -> str:
        return "{" + self.key + "}"


TAU_STEP = StepLabel((TAU,))

Transition = Tuple[int, StepLabel, int]


@dataclass(frozen=True)
class StepLTS:
    num_states: int
    initial: int
    transitions: Tuple[Transition, ...]
    terminating: FrozenSet[int] = frozenset()
    divergent: FrozenSet[int] = frozenset()

    def outgoing(self) -> List[List[Tuple[StepLabel, int]]]:
        """Adjacency list, cached."""
        adj = self.__dict__.get("_adj")
        if adj is None:
            adj = [[] for _ in range(self.num_states)]
            for src, label, dst in self.transitions:
                adj[src].append((label, dst))
            object.__setattr__(self, "_adj", adj)
        return adj

    def alphabet(self) -> FrozenSet[ActionLabel]:
        return frozenset(e for _, label, _ in self.transitions for e in label.events)

    def to_dict(self) -> Dict:
        return {
            "states": self.num_states,
            "init": self.initial,
            "transitions": [[s, label.names(), "TICK" if d == TICK else d] for s, label, d in self.transitions],
            "terminating": sorted(self.terminating),
            "divergent": sorted(self.divergent),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: Dict) -> "StepLTS":
        try:
            n = int(data["states"])
            init = int(data.get("init", 0))
            transitions = []
            for src, names, dst in data["transitions"]:
                label = StepLabel.of(ActionLabel.parse(x) for x in names)
                transitions.append((int(src), label, TICK if dst == "TICK" else int(dst)))
        except (KeyError, TypeError, ValueError) as exc:
            raise LtsFormatError(f"malformed LTS document: {exc}")
        for src, _, dst in transitions:
            if not 0 <= src < n or (dst != TICK and not 0 <= dst < n):
                raise LtsFormatError(f"transition endpoint out of range: {src} -> {dst}")
        if not 0 <= init < n:
            raise LtsFormatError(f"initial state {init} out of range")
        return cls(n, init, _sorted(transitions), frozenset(data.get("terminating", ())),
                   frozenset(data.get("divergent", ())))

    @classmethod
    def from_json(cls, text: str) -> "StepLTS":
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise LtsFormatError(f"LTS file is not JSON: {exc}")

    def to_dot(self, name: str = "lts") -> str:
        lines = [f"digraph {json.dumps(name)} {{", "  rankdir=LR;", "  __start [shape=point];"]
        for s in range(self.num_states):
            shape = "doublecircle" if s in self.terminating else "circle"
            extra = ", style=dashed" if s in self.divergent else ""
            lines.append(f"  s{s} [label=\"{s}\", shape={shape}{extra}];")
        if any(d == TICK for _, _, d in self.transitions):
            lines.append("  TICK [label=\"√\", shape=doublecircle];")
        lines.append(f"  __start -> s{self.initial};")
        for src, label, dst in self.transitions:
            target = "TICK" if dst == TICK else f"s{dst}"
            lines.append(f"  s{src} -> {target} [label={json.dumps(str(label))}];")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        lines = [f"states {self.num_states}, initial {self.initial}, transitions {len(self.transitions)}"]
        for src, label, dst in self.transitions:
            lines.append(f"  {src} --{label}--> {'TICK' if dst == TICK else dst}")
        if self.terminating:
            lines.append("  terminating: " + ", ".join(str(s) for s in sorted(self.terminating)))
        if self.divergent:
            lines.append("  divergent: " + ", ".join(str(s) for s in sorted(self.divergent)))
        return "\n".join(lines) + "\n"


def _sorted(transitions: Iterable[Transition]) -> Tuple[Transition, ...]:
    return tuple(sorted(set(transitions), key=lambda t: (t[0], t[1].key, t[2])))


def renumber(num_states: int, initial: int, transitions: Iterable[Transition],
             terminating: Iterable[int] = (), divergent: Iterable[int] = ()) -> StepLTS:
    """Canonical StepLTS: reachable part only, ids in BFS order over label-sorted edges.

    Ties between equal labels are broken by the old state id.
    """
    adj: Dict[int, List[Tuple[StepLabel, int]]] = {}
    for src, label, dst in set(transitions):
        adj.setdefault(src, []).append((label, dst))
    for edges in adj.values():
        edges.sort(key=lambda e: (e[0].key, e[1]))
    ids = {initial: 0}
    queue = deque([initial])
    order = [initial]
    while queue:
        s = queue.popleft()
        for _, dst in adj.get(s, ()):
            if dst != TICK and dst not in ids:
                ids[dst] = len(ids)
                order.append(dst)
                queue.append(dst)
    out = []
    for s in order:
        for label, dst in adj.get(s, ()):
            out.append((ids[s], label, TICK if dst == TICK else ids[dst]))
    term = frozenset(ids[s] for s in terminating if s in ids)
    div = frozenset(ids[s] for s in divergent if s in ids)
    return StepLTS(len(ids), 0, _sorted(out), term, div)


def hide(lts: StepLTS, hidden: Iterable[ActionLabel]) -> StepLTS:
    """Rename hidden events to tau; the transition count is preserved up to duplicates."""
    hidden = frozenset(hidden)
    if not hidden:
        return lts
    out = []
    for src, label, dst in lts.transitions:
        if any(e in hidden for e in label.events):
            label = StepLabel.of(TAU if e in hidden else e for e in label.events)
        out.append((src, label, dst))
    return StepLTS(lts.num_states, lts.initial, _sorted(out), lts.terminating, lts.divergent)
