"""Bounded pomset bisimulation.

Step transitions are closed under sequential composition into path labels
carrying at most ``k`` events; strong bisimulation is then decided on the
enriched systems.  A path label is a chain of steps: every event of a step
precedes every event of the next one, the events inside one step are
concurrent.  Auto-concurrency that was never recorded as a single step is
therefore not reconstructed.
"""

from dataclasses import dataclass
from typing import List, Optional, Tuple

from ..config import settings
from ..core.errors import Diagnostic, SizeCapError, ValidationError
from ..semantics.lts import TICK, StepLabel, StepLTS, _sorted


@dataclass(frozen=True)
class PomsetLabel:
    steps: Tuple[StepLabel, ...]

    @property
    def key(self) -> str:
        return ";".join(s.key for s in self.steps)

    @property
    def events(self):
        return tuple(e for s in self.steps for e in s.events)

    @property
    def size(self) -> int:
        return sum(s.size for s in self.steps)

    def names(self) -> List[str]:
        return [s.key for s in self.steps]

    def __str__(self) -> str:
        return " ; ".join(str(s) for s in self.steps)


def enrich(lts: StepLTS, k: int) -> StepLTS:
    """The LTS with one transition per step path of at most ``k`` events."""
    adj = lts.outgoing()
    out = []
    for src in range(lts.num_states):
        stack: List[Tuple[int, Tuple[StepLabel, ...], int]] = [(src, (), 0)]
        while stack:
            state, steps, size = stack.pop()
            for label, dst in adj[state]:
                total = size + label.size
                if total > k:
                    continue
                path = steps + (label,)
                out.append((src, PomsetLabel(path), dst))
                if dst != TICK:
                    stack.append((dst, path, total))
    return StepLTS(lts.num_states, lts.initial, _sorted(out), lts.terminating, lts.divergent)


def check_bound(k: int, cap: Optional[int] = None) -> None:
    cap = cap or settings().pomset_cap
    if k < 1:
        raise ValidationError([Diagnostic("error", f"pomset size must be at least 1, got {k}")])
    if k > cap:
        raise SizeCapError(f"pomset size {k} exceeds the configured cap {cap}")
