"""Causality constraints ``a <= b`` for asynchronous communication.

A constraint says the receive ``b`` may only fire after a matching send
``a``.  Paths are unfolded against one balance counter per constraint
(#a - #b along the path); steps that would let a receive overtake its send
are removed, which leaves the offending path deadlocked.

Counters saturate at the channel capacity: sends beyond it are still taken
but not remembered, so a send that is never received cannot grow the
product without limit.
"""

from collections import deque
from typing import Dict, Iterable, List, Optional, Tuple

from ..algebra.actions import ActionLabel
from ..config import settings
from ..core.errors import StateBoundError
from ..core.logs import get_logger
from .lts import TICK, StepLabel, StepLTS, renumber

LOGGER = get_logger("aptc_lts", "lts.log")

Constraint = Tuple[ActionLabel, ActionLabel]
Balance = Tuple[int, ...]


def _count(events: Iterable[ActionLabel], event: ActionLabel) -> int:
    return sum(1 for e in events if e == event)


class CausalityTracker:
    """Balance counters for the constraints whose receive can occur."""

    def __init__(self, constraints: Iterable[Constraint], receivable: Iterable[ActionLabel],
                 capacity: Optional[int] = None):
        receivable = frozenset(receivable)
        self.tracked: List[Constraint] = sorted({(a, b) for a, b in constraints if b in receivable},
                                                key=lambda p: (p[0].text, p[1].text))
        self.capacity = capacity or settings().channel_capacity
        self.initial: Balance = (0,) * len(self.tracked)
        self.pruned = 0

    def __bool__(self) -> bool:
        return bool(self.tracked)

    def advance(self, balance: Balance, events: Iterable[ActionLabel]) -> Optional[Balance]:
        """Balance after one step, or None when a receive overtakes its send."""
        events = tuple(events)
        nxt = []
        for (a, b), have in zip(self.tracked, balance):
            sent, received = _count(events, a), _count(events, b)
            if received > have + sent:
                self.pruned += 1
                return None
            nxt.append(min(have + sent - received, self.capacity))
        return tuple(nxt)


def apply_async_constraints(lts: StepLTS, constraints: Iterable[Constraint], bound: Optional[int] = None,
                            capacity: Optional[int] = None) -> StepLTS:
    """Prune every step on which a constrained receive fires before its send.

    Only constraints whose receive occurs in the LTS are tracked.  Within one
    step a send may enable a receive of the same step.
    """
    tracker = CausalityTracker(constraints, lts.alphabet(), capacity)
    if not tracker:
        return lts
    bound = bound or settings().max_states
    adj = lts.outgoing()
    start = (lts.initial, tracker.initial)
    ids: Dict[Tuple[int, Balance], int] = {start: 0}
    queue = deque([start])
    transitions = []
    terminating = set()
    divergent = set()
    while queue:
        node = queue.popleft()
        sid = ids[node]
        state, balance = node
        if state in lts.terminating:
            terminating.add(sid)
        if state in lts.divergent:
            divergent.add(sid)
        for label, dst in adj[state]:
            nxt = tracker.advance(balance, label.events)
            if nxt is None:
                continue
            if dst == TICK:
                transitions.append((sid, label, TICK))
                continue
            key = (dst, nxt)
            tid = ids.get(key)
            if tid is None:
                if len(ids) >= bound:
                    raise StateBoundError(bound, len(queue) + 1)
                tid = len(ids)
                ids[key] = tid
                queue.append(key)
            transitions.append((sid, label, tid))
    LOGGER.info("async.applied constraints=%d pruned=%d states=%d", len(tracker.tracked), tracker.pruned, len(ids))
    return renumber(len(ids), 0, transitions, terminating, divergent)
