"""Minimisation.

Blocks are numbered by their smallest member before the canonical
renumbering.  The branching quotient drops inert tau transitions; it is
branching equivalent to its input, but a quotient may lose an initial tau
and with it rooted equivalence (tau . a minimises to a).
"""

from typing import Dict

from ..semantics.lts import TICK, StepLTS, renumber
from .branching import branching_blocks
from .partition import TAU_KEY, graph_of, strong_blocks

KINDS = ("step", "branching")


def quotient(lts: StepLTS, kind: str = "step") -> StepLTS:
    if kind not in KINDS:
        raise ValueError(f"unknown quotient kind {kind!r}")
    g = graph_of(lts)
    block = strong_blocks(g) if kind == "step" else branching_blocks(g)
    first, tick = g.sides[0]
    root_block = block[g.roots[0]]
    tick_block = block[tick]
    order: Dict[int, int] = {}
    for node in range(first, tick):
        order.setdefault(block[node], len(order))

    def target(node: int) -> int:
        b = block[node]
        if b == tick_block and b != root_block:
            return TICK
        return order[b]

    transitions = set()
    terminating = set()
    divergent = set()
    for node in range(first, tick):
        src = order[block[node]]
        if g.terminating[node]:
            terminating.add(src)
        if node - first in lts.divergent:
            divergent.add(src)
        for key, dst in g.edges[node]:
            if kind == "branching" and key == TAU_KEY and block[dst] == block[node]:
                continue
            transitions.add((src, g.labels[key], target(dst)))
    return renumber(len(order), order[root_block], transitions, terminating, divergent)
