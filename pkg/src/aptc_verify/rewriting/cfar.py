"""Cluster fair abstraction on transition systems.

Every maximal tau-strongly-connected cluster of the (abstracted) LTS becomes
one state carrying the cluster's exits.  States of a cluster are branching
bisimilar, so the result is branching step equivalent to the input.  An
initial state on a tau-cycle keeps a state of its own with its original
steps, so the result is rooted equivalent as well.
A cyclic cluster without exits is kept as a single divergent state.
"""

from typing import Iterable, List

from ..algebra.actions import ActionLabel
from ..core.logs import get_logger
from ..equivalence.branching import tau_sccs
from ..equivalence.partition import graph_of
from ..semantics.lts import TICK, StepLTS, hide, renumber

LOGGER = get_logger("aptc_rewriter", "rewriter.log")


def cfar_collapse(lts: StepLTS, hidden: Iterable[ActionLabel] = ()) -> StepLTS:
    lts = hide(lts, hidden)
    g = graph_of(lts)
    comp, ncomp = tau_sccs(g)
    first, tick = g.sides[0]
    size = [0] * ncomp
    looping = [False] * ncomp
    for node in range(first, tick):
        size[comp[node]] += 1
    for src, label, dst in lts.transitions:
        if label.is_tau and dst == src:
            looping[comp[src]] = True

    transitions = []
    exits: List[int] = [0] * ncomp
    terminating = set()
    for src, label, dst in lts.transitions:
        c = comp[src]
        if label.is_tau and dst != TICK and comp[dst] == c:
            continue
        exits[c] += 1
        transitions.append((c, label, TICK if dst == TICK else comp[dst]))
    for s in lts.terminating:
        terminating.add(comp[s])
    divergent = {comp[s] for s in lts.divergent}
    for c in range(ncomp):
        if comp[tick] == c:
            continue
        cyclic = size[c] > 1 or looping[c]
        if cyclic and not exits[c] and c not in terminating:
            divergent.add(c)
    clusters = sum(1 for c in range(ncomp) if size[c] > 1 or looping[c])
    root, states = comp[first + lts.initial], ncomp
    if size[root] > 1 or looping[root]:
        root, states = ncomp, ncomp + 1
        for src, label, dst in lts.transitions:
            if src == lts.initial:
                transitions.append((root, label, TICK if dst == TICK else comp[dst]))
        if lts.initial in lts.terminating:
            terminating.add(root)
        if lts.initial in lts.divergent:
            divergent.add(root)
    result = renumber(states, root, transitions, terminating, divergent)
    LOGGER.info("cfar.collapsed states_in=%d states_out=%d clusters=%d divergent=%d",
                lts.num_states, result.num_states, clusters, len(result.divergent))
    return result
