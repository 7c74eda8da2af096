"""Equivalence checks on finite step LTSs."""

from typing import Optional

from ..semantics.lts import StepLTS
from .branching import branching_blocks, root_mismatch
from .partition import cross_pairs, graph_of, strong_blocks
from .pomset import check_bound, enrich
from .verdict import TERMINATION, Counterexample, EquivalenceVerdict, find_counterexample


def strong_step_bisim(l1: StepLTS, l2: StepLTS) -> EquivalenceVerdict:
    g = graph_of(l1, l2)
    block = strong_blocks(g)
    p, q = g.roots
    if block[p] == block[q]:
        return EquivalenceVerdict(True, "step", cross_pairs(g, block))
    return EquivalenceVerdict(False, "step", counterexample=find_counterexample(g, block, weak=False))


def branching_step_bisim(l1: StepLTS, l2: StepLTS) -> EquivalenceVerdict:
    """Unrooted variant; used to relate an LTS to its branching quotient."""
    g = graph_of(l1, l2)
    block = branching_blocks(g)
    p, q = g.roots
    if block[p] == block[q]:
        return EquivalenceVerdict(True, "branching", cross_pairs(g, block))
    return EquivalenceVerdict(False, "branching", counterexample=find_counterexample(g, block, weak=True))


def rooted_branching_step_bisim(l1: StepLTS, l2: StepLTS) -> EquivalenceVerdict:
    g = graph_of(l1, l2)
    block = branching_blocks(g)
    p, q = g.roots
    if block[p] != block[q]:
        return EquivalenceVerdict(False, "rbs", counterexample=find_counterexample(g, block, weak=True))
    miss = root_mismatch(g, block, p, q)
    if miss is None:
        return EquivalenceVerdict(True, "rbs", cross_pairs(g, block))
    node, key, _ = miss
    item = TERMINATION if key == TERMINATION else g.labels[key]
    side = 0 if node == p else 1
    return EquivalenceVerdict(False, "rbs", counterexample=Counterexample("root", (item,), side, 0))


def pomset_bisim_bounded(l1: StepLTS, l2: StepLTS, k: int, cap: Optional[int] = None) -> EquivalenceVerdict:
    check_bound(k, cap)
    verdict = strong_step_bisim(enrich(l1, k), enrich(l2, k))
    return EquivalenceVerdict(verdict.equivalent, f"pomset:{k}", verdict.relation, verdict.counterexample)


def check(l1: StepLTS, l2: StepLTS, kind: str) -> EquivalenceVerdict:
    """Dispatch on a kind string: "step", "rbs", "branching" or "pomset:k"."""
    if kind == "step":
        return strong_step_bisim(l1, l2)
    if kind == "rbs":
        return rooted_branching_step_bisim(l1, l2)
    if kind == "branching":
        return branching_step_bisim(l1, l2)
    if kind.startswith("pomset:"):
        try:
            k = int(kind.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"bad pomset kind {kind!r}")
        return pomset_bisim_bounded(l1, l2, k)
    raise ValueError(f"unknown equivalence kind {kind!r}")
