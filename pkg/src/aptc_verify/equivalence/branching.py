"""Branching step bisimulation (divergence-insensitive).

tau-strongly-connected components are collapsed first (their states are
always branching bisimilar).  On the remaining tau-DAG a signature of a
state is its set of non-inert (label, block) pairs united with the
signatures of its inert tau successors, computed sinks first.
"""

from typing import Dict, List, Sequence, Tuple

from .partition import TAU_KEY, Graph, _relabel


def tau_sccs(g: Graph) -> Tuple[List[int], int]:
    """Tarjan over tau edges.  Component ids come out in reverse topological order."""
    index: Dict[int, int] = {}
    low: Dict[int, int] = {}
    comp = [-1] * g.n
    on_stack = [False] * g.n
    stack: List[int] = []
    counter = 0
    ncomp = 0
    tau_succ = [[d for k, d in g.edges[s] if k == TAU_KEY] for s in range(g.n)]
    for root in range(g.n):
        if root in index:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            node, i = work[-1]
            succ = tau_succ[node]
            if i < len(succ):
                work[-1] = (node, i + 1)
                nxt = succ[i]
                if nxt not in index:
                    index[nxt] = low[nxt] = counter
                    counter += 1
                    stack.append(nxt)
                    on_stack[nxt] = True
                    work.append((nxt, 0))
                elif on_stack[nxt]:
                    low[node] = min(low[node], index[nxt])
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                while True:
                    member = stack.pop()
                    on_stack[member] = False
                    comp[member] = ncomp
                    if member == node:
                        break
                ncomp += 1
    return comp, ncomp


def collapse(g: Graph) -> Tuple[Graph, List[int]]:
    """Quotient by tau-SCCs; returns the DAG graph and the node -> component map."""
    comp, ncomp = tau_sccs(g)
    edges: List[set] = [set() for _ in range(ncomp)]
    terminating = [False] * ncomp
    for s in range(g.n):
        c = comp[s]
        terminating[c] = terminating[c] or g.terminating[s]
        for k, d in g.edges[s]:
            if k == TAU_KEY and comp[d] == c:
                continue
            edges[c].add((k, comp[d]))
    dag = Graph(ncomp, [sorted(e) for e in edges], terminating, tuple(comp[r] for r in g.roots), g.labels)
    return dag, comp


def branching_blocks(g: Graph) -> List[int]:
    """Coarsest branching bisimulation as a block id per node of ``g``."""
    dag, comp = collapse(g)
    n = dag.n
    block, count = [0] * n, 1
    while True:
        sigs: List[frozenset] = [frozenset()] * n
        # component ids are sinks-first, so inert successors are ready
        for c in range(n):
            items = set()
            if dag.terminating[c]:
                items.add(("√",))
            for k, d in dag.edges[c]:
                if k == TAU_KEY and block[d] == block[c]:
                    items |= sigs[d]
                else:
                    items.add((k, block[d]))
            sigs[c] = frozenset(items)
        new, new_count = _relabel([(block[c], sigs[c]) for c in range(n)])
        block = new
        if new_count == count:
            break
        count = new_count
    return [block[comp[s]] for s in range(g.n)]


def root_mismatch(g: Graph, block: Sequence[int], p: int, q: int):
    """Rooted condition between two initial nodes.

    Returns None when every transition of one root is matched by an equally
    labelled transition of the other into the same block (tau by tau) and
    both roots agree on termination; otherwise (node, key, target) of the
    first unmatched transition, or (node, "√", None).
    """
    if g.terminating[p] != g.terminating[q]:
        return (p if g.terminating[p] else q, "√", None)
    for a, b in ((p, q), (q, p)):
        offered = {(k, block[d]) for k, d in g.edges[b]}
        for k, d in sorted(g.edges[a]):
            if (k, block[d]) not in offered:
                return a, k, d
    return None
