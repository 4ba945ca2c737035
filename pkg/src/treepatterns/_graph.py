# Strongly connected components, iterative Tarjan.
from __future__ import annotations

from typing import Sequence


def strongly_connected_components(succ: Sequence[Sequence[int]]) -> list[list[int]]:
    """SCCs of the digraph ``v -> succ[v]`` on vertices ``0..len(succ)-1``.

    Components come out in reverse topological order (sinks first), each
    sorted ascending.
    """
    n = len(succ)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    out: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] >= 0:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            nbrs = succ[v]
            if i < len(nbrs):
                work[-1] = (v, i + 1)
                w = nbrs[i]
                if index[w] < 0:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
                continue
            work.pop()
            if work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comp.sort()
                out.append(comp)
    return out


def is_cycle_component(comp: Sequence[int], succ: Sequence[Sequence[int]]) -> bool:
    """True if ``comp`` (an SCC with >= 1 internal arrow) is one simple cycle."""
    members = set(comp)
    return all(sum(1 for w in succ[v] if w in members) == 1 for v in comp)


def has_internal_arrow(comp: Sequence[int], succ: Sequence[Sequence[int]]) -> bool:
    if len(comp) > 1:
        return True
    v = comp[0]
    return v in succ[v]
