"""Basic paths, the f-covering digraph and everything computed from it."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Optional

import numpy as np

from ._graph import has_internal_arrow, is_cycle_component, strongly_connected_components
from .numerics import DEFAULT_RADIUS_TOL, spectral_radius_from_successors
from .pattern import Pattern

BasicPath = tuple[int, int]

DENSE_LIMIT = 64


def basic_paths(P: Pattern) -> list[BasicPath]:
    """All unordered pairs inside a component, as sorted tuples in sorted order."""
    out = set()
    for comp in P.components:
        out.update(combinations(comp, 2))
    return sorted(out)


def _image(P: Pattern, path: BasicPath) -> tuple[int, int]:
    n = P.period
    return (path[0] + 1) % n, (path[1] + 1) % n


def covers(P: Pattern, pi: BasicPath, sigma: BasicPath) -> bool:
    """Does ``pi`` f-cover ``sigma``, i.e. is ``sigma`` inside ``<f(pi)>``?"""
    a, b = _image(P, pi)
    on_arc = set(P.arc(a, b))
    return sigma[0] in on_arc and sigma[1] in on_arc


@dataclass(frozen=True)
class CoveringGraph:
    """The P-path graph: vertices are basic paths, arrows are f-coverings."""

    paths: tuple[BasicPath, ...]
    successors: tuple[tuple[int, ...], ...]

    @cached_property
    def index(self) -> dict[BasicPath, int]:
        return {p: i for i, p in enumerate(self.paths)}

    def __len__(self):
        return len(self.paths)

    @cached_property
    def matrix(self):
        """Transition matrix: dense ndarray up to 64 paths, CSR beyond."""
        k = len(self.paths)
        if k <= DENSE_LIMIT:
            M = np.zeros((k, k), dtype=np.int64)
            for i, row in enumerate(self.successors):
                M[i, list(row)] = 1
            return M
        from scipy.sparse import csr_matrix

        rows = [i for i, row in enumerate(self.successors) for _ in row]
        cols = [j for row in self.successors for j in row]
        return csr_matrix((np.ones(len(rows), dtype=np.int64), (rows, cols)), shape=(k, k))

    def dense(self) -> np.ndarray:
        M = self.matrix
        return M if isinstance(M, np.ndarray) else M.toarray()

    def row_sums(self) -> list[int]:
        return [len(s) for s in self.successors]

    def to_dict(self) -> dict:
        return {"paths": [list(p) for p in self.paths], "matrix": self.dense().tolist()}


def transition_matrix(P: Pattern) -> CoveringGraph:
    """Build the covering graph.

    The hull of ``f(pi)`` is the arc between the two image points, and the
    basic paths inside an arc are exactly its consecutive point pairs (an arc
    crosses each component through at most two of its points), so each row
    is read off the image arc directly.
    """
    cached = P.__dict__.get("_covering_graph")
    if cached is not None:
        return cached
    paths = basic_paths(P)
    index = {p: i for i, p in enumerate(paths)}
    succ = []
    for path in paths:
        a, b = _image(P, path)
        arc = P.arc(a, b)
        row = sorted({index[(u, v) if u < v else (v, u)] for u, v in zip(arc, arc[1:])})
        succ.append(tuple(row))
    G = CoveringGraph(tuple(paths), tuple(succ))
    P.__dict__["_covering_graph"] = G
    return G


def is_zero_entropy(P: Pattern) -> bool:
    """Exact test of ``rho(M_P) <= 1``.

    For a 0-1 matrix this holds iff every strongly connected component is a
    lone vertex or a single directed cycle.
    """
    succ = transition_matrix(P).successors
    for comp in strongly_connected_components(succ):
        if has_internal_arrow(comp, succ) and not is_cycle_component(comp, succ):
            return False
    return True


def spectral_radius_of(P: Pattern, tol: float = DEFAULT_RADIUS_TOL) -> float:
    return spectral_radius_from_successors(transition_matrix(P).successors, tol)


def entropy(P: Pattern, tol: float = 1e-10) -> float:
    """Topological entropy ``log max(rho(M_P), 1)``; exactly 0.0 when zero."""
    if is_zero_entropy(P):
        return 0.0
    cached = P.__dict__.get("_entropy")
    if cached is not None and cached[0] <= tol:
        return cached[1]
    h = math.log(max(spectral_radius_of(P, tol), 1.0))
    P.__dict__["_entropy"] = (tol, h)
    return h


def split_time(P: Pattern, pi: BasicPath) -> Optional[int]:
    """Number of iterates after which ``pi`` stops being a basic path.

    Returns ``None`` when the path never splits; that is decided after ``n``
    iterates because the shift has period ``n``.
    """
    n = P.period
    a, b = pi
    if not P.same_component(a, b) or a == b:
        raise ValueError(f"{pi} is not a basic path of {P}")
    for k in range(1, n + 1):
        if not P.same_component((a + k) % n, (b + k) % n):
            return k
    return None


def never_splits(P: Pattern, pi: BasicPath) -> bool:
    return split_time(P, pi) is None


def walk_count(P: Pattern, pi: BasicPath, k: int) -> int:
    """Row sum of ``M**k`` at ``pi``: number of covering walks of length k."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    G = transition_matrix(P)
    pi = tuple(sorted(pi))
    counts = {G.index[pi]: 1}
    for _ in range(k):
        nxt: dict[int, int] = {}
        for v, c in counts.items():
            for w in G.successors[v]:
                nxt[w] = nxt.get(w, 0) + c
        counts = nxt
    return sum(counts.values())


def walk_counts(P: Pattern, k: int) -> list[int]:
    """Row sums of ``M**k`` for every basic path (exact integers)."""
    G = transition_matrix(P)
    # row sums of M^k = M^k @ 1, computed as k applications of M to a vector
    vec = [1] * len(G)
    for _ in range(k):
        vec = [sum(vec[w] for w in row) for row in G.successors]
    return vec
