"""Exhaustive generation of n-periodic patterns up to rotation.

Labeled component trees over ``{0, ..., n-1}`` are grown from the point 0:
the points hanging below a point are split into branches, each branch picks
the component through that point, and the leftover points are distributed
among the new component's members.  Every labeled tree comes out exactly
once; a tree is kept only when its sorted bitmask encoding is minimal among
its rotations, then reported in canonical form.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from itertools import combinations
from typing import Iterator, Optional

from .covering import is_zero_entropy
from .errors import PatternError
from .numerics import proper_divisors
from .pattern import Pattern, canonical_form, validate
from .structure import block_structure, is_reducible

DEFAULT_MAX_N = 9

Tree = tuple[int, ...]  # component bitmasks


def _submasks(mask: int) -> Iterator[int]:
    """Nonempty submasks of ``mask``, descending."""
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


class _Generator:
    """Memoized rooted recursion, optionally restricted to trees that can
    carry a ``block``-block structure (other residue classes must sit on one
    side of every point)."""

    def __init__(self, n: int, block: Optional[int] = None):
        self.n = n
        self.full = (1 << n) - 1
        self.block = block
        if block:
            self.classes = [sum(1 << x for x in range(c, n, block)) for c in range(block)]
        self.memo: dict[tuple[int, int], list[Tree]] = {}

    # a class other than the point's own must lie wholly inside or outside
    def _whole(self, v: int, inside: int) -> bool:
        if not self.block:
            return True
        own = v % self.block
        for c, cmask in enumerate(self.classes):
            if c != own and cmask & inside and cmask & ~inside:
                return False
        return True

    def _atomic(self, v: int, part: int, pool: int) -> bool:
        if not self.block:
            return True
        own = v % self.block
        for c, cmask in enumerate(self.classes):
            if c == own:
                continue
            here = cmask & pool
            if here & part and here & ~part:
                return False
        return True

    def hang(self, v: int, S: int) -> list[Tree]:
        """All forests of components hanging at ``v`` covering exactly ``S``."""
        if S == 0:
            return [()]
        key = (v, S)
        if key in self.memo:
            return self.memo[key]
        out = []
        low = S & -S
        for sub in _submasks(S ^ low):
            self._split(v, S, low | sub, out)
        self._split(v, S, low, out)
        self.memo[key] = out
        return out

    def _split(self, v, S, B, out):
        if not self._atomic(v, B, S):
            return
        rest = self.hang(v, S ^ B)
        if not rest:
            return
        for t in self.branch(v, B):
            for r in rest:
                out.append(t + r)

    def branch(self, v: int, B: int) -> list[Tree]:
        """Trees on ``B + v`` with ``v`` in exactly one component."""
        out = []
        for members in _submasks(B):
            spare = B ^ members
            comp = members | (1 << v)
            pts = [x for x in range(self.n) if members >> x & 1]
            for forest in self._distribute(pts, spare):
                out.append((comp,) + forest)
        return out

    def _distribute(self, pts: list[int], spare: int) -> Iterator[Tree]:
        a = pts[0]
        if len(pts) == 1:
            if self._whole(a, spare):
                yield from self.hang(a, spare)
            return
        subs = [0] + list(_submasks(spare))
        for Sa in subs:
            if not self._whole(a, Sa):
                continue
            below = self.hang(a, Sa)
            if not below:
                continue
            for rest in self._distribute(pts[1:], spare ^ Sa):
                for t in below:
                    yield t + rest


def _rotate_mask(m: int, k: int, n: int, full: int) -> int:
    return ((m << k) | (m >> (n - k))) & full


def _is_min_rotation(tree: Tree, n: int, full: int) -> bool:
    key = tuple(sorted(tree))
    for k in range(1, n):
        rot = tuple(sorted(_rotate_mask(m, k, n, full) for m in tree))
        if rot < key:
            return False
    return True


def _to_pattern(tree: Tree, n: int) -> Pattern:
    comps = tuple(sorted(tuple(x for x in range(n) if m >> x & 1) for m in tree))
    return canonical_form(Pattern(n, comps))


def _top_choices(n: int) -> list[int]:
    # the branch at 0 holding point 1 partitions the search space
    full = (1 << n) - 1
    rest = full ^ 0b11
    return [0b10 | sub for sub in _submasks(rest)] + [0b10]


def _run_part(n: int, block: Optional[int], firsts: list[int]) -> list[tuple]:
    gen = _Generator(n, block)
    full = gen.full
    S = full ^ 1
    out = []
    for B in firsts:
        if not gen._atomic(0, B, S):
            continue
        rest = gen.hang(0, S ^ B)
        for t in gen.branch(0, B):
            for r in rest:
                tree = t + r
                if _is_min_rotation(tree, n, full):
                    out.append(_to_pattern(tree, n).components)
    return out


def _encodings(n, workers, block, naive, allow_large) -> list[tuple]:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n > DEFAULT_MAX_N and not allow_large:
        raise ValueError(f"n={n} exceeds the default bound {DEFAULT_MAX_N}; pass allow_large")
    if naive:
        encs = [P.components for P in naive_patterns(n)]
    elif n <= 2:
        encs = [(tuple(range(n)),)]
    else:
        firsts = _top_choices(n)
        if workers > 1:
            chunks = [firsts[i::workers] for i in range(workers)]
            with ProcessPoolExecutor(workers) as pool:
                parts = list(pool.map(_run_part, [n] * workers, [block] * workers, chunks))
            encs = [e for part in parts for e in part]
        else:
            encs = _run_part(n, block, firsts)
    if block:
        encs = [e for e in encs if block_structure(Pattern(n, e), block) is not None]
    return sorted(encs)


def iter_patterns(
    n: int,
    workers: int = 1,
    block: Optional[int] = None,
    naive: bool = False,
    allow_large: bool = False,
) -> Iterator[Pattern]:
    """All n-periodic patterns up to rotation, canonical, in sorted order.

    Patterns are built lazily from stored encodings so that per-pattern
    caches are released once a consumer moves on.

    Parameters
    ----------
    n : int
        Period.
    workers : int
        Process count; the output does not depend on it.
    block : int, optional
        Keep only patterns admitting a ``block``-block structure.  The
        search is pruned with a necessary condition and then filtered.
    naive : bool
        Use the all-subset-families reference instead (small ``n`` only).
    allow_large : bool
        Required for ``n > 9``.
    """
    for enc in _encodings(n, workers, block, naive, allow_large):
        yield Pattern(n, enc)


def enumerate_patterns(n: int, **kwargs) -> list[Pattern]:
    return list(iter_patterns(n, **kwargs))


def naive_patterns(n: int) -> list[Pattern]:
    """Reference enumeration over all families of subsets of size >= 2."""
    if n == 1:
        return [validate(1, [[0]])]
    subsets = [c for k in range(2, n + 1) for c in combinations(range(n), k)]
    seen = set()
    # m components need total size n + m - 1
    for m in range(1, n):
        for fam in combinations(subsets, m):
            if sum(map(len, fam)) != n + m - 1:
                continue
            try:
                P = validate(n, fam)
            except PatternError:
                continue
            seen.add(canonical_form(P).components)
    return [Pattern(n, c) for c in sorted(seen)]


def count(n: int, **kwargs) -> int:
    return sum(1 for _ in iter_patterns(n, **kwargs))


def positive(n: int, **kwargs) -> list[Pattern]:
    return [P for P in enumerate_patterns(n, **kwargs) if not is_zero_entropy(P)]


def reducible_patterns(n: int, workers: int = 1, allow_large: bool = False) -> list[Pattern]:
    """Patterns with some block structure: union of the block-constrained searches."""
    encs = set()
    for p in proper_divisors(n):
        encs.update(_encodings(n, workers, p, False, allow_large))
    return [Pattern(n, e) for e in sorted(encs)]


def families(n: int, workers: int = 1) -> dict[str, list[Pattern]]:
    """The ``all``, ``positive``, ``irreducible`` and ``reducible_positive`` families."""
    every = enumerate_patterns(n, workers=workers)
    pos = [P for P in every if not is_zero_entropy(P)]
    irr = [P for P in pos if not is_reducible(P)]
    red = [P for P in pos if is_reducible(P)]
    return {"all": every, "positive": pos, "irreducible": irr, "reducible_positive": red}
