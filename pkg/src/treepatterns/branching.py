"""Branches around a point, branching sequences and the flowers they build.

Branch data is expressed in shifted labels where the chosen point reads as
0; :func:`unshift` maps a set back to the original labels.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .covering import is_zero_entropy
from .errors import StructureError
from .pattern import Pattern, rotate, validate
from .structure import collapse_sequence

Term = tuple[int, int]
BranchingSequence = tuple[Term, ...]


def unshift(points: Iterable[int], x: int, n: int) -> tuple[int, ...]:
    return tuple(sorted((y + x) % n for y in points))


def branches(P: Pattern, x: int) -> list[tuple[int, ...]]:
    """The x-branches in shifted labels, ordered by their least positive point."""
    n = P.period
    Q = rotate(P, -x)
    if n == 1:
        return [(0,)]
    out = []
    for k in Q.point_components[0]:
        # everything reachable from component k without crossing 0
        seen = {0}
        stack = [y for y in Q.components[k] if y != 0]
        seen.update(stack)
        while stack:
            y = stack.pop()
            for j in Q.point_components[y]:
                for z in Q.components[j]:
                    if z not in seen:
                        seen.add(z)
                        stack.append(z)
        out.append(tuple(sorted(seen)))
    out.sort(key=lambda b: b[1])
    return out


def branch_index(branch_list: Sequence[Sequence[int]], y: int) -> int:
    """1-based index of the branch holding the nonzero point ``y``."""
    for i, b in enumerate(branch_list, 1):
        if y in b:
            return i
    raise ValueError(f"point {y} lies in no branch")


def flower_of(P: Pattern, x: int) -> Pattern:
    """The flower whose petals are the x-branches (original labels)."""
    n = P.period
    return validate(n, [unshift(b, x, n) for b in branches(P, x)])


def is_branching_sequence(S: Sequence[Term]) -> bool:
    if not S:
        return False
    if any(p < 2 for p, _ in S):
        return False
    if S[0][1] != 1:
        return False
    top = 1
    for _, d in S[1:]:
        if d < 1 or d > top + 1:
            return False
        top = max(top, d)
    return True


def check_sequence(S: Sequence[Term]) -> BranchingSequence:
    S = tuple((int(p), int(d)) for p, d in S)
    if not is_branching_sequence(S):
        raise ValueError(f"{list(S)} is not a branching sequence")
    return S


def is_minimal(S: Sequence[Term]) -> bool:
    return all(a[1] != b[1] for a, b in zip(S, S[1:]))


def fully_reduce(S: Sequence[Term]) -> BranchingSequence:
    """Merge runs of equal consecutive deltas, multiplying their cardinalities."""
    S = check_sequence(S)
    out: list[list[int]] = []
    for p, d in S:
        if out and out[-1][1] == d:
            out[-1][0] *= p
        else:
            out.append([p, d])
    return tuple((p, d) for p, d in out)


def branching_sequence(P: Pattern, x: int) -> BranchingSequence:
    """Branching sequence of a zero-entropy pattern around the point ``x``.

    Level ``i`` contributes the block cardinality ``p_i`` of the collapse
    sequence and the index of the x-branch holding the block of 0 at that
    level (for the trivial base, its whole point set).
    """
    if not is_zero_entropy(P):
        raise StructureError("branching sequences are defined for zero-entropy patterns only")
    Q = rotate(P, -x)
    seq = collapse_sequence(Q)
    bl = branches(Q, 0)
    terms = []
    for i, (level, p) in enumerate(zip(seq.patterns, seq.cardinalities)):
        if i == 0:
            block = range(1, level.period)
        else:
            step = seq.patterns[i - 1].period
            block = range(step, level.period, step)
        idx = {branch_index(bl, y) for y in block}
        if len(idx) != 1:
            raise StructureError(f"level-{i} block of 0 spans branches {sorted(idx)}")
        terms.append((p, idx.pop()))
    return check_sequence(terms)


def build_flower(S: Sequence[Term]) -> Pattern:
    """Flower generated from a branching sequence, inner point 0."""
    S = check_sequence(S)
    period = S[0][0]
    petals: list[set[int]] = [set(range(period))]
    for p, d in S[1:]:
        if d > len(petals):
            petals.append({0})
        where = {}
        for k, petal in enumerate(petals):
            for j in petal:
                if j:
                    where[j] = k
        for j in range(period):
            target = d - 1 if j == 0 else where[j]
            petals[target].update(j + t * period for t in range(1, p))
        period *= p
    return validate(period, petals)


def opened_sequence(R: Sequence[Term], j1: int, j2: int) -> BranchingSequence:
    """Relabel deltas after joining the petals indexed ``j1 < j2``."""
    R = check_sequence(R)
    nu = max(d for _, d in R)
    if not 1 <= j1 < j2:
        raise ValueError(f"need 1 <= j1 < j2, got {j1}, {j2}")
    if j2 > nu:
        raise IndexError(f"petal index {j2} exceeds {nu}")

    def relabel(k):
        if k < j2:
            return k
        if k == j2:
            return j1
        return k - 1

    return check_sequence([(q, relabel(k)) for q, k in R])


def is_bidirectional(P: Pattern, x: int) -> bool:
    S = branching_sequence(P, x)
    if len(S) < 2:
        raise StructureError("bidirectionality needs a nontrivial pattern")
    return S[-2][1] != S[-1][1]


def to_json_list(S: Sequence[Term]) -> list[list[int]]:
    return [[p, d] for p, d in S]
