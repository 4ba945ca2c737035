"""Openings, the Q_n family, p-extensions and time reversal."""

from __future__ import annotations

from itertools import combinations
from typing import NamedTuple

from .errors import StructureError
from .pattern import Pattern, canonical_form, validate
from .structure import block_shadow, block_structure


class Opening(NamedTuple):
    point: int
    joined: tuple[tuple[int, ...], tuple[int, ...]]
    pattern: Pattern


def open_at(P: Pattern, x: int, i: int, j: int) -> Pattern:
    """Join components ``i`` and ``j`` (both containing ``x``), labels kept."""
    A, B = P.components[i], P.components[j]
    if x not in A or x not in B:
        raise ValueError(f"components {A} and {B} are not adjacent at {x}")
    rest = [c for k, c in enumerate(P.components) if k not in (i, j)]
    return validate(P.period, rest + [set(A) | set(B)])


def openings(P: Pattern) -> list[Opening]:
    """Every opening, ordered by inner point then by the joined components."""
    out = []
    for x in P.inner_points:
        owners = sorted(P.point_components[x], key=lambda k: P.components[k])
        for i, j in combinations(owners, 2):
            out.append(Opening(x, (P.components[i], P.components[j]), open_at(P, x, i, j)))
    return out


def q_pattern(n: int) -> Pattern:
    """Two components ``{n-1, 0}`` and ``{0, ..., n-2}``."""
    if n < 3:
        raise ValueError(f"q_pattern needs n >= 3, got {n}")
    return validate(n, [(n - 1, 0), range(n - 1)])


def p_extension(R: Pattern, p: int) -> Pattern:
    """Canonical ``p``-extension of ``R``.

    The copy of ``R`` lives on the multiples of ``p``; each other residue
    class is a single component and the hub ``{0, ..., p-1}`` ties the
    classes together.  The result is checked to carry the ``p``-block
    structure whose shadow is the trivial ``p``-pattern.
    """
    if p < 2:
        raise ValueError(f"p must be >= 2, got {p}")
    k = R.period
    if k < 2:
        raise ValueError("the base pattern needs period >= 2")
    n = p * k
    comps = [[p * a for a in c] for c in R.components]
    comps += [list(range(i, n, p)) for i in range(1, p)]
    comps.append(list(range(p)))
    P = validate(n, comps)
    if block_structure(P, p) is None or not block_shadow(P, p).is_trivial:
        raise StructureError(f"extension of {R} by {p} lacks its defining block structure")
    return P


def time_reverse(P: Pattern) -> Pattern:
    """Relabel ``i -> -i mod n``, canonicalized."""
    n = P.period
    return canonical_form(validate(n, [[(-x) % n for x in c] for c in P.components]))
