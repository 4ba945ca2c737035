"""Block structures, collapses and shape classifiers.

Because the dynamics is the time shift, a ``p``-block structure can only
use the residue classes mod ``p`` as blocks, which makes block detection a
finite check on arcs.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from itertools import combinations
from typing import Optional

from .covering import BasicPath, basic_paths, entropy, is_zero_entropy, never_splits
from .errors import InvalidCollapseError, PatternError, StructureError
from .numerics import proper_divisors
from .pattern import Pattern, validate


@dataclass(frozen=True)
class BlockStructure:
    """Residue classes mod ``p`` forming a block structure.

    ``separated_trivial`` is True/False only for the maximal trivial
    structure, where separation is equivalent to its in-block paths never
    splitting; for any other structure it is None (deciding it would need the
    canonical model).
    """

    p: int
    blocks: tuple[tuple[int, ...], ...]
    trivial: bool
    separated_trivial: Optional[bool] = None

    def block_of(self, x: int) -> int:
        return x % self.p

    def in_block(self, path: BasicPath) -> bool:
        return (path[0] - path[1]) % self.p == 0


def _residue_classes(n: int, p: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(range(i, n, p)) for i in range(p))


def _class_in_one_component(P: Pattern, block) -> bool:
    owners = P.point_components
    common = set(owners[block[0]])
    for x in block[1:]:
        common.intersection_update(owners[x])
        if not common:
            return False
    return True


def block_structure(P: Pattern, p: int) -> Optional[BlockStructure]:
    """The ``p``-block structure of ``P`` if the residue classes form one."""
    n = P.period
    if not (1 < p < n and n % p == 0):
        raise ValueError(f"p={p} must be a proper divisor of n={n}")
    blocks = _residue_classes(n, p)
    for block in blocks:
        for a, b in combinations(block, 2):
            if any((y - a) % p for y in P.arc(a, b)):
                return None
    trivial = all(_class_in_one_component(P, b) for b in blocks)
    return BlockStructure(p, blocks, trivial)


def block_structures(P: Pattern) -> list[BlockStructure]:
    return [bs for p in proper_divisors(P.period) if (bs := block_structure(P, p))]


def is_reducible(P: Pattern) -> bool:
    return any(block_structure(P, p) is not None for p in proper_divisors(P.period))


def is_irreducible(P: Pattern) -> bool:
    """Nontrivial and without any block structure."""
    return not P.is_trivial and not is_reducible(P)


def pi_reducible(P: Pattern) -> Optional[BasicPath]:
    """Smallest basic path that never splits, or None."""
    for path in basic_paths(P):
        if never_splits(P, path):
            return path
    return None


def smallest_trivial_structure(P: Pattern) -> Optional[BlockStructure]:
    """Trivial block structure with the largest blocks (smallest ``p``)."""
    n = P.period
    for p in proper_divisors(n):
        blocks = _residue_classes(n, p)
        if all(_class_in_one_component(P, b) for b in blocks):
            # a class inside one component spans no other points: always a block
            return BlockStructure(p, blocks, True)
    return None


def maximal_trivial_structure(P: Pattern) -> Optional[BlockStructure]:
    """The maximal structure of trivial blocks, if it is separated.

    Separation is tested through its in-block basic paths: they never split
    exactly when the structure is separated.  Returns None when ``P`` has no
    trivial structure or its maximal one is not separated (equivalently,
    ``P`` is not pi-reducible).
    """
    if P.is_trivial:
        return None
    bs = smallest_trivial_structure(P)
    if bs is None:
        return None
    for block in bs.blocks:
        for path in combinations(block, 2):
            if not never_splits(P, path):
                return None
    return BlockStructure(bs.p, bs.blocks, True, True)


def block_shadow(P: Pattern, p: int) -> Pattern:
    """``p``-periodic pattern whose components are the maximal shadows.

    The shadow of a component is the set of residues mod ``p`` it meets.
    Shadows of size one and shadows contained in another are dropped.
    """
    shadows = {frozenset(x % p for x in comp) for comp in P.components}
    shadows = [s for s in shadows if len(s) >= 2]
    maximal = [s for s in shadows if not any(s < t for t in shadows)]
    try:
        return validate(p, maximal)
    except PatternError as exc:
        raise InvalidCollapseError(f"shadows mod {p} of {P} do not form a pattern: {exc}") from None


def combinatorial_collapse(P: Pattern) -> Pattern:
    bs = maximal_trivial_structure(P)
    if bs is None:
        raise StructureError(f"{P} is not pi-reducible; it has no combinatorial collapse")
    return block_shadow(P, bs.p)


@dataclass(frozen=True)
class CollapseSequence:
    patterns: tuple[Pattern, ...]  # trivial base first, input last
    cardinalities: tuple[int, ...]

    @property
    def periods(self) -> list[int]:
        return [Q.period for Q in self.patterns]

    def to_dict(self) -> dict:
        return {
            "periods": self.periods,
            "cardinalities": list(self.cardinalities),
            "patterns": [Q.to_dict() for Q in self.patterns],
        }


def collapse_sequence(P: Pattern) -> CollapseSequence:
    """Iterated combinatorial collapses down to a trivial pattern."""
    if not is_zero_entropy(P):
        raise StructureError(f"{P} has positive entropy; no sequence of collapses")
    chain = [P]
    while not chain[-1].is_trivial:
        Q = chain[-1]
        if maximal_trivial_structure(Q) is None:
            raise StructureError(f"zero-entropy stage {Q} is not pi-reducible")
        chain.append(combinatorial_collapse(Q))
    chain.reverse()
    cards = [chain[0].period] + [b.period // a.period for a, b in zip(chain, chain[1:])]
    return CollapseSequence(tuple(chain), tuple(cards))


def zero_entropy_structural(P: Pattern) -> bool:
    """Zero entropy via the recursion: trivial, or pi-reducible with a
    zero-entropy (structurally) combinatorial collapse."""
    while not P.is_trivial:
        if maximal_trivial_structure(P) is None:
            return False
        try:
            P = combinatorial_collapse(P)
        except InvalidCollapseError:
            return False
    return True


# -- shapes ---------------------------------------------------------------


def flower_petals(P: Pattern) -> Optional[int]:
    """Number of petals if ``P`` has exactly one inner point."""
    inner = P.inner_points
    if len(inner) != 1:
        return None
    return P.valence(inner[0])


def is_triple_chain(P: Pattern) -> bool:
    return len(P.components) == 3 and len(P.inner_points) == 2


def extremal_components(P: Pattern) -> list[tuple[int, ...]]:
    inner = set(P.inner_points)
    return [c for c in P.components if sum(1 for x in c if x in inner) == 1]


def escapes(P: Pattern, x: int, comp_index: int) -> bool:
    """Does ``f(x)`` leave the side of the tree at ``x`` that holds the component?"""
    if P.valence(x) < 2:
        return False
    n = P.period
    step = P.arc(x, (x + 1) % n)[1]
    return step not in P.component_sets[comp_index]


def scrambled_components(P: Pattern) -> list[tuple[int, ...]]:
    return [
        comp
        for k, comp in enumerate(P.components)
        if not any(escapes(P, x, k) for x in comp)
    ]


def subordinated(P: Pattern, p: int, r: int) -> Pattern:
    """Pattern of ``f**p`` on the orbit ``{r, r+p, ...}``, relabeled ``r+kp -> k``."""
    n = P.period
    if not (1 < p < n and n % p == 0):
        raise ValueError(f"p={p} must be a proper divisor of n={n}")
    if not 0 <= r < p:
        raise ValueError(f"r={r} must lie in 0..{p - 1}")
    m = n // p
    pts = [r + k * p for k in range(m)]
    member = set(pts)
    adj = [set() for _ in range(m)]
    for i, j in combinations(range(m), 2):
        inner = P.arc(pts[i], pts[j])[1:-1]
        if not any(y in member for y in inner):
            adj[i].add(j)
            adj[j].add(i)
    # consecutiveness graph of a pointed tree is a block graph: the maximal
    # clique through an edge is the edge plus the common neighbours
    cliques = {frozenset({i, j} | (adj[i] & adj[j])) for i in range(m) for j in adj[i]}
    if m == 1:
        cliques = {frozenset({0})}
    return validate(m, cliques)


@dataclass(frozen=True)
class Classification:
    period: int
    entropy: float
    zero_entropy: bool
    trivial: bool
    reducible: bool
    irreducible: bool
    pi_reducible: Optional[BasicPath]
    flower_k: Optional[int]
    triple_chain: bool
    inner_points: tuple[int, ...]

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pi_reducible"] = list(self.pi_reducible) if self.pi_reducible else None
        d["inner_points"] = list(self.inner_points)
        return d


def classify(P: Pattern, tol: float = 1e-10) -> Classification:
    zero = is_zero_entropy(P)
    reducible = is_reducible(P)
    return Classification(
        period=P.period,
        entropy=0.0 if zero else entropy(P, tol),
        zero_entropy=zero,
        trivial=P.is_trivial,
        reducible=reducible,
        irreducible=not P.is_trivial and not reducible,
        pi_reducible=pi_reducible(P),
        flower_k=flower_petals(P),
        triple_chain=is_triple_chain(P),
        inner_points=P.inner_points,
    )
