"""Exhaustive verification harnesses over enumerated families and fixtures.

Every harness returns a :class:`Report` and raises
:class:`~treepatterns.errors.VerificationFailure` carrying the first
counterexample when a checked claim fails.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .branching import (
    branching_sequence,
    build_flower,
    flower_of,
    fully_reduce,
    is_bidirectional,
    is_minimal,
)
from .covering import (
    basic_paths,
    entropy,
    is_zero_entropy,
    split_time,
    transition_matrix,
    walk_count,
    walk_counts,
)
from .enumerate import iter_patterns, reducible_patterns
from .errors import VerificationFailure
from .numerics import (
    lambda_n,
    proper_divisors,
    reducible_floor,
    smallest_prime_factor,
    spectral_radius,
)
from .pattern import Pattern, canonical_form
from .structure import (
    block_shadow,
    combinatorial_collapse,
    is_reducible,
    is_triple_chain,
    maximal_trivial_structure,
    pi_reducible,
    scrambled_components,
    subordinated,
    zero_entropy_structural,
)
from .transforms import open_at, openings, p_extension, q_pattern, time_reverse

ENTROPY_TOL = 1e-10


@dataclass
class Report:
    """Machine-readable outcome of one harness run.

    ``gap`` is ``min_entropy - reference`` with its sign; ``margin`` is how
    far the runner-up sits above the minimum.  ``elapsed_ms`` is wall clock
    and the only field that varies between runs.
    """

    family: str
    n: int
    count: int
    min_entropy: Optional[float] = None
    argmin: list[Pattern] = field(default_factory=list)
    reference: Optional[float] = None
    gap: Optional[float] = None
    unique: Optional[bool] = None
    tol: Optional[float] = None
    elapsed_ms: float = 0.0
    margin: Optional[float] = None
    precision_warning: bool = False
    details: dict = field(default_factory=dict)

    def to_dict(self, timing: bool = True) -> dict:
        d = {
            "family": self.family,
            "n": self.n,
            "count": self.count,
            "min_entropy": self.min_entropy,
            "argmin": [P.to_dict() for P in self.argmin],
            "reference": self.reference,
            "gap": self.gap,
            "unique": self.unique,
            "tol": self.tol,
            "margin": self.margin,
            "precision_warning": self.precision_warning,
            "details": self.details,
        }
        if timing:
            d["elapsed_ms"] = self.elapsed_ms
        return d


def _entropy_of(P: Pattern) -> float:
    return entropy(P, ENTROPY_TOL)


def _entropies(patterns: list[Pattern], workers: int) -> list[float]:
    if workers > 1 and len(patterns) > 1000:
        with ProcessPoolExecutor(workers) as pool:
            return list(pool.map(_entropy_of, patterns, chunksize=256))
    return [_entropy_of(P) for P in patterns]


def _minimum_report(family, n, patterns, values, reference, tol, t0) -> Report:
    """Min/argmin bookkeeping shared by the minimum-entropy harnesses."""
    if not patterns:
        raise VerificationFailure(f"{family} at n={n} is empty")
    low = min(values)
    argmin = [P for P, v in zip(patterns, values) if v - low <= tol]
    others = [v for v in values if v - low > tol]
    margin = min(others) - low if others else None
    crowded = [v for v in values if abs(v - reference) < 10 * tol]
    return Report(
        family=family,
        n=n,
        count=len(patterns),
        min_entropy=low,
        argmin=argmin,
        reference=reference,
        gap=low - reference,
        unique=len(argmin) == 1,
        tol=tol,
        elapsed_ms=(time.perf_counter() - t0) * 1e3,
        margin=margin,
        precision_warning=len(crowded) > len(argmin),
    )


def verify_min_entropy(n: int, tol: float = 1e-6, workers: int = 1) -> Report:
    """Minimum entropy over positive-entropy (and irreducible) patterns.

    Checks that the minimum is ``log(lambda_n)`` within ``tol``, attained
    only by the canonical ``Q_n``, and that the irreducible subfamily has
    the same minimum and argmin.
    """
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    t0 = time.perf_counter()
    every = list(iter_patterns(n, workers=workers))
    pos = [P for P in every if not is_zero_entropy(P)]
    values = _entropies(pos, workers)
    ref = math.log(lambda_n(n))
    rep = _minimum_report("positive", n, pos, values, ref, tol, t0)
    target = canonical_form(q_pattern(n))
    irr = [(P, v) for P, v in zip(pos, values) if not is_reducible(P)]
    irr_min = min(v for _, v in irr)
    irr_arg = [P for P, v in irr if v - irr_min <= tol]
    rep.details = {
        "population": len(every),
        "irreducible_count": len(irr),
        "irreducible_min": irr_min,
        "irreducible_unique": len(irr_arg) == 1,
    }
    rep.elapsed_ms = (time.perf_counter() - t0) * 1e3
    if abs(rep.gap) > tol:
        raise VerificationFailure(f"min entropy {rep.min_entropy} differs from log(lambda_{n})", rep.argmin[0])
    if [P.components for P in rep.argmin] != [target.components]:
        bad = next((P for P in rep.argmin if P != target), rep.argmin[0])
        raise VerificationFailure(f"minimum at n={n} not attained uniquely by Q_{n}", bad)
    if abs(irr_min - rep.min_entropy) > tol or [P.components for P in irr_arg] != [target.components]:
        raise VerificationFailure(f"irreducible minimum at n={n} differs", irr_arg[0])
    return rep


def verify_reducible_min(n: int, tol: float = 1e-6, workers: int = 1) -> Report:
    """Minimum positive entropy over reducible patterns against ``reducible_floor``."""
    if n < 6 or smallest_prime_factor(n) == n:
        raise ValueError(f"n must be composite and >= 6, got {n}")
    t0 = time.perf_counter()
    red = [P for P in reducible_patterns(n, workers=workers) if not is_zero_entropy(P)]
    values = _entropies(red, workers)
    ref = reducible_floor(n)
    rep = _minimum_report("reducible_positive", n, red, values, ref, tol, t0)
    p = smallest_prime_factor(n)
    ext = canonical_form(p_extension(q_pattern(n // p), p))
    rep.details = {
        "block_count": p,
        "extension": ext.to_dict(),
        "extension_attains": any(P == ext for P in rep.argmin),
    }
    rep.elapsed_ms = (time.perf_counter() - t0) * 1e3
    if abs(rep.gap) > tol:
        raise VerificationFailure(f"reducible minimum {rep.min_entropy} differs from the floor {ref}", rep.argmin[0])
    if not rep.details["extension_attains"]:
        raise VerificationFailure(f"p-extension of Q_{n // p} misses the minimum", ext)
    return rep


def verify_pi_reducibility_theorem(n: int, workers: int = 1) -> Report:
    """Positive entropy, >= 2 inner points, >= 3 openings, all openings of
    zero entropy: such a pattern must have a never-splitting basic path.

    ``count`` is the size of the hypothesis population, possibly 0.
    """
    t0 = time.perf_counter()
    population = 0
    for P in iter_patterns(n, workers=workers):
        if len(P.inner_points) < 2:
            continue
        ops = openings(P)
        if len(ops) < 3 or is_zero_entropy(P):
            continue
        if not all(is_zero_entropy(o.pattern) for o in ops):
            continue
        population += 1
        if pi_reducible(P) is None:
            raise VerificationFailure("hypotheses hold but no basic path is never-splitting", P)
    return Report("pi_reducibility", n, population, elapsed_ms=(time.perf_counter() - t0) * 1e3)


# -- splitting ------------------------------------------------------------


def two_petal_sequences(max_period: int) -> list[tuple[tuple[int, int], ...]]:
    """Minimal branching sequences alternating deltas 1, 2, 1, ... of length >= 2."""
    out = []

    def grow(seq, prod):
        if len(seq) >= 2:
            out.append(tuple(seq))
        d = 2 if seq[-1][1] == 1 else 1
        for p in range(2, max_period // prod + 1):
            grow(seq + [(p, d)], prod * p)

    for p0 in range(2, max_period // 2 + 1):
        grow([(p0, 1)], p0)
    return sorted(out)


def _in_block_of_collapse(C: Pattern, a: int, b: int) -> bool:
    if C.is_trivial:
        return True
    return (a - b) % maximal_trivial_structure(C).p == 0


def _check_two_petal(O: Pattern, tally: dict) -> None:
    n = O.period
    blocks = maximal_trivial_structure(O).p
    q = n // blocks
    C = block_shadow(O, blocks)
    for pi in basic_paths(O):
        x, y = pi
        if (x - y) % blocks == 0:
            continue
        tally["inter_block"] += 1
        t = split_time(O, pi)
        if t is None or t > 2 * n // q:
            raise VerificationFailure(f"inter-block {pi} splits in {t} > 2n/q = {2 * n // q}", O)
        if q >= 3:
            if walk_count(O, pi, n) < 4:
                raise VerificationFailure(f"inter-block {pi} covers < 4 paths in n iterates", O)
            tally["four_cover"] += 1
        if x != 0 or not _in_block_of_collapse(C, x % blocks, y % blocks):
            continue
        if 0 < y < blocks:
            tally["formula_a"] += 1
            if t != blocks - y:
                raise VerificationFailure(f"{pi} splits in {t}, expected {blocks - y}", O)
        elif 0 < y - (q - 1) * blocks < blocks:
            tally["formula_b"] += 1
            if t != blocks:
                raise VerificationFailure(f"{pi} splits in {t}, expected {blocks}", O)


def split_triple_chains(max_period: int) -> list[Pattern]:
    """Pi-irreducible triple chains with two zero-entropy openings, up to rotation.

    Every such chain reopens into a zero-entropy two-petal flower, so all of
    them arise by cutting one petal of such a flower in two.
    """
    found = {}
    for S in two_petal_sequences(max_period):
        O = build_flower(S)
        for side, C in enumerate(O.components):
            other = O.components[1 - side]
            rest = [x for x in C if x]
            for y in rest:
                free = [x for x in rest if x != y]
                for mask in range(1, 1 << len(free)):
                    far = [y] + [x for i, x in enumerate(free) if mask >> i & 1]
                    near = [0, y] + [x for i, x in enumerate(free) if not mask >> i & 1]
                    P = Pattern.of(O.period, [other, near, far])
                    if not is_zero_entropy(open_at(P, 0, *P.point_components[0])):
                        continue
                    if pi_reducible(P) is None:
                        key = canonical_form(P)
                        found.setdefault(key.components, key)
    return [found[k] for k in sorted(found)]


def _check_triple_chain(P: Pattern, tally: dict) -> float:
    n = P.period
    if min(walk_counts(P, n)) < 4:
        raise VerificationFailure("triple chain row of M**n sums below 4", P)
    excess = entropy(P, ENTROPY_TOL) - math.log(4) / n
    if excess <= 0:
        raise VerificationFailure("triple chain entropy not above log(4)/n", P)
    return excess


def run_splitting_suite(
    max_n: int = 24, triple_max_n: int = 8, built_max_n: int = 12, workers: int = 1
) -> Report:
    """Split-time formulas on two-petal flowers and four-fold covering on
    pi-irreducible triple chains whose two openings have zero entropy.

    Triple chains come from exhaustive enumeration up to ``triple_max_n``
    (none qualify there) and from cutting flower petals up to ``built_max_n``.
    """
    t0 = time.perf_counter()
    tally = dict(flowers=0, inter_block=0, formula_a=0, formula_b=0, four_cover=0)
    for S in two_petal_sequences(max_n):
        O = build_flower(S)
        if len(O.components) != 2 or not is_zero_entropy(O):
            raise VerificationFailure(f"sequence {S} did not give a zero-entropy 2-flower", O)
        tally["flowers"] += 1
        _check_two_petal(O, tally)
    excess = []
    enumerated = 0
    for n in range(4, triple_max_n + 1):
        for P in iter_patterns(n, workers=workers):
            if not is_triple_chain(P) or pi_reducible(P) is not None:
                continue
            if all(is_zero_entropy(o.pattern) for o in openings(P)):
                enumerated += 1
                excess.append(_check_triple_chain(P, tally))
    built = split_triple_chains(built_max_n)
    for P in built:
        excess.append(_check_triple_chain(P, tally))
    tally["triple_chains_enumerated"] = enumerated
    tally["triple_chains_built"] = len(built)
    tally["triple_chain_periods"] = sorted({P.period for P in built})
    tally["min_excess_over_log4_n"] = min(excess) if excess else None
    return Report(
        "splitting",
        max_n,
        tally["flowers"] + enumerated + len(built),
        elapsed_ms=(time.perf_counter() - t0) * 1e3,
        details=tally,
    )


# -- structure ------------------------------------------------------------

Check = Callable[[Pattern], Optional[str]]


def _zero_oracles(P: Pattern) -> Optional[str]:
    z = is_zero_entropy(P)
    if zero_entropy_structural(P) != z:
        return "structural recursion and SCC test disagree"
    if z != (entropy(P, 1e-9) < 1e-9):
        return "exact zero test and numeric entropy disagree"
    return None


def _twocharact(P: Pattern) -> Optional[str]:
    if P.is_trivial:
        return None
    if (pi_reducible(P) is None) != (maximal_trivial_structure(P) is None):
        return "pi-reducibility and the maximal separated trivial structure disagree"
    return None


def _row_sum_bound(P: Pattern) -> Optional[str]:
    G = transition_matrix(P)
    if not len(G):
        return None
    rows = G.row_sums()
    rho = spectral_radius(G.dense())
    if not min(rows) - 1e-9 <= rho <= max(rows) + 1e-9:
        return f"spectral radius {rho} outside row-sum bounds"
    return None


def _openings(P: Pattern) -> Optional[str]:
    ops = openings(P)
    if len(ops) != sum(math.comb(P.valence(x), 2) for x in P.inner_points):
        return "opening count mismatch"
    h = entropy(P, ENTROPY_TOL)
    reducible = is_reducible(P)
    for o in ops:
        if h < entropy(o.pattern, ENTROPY_TOL) - 1e-7:
            return f"opening at {o.point} raises entropy"
        if reducible and not is_reducible(o.pattern):
            return f"opening at {o.point} loses every block structure"
    return None


def _scrambled(P: Pattern) -> Optional[str]:
    return None if scrambled_components(P) else "no scrambled component"


def _subordinated(P: Pattern) -> Optional[str]:
    h = entropy(P, ENTROPY_TOL)
    for p in proper_divisors(P.period):
        for r in range(p):
            if entropy(subordinated(P, p, r), ENTROPY_TOL) > p * h + 1e-9:
                return f"subordinated pattern ({p}, {r}) exceeds p*h"
    return None


def _zero_entropy_shape(P: Pattern) -> Optional[str]:
    if P.is_trivial or not is_zero_entropy(P):
        return None
    if not is_zero_entropy(combinatorial_collapse(P)):
        return "collapse has positive entropy"
    bidi = False
    for x in P.inner_points:
        S = branching_sequence(P, x)
        F = flower_of(P, x)
        R = branching_sequence(F, x)
        if R != fully_reduce(S) or not is_minimal(R):
            return f"flower at {x} has sequence {R}, expected {fully_reduce(S)}"
        bidi = bidi or is_bidirectional(P, x)
    if not bidi:
        return "no bidirectional inner point"
    if len(P.components) == 2 and time_reverse(P) != canonical_form(P):
        return "two-component zero-entropy pattern differs from its time reverse"
    return None


def _irreducible_positive(P: Pattern) -> Optional[str]:
    if not P.is_trivial and not is_reducible(P) and is_zero_entropy(P):
        return "irreducible pattern with zero entropy"
    return None


STRUCTURE_CHECKS: dict[str, Check] = {
    "zero_entropy_oracles": _zero_oracles,
    "pi_reducibility_equivalence": _twocharact,
    "row_sum_bound": _row_sum_bound,
    "openings": _openings,
    "scrambled_components": _scrambled,
    "subordinated_entropy": _subordinated,
    "zero_entropy_shape": _zero_entropy_shape,
    "irreducible_positive": _irreducible_positive,
}


def check_patterns(patterns: Iterable[Pattern], checks: dict[str, Check]) -> dict[str, int]:
    """Run every check on every pattern; raise on the first failure."""
    tally = dict.fromkeys(checks, 0)
    for P in patterns:
        for name, check in checks.items():
            msg = check(P)
            if msg is not None:
                raise VerificationFailure(f"{name}: {msg}", P)
            tally[name] += 1
    return tally


def extension_fixtures() -> list[tuple[Pattern, int, Pattern]]:
    zero8 = Pattern.of(8, [(0, 2, 6), (0, 1, 3, 4, 5, 7)])
    return [(R, p, p_extension(R, p)) for R in (q_pattern(3), q_pattern(4), q_pattern(5), zero8) for p in (2, 3)]


def run_structure_suite(max_n: int = 7, workers: int = 1, checks: Optional[dict[str, Check]] = None) -> Report:
    """Cross-module invariants over every pattern of period ``<= max_n``
    plus the p-extension fixtures."""
    t0 = time.perf_counter()
    checks = STRUCTURE_CHECKS if checks is None else checks
    per_n = {}
    total = 0
    for n in range(1, max_n + 1):
        tally = check_patterns(iter_patterns(n, workers=workers), checks)
        per_n[n] = tally
        total += max(tally.values(), default=0)
    for R, p, E in extension_fixtures():
        if abs(entropy(E, ENTROPY_TOL) - entropy(R, ENTROPY_TOL) / p) > 1e-9:
            raise VerificationFailure(f"extension by {p} does not divide entropy by {p}", E)
        if not block_shadow(E, p).is_trivial:
            raise VerificationFailure("extension shadow is not trivial", E)
    q_irreducible = all(not is_reducible(q_pattern(k)) for k in range(3, 13))
    if not q_irreducible:
        raise VerificationFailure("some Q_n with n <= 12 is reducible")
    return Report(
        "structure",
        max_n,
        total,
        elapsed_ms=(time.perf_counter() - t0) * 1e3,
        details={"per_n": per_n, "extensions": len(extension_fixtures()), "q_irreducible_up_to": 12},
    )
