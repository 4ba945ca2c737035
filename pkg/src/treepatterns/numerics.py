"""Scalar numerics: the roots lambda_n, spectral radii, reducible floors."""

from __future__ import annotations

import math

import numpy as np

from ._graph import has_internal_arrow, is_cycle_component, strongly_connected_components
from .errors import ConvergenceError

DEFAULT_ROOT_TOL = 1e-10
DEFAULT_RADIUS_TOL = 1e-9


def lambda_n(n: int, tol: float = DEFAULT_ROOT_TOL) -> float:
    """Unique root in (1, +inf) of ``x**n - 2*x - 1``.

    Bisection on (1, 2] for 40 halvings, then Newton from the midpoint of the
    final bracket until the residual is below ``tol``.
    """
    if n < 3:
        raise ValueError(f"lambda_n needs n >= 3, got {n}")

    def g(x):
        return x**n - 2.0 * x - 1.0

    lo, hi = 1.0, 2.0  # g(1) = -2 < 0 and g(2) = 2**n - 5 > 0
    for _ in range(40):
        mid = 0.5 * (lo + hi)
        if g(mid) > 0:
            hi = mid
        else:
            lo = mid
    x = 0.5 * (lo + hi)
    for _ in range(50):
        step = g(x) / (n * x ** (n - 1) - 2.0)
        x -= step
        if abs(g(x)) <= tol and abs(step) < 1e-15 * x:
            break
    if abs(g(x)) > tol:
        raise ConvergenceError(f"lambda_{n}: residual {g(x):.3g} above {tol}")
    return x


def smallest_prime_factor(n: int) -> int:
    if n < 2:
        raise ValueError(n)
    d = 2
    while d * d <= n:
        if n % d == 0:
            return d
        d += 1
    return n


def proper_divisors(n: int) -> list[int]:
    """Divisors ``p`` with ``1 < p < n``, ascending."""
    return [p for p in range(2, n) if n % p == 0]


def reducible_floor(n: int) -> float:
    """``log(lambda_{n/p}) / p`` with ``p`` the least prime factor of ``n``."""
    if n < 6:
        raise ValueError(f"reducible floor needs composite n >= 6, got {n}")
    p = smallest_prime_factor(n)
    if p == n:
        raise ValueError(f"{n} is prime")
    return math.log(lambda_n(n // p)) / p


def _perron_root(A: np.ndarray, tol: float, max_iter: int) -> float:
    """Perron root of an irreducible nonnegative matrix.

    Power iteration on ``A + I`` (primitive, same Perron vector) with the
    Collatz-Wielandt bracket ``min(Bx/x) <= rho(B) <= max(Bx/x)`` as the
    stopping rule.  The start vector is the modulus of LAPACK's dominant
    eigenvector, so the loop usually certifies on its first pass.
    """
    k = A.shape[0]
    B = A + np.eye(k)
    try:
        w, V = np.linalg.eig(A)
        top = np.max(np.abs(w))
        cand = np.flatnonzero(np.abs(w) >= top - 1e-9 * max(top, 1.0))
        j = cand[np.argmax(w.real[cand])]
        x = np.abs(V[:, j].real)
    except np.linalg.LinAlgError:
        x = np.ones(k)
    x = np.maximum(x, 1e-12 * max(x.max(), 1e-300))
    x /= x.sum()
    for _ in range(max_iter):
        y = B @ x
        ratios = y / x
        lo, hi = ratios.min(), ratios.max()
        if hi - lo <= tol:
            return 0.5 * (lo + hi) - 1.0
        x = y / y.sum()
        x = np.maximum(x, 1e-300)
    raise ConvergenceError(f"power iteration did not reach tol={tol} in {max_iter} steps")


def spectral_radius_from_successors(succ, tol: float = DEFAULT_RADIUS_TOL, max_iter: int = 10**6) -> float:
    """Spectral radius of the 0-1 matrix with rows ``succ`` (adjacency lists).

    Works SCC by SCC.  Returns exactly 1.0 when every SCC carrying an arrow
    is a single cycle (and exactly 0.0 when there is none).
    """
    sccs = strongly_connected_components(succ)
    best = 0.0
    for comp in sccs:
        if not has_internal_arrow(comp, succ):
            continue
        if is_cycle_component(comp, succ):
            best = max(best, 1.0)
            continue
        pos = {v: i for i, v in enumerate(comp)}
        A = np.zeros((len(comp), len(comp)))
        for v in comp:
            for w in succ[v]:
                if w in pos:
                    A[pos[v], pos[w]] = 1.0
        best = max(best, _perron_root(A, tol, max_iter))
    return best


def spectral_radius(M, tol: float = DEFAULT_RADIUS_TOL, max_iter: int = 10**6) -> float:
    """Spectral radius of a square nonnegative matrix.

    Zero/nonzero structure drives the SCC split; entries are used as given
    inside each nontrivial SCC.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("spectral_radius expects a square matrix")
    if (M < 0).any():
        raise ValueError("spectral_radius expects a nonnegative matrix")
    succ = [np.flatnonzero(row).tolist() for row in M]
    binary = np.array_equal(M, M.astype(bool))
    if binary:
        return spectral_radius_from_successors(succ, tol, max_iter)
    best = 0.0
    for comp in strongly_connected_components(succ):
        if not has_internal_arrow(comp, succ):
            continue
        best = max(best, _perron_root(M[np.ix_(comp, comp)], tol, max_iter))
    return best
