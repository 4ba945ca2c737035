"""Periodic tree patterns encoded as discrete components over Z_n.

A pattern of period ``n`` has points ``0, ..., n-1``; the dynamics is the
time shift ``i -> i + 1 mod n``.  The pointed tree is recorded only through
its discrete components, which must form a hypertree: the bipartite
incidence graph (components vs. points) is a tree.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    CoverageError,
    CycleError,
    DisconnectedError,
    OverlapError,
    PatternError,
    PatternSyntaxError,
    SizeError,
)

Component = tuple[int, ...]


def _normalize(components: Iterable[Iterable[int]]) -> tuple[Component, ...]:
    return tuple(sorted({tuple(sorted(set(c))) for c in components}))


@dataclass(frozen=True, eq=True)
class Pattern:
    """Validated periodic pattern.

    Construct through :func:`validate` (or :meth:`Pattern.of`); the raw
    constructor trusts its input and is used internally for values that are
    valid by construction.
    """

    period: int
    components: tuple[Component, ...]

    @classmethod
    def of(cls, period: int, components: Iterable[Iterable[int]]) -> "Pattern":
        return validate(period, components)

    # -- derived data (computed lazily, cached on the instance) -----------

    @cached_property
    def point_components(self) -> tuple[tuple[int, ...], ...]:
        """For each point, the indices of the components containing it."""
        owners: list[list[int]] = [[] for _ in range(self.period)]
        for k, comp in enumerate(self.components):
            for x in comp:
                owners[x].append(k)
        return tuple(tuple(o) for o in owners)

    @cached_property
    def component_sets(self) -> tuple[frozenset, ...]:
        return tuple(frozenset(c) for c in self.components)

    @cached_property
    def inner_points(self) -> tuple[int, ...]:
        return tuple(x for x, o in enumerate(self.point_components) if len(o) >= 2)

    @property
    def is_trivial(self) -> bool:
        return len(self.components) == 1

    def valence(self, x: int) -> int:
        return len(self.point_components[x])

    def same_component(self, a: int, b: int) -> bool:
        """True when ``{a, b}`` is a basic path (or ``a == b``)."""
        if a == b:
            return True
        owners = self.point_components
        oa = owners[a]
        return any(k in oa for k in owners[b])

    @cached_property
    def _arc_parents(self) -> list[list[int] | None]:
        return [None] * self.period

    def _parents_from(self, source: int) -> list[int]:
        # BFS over points; the parent of y is the previous point on [source, y].
        cache = self._arc_parents
        parents = cache[source]
        if parents is None:
            parents = [-1] * self.period
            parents[source] = source
            owners = self.point_components
            comps = self.components
            queue = deque([source])
            seen_comp = [False] * len(comps)
            while queue:
                x = queue.popleft()
                for k in owners[x]:
                    if seen_comp[k]:
                        continue
                    seen_comp[k] = True
                    for y in comps[k]:
                        if parents[y] < 0:
                            parents[y] = x
                            queue.append(y)
            cache[source] = parents
        return parents

    def arc(self, x: int, y: int) -> list[int]:
        """Points of the pattern on ``[x, y]``, in order from ``x`` to ``y``."""
        n = self.period
        if not (0 <= x < n and 0 <= y < n):
            raise PatternError(f"points must lie in 0..{n - 1}, got {x}, {y}")
        parents = self._parents_from(y)
        out = [x]
        while x != y:
            x = parents[x]
            out.append(x)
        return out

    def __str__(self) -> str:
        body = ", ".join("{" + ",".join(map(str, c)) + "}" for c in self.components)
        return f"Pattern(n={self.period}: {body})"

    def to_dict(self) -> dict:
        return {"period": self.period, "components": [list(c) for c in self.components]}


def validate(period: int, raw_components: Iterable[Iterable[int]]) -> Pattern:
    """Check the tree invariants and return a normalized :class:`Pattern`."""
    if not isinstance(period, int) or period < 1:
        raise PatternError(f"period must be a positive integer, got {period!r}")
    n = period
    try:
        comps = _normalize(raw_components)
    except TypeError as exc:
        raise PatternError(f"components must be collections of integers: {exc}") from None
    for c in comps:
        for x in c:
            if not isinstance(x, int) or not 0 <= x < n:
                raise CoverageError(f"point {x!r} outside 0..{n - 1}")
    covered = set().union(*comps) if comps else set()
    if covered != set(range(n)):
        missing = sorted(set(range(n)) - covered)
        raise CoverageError(f"points {missing} belong to no component")
    if n == 1:
        if comps != ((0,),):
            raise PatternError("the only 1-periodic pattern is [[0]]")
        return Pattern(1, comps)
    for c in comps:
        if len(c) < 2:
            raise SizeError(f"component {list(c)} has fewer than 2 points")
    sets = [set(c) for c in comps]
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            if len(sets[i] & sets[j]) >= 2:
                raise OverlapError(
                    f"components {list(comps[i])} and {list(comps[j])} share "
                    f"{sorted(sets[i] & sets[j])}"
                )

    # incidence graph: nodes are points 0..n-1 and components n..n+m-1
    m = len(comps)
    edges = sum(len(c) for c in comps)
    owners: list[list[int]] = [[] for _ in range(n)]
    for k, c in enumerate(comps):
        for x in c:
            owners[x].append(k)
    seen_pt = [False] * n
    seen_comp = [False] * m
    parts = 0
    for start in range(n):
        if seen_pt[start]:
            continue
        parts += 1
        seen_pt[start] = True
        stack = [start]
        while stack:
            x = stack.pop()
            for k in owners[x]:
                if not seen_comp[k]:
                    seen_comp[k] = True
                    for y in comps[k]:
                        if not seen_pt[y]:
                            seen_pt[y] = True
                            stack.append(y)
    # a forest on N nodes with `parts` trees has exactly N - parts edges
    if edges > n + m - parts:
        raise CycleError("incidence graph of the components contains a cycle")
    if parts > 1:
        raise DisconnectedError(f"components split into {parts} disconnected pieces")
    return Pattern(n, comps)


def rotate(P: Pattern, k: int) -> Pattern:
    """Relabel every point ``i`` as ``i + k mod n``."""
    n = P.period
    return Pattern(n, _normalize(((x + k) % n for x in c) for c in P.components))


def canonical_form(P: Pattern) -> Pattern:
    """Lexicographically minimal rotation of the sorted component encoding."""
    n = P.period
    best = P.components
    for k in range(1, n):
        enc = _normalize(((x + k) % n for x in c) for c in P.components)
        if enc < best:
            best = enc
    return P if best is P.components else Pattern(n, best)


def is_canonical(P: Pattern) -> bool:
    return canonical_form(P).components == P.components


@dataclass(frozen=True)
class PointProfile:
    point: int
    valence: int

    @property
    def inner(self) -> bool:
        return self.valence >= 2

    @property
    def endpoint(self) -> bool:
        return self.valence == 1


def point_profile(P: Pattern) -> list[PointProfile]:
    return [PointProfile(x, len(o)) for x, o in enumerate(P.point_components)]


# -- serialization --------------------------------------------------------


def serialize(P: Pattern) -> str:
    """Compact JSON, components sorted; one line, no trailing newline."""
    return json.dumps(P.to_dict(), separators=(",", ":"))


def from_dict(obj) -> Pattern:
    if not isinstance(obj, dict) or "period" not in obj or "components" not in obj:
        raise PatternError('expected an object with "period" and "components"')
    comps = obj["components"]
    if not isinstance(comps, list) or not all(isinstance(c, list) for c in comps):
        raise PatternError('"components" must be a list of integer lists')
    return validate(obj["period"], comps)


def parse(text: str) -> Pattern:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PatternSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    return from_dict(obj)


def parse_lines(lines: Iterable[str]) -> Iterable[Pattern]:
    """Parse a JSON Lines stream; blank lines are skipped."""
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise PatternSyntaxError(exc.msg, lineno, exc.colno) from None
        yield from_dict(obj)


def dump_lines(patterns: Iterable[Pattern]) -> Iterable[str]:
    for P in patterns:
        yield serialize(P) + "\n"


def pattern(n: int, *components: Sequence[int]) -> Pattern:
    """Shorthand: ``pattern(8, [0, 2, 6], [0, 1, 3, 4, 5, 7])``."""
    return validate(n, components)
