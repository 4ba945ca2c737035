import pytest
from hypothesis import strategies as st

from treepatterns import Pattern, validate

ZERO8 = ((0, 2, 6), (0, 1, 3, 4, 5, 7))
MIXED7 = ((2, 5, 6), (0, 5), (1, 3, 5), (1, 4))
FLOWER16 = (
    (0, 1, 3, 5, 7, 9, 11, 13, 15),
    (0, 2, 6, 10, 14),
    (0, 4, 12),
    (0, 8),
)
FLOWER24 = (
    (0,) + tuple(range(1, 24, 2)),
    (0, 2, 4, 6, 8, 10, 14, 16, 18, 20, 22),
    (0, 12),
)


@pytest.fixture
def zero8() -> Pattern:
    return validate(8, ZERO8)


@pytest.fixture
def mixed7() -> Pattern:
    return validate(7, MIXED7)


@pytest.fixture
def flower16() -> Pattern:
    return validate(16, FLOWER16)


@pytest.fixture
def flower24() -> Pattern:
    return validate(24, FLOWER24)


@st.composite
def patterns(draw, min_n=2, max_n=9):
    """Random tree pattern: grow components from a random permutation of
    the points, each new component hanging at an already placed point."""
    n = draw(st.integers(min_n, max_n))
    order = draw(st.permutations(range(n)))
    placed = [order[0]]
    comps = []
    i = 1
    while i < n:
        size = draw(st.integers(1, n - i))
        anchor = draw(st.sampled_from(placed))
        new = list(order[i : i + size])
        comps.append([anchor] + new)
        placed += new
        i += size
    return validate(n, comps)


@st.composite
def branching_sequences(draw, max_product=64, max_len=6):
    p = draw(st.integers(2, max_product))
    seq = [(p, 1)]
    prod, top = p, 1
    while len(seq) < max_len and prod * 2 <= max_product and draw(st.booleans()):
        q = draw(st.integers(2, max_product // prod))
        d = draw(st.integers(1, top + 1))
        seq.append((q, d))
        prod *= q
        top = max(top, d)
    return seq


# criterion number -> (passed, description), filled in by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {text}")
