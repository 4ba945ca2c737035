import pytest
from hypothesis import given, settings

from treepatterns import q_pattern, validate
from treepatterns.branching import (
    branches,
    branching_sequence,
    build_flower,
    check_sequence,
    flower_of,
    fully_reduce,
    is_bidirectional,
    is_branching_sequence,
    is_minimal,
    opened_sequence,
    to_json_list,
    unshift,
)
from treepatterns.covering import is_zero_entropy
from treepatterns.enumerate import iter_patterns
from treepatterns.errors import StructureError
from treepatterns.structure import flower_petals
from treepatterns.transforms import open_at, openings

from conftest import FLOWER24, FLOWER16, branching_sequences

R4 = [(2, 1), (2, 2), (2, 3), (2, 4)]


def test_branches_examples(mixed7, flower16):
    assert branches(mixed7, 5) == [(0, 1, 4), (0, 2), (0, 3, 5, 6)]
    assert [b[1] for b in branches(flower16, 0)] == [1, 2, 4, 8]
    assert branches(flower16, 0)[0] == FLOWER16[0]
    assert branches(mixed7, 4) == [tuple(range(7))]


def test_unshift(mixed7):
    assert unshift((0, 2), 5, 7) == (0, 5)


def test_flower_of_examples(mixed7, zero8):
    F = flower_of(mixed7, 5)
    assert F == validate(7, [[5, 1, 3, 4], [5, 0], [5, 2, 6]])
    assert flower_of(F, 5) == F
    assert flower_of(zero8, 0) == zero8


def test_branching_sequence_examples(flower16, zero8, flower24):
    assert branching_sequence(flower16, 0) == tuple(R4)
    assert branching_sequence(zero8, 0) == ((2, 1), (2, 2), (2, 1))
    assert branching_sequence(flower24, 0) == ((2, 1), (6, 2), (2, 3))
    with pytest.raises(StructureError):
        branching_sequence(q_pattern(4), 0)


def test_build_flower_examples(flower24, flower16):
    assert build_flower([(2, 1), (3, 2), (2, 2), (2, 3)]) == flower24
    assert flower24.components == tuple(sorted(FLOWER24))
    assert build_flower(R4) == flower16
    assert build_flower([(5, 1)]) == validate(5, [range(5)])


def test_fully_reduce_examples():
    assert fully_reduce([(2, 1), (3, 2), (2, 2), (2, 3)]) == ((2, 1), (6, 2), (2, 3))
    assert fully_reduce([(2, 1), (2, 2), (2, 2), (2, 3)]) == ((2, 1), (4, 2), (2, 3))
    assert fully_reduce(R4) == tuple(R4)


def test_opened_sequence_examples():
    assert opened_sequence(R4, 1, 3) == ((2, 1), (2, 2), (2, 1), (2, 3))
    assert opened_sequence(R4, 2, 3) == ((2, 1), (2, 2), (2, 2), (2, 3))
    joined = opened_sequence([(2, 1), (3, 2), (2, 1)], 1, 2)
    assert all(d == 1 for _, d in joined)
    assert fully_reduce(joined) == ((12, 1),)
    with pytest.raises(IndexError):
        opened_sequence(R4, 2, 5)
    with pytest.raises(ValueError):
        opened_sequence(R4, 3, 3)


def test_opened_sequence_describes_opened_flower(flower16):
    # joining petals j1 < j2 of the flower at 0
    for j1, j2 in [(1, 3), (2, 3), (1, 2), (3, 4)]:
        order = [flower16.components.index(b) for b in branches(flower16, 0)]
        O = open_at(flower16, 0, order[j1 - 1], order[j2 - 1])
        assert branching_sequence(O, 0) == fully_reduce(opened_sequence(R4, j1, j2))


def test_bidirectional_examples(zero8, flower16):
    assert is_bidirectional(zero8, 0)
    assert is_bidirectional(flower16, 0)
    with pytest.raises(StructureError):
        is_bidirectional(validate(4, [range(4)]), 0)


def test_sequence_validation():
    assert is_branching_sequence([(2, 1), (3, 2), (2, 1)])
    assert not is_branching_sequence([])
    assert not is_branching_sequence([(1, 1)])
    assert not is_branching_sequence([(2, 2)])
    assert not is_branching_sequence([(2, 1), (2, 3)])
    with pytest.raises(ValueError):
        check_sequence([(2, 1), (2, 3)])
    assert to_json_list([(2, 1), (6, 2)]) == [[2, 1], [6, 2]]


@settings(max_examples=200, deadline=None)
@given(branching_sequences())
def test_flower_round_trip(S):
    F = build_flower(S)
    R = fully_reduce(S)
    assert branching_sequence(F, 0) == R
    assert is_minimal(R)
    assert fully_reduce(R) == R
    assert F == build_flower(R)
    prod = 1
    for p, _ in S:
        prod *= p
    assert F.period == prod
    assert flower_petals(F) in (None, max(d for _, d in S))


@settings(max_examples=100, deadline=None)
@given(branching_sequences(), branching_sequences())
def test_minimal_sequences_determine_flowers(S, T):
    S, T = fully_reduce(S), fully_reduce(T)
    if build_flower(S) == build_flower(T):
        assert S == T


def test_flower_of_reduces_sequence_n6():
    seen = 0
    for P in iter_patterns(6):
        if P.is_trivial or not is_zero_entropy(P):
            continue
        seen += 1
        for x in P.inner_points:
            S = branching_sequence(P, x)
            assert branching_sequence(flower_of(P, x), x) == fully_reduce(S)
        assert any(is_bidirectional(P, x) for x in P.inner_points)
    assert seen > 0


def test_openings_and_branches_n6():
    for P in iter_patterns(6):
        for x in P.inner_points:
            F = flower_of(P, x)
            flower_openings = {o.pattern for o in openings(F)}
            for o in openings(P):
                G = flower_of(o.pattern, x)
                if o.point == x:
                    assert G in flower_openings
                else:
                    assert G == F
