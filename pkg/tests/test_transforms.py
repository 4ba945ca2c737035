import math

import pytest
from hypothesis import given, settings

from treepatterns import canonical_form, entropy, is_zero_entropy, validate
from treepatterns.branching import build_flower
from treepatterns.enumerate import iter_patterns
from treepatterns.structure import block_shadow, block_structure, is_reducible
from treepatterns.transforms import open_at, openings, p_extension, q_pattern, time_reverse

from conftest import ZERO8, patterns


def test_mixed7_openings(mixed7):
    ops = openings(mixed7)
    assert [o.point for o in ops] == [1, 5, 5, 5]
    by_pair = {o.joined: o.pattern for o in ops}
    assert by_pair[((0, 5), (2, 5, 6))] == validate(7, [[0, 2, 5, 6], [1, 3, 5], [1, 4]])


def test_q6_single_opening():
    ops = openings(q_pattern(6))
    assert len(ops) == 1
    assert ops[0].pattern == validate(6, [range(6)])


def test_open_at_requires_adjacency(mixed7):
    i = mixed7.components.index((1, 4))
    j = mixed7.components.index((0, 5))
    with pytest.raises(ValueError):
        open_at(mixed7, 5, i, j)


def test_q_pattern():
    assert q_pattern(3).components == ((0, 1), (0, 2))
    assert q_pattern(6) == validate(6, [[5, 0], [0, 1, 2, 3, 4]])
    with pytest.raises(ValueError):
        q_pattern(2)


@pytest.mark.parametrize("n", range(3, 13))
def test_q_irreducible(n):
    assert not is_reducible(q_pattern(n))


def test_extension_of_q3():
    E = p_extension(q_pattern(3), 2)
    assert E == validate(6, [[0, 4], [0, 2], [1, 3, 5], [0, 1]])
    assert entropy(E) == pytest.approx(0.24061, abs=1e-5)
    assert block_structure(E, 2) is not None
    assert block_shadow(E, 2) == validate(2, [[0, 1]])


@pytest.mark.parametrize("base", ["q3", "q4", "q5", "zero8"])
@pytest.mark.parametrize("p", [2, 3])
def test_extension_divides_entropy(base, p):
    R = validate(8, ZERO8) if base == "zero8" else q_pattern(int(base[1]))
    E = p_extension(R, p)
    assert E.period == p * R.period
    assert entropy(E) == pytest.approx(entropy(R) / p, abs=1e-9)
    assert block_shadow(E, p).is_trivial


def test_extension_of_trivial_has_zero_entropy():
    assert entropy(p_extension(validate(4, [range(4)]), 3)) == 0.0


def test_extension_argument_checks():
    with pytest.raises(ValueError):
        p_extension(q_pattern(3), 1)
    with pytest.raises(ValueError):
        p_extension(validate(1, [[0]]), 2)


def test_time_reverse_examples(zero8):
    assert time_reverse(zero8) == canonical_form(zero8)


def test_two_component_zero_entropy_self_reverse():
    seen = 0
    for n in range(2, 8):
        for P in iter_patterns(n):
            if len(P.components) == 2 and is_zero_entropy(P):
                seen += 1
                assert time_reverse(P) == P
    assert seen > 0


@pytest.mark.parametrize("n", range(2, 13))
def test_two_petal_flowers_self_reverse(n):
    # the two-component zero-entropy patterns of period n are two-petal flowers
    for seq in _two_petal_sequences(n):
        F = build_flower(seq)
        if len(F.components) == 2:
            assert time_reverse(F) == canonical_form(F)


def _two_petal_sequences(n):
    out = []
    for p in range(2, n + 1):
        if n % p == 0:
            rest = n // p
            out.append([(p, 1)] if rest == 1 else [(p, 1), (rest, 2)])
    return out


@settings(max_examples=100, deadline=None)
@given(patterns())
def test_reverse_is_involution(P):
    C = canonical_form(P)
    assert time_reverse(time_reverse(P)) == C
    assert is_zero_entropy(time_reverse(P)) == is_zero_entropy(P)


@settings(max_examples=100, deadline=None)
@given(patterns(max_n=9))
def test_openings_never_raise_entropy(P):
    ops = openings(P)
    assert len(ops) == sum(math.comb(P.valence(x), 2) for x in P.inner_points)
    h = entropy(P)
    for o in ops:
        assert entropy(o.pattern) <= h + 1e-7
        assert len(o.pattern.components) == len(P.components) - 1
