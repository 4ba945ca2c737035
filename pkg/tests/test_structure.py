import math

import pytest
from hypothesis import given, settings

from treepatterns import entropy, is_zero_entropy, q_pattern, validate
from treepatterns.covering import basic_paths, split_time
from treepatterns.enumerate import iter_patterns
from treepatterns.errors import InvalidCollapseError, StructureError
from treepatterns.structure import (
    block_shadow,
    block_structure,
    block_structures,
    classify,
    collapse_sequence,
    combinatorial_collapse,
    extremal_components,
    is_irreducible,
    is_reducible,
    is_triple_chain,
    maximal_trivial_structure,
    pi_reducible,
    scrambled_components,
    subordinated,
    zero_entropy_structural,
)
from treepatterns.transforms import p_extension

from conftest import patterns


def test_block_structure_examples(zero8):
    four = block_structure(zero8, 4)
    assert four.trivial and four.blocks == ((0, 4), (1, 5), (2, 6), (3, 7))
    two = block_structure(zero8, 2)
    assert two is not None and not two.trivial
    assert block_structure(q_pattern(6), 2) is None
    assert block_structure(q_pattern(6), 3) is None
    with pytest.raises(ValueError):
        block_structure(zero8, 3)


def test_block_helpers(zero8):
    bs = block_structure(zero8, 4)
    assert bs.block_of(6) == 2
    assert bs.in_block((0, 4)) and not bs.in_block((4, 7))
    assert [b.p for b in block_structures(zero8)] == [2, 4]


def test_reducibility_examples(zero8):
    assert not is_reducible(q_pattern(6))
    assert is_reducible(zero8)
    assert is_reducible(p_extension(q_pattern(3), 2))
    assert not is_irreducible(validate(5, [range(5)]))
    assert is_irreducible(q_pattern(5))


def test_pi_reducible_examples(zero8):
    assert pi_reducible(zero8) == (0, 4)
    assert pi_reducible(q_pattern(6)) is None
    assert pi_reducible(validate(4, [range(4)])) == (0, 1)


def test_maximal_trivial_structure_examples(zero8, flower16):
    bs = maximal_trivial_structure(zero8)
    assert bs.p == 4 and bs.separated_trivial
    assert bs.blocks == ((0, 4), (1, 5), (2, 6), (3, 7))
    assert maximal_trivial_structure(flower16).p == 8
    assert maximal_trivial_structure(q_pattern(6)) is None
    assert maximal_trivial_structure(validate(4, [range(4)])) is None


def test_collapse_examples(zero8, flower16):
    C = combinatorial_collapse(zero8)
    assert C == validate(4, [[0, 2], [0, 1, 3]])
    assert combinatorial_collapse(C) == validate(2, [[0, 1]])
    assert combinatorial_collapse(flower16) == validate(8, [[0, 1, 3, 5, 7], [0, 2, 6], [0, 4]])
    with pytest.raises(StructureError):
        combinatorial_collapse(q_pattern(6))


def test_invalid_shadow_raises():
    # shadows mod 3 are {0,1}, {0,2}, {1,2}: a cycle
    P = validate(6, [[0, 1], [0, 2], [0, 3], [0, 4], [1, 5]])
    with pytest.raises(InvalidCollapseError):
        block_shadow(P, 3)


def test_collapse_sequence_examples(zero8, flower24):
    seq = collapse_sequence(zero8)
    assert seq.periods == [2, 4, 8]
    assert seq.cardinalities == (2, 2, 2)
    seq = collapse_sequence(flower24)
    assert seq.periods == [2, 12, 24]
    assert seq.cardinalities == (2, 6, 2)
    triv = validate(5, [range(5)])
    assert collapse_sequence(triv).patterns == (triv,)
    with pytest.raises(StructureError):
        collapse_sequence(q_pattern(4))
    assert seq.to_dict()["periods"] == [2, 12, 24]


def test_structural_zero_entropy_examples(zero8, flower24):
    assert zero_entropy_structural(zero8)
    assert not zero_entropy_structural(q_pattern(4))
    assert zero_entropy_structural(flower24)


def test_classify_examples(zero8):
    c = classify(q_pattern(6))
    assert c.flower_k == 2 and c.irreducible and not c.zero_entropy and c.entropy > 0
    assert classify(validate(4, [[0, 1], [1, 2], [2, 3]])).triple_chain
    c = classify(zero8)
    assert c.zero_entropy and c.reducible and c.flower_k == 2 and c.entropy == 0.0
    assert c.to_dict()["pi_reducible"] == [0, 4]


def test_scrambled_examples(zero8):
    assert scrambled_components(zero8) == [(0, 1, 3, 4, 5, 7)]
    triv = validate(5, [range(5)])
    assert scrambled_components(triv) == [tuple(range(5))]


def test_extremal_examples(mixed7):
    assert sorted(extremal_components(mixed7)) == sorted([(2, 5, 6), (0, 5), (1, 4)])
    assert len(extremal_components(q_pattern(6))) == 2
    star = validate(7, [[0, 1, 2], [0, 3, 4], [0, 5, 6]])
    assert len(extremal_components(star)) == 3


def test_subordinated_examples(zero8):
    assert subordinated(zero8, 4, 0) == validate(2, [[0, 1]])
    assert subordinated(zero8, 2, 0) == validate(4, [[0, 1, 3], [0, 2]])
    with pytest.raises(ValueError):
        subordinated(zero8, 3, 0)
    with pytest.raises(ValueError):
        subordinated(zero8, 2, 2)


def test_in_block_and_inter_block_splitting():
    for n in (4, 6):
        for P in iter_patterns(n):
            bs = maximal_trivial_structure(P)
            if bs is None:
                continue
            for path in basic_paths(P):
                t = split_time(P, path)
                if bs.in_block(path):
                    assert t is None
                else:
                    assert t is not None and t < n


def test_separated_structure_matches_pi_reducibility_n6():
    for P in iter_patterns(6):
        if not P.is_trivial:
            assert (pi_reducible(P) is None) == (maximal_trivial_structure(P) is None)


@settings(max_examples=150, deadline=None)
@given(patterns(max_n=10))
def test_dual_zero_entropy_oracle(P):
    assert zero_entropy_structural(P) == is_zero_entropy(P)


@settings(max_examples=100, deadline=None)
@given(patterns(max_n=10))
def test_collapse_keeps_zero_entropy(P):
    if is_zero_entropy(P) and not P.is_trivial:
        C = combinatorial_collapse(P)
        assert is_zero_entropy(C)
        assert P.period % C.period == 0


@settings(max_examples=100, deadline=None)
@given(patterns(max_n=9))
def test_scrambled_always_exists(P):
    assert scrambled_components(P)


@settings(max_examples=60, deadline=None)
@given(patterns(min_n=4, max_n=9))
def test_subordinated_entropy_bound(P):
    h = entropy(P)
    for p in range(2, P.period):
        if P.period % p == 0:
            for r in range(p):
                assert entropy(subordinated(P, p, r)) <= p * h + 1e-9


def test_triple_chain_shape():
    assert is_triple_chain(validate(6, [[0, 1], [1, 2, 3], [3, 4, 5]]))
    assert not is_triple_chain(validate(6, [[0, 1], [0, 2, 3], [0, 4, 5]]))
    assert math.isclose(entropy(q_pattern(3)), math.log((1 + 5**0.5) / 2))
