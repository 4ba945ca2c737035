"""Zero-entropy patterns: collapses and branching sequences
==========================================================

Follows an 8-periodic zero-entropy pattern through its block structures,
its collapse sequence, and the branching sequence around a point, then
rebuilds a flower from a sequence.
"""

# %%
from treepatterns import classify, validate
from treepatterns.branching import branching_sequence, build_flower, fully_reduce
from treepatterns.structure import block_structures, collapse_sequence, maximal_trivial_structure

P = validate(8, [[0, 2, 6], [0, 1, 3, 4, 5, 7]])
print(classify(P))

# %%
# The residue classes mod 2 and mod 4 are both block structures; the mod 4
# one has every block inside a single component.
for bs in block_structures(P):
    print(bs.p, bs.blocks, "trivial" if bs.trivial else "")
print("maximal trivial:", maximal_trivial_structure(P).p)

# %%
# Collapsing trivial blocks to points repeatedly ends at a trivial pattern.
seq = collapse_sequence(P)
for Q in seq.patterns:
    print(Q.period, Q.components)

# %%
# The branching sequence records, level by level, how many blocks there
# were and which branch at 0 holds the block of 0.
print(branching_sequence(P, 0))

# %%
# build_flower inverts this for one-point patterns; merging repeated
# branch labels gives the same flower.
S = [(2, 1), (3, 2), (2, 2), (2, 3)]
F = build_flower(S)
print(F.period, len(F.components), fully_reduce(S), branching_sequence(F, 0))
