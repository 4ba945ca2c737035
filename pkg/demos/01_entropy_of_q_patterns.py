"""Entropy of the patterns Q_n
=============================

Builds Q_n, looks at its path transition matrix, and compares the Perron
root with the largest real root of x**n - 2x - 1.
"""

# %%
# Q_n has two components: {n-1, 0} and {0, 1, ..., n-2}.
import numpy as np

from treepatterns import entropy, q_pattern, transition_matrix
from treepatterns.numerics import lambda_n

Q4 = q_pattern(4)
print(Q4)

# %%
# Each basic path is a pair of points inside one component.  A path
# covers another when the second lies on the tree arc spanned by the image
# of the first under the shift i -> i+1.
G = transition_matrix(Q4)
print(G.paths)
print(G.dense())

# %%
# The characteristic polynomial is x**4 - 2x - 1.
print(np.round(np.poly(G.dense())).astype(int))

# %%
# Entropy is log of the spectral radius, and matches log(lambda_n).
for n in range(3, 11):
    h = entropy(q_pattern(n))
    print(f"n={n:2d}  h={h:.10f}  log(lambda_n)={np.log(lambda_n(n)):.10f}")

# %%
# lambda_n decreases towards 1, so longer orbits allow lower entropy.
ns = np.arange(3, 33)
lams = np.array([lambda_n(int(n)) for n in ns])
print(np.all(np.diff(lams) < 0), lams[-1])
