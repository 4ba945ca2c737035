"""Exhaustive search for the minimum positive entropy
=====================================================

Enumerates every pattern of small period up to rotation and tabulates the
entropy distribution, then checks where the reducible minimum sits.
"""

# %%
import time

import numpy as np

from treepatterns import canonical_form, entropy, q_pattern
from treepatterns.enumerate import count, families
from treepatterns.numerics import lambda_n, reducible_floor
from treepatterns.transforms import p_extension
from treepatterns.verify import verify_min_entropy, verify_reducible_min

for n in range(1, 8):
    print(n, count(n))

# %%
# Entropy histogram at n = 6.
fam = families(6)
h = np.array([entropy(P) for P in fam["positive"]])
print(len(fam["all"]), "patterns,", len(h), "with positive entropy")
values, counts = np.unique(h.round(6), return_counts=True)
for v, c in list(zip(values, counts))[:5]:
    print(f"{v:.6f}  x{c}")

# %%
# The smallest value is log(lambda_6), attained only by Q_6.
print(values[0], np.log(lambda_n(6)), fam["positive"][int(h.argmin())] == canonical_form(q_pattern(6)))

# %%
# The harness does the same check with a tolerance and a runner-up gap.
for n in range(3, 8):
    t0 = time.perf_counter()
    rep = verify_min_entropy(n)
    print(n, rep.count, f"{rep.min_entropy:.8f}", rep.margin, f"{time.perf_counter() - t0:.2f}s")

# %%
# Among patterns with a block structure the floor is lower: log(lambda_3)/2
# at n = 6, reached by extending Q_3 over two blocks and by many others.
rep = verify_reducible_min(6)
E = p_extension(q_pattern(3), 2)
print(rep.min_entropy, reducible_floor(6), entropy(E), len(rep.argmin))
