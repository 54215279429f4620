# %% [markdown]
# # Acting on the boundary
#
# Points of the boundary are one sided sequences with x_0 != x_1. The proximal
# family g_k pushes the class C_m towards the base point o, and the distance
# to o decays like 2^-(m+k).

# %%
from fractions import Fraction

import numpy as np

from autshift import boundary as bd
from autshift.codes import act_omega
from autshift.markers import compile_scheme
from autshift.symbolic import BASE_POINT, enumerate_cm, omega_distance

# %%
rows = []
for m in (1, 2, 3):
    sample = enumerate_cm(m, m + 4, 2)
    for k in range(m + 1, 9):
        g = compile_scheme(bd.build_proximal_gk(k, 2))
        worst = max(omega_distance(act_omega(g, f), BASE_POINT) for f in sample)
        rows.append((m, k, float(worst), float(Fraction(1, 2 ** (m + k)))))
table = np.array(rows)
print(table)

# %% [markdown]
# Observed worst distance against the bound, on a log scale.

# %%
print(np.log2(table[:, 2]) - np.log2(table[:, 3]))

# %% [markdown]
# Minimality: for two points of the bar space the code built at depth k
# matches the first k+1 symbols of every coordinate.

# %%
import random

rng = random.Random(0)
x, y = bd.random_bar_point(rng, 3), bd.random_bar_point(rng, 3)
code = bd.minimal_code(3, x, y)
for a in range(3):
    print(a, act_omega(code, x[a]).head(4), y[a].head(4))

# %% [markdown]
# The shift acts trivially on the boundary, so the action has kernel <sigma>.
# Every other generator on the default panel moves some point.

# %%
for g in bd.default_panel(2):
    print(g.name, bd.faithfulness_witness(g))
