# %% [markdown]
# # From Z^d to Z
#
# The sublattice M_k is spanned by e_i - k e_{i+1}. A configuration periodic
# along M_k is a single line, and a Z^d automaton becomes a Z automaton
# phi_k(g) on that line.

# %%
import itertools

import numpy as np

from autshift import lattice as lt
from autshift.codes import compare_codes, identity_code, shift_code

b = lt.basis_mk(2, 3)
print(np.array(b.rows), b.ell_weights, b.determinant)

# %% [markdown]
# Every point splits as an M_k part plus a position on the line.

# %%
pts = np.array(list(itertools.product(range(-3, 4), repeat=2)))
dec = lt.decompose_many(pts, b)
assert np.array_equal(dec @ np.array(b.rows), pts)
print(dec[:5])

# %% [markdown]
# Shortest nonzero vector in M_k and the radius below which cosets stay apart.

# %%
for k in range(2, 7):
    value, wit = lt.min_norm_uk(2, k, 4)
    print(k, value, wit, lt.coset_injectivity_threshold(2, k, k).threshold)

# %% [markdown]
# phi_k sends v = e_2 to the shift and (1, k) to the identity.

# %%
print(compare_codes(lt.phi_k(lt.ZdShift(3, (0, 1)), b), shift_code(3, 1), screen=0).equal)
print(compare_codes(lt.phi_k(lt.ZdShift(3, (1, 3)), b), identity_code(3), screen=0).equal)

# %% [markdown]
# The radical reduction recovers a shift vector, or certifies that the
# image is not a shift.

# %%
print(lt.radical_reduction_check(lt.ZdShift(3, (1, -2))))
print(lt.radical_reduction_check(lt.build_cross_swap(3))["verdict"])
