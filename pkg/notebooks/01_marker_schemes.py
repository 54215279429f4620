# %% [markdown]
# # Marker schemes
#
# A marker scheme swaps data words that sit between markers. Before compiling
# one into a sliding block code we check that no two placements can overlap.

# %%
from autshift.markers import MarkerRule, MarkerScheme, compile_scheme, verify_scheme
from autshift.dsl import parse_scheme, render_scheme
from autshift.symbolic import word_str

hedlund = MarkerScheme(4, [MarkerRule.swap("000", "111", "2332", "3223")], name="hedlund")
print(render_scheme(hedlund))
print(verify_scheme(hedlund).status)

# %% [markdown]
# Empty markers give an overlap straight away. The verifier hands back a
# short word on which two placements disagree.

# %%
bad = MarkerScheme(2, [MarkerRule.swap("0", "0", "01", "10")])
verdict = verify_scheme(bad)
print(verdict.status, word_str(verdict.witness))

# %% [markdown]
# The text format round trips.

# %%
text = render_scheme(hedlund)
assert parse_scheme(text) == hedlund
g = compile_scheme(hedlund)
print(g.name, g.alphabet.size)
