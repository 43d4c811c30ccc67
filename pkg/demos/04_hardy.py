# %% [markdown]
# # Hardy inequalities, where they hold and where they fail
#
# Without the switch, the strip has plain Dirichlet on top and Neumann below.
# Cutoffs of the transverse mode over longer and longer pieces make the
# shifted form arbitrarily small against any localised weight.

# %%
from dnwaveguide import HardyWeight, SolverConfig, StripGeometry, hardy_form_check
from dnwaveguide.quadrature_checks import hardy_failure_demo, lemma_hardy_quadrature_check

g = StripGeometry(1.0)
w = HardyWeight("indicator_square", 1.0)
for layout in ("non_switched", "switched"):
    demo = hardy_failure_demo(g, w, 8, layout)
    print(layout, " ".join(f"{q:.4f}" for q in demo.quotients))

# %% [markdown]
# With the switch the quotients level off.  The discrete form check confirms
# positivity of -Delta - (pi/4a)^2 - w on the truncated strip for the default
# constant, and shows negativity when the weight is made far too large.

# %%
cfg = SolverConfig(L=8.0, ladder=(8, 16, 32))
for c in (None, 5.0):
    rep = hardy_form_check(g, HardyWeight("indicator_square", c), cfg)
    print(f"c = {c}: ladder {rep.values} -> {rep.verdict}")

# %% [markdown]
# The one-dimensional ingredients can be checked on explicit functions with
# Gauss-Legendre quadrature.

# %%
strip, line = lemma_hardy_quadrature_check()
print("strip ratios:", [round(r, 4) for r in strip.ratios])
print("line ratios: ", [round(r, 4) for r in line.ratios])
