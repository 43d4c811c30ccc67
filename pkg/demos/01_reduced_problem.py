# %% [markdown]
# # The reduced one-dimensional problem
#
# Rotating the strip by an angle theta and freezing the new coordinate v leaves
# a Neumann Schrodinger operator in u with a step potential.  At v = v0 the
# potential is a barrier of height q+ between two wells of depth -q-, and its
# ground state energy lambda(v0) bounds the Hardy constant from below.

# %%
import math

import numpy as np

from dnwaveguide import StripGeometry, derive_frame, threshold
from dnwaveguide.schrodinger1d import build_reduced_potential, lambda_profile, lowest_eig_fd
from dnwaveguide.transcendental import ImplicitEqParams, fraction_closed_form, g1, g2, lambda_v0, solve_s1, solve_t1

geom = StripGeometry(a=1.0, eps=0.0)
frame = derive_frame(geom, math.pi / 4)
print(f"q+ = {frame.q_plus:.6f}, q- = {frame.q_minus:.6f}, u0 = {frame.u0:.6f}, v0 = {frame.v0:.6f}")

# %% [markdown]
# The two sides of the matching equation at lambda = 0.  Their ratio has a
# closed form, and it exceeds one, so the root lies above zero.

# %%
p = ImplicitEqParams(frame, geom)
print("g1(0) =", float(g1(0.0, p)), " g2(0) =", float(g2(0.0, p)))
print("ratio =", float(g1(0.0, p) / g2(0.0, p)), " closed form =", fraction_closed_form())

# %% [markdown]
# Root of the matching equation against an independent finite-element solve
# of the same step potential, extrapolated over three meshes.

# %%
root = lambda_v0(p)
fd = lowest_eig_fd(build_reduced_potential(frame.v0, frame, geom), 1000, levels=3)
print(f"matching root  {root.value:.15f}")
print(f"FD + Richardson {fd.value:.15f}  (difference {abs(fd.value - root.value):.1e})")
print(f"in units of the threshold: s1 = {root.value / threshold(1.0):.7f}")

# %% [markdown]
# The whole profile v -> lambda(v) is even and smallest at the ends, so the
# endpoint value is the one that matters.

# %%
prof = lambda_profile(frame, geom, n_v=21, n_mesh=400)
for v, r in prof[::4]:
    print(f"v = {v:+.4f}  lambda = {r.value:.6f}")

# %% [markdown]
# Moving the switch to eps > 0 lowers lambda(v0).  It reaches zero at eps = t1 a,
# a lower bound for the critical switch parameter.

# %%
print("s1 =", solve_s1().value, " t1 =", solve_t1().value)
