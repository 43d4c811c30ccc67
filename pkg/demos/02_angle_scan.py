# %% [markdown]
# # Choosing the rotation angle
#
# Nothing forces theta = pi/4.  Scanning the angle and refining by golden
# section gives slightly better constants.

# %%
import numpy as np

from dnwaveguide.optimize import hardy_objective, optimal_theta_eps, optimal_theta_hardy

hardy = optimal_theta_hardy()
eps = optimal_theta_eps()
print(f"Hardy constant:   theta* = {hardy.theta_star:.5f}, lambda(v0) = {hardy.objective_star:.6f} (pi/4a)^2")
print(f"eps_c lower bound: theta* = {eps.theta_star:.5f}, bound = {eps.objective_star:.6f} a")
print(f"for comparison at pi/4: {hardy_objective(np.pi / 4):.6f}")

# %% [markdown]
# The objective curve is flat near the optimum and drops to zero for small
# angles, where the flanks are too wide for the barrier to win.

# %%
curve = np.array(hardy.curve)
for theta, val in curve[::16]:
    print(f"theta = {theta:.3f}  objective = {val:.5f}")
