"""Spectral tools for the Laplacian on a strip with switched Dirichlet/Neumann walls."""

from .errors import (ConvergenceError, DomainError, InconclusiveError, NoRootError, PoleError,
                     WaveguideError)
from .geometry import (BCLayout, RotatedFrame, StripGeometry, derive_frame, rotate, threshold,
                       unrotate)
from .laplacian2d import (HardyWeight, SolverConfig, assemble, critical_eps, hardy_form_check,
                          make_grid, smallest_eigenvalue, threshold_gap)
from .optimize import optimal_theta_eps, optimal_theta_hardy
from .schrodinger1d import (StepPotential1D, build_reduced_potential, hc_lowest, lambda_profile,
                            lowest_eig_fd, verify_lemma)
from .transcendental import (ImplicitEqParams, fraction_closed_form, fraction_ratio, g1, g2,
                             lambda_v0, solve_s1, solve_t1)

__version__ = "0.1.0"
