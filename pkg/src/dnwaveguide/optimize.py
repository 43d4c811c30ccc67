"""Best rotation angle for the two bounds produced by the reduction."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._parallel import pmap
from .errors import DomainError, NoRootError
from .geometry import threshold
from .transcendental import DEFAULT_TOL, critical_eps_bound, lambda_v0_signed

INV_PHI = (math.sqrt(5) - 1) / 2
THETA_MAX = np.pi / 3
N_COARSE = 128


@dataclass(frozen=True)
class ThetaScanResult:
    theta_star: float
    objective_star: float
    curve: tuple  # ((theta, objective), ...)
    history: tuple  # golden-section brackets ((lo, hi), ...)


def golden_section_max(f, lo: float, hi: float, tol: float = 1e-4):
    """Maximise a unimodal ``f`` on ``[lo, hi]``; returns ``(x, f(x), brackets)``."""
    history = [(lo, hi)]
    c = hi - INV_PHI * (hi - lo)
    d = lo + INV_PHI * (hi - lo)
    fc, fd = f(c), f(d)
    while hi - lo > tol:
        if fc > fd:
            hi, d, fd = d, c, fc
            c = hi - INV_PHI * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + INV_PHI * (hi - lo)
            fd = f(d)
        history.append((lo, hi))
    x = 0.5 * (lo + hi)
    return x, f(x), tuple(history)


def _scan(objective, tol: float, n_coarse: int, threads):
    if n_coarse < 8:
        raise DomainError("coarse grid needs at least 8 points")
    thetas = THETA_MAX * (np.arange(1, n_coarse + 1) / (n_coarse + 1))
    values = pmap(objective, thetas, threads)
    i = int(np.argmax(values))
    lo = thetas[max(i - 1, 0)]
    hi = thetas[min(i + 1, n_coarse - 1)]
    x, fx, hist = golden_section_max(objective, float(lo), float(hi), tol)
    curve = tuple(zip(thetas.tolist(), [float(v) for v in values]))
    return ThetaScanResult(float(x), float(fx), curve, hist)


def hardy_objective(theta: float, a: float = 1.0, root_tol: float = DEFAULT_TOL) -> float:
    """``lambda(v0) / (pi/4a)^2`` at ``eps = 0``; zero when the reduction gives no positive bound."""
    try:
        lam = lambda_v0_signed(0.0, theta, a, root_tol)
    except NoRootError:
        return 0.0
    return max(lam / threshold(a), 0.0)


def eps_objective(theta: float, a: float = 1.0, root_tol: float = DEFAULT_TOL) -> float:
    """Lower bound on ``eps_c / a`` reachable with angle ``theta``."""
    try:
        return critical_eps_bound(theta, a, root_tol).value / a
    except NoRootError:
        return 0.0


def optimal_theta_hardy(a: float = 1.0, tol: float = 1e-4, n_coarse: int = N_COARSE, threads=None) -> ThetaScanResult:
    """Angle maximising the Hardy constant of the reduction at ``eps = 0``."""
    return _scan(lambda t: hardy_objective(t, a), tol, n_coarse, threads)


def optimal_theta_eps(a: float = 1.0, tol: float = 1e-4, n_coarse: int = N_COARSE, threads=None) -> ThetaScanResult:
    """Angle maximising the lower bound on the critical switch parameter (result in units of ``a``)."""
    return _scan(lambda t: eps_objective(t, a), tol, n_coarse, threads)
