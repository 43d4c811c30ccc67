"""Matching equation for the reduced problem at ``v = v0`` and the constants s1, t1.

At ``v = v0`` the reduced potential has two pieces: height ``q+`` on a window of
length ``2 u0`` and depth ``-q-`` on a flank of length ``2 v0 cot(theta)``, with
Neumann ends.  Matching the explicit solutions gives ``g1(lam) = g2(lam)`` with

    g1 = sqrt(q+ - lam) tanh(2 u0 sqrt(q+ - lam))
    g2 = sqrt(q- + lam) tan(2 v0 cot(theta) sqrt(q- + lam))

All root finding is done on the pole-free form

    h(lam) = sqrt(q+ - lam) tanh(...) cos(...) - sqrt(q- + lam) sin(...)

Everything is evaluated with ``a = 1`` and rescaled (energies by ``1/a^2``).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, NoRootError, PoleError
from .geometry import RotatedFrame, StripGeometry, derive_frame, threshold

#: Number of uniform steps used to bracket the smallest root.
N_SCAN = 256
#: Default absolute root tolerance in dimensionless units.
DEFAULT_TOL = 1e-12
POLE_TOL = 1e-10

SQRT2 = np.sqrt(2.0)


@dataclass(frozen=True)
class ImplicitEqParams:
    frame: RotatedFrame
    geom: StripGeometry

    @classmethod
    def at(cls, eps: float = 0.0, theta: float = np.pi / 4, a: float = 1.0) -> ImplicitEqParams:
        geom = StripGeometry(a, eps)
        return cls(derive_frame(geom, theta), geom)

    def dimensionless(self) -> ImplicitEqParams:
        if self.geom.a == 1.0:
            return self
        geom = self.geom.dimensionless()
        return ImplicitEqParams(derive_frame(geom, self.frame.theta), geom)


@dataclass(frozen=True)
class RootResult:
    value: float
    bracket: tuple
    residual: float
    iterations: int


def _parts(p: ImplicitEqParams):
    f = p.frame
    return f.q_plus, f.q_minus, f.well_width, f.flank_width


def g1(lam, p: ImplicitEqParams):
    qp, _, w, _ = _parts(p)
    lam = np.asarray(lam, dtype=float)
    if np.any(lam > qp):
        raise DomainError(f"g1 needs lam <= q+ = {qp!r}")
    kappa = np.sqrt(qp - lam)
    return kappa * np.tanh(w * kappa)


def g2(lam, p: ImplicitEqParams):
    _, qm, _, length = _parts(p)
    lam = np.asarray(lam, dtype=float)
    if np.any(lam < -qm):
        raise DomainError(f"g2 needs lam >= -q- = {-qm!r}")
    k = np.sqrt(qm + lam)
    arg = length * k
    if np.any(np.abs(np.cos(arg)) < POLE_TOL):
        raise PoleError("tan argument within pole tolerance; use the regularised form")
    return k * np.tan(arg)


def h_regularized(lam, p: ImplicitEqParams):
    """``(g1 - g2) cos(2 v0 cot(theta) sqrt(q- + lam))``, defined on ``[-q-, q+]``."""
    qp, qm, w, length = _parts(p)
    lam = np.asarray(lam, dtype=float)
    kappa = np.sqrt(np.clip(qp - lam, 0.0, None))
    k = np.sqrt(np.clip(qm + lam, 0.0, None))
    arg = length * k
    return kappa * np.tanh(w * kappa) * np.cos(arg) - k * np.sin(arg)


def _first_sign_change(fun, grid):
    """First bracketing pair ``(lo, hi, index)`` of a sign change of ``fun`` on ``grid``."""
    vals = fun(grid)
    for i in range(len(grid) - 1):
        f0, f1 = vals[i], vals[i + 1]
        if f0 == 0.0:
            return float(grid[i]), float(grid[i]), i
        if f0 * f1 < 0:
            return float(grid[i]), float(grid[i + 1]), i
    return None


def _brent(fun, lo, hi, tol):
    if lo == hi:
        return lo, 0
    x, info = brentq(fun, lo, hi, xtol=tol, rtol=4 * np.finfo(float).eps, full_output=True)
    return float(x), info.iterations


def _smallest_root(p: ImplicitEqParams, tol: float):
    """Smallest root of the regularised equation on ``[-q-, q+]`` (dimensionless units)."""
    qp, qm, _, length = _parts(p)
    # Scan in k = sqrt(q- + lam), where the flank factor oscillates with fixed
    # period pi/length.  h > 0 at k = 0 and h < 0 at k = pi/(2 length), so
    # sixteen points per half period always catch the ground state.
    k_max = np.sqrt(qm + qp)
    n = max(N_SCAN, int(np.ceil(16 * k_max * length / np.pi)))
    grid = np.linspace(0.0, k_max, n + 1) ** 2 - qm
    grid[-1] = qp
    fun = lambda lam: float(h_regularized(lam, p))
    start = 0
    while True:
        found = _first_sign_change(lambda g: h_regularized(g, p), grid[start:])
        if found is None:
            raise NoRootError("regularised matching equation has no sign change on [-q-, q+]")
        b0, b1, i = found
        root, its = _brent(fun, b0, b1, tol)
        if abs(np.cos(length * np.sqrt(max(qm + root, 0.0)))) > POLE_TOL:
            return root, (b0, b1), its
        # spurious root at a zero of the cosine
        start += i + 1


def lambda_v0(p: ImplicitEqParams, tol: float = DEFAULT_TOL) -> RootResult:
    """Lowest eigenvalue of the reduced problem at ``v = v0``.

    Raises :class:`NoRootError` (with the eigenvalue in ``.value``) when it is
    not positive; the search itself runs over ``[-q-, q+]`` so that the first
    root is always the ground state.
    """
    if tol <= 0:
        raise DomainError("tol must be positive")
    a = p.geom.a
    q = p.dimensionless()
    root, bracket, its = _smallest_root(q, tol)
    scale = a ** -2
    resid = abs(float(h_regularized(root, q)))
    if root <= 0:
        raise NoRootError("lambda(v0) is not positive", value=root * scale)
    return RootResult(root * scale, (bracket[0] * scale, bracket[1] * scale), resid, its)


def lambda_v0_signed(eps: float, theta: float, a: float = 1.0, tol: float = DEFAULT_TOL) -> float:
    """``lambda(v0)`` allowing non-positive values (used by angle scans)."""
    try:
        return lambda_v0(ImplicitEqParams.at(eps, theta, a), tol).value
    except NoRootError as exc:
        if exc.value is None:
            raise
        return exc.value


# --- dimensionless closed forms at theta = pi/4 ---------------------------------

def root_hardy_residual(s):
    """LHS - RHS of the s1 equation (the matching equation at eps = 0, theta = pi/4)."""
    s = np.asarray(s, dtype=float)
    left = np.sqrt(1 - s) * np.tanh(np.pi * np.sqrt(1 - s) / (2 * SQRT2))
    arg = np.pi * np.sqrt(0.5 + s) / (2 * SQRT2)
    return left - np.sqrt(0.5 + s) * np.tan(arg)


def root_eps_residual(t):
    """LHS - RHS of the t1 equation, obtained from the matching equation at lam = 0.

    The tangent argument is ``pi (1 + t) / 4``.
    """
    t = np.asarray(t, dtype=float)
    return np.tanh(np.pi * (1 - t) / (2 * SQRT2)) - np.sqrt(0.5) * np.tan(np.pi * (1 + t) / 4)


def root_eps_residual_printed(t):
    """Variant with tangent argument ``pi (1 + t) / (2 sqrt 2)``.

    Kept only to document that it does not follow from the matching equation:
    it is already negative at ``t = 0`` and has no root near 0.061.
    """
    t = np.asarray(t, dtype=float)
    return np.tanh(np.pi * (1 - t) / (2 * SQRT2)) - np.sqrt(0.5) * np.tan(np.pi * (1 + t) / (2 * SQRT2))


def fraction_ratio() -> float:
    """``g1(0, 0, pi/4) / g2(0, 0, pi/4)`` evaluated through :func:`g1`, :func:`g2`."""
    p = ImplicitEqParams.at(0.0, np.pi / 4)
    return float(g1(0.0, p) / g2(0.0, p))


def fraction_closed_form() -> float:
    return float(SQRT2 * np.tanh(SQRT2 * np.pi / 4))


def solve_s1(tol: float = DEFAULT_TOL) -> RootResult:
    """Smallest root in ``(0, 1)`` of the dimensionless Hardy-constant equation."""
    grid = np.linspace(0.0, 1.0, N_SCAN + 1)
    found = _first_sign_change(root_hardy_residual, grid)
    if found is None:
        raise NoRootError("no sign change for s1 on (0, 1)")
    lo, hi, _ = found
    s, its = _brent(lambda x: float(root_hardy_residual(x)), lo, hi, tol)
    return RootResult(s, (lo, hi), abs(float(root_hardy_residual(s))), its)


def h_at_zero(eps, theta: float, a: float = 1.0):
    """``h(0)`` as a function of ``eps`` (vectorised), for fixed ``theta``."""
    eps = np.asarray(eps, dtype=float) / a
    c, s = np.cos(theta), np.sin(theta)
    thr = threshold(1.0)
    qp, qm = thr * (4 * c * c - 1), thr * s * s
    u0, v0 = s - eps * c, c + eps * s
    kappa, k = np.sqrt(qp), np.sqrt(qm)
    arg = 2 * v0 / np.tan(theta) * k
    return kappa * np.tanh(2 * u0 * kappa) * np.cos(arg) - k * np.sin(arg)


def critical_eps_bound(theta: float, a: float = 1.0, tol: float = DEFAULT_TOL) -> RootResult:
    """Smallest ``eps >= 0`` at which ``lambda(v0)`` reaches zero, for angle ``theta``.

    Found as the first sign change of ``eps -> h(0; eps)`` on ``[0, a tan(theta))``.
    Returns ``value = 0`` when ``lambda(v0) <= 0`` already at ``eps = 0``.
    """
    if not 0.0 < theta < np.pi / 3:
        raise DomainError(f"theta must lie in (0, pi/3), got {theta!r}")
    upper = np.tan(theta) * (1 - 1e-12)
    if h_at_zero(0.0, theta) <= 0:
        return RootResult(0.0, (0.0, 0.0), abs(float(h_at_zero(0.0, theta))), 0)
    grid = np.linspace(0.0, upper, N_SCAN + 1)
    found = _first_sign_change(lambda e: h_at_zero(e, theta), grid)
    if found is None:
        raise NoRootError(f"no sign change of h(0; eps) for theta={theta!r}")
    lo, hi, _ = found
    t, its = _brent(lambda e: float(h_at_zero(e, theta)), lo, hi, tol)
    return RootResult(t * a, (lo * a, hi * a), abs(float(h_at_zero(t, theta))), its)


def solve_t1(tol: float = DEFAULT_TOL) -> RootResult:
    """Smallest positive ``t`` with ``lambda(v0) = 0`` at ``eps = t a``, ``theta = pi/4``."""
    return critical_eps_bound(np.pi / 4, 1.0, tol)
