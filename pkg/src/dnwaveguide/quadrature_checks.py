"""Quadrature experiments with explicit test functions.

* :func:`hardy_failure_demo`: Rayleigh quotients of the shifted form against a
  Hardy weight along a sequence of widening plateau cutoffs.
* :func:`lemma_hardy_quadrature_check`: the weighted Hardy inequality in the
  strip with weight ``1 / (1 + (x - x0)^2)``, and the classical
  one-dimensional inequality ``int v^2 / x^2 <= 4 int v'^2`` for ``v(0) = 0``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import DomainError
from .geometry import StripGeometry


def _panels(breaks, width: float):
    """Panel edges covering ``[breaks[0], breaks[-1]]``, refined to ``width`` and aligned to ``breaks``."""
    edges = []
    for lo, hi in zip(breaks[:-1], breaks[1:]):
        if hi - lo <= 0:
            continue
        m = max(1, int(np.ceil((hi - lo) / width)))
        pts = np.linspace(lo, hi, m + 1)
        edges.append(pts if not edges else pts[1:])
    return np.concatenate(edges)


def gauss_rule(breaks, width: float = 0.25, order: int = 12):
    """Composite Gauss-Legendre nodes and weights on panels aligned with ``breaks``."""
    edges = _panels(sorted(set(float(b) for b in breaks)), width)
    t, w = leggauss(order)
    lo, hi = edges[:-1, None], edges[1:, None]
    nodes = 0.5 * (hi - lo) * t + 0.5 * (hi + lo)
    weights = 0.5 * (hi - lo) * w
    return nodes.ravel(), weights.ravel()


# --- failure of the Hardy inequality without the switch ------------------------

def transverse_mode(y, a: float, dirichlet_side: int):
    """Ground mode of the cross-section with Dirichlet at ``y = dirichlet_side * a``.

    Returns ``(phi, dphi/dy)``; its energy is exactly ``(pi / 4a)^2``.
    """
    k = np.pi / (4 * a)
    if dirichlet_side > 0:
        s = k * (y + a)
        return np.cos(s), -k * np.sin(s)
    s = k * (a - y)
    return np.cos(s), k * np.sin(s)


def plateau(x, R: float):
    """``1`` on ``|x| <= R``, linear down to ``0`` at ``|x| = 2R``; returns value and derivative."""
    ax = np.abs(x)
    val = np.clip(2.0 - ax / R, 0.0, 1.0)
    der = np.where((ax > R) & (ax < 2 * R), -np.sign(x) / R, 0.0)
    return val, der


@dataclass(frozen=True)
class FailureDemo:
    layout: str
    radii: tuple
    numerators: tuple
    denominators: tuple
    quotients: tuple

    @property
    def decreasing(self) -> bool:
        q = self.quotients
        return all(b < a for a, b in zip(q[:-1], q[1:]))

    @property
    def ratio(self) -> float:
        return self.quotients[-1] / self.quotients[0]


def _test_function(x, y, R, geom: StripGeometry, layout: str):
    """``psi`` and its gradient for the cutoff of radius ``R``."""
    a = geom.a
    cut, dcut = plateau(x, R)
    if layout == "non_switched":
        phi, dphi = transverse_mode(y, a, +1)
        return cut * phi, dcut * phi, cut * dphi
    # switched: transverse mode vanishing on the Dirichlet side, times a ramp
    # that vanishes where the two Dirichlet conditions meet or overlap
    gap = max(-geom.eps, 0.0)
    ramp = np.clip((np.abs(x) - gap) / a, 0.0, 1.0)
    dramp = np.where((np.abs(x) > gap) & (np.abs(x) < gap + a), np.sign(x) / a, 0.0)
    lower_phi, lower_dphi = transverse_mode(y, a, -1)
    upper_phi, upper_dphi = transverse_mode(y, a, +1)
    left = x < 0
    phi = np.where(left, lower_phi, upper_phi)
    dphi = np.where(left, lower_dphi, upper_dphi)
    X = cut * ramp
    dX = dcut * ramp + cut * dramp
    return X * phi, dX * phi, X * dphi


def hardy_failure_demo(geom: StripGeometry, weight, n_sequence: int = 8, layout: str = "non_switched",
                       order: int = 12) -> FailureDemo:
    """Quotients ``(Q[psi_k] - thr ||psi_k||^2) / int w |psi_k|^2`` for cutoffs of radius ``2^k a``.

    For the non-switched strip the quotients tend to zero, so no non-trivial
    weight can satisfy a Hardy inequality there.
    """
    if layout not in ("non_switched", "switched"):
        raise DomainError("layout must be 'non_switched' or 'switched'")
    a, thr = geom.a, geom.threshold
    gap = max(-geom.eps, 0.0)
    yq, wy = gauss_rule([-a, a], a / 4, order)
    radii, nums, dens = [], [], []
    for k in range(1, n_sequence + 1):
        R = 2.0 ** k * a
        breaks = [-2 * R, -R, -a - gap, -gap, 0.0, gap, a + gap, R, 2 * R, -a, a]
        xq, wx = gauss_rule([b for b in breaks if abs(b) <= 2 * R], a / 4, order)
        X, Y = np.meshgrid(xq, yq, indexing="ij")
        W = np.outer(wx, wy)
        psi, px, py = _test_function(X, Y, R, geom, layout)
        num = np.sum(W * (px ** 2 + py ** 2 - thr * psi ** 2))
        den = np.sum(W * weight(X, Y, geom) * psi ** 2)
        radii.append(R)
        nums.append(float(num))
        dens.append(float(den))
    quot = tuple(n / d for n, d in zip(nums, dens))
    return FailureDemo(layout, tuple(radii), tuple(nums), tuple(dens), quot)


# --- weighted Hardy inequality in the strip --------------------------------------

@dataclass(frozen=True)
class StripTestFunction:
    """``psi(x, y) = f(x) g(y)`` with derivative ``f'(x) g(y)`` (only ``d/dx`` enters)."""

    name: str
    f: object
    df: object
    g: object
    reach: float = 12.0  # |x| beyond which f is negligible

    def __call__(self, x, y):
        return self.f(x) * self.g(y)

    def dx(self, x, y):
        return self.df(x) * self.g(y)


@dataclass(frozen=True)
class LineTestFunction:
    """``v`` on the real line with ``v(0) = 0``."""

    name: str
    v: object
    dv: object
    reach: float = 12.0


def _gauss(mu, s):
    return (lambda x: np.exp(-((x - mu) / s) ** 2),
            lambda x: -2 * (x - mu) / s ** 2 * np.exp(-((x - mu) / s) ** 2))


def default_strip_functions(a: float = 1.0):
    """Ten analytic test functions on ``R x (-a, a)``."""
    out = []
    specs = [
        ("gauss*(a^2-y^2)", (0.0, 1.0), lambda y: a * a - y * y),
        ("gauss(2,1.5)*cos", (2.0, 1.5), lambda y: np.cos(np.pi * y / (4 * a))),
        ("gauss(-3,0.5)*1", (-3.0, 0.5), lambda y: np.ones_like(y)),
        ("gauss(0,4)*(1+y)", (0.0, 4.0), lambda y: 1 + y / a),
        ("gauss(0.5,0.2)*y^2", (0.5, 0.2), lambda y: (y / a) ** 2),
        ("gauss(6,2)*sin", (6.0, 2.0), lambda y: np.sin(np.pi * y / (2 * a))),
    ]
    for name, (mu, s), g in specs:
        f, df = _gauss(mu, s)
        out.append(StripTestFunction(name, f, df, g, reach=abs(mu) + 7 * s))
    out.append(StripTestFunction(
        "x*gauss(0,2)*(a-y)",
        lambda x: x * np.exp(-(x / 2) ** 2),
        lambda x: (1 - x * x / 2) * np.exp(-(x / 2) ** 2),
        lambda y: a - y, reach=16.0))
    out.append(StripTestFunction(
        "sech(x)*cos(pi y/a)",
        lambda x: 1 / np.cosh(x),
        lambda x: -np.tanh(x) / np.cosh(x),
        lambda y: np.cos(np.pi * y / a), reach=40.0))
    out.append(StripTestFunction(
        "(1-x^2)gauss*exp(y)",
        lambda x: (1 - x * x) * np.exp(-x * x),
        lambda x: (-2 * x - 2 * x * (1 - x * x)) * np.exp(-x * x),
        lambda y: np.exp(y / a), reach=8.0))
    out.append(StripTestFunction(
        "sech^2(x-1)*(y^3-y)",
        lambda x: 1 / np.cosh(x - 1) ** 2,
        lambda x: -2 * np.tanh(x - 1) / np.cosh(x - 1) ** 2,
        lambda y: (y / a) ** 3 - y / a + 0.1, reach=25.0))
    return out


def default_line_functions():
    """Ten analytic functions on the real line vanishing at the origin."""
    e = np.exp
    return [
        LineTestFunction("x exp(-x^2)", lambda x: x * e(-x * x), lambda x: (1 - 2 * x * x) * e(-x * x)),
        LineTestFunction("x^2 exp(-x^2)", lambda x: x * x * e(-x * x), lambda x: (2 * x - 2 * x ** 3) * e(-x * x)),
        LineTestFunction("sin(x) exp(-x^2/4)", lambda x: np.sin(x) * e(-x * x / 4),
                         lambda x: (np.cos(x) - x / 2 * np.sin(x)) * e(-x * x / 4), reach=20.0),
        LineTestFunction("x exp(-(x-2)^2)", lambda x: x * e(-(x - 2) ** 2),
                         lambda x: (1 - 2 * x * (x - 2)) * e(-(x - 2) ** 2)),
        LineTestFunction("tanh(x) sech(x)", lambda x: np.tanh(x) / np.cosh(x),
                         lambda x: (1 / np.cosh(x) ** 3 - np.tanh(x) ** 2 / np.cosh(x)), reach=40.0),
        LineTestFunction("x^3 exp(-x^2)", lambda x: x ** 3 * e(-x * x), lambda x: (3 * x * x - 2 * x ** 4) * e(-x * x)),
        LineTestFunction("x/(1+x^2)^2", lambda x: x / (1 + x * x) ** 2,
                         lambda x: (1 - 3 * x * x) / (1 + x * x) ** 3, reach=400.0),
        LineTestFunction("(1-exp(-x^2)) exp(-x^2/8)", lambda x: (1 - e(-x * x)) * e(-x * x / 8),
                         lambda x: (2 * x * e(-x * x) - x / 4 * (1 - e(-x * x))) * e(-x * x / 8), reach=25.0),
        LineTestFunction("x exp(-|x|^3)", lambda x: x * e(-np.abs(x) ** 3),
                         lambda x: (1 - 3 * np.abs(x) ** 3) * e(-np.abs(x) ** 3)),
        LineTestFunction("sin(3x) exp(-x^2)", lambda x: np.sin(3 * x) * e(-x * x),
                         lambda x: (3 * np.cos(3 * x) - 2 * x * np.sin(3 * x)) * e(-x * x)),
    ]


def strip_hardy_sides(fn: StripTestFunction, a: float, J, width: float = 0.25, order: int = 12):
    """``(LHS, RHS)`` of the weighted Hardy inequality in the strip for interval ``J``."""
    j0, j1 = J
    if not j1 > j0:
        raise DomainError("J must be a non-empty interval")
    x0 = 0.5 * (j0 + j1)
    reach = max(fn.reach, abs(j0) + 1, abs(j1) + 1)
    xq, wx = gauss_rule([-reach, j0, x0, j1, reach], width, order)
    yq, wy = gauss_rule([-a, a], min(width, a / 2), order)
    X, Y = np.meshgrid(xq, yq, indexing="ij")
    W = np.outer(wx, wy)
    psi2 = fn(X, Y) ** 2
    lhs = np.sum(W * psi2 / (1 + (X - x0) ** 2))
    inside = (X > j0) & (X < j1)
    rhs = 16 * np.sum(W * fn.dx(X, Y) ** 2) + (2 + 64 / (j1 - j0) ** 2) * np.sum(W * psi2 * inside)
    return float(lhs), float(rhs)


def line_hardy_sides(fn: LineTestFunction, width: float = 0.25, order: int = 12):
    """``(int v^2 / x^2, 4 int v'^2)`` over the real line."""
    xq, wx = gauss_rule([-fn.reach, 0.0, fn.reach], width, order)
    lhs = np.sum(wx * (fn.v(xq) / xq) ** 2)
    rhs = 4 * np.sum(wx * fn.dv(xq) ** 2)
    return float(lhs), float(rhs)


@dataclass(frozen=True)
class QuadratureReport:
    names: tuple
    ratios: tuple
    refinement_change: float

    @property
    def max_ratio(self) -> float:
        return max(self.ratios) if self.ratios else 0.0

    @property
    def holds(self) -> bool:
        return all(r <= 1 for r in self.ratios)


def _ratio(lhs, rhs):
    if rhs == 0:
        return 0.0 if lhs == 0 else np.inf
    return lhs / rhs


def lemma_hardy_quadrature_check(functions=None, J=(-1.0, 1.0), a: float = 1.0, width: float = 0.25,
                                 order: int = 12, stability: float = 1e-4):
    """Check the strip and line Hardy inequalities on explicit test functions.

    Returns ``(strip_report, line_report)``.  Each ratio is recomputed with
    panels of half the width; a change above ``stability`` raises a warning.
    """
    strip = default_strip_functions(a) if functions is None else list(functions)
    line = default_line_functions()

    def run(items, sides):
        ratios, change = [], 0.0
        for fn in items:
            r1 = _ratio(*sides(fn, width))
            r2 = _ratio(*sides(fn, width / 2))
            change = max(change, abs(r2 - r1))
            ratios.append(r2)
        if change > stability:
            warnings.warn(f"quadrature refinement changed a ratio by {change:.2e}", RuntimeWarning)
        return QuadratureReport(tuple(f.name for f in items), tuple(ratios), change)

    strip_report = run(strip, lambda fn, w: strip_hardy_sides(fn, a, J, w, order))
    line_report = run(line, lambda fn, w: line_hardy_sides(fn, w, order))
    return strip_report, line_report
