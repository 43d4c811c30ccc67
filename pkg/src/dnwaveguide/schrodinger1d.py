"""Neumann Schroedinger operators with step potentials on an interval.

Discretisation: piecewise-uniform vertex grid with a node at every jump of the
potential, linear finite elements with trapezoidal (lumped) mass.  Away from
jumps this is the usual three-point scheme with mirror ghost points at the ends.
Each node carries the integral of the potential over its dual cell, so the
scheme is second order in the mesh size even across the jumps.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh_tridiagonal

from ._parallel import pmap
from .errors import ConvergenceError, DomainError
from .extrapolation import richardson
from .geometry import RotatedFrame, StripGeometry

MIN_MESH = 16
#: Pieces shorter than this (relative to the domain length) are dropped.
LENGTH_RTOL = 1e-12


@dataclass(frozen=True)
class StepPotential1D:
    """Piecewise-constant potential; ``pieces`` is a tuple of ``(lo, hi, value)``."""

    left: float
    right: float
    pieces: tuple

    def __post_init__(self):
        if not self.right > self.left:
            raise DomainError("empty interval")
        if not self.pieces:
            raise DomainError("potential needs at least one piece")
        tol = LENGTH_RTOL * (self.right - self.left)
        edge = self.left
        for lo, hi, _ in self.pieces:
            if abs(lo - edge) > tol or hi < lo - tol:
                raise DomainError(f"pieces do not tile [{self.left}, {self.right}]: {self.pieces}")
            edge = hi
        if abs(edge - self.right) > tol:
            raise DomainError("pieces do not reach the right end of the domain")

    @property
    def length(self) -> float:
        return self.right - self.left

    def segments(self):
        """Pieces with positive length, endpoints snapped to exact tiling."""
        tol = LENGTH_RTOL * self.length
        out = []
        for lo, hi, val in self.pieces:
            if hi - lo > tol:
                lo = out[-1][1] if out else self.left
                out.append((lo, hi, float(val)))
        lo, _, val = out[-1]
        out[-1] = (lo, self.right, val)
        return out

    def __call__(self, u):
        u = np.asarray(u, dtype=float)
        out = np.full(u.shape, np.nan)
        for lo, hi, val in self.segments():
            out[(u >= lo) & (u <= hi)] = val
        return out

    def mirrored(self) -> StepPotential1D:
        pieces = tuple((-hi, -lo, val) for lo, hi, val in reversed(self.pieces))
        return StepPotential1D(-self.right, -self.left, pieces)


@dataclass(frozen=True)
class EigenResult1D:
    value: float
    method: str
    mesh: int | None
    residual: float
    error: float = 0.0
    raw: tuple = field(default=())


def constant_potential(left: float, right: float, value: float = 0.0) -> StepPotential1D:
    return StepPotential1D(left, right, ((left, right, value),))


def build_reduced_potential(v: float, frame: RotatedFrame, geom: StripGeometry | None = None) -> StepPotential1D:
    """The step potential of the reduced problem on ``[u-(v), u+(v)]``.

    ``q+`` on ``(-u0, u0)`` and ``-q-`` on the rest.  ``|v| = v0`` is accepted:
    one flank then has zero length.
    """
    if geom is not None and (geom.a != frame.a or geom.eps != frame.eps):
        raise DomainError("frame was derived for a different geometry")
    if abs(v) > frame.v0 * (1 + 1e-12):
        raise DomainError(f"|v| = {abs(v)!r} exceeds v0 = {frame.v0!r}")
    left, right = float(frame.u_minus(v)), float(frame.u_plus(v))
    u0 = frame.u0
    left = min(left, -u0)
    right = max(right, u0)
    pieces = (
        (left, -u0, -frame.q_minus),
        (-u0, u0, frame.q_plus),
        (u0, right, -frame.q_minus),
    )
    return StepPotential1D(left, right, pieces)


def hc_potential(h: float, l: float, delta: float, c: float) -> StepPotential1D:
    """``h`` times the indicator of ``(c, c + delta l)`` on ``(0, l)``."""
    if not (h >= 0 and l > 0 and 0 < delta < 1):
        raise DomainError("need h >= 0, l > 0 and 0 < delta < 1")
    w = delta * l
    if not -1e-12 * l <= c <= l - w + 1e-12 * l:
        raise DomainError(f"c={c!r} outside [0, l - delta l]")
    c = min(max(c, 0.0), l - w)
    return StepPotential1D(0.0, l, ((0.0, c, 0.0), (c, c + w, h), (c + w, l, 0.0)))


def fd_grid(pot: StepPotential1D, n: int):
    """Nodes of the piecewise-uniform grid with about ``n`` cells, one node per jump."""
    nodes = []
    for lo, hi, _ in pot.segments():
        m = max(1, int(round(n * (hi - lo) / pot.length)))
        pts = np.linspace(lo, hi, m + 1)
        nodes.append(pts if not nodes else pts[1:])
    return np.concatenate(nodes)


def fd_system(pot: StepPotential1D, n: int):
    """Symmetric tridiagonal ``(diag, offdiag)`` plus nodes, cell sizes and masses."""
    if n < MIN_MESH:
        raise DomainError(f"mesh must have at least {MIN_MESH} cells")
    x = fd_grid(pot, n)
    d = np.diff(x)
    mids = 0.5 * (x[:-1] + x[1:])
    cell_v = pot(mids)
    mass = np.zeros(x.size)
    mass[:-1] += 0.5 * d
    mass[1:] += 0.5 * d
    vint = np.zeros(x.size)
    vint[:-1] += 0.5 * d * cell_v
    vint[1:] += 0.5 * d * cell_v
    stiff = np.zeros(x.size)
    stiff[:-1] += 1.0 / d
    stiff[1:] += 1.0 / d
    s = 1.0 / np.sqrt(mass)
    diag = (stiff + vint) * s * s
    off = -(1.0 / d) * s[:-1] * s[1:]
    return diag, off, x, d, mass, cell_v


def _solve_mesh(pot: StepPotential1D, n: int):
    diag, off, x, d, mass, cell_v = fd_system(pot, n)
    try:
        w, vec = eigh_tridiagonal(diag, off, select="i", select_range=(0, 0), lapack_driver="stebz")
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"tridiagonal eigensolver failed: {exc}") from exc
    y = vec[:, 0]
    resid_vec = diag * y
    resid_vec[:-1] += off * y[1:]
    resid_vec[1:] += off * y[:-1]
    resid = float(np.linalg.norm(resid_vec - w[0] * y) / np.linalg.norm(y))
    # Rayleigh quotient in difference form: no cancellation for near-constant modes
    psi = y / np.sqrt(mass)
    energy = np.sum(np.diff(psi) ** 2 / d) + np.sum(0.5 * d * cell_v * (psi[:-1] ** 2 + psi[1:] ** 2))
    value = float(energy / np.sum(mass * psi * psi))
    return value, resid


def lowest_eig_fd(pot: StepPotential1D, n: int = 1000, levels: int = 2) -> EigenResult1D:
    """Lowest Neumann eigenvalue of ``-d^2/du^2 + V``.

    ``levels = 1`` returns the raw value on ``n`` cells.  ``levels = 2`` (default)
    extrapolates meshes ``(n, 2n)`` and reports ``|l_2n - l_n| / 3`` as error.
    ``levels = 3`` extrapolates ``(2n, 4n)`` and reports the change against the
    ``(n, 2n)`` extrapolation as error.
    """
    if levels not in (1, 2, 3):
        raise DomainError("levels must be 1, 2 or 3")
    meshes = [n * 2 ** k for k in range(levels)]
    solved = [_solve_mesh(pot, m) for m in meshes]
    raw = tuple(v for v, _ in solved)
    resid = max(r for _, r in solved)
    if levels == 1:
        return EigenResult1D(raw[0], "finite-difference", n, resid, float("nan"), raw)
    if levels == 2:
        value = richardson(raw[0], raw[1])
        return EigenResult1D(value, "finite-difference", n, resid, abs(raw[1] - raw[0]) / 3, raw)
    r1, r2 = richardson(raw[0], raw[1]), richardson(raw[1], raw[2])
    return EigenResult1D(r2, "finite-difference", n, resid, abs(r2 - r1), raw)


def lambda_profile(frame: RotatedFrame, geom: StripGeometry | None = None, n_v: int = 101,
                   n_mesh: int = 1000, threads: int | None = None):
    """``[(v, EigenResult1D), ...]`` for ``n_v`` equispaced ``v`` in ``[-v0, v0]``."""
    if n_v < 3 or n_v % 2 == 0:
        raise DomainError("n_v must be odd and at least 3")
    vs = np.linspace(-frame.v0, frame.v0, n_v)
    vs[n_v // 2] = 0.0
    results = pmap(lambda v: lowest_eig_fd(build_reduced_potential(v, frame, geom), n_mesh), vs, threads)
    return list(zip(vs.tolist(), results))


def hc_lowest(h: float, l: float, delta: float, c: float, n: int = 1000, levels: int = 3) -> EigenResult1D:
    return lowest_eig_fd(hc_potential(h, l, delta, c), n, levels)


@dataclass(frozen=True)
class LemmaReport:
    h: float
    l: float
    delta: float
    c: tuple
    eigenvalues: tuple
    errors: tuple
    baseline: float
    tolerances: tuple
    violations: tuple  # indices into ``c``

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_lemma(h: float, l: float, delta: float, n_c: int = 64, n_mesh: int = 1000,
                 threads: int | None = None, tol_factor: float = 10.0) -> LemmaReport:
    """Check ``inf spec(H_c) >= inf spec(H_0)`` for ``n_c`` offsets ``c`` in ``[0, l - delta l]``.

    The tolerance at each ``c`` is ``tol_factor`` times the larger of the two
    extrapolated discretisation errors (floored at ``1e-13 * max(1, h)``).
    """
    cs = np.linspace(0.0, l - delta * l, n_c)
    res = pmap(lambda c: hc_lowest(h, l, delta, c, n_mesh), cs, threads)
    base = res[0]
    tols, bad = [], []
    for i, r in enumerate(res):
        tol = tol_factor * max(r.error, base.error, 1e-13 * max(1.0, h))
        tols.append(tol)
        if r.value < base.value - tol:
            bad.append(i)
    return LemmaReport(h, l, delta, tuple(cs.tolist()), tuple(r.value for r in res),
                       tuple(r.error for r in res), base.value, tuple(tols), tuple(bad))
