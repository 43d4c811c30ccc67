"""Direct discretisation of the strip Laplacian truncated to ``(-L, L) x (-a, a)``.

The x-grid is uniform on each segment between breakpoints (``-L``, the switch
abscissae ``+-eps``, any weight edges, ``L``) with spacing close to ``hy``; the
y-grid is uniform with ``ny`` cells.  Bilinear elements with lumped mass give,
on uniform parts, the standard 5-point stencil with mirror ghost points on
Neumann edges.  Dirichlet nodes are eliminated and the generalised problem
``A psi = lam M psi`` is symmetrised to ``B = M^-1/2 A M^-1/2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import ArpackNoConvergence, eigsh

from .errors import ConvergenceError, DomainError, InconclusiveError
from .extrapolation import LadderEstimate, extrapolate_ladder
from .geometry import BCLayout, Side, StripGeometry, threshold

DEFAULT_LADDER = (32, 64, 128)
DEFAULT_L = 12.0  # in units of a


@dataclass(frozen=True)
class Grid2D:
    a: float
    L: float
    ny: int
    bc: BCLayout
    trunc_bc: str = "D"
    breaks: tuple = ()

    def __post_init__(self):
        if self.ny < 2 or self.ny % 2:
            raise DomainError("ny must be even and >= 2")
        if self.L < 8 * self.a * (1 - 1e-12):
            raise DomainError(f"truncation L={self.L!r} is below 8a")
        if self.trunc_bc not in ("D", "N"):
            raise DomainError("trunc_bc must be 'D' or 'N'")
        if abs(self.bc.eps) >= self.L:
            raise DomainError("switch abscissae must lie inside (-L, L)")

    @property
    def hy(self) -> float:
        return 2.0 * self.a / self.ny

    @property
    def hx(self) -> float:
        """Nominal x-spacing; the actual spacing varies slightly between segments."""
        return self.hy

    def breakpoints(self):
        pts = {-self.L, self.L}
        if self.bc.kind == "switched":
            pts.update((-abs(self.bc.eps), abs(self.bc.eps)))
        for b in self.breaks:
            if -self.L < b < self.L:
                pts.add(float(b))
        return sorted(pts)

    def x_nodes(self):
        b = self.breakpoints()
        parts = []
        for lo, hi in zip(b[:-1], b[1:]):
            m = max(1, int(round((hi - lo) / self.hy)))
            pts = np.linspace(lo, hi, m + 1)
            parts.append(pts if not parts else pts[1:])
        return np.concatenate(parts)

    def y_nodes(self):
        return np.linspace(-self.a, self.a, self.ny + 1)

    @property
    def nx(self) -> int:
        return self.x_nodes().size - 1

    def scaled(self, s: float) -> Grid2D:
        return Grid2D(s * self.a, s * self.L, self.ny, BCLayout(s * self.bc.eps, self.bc.kind),
                      self.trunc_bc, tuple(s * b for b in self.breaks))


def make_grid(geom: StripGeometry, ny: int, L: float | None = None, trunc_bc: str = "D",
              layout: str = "switched", breaks=()) -> Grid2D:
    L = DEFAULT_L * geom.a if L is None else L
    return Grid2D(geom.a, L, ny, BCLayout.for_geometry(geom, layout), trunc_bc, tuple(breaks))


def _stiffness_1d(x):
    d = np.diff(x)
    main = np.zeros(x.size)
    main[:-1] += 1.0 / d
    main[1:] += 1.0 / d
    K = sp.diags([main, -1.0 / d, -1.0 / d], [0, 1, -1], format="csr")
    m = np.zeros(x.size)
    m[:-1] += 0.5 * d
    m[1:] += 0.5 * d
    return K, m


@dataclass(frozen=True, eq=False)
class DiscreteOperator2D:
    matrix: sp.csr_matrix
    grid: Grid2D
    keep: np.ndarray  # mask over the full (nx+1)*(ny+1) node array, x-major
    mass: np.ndarray  # lumped mass of kept nodes
    x: np.ndarray
    y: np.ndarray

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    def node_coordinates(self):
        X, Y = np.meshgrid(self.x, self.y, indexing="ij")
        return X.ravel()[self.keep], Y.ravel()[self.keep]

    def to_grid(self, vec):
        """Nodal values ``psi = M^-1/2 vec`` on the full grid (zero at Dirichlet nodes)."""
        full = np.zeros(self.keep.size)
        full[self.keep] = np.asarray(vec) / np.sqrt(self.mass)
        return full.reshape(self.x.size, self.y.size)

    def form(self, psi_kept):
        """Discrete ``Q[psi]`` and ``||psi||^2`` for nodal values on the kept nodes."""
        vec = np.sqrt(self.mass) * psi_kept
        return float(vec @ (self.matrix @ vec)), float(vec @ vec)


def assemble(geom: StripGeometry, grid: Grid2D) -> DiscreteOperator2D:
    if geom.a != grid.a:
        raise DomainError("grid and geometry disagree on a")
    x, y = grid.x_nodes(), grid.y_nodes()
    Kx, mx = _stiffness_1d(x)
    Ky, my = _stiffness_1d(y)
    A = (sp.kron(Kx, sp.diags(my)) + sp.kron(sp.diags(mx), Ky)).tocsr()
    mass = np.kron(mx, my)
    dirichlet = np.zeros((x.size, y.size), dtype=bool)
    atol = 1e-12 * grid.a
    dirichlet[:, 0] = grid.bc.is_dirichlet(Side.BOTTOM, x, atol)
    dirichlet[:, -1] = grid.bc.is_dirichlet(Side.TOP, x, atol)
    if grid.trunc_bc == "D":
        dirichlet[0, :] = True
        dirichlet[-1, :] = True
    keep = ~dirichlet.ravel()
    A = A[keep][:, keep]
    mass = mass[keep]
    s = sp.diags(1.0 / np.sqrt(mass))
    B = (s @ A @ s).tocsr()
    B = 0.5 * (B + B.T)  # exact symmetry regardless of rounding in the products
    return DiscreteOperator2D(B.tocsr(), grid, keep, mass, x, y)


@dataclass(frozen=True, eq=False)
class EigenResult2D:
    value: float
    residual: float
    iterations: int
    grid: Grid2D | None
    vector: np.ndarray | None = field(default=None, repr=False)


def smallest_eigenvalue(op, tol: float = 1e-12, shift: float | None = None, diag_shift=None,
                        max_residual: float | None = None, maxiter: int = 20_000) -> EigenResult2D:
    """Smallest eigenvalue of ``op.matrix - diag(diag_shift)`` by shift-invert Lanczos.

    ``op`` may also be a bare sparse matrix.  The shift defaults to a value
    below the Gershgorin lower bound of ``-diag_shift`` so the eigenvalue
    nearest to it is the smallest one.
    """
    M = op.matrix if isinstance(op, DiscreteOperator2D) else sp.csr_matrix(op)
    grid = op.grid if isinstance(op, DiscreteOperator2D) else None
    n = M.shape[0]
    if diag_shift is not None:
        M = (M - sp.diags(np.asarray(diag_shift, dtype=float))).tocsr()
    if n == 1:
        return EigenResult2D(float(M[0, 0]), 0.0, 0, grid, np.ones(1))
    if n <= 64:
        w, v = np.linalg.eigh(M.toarray())
        x = v[:, 0]
        return EigenResult2D(float(w[0]), float(np.linalg.norm(M @ x - w[0] * x)), 0, grid, x)
    if shift is None:
        scale = threshold(grid.a) if grid is not None else 1.0
        low = 0.0 if diag_shift is None else -float(np.max(diag_shift, initial=0.0))
        shift = low - 0.05 * scale
    v0 = np.ones(n)  # fixed start vector: results are reproducible run to run
    try:
        w, v = eigsh(M.tocsc(), k=1, sigma=shift, which="LM", tol=tol, v0=v0, maxiter=maxiter)
    except ArpackNoConvergence as exc:
        raise ConvergenceError(f"ARPACK did not converge: {exc}") from exc
    x = v[:, 0]
    x = x / np.linalg.norm(x)
    # Rayleigh quotient polish
    Mx = M @ x
    lam = float(x @ Mx)
    resid = float(np.linalg.norm(Mx - lam * x))
    if max_residual is not None and resid > max_residual:
        raise ConvergenceError(f"residual {resid:.3e} exceeds {max_residual:.3e}")
    return EigenResult2D(lam, resid, -1, grid, x)


# --- threshold analysis ---------------------------------------------------------

@dataclass(frozen=True)
class SolverConfig:
    L: float = DEFAULT_L  # in units of a
    ladder: tuple = DEFAULT_LADDER
    tol: float = 1e-12
    error_factor: float = 3.0

    def __post_init__(self):
        if len(self.ladder) < 3:
            raise DomainError("mesh ladder needs at least three rungs")
        if any(b != 2 * a for a, b in zip(self.ladder[:-1], self.ladder[1:])):
            raise DomainError("mesh ladder must double at every rung")


def ladder_values(geom: StripGeometry, cfg: SolverConfig, trunc_bc: str, layout: str = "switched",
                  weight=None, breaks=()):
    values = []
    for ny in cfg.ladder:
        grid = make_grid(geom, ny, cfg.L * geom.a, trunc_bc, layout, breaks)
        op = assemble(geom, grid)
        diag = None if weight is None else weight.on_operator(op, geom)
        values.append(smallest_eigenvalue(op, cfg.tol, diag_shift=diag).value)
    return values


@lru_cache(maxsize=512)
def _cached_estimate(a, eps, trunc_bc, layout, L, ladder, tol, error_factor):
    cfg = SolverConfig(L, ladder, tol, error_factor)
    vals = ladder_values(StripGeometry(a, eps), cfg, trunc_bc, layout)
    return extrapolate_ladder(vals, error_factor=error_factor)


def truncated_estimate(geom: StripGeometry, cfg: SolverConfig, trunc_bc: str, layout: str = "switched") -> LadderEstimate:
    """Extrapolated lowest eigenvalue with Neumann or Dirichlet truncation (memoised)."""
    return _cached_estimate(geom.a, geom.eps, trunc_bc, layout, cfg.L, tuple(cfg.ladder), cfg.tol, cfg.error_factor)


@dataclass(frozen=True)
class ThresholdReport:
    a: float
    eps: float
    threshold: float
    neumann: LadderEstimate
    dirichlet: LadderEstimate
    verdict: str  # "bound", "none" or "inconclusive"

    @property
    def lowest(self) -> float:
        return self.dirichlet.value

    @property
    def gap(self) -> float:
        """Threshold minus the extrapolated Dirichlet-truncated value."""
        return self.threshold - self.dirichlet.value


def bound_certified(est: LadderEstimate, thr: float) -> bool:
    return est.value + est.error < thr


def absence_certified(est: LadderEstimate, thr: float) -> bool:
    return est.value - est.error >= thr


def threshold_gap(geom: StripGeometry, cfg: SolverConfig = SolverConfig(), layout: str = "switched") -> ThresholdReport:
    """Bracket the bottom of the spectrum between the two truncations.

    Neumann truncation gives ``min(lam_N, thr) <= inf spec``; Dirichlet
    truncation gives ``inf spec <= lam_D``.  A bound state is certified when
    ``lam_D`` is below the threshold by more than its error bar, its absence
    when ``lam_N`` is above by more than its error bar.
    """
    thr = geom.threshold
    n_est = truncated_estimate(geom, cfg, "N", layout)
    d_est = truncated_estimate(geom, cfg, "D", layout)
    if bound_certified(d_est, thr):
        verdict = "bound"
    elif absence_certified(n_est, thr):
        verdict = "none"
    else:
        verdict = "inconclusive"
    return ThresholdReport(geom.a, geom.eps, thr, n_est, d_est, verdict)


@dataclass(frozen=True)
class CriticalEpsResult:
    lower: float
    upper: float
    resolution: float
    history: tuple  # (eps, truncation, extrapolated value, error bar, certified)

    def contains(self, eps: float) -> bool:
        return self.lower <= eps <= self.upper


def critical_eps(a: float = 1.0, cfg: SolverConfig = SolverConfig(), bracket=(0.3, 0.7),
                 resolution: float = 0.02) -> CriticalEpsResult:
    """Interval (in absolute units) containing the critical switch parameter.

    ``bracket`` and ``resolution`` are in units of ``a``.  The lower end is the
    largest tested ``eps`` at which the Neumann-truncated value certifies that
    there is no bound state; the upper end is the smallest tested ``eps`` at
    which the Dirichlet-truncated value certifies one.  Each end is located by
    bisection to within ``resolution``.
    """
    lo, hi = bracket
    thr = threshold(a)
    history = []

    def certified(eps, trunc):
        est = truncated_estimate(StripGeometry(a, eps * a), cfg, trunc)
        ok = bound_certified(est, thr) if trunc == "D" else absence_certified(est, thr)
        history.append((eps * a, trunc, est.value, est.error, ok))
        return ok

    if not certified(lo, "N"):
        raise InconclusiveError(f"absence of bound states not certified at eps={lo}a")
    if not certified(hi, "D"):
        raise InconclusiveError(f"bound state not certified at eps={hi}a")

    # upper end: smallest eps with a certified bound state
    left, right = lo, hi
    while right - left > resolution:
        mid = 0.5 * (left + right)
        if certified(mid, "D"):
            right = mid
        else:
            left = mid
    upper = right
    # lower end: largest eps with certified absence
    left, right = lo, upper
    while right - left > resolution:
        mid = 0.5 * (left + right)
        if certified(mid, "N"):
            left = mid
        else:
            right = mid
    lower = left
    return CriticalEpsResult(lower * a, upper * a, resolution * a, tuple(history))


# --- Hardy weights --------------------------------------------------------------

@dataclass(frozen=True)
class HardyWeight:
    """Non-negative weight for the shifted form.

    kinds: ``indicator_square`` (``c`` on ``(-a, a)^2``, default ``s1 thr``),
    ``corollary_rho`` (``c_h / (1 + x^2)`` built from ``c``),
    ``negative_eps_indicator`` (``3 thr`` on ``(eps, -eps) x (-a, a)``, ``eps < 0``),
    ``custom_grid`` (``func(x, y)``), ``zero``.
    """

    kind: str
    c: float | None = None
    func: object = None

    KINDS = ("indicator_square", "corollary_rho", "negative_eps_indicator", "custom_grid", "zero")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise DomainError(f"unknown weight kind {self.kind!r}")
        if self.c is not None and self.c < 0:
            raise DomainError("weight constant must be non-negative")
        if self.kind == "custom_grid" and not callable(self.func):
            raise DomainError("custom_grid weight needs a callable")

    def constant(self, geom: StripGeometry) -> float:
        if self.c is not None:
            return self.c
        from .transcendental import solve_s1

        return solve_s1().value * geom.threshold

    def corollary_ch(self, geom: StripGeometry) -> float:
        c = self.constant(geom)
        return 1.0 / max(16.0, (2.0 + 16.0 / geom.a ** 2) / c)

    def __call__(self, x, y, geom: StripGeometry):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        a = geom.a
        if self.kind == "zero":
            return np.zeros(np.broadcast(x, y).shape)
        if self.kind == "indicator_square":
            return np.where((np.abs(x) < a) & (np.abs(y) < a), self.constant(geom), 0.0)
        if self.kind == "corollary_rho":
            return self.corollary_ch(geom) / (1.0 + x * x) + 0.0 * y
        if self.kind == "negative_eps_indicator":
            if geom.eps >= 0:
                raise DomainError("negative_eps_indicator needs eps < 0")
            e = -geom.eps
            return np.where((np.abs(x) < e) & (np.abs(y) < a), 3.0 * geom.threshold, 0.0)
        out = np.asarray(self.func(x, y), dtype=float)
        if np.any(out < 0):
            raise DomainError("weight must be non-negative")
        return out

    def breaks(self, geom: StripGeometry):
        """Edges of indicator weights, used as grid breakpoints."""
        if self.kind == "indicator_square":
            return (-geom.a, geom.a)
        if self.kind == "negative_eps_indicator":
            return (geom.eps, -geom.eps)
        return ()

    def on_operator(self, op: DiscreteOperator2D, geom: StripGeometry):
        """Diagonal ``thr + w(node)`` to subtract from the operator matrix."""
        X, Y = op.node_coordinates()
        return geom.threshold + self(X, Y, geom)


@dataclass(frozen=True)
class HardyReport:
    weight: str
    eps: float
    ladder: tuple
    values: tuple  # smallest eigenvalue of B - thr - W on each rung
    estimate: LadderEstimate
    trend_ok: bool
    verdict: str  # "holds", "fails" or "inconclusive"


def hardy_form_check(geom: StripGeometry, weight: HardyWeight, cfg: SolverConfig = SolverConfig()) -> HardyReport:
    """Smallest eigenvalue of the discrete ``-Delta - thr - w`` on the Dirichlet-truncated strip.

    Dirichlet truncation restricts the form domain, so a Hardy inequality on
    the full strip implies non-negativity here.  The ladder trend is accepted
    when the values never move away from non-negativity: either all rungs are
    non-negative, or the values are non-decreasing.
    """
    vals = ladder_values(geom, cfg, "D", "switched", weight, weight.breaks(geom))
    est = extrapolate_ladder(vals, error_factor=cfg.error_factor)
    trend_ok = all(v >= 0 for v in vals) or all(b >= a for a, b in zip(vals[:-1], vals[1:]))
    if est.value >= -est.error and trend_ok:
        verdict = "holds"
    elif est.value + est.error < 0:
        verdict = "fails"
    else:
        verdict = "inconclusive"
    return HardyReport(weight.kind, geom.eps, tuple(cfg.ladder), tuple(vals), est, trend_ok, verdict)


def fitted_mesh_order(geom: StripGeometry, cfg: SolverConfig, trunc_bc: str = "D", layout: str = "switched") -> float:
    return truncated_estimate(geom, cfg, trunc_bc, layout).fitted_order


def write_eigenvector(path, op: DiscreteOperator2D, vec) -> None:
    """Plain-text dump: first row x nodes, first column y nodes, body psi(x, y)."""
    psi = op.to_grid(vec)
    table = np.empty((op.y.size + 1, op.x.size + 1))
    table[0, 0] = math.nan
    table[0, 1:] = op.x
    table[1:, 0] = op.y
    table[1:, 1:] = psi.T
    np.savetxt(path, table, fmt="%.12e")
