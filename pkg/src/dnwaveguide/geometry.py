"""Strip geometry, boundary layouts and the rotated coordinate frame.

The strip is ``R x (-a, a)``.  With the switched layout the lower side carries
Dirichlet conditions for ``x < -eps`` and the upper side for ``x > eps``; the
rest of the boundary is Neumann.  The rotated frame ``(u, v)`` is related to
``(x, y)`` by ``x = u cos(theta) + v sin(theta)``, ``y = -u sin(theta) + v cos(theta)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

#: Tolerance used to decide that a point lies on a region boundary, relative to ``a``.
BOUNDARY_RTOL = 1e-12


def threshold(a: float) -> float:
    """Bottom of the essential spectrum, ``(pi / 4a)^2``."""
    return (np.pi / (4.0 * a)) ** 2


@dataclass(frozen=True)
class StripGeometry:
    a: float = 1.0
    eps: float = 0.0

    def __post_init__(self):
        if not np.isfinite(self.a) or self.a <= 0:
            raise DomainError(f"half-width a must be positive, got {self.a!r}")
        if not np.isfinite(self.eps):
            raise DomainError(f"eps must be finite, got {self.eps!r}")

    @property
    def threshold(self) -> float:
        return threshold(self.a)

    def dimensionless(self) -> StripGeometry:
        """The same geometry measured in units of ``a``."""
        return StripGeometry(1.0, self.eps / self.a)

    def scaled(self, s: float) -> StripGeometry:
        return StripGeometry(s * self.a, s * self.eps)


class BCKind(enum.Enum):
    DIRICHLET = "D"
    NEUMANN = "N"


class Side(enum.Enum):
    BOTTOM = -1  # y = -a
    TOP = 1  # y = +a


@dataclass(frozen=True)
class BCLayout:
    """Boundary-condition map on the two sides of the strip.

    ``kind`` is one of

    * ``"switched"``: Dirichlet on ``x <= -eps`` (bottom) and ``x >= eps`` (top);
      the switch abscissae themselves are assigned to the Dirichlet side;
    * ``"non_switched"``: Dirichlet on the whole top, Neumann on the whole bottom;
    * ``"dirichlet"`` / ``"neumann"``: the same condition everywhere.
    """

    eps: float = 0.0
    kind: str = "switched"

    _KINDS = ("switched", "non_switched", "dirichlet", "neumann")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise DomainError(f"unknown layout {self.kind!r}; expected one of {self._KINDS}")

    @classmethod
    def for_geometry(cls, geom: StripGeometry, kind: str = "switched") -> BCLayout:
        return cls(eps=geom.eps, kind=kind)

    def is_dirichlet(self, side: Side, x, atol: float = 0.0):
        """Vectorised predicate: is ``(x, side)`` a Dirichlet point?"""
        x = np.asarray(x, dtype=float)
        if self.kind == "dirichlet":
            return np.ones_like(x, dtype=bool)
        if self.kind == "neumann":
            return np.zeros_like(x, dtype=bool)
        if self.kind == "non_switched":
            return np.full_like(x, side is Side.TOP, dtype=bool)
        if side is Side.BOTTOM:
            return x <= -self.eps + atol
        return x >= self.eps - atol

    def __call__(self, side: Side, x: float) -> BCKind:
        return BCKind.DIRICHLET if bool(self.is_dirichlet(side, x)) else BCKind.NEUMANN


@dataclass(frozen=True)
class RotatedFrame:
    """Constants of the rotated frame for a given angle (see :func:`derive_frame`)."""

    theta: float
    q_plus: float
    q_minus: float
    u0: float
    v0: float
    a: float
    eps: float

    @property
    def geometry(self) -> StripGeometry:
        return StripGeometry(self.a, self.eps)

    def u_minus(self, v):
        return (-self.a + np.asarray(v) * np.cos(self.theta)) / np.sin(self.theta)

    def u_plus(self, v):
        return (self.a + np.asarray(v) * np.cos(self.theta)) / np.sin(self.theta)

    def v_minus(self, u):
        return (-self.a + np.asarray(u) * np.sin(self.theta)) / np.cos(self.theta)

    def v_plus(self, u):
        return (self.a + np.asarray(u) * np.sin(self.theta)) / np.cos(self.theta)

    @property
    def well_width(self) -> float:
        """Length ``2 u0`` of the repulsive part of the reduced potential at ``v = v0``."""
        return 2.0 * self.u0

    @property
    def flank_width(self) -> float:
        """Length ``2 v0 cot(theta)`` of the attractive part at ``v = v0``."""
        return 2.0 * self.v0 / np.tan(self.theta)


def derive_frame(geom: StripGeometry, theta: float) -> RotatedFrame:
    """Rotated-frame constants ``q+, q-, u0, v0`` for angle ``theta``.

    Requires ``0 < theta < pi/3`` (so that ``q+ > 0``) and ``eps < a tan(theta)``
    (so that ``u0 > 0``).
    """
    theta = float(theta)
    if not 0.0 < theta < np.pi / 3:
        raise DomainError(f"theta must lie in (0, pi/3), got {theta!r}")
    a, eps = geom.a, geom.eps
    if eps >= a * np.tan(theta):
        raise DomainError(f"eps={eps!r} violates eps < a tan(theta) = {a * np.tan(theta)!r}")
    c, s = np.cos(theta), np.sin(theta)
    thr = threshold(a)
    return RotatedFrame(
        theta=theta,
        q_plus=thr * (4.0 * c * c - 1.0),
        q_minus=thr * s * s,
        u0=a * s - eps * c,
        v0=a * c + eps * s,
        a=a,
        eps=eps,
    )


def unrotate(point, theta: float):
    """The map ``(u, v) -> (x, y)``.  Accepts scalars or arrays of shape ``(2, ...)``."""
    u, v = point
    c, s = np.cos(theta), np.sin(theta)
    return u * c + v * s, -u * s + v * c


def rotate(point, theta: float):
    """Inverse of :func:`unrotate`: ``(x, y) -> (u, v)``."""
    x, y = point
    c, s = np.cos(theta), np.sin(theta)
    return x * c - y * s, x * s + y * c


class Region(enum.Enum):
    OMEGA = "Omega"
    OMEGA1 = "Omega1"  # |u| < u0
    OMEGA2 = "Omega2"  # |v| < v0, |u| > u0
    OMEGA1P = "Omega1'"  # |u| < u0, |v| > v0
    OMEGA2P = "Omega2'"  # |v| < v0
    EXTERIOR = "exterior"
    BOUNDARY = "boundary"


def classify_region(point, frame: RotatedFrame, geom: StripGeometry | None = None) -> frozenset:
    """Set of regions containing ``point = (u, v)``.

    Points inside the rotated strip always carry :attr:`Region.OMEGA`.  A point
    on one of the lines ``|u| = u0``, ``|v| = v0`` or on the strip boundary gets
    the single label :attr:`Region.BOUNDARY`.
    """
    if geom is not None and (geom.a != frame.a or geom.eps != frame.eps):
        raise DomainError("frame was derived for a different geometry")
    u, v = (float(p) for p in point)
    tol = BOUNDARY_RTOL * frame.a
    _, y = unrotate((u, v), frame.theta)
    if abs(abs(y) - frame.a) <= tol:
        return frozenset({Region.BOUNDARY})
    if abs(y) > frame.a:
        return frozenset({Region.EXTERIOR})
    if abs(abs(u) - frame.u0) <= tol or abs(abs(v) - frame.v0) <= tol:
        return frozenset({Region.BOUNDARY})
    labels = {Region.OMEGA}
    inner_u = abs(u) < frame.u0
    inner_v = abs(v) < frame.v0
    if inner_u:
        labels.add(Region.OMEGA1)
        if not inner_v:
            labels.add(Region.OMEGA1P)
    if inner_v:
        labels.add(Region.OMEGA2P)
        if not inner_u:
            labels.add(Region.OMEGA2)
    return frozenset(labels)


def _in_closure_union_prime(u, v, frame: RotatedFrame, tol: float):
    """Vectorised test for the closure of Omega1' u Omega2' (inside the closed strip)."""
    return (np.abs(v) <= frame.v0 + tol) | (np.abs(u) <= frame.u0 + tol)


def covered_square_check(frame: RotatedFrame, geom: StripGeometry, n_samples: int = 10_000) -> bool:
    """Does every sampled point of ``(-a, a)^2`` lie in ``f(closure(Omega1' u Omega2'))``?

    Samples a tensor grid of cell midpoints with about ``n_samples`` points.
    """
    m = max(1, int(round(np.sqrt(n_samples))))
    t = geom.a * (2.0 * (np.arange(m) + 0.5) / m - 1.0)
    x, y = np.meshgrid(t, t, indexing="ij")
    u, v = rotate((x, y), frame.theta)
    return bool(np.all(_in_closure_union_prime(u, v, frame, BOUNDARY_RTOL * geom.a)))


def strict_inclusion_witness(frame: RotatedFrame, geom: StripGeometry, n_samples: int = 10_000, seed: int = 0):
    """A point ``(x, y)`` of ``f(Omega1' u Omega2')`` outside the square ``[-a, a]^2``, or ``None``."""
    rng = np.random.default_rng(seed)
    x = rng.uniform(-4 * geom.a, 4 * geom.a, n_samples)
    y = rng.uniform(-geom.a, geom.a, n_samples)
    u, v = rotate((x, y), frame.theta)
    inside = _in_closure_union_prime(u, v, frame, -BOUNDARY_RTOL * geom.a)
    hits = np.nonzero(inside & (np.abs(x) > geom.a))[0]
    if hits.size == 0:
        return None
    i = hits[0]
    return float(x[i]), float(y[i])
