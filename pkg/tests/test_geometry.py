import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dnwaveguide.errors import DomainError
from dnwaveguide.geometry import (BCKind, BCLayout, Region, Side, StripGeometry, classify_region,
                                  covered_square_check, derive_frame, rotate, strict_inclusion_witness,
                                  threshold, unrotate)

thetas = st.floats(0.05, math.pi / 3 - 0.05)
halfwidths = st.floats(0.1, 10.0)


def test_threshold_value():
    assert threshold(1.0) == pytest.approx(math.pi ** 2 / 16)
    assert StripGeometry(2.0).threshold == pytest.approx(threshold(1.0) / 4)


@pytest.mark.parametrize("a,eps", [(0.0, 0.0), (-1.0, 0.0), (math.nan, 0.0), (1.0, math.inf)])
def test_geometry_rejects_bad_input(a, eps):
    with pytest.raises(DomainError):
        StripGeometry(a, eps)


def test_dimensionless_and_scaled():
    g = StripGeometry(2.0, 0.6)
    assert g.dimensionless() == StripGeometry(1.0, 0.3)
    assert g.scaled(0.5) == StripGeometry(1.0, 0.3)


def test_switched_layout_sides():
    bc = BCLayout(0.5, "switched")
    assert bc(Side.BOTTOM, -1.0) is BCKind.DIRICHLET
    assert bc(Side.BOTTOM, 0.0) is BCKind.NEUMANN
    assert bc(Side.TOP, 1.0) is BCKind.DIRICHLET
    assert bc(Side.TOP, 0.0) is BCKind.NEUMANN
    assert BCLayout(0.0, "dirichlet")(Side.TOP, 3.0) is BCKind.DIRICHLET
    with pytest.raises(DomainError):
        BCLayout(0.0, "robin")


def test_negative_eps_overlaps_dirichlet_parts():
    bc = BCLayout(-0.3, "switched")
    x = np.array([-0.1, 0.1])
    assert bc.is_dirichlet(Side.BOTTOM, x).all() and bc.is_dirichlet(Side.TOP, x).all()


@given(thetas, halfwidths)
def test_q_sum_identity(theta, a):
    f = derive_frame(StripGeometry(a), theta)
    assert f.q_plus + f.q_minus == pytest.approx(3 * threshold(a) * math.cos(theta) ** 2, rel=1e-12)
    assert f.q_plus > 0 and f.q_minus > 0


@given(thetas, st.floats(0.0, 0.5))
def test_u0_v0_linear_in_eps(theta, t):
    a = 1.0
    eps = t * a * math.tan(theta)
    f0 = derive_frame(StripGeometry(a), theta)
    f = derive_frame(StripGeometry(a, eps), theta)
    assert f.u0 == pytest.approx(f0.u0 - eps * math.cos(theta), abs=1e-12)
    assert f.v0 == pytest.approx(f0.v0 + eps * math.sin(theta), abs=1e-12)


@given(st.floats(-5, 5), st.floats(-5, 5), thetas)
def test_rotation_round_trip(x, y, theta):
    u, v = rotate((x, y), theta)
    x2, y2 = unrotate((u, v), theta)
    assert x2 == pytest.approx(x, abs=1e-12) and y2 == pytest.approx(y, abs=1e-12)
    assert math.hypot(u, v) == pytest.approx(math.hypot(x, y), abs=1e-12)


def test_frame_domain_errors():
    g = StripGeometry(1.0)
    for bad in (0.0, math.pi / 3, -0.1, 1.2):
        with pytest.raises(DomainError):
            derive_frame(g, bad)
    with pytest.raises(DomainError):
        derive_frame(StripGeometry(1.0, 1.0), math.pi / 4)  # eps >= a tan(theta)


def test_frame_widths_at_quarter_turn():
    f = derive_frame(StripGeometry(1.0), math.pi / 4)
    assert f.well_width == pytest.approx(math.sqrt(2))
    assert f.flank_width == pytest.approx(math.sqrt(2))
    assert f.u_plus(f.v0) - f.u_minus(f.v0) == pytest.approx(2 / math.sin(math.pi / 4))


def test_region_labels():
    f = derive_frame(StripGeometry(1.0), math.pi / 4)
    assert classify_region((0.0, 0.0), f) == {Region.OMEGA, Region.OMEGA1, Region.OMEGA2P}
    assert classify_region((0.0, 1.0), f) == {Region.OMEGA, Region.OMEGA1, Region.OMEGA1P}
    assert classify_region((1.0, 0.0), f) == {Region.OMEGA, Region.OMEGA2, Region.OMEGA2P}
    assert classify_region((f.u0, 0.0), f) == {Region.BOUNDARY}
    assert classify_region((5.0, 0.0), f) == {Region.EXTERIOR}
    with pytest.raises(DomainError):
        classify_region((0, 0), f, StripGeometry(2.0))


def test_square_covered_at_quarter_turn():
    g = StripGeometry(1.0)
    assert covered_square_check(derive_frame(g, math.pi / 4), g, 10_000)


def test_square_not_covered_away_from_quarter_turn():
    # coverage of the corners needs tan(theta) + cot(theta) <= 2, i.e. theta = pi/4
    g = StripGeometry(1.0)
    assert not covered_square_check(derive_frame(g, 0.5), g, 10_000)


@settings(max_examples=30, deadline=None)
@given(thetas, st.floats(0.0, 0.9), st.integers(0, 2 ** 32 - 1))
def test_region_inclusions_monte_carlo(theta, t, seed):
    g = StripGeometry(1.0, t * math.tan(theta))
    f = derive_frame(g, theta)
    rng = np.random.default_rng(seed)
    for u, v in rng.uniform(-3, 3, size=(200, 2)):
        labels = classify_region((u, v), f)
        if Region.OMEGA1P in labels:
            assert Region.OMEGA1 in labels
        if Region.OMEGA2P in labels:
            assert labels & {Region.OMEGA1, Region.OMEGA2}


@pytest.mark.parametrize("theta", [math.pi / 6, math.pi / 4, 0.774])
def test_strict_inclusion_has_witness(theta):
    g = StripGeometry(1.0)
    f = derive_frame(g, theta)
    w = strict_inclusion_witness(f, g)
    assert w is not None and abs(w[0]) > g.a
