import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dnwaveguide.errors import DomainError
from dnwaveguide.extrapolation import extrapolate_ladder, fitted_order, richardson
from dnwaveguide.geometry import StripGeometry, derive_frame, threshold
from dnwaveguide.schrodinger1d import (StepPotential1D, build_reduced_potential, constant_potential,
                                       hc_lowest, hc_potential, lambda_profile, lowest_eig_fd, verify_lemma)
from dnwaveguide.transcendental import lambda_v0_signed


def test_richardson_exact_for_quadratic_error():
    f = lambda h: 2.0 + 5 * h ** 2
    assert richardson(f(0.1), f(0.05)) == pytest.approx(2.0, abs=1e-13)
    assert fitted_order([f(0.2), f(0.1), f(0.05)]) == pytest.approx(2.0)


def test_ladder_estimate_first_order():
    vals = [1 + 0.4 / n for n in (8, 16, 32, 64)]
    est = extrapolate_ladder(vals)
    assert est.value == pytest.approx(1.0, abs=1e-12)
    assert est.order == pytest.approx(1.0)


def test_potential_tiling_is_validated():
    with pytest.raises(DomainError):
        StepPotential1D(0.0, 1.0, ((0.0, 0.4, 1.0), (0.5, 1.0, 0.0)))


def test_neumann_box_zero_mode():
    r = lowest_eig_fd(constant_potential(-1.0, 2.0, 0.0), 64, levels=1)
    assert abs(r.value) < 1e-14


def test_constant_potential_shifts_spectrum():
    r = lowest_eig_fd(constant_potential(0.0, 3.0, 0.7), 64, levels=1)
    assert r.value == pytest.approx(0.7, abs=1e-13)


def test_mirror_invariance():
    pot = StepPotential1D(0.0, 3.0, ((0.0, 1.0, 2.0), (1.0, 2.5, -0.3), (2.5, 3.0, 1.0)))
    assert lowest_eig_fd(pot, 200).value == pytest.approx(lowest_eig_fd(pot.mirrored(), 200).value, abs=1e-12)


@pytest.mark.parametrize("eps,theta", [(0.0, math.pi / 4), (0.03, math.pi / 6), (0.02, 0.774)])
def test_fd_matches_matching_equation(eps, theta):
    g = StripGeometry(1.0, eps)
    f = derive_frame(g, theta)
    fd = lowest_eig_fd(build_reduced_potential(f.v0, f, g), 1000, levels=3)
    exact = lambda_v0_signed(eps, theta)
    assert fd.value == pytest.approx(exact, abs=1e-8)


def test_reduced_potential_outside_range():
    f = derive_frame(StripGeometry(1.0), math.pi / 4)
    with pytest.raises(DomainError):
        build_reduced_potential(1.1 * f.v0, f)


def test_profile_even_and_minimal_at_ends():
    g = StripGeometry(1.0)
    f = derive_frame(g, math.pi / 4)
    prof = lambda_profile(f, g, 21, 400)
    vals = np.array([r.value for _, r in prof])
    assert np.max(np.abs(vals - vals[::-1])) < 1e-10
    assert vals.argmin() in (0, len(vals) - 1)


def test_hc_free_case_and_centered_bump():
    assert abs(hc_lowest(0.0, 1.0, 0.25, 0.5).value) < 1e-12
    l, d = math.pi, 0.3
    assert hc_lowest(1.0, l, d, 0.0).value <= hc_lowest(1.0, l, d, (l - d * l) / 2).value
    with pytest.raises(DomainError):
        hc_potential(1.0, 1.0, 0.25, 0.95)  # bump leaves the interval


@settings(max_examples=10, deadline=None)
@given(st.floats(0.1, 5.0), st.floats(0.5, 2.0), st.floats(0.05, 0.45))
def test_lemma_random_parameters(h, l, delta):
    rep = verify_lemma(h, l, delta, n_c=8, n_mesh=200)
    assert rep.ok, rep.violations


def test_lemma_curve_symmetric_with_minimum_at_ends():
    rep = verify_lemma(1.0, 1.0, 0.25, n_c=16, n_mesh=400)
    vals = np.array(rep.eigenvalues)
    assert np.max(np.abs(vals - vals[::-1])) < 1e-10
    assert np.all(np.diff(vals[:8]) > 0)
