"""End-to-end acceptance checks, one test per criterion.

Each test records a PASS/FAIL line that is echoed in the pytest terminal
summary under "acceptance criteria".
"""

import math
import time

import numpy as np
import pytest

from conftest import record
from dnwaveguide import cli
from dnwaveguide.geometry import StripGeometry, derive_frame, threshold
from dnwaveguide.laplacian2d import (HardyWeight, SolverConfig, critical_eps, hardy_form_check, ladder_values,
                                     threshold_gap)
from dnwaveguide.optimize import optimal_theta_eps, optimal_theta_hardy
from dnwaveguide.quadrature_checks import hardy_failure_demo, lemma_hardy_quadrature_check
from dnwaveguide.schrodinger1d import build_reduced_potential, lambda_profile, lowest_eig_fd, verify_lemma
from dnwaveguide.transcendental import (ImplicitEqParams, fraction_closed_form, g1, g2, lambda_v0_signed,
                                        solve_s1, solve_t1)

FULL = SolverConfig(L=12.0, ladder=(32, 64, 128))
THR = threshold(1.0)


def best_time(fn, repeats=5):
    best, out = math.inf, None
    for _ in range(repeats):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return out, best


def test_01_s1():
    res, dt = best_time(solve_s1)
    ok = abs(res.value - 0.039) <= 0.0005 and dt < 0.010
    record(1, ok, f"s1 = {res.value:.7f} (target 0.039 +- 0.0005), {dt * 1e3:.2f} ms")
    assert ok


def test_02_t1():
    res, dt = best_time(solve_t1)
    ok = abs(res.value - 0.061) <= 0.0005 and dt < 0.010
    record(2, ok, f"t1 = {res.value:.7f} (target 0.061 +- 0.0005), {dt * 1e3:.2f} ms")
    assert ok


def test_03_fraction():
    p = ImplicitEqParams.at(0.0, math.pi / 4)
    ratio = float(g1(0.0, p) / g2(0.0, p))
    diff = abs(ratio - fraction_closed_form())
    ok = diff < 1e-10 and ratio > 1
    record(3, ok, f"g1/g2 at zero = {ratio:.15f}, closed form diff {diff:.1e}")
    assert ok


def test_04_optimal_angles():
    t = time.perf_counter()
    hardy, eps = optimal_theta_hardy(), optimal_theta_eps()
    dt = time.perf_counter() - t
    ok = (abs(hardy.theta_star - 0.774) <= 0.005 and abs(hardy.objective_star - 0.040) <= 0.001
          and abs(eps.theta_star - 0.759) <= 0.005 and abs(eps.objective_star - 0.063) <= 0.001 and dt < 5)
    record(4, ok, f"theta* = {hardy.theta_star:.5f} (max {hardy.objective_star:.6f} thr), "
                  f"theta* = {eps.theta_star:.5f} (bound {eps.objective_star:.6f} a), {dt:.2f} s")
    assert ok


def test_05_oracle_equivalence():
    t = time.perf_counter()
    worst = 0.0
    for eps in (0.0, 0.03):
        for theta in (math.pi / 6, math.pi / 4, 0.774):
            g = StripGeometry(1.0, eps)
            f = derive_frame(g, theta)
            fd = lowest_eig_fd(build_reduced_potential(f.v0, f, g), 1000, levels=3).value
            worst = max(worst, abs(fd - lambda_v0_signed(eps, theta)))
    dt = time.perf_counter() - t
    ok = worst <= 1e-6 * THR and dt < 5
    record(5, ok, f"max |FD - matching root| = {worst:.2e} over 6 cases (limit {1e-6 * THR:.2e}), {dt:.2f} s")
    assert ok


def test_06_lemma_sweep():
    reports = [verify_lemma(h, l, d, n_c=64) for h, l, d in ((1, 1, 0.25), (5, 2, 0.4), (0.5, 1, 0.1))]
    n_bad = sum(len(r.violations) for r in reports)
    margin = min(min(r.eigenvalues) - r.baseline for r in reports)
    ok = n_bad == 0
    record(6, ok, f"{n_bad} violations over 3 x 64 offsets, min(inf spec H_c - inf spec H_0) = {margin:.2e}")
    assert ok


def test_07_profile():
    g = StripGeometry(1.0)
    f = derive_frame(g, math.pi / 4)
    prof = lambda_profile(f, g, 101, 1000)
    vals = np.array([r.value for _, r in prof])
    tol = 10 * max(r.error for _, r in prof)
    even = float(np.max(np.abs(vals - vals[::-1])))
    endpoint_gap = float(np.min(vals) - vals[-1])
    ok = even <= 1e-9 and endpoint_gap >= -tol
    record(7, ok, f"evenness {even:.1e}, min(lambda) - lambda(v0) = {endpoint_gap:.1e} (tol {tol:.1e})")
    assert ok


def test_08_no_bound_state_for_nonpositive_eps():
    parts, ok = [], True
    for eps in (-0.5, -0.1, 0.0):
        rep = threshold_gap(StripGeometry(1.0, eps), FULL)
        d = rep.dirichlet
        good = d.value >= THR - d.error
        ok &= good
        parts.append(f"eps={eps:g}: {d.value / THR:.5f} thr (+-{d.error / THR:.1e}), verdict {rep.verdict}")
    record(8, ok, "; ".join(parts))
    assert ok


def test_09_critical_eps():
    t = time.perf_counter()
    res = critical_eps(1.0, FULL, (0.3, 0.7), 0.02)
    dt = time.perf_counter() - t
    ok = res.contains(0.52) and 0.16 < res.lower and res.upper < 0.68
    record(9, ok, f"eps_c in [{res.lower:.4f}, {res.upper:.4f}] a, {len(res.history)} solves, {dt:.0f} s")
    assert ok


def test_10_hardy_certification():
    cases = [("square", StripGeometry(1.0, 0.0), HardyWeight("indicator_square")),
             ("negative eps", StripGeometry(1.0, -0.3), HardyWeight("negative_eps_indicator")),
             ("rho", StripGeometry(1.0, 0.0), HardyWeight("corollary_rho"))]
    parts, ok = [], True
    for name, g, w in cases:
        rep = hardy_form_check(g, w, FULL)
        literal = all(b >= a for a, b in zip(rep.values[:-1], rep.values[1:]))
        ok &= rep.verdict == "holds" and rep.trend_ok
        parts.append(f"{name}: {rep.verdict}, ladder {', '.join(f'{v:.4f}' for v in rep.values)} "
                     f"(non-decreasing: {literal}, all non-negative: {min(rep.values) >= 0})")
    record(10, ok, "; ".join(parts))
    assert ok


def test_11_failure_demo():
    g = StripGeometry(1.0)
    w = HardyWeight("indicator_square", 1.0)
    plain = hardy_failure_demo(g, w, 8, "non_switched")
    twisted = hardy_failure_demo(g, w, 8, "switched")
    floor = min(twisted.quotients)
    ok = plain.decreasing and plain.ratio < 0.05 and floor > 0
    record(11, ok, f"non-switched final/initial = {plain.ratio:.4f} (decreasing {plain.decreasing}); "
                   f"switched min quotient = {floor:.4f}")
    assert ok


def test_12_scaling():
    small = ladder_values(StripGeometry(1.0, 0.6), FULL, "D")
    big = ladder_values(StripGeometry(2.0, 1.2), FULL, "D")  # L is in units of a: 24 for a = 2
    diff = max(abs(b - s / 4) for s, b in zip(small, big))
    ok = diff < 1e-10
    record(12, ok, f"max |lambda(a=2) - lambda(a=1)/4| over ny = 32, 64, 128: {diff:.1e}")
    assert ok


def test_13_quadrature():
    strip, line = lemma_hardy_quadrature_check(stability=1e-4)
    change = max(strip.refinement_change, line.refinement_change)
    ok = strip.max_ratio < 1 and line.max_ratio < 1 and len(strip.ratios) == len(line.ratios) == 10 and change < 1e-4
    record(13, ok, f"max ratio strip {strip.max_ratio:.4f}, line {line.max_ratio:.4f}, refinement change {change:.1e}")
    assert ok


def test_roots_cli_reports_both_constants(tmp_path, capsys):
    assert cli.main(["roots", "--out", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert "s1 = 0.039434" in out and "t1 = 0.061438" in out
