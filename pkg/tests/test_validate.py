import math

import mpmath
import numpy as np
import pytest
import sympy as sp

from rosenau_waves.classify import ab_coefficients
from rosenau_waves.core import DerivativeForm, EquationParams, Family, SinglePower
from rosenau_waves.errors import ConstraintViolated, NoPrimitive, TailBelowPrecision
from rosenau_waves.solver import SolveConfig, residual_norm, solve
from rosenau_waves.spectral import Grid, SpectralField, build_symbols
from rosenau_waves.validate import (
    QUICK_GRID,
    conserved_quantities,
    decay_fit,
    exact_kawahara,
    exact_kdv,
    exact_rlw,
    match_exact,
    run_validation,
    speed_amplitude_sweep,
    symmetry_defect,
)

GRID = Grid()
QUAD = SinglePower(1)
WAVES = [exact_rlw, exact_kdv, exact_kawahara]


def test_exact_rlw_values():
    w = exact_rlw(-1.0, 1.0, 5.0)
    assert w.params.beta == pytest.approx(45 / 169, rel=1e-15)
    assert w.amplitude == pytest.approx(35 / 3, rel=1e-15)
    assert w.width == pytest.approx(math.sqrt(52 / 720), rel=1e-15)
    assert w.params.family is Family.ROSENAU_RLW


def test_exact_rlw_limit():
    w = exact_rlw(-1.0, 1.0, 1.0001)
    assert w.params.beta == pytest.approx(36 * 1.0001 / (169 * 1e-4), rel=1e-9)


def test_exact_rlw_constraints():
    with pytest.raises(ConstraintViolated):
        exact_rlw(-1.0, 1.0, 1.0)
    with pytest.raises(ConstraintViolated):
        exact_rlw(1.0, 1.0, 2.0)


def test_exact_kdv_values():
    mpmath.mp.dps = 30
    s = mpmath.sqrt(313)
    w = exact_kdv()
    assert w.cs == pytest.approx(float(mpmath.mpf(1) / 2 + s / 26), rel=1e-15)
    assert w.closed_form(0.0) == pytest.approx(float(-mpmath.mpf(35) / 24 + 35 * s / 312), rel=1e-14)
    assert w.width == pytest.approx(float(mpmath.sqrt(-26 + 2 * s) / 24), rel=1e-14)
    x = np.linspace(0, 90, 200)
    assert np.all(np.diff(w.closed_form(x)) < 0)


def test_exact_kawahara_values():
    mpmath.mp.dps = 30
    s = mpmath.sqrt(205)
    w = exact_kawahara()
    assert w.cs == pytest.approx(float(s / 13), rel=1e-15)
    assert w.amplitude == pytest.approx(float(-mpmath.mpf(35) / 12 + 35 * s / 156), rel=1e-14)
    assert w.width == pytest.approx(float(mpmath.sqrt(-13 + s) / 12), rel=1e-14)
    assert 0 < w.amplitude < 1


@pytest.mark.parametrize("make", WAVES)
def test_exact_waves_satisfy_profile_equation(make):
    w = make()
    s = build_symbols(w.params, w.cs, GRID)
    assert residual_norm(w.sample(GRID), s, w.spec) <= 1e-9


def test_closed_forms_symbolically():
    X = sp.symbols("X", real=True)
    r, q = sp.sqrt(313), sp.sqrt(205)
    forms = [
        (exact_kdv(), sp.Rational(1, 2) + r / 26, -sp.Rational(35, 24) + 35 * r / 312, sp.sqrt(-26 + 2 * r) / 24),
        (exact_kawahara(), q / 13, -sp.Rational(35, 12) + 35 * q / 156, sp.sqrt(-13 + q) / 12),
    ]
    for w, cs, amp, width in forms:
        p = w.params
        assert float(amp) == pytest.approx(w.amplitude, rel=1e-14)
        u = amp / sp.cosh(width * X) ** 4
        c = [sp.nsimplify(v) for v in (p.gamma, p.beta, p.eta, p.alpha, p.epsilon)]
        ode = ((c[0] - c[1] * cs) * sp.diff(u, X, 4) + (c[2] - c[3] * cs) * sp.diff(u, X, 2)
               + (c[4] - cs) * u + u**2 / 2)
        for x0 in (0.3, 1.7, 4.0):
            assert abs(sp.N(ode.subs(X, x0), 40)) < 1e-30


def test_match_exact():
    w = exact_rlw()
    assert match_exact(w.params, w.cs) == w
    assert match_exact(exact_kdv().params, exact_kdv().cs) == exact_kdv()
    assert match_exact(exact_kawahara().params, exact_kawahara().cs) == exact_kawahara()
    assert match_exact(EquationParams(), 1.5) is None
    assert match_exact(w.params, w.cs, SinglePower(2)) is None


def test_conserved_zero_and_cosine():
    assert conserved_quantities(SpectralField(GRID, np.zeros(GRID.N)), EquationParams(), QUAD) == (0.0, 0.0)
    u = SpectralField(GRID, np.cos(np.pi * GRID.x / GRID.L))
    V, H = conserved_quantities(u, EquationParams(), QUAD)
    assert V == pytest.approx(0.5 * (100 + 100 * (np.pi / 100) ** 4), rel=1e-13)
    # H = int(u^2/2 + u^3/6) and the cubic integrates to zero
    assert H == pytest.approx(50.0, rel=1e-13)


def test_conserved_no_primitive():
    with pytest.raises(NoPrimitive):
        conserved_quantities(SpectralField(GRID, np.zeros(GRID.N)), EquationParams(), DerivativeForm())


def _oracle(w):
    """V and H of the closed form by adaptive quadrature in extended precision."""
    mpmath.mp.dps = 30
    X = sp.symbols("X")
    u = sp.Float(w.amplitude, 30) / sp.cosh(sp.Float(w.width, 30) * X) ** 4
    ux, uxx = sp.diff(u, X), sp.diff(u, X, 2)
    p = w.params
    v_expr = (u**2 - p.alpha * ux**2 + p.beta * uxx**2) / 2
    h_expr = (p.epsilon * u**2 - p.eta * ux**2 + p.gamma * uxx**2) / 2 + u**3 / 6
    fv = sp.lambdify(X, v_expr, "mpmath")
    fh = sp.lambdify(X, h_expr, "mpmath")
    V = 2 * mpmath.quad(fv, [0, 5, 20, mpmath.inf])
    H = 2 * mpmath.quad(fh, [0, 5, 20, mpmath.inf])
    return float(V), float(H)


@pytest.mark.parametrize("make", WAVES)
def test_conserved_against_quadrature(make):
    w = make()
    V, H = conserved_quantities(w.sample(GRID), w.params, w.spec)
    Vo, Ho = _oracle(w)
    assert V == pytest.approx(Vo, rel=1e-8)
    assert H == pytest.approx(Ho, rel=1e-8)


def test_symmetry_defect():
    w = exact_kdv()
    phi = w.sample(GRID)
    assert symmetry_defect(phi) <= 1e-12
    shifted = SpectralField(GRID, np.roll(phi.values, 1))
    assert symmetry_defect(shifted) > 1e-3
    assert symmetry_defect(SpectralField(GRID, np.zeros(GRID.N))) == 0.0


def test_symmetry_of_converged_nmcsw():
    r = solve(EquationParams(), 1.5, QUAD, GRID)
    assert symmetry_defect(r.profile) <= 1e-8


def test_decay_rlw_csw():
    p = EquationParams(alpha=-1)
    r = solve(p, 1.1, QUAD, GRID)
    fit = decay_fit(r.profile, ab_coefficients(p, 1.1))
    assert not fit.oscillatory
    assert fit.predicted_rate == pytest.approx(0.31802, abs=1e-5)
    assert fit.fitted_rate > 0
    assert fit.rate_error < 0.05


def test_decay_rosenau_nmcsw():
    p = EquationParams()
    r = solve(p, 1.5, QUAD, GRID)
    fit = decay_fit(r.profile, ab_coefficients(p, 1.5))
    lam = (1 / 3) ** 0.25 / math.sqrt(2)
    assert fit.oscillatory
    assert fit.predicted_rate == pytest.approx(lam, rel=1e-12)
    assert fit.predicted_oscillation == pytest.approx(lam, rel=1e-12)
    assert fit.rate_error < 0.05 and fit.oscillation_error < 0.05


@pytest.mark.parametrize("make", WAVES)
def test_decay_exact_sech4(make):
    w = make()
    fit = decay_fit(w.sample(GRID))
    assert fit.fitted_rate == pytest.approx(4 * w.width, rel=0.02)
    assert fit.predicted_rate is None


def test_decay_window_shrinks_then_fails():
    w = exact_rlw()  # rate ~1.07: nothing above 1e-13 beyond X~30
    fit = decay_fit(w.sample(GRID), floor=1e-13, window=None)
    assert fit.window == (15.0, 35.0) or fit.window == (30.0, 70.0)
    g = SpectralField(GRID, np.exp(-GRID.x**2))
    with pytest.raises(TailBelowPrecision):
        decay_fit(g)


def test_sweep_monotone():
    rows = speed_amplitude_sweep(EquationParams(), QUAD, [1.5, 2, 3], GRID)
    amps = [r.amplitude for r in rows]
    assert all(r.converged for r in rows)
    assert amps[0] < amps[1] < amps[2]


def test_sweep_single_and_sorted():
    rows = speed_amplitude_sweep(EquationParams(), QUAD, [2.0], GRID)
    assert len(rows) == 1 and rows[0].status == "ok"
    rows = speed_amplitude_sweep(EquationParams(), QUAD, [3.0, 1.5], GRID, jobs=2)
    assert [r.cs for r in rows] == [1.5, 3.0]


def test_sweep_gate_and_failures():
    rows = speed_amplitude_sweep(EquationParams(), QUAD, [0.9, 1.5], GRID)
    assert rows[0].status == "below coercivity threshold" and rows[0].amplitude is None
    assert not rows[0].coercive and rows[1].converged
    rows = speed_amplitude_sweep(EquationParams(), QUAD, [1.5, 2.0], GRID, SolveConfig(max_iter=2))
    assert all(r.status == "not converged" for r in rows)
    rows = speed_amplitude_sweep(EquationParams(eta=1), QUAD, [0.9], GRID, override=True)
    assert rows[0].status.startswith("ResonantWavenumber")


def test_validation_suite():
    rows = run_validation()
    assert len(rows) == 15 and all(r.passed for r in rows)


def test_validation_suite_quick():
    assert QUICK_GRID.N == 256
    rows = run_validation(quick=True)
    assert all(r.passed for r in rows)
    assert all(r.bound <= 1e-7 for r in rows)
