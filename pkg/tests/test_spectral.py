import numpy as np
import pytest

from rosenau_waves.core import CubicQuintic, DerivativeForm, EquationParams, SinglePower
from rosenau_waves.errors import ResonantWavenumber
from rosenau_waves.spectral import (
    Grid,
    SpectralField,
    build_symbols,
    differentiate,
    inverse_transform,
    l2_norm,
    nonlinear_coeffs,
    nonlinear_values,
    profile_symbol,
    real_inverse,
    symbol_roots,
    transform,
    translate,
)

rng = np.random.default_rng(20240611)


def test_grid_layout():
    g = Grid(L=10.0, N=16)
    assert g.x[0] == -10.0 and g.x[-1] == pytest.approx(10.0 - 20.0 / 16)
    assert g.dx == 20.0 / 16
    assert g.modes[8] == 8 and g.modes[9] == -7
    np.testing.assert_allclose(g.k, np.pi * g.modes / 10.0)
    assert g.k_odd[8] == 0.0
    assert g.k_max == pytest.approx(np.pi * 8 / 10)
    np.testing.assert_allclose(g.x[g.reflect_index()][1:], -g.x[1:])
    with pytest.raises(ValueError):
        Grid(N=100)
    with pytest.raises(ValueError):
        Grid(L=-1.0)


def test_constant_has_only_mean():
    g = Grid(L=5.0, N=32)
    c = transform(np.ones(g.N))
    assert c[0] == pytest.approx(1.0)
    assert np.max(np.abs(c[1:])) < 1e-15


def test_cosine_two_modes():
    g = Grid(L=7.0, N=64)
    c = transform(np.cos(np.pi * g.x / g.L))
    nz = np.nonzero(np.abs(c) > 1e-12)[0]
    assert set(nz) == {1, g.N - 1}
    assert abs(c[1]) == pytest.approx(0.5) and c[1] == pytest.approx(np.conj(c[-1]))


def test_conjugate_symmetry():
    g = Grid(L=3.0, N=64)
    c = transform(rng.standard_normal(g.N))
    np.testing.assert_allclose(c[g.reflect_index()], np.conj(c), atol=1e-15)


def test_real_inverse_rejects_complex():
    c = np.zeros(8, dtype=complex)
    c[1] = 1.0
    with pytest.raises(ValueError):
        real_inverse(c)


def test_from_coeffs_keeps_coefficients():
    g = Grid(L=4.0, N=32)
    f = SpectralField(g, np.exp(-g.x**2))
    h = SpectralField.from_coeffs(g, f.coeffs)
    np.testing.assert_allclose(h.values, f.values, atol=1e-15)
    np.testing.assert_allclose(h.coeffs, f.coeffs, atol=1e-16)


def test_field_is_read_only():
    g = Grid(L=1.0, N=8)
    f = SpectralField(g, np.zeros(8))
    with pytest.raises(ValueError):
        f.values[0] = 1.0
    with pytest.raises(ValueError):
        SpectralField(g, np.zeros(7))


def test_derivative_examples():
    g = Grid(L=100.0, N=256)
    w = np.pi / g.L
    f = SpectralField(g, np.sin(w * g.x))
    np.testing.assert_allclose(differentiate(f, 1).values, w * np.cos(w * g.x), atol=1e-10)
    assert np.max(np.abs(differentiate(SpectralField(g, np.full(g.N, 3.0)), 2).values)) < 1e-10
    w2 = 2 * np.pi / g.L
    f = SpectralField(g, np.cos(w2 * g.x))
    np.testing.assert_allclose(differentiate(f, 4).values, w2**4 * np.cos(w2 * g.x), atol=1e-10)
    with pytest.raises(ValueError):
        differentiate(f, 5)


def test_first_derivative_twice_is_second():
    g = Grid(L=6.0, N=128)
    f = SpectralField(g, np.exp(-g.x**2) * np.cos(3 * g.x))
    d11 = differentiate(differentiate(f, 1), 1).values
    np.testing.assert_allclose(d11, differentiate(f, 2).values, atol=1e-10)


def test_nyquist_zeroed_for_odd_orders():
    g = Grid(L=np.pi, N=16)
    f = SpectralField(g, np.cos(8 * g.x))  # pure Nyquist mode
    assert np.max(np.abs(differentiate(f, 1).values)) < 1e-12
    assert np.max(np.abs(differentiate(f, 3).values)) < 1e-12
    np.testing.assert_allclose(differentiate(f, 2).values, -64 * f.values, atol=1e-10)


def test_parseval():
    g = Grid(L=12.5, N=128)
    for _ in range(20):
        v = rng.standard_normal(g.N)
        c = transform(v)
        lhs = g.dx * np.sum(v**2)
        rhs = 2 * g.L * np.sum(np.abs(c) ** 2)
        assert abs(lhs - rhs) <= 1e-12 * lhs
        assert l2_norm(g, v) == pytest.approx(np.sqrt(lhs), rel=1e-14)


def test_translate():
    g = Grid(L=20.0, N=256)
    f = SpectralField(g, np.exp(-g.x**2))
    np.testing.assert_allclose(translate(f, 1.3).values, np.exp(-(g.x - 1.3) ** 2), atol=1e-12)
    np.testing.assert_allclose(translate(f, 2 * g.L).values, f.values, atol=1e-12)


def test_nonlinear_values_with_derivatives():
    g = Grid(L=np.pi, N=32)
    f = SpectralField(g, np.sin(g.x))
    v = nonlinear_values(DerivativeForm(A=0, B=0, m=1, s=1), f)
    # u_x^2/2 + u u_xx = cos^2/2 - sin^2
    np.testing.assert_allclose(v, np.cos(g.x) ** 2 / 2 - np.sin(g.x) ** 2, atol=1e-12)


def test_dealiasing_exact_for_resolved_products():
    g = Grid(L=np.pi, N=32)
    f = SpectralField(g, np.cos(3 * g.x) + 0.5 * np.sin(5 * g.x))
    for spec in (SinglePower(1), CubicQuintic(0.0)):
        np.testing.assert_allclose(nonlinear_coeffs(spec, f, dealias=True), nonlinear_coeffs(spec, f), atol=1e-14)


def test_dealiasing_removes_aliased_modes():
    g = Grid(L=np.pi, N=16)
    f = SpectralField(g, np.cos(6 * g.x))
    c_alias = nonlinear_coeffs(SinglePower(1), f)
    c_clean = nonlinear_coeffs(SinglePower(1), f, dealias=True)
    # cos^2(6x)/2 = 1/4 + cos(12x)/4, and mode 12 aliases to mode 4 on N=16
    assert abs(c_alias[4]) == pytest.approx(1 / 8)
    assert abs(c_clean[4]) < 1e-15
    assert c_clean[0] == pytest.approx(0.25)


def test_symbols_rosenau_no_resonance():
    p = EquationParams()
    s = build_symbols(p, 1.5, Grid())
    np.testing.assert_allclose(s.Q, 1.5 * s.k**4 + 0.5)
    assert s.min_abs_Q == pytest.approx(0.5)
    assert not s.resonant
    s.check_resonance()
    np.testing.assert_array_equal(s.S, -s.Q)


def test_symbols_kdv_resonant():
    p = EquationParams(eta=1)
    s = build_symbols(p, 0.9, Grid())
    assert s.resonant
    k2 = (-1 + np.sqrt(1.36)) / 1.8
    assert s.k_resonant == pytest.approx(np.sqrt(k2), rel=1e-12)
    with pytest.raises(ResonantWavenumber) as e:
        s.check_resonance()
    assert e.value.k == pytest.approx(np.sqrt(k2), rel=1e-12)
    np.testing.assert_allclose(symbol_roots(p, 0.9), [np.sqrt(k2)])


def test_symbol_at_zero():
    p = EquationParams(alpha=-0.7, beta=2.0, gamma=0.3, epsilon=1.2, eta=0.4)
    for cs in (0.3, 1.2, 4.0):
        assert profile_symbol(p, cs, 0.0) == pytest.approx(cs - p.epsilon)


def test_symbols_match_residual_operator():
    p = EquationParams(alpha=-0.7, beta=2.0, gamma=0.3, epsilon=1.2, eta=0.4)
    cs = 1.7
    s = build_symbols(p, cs, Grid(L=10.0, N=64))
    k = s.k
    S = (p.gamma - cs * p.beta) * k**4 - (p.eta - cs * p.alpha) * k**2 + (p.epsilon - cs)
    np.testing.assert_allclose(s.S, S, rtol=1e-15, atol=1e-12)
    np.testing.assert_allclose(s.l * s.P, p.epsilon - p.eta * k**2 + p.gamma * k**4, rtol=1e-12)


def test_P_positive_random():
    g = Grid(L=50.0, N=256)
    n = 0
    while n < 100:
        alpha = rng.uniform(-10, 10)
        beta = rng.uniform(1e-3, 30)
        if alpha**2 >= 4 * beta:
            continue
        s = build_symbols(EquationParams(alpha=alpha, beta=beta), 2.0, g)
        assert np.all(s.P > 0)
        n += 1


def test_inverse_pair_random():
    g = Grid(L=1.0, N=64)
    v = rng.standard_normal(g.N)
    np.testing.assert_allclose(inverse_transform(transform(v)).real, v, atol=1e-14)
