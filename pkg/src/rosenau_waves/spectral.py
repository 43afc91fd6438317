"""Periodic Fourier collocation on [-L, L).

Transform convention: the forward transform carries the 1/N factor,

    c_m = (1/N) sum_j u_j exp(-i k_m x_j'),   u_j = sum_m c_m exp(i k_m x_j'),

with x_j' = x_j + L (numpy's ``norm="forward"``).  Parseval then reads
(2L/N) sum_j |u_j|**2 = 2L sum_m |c_m|**2.  Coefficients are stored in FFT
order; the Nyquist mode is labelled with the positive wavenumber pi N/(2L).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .core import EquationParams, Nonlinearity, well_posedness_polynomial
from .errors import ResonantWavenumber

DEFAULT_L = 100.0
DEFAULT_N = 1024


@dataclass(frozen=True)
class Grid:
    L: float = DEFAULT_L
    N: int = DEFAULT_N

    def __post_init__(self):
        if not self.L > 0:
            raise ValueError("half length L must be positive")
        if self.N < 4 or self.N & (self.N - 1):
            raise ValueError("N must be a power of two (>= 4)")

    @cached_property
    def x(self) -> np.ndarray:
        return -self.L + 2 * self.L * np.arange(self.N) / self.N

    @property
    def dx(self) -> float:
        return 2 * self.L / self.N

    @cached_property
    def modes(self) -> np.ndarray:
        m = np.fft.fftfreq(self.N, d=1.0 / self.N)
        m[self.N // 2] = self.N // 2
        return m

    @cached_property
    def k(self) -> np.ndarray:
        return np.pi * self.modes / self.L

    @cached_property
    def k_odd(self) -> np.ndarray:
        """Wavenumbers for odd-order operators: Nyquist mode zeroed."""
        k = self.k.copy()
        k[self.N // 2] = 0.0
        return k

    @property
    def k_max(self) -> float:
        return np.pi * (self.N // 2) / self.L

    def reflect_index(self) -> np.ndarray:
        """Index map j -> j' with x_j' = -x_j (mod 2L)."""
        return (-np.arange(self.N)) % self.N


def transform(values) -> np.ndarray:
    return np.fft.fft(values, norm="forward")


def inverse_transform(coeffs) -> np.ndarray:
    return np.fft.ifft(coeffs, norm="forward")


def real_inverse(coeffs, tol: float = 1e-10) -> np.ndarray:
    """Inverse transform of a coefficient array that should give a real field."""
    v = inverse_transform(coeffs)
    scale = np.max(np.abs(v.real)) if v.size else 0.0
    imag = np.max(np.abs(v.imag)) if v.size else 0.0
    if imag > tol * max(scale, np.finfo(float).tiny):
        raise ValueError(f"inverse transform is not real (imag {imag:.3g} vs {scale:.3g})")
    return v.real


@dataclass(frozen=True)
class SpectralField:
    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != (self.grid.N,):
            raise ValueError(f"expected {self.grid.N} values, got shape {v.shape}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @cached_property
    def coeffs(self) -> np.ndarray:
        c = transform(self.values)
        c.setflags(write=False)
        return c

    @classmethod
    def from_coeffs(cls, grid: Grid, coeffs) -> "SpectralField":
        """Field whose cached coefficients are ``coeffs`` (made Hermitian) rather
        than a re-transform of the node values; this keeps high-wavenumber
        round-off out of symbol products such as Q(k) c_k."""
        c = np.asarray(coeffs, dtype=complex)
        f = cls(grid, real_inverse(c))
        c = 0.5 * (c + np.conj(c[grid.reflect_index()]))
        c.setflags(write=False)
        f.__dict__["coeffs"] = c
        return f

    @classmethod
    def from_function(cls, grid: Grid, fn) -> "SpectralField":
        return cls(grid, fn(grid.x))

    def norm2(self) -> float:
        return l2_norm(self.grid, self.values)

    def __neg__(self):
        return SpectralField(self.grid, -self.values)


def l2_norm(grid: Grid, values) -> float:
    """Discrete L2 norm with quadrature weight 2L/N."""
    return float(np.sqrt(grid.dx * np.sum(np.abs(values) ** 2)))


def differentiate(f: SpectralField, order: int = 1) -> SpectralField:
    if order not in (1, 2, 3, 4):
        raise ValueError("derivative order must be 1..4")
    k = f.grid.k_odd if order % 2 else f.grid.k
    return SpectralField(f.grid, inverse_transform((1j * k) ** order * f.coeffs).real)


def translate(f: SpectralField, shift: float) -> SpectralField:
    """Periodic translation: returns u(x - shift)."""
    k = f.grid.k_odd
    c = f.coeffs * np.exp(-1j * k * shift)
    # Nyquist mode of a real field only admits the real part of the phase
    nyq = f.grid.N // 2
    c[nyq] = f.coeffs[nyq] * np.cos(f.grid.k[nyq] * shift)
    return SpectralField(f.grid, inverse_transform(c).real)


def nonlinear_values(spec: Nonlinearity, f: SpectralField) -> np.ndarray:
    """g(u) collocated on the grid (derivatives taken spectrally when needed)."""
    if spec.needs_derivatives:
        ux = differentiate(f, 1).values
        uxx = differentiate(f, 2).values
        return spec.g(f.values, ux, uxx)
    return spec.g(f.values)


def _pad(coeffs, M):
    N = coeffs.size
    out = np.zeros(M, dtype=complex)
    h = N // 2
    out[:h] = coeffs[:h]
    out[-h + 1:] = coeffs[h + 1:]
    out[h] = 0.5 * coeffs[h]
    out[M - h] = 0.5 * coeffs[h]
    return out


def _truncate(coeffs, N):
    M = coeffs.size
    h = N // 2
    out = np.empty(N, dtype=complex)
    out[:h] = coeffs[:h]
    out[h + 1:] = coeffs[M - h + 1:]
    out[h] = coeffs[h] + coeffs[M - h]
    return out


def nonlinear_coeffs(spec: Nonlinearity, f: SpectralField, dealias: bool = False) -> np.ndarray:
    """Fourier coefficients of g(u); with ``dealias`` the product is formed on a 3N/2 grid."""
    if not dealias:
        return transform(nonlinear_values(spec, f))
    grid = f.grid
    M = 3 * grid.N // 2
    cp = _pad(f.coeffs, M)
    u = inverse_transform(cp).real
    if spec.needs_derivatives:
        kp = np.zeros(M)
        h = grid.N // 2
        kp[:h] = grid.k[:h]
        kp[M - h + 1:] = grid.k[h + 1:]
        ux = inverse_transform(1j * kp * cp).real
        uxx = inverse_transform(-(kp**2) * cp).real
        gv = spec.g(u, ux, uxx)
    else:
        gv = spec.g(u)
    return _truncate(transform(gv), grid.N)


# --------------------------------------------------------------------------
# symbols


def profile_symbol(params: EquationParams, cs: float, k) -> np.ndarray:
    """Q(k) = (beta cs - gamma) k^4 - (alpha cs - eta) k^2 + (cs - eps)."""
    k2 = np.asarray(k, dtype=float) ** 2
    return (
        (params.beta * cs - params.gamma) * k2**2
        - (params.alpha * cs - params.eta) * k2
        + (cs - params.epsilon)
    )


def symbol_roots(params: EquationParams, cs: float) -> np.ndarray:
    """Nonnegative real k with Q(k) = 0 (quadratic in k^2)."""
    c4 = params.beta * cs - params.gamma
    c2 = -(params.alpha * cs - params.eta)
    c0 = cs - params.epsilon
    coeffs = [c4, c2, c0]
    while coeffs and coeffs[0] == 0.0:
        coeffs.pop(0)
    if len(coeffs) < 2:
        return np.array([])
    r = np.roots(coeffs)
    r = r[np.abs(r.imag) <= 1e-12 * (1 + np.abs(r.real))].real
    r = r[r >= 0]
    return np.sort(np.sqrt(r))


def default_resonance_tol(params: EquationParams, cs: float) -> float:
    return 1e-8 * (1 + abs(cs) + params.epsilon)


@dataclass(frozen=True)
class SymbolTable:
    k: np.ndarray
    P: np.ndarray
    l: np.ndarray
    Q: np.ndarray
    min_abs_Q: float
    k_min_Q: float
    resonant: bool
    k_resonant: float | None

    @property
    def S(self) -> np.ndarray:
        return -self.Q

    def check_resonance(self):
        if self.resonant:
            k = self.k_resonant if self.k_resonant is not None else self.k_min_Q
            raise ResonantWavenumber(k, self.min_abs_Q)


def build_symbols(params: EquationParams, cs: float, grid: Grid, resonance_tol: float | None = None) -> SymbolTable:
    """Linear symbols on the grid wavenumbers plus the resonance diagnostic.

    The table is flagged resonant when min |Q| on the grid falls below
    ``resonance_tol`` or when Q changes sign inside [0, k_max]; a sign change
    means some linear mode travels at speed cs, so the fixed-point division
    is ill-posed regardless of where the grid nodes fall.
    """
    if resonance_tol is None:
        resonance_tol = default_resonance_tol(params, cs)
    k = grid.k
    P = well_posedness_polynomial(params, k**2)
    l = (params.epsilon - params.eta * k**2 + params.gamma * k**4) / P
    Q = profile_symbol(params, cs, k)
    i = int(np.argmin(np.abs(Q)))
    roots = symbol_roots(params, cs)
    roots = roots[roots <= grid.k_max]
    sign_change = bool(np.any(Q > 0) and np.any(Q < 0))
    resonant = bool(abs(Q[i]) < resonance_tol or sign_change)
    k_res = float(roots[0]) if roots.size else (float(abs(k[i])) if resonant else None)
    for arr in (P, l, Q):
        arr.setflags(write=False)
    return SymbolTable(
        k=k, P=P, l=l, Q=Q, min_abs_Q=float(abs(Q[i])), k_min_Q=float(abs(k[i])),
        resonant=resonant, k_resonant=k_res,
    )
