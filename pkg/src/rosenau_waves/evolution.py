"""Time stepping of the initial-value problem.

In Fourier space  u_t = -i k l(k) u^ - i k g(u)^ / P(k),  with
P(k) = 1 - alpha k^2 + beta k^4 and l(k) = (eps - eta k^2 + gamma k^4) / P(k).
The linear part is integrated exactly (integrating factor) and the
nonlinear part by classical RK4.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from .core import EquationParams, Nonlinearity, validate_params, well_posedness_polynomial
from .errors import BlowUp, InvalidParams, NoPrimitive
from .spectral import Grid, SpectralField, inverse_transform, nonlinear_coeffs, translate

BLOWUP_THRESHOLD = 1e6


@dataclass(frozen=True)
class LinearSymbols:
    k: np.ndarray
    k_odd: np.ndarray
    P: np.ndarray
    l: np.ndarray


def linear_symbols(params: EquationParams, grid: Grid) -> LinearSymbols:
    k = grid.k
    P = well_posedness_polynomial(params, k**2)
    l = (params.epsilon - params.eta * k**2 + params.gamma * k**4) / P
    return LinearSymbols(k=k, k_odd=grid.k_odd, P=P, l=l)


def linear_propagator(u0: SpectralField, t: float, symbols) -> SpectralField:
    """exp(-i k l(k) t) applied to the coefficients of u0 (exact linear flow)."""
    k = u0.grid.k_odd
    return SpectralField(u0.grid, inverse_transform(np.exp(-1j * k * symbols.l * t) * u0.coeffs).real)


def nonlinear_rhs(u: SpectralField, symbols, spec: Nonlinearity, dealias: bool = False) -> SpectralField:
    """-M^{-1} d/dx g(u), returned as a field."""
    c = _nonlinear_hat(u, u.grid.k_odd, symbols.P, spec, dealias)
    return SpectralField(u.grid, inverse_transform(c).real)


def _nonlinear_hat(u: SpectralField, k_odd, P, spec, dealias=False):
    return -1j * k_odd * nonlinear_coeffs(spec, u, dealias) / P


@dataclass(frozen=True)
class EvolveConfig:
    dt: float = 1e-3
    T: float = 1.0
    record_every: int = 100
    scheme: str = "IntegratingFactorRK4"
    dealias: bool = False

    def __post_init__(self):
        if not self.dt > 0 or not self.T > 0:
            raise ValueError("dt and T must be positive")
        if self.record_every < 1:
            raise ValueError("record_every must be >= 1")
        if self.scheme != "IntegratingFactorRK4":
            raise ValueError(f"unknown scheme {self.scheme!r}")

    @property
    def steps(self) -> int:
        return int(round(self.T / self.dt))


@dataclass
class Trajectory:
    grid: Grid
    times: list = field(default_factory=list)
    snapshots: list = field(default_factory=list)
    V: list = field(default_factory=list)
    H: list = field(default_factory=list)

    @property
    def final(self) -> SpectralField:
        return SpectralField(self.grid, self.snapshots[-1])

    def drift(self, name: str) -> float:
        """max |Q(t) - Q(0)| / |Q(0)| over the recorded times."""
        q = np.asarray(getattr(self, name), dtype=float)
        return float(np.max(np.abs(q - q[0])) / abs(q[0])) if q.size and q[0] else float("nan")


def _invariants(u: SpectralField, params, spec):
    from .validate import conserved_quantities

    if spec is None:
        V, _ = conserved_quantities(u, params, _Zero())
        return V, float("nan")
    try:
        return conserved_quantities(u, params, spec)
    except NoPrimitive:
        V, _ = conserved_quantities(u, params, _Zero())
        return V, float("nan")


class _Zero(Nonlinearity):
    def g(self, u, ux=0.0, uxx=0.0):
        return 0.0 * u

    def primitive(self, u):
        return 0.0 * u

    def terms(self):
        return [(0.0, 2)]


def evolve(u0: SpectralField, params: EquationParams, spec: Nonlinearity | None,
           config: EvolveConfig | None = None) -> Trajectory:
    """Integrating-factor RK4; ``spec=None`` runs the linear problem."""
    config = config or EvolveConfig()
    report = validate_params(params)
    if not report.ok:
        raise InvalidParams(report)
    grid = u0.grid
    sym = linear_symbols(params, grid)
    dt = config.dt
    E = np.exp(-1j * grid.k_odd * sym.l * dt / 2)
    E2 = E * E

    def N(c):
        if spec is None:
            return np.zeros_like(c)
        u = SpectralField(grid, inverse_transform(c).real)
        return _nonlinear_hat(u, grid.k_odd, sym.P, spec, config.dealias)

    traj = Trajectory(grid)

    def record(t, c):
        u = SpectralField(grid, inverse_transform(c).real)
        V, H = _invariants(u, params, spec)
        traj.times.append(t)
        traj.snapshots.append(u.values)
        traj.V.append(V)
        traj.H.append(H)

    c = np.array(u0.coeffs, dtype=complex)
    record(0.0, c)
    steps = config.steps
    for n in range(1, steps + 1):
        a = dt * N(c)
        b = dt * N(E * (c + a / 2))
        cc = dt * N(E * c + b / 2)
        d = dt * N(E2 * c + E * cc)
        c = E2 * c + (E2 * a + 2 * E * (b + cc) + d) / 6
        # enforce a real field: the Nyquist mode of an odd operator is zero
        c[grid.N // 2] = c[grid.N // 2].real
        umax = float(np.max(np.abs(inverse_transform(c).real)))
        if not np.isfinite(umax) or umax > BLOWUP_THRESHOLD:
            raise BlowUp(n * dt, umax)
        if n % config.record_every == 0 or n == steps:
            record(n * dt, c)
    return traj


@dataclass(frozen=True)
class ShapeError:
    at_cs: float
    optimal: float
    optimal_shift: float
    expected_shift: float

    def to_dict(self):
        return {"at_cs": self.at_cs, "optimal": self.optimal, "optimal_shift": self.optimal_shift,
                "expected_shift": self.expected_shift}


def shape_error(u0: SpectralField, uT: SpectralField, cs: float, T: float) -> ShapeError:
    """L-infinity distance of u(T) to u0 translated by cs T, and by the best shift."""
    grid = u0.grid
    expected = cs * T
    at_cs = float(np.max(np.abs(uT.values - translate(u0, expected).values)))
    # coarse shift from the periodic cross-correlation, then a local refinement
    xc = inverse_transform(uT.coeffs * np.conj(u0.coeffs)).real
    j = int(np.argmax(xc))
    s0 = j * grid.dx
    # pick the representative of s0 closest to the expected shift
    period = 2 * grid.L
    s0 += period * round((expected - s0) / period)

    def f(s):
        return float(np.sum((uT.values - translate(u0, s).values) ** 2))

    res = minimize_scalar(f, bracket=(s0 - grid.dx, s0, s0 + grid.dx), tol=1e-12)
    s = float(res.x)
    opt = float(np.max(np.abs(uT.values - translate(u0, s).values)))
    return ShapeError(at_cs, min(opt, at_cs), s if opt <= at_cs else expected, expected)
