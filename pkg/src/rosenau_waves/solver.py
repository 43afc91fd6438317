"""Petviashvili iteration for solitary-wave profiles.

The profile equation  (gamma - beta cs) phi'''' + (eta - alpha cs) phi'' + (eps - cs) phi + g(phi) = 0
reads  Q phi = g(phi)  in Fourier space, with
Q(k) = (beta cs - gamma) k^4 - (alpha cs - eta) k^2 + (cs - eps).  The iteration

    phi_{n+1}^ = M_n^nu  g(phi_n)^ / Q,      M_n = sum Q |phi_n^|^2 / sum g(phi_n)^ conj(phi_n^)

has every solution as a fixed point with M = 1; the factor M_n^nu removes
the unstable scaling direction of the plain fixed-point map.
"""
from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field

import numpy as np

from .classify import RegimeCoefficients, ab_coefficients
from .core import (
    DerivativeForm,
    EquationParams,
    Nonlinearity,
    default_nu,
    homogeneity_degree,
    validate_params,
)
from .errors import GuessUnavailable, InvalidParams, NotConverged, ZeroDenominator
from .spectral import (
    Grid,
    SpectralField,
    SymbolTable,
    build_symbols,
    inverse_transform,
    l2_norm,
    nonlinear_coeffs,
)

log = logging.getLogger(__name__)


# --------------------------------------------------------------------------
# initial guesses


@dataclass(frozen=True)
class SechSquared:
    """(9a/4b) sech^2(sqrt(a/b) X / 2), the small-amplitude homoclinic near C0."""


@dataclass(frozen=True)
class SechFourth:
    amplitude: float = 1.0
    width: float = 1.0


@dataclass(frozen=True)
class Gaussian:
    amplitude: float = 1.0
    width: float = 1.0


@dataclass(frozen=True)
class FromFile:
    path: str


def parse_guess(text: str):
    """``sech2``, ``sech4:A:W``, ``gaussian:A:W`` or ``file:PATH``."""
    kind, _, rest = text.partition(":")
    if kind == "sech2":
        return SechSquared()
    if kind == "file":
        return FromFile(rest)
    args = [float(v) for v in rest.split(":")] if rest else []
    if kind == "sech4":
        return SechFourth(*args)
    if kind == "gaussian":
        return Gaussian(*args)
    raise ValueError(f"unknown guess {text!r}")


def guess_to_str(guess) -> str:
    if isinstance(guess, SechSquared):
        return "sech2"
    if isinstance(guess, SechFourth):
        return f"sech4:{guess.amplitude!r}:{guess.width!r}"
    if isinstance(guess, Gaussian):
        return f"gaussian:{guess.amplitude!r}:{guess.width!r}"
    if isinstance(guess, FromFile):
        return f"file:{guess.path}"
    raise TypeError(guess)


def initial_guess(kind, coeffs: RegimeCoefficients, grid: Grid) -> SpectralField:
    """Initial profile centered at X = 0.

    SechFourth and Gaussian use ``width`` as a length scale:
    A sech^4(X/w) and A exp(-(X/w)^2).
    """
    X = grid.x
    if isinstance(kind, SechSquared):
        a, b = coeffs.a, coeffs.b
        if not (a > 0 and b > 0):
            raise GuessUnavailable(f"sech^2 guess needs a > 0 and b > 0 (a={a:.4g}, b={b:.4g})")
        amp, w = sech2_parameters(a, b)
        return SpectralField(grid, amp / np.cosh(w * X) ** 2)
    if isinstance(kind, SechFourth):
        return SpectralField(grid, kind.amplitude / np.cosh(X / kind.width) ** 4)
    if isinstance(kind, Gaussian):
        return SpectralField(grid, kind.amplitude * np.exp(-((X / kind.width) ** 2)))
    if isinstance(kind, FromFile):
        from .io import read_profile

        x, u = read_profile(kind.path)
        if len(u) == grid.N and np.allclose(x, X, rtol=0, atol=1e-9 * grid.L):
            return SpectralField(grid, u)
        # resample onto this grid; profiles are assumed periodic on their own interval
        return SpectralField(grid, np.interp(X, x, u, period=2 * grid.L))
    raise TypeError(f"unknown guess {kind!r}")


def sech2_parameters(a: float, b: float) -> tuple[float, float]:
    return 9 * a / (4 * b), 0.5 * np.sqrt(a / b)


def default_guess(coeffs: RegimeCoefficients):
    if coeffs.a > 0 and coeffs.b > 0:
        return SechSquared()
    return Gaussian(1.0, 1.0)


# --------------------------------------------------------------------------
# iteration pieces


@dataclass
class IterationTrace:
    n: list = field(default_factory=list)
    error: list = field(default_factory=list)
    stab_err: list = field(default_factory=list)
    res: list = field(default_factory=list)
    M: list = field(default_factory=list)

    def append(self, n, error, stab_err, res, M):
        self.n.append(n)
        self.error.append(error)
        self.stab_err.append(stab_err)
        self.res.append(res)
        self.M.append(M)

    def __len__(self):
        return len(self.n)

    def last(self) -> dict:
        if not self.n:
            return {"n": 0, "error": np.nan, "stab_err": np.nan, "res": np.nan, "M": np.nan}
        return {
            "n": self.n[-1],
            "error": self.error[-1],
            "stab_err": self.stab_err[-1],
            "res": self.res[-1],
            "M": self.M[-1],
        }

    def as_array(self) -> np.ndarray:
        return np.column_stack([self.n, self.error, self.stab_err, self.res, self.M])


@dataclass(frozen=True)
class SolveConfig:
    nu: float | None = None
    tol: float = 1e-12
    max_iter: int = 500
    guess: object = None
    allow_resonance: bool = False
    dealias: bool = False

    def __post_init__(self):
        if self.nu is not None and not self.nu > 1:
            raise ValueError("nu must be > 1")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        if not self.tol > 0:
            raise ValueError("tol must be positive")


@dataclass
class SolveResult:
    profile: SpectralField
    trace: IterationTrace
    converged: bool
    amplitude: float
    iterations: int
    nu: float
    cs: float
    params: EquationParams
    spec: Nonlinearity
    resonant: bool = False


def _denominator(symbols: SymbolTable, allow_resonance: bool) -> np.ndarray:
    Q = np.array(symbols.Q, dtype=float)
    if not symbols.resonant:
        return Q
    if not allow_resonance:
        symbols.check_resonance()
    # sign-preserving clamp of near-zero entries
    floor = 1e-6 * max(1.0, float(np.max(np.abs(Q[: Q.size // 8 + 1]))))
    small = np.abs(Q) < floor
    Q[small] = np.where(Q[small] >= 0, floor, -floor)
    return Q


def stabilizing_factor(phi: SpectralField, symbols: SymbolTable, spec: Nonlinearity,
                       g_hat: np.ndarray | None = None, dealias: bool = False) -> float:
    """M = -sum S |phi^|^2 / sum g(phi)^ conj(phi^) over the grid modes."""
    if g_hat is None:
        g_hat = nonlinear_coeffs(spec, phi, dealias)
    c = phi.coeffs
    num = np.sum(symbols.Q * np.abs(c) ** 2)
    den = np.sum(g_hat * np.conj(c))
    if not np.any(c) or abs(den) <= 1e-300 or abs(den) <= 1e-14 * np.sum(np.abs(g_hat * c)):
        raise ZeroDenominator("pairing <g(phi), phi> vanishes")
    if abs(den.imag) > 1e-10 * abs(den):
        raise ValueError(f"stabilizing factor has a complex pairing ({den!r})")
    return float(num / den.real)


def residual_norm(phi: SpectralField, symbols: SymbolTable, spec: Nonlinearity,
                  g_hat: np.ndarray | None = None, dealias: bool = False) -> float:
    """||S phi + g(phi)||_2 with quadrature weight 2L/N."""
    if g_hat is None:
        g_hat = nonlinear_coeffs(spec, phi, dealias)
    r = inverse_transform(-symbols.Q * phi.coeffs + g_hat).real
    return l2_norm(phi.grid, r)


def petviashvili_step(phi: SpectralField, symbols: SymbolTable, spec: Nonlinearity, nu: float,
                      M: float | None = None, allow_resonance: bool = False,
                      dealias: bool = False) -> SpectralField:
    """One update; pass ``M`` to override the stabilizing factor."""
    g_hat = nonlinear_coeffs(spec, phi, dealias)
    if M is None:
        M = stabilizing_factor(phi, symbols, spec, g_hat)
    Q = _denominator(symbols, allow_resonance)
    return _update(phi.grid, g_hat, Q, M, nu)


def _update(grid, g_hat, Q, M, nu) -> SpectralField:
    scale = np.sign(M) * abs(M) ** nu
    return SpectralField.from_coeffs(grid, scale * g_hat / Q)


def _recenter(phi: SpectralField) -> SpectralField:
    """Roll the extremum of largest magnitude onto X = 0."""
    grid = phi.grid
    j = int(np.argmax(np.abs(phi.values)))
    shift = grid.N // 2 - j
    if shift == 0:
        return phi
    return SpectralField(grid, np.roll(phi.values, shift))


def _resolve_nu(spec: Nonlinearity, nu: float | None) -> float:
    if nu is not None:
        return float(nu)
    if isinstance(spec, DerivativeForm):
        raise ValueError("derivative-dependent nonlinearities need an explicit nu")
    if homogeneity_degree(spec) is None:
        warnings.warn(
            f"{type(spec).__name__} is not homogeneous; nu taken from its lowest-degree term, "
            "convergence is not guaranteed",
            stacklevel=3,
        )
    return default_nu(spec)


def solve(params: EquationParams, cs: float, spec: Nonlinearity, grid: Grid | None = None,
          config: SolveConfig | None = None) -> SolveResult:
    """Compute a solitary-wave profile of speed ``cs``.

    Stops when Error(n), |1 - M_n| and RES(n) are all below ``config.tol``.
    Raises NotConverged (result attached) after ``max_iter`` iterations.
    """
    grid = grid or Grid()
    config = config or SolveConfig()
    report = validate_params(params)
    if not report.ok:
        raise InvalidParams(report)
    coeffs = ab_coefficients(params, cs)
    symbols = build_symbols(params, cs, grid)
    Q = _denominator(symbols, config.allow_resonance)
    nu = _resolve_nu(spec, config.nu)
    guess = config.guess if config.guess is not None else default_guess(coeffs)
    phi = initial_guess(guess, coeffs, grid)

    trace = IterationTrace()
    prev = None
    converged = False
    for n in range(config.max_iter + 1):
        g_hat = nonlinear_coeffs(spec, phi, config.dealias)
        M = stabilizing_factor(phi, symbols, spec, g_hat)
        res = residual_norm(phi, symbols, spec, g_hat)
        err = l2_norm(grid, phi.values - prev.values) if prev is not None else np.inf
        trace.append(n, err, abs(1 - M), res, M)
        if max(err, abs(1 - M), res) <= config.tol:
            converged = True
            break
        if n == config.max_iter:
            break
        prev = phi
        phi = _update(grid, g_hat, Q, M, nu)

    phi = _recenter(phi)
    result = SolveResult(
        profile=phi,
        trace=trace,
        converged=converged,
        amplitude=float(phi.values[grid.N // 2]),
        iterations=trace.n[-1],
        nu=nu,
        cs=float(cs),
        params=params,
        spec=spec,
        resonant=symbols.resonant,
    )
    log.debug("solve cs=%g: %d iterations, converged=%s", cs, result.iterations, converged)
    if not converged:
        raise NotConverged(result)
    return result
