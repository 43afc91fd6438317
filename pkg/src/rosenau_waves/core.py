"""Equation family, nonlinearities and global validity checks.

The equations handled here are

    u_t + eps u_x + alpha u_xxt + eta u_xxx + beta u_xxxxt + gamma u_xxxxx + (g(u))_x = 0

with eps > 0 and alpha**2 < 4 beta.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import NoPrimitive, UnsupportedPattern


class Family(enum.Enum):
    ROSENAU = "rosenau"
    ROSENAU_RLW = "rosenau-rlw"
    ROSENAU_KDV = "rosenau-kdv"
    ROSENAU_KAWAHARA = "rosenau-kawahara"
    ROSENAU_RLW_KAWAHARA = "rosenau-rlw-kawahara"
    GENERIC = "generic"


# coefficients forced to zero by each tag
_ZERO_PATTERN = {
    Family.ROSENAU: ("alpha", "eta", "gamma"),
    Family.ROSENAU_RLW: ("eta", "gamma"),
    Family.ROSENAU_KDV: ("alpha", "gamma"),
    Family.ROSENAU_KAWAHARA: ("alpha",),
    Family.ROSENAU_RLW_KAWAHARA: (),
    Family.GENERIC: (),
}


@dataclass(frozen=True)
class EquationParams:
    alpha: float = 0.0
    beta: float = 1.0
    gamma: float = 0.0
    epsilon: float = 1.0
    eta: float = 0.0
    family: Family = Family.GENERIC

    def __post_init__(self):
        fam = Family(self.family)
        object.__setattr__(self, "family", fam)
        for name in ("alpha", "beta", "gamma", "epsilon", "eta"):
            object.__setattr__(self, name, float(getattr(self, name)))
        check_family_pattern(self, fam)

    @property
    def rho(self) -> float:
        return self.beta * self.epsilon - self.gamma

    @property
    def delta(self) -> float:
        return self.alpha * self.epsilon - self.eta

    def as_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "gamma": self.gamma,
            "epsilon": self.epsilon,
            "eta": self.eta,
            "family": self.family.value,
        }


def check_family_pattern(params: "EquationParams", family: Family) -> None:
    bad = [n for n in _ZERO_PATTERN[Family(family)] if getattr(params, n) != 0.0]
    if bad:
        raise UnsupportedPattern(f"{Family(family).value} requires {', '.join(bad)} = 0")


@dataclass(frozen=True)
class ValidityReport:
    ok: bool
    violations: tuple[str, ...] = ()


def validate_params(params: EquationParams) -> ValidityReport:
    violations = []
    if not params.epsilon > 0:
        violations.append(f"epsilon > 0 (got epsilon={params.epsilon:g})")
    if not params.beta > 0:
        violations.append(f"beta > 0 (got beta={params.beta:g})")
    if not params.alpha**2 < 4 * params.beta:
        violations.append(
            f"alpha^2 < 4 beta (got alpha^2={params.alpha**2:g}, 4 beta={4 * params.beta:g})"
        )
    return ValidityReport(ok=not violations, violations=tuple(violations))


# --------------------------------------------------------------------------
# nonlinearities


class Nonlinearity:
    """Base class; subclasses evaluate g pointwise (numpy-broadcasting)."""

    needs_derivatives = False

    def g(self, u, ux=0.0, uxx=0.0):
        raise NotImplementedError

    def primitive(self, u):
        raise NoPrimitive(f"{type(self).__name__} has no primitive G(u)")

    def terms(self) -> list[tuple[float, int]]:
        """(coefficient, degree) pairs of g as a polynomial in u."""
        raise NotImplementedError

    @property
    def lowest_degree(self) -> int:
        return min(d for _, d in self.terms())

    def to_dict(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class SinglePower(Nonlinearity):
    """g(u) = u**(p+1)/(p+1)."""

    p: int = 1

    def __post_init__(self):
        if int(self.p) != self.p or self.p < 1:
            raise ValueError("SinglePower needs an integer p >= 1")

    def g(self, u, ux=0.0, uxx=0.0):
        return u ** (self.p + 1) / (self.p + 1)

    def primitive(self, u):
        return u ** (self.p + 2) / ((self.p + 2) * (self.p + 1))

    def terms(self):
        return [(1.0 / (self.p + 1), self.p + 1)]

    def to_dict(self):
        return {"kind": "power", "p": self.p}


@dataclass(frozen=True)
class CubicQuintic(Nonlinearity):
    """g(u) = u**3/3 + r u**5/5."""

    r: float = 1.0

    def g(self, u, ux=0.0, uxx=0.0):
        return u**3 / 3 + self.r * u**5 / 5

    def primitive(self, u):
        return u**4 / 12 + self.r * u**6 / 30

    def terms(self):
        return [(1 / 3, 3), (self.r / 5, 5)]

    def to_dict(self):
        return {"kind": "cubic-quintic", "r": self.r}


@dataclass(frozen=True)
class PowerSum(Nonlinearity):
    """g(u) = sum_i c_i u**d_i with every d_i >= 2."""

    pairs: tuple[tuple[float, int], ...] = field(default_factory=tuple)

    def __post_init__(self):
        pairs = tuple((float(c), int(d)) for c, d in self.pairs)
        if not pairs:
            raise ValueError("PowerSum needs at least one term")
        if any(d < 2 for _, d in pairs):
            raise ValueError("PowerSum degrees must be >= 2")
        object.__setattr__(self, "pairs", pairs)

    def g(self, u, ux=0.0, uxx=0.0):
        return sum(c * u**d for c, d in self.pairs)

    def primitive(self, u):
        return sum(c * u ** (d + 1) / (d + 1) for c, d in self.pairs)

    def terms(self):
        return list(self.pairs)

    def to_dict(self):
        return {"kind": "powersum", "pairs": [list(t) for t in self.pairs]}


@dataclass(frozen=True)
class DerivativeForm(Nonlinearity):
    """g = A u**2/2 + B u**(m+1)/(m+1) + s (u_x**2/2 + u u_xx)."""

    A: float = 1.0
    B: float = 0.0
    m: int = 1
    s: float = 0.0

    needs_derivatives = True

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 1:
            raise ValueError("DerivativeForm needs an integer m >= 1")

    def g(self, u, ux=0.0, uxx=0.0):
        return (
            self.A * u**2 / 2
            + self.B * u ** (self.m + 1) / (self.m + 1)
            + self.s * (ux**2 / 2 + u * uxx)
        )

    def terms(self):
        # the s-term is quadratic in (u, u_x, u_xx)
        out = [(self.A / 2, 2), (self.B / (self.m + 1), self.m + 1)]
        if self.s:
            out.append((self.s, 2))
        return [t for t in out if t[0] != 0.0] or [(0.0, 2)]

    def to_dict(self):
        return {"kind": "derivative", "A": self.A, "B": self.B, "m": self.m, "s": self.s}


def eval_nonlinearity(spec: Nonlinearity, u, ux=0.0, uxx=0.0):
    """Evaluate g at a point (or elementwise on arrays)."""
    return spec.g(u, ux, uxx)


def homogeneity_degree(spec: Nonlinearity) -> int | None:
    """Degree q of the primitive G when G is homogeneous, else None.

    For the non-homogeneous variants use ``spec.lowest_degree`` (degree of g).
    """
    if isinstance(spec, DerivativeForm):
        return None
    degrees = {d for c, d in spec.terms() if c != 0.0}
    if len(degrees) != 1:
        return None
    return degrees.pop() + 1


def default_nu(spec: Nonlinearity) -> float:
    """Petviashvili exponent d/(d-1) for g of (lowest) degree d."""
    d = spec.lowest_degree
    return d / (d - 1)


def nonlinearity_from_dict(d: dict) -> Nonlinearity:
    kind = d["kind"]
    if kind == "power":
        return SinglePower(int(d["p"]))
    if kind == "cubic-quintic":
        return CubicQuintic(float(d["r"]))
    if kind == "powersum":
        return PowerSum(tuple((c, deg) for c, deg in d["pairs"]))
    if kind == "derivative":
        return DerivativeForm(float(d["A"]), float(d["B"]), int(d["m"]), float(d["s"]))
    raise ValueError(f"unknown nonlinearity kind {kind!r}")


def parse_nonlinearity(text: str) -> Nonlinearity:
    """Parse the command-line form of a nonlinearity.

    ``power:P``, ``cubic-quintic:R``, ``powersum:C:D,C:D,...`` or
    ``derivative:A:B:M:S``.
    """
    kind, _, rest = text.partition(":")
    args = rest.split(":") if rest else []
    if kind == "power":
        return SinglePower(int(args[0]) if args else 1)
    if kind == "cubic-quintic":
        return CubicQuintic(float(args[0]) if args else 1.0)
    if kind == "powersum":
        pairs: Sequence[tuple[float, int]] = []
        for item in rest.split(","):
            c, deg = item.split(":")
            pairs.append((float(c), int(deg)))
        return PowerSum(tuple(pairs))
    if kind == "derivative":
        A, B, m, s = args
        return DerivativeForm(float(A), float(B), int(m), float(s))
    raise ValueError(f"cannot parse nonlinearity {text!r}")


def well_posedness_polynomial(params: EquationParams, x):
    """P(x) = 1 - alpha x + beta x**2; P(k**2) is the symbol of M = 1 + alpha d2 + beta d4."""
    x = np.asarray(x, dtype=float)
    return 1 - params.alpha * x + params.beta * x**2
