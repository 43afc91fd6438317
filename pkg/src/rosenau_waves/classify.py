"""Regime classification of solitary-wave speeds.

Linearising the profile ODE  phi'''' - b phi'' + a phi = f(phi)  at zero gives
the characteristic quartic  lambda^4 - b lambda^2 + a = 0.  Its root
configuration splits the (b, a) plane into four regions separated by

    C0: a = 0, b > 0        C1: a = 0, b < 0
    C2: b = -2 sqrt(a)      C3: b = 2 sqrt(a)

and the region together with the closest curve predicts which wave types
bifurcate.  Independently, a speed is *coercive* when cs - eps lies outside
[x_-, x_+]; the energy functional is then equivalent to the H^2 norm and
(nonmonotone) classical solitary waves exist by a variational argument.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .core import EquationParams, Family, check_family_pattern, validate_params
from .errors import DegenerateSpeed, InvalidParams, UnsupportedPattern


class Region(enum.Enum):
    REGION1 = "Region1"
    REGION2 = "Region2"
    REGION3 = "Region3"
    REGION4 = "Region4"
    C0 = "C0"
    C1 = "C1"
    C2 = "C2"
    C3 = "C3"
    ORIGIN = "Origin"


class Wave(enum.Enum):
    CSW = "CSW"
    NMCSW = "NMCSW"
    GSW = "GSW"
    PTW = "PTW"


CURVES = (Region.C0, Region.C1, Region.C2, Region.C3)

ADJACENT = {
    Region.REGION1: (Region.C3, Region.C2),
    Region.REGION2: (Region.C0, Region.C3),
    Region.REGION3: (Region.C0, Region.C1),
    Region.REGION4: (Region.C1, Region.C2),
}

# (region, closest curve) -> wave types predicted by the local normal form;
# near C3 the transition is only known from experiments, so both CSW types are kept
PREDICTIONS = {
    (Region.REGION2, Region.C0): {Wave.CSW},
    (Region.REGION2, Region.C3): {Wave.CSW, Wave.NMCSW},
    (Region.REGION3, Region.C0): {Wave.PTW},
    (Region.REGION3, Region.C1): {Wave.GSW},
    (Region.REGION4, Region.C1): {Wave.GSW, Wave.PTW},
    (Region.REGION4, Region.C2): {Wave.GSW, Wave.PTW},
    (Region.REGION1, Region.C2): {Wave.NMCSW},
    (Region.REGION1, Region.C3): {Wave.NMCSW, Wave.CSW},
}

CURVE_TOL = 1e-10
NEAR_BAND = 0.25


@dataclass(frozen=True)
class RegimeCoefficients:
    a: float
    b: float
    mu1: float
    mu2: float
    rho: float
    delta: float
    cs: float


@dataclass(frozen=True)
class RootSet:
    roots: np.ndarray
    lambda_sq: np.ndarray

    def decay_root(self) -> complex | None:
        """Root with negative real part closest to the imaginary axis."""
        neg = [r for r in self.roots if r.real < -1e-14]
        if not neg:
            return None
        return max(neg, key=lambda r: (r.real, -abs(r.imag)))


@dataclass(frozen=True)
class ThresholdSet:
    x_plus: float
    x_minus: float
    family_thresholds: dict = field(default_factory=dict)


@dataclass(frozen=True)
class RegimeReport:
    coefficients: RegimeCoefficients
    roots: RootSet
    label: Region
    predicted_waves: frozenset
    nearest_curve: tuple
    within_band: bool
    coercive: bool | None = None
    thresholds: ThresholdSet | None = None
    family: Family = Family.GENERIC
    table_row: str | None = None
    notes: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        c = self.coefficients
        out = {
            "cs": c.cs,
            "a": c.a,
            "b": c.b,
            "mu1": c.mu1,
            "mu2": c.mu2,
            "rho": c.rho,
            "delta": c.delta,
            "label": self.label.value,
            "predicted_waves": sorted(w.value for w in self.predicted_waves),
            "nearest_curve": self.nearest_curve[0].value if self.nearest_curve[0] else None,
            "curve_distance": self.nearest_curve[1],
            "within_band": self.within_band,
            "roots": [[float(r.real), float(r.imag)] for r in self.roots.roots],
            "family": self.family.value,
        }
        if self.coercive is not None:
            out["coercive"] = self.coercive
        if self.thresholds is not None:
            out["x_plus"] = self.thresholds.x_plus
            out["x_minus"] = self.thresholds.x_minus
            out["family_thresholds"] = dict(self.thresholds.family_thresholds)
        if self.table_row:
            out["table_row"] = self.table_row
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def ab_coefficients(params: EquationParams, cs: float) -> RegimeCoefficients:
    denom = params.beta * cs - params.gamma
    if abs(denom) <= 1e-12 * (1 + abs(params.beta * cs) + abs(params.gamma)):
        raise DegenerateSpeed(f"beta*cs - gamma = {denom:.3g} at cs={cs:g}")
    a = (cs - params.epsilon) / denom
    b = (params.alpha * cs - params.eta) / (-denom)
    mu1 = b / 3
    return RegimeCoefficients(
        a=a, b=b, mu1=mu1, mu2=mu1**2 - a, rho=params.rho, delta=params.delta, cs=float(cs)
    )


def _quadratic_roots(p: float, q: float) -> tuple[complex, complex]:
    """Roots of z^2 - p z + q, avoiding cancellation in the small root."""
    disc = p * p - 4 * q
    if disc >= 0:
        s = math.sqrt(disc)
        big = 0.5 * (p + math.copysign(s, p)) if p != 0 else 0.5 * s
        small = q / big if big != 0 else -big
        return complex(big), complex(small)
    s = math.sqrt(-disc)
    return complex(p / 2, s / 2), complex(p / 2, -s / 2)


def characteristic_roots(coeffs: RegimeCoefficients) -> RootSet:
    l1, l2 = _quadratic_roots(coeffs.b, coeffs.a)
    roots = []
    for z in (l1, l2):
        r = np.sqrt(complex(z))
        roots.extend([r, -r])
    roots = np.array(sorted(roots, key=lambda r: (round(r.real, 14), round(r.imag, 14))))
    return RootSet(roots=roots, lambda_sq=np.array([l1, l2]))


def mu_coordinates(coeffs: RegimeCoefficients, rel_tol: float = CURVE_TOL):
    """(mu1, mu2) and the curve the point lies on, if any.

    C0/C1: mu2 = mu1^2 with mu1 > 0 / < 0; C2/C3: mu2 = -(5/4) mu1^2 with
    mu1 < 0 / > 0.
    """
    mu1, mu2 = coeffs.mu1, coeffs.mu2
    scale = 1 + abs(mu1) + mu1**2 + abs(mu2)
    curve = None
    if abs(mu1) <= rel_tol and abs(mu2) <= rel_tol:
        curve = Region.ORIGIN
    elif abs(mu2 - mu1**2) <= rel_tol * scale:
        curve = Region.C0 if mu1 > 0 else Region.C1
    elif abs(mu2 + 1.25 * mu1**2) <= rel_tol * scale:
        curve = Region.C3 if mu1 > 0 else Region.C2
    return mu1, mu2, curve


def _parabola_distance(b: float, a: float, sign: float) -> float:
    """Distance from (b, a) to {(sign*2s, s^2): s >= 0}."""
    # stationary points: s^3 + (2 - a) s - sign*b = 0
    cands = [0.0]
    for r in np.roots([1.0, 0.0, 2.0 - a, -sign * b]):
        if abs(r.imag) < 1e-9 and r.real >= 0:
            cands.append(float(r.real))
    return min(math.hypot(b - sign * 2 * s, a - s * s) for s in cands)


def curve_distances(b: float, a: float) -> dict:
    """Signed distances to C0..C3 in the (b, a) plane.

    C0/C1 distances are positive on the a > 0 side; C2/C3 distances are
    positive on the region-1 side (b^2 < 4a).
    """
    sa = 1.0 if a >= 0 else -1.0
    d0 = abs(a) if b > 0 else math.hypot(a, b)
    d1 = abs(a) if b < 0 else math.hypot(a, b)
    s23 = 1.0 if 4 * a - b * b >= 0 else -1.0
    return {
        Region.C0: sa * d0,
        Region.C1: sa * d1,
        Region.C2: s23 * _parabola_distance(b, a, -1.0),
        Region.C3: s23 * _parabola_distance(b, a, 1.0),
    }


def _label_from_signs(a: float, b: float, rel_tol: float) -> Region:
    scale = 1 + abs(a) + b * b
    if abs(a) <= rel_tol * scale and abs(b) <= rel_tol * scale:
        return Region.ORIGIN
    if abs(a) <= rel_tol * scale:
        return Region.C0 if b > 0 else Region.C1
    if a > 0 and abs(b * b - 4 * a) <= rel_tol * scale:
        return Region.C3 if b > 0 else Region.C2
    if a < 0:
        return Region.REGION3
    if b * b < 4 * a:
        return Region.REGION1
    return Region.REGION2 if b > 0 else Region.REGION4


def _report(coeffs, label, near_band, **extra) -> RegimeReport:
    roots = characteristic_roots(coeffs)
    a, b = coeffs.a, coeffs.b
    dists = curve_distances(b, a)
    scale = 1 + abs(a) + b * b
    if label in ADJACENT:
        # tie (b = 0 in region 1) resolves to C3, listed first
        curve = min(ADJACENT[label], key=lambda c: abs(dists[c]))
        waves = frozenset(PREDICTIONS[(label, curve)])
        nearest = (curve, dists[curve])
    elif label is Region.ORIGIN:
        waves = frozenset()
        nearest = (Region.ORIGIN, math.hypot(a, b))
    else:
        waves = frozenset()
        nearest = (label, dists[label])
    return RegimeReport(
        coefficients=coeffs,
        roots=roots,
        label=label,
        predicted_waves=waves,
        nearest_curve=nearest,
        within_band=abs(nearest[1]) < near_band * scale,
        **extra,
    )


def classify_region(coeffs: RegimeCoefficients, rel_tol: float = CURVE_TOL, near_band: float = NEAR_BAND) -> RegimeReport:
    """Region label and wave-type prediction from the (b, a) sign pattern.

    Predictions come from the region and the closest adjacent bifurcation
    curve; ``within_band`` reports whether the point is within
    ``near_band * (1 + |a| + b^2)`` of that curve, where the local theory
    actually applies.  Coercivity fields are left empty.
    """
    label = _label_from_signs(coeffs.a, coeffs.b, rel_tol)
    return _report(coeffs, label, near_band)


# --------------------------------------------------------------------------
# coercivity


def _stable_pair(B: float, D: float, prod: float) -> tuple[float, float]:
    """Roots (B +- sqrt(B^2 + D*c))/D given their product, without cancellation."""
    disc = math.sqrt(B * B - D * D * prod)
    if B >= 0:
        hi = (B + disc) / D
        lo = prod / hi if hi != 0 else 0.0
    else:
        lo = (B - disc) / D
        hi = prod / lo if lo != 0 else 0.0
    return hi, lo


def coercivity_thresholds(params: EquationParams, family: Family | None = None) -> ThresholdSet:
    """Roots x_- <= 0 <= x_+ of the coercivity quadratic, plus family forms."""
    if not params.alpha**2 < 4 * params.beta:
        raise InvalidParams(validate_params(params))
    alpha, beta, eps, eta = params.alpha, params.beta, params.epsilon, params.eta
    rho, delta = params.rho, params.delta
    D = 4 * beta - alpha**2
    B = alpha * delta - 2 * rho
    x_plus, x_minus = _stable_pair(B, D, -(delta**2) / D)
    family = params.family if family is None else family
    fam = {}
    if family is Family.ROSENAU_RLW:
        fam["rlw_threshold"] = eps * alpha**2 / D
    elif family is Family.ROSENAU_KDV:
        hi, lo = _stable_pair(-eps, 2.0, -(eta**2) / (4 * beta))
        fam["x_plus"], fam["x_minus"] = hi, lo
    elif family is Family.ROSENAU_KAWAHARA:
        hi, lo = _stable_pair(-rho / beta, 2.0, -(eta**2) / (4 * beta))
        fam["y_plus"], fam["y_minus"] = hi, lo
        fam["minus_rho_over_beta"] = -rho / beta
    elif family is Family.ROSENAU_RLW_KAWAHARA:
        hi, lo = _stable_pair(2 * (eta - 3) / 3, 2.0, -((1 + eta) ** 2) / 3)
        fam["z_plus"], fam["z_minus"] = hi, lo
    return ThresholdSet(x_plus=x_plus, x_minus=x_minus, family_thresholds=fam)


def coercivity_check(params: EquationParams, cs: float) -> bool:
    t = coercivity_thresholds(params)
    x = cs - params.epsilon
    return bool(x < t.x_minus or x > t.x_plus)


# --------------------------------------------------------------------------
# per-family analysis


def _near_equal(x, y):
    return abs(x - y) <= 1e-10 * (1 + abs(x) + abs(y))


def _rlw_label(params, x, thr):
    if _near_equal(x, 0.0):
        return (Region.C0 if params.alpha < 0 else Region.C1) if params.alpha != 0 else Region.ORIGIN
    if x < 0:
        return Region.REGION3
    if _near_equal(x, thr):
        return Region.C3 if params.alpha < 0 else Region.C2
    if x > thr:
        return Region.REGION1
    return Region.REGION2 if params.alpha < 0 else Region.REGION4


def _kdv_label(params, x, x_plus):
    eta = params.eta
    if _near_equal(x, 0.0):
        return (Region.C0 if eta > 0 else Region.C1) if eta != 0 else Region.ORIGIN
    if x < 0:
        return Region.REGION3
    if _near_equal(x, x_plus):
        return Region.C3 if eta > 0 else Region.C2
    if x > x_plus:
        return Region.REGION1
    return Region.REGION2 if eta > 0 else Region.REGION4


def _kawahara_label(params, x, y_plus, y_minus):
    beta, eta, rho = params.beta, params.eta, params.rho
    pole = -rho / beta  # beta*cs - gamma = 0 there
    b_pos = eta * (beta * x + rho) > 0
    if _near_equal(x, 0.0) and eta == 0:
        return Region.ORIGIN
    if _near_equal(x, 0.0):
        return Region.C0 if b_pos else Region.C1
    if _near_equal(x, y_plus) or _near_equal(x, y_minus):
        return Region.C3 if b_pos else Region.C2
    if x < y_minus or x > y_plus:
        return Region.REGION1
    if min(0.0, pole) < x < max(0.0, pole):
        return Region.REGION3
    return Region.REGION2 if b_pos else Region.REGION4


def _rlwk_label(params, x, z_plus):
    if _near_equal(x, 0.0):
        return Region.C0
    if x < 0:
        return Region.REGION3
    if _near_equal(x, z_plus):
        return Region.C3
    return Region.REGION1 if x > z_plus else Region.REGION2


_TABLE_ROWS = {
    (Family.ROSENAU_RLW, Region.REGION2): "alpha<0, 0<cs-eps<eps*alpha^2/(4beta-alpha^2): CSW",
    (Family.ROSENAU_RLW, Region.REGION3): "alpha>0, cs-eps<0: GSW (alpha<0: PTW near C0)",
    (Family.ROSENAU_RLW, Region.REGION1): "alpha>0, cs-eps-eps*alpha^2/(4beta-alpha^2)>0 small: NMCSW",
    (Family.ROSENAU_KDV, Region.REGION2): "eta>0, 0<cs-eps<x_+: CSW",
    (Family.ROSENAU_KDV, Region.REGION3): "eta<0, cs-eps<0: GSW (eta>0: PTW near C0)",
    (Family.ROSENAU_KDV, Region.REGION1): "eta<0, cs-eps-x_+>0 small: NMCSW",
    (Family.ROSENAU_KAWAHARA, Region.REGION2): "y_- < cs-eps < y_+ with b>0: CSW",
    (Family.ROSENAU_KAWAHARA, Region.REGION3): "cs-eps between 0 and -rho/beta: GSW near C1, PTW near C0",
    (Family.ROSENAU_KAWAHARA, Region.REGION1): "cs-eps<y_- or cs-eps>y_+: NMCSW near C2",
    (Family.ROSENAU_RLW_KAWAHARA, Region.REGION2): "0<cs-eps<z_+: CSW",
}


def family_regime(params: EquationParams, cs: float, family: Family | None = None,
                  rel_tol: float = CURVE_TOL, near_band: float = NEAR_BAND) -> RegimeReport:
    """Region, predicted waves and coercivity verdict for one speed.

    For tagged families the region is located through the family thresholds
    (cs - eps compared with eps*alpha^2/(4beta-alpha^2), x_+-, y_+-, z_+-),
    not through the (b, a) sign pattern, so the two routes cross-check each
    other.  Generic parameters fall back to :func:`classify_region`.
    """
    family = params.family if family is None else Family(family)
    check_family_pattern(params, family)
    report = validate_params(params)
    if not report.ok:
        raise InvalidParams(report)
    coeffs = ab_coefficients(params, cs)
    thresholds = coercivity_thresholds(params, family)
    coercive = coercivity_check(params, cs)
    x = cs - params.epsilon
    ft = thresholds.family_thresholds
    notes: list[str] = []

    if family in (Family.GENERIC,):
        label = _label_from_signs(coeffs.a, coeffs.b, rel_tol)
    else:
        if cs <= 0:
            raise UnsupportedPattern("family analysis assumes a positive speed cs")
        if family is Family.ROSENAU:
            label = Region.REGION1 if x > 0 else (Region.REGION3 if x < 0 else Region.ORIGIN)
            if x < 0:
                notes.append("b = 0: periodic waves observed experimentally for cs < eps")
        elif family is Family.ROSENAU_RLW:
            label = _rlw_label(params, x, ft["rlw_threshold"])
        elif family is Family.ROSENAU_KDV:
            label = _kdv_label(params, x, ft["x_plus"])
        elif family is Family.ROSENAU_KAWAHARA:
            label = _kawahara_label(params, x, ft["y_plus"], ft["y_minus"])
            if params.rho == 0:
                notes.append("rho = 0: CSW rows of the table additionally need beta large")
        else:
            if not (params.alpha == -1 and params.gamma == -1 and params.epsilon == 1
                    and params.beta == 1 and params.eta > 0):
                raise UnsupportedPattern(
                    "Rosenau-RLW-Kawahara analysis covers alpha=gamma=-1, eps=beta=1, eta>0 only"
                )
            label = _rlwk_label(params, x, ft["z_plus"])

    out = _report(
        coeffs, label, near_band,
        coercive=coercive, thresholds=thresholds, family=family,
        table_row=_TABLE_ROWS.get((family, label)), notes=tuple(notes),
    )
    return out
