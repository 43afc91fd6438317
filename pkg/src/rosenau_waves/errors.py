"""Exception hierarchy shared by all modules."""


class RosenauError(Exception):
    """Base class for every error raised by this package."""


class InvalidParams(RosenauError, ValueError):
    """Equation coefficients fail the well-posedness checks."""

    def __init__(self, report):
        self.report = report
        super().__init__("invalid equation parameters: " + "; ".join(report.violations))


class UnsupportedPattern(RosenauError, ValueError):
    """Family tag and coefficient pattern disagree."""


class DegenerateSpeed(RosenauError, ValueError):
    """beta*cs - gamma vanishes, so the profile ODE drops order."""


class ResonantWavenumber(RosenauError):
    """The profile-equation symbol vanishes (or changes sign) on the grid.

    ``k`` is the real wavenumber where the symbol crosses zero, or the grid
    wavenumber of smallest ``|Q|`` when no crossing exists.
    """

    def __init__(self, k, min_abs):
        self.k = float(k)
        self.min_abs = float(min_abs)
        super().__init__(f"resonant wavenumber k*={self.k:.6g} (min |Q| on grid = {self.min_abs:.3g})")


class GuessUnavailable(RosenauError, ValueError):
    """Requested initial guess cannot be built for these coefficients."""


class ZeroDenominator(RosenauError, ZeroDivisionError):
    """Pairing <g(phi), phi> vanishes in the stabilizing factor."""


class NotConverged(RosenauError):
    """Iteration hit max_iter; the partial result is attached."""

    def __init__(self, result):
        self.result = result
        last = result.trace.last()
        super().__init__(
            f"Petviashvili iteration did not converge in {result.iterations} iterations "
            f"(Error={last['error']:.3g}, |1-M|={last['stab_err']:.3g}, RES={last['res']:.3g})"
        )


class ConstraintViolated(RosenauError, ValueError):
    """Closed-form benchmark constraints cannot be met."""


class NoPrimitive(RosenauError, ValueError):
    """Nonlinearity depends on derivatives, so G(u) is not defined."""


class TailBelowPrecision(RosenauError):
    """Profile tail is lost in round-off across the fit window."""


class BlowUp(RosenauError):
    """Time integration produced ||u||_inf above the blow-up threshold."""

    def __init__(self, t, norm):
        self.t = t
        self.norm = norm
        super().__init__(f"solution blew up at t={t:.6g} (||u||_inf={norm:.3g})")
