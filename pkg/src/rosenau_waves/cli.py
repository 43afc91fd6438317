"""Command-line front end.

Exit codes: 0 ok, 1 other runtime failure, 2 invalid parameters or input,
3 iteration not converged, 4 resonant wavenumber, 5 validation failure.
"""
from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import io
from .classify import ab_coefficients, classify_region, family_regime
from .core import EquationParams, Family, parse_nonlinearity
from .errors import (
    BlowUp,
    DegenerateSpeed,
    GuessUnavailable,
    InvalidParams,
    NotConverged,
    ResonantWavenumber,
    TailBelowPrecision,
    UnsupportedPattern,
)
from .evolution import EvolveConfig, evolve, shape_error
from .solver import SolveConfig, parse_guess, solve
from .spectral import DEFAULT_L, DEFAULT_N, Grid, SpectralField, differentiate
from .validate import (
    BENCHMARKS,
    conserved_quantities,
    decay_fit,
    match_exact,
    run_validation,
    speed_amplitude_sweep,
    symmetry_defect,
)

log = logging.getLogger("rosenau_waves")

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_NOT_CONVERGED, EXIT_RESONANT, EXIT_VALIDATE = 0, 1, 2, 3, 4, 5

DEFAULTS = {
    "family": "generic",
    "alpha": 0.0,
    "beta": 1.0,
    "gamma": 0.0,
    "epsilon": 1.0,
    "eta": 0.0,
    "g": "power:1",
    "L": DEFAULT_L,
    "N": DEFAULT_N,
    "cs": None,
    "cs_range": None,
    "cs_list": None,
    "nu": None,
    "tol": 1e-12,
    "max_iter": 500,
    "guess": "auto",
    "allow_resonance": False,
    "dealias": False,
    "format": "csv",
    "benchmark": None,
    "compare_exact": False,
    "svg": False,
    "jobs": 1,
    "override": False,
    "quick": False,
    "json": False,
    "profile": None,
    "dt": 1e-3,
    "T": 10.0,
    "record_every": 1000,
}

# keys never echoed into effective-config.json
_NOT_ECHOED = {"config", "out", "verbose", "command"}


def number(text: str) -> float:
    """Float that also accepts fractions such as 45/169."""
    try:
        return float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError) as e:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from e


def cs_range(text: str) -> list[float]:
    """start:stop:step, stop included when it lies on the lattice."""
    try:
        start, stop, step = (number(t) for t in text.split(":"))
    except (ValueError, argparse.ArgumentTypeError) as e:
        raise argparse.ArgumentTypeError(f"cs range must be start:stop:step, got {text!r}") from e
    if step <= 0 or stop < start:
        raise argparse.ArgumentTypeError("cs range needs step > 0 and stop >= start")
    n = int(np.floor((stop - start) / step + 1e-9)) + 1
    return [float(np.round(start + i * step, 12)) for i in range(n)]


def cs_list(text: str) -> list[float]:
    return [number(t) for t in text.split(",") if t.strip()]


def _add_params(p):
    S = argparse.SUPPRESS
    p.add_argument("--config", help="JSON config (e.g. a previous effective-config.json); inline flags win")
    p.add_argument("--family", choices=[f.value for f in Family], default=S)
    for name in ("alpha", "beta", "gamma", "epsilon", "eta"):
        p.add_argument(f"--{name}", type=number, default=S)
    p.add_argument("--g", default=S, help="nonlinearity: power:P, cubic-quintic:R, powersum:C:D,..., derivative:A:B:M:S")


def _add_grid(p):
    S = argparse.SUPPRESS
    p.add_argument("--L", type=number, default=S, help="half length of the periodic domain")
    p.add_argument("--N", type=int, default=S, help="number of nodes (power of two)")


def _add_solver(p):
    S = argparse.SUPPRESS
    p.add_argument("--nu", type=number, default=S)
    p.add_argument("--tol", type=number, default=S)
    p.add_argument("--max-iter", dest="max_iter", type=int, default=S)
    p.add_argument("--guess", default=S, help="auto, sech2, sech4:A:W, gaussian:A:W or file:PATH")
    p.add_argument("--allow-resonance", dest="allow_resonance", action="store_true", default=S)
    p.add_argument("--dealias", action="store_true", default=S)


def _add_speeds(p, multi=True):
    S = argparse.SUPPRESS
    p.add_argument("--cs", type=number, default=S)
    if multi:
        p.add_argument("--cs-range", dest="cs_range", default=S, help="start:stop:step (inclusive)")
        p.add_argument("--cs-list", dest="cs_list", default=S, help="comma separated speeds")


def build_parser() -> argparse.ArgumentParser:
    S = argparse.SUPPRESS
    parser = argparse.ArgumentParser(prog="rosenau-waves", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="regime, predicted waves and coercivity per speed (JSON lines)")
    _add_params(p)
    _add_speeds(p)
    p.add_argument("--out", help="also write classify.json into this directory")

    p = sub.add_parser("solve", help="Petviashvili solve for one speed")
    _add_params(p)
    _add_grid(p)
    _add_solver(p)
    _add_speeds(p, multi=False)
    p.add_argument("--benchmark", choices=sorted(BENCHMARKS), default=S)
    p.add_argument("--compare-exact", dest="compare_exact", action="store_true", default=S)
    p.add_argument("--format", choices=["csv", "json"], default=S)
    p.add_argument("--svg", action="store_true", default=S)
    p.add_argument("--out", default="out")

    p = sub.add_parser("sweep", help="speed-amplitude table")
    _add_params(p)
    _add_grid(p)
    _add_solver(p)
    _add_speeds(p)
    p.add_argument("--override", action="store_true", default=S, help="solve below the coercivity threshold too")
    p.add_argument("--jobs", type=int, default=S)
    p.add_argument("--format", choices=["csv", "json"], default=S)
    p.add_argument("--out", default="out")

    p = sub.add_parser("validate", help="closed-form benchmarks and invariant checks")
    p.add_argument("--quick", action="store_true", default=S, help="coarse grid (L=60, N=256) with 1e-7 bounds")
    p.add_argument("--json", action="store_true", default=S)
    p.add_argument("--out")

    p = sub.add_parser("evolve", help="propagate a profile in time")
    _add_params(p)
    _add_grid(p)
    _add_solver(p)
    _add_speeds(p, multi=False)
    p.add_argument("--profile", default=S, help="profile.csv to start from (default: solve at --cs)")
    p.add_argument("--dt", type=number, default=S)
    p.add_argument("--T", type=number, default=S)
    p.add_argument("--record-every", dest="record_every", type=int, default=S)
    p.add_argument("--format", choices=["csv", "json"], default=S)
    p.add_argument("--out", default="out")
    return parser


def effective_config(args) -> dict:
    cfg = dict(DEFAULTS)
    if getattr(args, "config", None):
        loaded = io.read_json(args.config)
        unknown = set(loaded) - set(DEFAULTS) - {"command"}
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(sorted(unknown))}")
        cfg.update({k: v for k, v in loaded.items() if k != "command"})
    cfg.update({k: v for k, v in vars(args).items() if k not in _NOT_ECHOED})
    return cfg


def _echo(cfg: dict, command: str, keys) -> dict:
    return {"command": command, **{k: cfg[k] for k in keys}}


PARAM_KEYS = ("family", "alpha", "beta", "gamma", "epsilon", "eta", "g")
GRID_KEYS = ("L", "N")
SOLVER_KEYS = ("nu", "tol", "max_iter", "guess", "allow_resonance", "dealias")


def params_from(cfg) -> EquationParams:
    return EquationParams(
        alpha=number(str(cfg["alpha"])),
        beta=number(str(cfg["beta"])),
        gamma=number(str(cfg["gamma"])),
        epsilon=number(str(cfg["epsilon"])),
        eta=number(str(cfg["eta"])),
        family=Family(cfg["family"]),
    )


def solve_config_from(cfg) -> SolveConfig:
    guess = None if cfg["guess"] in (None, "auto") else parse_guess(cfg["guess"])
    return SolveConfig(
        nu=None if cfg["nu"] is None else float(cfg["nu"]),
        tol=float(cfg["tol"]),
        max_iter=int(cfg["max_iter"]),
        guess=guess,
        allow_resonance=bool(cfg["allow_resonance"]),
        dealias=bool(cfg["dealias"]),
    )


def speeds_from(cfg) -> list[float]:
    if cfg.get("cs_range"):
        return cs_range(cfg["cs_range"])
    if cfg.get("cs_list"):
        return cs_list(cfg["cs_list"])
    if cfg.get("cs") is not None:
        return [float(cfg["cs"])]
    raise ValueError("a speed is required (--cs, --cs-range or --cs-list)")


def _invalid(e) -> int:
    print(f"error: {e}", file=sys.stderr)
    report = getattr(e, "report", None)
    if report is not None:
        for v in report.violations:
            print(f"  violated: {v}", file=sys.stderr)
    return EXIT_INVALID


# --------------------------------------------------------------------------
# commands


def regime_dict(params, cs) -> dict:
    try:
        return family_regime(params, cs).to_dict()
    except DegenerateSpeed as e:
        return {"cs": cs, "error": str(e)}
    except UnsupportedPattern as e:
        # outside the tabulated family analysis: report the generic location
        d = classify_region(ab_coefficients(params, cs)).to_dict()
        d["note"] = str(e)
        return d


def cmd_classify(args) -> int:
    cfg = effective_config(args)
    params = params_from(cfg)
    speeds = speeds_from(cfg)
    from .core import check_family_pattern, validate_params

    report = validate_params(params)
    if not report.ok:
        return _invalid(InvalidParams(report))
    check_family_pattern(params, params.family)
    records = [regime_dict(params, cs) for cs in speeds]
    for r in records:
        print(io.json_line(r))
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        io.write_json(out / "classify.json", records)
        io.write_json(out / "effective-config.json",
                      _echo(cfg, "classify", PARAM_KEYS + ("cs", "cs_range", "cs_list")))
    return EXIT_OK


def _write_profile(out: Path, phi: SpectralField, fmt: str, svg: bool):
    X = phi.grid.x
    u = phi.values
    ux = differentiate(phi, 1).values
    uxx = differentiate(phi, 2).values
    if fmt == "json":
        io.write_json(out / "profile.json", {"X": X, "u": u, "u'": ux, "u''": uxx})
    else:
        io.write_csv(out / "profile.csv", ["X", "u", "u'", "u''"], [X, u, ux, uxx])
    io.write_dat(out / "profile.dat", [X, u], "X u")
    io.write_dat(out / "phase.dat", [u, ux], "u u'")
    if svg:
        from .plot import write_svg

        write_svg(out / "profile.svg", X, u, "X", "u")
        write_svg(out / "phase.svg", u, ux, "u", "u'")


def _write_trace(out: Path, trace, fmt: str):
    cols = [trace.n, trace.error, trace.stab_err, trace.res, trace.M]
    if fmt == "json":
        io.write_json(out / "trace.json", dict(zip(["n", "Error", "StabErr", "Res", "M"], cols)))
    else:
        io.write_csv(out / "trace.csv", ["n", "Error", "StabErr", "Res", "M"], cols)


def _solve_report(result, params, cs, compare_exact) -> dict:
    last = result.trace.last()
    rep = {
        "cs": cs,
        "params": params.as_dict(),
        "g": result.spec.to_dict(),
        "converged": result.converged,
        "iterations": result.iterations,
        "amplitude": result.amplitude,
        "nu": result.nu,
        "final": {"Error": last["error"], "StabErr": last["stab_err"], "Res": last["res"], "M": last["M"]},
        "symmetry_defect": symmetry_defect(result.profile),
        "resonant": result.resonant,
    }
    coeffs = None
    try:
        coeffs = ab_coefficients(params, cs)
        rep["regime"] = regime_dict(params, cs)
    except DegenerateSpeed as e:
        rep["regime"] = {"error": str(e)}
    try:
        rep["decay_fit"] = decay_fit(result.profile, coeffs).to_dict()
    except TailBelowPrecision as e:
        rep["decay_fit"] = {"error": str(e)}
    try:
        V, H = conserved_quantities(result.profile, params, result.spec)
        rep["V"], rep["H"] = V, H
    except Exception:
        pass
    if compare_exact:
        w = match_exact(params, cs, result.spec)
        if w is None:
            rep["linf_vs_exact"] = None
            rep["exact_note"] = "no closed-form wave for these parameters"
        else:
            exact = w.sample(result.profile.grid)
            rep["linf_vs_exact"] = float(np.max(np.abs(result.profile.values - exact.values)))
            rep["exact_amplitude"] = w.amplitude
    return rep


def _setup_solve(cfg):
    if cfg.get("benchmark"):
        w = BENCHMARKS[cfg["benchmark"]]()
        p = w.params
        cfg.update({"family": p.family.value, "alpha": p.alpha, "beta": p.beta, "gamma": p.gamma,
                    "epsilon": p.epsilon, "eta": p.eta, "g": "power:1"})
        if cfg.get("cs") is None:
            cfg["cs"] = w.cs
    params = params_from(cfg)
    if cfg.get("cs") is None:
        raise ValueError("--cs (or --benchmark) is required")
    return params, float(cfg["cs"])


def cmd_solve(args) -> int:
    cfg = effective_config(args)
    params, cs = _setup_solve(cfg)
    spec = parse_nonlinearity(cfg["g"])
    grid = Grid(float(cfg["L"]), int(cfg["N"]))
    config = solve_config_from(cfg)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    io.write_json(out / "effective-config.json",
                  _echo(cfg, "solve", PARAM_KEYS + GRID_KEYS + SOLVER_KEYS
                        + ("cs", "benchmark", "compare_exact", "format", "svg")))
    code = EXIT_OK
    try:
        result = solve(params, cs, spec, grid, config)
    except NotConverged as e:
        result = e.result
        print(f"error: {e}", file=sys.stderr)
        code = EXIT_NOT_CONVERGED
    _write_profile(out, result.profile, cfg["format"], cfg["svg"])
    _write_trace(out, result.trace, cfg["format"])
    rep = _solve_report(result, params, cs, cfg["compare_exact"])
    io.write_json(out / "report.json", rep)
    summary = f"cs={cs:.10g} converged={result.converged} iterations={result.iterations} " \
              f"amplitude={result.amplitude:.12g}"
    if rep.get("linf_vs_exact") is not None:
        summary += f" linf_vs_exact={rep['linf_vs_exact']:.3e}"
    print(summary)
    return code


def cmd_sweep(args) -> int:
    cfg = effective_config(args)
    params = params_from(cfg)
    spec = parse_nonlinearity(cfg["g"])
    grid = Grid(float(cfg["L"]), int(cfg["N"]))
    speeds = speeds_from(cfg)
    rows = speed_amplitude_sweep(params, spec, speeds, grid, solve_config_from(cfg),
                                 override=bool(cfg["override"]), jobs=int(cfg["jobs"]))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    io.write_json(out / "effective-config.json",
                  _echo(cfg, "sweep", PARAM_KEYS + GRID_KEYS + SOLVER_KEYS
                        + ("cs", "cs_range", "cs_list", "override", "jobs", "format")))
    if cfg["format"] == "json":
        io.write_json(out / "sweep.json", [r.to_dict() for r in rows])
    else:
        nan = float("nan")
        io.write_csv(out / "sweep.csv", ["cs", "amplitude", "converged", "coercive", "iterations", "status"], [
            [r.cs for r in rows],
            [nan if r.amplitude is None else r.amplitude for r in rows],
            [int(r.converged) for r in rows],
            [int(r.coercive) for r in rows],
            [-1 if r.iterations is None else r.iterations for r in rows],
            [r.status for r in rows],
        ])
    ok = [r for r in rows if r.converged]
    io.write_dat(out / "sweep.dat", [[r.cs for r in ok], [r.amplitude for r in ok]], "cs amplitude")
    for r in rows:
        amp = "-" if r.amplitude is None else f"{r.amplitude:.12g}"
        print(f"{r.cs:12.6g}  {amp:>20}  {r.status}")
    return EXIT_OK


def cmd_validate(args) -> int:
    quick = bool(getattr(args, "quick", False))
    rows = run_validation(quick=quick)
    failed = [r for r in rows if not r.passed]
    if getattr(args, "json", False):
        print(io.dumps({"quick": quick, "passed": not failed, "checks": [r.to_dict() for r in rows]}))
    else:
        width = max(len(r.name) for r in rows)
        for r in rows:
            flag = "PASS" if r.passed else "FAIL"
            print(f"{flag}  {r.name:<{width}}  {r.value:10.3e}  <= {r.bound:.0e}")
        print(f"{len(rows) - len(failed)}/{len(rows)} checks passed")
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        io.write_json(out / "validate.json", [r.to_dict() for r in rows])
    return EXIT_VALIDATE if failed else EXIT_OK


def cmd_evolve(args) -> int:
    cfg = effective_config(args)
    params = params_from(cfg)
    spec = parse_nonlinearity(cfg["g"])
    grid = Grid(float(cfg["L"]), int(cfg["N"]))
    cs = cfg.get("cs")
    if cfg.get("profile"):
        x, u = io.read_profile(cfg["profile"])
        if len(u) != grid.N:
            raise ValueError(f"profile has {len(u)} nodes, grid has N={grid.N}")
        u0 = SpectralField(grid, u)
    elif cs is not None:
        try:
            u0 = solve(params, float(cs), spec, grid, solve_config_from(cfg)).profile
        except NotConverged as e:
            print(f"error: {e}", file=sys.stderr)
            return EXIT_NOT_CONVERGED
    else:
        raise ValueError("evolve needs --profile or --cs")
    econf = EvolveConfig(dt=float(cfg["dt"]), T=float(cfg["T"]), record_every=int(cfg["record_every"]))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    io.write_json(out / "effective-config.json",
                  _echo(cfg, "evolve", PARAM_KEYS + GRID_KEYS + SOLVER_KEYS
                        + ("cs", "profile", "dt", "T", "record_every", "format")))
    traj = evolve(u0, params, spec, econf)
    t_col = np.repeat(traj.times, grid.N)
    x_col = np.tile(grid.x, len(traj.times))
    u_col = np.concatenate(traj.snapshots)
    if cfg["format"] == "json":
        io.write_json(out / "trajectory.json", {"t": traj.times, "X": grid.x, "u": traj.snapshots})
    else:
        io.write_csv(out / "trajectory.csv", ["t", "X", "u"], [t_col, x_col, u_col])
        io.write_csv(out / "invariants.csv", ["t", "V", "H"], [traj.times, traj.V, traj.H])
    rep = {"T": econf.T, "dt": econf.dt, "steps": econf.steps,
           "V_drift": traj.drift("V"), "H_drift": traj.drift("H")}
    if cs is not None:
        rep["shape_error"] = shape_error(u0, traj.final, float(cs), econf.T).to_dict()
    io.write_json(out / "report.json", rep)
    print(io.dumps(rep))
    return EXIT_OK


COMMANDS = {
    "classify": cmd_classify,
    "solve": cmd_solve,
    "sweep": cmd_sweep,
    "validate": cmd_validate,
    "evolve": cmd_evolve,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (InvalidParams, UnsupportedPattern, GuessUnavailable, DegenerateSpeed) as e:
        return _invalid(e)
    except ResonantWavenumber as e:
        print(f"error: {e}", file=sys.stderr)
        print(f"resonant k = {e.k:.12g}", file=sys.stderr)
        return EXIT_RESONANT
    except (ValueError, argparse.ArgumentTypeError, OSError) as e:
        return _invalid(e)
    except BlowUp as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
