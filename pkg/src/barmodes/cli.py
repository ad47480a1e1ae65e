"""Command-line front end: spectrum tables, stability maps, feedback sweeps
and mode shapes as reproducible CSV files.

Verbs: spectrum | stability | sweep | modeshape, each with
--config PATH (INI-style), --out PATH (default stdout) and --strict.
Exit codes: 0 ok, 2 config error, 3 solver non-convergence under --strict.

Every output starts with `# key = value` comment lines echoing the full
resolved parameter set, so a file re-identifies the run that made it; the
same config always produces byte-identical output.
"""

from __future__ import annotations

import argparse
import configparser
import math
import sys
from dataclasses import dataclass, replace

from . import asymptotic, conservative, fundsys
from .params import DimensionlessParams, PhysicalParams, to_dimensionless, validate


class ConfigError(Exception):
    """Anything wrong with the config file; mapped to exit code 2."""


_PHYSICAL_KEYS = ("rho", "S", "E", "beta", "b", "c", "d", "m", "l")
_DIMLESS_KEYS = ("eps1", "mu", "nu", "eta", "delta")

# [run] keys: name -> (parser, default)
_RUN_KEYS = {
    "modes": (int, 5),
    "omega_max": (float, 20.0),
    "step": (float, 1.0 / 2000.0),
    "subintervals": (int, 8),
    "nu_min": (float, 0.0),
    "nu_max": (float, 0.1),
    "nu_step": (float, 0.005),
    "grid_points": (int, 201),
    "mode": (int, 1),
}


@dataclass(frozen=True)
class RunConfig:
    dimensionless: DimensionlessParams
    physical: PhysicalParams | None   # kept only for the config echo
    modes: int
    omega_max: float
    step: float
    subintervals: int
    nu_min: float
    nu_max: float
    nu_step: float
    grid_points: int
    mode: int

    def solve_options(self) -> fundsys.SolveOptions:
        return fundsys.SolveOptions(step=self.step,
                                    subintervals=self.subintervals)

    def nu_grid(self) -> list[float]:
        count = int(math.floor((self.nu_max - self.nu_min) / self.nu_step
                               + 1e-9)) + 1
        return [self.nu_min + i * self.nu_step for i in range(count)]


def _parse_section(section, keys, kind):
    values = {}
    for key in keys:
        if key not in section:
            raise ConfigError(f"[{section.name}] is missing key '{key}'")
        raw = section[key]
        try:
            values[key] = kind(raw)
        except ValueError:
            raise ConfigError(
                f"[{section.name}] {key} = {raw!r} is not a number") from None
    for key in section:
        if key not in keys:
            raise ConfigError(f"[{section.name}] has unknown key '{key}'")
    return values


def load_config(path: str) -> RunConfig:
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",),
                                       interpolation=None)
    parser.optionxform = str  # keys are case-sensitive (S and E are uppercase)
    try:
        with open(path, encoding="utf-8") as handle:
            parser.read_file(handle)
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from None
    except configparser.Error as exc:
        raise ConfigError(f"malformed config file: {exc}") from None

    known = {"physical", "dimensionless", "run"}
    for name in parser.sections():
        if name not in known:
            raise ConfigError(f"unknown section [{name}]")

    has_phys = parser.has_section("physical")
    has_dim = parser.has_section("dimensionless")
    if has_phys == has_dim:
        raise ConfigError(
            "exactly one of [physical] or [dimensionless] must be present")

    physical = None
    if has_phys:
        values = _parse_section(parser["physical"], _PHYSICAL_KEYS, float)
        try:
            physical = PhysicalParams(**values)
        except ValueError as exc:
            raise ConfigError(f"[physical] {exc}") from None
        dp = to_dimensionless(physical)
    else:
        values = _parse_section(parser["dimensionless"], _DIMLESS_KEYS, float)
        dp = DimensionlessParams(**values)

    violations = validate(dp)
    if violations:
        raise ConfigError("invalid parameters: " + "; ".join(violations))

    run = {key: default for key, (_, default) in _RUN_KEYS.items()}
    if parser.has_section("run"):
        section = parser["run"]
        for key in section:
            if key not in _RUN_KEYS:
                raise ConfigError(f"[run] has unknown key '{key}'")
            kind = _RUN_KEYS[key][0]
            try:
                run[key] = kind(section[key])
            except ValueError:
                raise ConfigError(
                    f"[run] {key} = {section[key]!r} is not a valid "
                    f"{kind.__name__}") from None

    checks = [
        (run["modes"] >= 0, "modes must be >= 0"),
        (run["omega_max"] > 0, "omega_max must be positive"),
        (run["step"] > 0, "step must be positive"),
        (run["subintervals"] >= 1, "subintervals must be >= 1"),
        (run["nu_min"] >= 0, "nu_min must be >= 0"),
        (run["nu_step"] > 0, "nu_step must be positive"),
        (run["nu_max"] >= run["nu_min"], "nu_max must be >= nu_min"),
        (run["grid_points"] >= 2, "grid_points must be >= 2"),
        (run["mode"] >= 1, "mode must be >= 1"),
    ]
    for ok, message in checks:
        if not ok:
            raise ConfigError(f"[run] {message}")

    return RunConfig(dimensionless=dp, physical=physical, **run)


def _fmt(value) -> str:
    if value == 0.0:
        value = 0.0  # keep -0.0 from printing as "-0"
    return "%.12g" % value


def _echo_lines(config: RunConfig, analysis: str) -> list[str]:
    pairs = [("analysis", analysis),
             ("params", "physical" if config.physical else "dimensionless")]
    if config.physical:
        pairs += [(k, _fmt(getattr(config.physical, k))) for k in _PHYSICAL_KEYS]
    dp = config.dimensionless
    pairs += [(k, _fmt(getattr(dp, k))) for k in _DIMLESS_KEYS]
    pairs += [("modes", str(config.modes)),
              ("omega_max", _fmt(config.omega_max)),
              ("step", _fmt(config.step)),
              ("subintervals", str(config.subintervals)),
              ("nu_min", _fmt(config.nu_min)),
              ("nu_max", _fmt(config.nu_max)),
              ("nu_step", _fmt(config.nu_step)),
              ("grid_points", str(config.grid_points)),
              ("mode", str(config.mode))]
    return [f"# {key} = {value}" for key, value in pairs]


def _conservative_roots(config, count):
    if count == 0:
        return []
    return conservative.find_roots(config.dimensionless, config.omega_max,
                                   max_count=count)


def run_spectrum(config: RunConfig):
    """Rows (index, omega_conservative, q/omega asymptotic, q/omega numeric,
    delta_hat) for the first `modes` modes; numeric cells NA when the direct
    search fails to converge."""
    dp = config.dimensionless
    opts = config.solve_options()
    header = ("index,omega_conservative,q_asymptotic,omega_asymptotic,"
              "q_numeric,omega_numeric,delta_hat")
    rows, all_converged = [], True
    for root in _conservative_roots(config, config.modes):
        ev = asymptotic.corrected_eigenvalue(root.omega, dp)
        seed = fundsys.SpectralPoint(q=ev.q, omega=root.omega)
        point = fundsys.find_eigenvalue(dp, seed, opts)
        if point.converged:
            q_num, omega_num = _fmt(point.q), _fmt(point.omega)
        else:
            q_num, omega_num = "NA", "NA"
            all_converged = False
        rows.append(",".join([str(root.index), _fmt(root.omega), _fmt(ev.q),
                              _fmt(ev.omega), q_num, omega_num,
                              _fmt(point.delta_value)]))
    return header, rows, all_converged


def run_stability(config: RunConfig):
    """The stability map over the nu grid: closed-form boundary frequency
    (NA when none exists), critical feedback per mode ("never-excited" when
    the mode cannot be driven unstable), and 0/1 excitation flags."""
    dp = config.dimensionless
    roots = _conservative_roots(config, config.modes)

    crit_cells = []
    for root in roots:
        try:
            nu_crit = asymptotic.critical_feedback(root.omega, dp)
        except ZeroDivisionError:
            crit_cells.append("NA")
            continue
        crit_cells.append("never-excited" if nu_crit is None else _fmt(nu_crit))

    header = "nu,omega_boundary" \
        + "".join(f",nu_crit_{r.index}" for r in roots) \
        + "".join(f",excited_{r.index}" for r in roots)
    rows = []
    for nu in config.nu_grid():
        at_nu = replace(dp, nu=nu)
        wb = asymptotic.boundary_frequency(nu, dp)
        flags = ["1" if asymptotic.excitation_indicator(r.omega, at_nu).excited
                 else "0" for r in roots]
        cells = [_fmt(nu), "NA" if wb is None else _fmt(wb)]
        rows.append(",".join(cells + crit_cells + flags))
    return header, rows, True


def run_sweep(config: RunConfig):
    """Wide rows (nu, q_k, omega_k ..., converged_k ...) tracking the first
    `modes` eigenvalues across the nu grid."""
    modes = tuple(range(1, config.modes + 1))
    header = "nu" \
        + "".join(f",q_{k},omega_{k}" for k in modes) \
        + "".join(f",converged_{k}" for k in modes)
    if not modes:
        return header, [], True
    try:
        sweep = fundsys.sweep_feedback(config.dimensionless, config.nu_grid(),
                                       modes=modes, omega_max=config.omega_max,
                                       options=config.solve_options())
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    rows, all_converged = [], True
    for i in range(0, len(sweep), len(modes)):
        group = sweep[i:i + len(modes)]
        cells = [_fmt(group[0].nu)]
        for row in group:
            cells += [_fmt(row.q), _fmt(row.omega)]
        for row in group:
            cells.append("1" if row.converged else "0")
            all_converged &= row.converged
        rows.append(",".join(cells))
    return header, rows, all_converged


def run_modeshape(config: RunConfig):
    """Normalized displacement profile (xbar, u1, u2) of the configured mode
    at the configured parameters."""
    dp = config.dimensionless
    roots = _conservative_roots(config, config.mode)
    if len(roots) < config.mode:
        raise ConfigError(f"mode {config.mode} has no conservative frequency "
                          f"below omega_max = {_fmt(config.omega_max)}")
    w0 = roots[config.mode - 1].omega
    ev = asymptotic.corrected_eigenvalue(w0, dp)
    point = fundsys.find_eigenvalue(dp, fundsys.SpectralPoint(q=ev.q, omega=w0),
                                    config.solve_options())
    header = "xbar,u1,u2"
    if not point.converged:
        return header, [], False
    shape = fundsys.mode_shape(point, dp, resolution=config.grid_points,
                               step=config.step)
    rows = [",".join([_fmt(x), _fmt(u1), _fmt(u2)])
            for x, u1, u2 in zip(shape.grid, shape.u1, shape.u2)]
    return header, rows, True


_ANALYSES = {
    "spectrum": run_spectrum,
    "stability": run_stability,
    "sweep": run_sweep,
    "modeshape": run_modeshape,
}


def _write_output(path, lines):
    text = "".join(line + "\n" for line in lines)
    if path == "-":
        sys.stdout.write(text)
    else:
        # newline="" keeps the line endings LF on every platform
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="barmodes",
        description="Eigenvalue analyses of a damped bar with an end mass "
                    "under velocity feedback; results as CSV.")
    sub = parser.add_subparsers(dest="analysis", required=True)
    descriptions = {
        "spectrum": "first modes via conservative, asymptotic and direct search",
        "stability": "boundary frequency, critical feedback and excitation map",
        "sweep": "eigenvalue branches across the feedback grid",
        "modeshape": "normalized displacement profile of one mode",
    }
    for name, text in descriptions.items():
        cmd = sub.add_parser(name, help=text)
        cmd.add_argument("--config", required=True, metavar="PATH",
                         help="INI config file")
        cmd.add_argument("--out", default="-", metavar="PATH",
                         help="output CSV path (default: stdout)")
        cmd.add_argument("--strict", action="store_true",
                         help="exit 3 if any eigenvalue search fails to converge")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
        header, rows, all_converged = _ANALYSES[args.analysis](config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    _write_output(args.out, _echo_lines(config, args.analysis) + [header] + rows)
    if not all_converged:
        print("warning: at least one eigenvalue search did not converge",
              file=sys.stderr)
        if args.strict:
            return 3
    return 0
