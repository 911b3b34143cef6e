"""Command-line front end.

Subcommands ``eval``, ``sweep``, ``spectrum``, ``compare`` and
``specfun-selftest``.  Parameters come from an optional INI-style config
file (sections ``[material]``, ``[thermal]``, ``[run]``) and are overridden
by flags.  Exit codes: 0 success, 1 configuration error, 2 computation
error, 3 accuracy error.
"""

import argparse
import configparser
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from itertools import combinations

import numpy as np

from . import __version__
from .constants import sphere_volume_nm3, tesla_to_omega_c
from .errors import AccuracyError, ConfigError, TorqueError
from .oracle import torque_integrand, torque_quadrature
from .oscillator import OscillatorParams, im_alpha_xx, re_alpha_xy, re_alpha_yx
from .series import high_temp_series, low_temp_asymptotic, series_radius
from .selftest import run_selftest
from .torque import (ThermalState, evaluate_stationary, log_term_coefficient,
                     to_si_torque, torque_rot1, torque_rotating)

METHODS = ("closed", "series_high", "series_low", "quadrature", "all")
OUTPUTS = ("csv", "json", "table")
SWEEP_AXES = ("T_body", "omega_c", "eta", "b_field")
MAX_GRID = 1_000_000
THREADS_ENV = "NREQ_TORQUE_THREADS"

_FLOAT_KEYS = {
    "material": ("omega_p", "eta", "omega_c", "b_field", "omega_0", "radius_nm", "volume_nm3"),
    "thermal": ("T_env", "T_body", "omega_rot"),
    "run": ("tolerance",),
}
_DEFAULTS = dict(omega_p=9.0, eta=0.035, omega_0=0.0, T_env=300.0, T_body=600.0,
                 omega_rot=0.0, method="closed", output="table", tolerance=1e-12)


@dataclass(frozen=True)
class RunConfig:
    """Validated run parameters.  Energies in eV, temperatures in K."""

    omega_p: float = 9.0
    eta: float = 0.035
    omega_c: float = None
    b_field: float = None
    omega_0: float = 0.0
    radius_nm: float = None
    volume_nm3: float = None
    T_env: float = 300.0
    T_body: float = 600.0
    omega_rot: float = 0.0
    method: str = "closed"
    output: str = "table"
    tolerance: float = 1e-12

    def __post_init__(self):
        if (self.omega_c is None) == (self.b_field is None):
            raise ConfigError("give exactly one of omega_c and b_field")
        if (self.radius_nm is None) == (self.volume_nm3 is None):
            raise ConfigError("give exactly one of radius_nm and volume_nm3")
        if not 1e-14 <= self.tolerance <= 1e-2:
            raise ConfigError(f"tolerance must lie in [1e-14, 1e-2], got {self.tolerance}")
        if self.method not in METHODS:
            raise ConfigError(f"method must be one of {METHODS}, got {self.method!r}")
        if self.output not in OUTPUTS:
            raise ConfigError(f"output must be one of {OUTPUTS}, got {self.output!r}")
        for name in ("T_env", "T_body"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ConfigError(f"{name} must be a positive temperature, got {value}")

    @property
    def resolved_omega_c(self):
        if self.omega_c is not None:
            return self.omega_c
        return tesla_to_omega_c(self.b_field)

    @property
    def volume(self):
        if self.volume_nm3 is not None:
            return self.volume_nm3
        return sphere_volume_nm3(self.radius_nm)

    def params(self):
        try:
            return OscillatorParams(omega_p=self.omega_p, eta=self.eta,
                                    omega_c=self.resolved_omega_c,
                                    omega_0=self.omega_0, volume=self.volume)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def state(self):
        return ThermalState.from_kelvin(self.T_env, self.T_body, self.omega_rot)

    def echo(self):
        out = {k: v for k, v in asdict(self).items() if v is not None}
        out["omega_c_eV"] = self.resolved_omega_c
        out["volume_nm3_resolved"] = self.volume
        return out


# --- configuration --------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(f"{self.prog}: {message}")


def _read_config_file(path):
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except (OSError, configparser.Error) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    values = {}
    known = {k for keys in _FLOAT_KEYS.values() for k in keys} | {"method", "output"}
    for section in parser.sections():
        for key, raw in parser.items(section):
            if key not in known:
                raise ConfigError(f"unknown config key [{section}] {key}")
            if key in ("method", "output"):
                values[key] = raw.strip()
                continue
            try:
                values[key] = float(raw)
            except ValueError as exc:
                raise ConfigError(f"config key {key} is not a number: {raw!r}") from exc
    return values


_PAIRS = (("omega_c", "b_field"), ("radius_nm", "volume_nm3"))


def build_config(args):
    """Merge defaults, config file and flags into a :class:`RunConfig`."""
    values = dict(_DEFAULTS)
    if getattr(args, "config", None):
        values.update(_read_config_file(args.config))
    flags = {k: getattr(args, k) for k in
             ("omega_p", "eta", "omega_c", "b_field", "omega_0", "radius_nm",
              "volume_nm3", "T_env", "T_body", "omega_rot", "method", "output")
             if getattr(args, k, None) is not None}
    if getattr(args, "tol", None) is not None:
        flags["tolerance"] = args.tol
    for pair in _PAIRS:
        given = [k for k in pair if k in flags]
        if len(given) == 2:
            raise ConfigError(f"flags --{given[0]} and --{given[1]} are mutually exclusive")
        if given:
            for k in pair:
                values.pop(k, None)
    values.update(flags)
    if "omega_c" not in values and "b_field" not in values:
        values["omega_c"] = 1e-4
    if "radius_nm" not in values and "volume_nm3" not in values:
        values["radius_nm"] = 100.0
    return RunConfig(**values)


# --- computations ---------------------------------------------------------

@dataclass
class MethodRow:
    method: str
    tau_eV: float = math.nan
    tau_Nm: float = math.nan
    cpv_eV: float = math.nan
    resonance_eV: float = math.nan
    error_estimate_eV: float = math.nan
    terms_used: int = None
    radius_ok: bool = None
    converged: bool = None
    error: str = ""
    extra: dict = field(default_factory=dict)


def _series_row(name, result):
    return MethodRow(method=name, tau_eV=result.value, tau_Nm=to_si_torque(result.value),
                     error_estimate_eV=abs(result.last_term), terms_used=result.terms_used,
                     radius_ok=result.radius_ok, converged=result.converged)


def _evaluate_method(method, params, state, tol):
    if method == "closed":
        b = evaluate_stationary(params, state)
        return MethodRow(method="closed", tau_eV=b.total, tau_Nm=to_si_torque(b.total),
                         cpv_eV=b.cpv_part, resonance_eV=b.resonance_part,
                         error_estimate_eV=b.error_estimate)
    if method == "series_high":
        return _series_row("series_high", high_temp_series(params, state, tol=tol))
    if method == "series_low":
        return _series_row("series_low", low_temp_asymptotic(params, state, tol=tol))
    if method == "quadrature":
        q = torque_quadrature(params, state, tol=max(tol, 1e-12))
        return MethodRow(method="quadrature", tau_eV=q.value, tau_Nm=to_si_torque(q.value),
                         error_estimate_eV=q.abs_error_estimate,
                         extra={"subdivisions": q.subdivisions, "cutoff_omega": q.cutoff_omega})
    raise ConfigError(f"unknown method {method!r}")


def _methods_for(config, params, state):
    if config.method != "all":
        return [config.method]
    series = "series_high" if series_radius(params, state) < 1.0 else "series_low"
    return ["closed", series, "quadrature"]


def _max_pairwise_deviation(rows):
    vals = [r.tau_eV for r in rows if not r.error and math.isfinite(r.tau_eV)]
    if len(vals) < 2:
        return None
    return max(abs(a - b) for a, b in combinations(vals, 2))


# --- output ---------------------------------------------------------------

def _num(x):
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    return "{:.16e}".format(x)


def _json_safe(x):
    if isinstance(x, float) and not math.isfinite(x):
        return None
    if isinstance(x, dict):
        return {k: _json_safe(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_json_safe(v) for v in x]
    return x


def _render_csv(columns, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([v if isinstance(v, str) else _num(v) for v in (row[c] for c in columns)])
    return buf.getvalue()


def _render_table(columns, rows, header_lines=()):
    cells = [[v if isinstance(v, str) else ("" if v is None else
              ("{:.10e}".format(v) if isinstance(v, float) else str(v)))
              for v in (row[c] for c in columns)] for row in rows]
    widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(columns)]
    lines = list(header_lines)
    lines.append("  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip())
    lines.append("  ".join("-" * w for w in widths))
    for r in cells:
        lines.append("  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _render(fmt, command, config, columns, rows, summary, timestamp):
    if fmt == "csv":
        return _render_csv(columns, rows)
    if fmt == "json":
        doc = {"tool": "nreq-torque", "version": __version__, "command": command}
        if timestamp:
            doc["timestamp"] = timestamp
        doc["config"] = config.echo()
        doc["rows"] = [{c: row[c] for c in columns} for row in rows]
        doc.update(summary)
        return json.dumps(_json_safe(doc), indent=2) + "\n"
    header = [f"nreq-torque {command}"]
    if timestamp:
        header.append(f"timestamp: {timestamp}")
    echo = config.echo()
    header.append("config: " + ", ".join(f"{k}={echo[k]}" for k in sorted(echo)))
    for k, v in summary.items():
        header.append(f"{k}: {v if not isinstance(v, float) else format(v, '.10e')}")
    header.append("")
    return _render_table(columns, rows, header)


def _emit(args, text):
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            raise ConfigError(f"cannot write {args.out}: {exc}") from exc
    else:
        sys.stdout.write(text)


def _timestamp(args):
    if args.no_timestamp:
        return None
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _row_dict(row):
    d = asdict(row)
    extra = d.pop("extra")
    d.update(extra)
    return d


# --- subcommands ----------------------------------------------------------

def cmd_eval(args):
    config = build_config(args)
    params, state = config.params(), config.state()
    rows = [_evaluate_method(m, params, state, config.tolerance)
            for m in _methods_for(config, params, state)]
    summary = {"omega_c_eV": params.omega_c,
               "log_term_coefficient_Nm": to_si_torque(log_term_coefficient(params))}
    dev = _max_pairwise_deviation(rows)
    if dev is not None:
        summary["max_pairwise_deviation_eV"] = dev
    if state.omega_rot != 0.0:
        tau1 = torque_rot1(params, state)
        total = torque_rotating(params, state)
        summary.update(tau1=tau1, tau_rotating_eV=total, tau_rotating_Nm=to_si_torque(total))
    columns = ["method", "tau_eV", "tau_Nm", "cpv_eV", "resonance_eV",
               "error_estimate_eV", "terms_used", "radius_ok", "converged"]
    text = _render(config.output, "eval", config, columns,
                   [_row_dict(r) for r in rows], summary, _timestamp(args))
    _emit(args, text)
    return 0


def parse_grid(spec):
    """Grid from ``start:stop:num`` (linear), ``start:stop:num:log`` or a comma list."""
    spec = spec.strip()
    try:
        if ":" in spec:
            parts = spec.split(":")
            if len(parts) not in (3, 4) or (len(parts) == 4 and parts[3] != "log"):
                raise ValueError
            start, stop, num = float(parts[0]), float(parts[1]), int(parts[2])
            if num < 1:
                raise ValueError
            if num > MAX_GRID:
                raise ConfigError(f"grid has {num} points; the limit is {MAX_GRID}")
            if len(parts) == 4:
                if not (start > 0 and stop > 0):
                    raise ConfigError("log grid needs positive bounds")
                return np.geomspace(start, stop, num).tolist()
            return np.linspace(start, stop, num).tolist()
        values = [float(v) for v in spec.split(",") if v.strip()]
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"bad grid spec {spec!r}") from exc
    if not values:
        raise ConfigError("empty grid")
    if len(values) > MAX_GRID:
        raise ConfigError(f"grid has {len(values)} points; the limit is {MAX_GRID}")
    return values


def _thread_count(n_points):
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        limit = os.cpu_count() or 1
    else:
        try:
            limit = int(raw)
        except ValueError as exc:
            raise ConfigError(f"{THREADS_ENV} must be an integer, got {raw!r}") from exc
        if limit < 1:
            raise ConfigError(f"{THREADS_ENV} must be >= 1, got {limit}")
    return max(1, min(limit, n_points))


def _sweep_point(config, axis, value):
    overrides = {"b_field": None, "omega_c": None} if axis in ("omega_c", "b_field") else {}
    overrides[axis] = value
    row = {"axis_value": value, "tau_eV": math.nan, "cpv_eV": math.nan,
           "resonance_eV": math.nan, "method": config.method, "error_estimate_eV": math.nan,
           "error": ""}
    try:
        cfg = RunConfig(**{**asdict(config), **overrides})
        params, state = cfg.params(), cfg.state()
        r = _evaluate_method(config.method, params, state, config.tolerance)
        row.update(tau_eV=r.tau_eV, cpv_eV=r.cpv_eV, resonance_eV=r.resonance_eV,
                   error_estimate_eV=r.error_estimate_eV)
    except TorqueError as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
    return row


def cmd_sweep(args):
    config = build_config(args)
    if config.method == "all":
        raise ConfigError("sweep takes a single method")
    grid = parse_grid(args.grid)
    workers = _thread_count(len(grid))
    if workers == 1:
        rows = [_sweep_point(config, args.axis, v) for v in grid]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda v: _sweep_point(config, args.axis, v), grid))
    columns = ["axis_value", "tau_eV", "cpv_eV", "resonance_eV", "method",
               "error_estimate_eV", "error"]
    summary = {"axis": args.axis, "points": len(rows),
               "failed_points": sum(1 for r in rows if r["error"])}
    _emit(args, _render(config.output, "sweep", config, columns, rows, summary,
                        _timestamp(args)))
    return 0


def cmd_spectrum(args):
    config = build_config(args)
    params, state = config.params(), config.state()
    grid = parse_grid(args.omega_grid)
    if any(not w > 0 for w in grid):
        raise ConfigError("spectrum grid must be positive")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ConfigError("spectrum grid must be strictly increasing")
    rows = []
    for w in grid:
        rows.append({"omega": w, "re_alpha_xy": re_alpha_xy(params, w),
                     "re_alpha_yx": re_alpha_yx(params, w),
                     "im_alpha_xx": im_alpha_xx(params, w),
                     "integrand": torque_integrand(params, state, w)})
    columns = ["omega", "re_alpha_xy", "re_alpha_yx", "im_alpha_xx", "integrand"]
    _emit(args, _render(config.output, "spectrum", config, columns, rows,
                        {"points": len(rows)}, _timestamp(args)))
    return 0


def cmd_compare(args):
    config = build_config(args)
    params, state = config.params(), config.state()
    quad = _evaluate_method("quadrature", params, state, config.tolerance)
    rows = []
    for method in ("closed", "series_high", "series_low"):
        try:
            rows.append(_evaluate_method(method, params, state, config.tolerance))
        except TorqueError as exc:
            rows.append(MethodRow(method=method, error=f"{type(exc).__name__}: {exc}"))
    rows.append(quad)
    out = []
    for r in rows:
        d = _row_dict(r)
        ref = quad.tau_eV
        if r.error or not math.isfinite(r.tau_eV):
            d["deviation"] = math.nan
        elif ref != 0.0:
            d["deviation"] = abs(r.tau_eV - ref) / abs(ref)
        else:
            d["deviation"] = abs(r.tau_eV)
        out.append(d)
    columns = ["method", "tau_eV", "deviation", "error_estimate_eV", "terms_used",
               "radius_ok", "converged", "error"]
    summary = {"series_radius": series_radius(params, state)}
    _emit(args, _render(config.output, "compare", config, columns, out, summary,
                        _timestamp(args)))
    return 0


def cmd_selftest(args):
    results = run_selftest()
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status}  {r.name}: max error {r.max_error:.3e} (tol {r.tolerance:.0e})")
    return 0 if all(r.passed for r in results) else 2


# --- parser ---------------------------------------------------------------

def _common_parser():
    p = _Parser(add_help=False)
    g = p.add_argument_group("run")
    g.add_argument("--config", metavar="PATH", help="INI-style config file")
    g.add_argument("--method", choices=METHODS)
    g.add_argument("--output", choices=OUTPUTS)
    g.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")
    g.add_argument("--tol", type=float, help="relative tolerance in [1e-14, 1e-2]")
    g.add_argument("--no-timestamp", action="store_true", help="omit the timestamp field")
    m = p.add_argument_group("material (eV, nm)")
    m.add_argument("--omega-p", dest="omega_p", type=float)
    m.add_argument("--eta", type=float)
    m.add_argument("--omega-c", dest="omega_c", type=float)
    m.add_argument("--b-field", dest="b_field", type=float,
                   help="field in tesla; omega_c from the electron charge-to-mass ratio")
    m.add_argument("--omega-0", dest="omega_0", type=float)
    m.add_argument("--radius-nm", dest="radius_nm", type=float)
    m.add_argument("--volume-nm3", dest="volume_nm3", type=float)
    t = p.add_argument_group("thermal (K, eV)")
    t.add_argument("--t-env", dest="T_env", type=float)
    t.add_argument("--t-body", dest="T_body", type=float)
    t.add_argument("--omega-rot", dest="omega_rot", type=float)
    return p


def build_parser():
    common = _common_parser()
    parser = _Parser(prog="nreq-torque",
                     description="Non-equilibrium torque on a magneto-optical body.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = sub.add_parser("eval", parents=[common], help="evaluate the torque")
    p.set_defaults(func=cmd_eval)
    p = sub.add_parser("sweep", parents=[common], help="sweep one parameter")
    p.add_argument("--axis", choices=SWEEP_AXES, required=True)
    p.add_argument("--grid", required=True,
                   help="start:stop:num, start:stop:num:log or comma list")
    p.set_defaults(func=cmd_sweep)
    p = sub.add_parser("spectrum", parents=[common], help="polarizability spectrum")
    p.add_argument("--omega-grid", dest="omega_grid", required=True,
                   help="frequency grid in eV (same syntax as --grid)")
    p.set_defaults(func=cmd_spectrum)
    p = sub.add_parser("compare", parents=[common], help="method comparison report")
    p.set_defaults(func=cmd_compare)
    p = sub.add_parser("specfun-selftest", help="special-function consistency checks")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except AccuracyError as exc:
        print(f"accuracy error: {exc} (best estimate {exc.best_estimate!r}, "
              f"error estimate {exc.error_estimate!r})", file=sys.stderr)
        return 3
    except (TorqueError, ValueError, ArithmeticError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
