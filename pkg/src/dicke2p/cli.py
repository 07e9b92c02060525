"""Two-photon Dicke model: mean-field solutions, squeezing series, sweeps and oracle checks.

Every command resolves its configuration (defaults < ``--config`` file <
flags), validates it, computes, and writes CSV or JSON with the resolved
configuration embedded. Exit codes: 0 ok, 2 configuration error, 3 domain
error, 4 oracle mismatch.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__, analysis, dynamics, oracle
from .errors import DomainError, OracleMismatch, ParameterError
from .model import ModelParams, critical_coupling, excitation_frequency, solve_mean_field, validate_params

EXIT_OK, EXIT_CONFIG, EXIT_DOMAIN, EXIT_ORACLE = 0, 2, 3, 4

COMMON = {
    "omega": (float, 1.0),
    "epsilon": (float, 0.0008),
    "n": (int, 1000),
    "g": (float, 0.49),
    "branch": (str, "+"),
    "out": (str, None),
    "format": (str, "csv"),
}

OPTIONS = {
    "solve": {},
    "series": {
        "t_max": (float, 100.0),
        "resolution": (int, dynamics.DEFAULT_RESOLUTION),
        "g_rule": (str, "fixed"),
        "delta_near": (float, analysis.DEFAULT_DELTA_NEAR),
        "r_offset": (float, analysis.DEFAULT_R_OFFSET),
    },
    "sweep": {
        "g_rule": (str, analysis.GRule.NEAR_HALF_OMEGA.value),
        "delta_near": (float, analysis.DEFAULT_DELTA_NEAR),
        "r_offset": (float, analysis.DEFAULT_R_OFFSET),
        "ne_min": (float, 0.2),
        "ne_max": (float, 0.99),
        "ne_points": (int, 80),
        "t": (float, 100.0),
        "t_min": (float, 40.0),
        "t_max": (float, 200.0),
        "t_points": (int, 1),
    },
    "phase-diagram": {
        "g_min": (float, 0.0),
        "g_max": (float, 0.5),
        "g_points": (int, 51),
        "ne_min": (float, 0.02),
        "ne_max": (float, 2.0),
        "ne_points": (int, 100),
    },
    "scaling": {
        "delta_min": (float, 1e-4),
        "delta_max": (float, 5e-3),
        "delta_points": (int, 20),
        "periods": (int, 4),
        "resolution": (int, dynamics.DEFAULT_RESOLUTION),
        "self_test": (bool, False),
    },
    "oracle-check": {
        "g_list": (str, "0.45,0.47,0.49"),
        "t_max": (float, 200.0),
        "samples": (int, 2001),
        "dt_fraction": (float, oracle.DEFAULT_DT_FRACTION),
        "perturb_g_beta": (float, 0.0),
    },
}

TOLERANCES = {
    "beta0": 1e-6,
    "coefficients": 1e-8,
    "zeta_min_sq_global": 1e-8,
    "purity": 1e-8,
}


def fmt(x):
    if isinstance(x, (float, np.floating)):
        return format(float(x) + 0.0, ".15g")
    return str(x)


def read_config_file(path):
    """Flat ``key = value`` file; ``#`` starts a comment, dashes in keys are allowed."""
    values = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParameterError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParameterError(f"{path}:{lineno}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        values[key.replace("-", "_")] = value
    return values


def _convert(key, kind, value):
    if value is None or isinstance(value, kind):
        return value
    try:
        if kind is bool:
            if str(value).lower() in ("1", "true", "yes", "on"):
                return True
            if str(value).lower() in ("0", "false", "no", "off"):
                return False
            raise ValueError(value)
        return kind(value)
    except ValueError:
        raise ParameterError(f"{key}: cannot parse {value!r} as {kind.__name__}") from None


def resolve_config(command, args):
    schema = COMMON | OPTIONS[command]
    resolved = {key: default for key, (_, default) in schema.items()}
    if args.config:
        for key, value in read_config_file(args.config).items():
            if key not in schema:
                raise ParameterError(f"unknown config key {key!r} for {command}")
            resolved[key] = value
    for key in schema:
        value = getattr(args, key, None)
        if value is not None:
            resolved[key] = value
    config = {key: _convert(key, schema[key][0], resolved[key]) for key in schema}
    if config["format"] not in ("csv", "json"):
        raise ParameterError(f"format must be csv or json, got {config['format']!r}")
    if config["branch"] not in ("+", "-", "both"):
        raise ParameterError(f"branch must be +, - or both, got {config['branch']!r}")
    config["command"] = command
    return config


def model_params(config, g=None):
    return ModelParams(
        omega=config["omega"],
        epsilon=config["epsilon"],
        n_qubits=config["n"],
        g=config["g"] if g is None else g,
    )


def branches(config):
    return (1, -1) if config["branch"] == "both" else ((1,) if config["branch"] == "+" else (-1,))


def render(config, columns, rows, summary=None):
    meta = {key: config[key] for key in sorted(config)}
    if config["format"] == "json":
        doc = {
            "version": __version__,
            "config": meta,
            "columns": list(columns),
            "rows": [dict(zip(columns, row)) for row in rows],
        }
        if summary is not None:
            doc["summary"] = summary
        return json.dumps(doc, sort_keys=True, indent=1, default=_json_default) + "\n"
    lines = [f"# dicke2p {__version__} {config['command']}"]
    lines += [f"# {key}={fmt(value)}" for key, value in meta.items() if key != "command"]
    lines.append(",".join(columns))
    lines += [",".join(fmt(v) for v in row) for row in rows]
    if summary is not None:
        lines += [f"# summary.{key}={fmt(value)}" for key, value in sorted(summary.items())]
    return "\n".join(lines) + "\n"


def _json_default(value):
    if isinstance(value, np.generic):
        return value.item()
    raise TypeError(type(value).__name__)


def emit(config, text, suffix=""):
    out = config["out"]
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out)
    if suffix:
        path = path.with_name(path.stem + suffix + path.suffix)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


def cmd_solve(config):
    p = validate_params(model_params(config))
    columns = ["branch", "phase", "g_t", "beta0", "g_beta", "theta_a", "omega_a", "e_g"]
    rows = []
    for sign in (1, -1):
        s = solve_mean_field(p, sign)
        rows.append(
            ["+" if sign > 0 else "-", s.phase.tag.value, s.phase.g_t, s.beta0,
             s.g_beta, s.theta_a, s.omega_a, s.e_g]
        )
    emit(config, render(config, columns, rows))
    return EXIT_OK


SERIES_COLUMNS = ["t", "a_q", "b_q", "c_q", "zeta_x", "zeta_p", "zeta_min", "phi_min"]


def series_coupling(config):
    rule = config["g_rule"]
    if rule == "fixed":
        return config["g"]
    try:
        rule = analysis.GRule(rule)
    except ValueError:
        raise ParameterError(f"g_rule must be fixed, near-gt or near-half-omega, got {rule!r}") from None
    return analysis.coupling_for_rule(rule, model_params(config, g=0.0), config["delta_near"], config["r_offset"])


def cmd_series(config):
    if not (config["t_max"] > 0):
        raise ParameterError(f"t_max must be > 0, got {config['t_max']!r}")
    g = series_coupling(config)
    config["g_resolved"] = g
    p = validate_params(model_params(config, g=g))
    for sign in branches(config):
        series = dynamics.quadrature_series(solve_mean_field(p, sign), config["t_max"], config["resolution"])
        rows = zip(*(getattr(series, name) for name in SERIES_COLUMNS))
        label = "+" if sign > 0 else "-"
        run = config | {"branch": label}
        emit(run, render(run, SERIES_COLUMNS, rows), label if config["branch"] == "both" else "")
    return EXIT_OK


def _grid(lo, hi, n, name):
    if n < 1 or (n > 1 and not hi > lo):
        raise ParameterError(f"invalid {name} range [{lo}, {hi}] with {n} points")
    return np.linspace(lo, hi, n)


def cmd_sweep(config):
    try:
        rule = analysis.GRule(config["g_rule"])
    except ValueError:
        raise ParameterError(f"g_rule must be near-gt or near-half-omega, got {config['g_rule']!r}") from None
    ne = _grid(config["ne_min"], config["ne_max"], config["ne_points"], "N*eps")
    if np.any(ne <= 0):
        raise ParameterError("N*eps values must be > 0")
    kwargs = dict(omega=config["omega"], n_qubits=config["n"],
                  delta_near=config["delta_near"], r_offset=config["r_offset"])
    if config["t_points"] > 1:
        times = _grid(config["t_min"], config["t_max"], config["t_points"], "t")
        surface = analysis.time_epsilon_surface(rule, ne, times, **kwargs)
        rows = [("n_epsilon", x, t, surface.zeta[i, j])
                for i, x in enumerate(ne) for j, t in enumerate(times)]
    else:
        sweep = analysis.epsilon_sweep(rule, ne, config["t"], **kwargs)
        rows = [("n_epsilon", x, config["t"], z) for x, z in zip(sweep.values, sweep.zeta)]
    emit(config, render(config, ["axis_name", "axis_value", "t", "zeta_min"], rows))
    return EXIT_OK


def cmd_phase_diagram(config):
    g = _grid(config["g_min"], config["g_max"], config["g_points"], "g")
    ne = _grid(config["ne_min"], config["ne_max"], config["ne_points"], "N*eps")
    diagram = analysis.phase_diagram(g, ne, omega=config["omega"], n_qubits=config["n"])
    rows = [(x, gj, diagram.tags[i, j], diagram.boundary[i])
            for i, x in enumerate(ne) for j, gj in enumerate(g)]
    emit(config, render(config, ["n_epsilon", "g", "phase", "g_t"], rows))
    return EXIT_OK


def scaling_self_test(slope=3.0):
    deltas = np.geomspace(1e-4, 5e-3, 20)
    synthetic = analysis.SweepResult("delta", deltas, np.sqrt(slope * deltas))
    fit = analysis.fit_through_origin(synthetic)
    return fit, abs(fit.slope_m - slope) <= 1e-6


def cmd_scaling(config):
    if config["self_test"]:
        fit, ok = scaling_self_test()
        sys.stdout.write(f"self-test slope_m={fmt(fit.slope_m)} r_squared={fmt(fit.r_squared)} "
                         f"{'ok' if ok else 'FAILED'}\n")
        return EXIT_OK if ok else EXIT_ORACLE
    if not (0 < config["delta_min"] < config["delta_max"]) or config["delta_points"] < 2:
        raise ParameterError("need 0 < delta_min < delta_max and at least 2 points")
    if config["periods"] < 3:
        raise ParameterError("period measurement needs at least 3 periods")
    template = model_params(config, g=0.0)
    deltas = np.geomspace(config["delta_min"], config["delta_max"], config["delta_points"])
    sweep = analysis.delta_sweep(template, deltas)
    fit = analysis.fit_through_origin(sweep)
    rows, period_law = [], []
    for delta, zeta in zip(deltas, sweep.zeta):
        s = solve_mean_field(template.with_g(template.omega / 2.0 - delta))
        series = dynamics.quadrature_series(s, config["periods"] * math.pi / s.omega_a, config["resolution"])
        period = analysis.period_measurement(series)
        exact, leading = analysis.omega_a_expansion(template, delta)
        rows.append((delta, zeta**2, period, exact, leading))
        period_law.append(period * math.sqrt(delta))
    summary = {
        "slope_m": fit.slope_m,
        "r_squared": fit.r_squared,
        "max_rel_residual": fit.max_rel_residual,
        "period_law_constant": float(np.mean(period_law)),
        "period_law_spread": analysis.relative_spread(period_law),
        "magnitude_law_spread": analysis.relative_spread(sweep.zeta / np.sqrt(deltas)),
    }
    columns = ["delta", "zeta_min_sq", "t_measured", "omega_a_exact", "omega_a_leading"]
    emit(config, render(config, columns, rows, summary))
    return EXIT_OK


def _perturbed(s, shift):
    if shift == 0:
        return s
    g_beta = s.g_beta + shift
    return dataclasses.replace(s, g_beta=g_beta, omega_a=excitation_frequency(s.params, g_beta))


def oracle_rows(config):
    """Closed form against oracle for every coupling in ``g_list``.

    Returns rows ``(quantity, g, closed_form, oracle, abs_err, tolerance, status)``;
    rows without an oracle counterpart are pinned regression values.
    """
    try:
        g_values = [float(x) for x in str(config["g_list"]).split(",") if x.strip()]
    except ValueError:
        raise ParameterError(f"g_list must be comma-separated numbers, got {config['g_list']!r}") from None
    if not g_values:
        raise ParameterError("g_list is empty")
    rows = []

    def check(quantity, g, closed, reference, err, tol):
        rows.append((quantity, g, closed, reference, err, tol, "pass" if err < tol else "FAIL"))

    for g in g_values:
        p = validate_params(model_params(config, g=g))
        exact = solve_mean_field(p)
        # the hook perturbs only the closed-form side; the oracle sees the true solution
        s = _perturbed(exact, config["perturb_g_beta"])
        for name in ("beta0", "g_beta", "theta_a", "omega_a", "e_g"):
            rows.append((name, g, getattr(exact, name), "", "", "", "pinned"))
        rows.append(("g_t", g, critical_coupling(p), "", "", "", "pinned"))

        scan = oracle.minimize_energy_bruteforce(p)
        err = abs(s.beta0 - scan.argmin) / max(1.0, scan.argmin)
        check("beta0", g, s.beta0, scan.argmin, err, TOLERANCES["beta0"])

        zeta_sq = analysis.global_min_squeezing(s) ** 2
        rows.append(("zeta_min_sq_global", g, zeta_sq, "", "", "", "pinned"))
        dt = config["dt_fraction"] * math.pi / exact.omega_a
        traj = oracle.covariance_trajectory(exact, config["t_max"], config["samples"], dt=dt)
        ref = oracle.moments_from_covariance(traj)
        closed = dynamics.coefficients(s, traj.t)
        dev = max(float(np.max(np.abs(getattr(closed, k) - getattr(ref, k)))) for k in ("a_q", "b_q", "c_q"))
        check("coefficients", g, "", "", dev, TOLERANCES["coefficients"])
        purity = float(np.max(np.abs(traj.determinant() - 0.25)))
        check("purity", g, 0.25, "", purity, TOLERANCES["purity"])
        u = p.omega - 2.0 * exact.g_beta
        v = p.omega + 2.0 * exact.g_beta
        t_star = math.pi / (2.0 * math.sqrt(u * v))
        dip = 2.0 * float(oracle.evolve_covariance(exact, t_star, method="expm").min_eigenvalue())
        check("zeta_min_sq_global", g, zeta_sq, dip, abs(zeta_sq - dip), TOLERANCES["zeta_min_sq_global"])
    return rows


def cmd_oracle_check(config):
    rows = oracle_rows(config)
    columns = ["quantity", "g", "closed_form", "oracle", "abs_err", "tolerance", "status"]
    emit(config, render(config, columns, rows))
    failures = [r for r in rows if r[-1] == "FAIL"]
    if failures:
        worst = max(failures, key=lambda r: r[4] / r[5])
        raise OracleMismatch(
            f"{worst[0]} at g={fmt(worst[1])}: deviation {worst[4]:.3e} exceeds {worst[5]:g}",
            worst=worst,
        )
    return EXIT_OK


COMMANDS = {
    "solve": cmd_solve,
    "series": cmd_series,
    "sweep": cmd_sweep,
    "phase-diagram": cmd_phase_diagram,
    "scaling": cmd_scaling,
    "oracle-check": cmd_oracle_check,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="dicke2p", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"dicke2p {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, options in OPTIONS.items():
        cmd = sub.add_parser(name)
        cmd.add_argument("--config", help="flat key = value file; flags override it")
        for key, (kind, default) in (COMMON | options).items():
            flag = "--" + key.replace("_", "-")
            if kind is bool:
                cmd.add_argument(flag, action="store_const", const=True, default=None)
            else:
                help_text = None if default is None else f"default: {default}"
                cmd.add_argument(flag, type=str, default=None, dest=key, help=help_text)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        config = resolve_config(args.command, args)
        return COMMANDS[args.command](config)
    except ParameterError as exc:
        print(f"dicke2p: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DomainError as exc:
        print(f"dicke2p: domain error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OracleMismatch as exc:
        print(f"dicke2p: oracle mismatch: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    except BrokenPipeError:
        # downstream reader (e.g. `head`) closed early; silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 0


if __name__ == "__main__":
    sys.exit(main())
