"""Config-driven command line front end.

Subcommands: certify, compare, simulate, sweep. One JSON config describes
the plant, gain, law, decay rates, and options; the schema shipped with the
package (config_schema.json) rejects unknown keys before any computation.
Reports are JSON with non-finite floats rendered as the strings "inf",
"-inf", "nan" so files always parse; trajectories and sweep grids are CSV.

Exit codes: 0 certified / ran clean, 1 input error, 2 no certificate
(infeasible or numerically unresolvable), 3 simulation divergence.
"""

import argparse
import csv
import itertools
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from importlib import metadata, resources

import jsonschema
import numpy as np

from .certify import (
    SearchOptions,
    certify_componentwise,
    certify_scalar,
    settling_time,
    ultimate_bound,
)
from .errors import (
    ConfigError,
    DimensionMismatch,
    EmptyRegion,
    Infeasible,
    InvalidParameter,
    NoFeasibleInterval,
    NumericalFailure,
    Uncontrollable,
    VertexBudgetExceeded,
    ZeroGainSum,
)
from .lmi import SOLVERS, SolveOptions
from .model import ControlLaw, Gain, Plant, validate_plant
from .sector import OddFunction
from .sim import Disturbance, empirical_ultimate_bound, simulate, splitmix64_stream, time_to_ball

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INFEASIBLE = 2
EXIT_DIVERGED = 3

_INPUT_ERRORS = (
    ConfigError, InvalidParameter, DimensionMismatch, Uncontrollable,
    ZeroGainSum, VertexBudgetExceeded,
)
_CERT_ERRORS = (NoFeasibleInterval, Infeasible, EmptyRegion, NumericalFailure)

_FUNC_REQUIRED = {
    "identity": (),
    "saturation": ("mu", "sigma"),
    "arctan": ("mu", "sigma"),
    "sigmoid": ("mu", "sigma"),
    "power": ("lam",),
    "variable_power": ("mu",),
    "power_sum": ("lam",),
    "tabulated": (),
}


def tool_version():
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "0.0.0"


def load_config(path):
    """Parse and schema-validate a config file. Unknown keys are rejected."""
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}")
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror or exc}")
    schema = json.loads(
        resources.files("sectorcert").joinpath("config_schema.json").read_text()
    )
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(raw), key=lambda e: e.json_path)
    if errors:
        lines = [f"{e.json_path}: {e.message}" for e in errors[:5]]
        raise ConfigError(f"{path}: schema violations:\n  " + "\n  ".join(lines))
    return raw


def build_plant(cfg):
    p = cfg["plant"]
    plant = Plant(
        a=np.array(p["a"], dtype=float),
        b=np.array(p["b"], dtype=float),
        d=np.array(p["d"], dtype=float),
        f_bar=float(p["f_bar"]),
    )
    validate_plant(plant)
    return plant


def build_function(fcfg, config_dir="."):
    family = fcfg["family"]
    for key in _FUNC_REQUIRED[family]:
        if fcfg.get(key) is None:
            raise ConfigError(f"function family {family!r} requires parameter {key!r}")
    if family == "identity":
        base = OddFunction.identity()
    elif family == "saturation":
        base = OddFunction.saturation(fcfg["mu"], fcfg["sigma"])
    elif family == "arctan":
        base = OddFunction.arctan(fcfg["mu"], fcfg["sigma"])
    elif family == "sigmoid":
        base = OddFunction.sigmoid(fcfg["mu"], fcfg["sigma"])
    elif family == "power":
        base = OddFunction.power(fcfg["lam"])
    elif family == "variable_power":
        base = OddFunction.variable_power(fcfg["mu"])
    elif family == "power_sum":
        base = OddFunction.power_sum(fcfg["lam"])
    else:
        if fcfg.get("table") is not None:
            table = np.array(fcfg["table"], dtype=float)
            if table.ndim != 2 or table.shape[1] != 2:
                raise ConfigError("tabulated 'table' must be rows of [s, phi(s)]")
            base = OddFunction.tabulated(table[:, 0], table[:, 1])
        elif fcfg.get("table_path"):
            path = fcfg["table_path"]
            if not os.path.isabs(path):
                path = os.path.join(config_dir, path)
            base = OddFunction.tabulated_from_file(path)
        else:
            raise ConfigError("tabulated function needs 'table' or 'table_path'")
    theta = float(fcfg.get("theta", 0.0) or 0.0)
    if theta > 0.0:
        base = OddFunction.affine_plus(base, theta)
    return base


def build_law(cfg, gain, func, n):
    variant = cfg["law"]["variant"]
    if variant == "linear":
        return ControlLaw.linear(gain)
    if variant == "componentwise":
        return ControlLaw.componentwise(gain, [func] * n)
    return ControlLaw.scalar_wrapped(gain, func)


def build_options(cfg, args):
    o = dict(cfg.get("options", {}))
    if getattr(args, "region_cap", None) is not None:
        o["region_cap"] = args.region_cap
    if getattr(args, "strict_energy", False):
        o["strict_energy"] = True
    solve = SolveOptions(
        margin_coeff=o.pop("margin_coeff", SolveOptions().margin_coeff),
        literal_tau_block=o.pop("literal_tau_block", False),
        verify_tol=o.pop("verify_tol", SolveOptions().verify_tol),
    )
    return SearchOptions(solve=solve, **o)


def build_disturbance(dcfg, derived_seed):
    kind = dcfg["kind"]
    if kind == "zero":
        return Disturbance.zero()
    if kind == "constant":
        if dcfg.get("value") is None:
            raise ConfigError("constant disturbance requires 'value'")
        return Disturbance.constant(dcfg["value"])
    if kind == "sinusoid":
        if dcfg.get("amplitude") is None or dcfg.get("frequency") is None:
            raise ConfigError("sinusoid disturbance requires 'amplitude' and 'frequency'")
        return Disturbance.sinusoid(
            dcfg["amplitude"], dcfg["frequency"], dcfg.get("phase", 0.0)
        )
    if dcfg.get("amplitude") is None or dcfg.get("cutoff") is None:
        raise ConfigError("bounded_noise disturbance requires 'amplitude' and 'cutoff'")
    return Disturbance.bounded_noise(
        dcfg.get("seed", derived_seed), dcfg["amplitude"], dcfg["cutoff"]
    )


def _san(value):
    """Make a structure JSON-safe: non-finite floats become strings."""
    if isinstance(value, dict):
        return {str(k): _san(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_san(v) for v in value]
    if isinstance(value, np.ndarray):
        return _san(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return v
    return value


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def cert_to_dict(cert, opts, eps_cfg):
    f_eff = cert.f_bar ** 2 if cert.strict_energy else cert.f_bar
    agg = cert.aggregates
    if eps_cfg is not None:
        eps, eps_source = float(eps_cfg), "config"
    elif f_eff > 0.0 and agg.gamma_min > 0.0:
        eps = 1.05 * math.sqrt(2.0 * agg.chi_max * f_eff / (cert.aggregates.tau_min * agg.gamma_min))
        eps_source = "auto"
    else:
        eps = max(cert.x0_radius / 10.0, 1e-6)
        eps_source = "auto"
    t_bound = settling_time(cert, cert.x0_radius, eps, cert.f_bar)

    x0u = cert.x0_radius_unclamped
    lhs = x0u ** 2 * cert.n ** 2 * agg.tau_min * agg.p_norm_max + 2.0 * agg.chi_max * f_eff
    rhs = agg.tau_min * agg.gamma_min * cert.x_hi_effective ** 2
    rel = abs(lhs - rhs) / max(abs(rhs), 1e-300)
    alt_lhs = agg.gamma_min * cert.n ** 2 * cert.x_hi_effective ** 2
    alt_rhs = 2.0 * agg.chi_max * f_eff / agg.tau_min + agg.p_norm_max * x0u ** 2

    return {
        "mode": cert.mode,
        "rho_lo": cert.rho_lo,
        "rho_hi": cert.rho_hi,
        "x_lo": cert.x_lo,
        "x_hi": cert.x_hi,
        "x_hi_effective": cert.x_hi_effective,
        "region_capped": cert.region_capped,
        "x0_radius": cert.x0_radius,
        "x0_radius_unclamped": cert.x0_radius_unclamped,
        "x0_clamped": cert.x0_clamped,
        "aggregates": {
            "tau_min": agg.tau_min,
            "gamma_min": agg.gamma_min,
            "chi_max": agg.chi_max,
            "p_norm_max": agg.p_norm_max,
        },
        "gamma_star": cert.gamma_star,
        "delta": cert.delta,
        "theta_scale": cert.theta_scale,
        "strict_energy": cert.strict_energy,
        "f_bar": cert.f_bar,
        "n": cert.n,
        "settling": {
            "eps": eps,
            "eps_source": eps_source,
            "x0_norm": cert.x0_radius,
            "time_bound": t_bound,
        },
        "intervals": [
            {
                "rho_prev": iv.rho_prev,
                "rho_cur": iv.rho_cur,
                "tau": iv.tau,
                "chi": iv.solution.chi,
                "gamma": iv.solution.gamma,
                "margin": iv.solution.margin,
                "p": iv.solution.p,
                "p_norm": float(np.linalg.norm(iv.solution.p, 2)),
            }
            for iv in cert.intervals
        ],
        "audit": {
            "radius_identity": {
                "formula": "x0^2 * n^2 * tau_min * p_norm_max + 2 chi_max f = tau_min gamma_min x_hi^2",
                "lhs": lhs,
                "rhs": rhs,
                "rel_err": rel,
                "holds": bool(rel < 1e-9) and x0u > 0.0,
                "note": "implemented reading: n^2 divides the squared radius",
            },
            "alternate_reading": {
                "formula": "gamma_min * n^2 * x_hi^2 = 2 chi_max f / tau_min + p_norm_max x0^2",
                "lhs": alt_lhs,
                "rhs": alt_rhs,
                "note": "alternative placement of n^2 on the region term, shown for audit only",
            },
        },
        "tolerances": {
            "verify_tol": opts.solve.verify_tol,
            "margin_coeff": opts.solve.margin_coeff,
            "literal_tau_block": opts.solve.literal_tau_block,
            "solvers": list(SOLVERS),
            "region_cap": opts.region_cap,
            "edge_backoff": opts.edge_backoff,
            "min_step_rel": opts.min_step_rel,
        },
        "warnings": list(cert.warnings),
        "counters": cert.counters,
    }


def _write_report(report, out_dir, name):
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, name)
    with open(path, "w") as fh:
        json.dump(_san(report), fh, indent=2, allow_nan=False)
        fh.write("\n")
    return path


def _certs_for_mode(plant, gain, func, tau, mode, opts):
    runs = []
    if mode in ("componentwise", "both"):
        runs.append(("componentwise", certify_componentwise(plant, gain, func, tau, opts)))
    if mode in ("scalar", "both"):
        runs.append(("scalar", certify_scalar(plant, gain, func, tau, opts)))
    return runs


def cmd_certify(cfg, args):
    plant = build_plant(cfg)
    gain = Gain(np.array(cfg["gain"], dtype=float))
    func = build_function(cfg["law"]["function"], os.path.dirname(os.path.abspath(args.config)))
    opts = build_options(cfg, args)
    eps_cfg = cfg.get("simulation", {}).get("eps")
    runs = _certs_for_mode(plant, gain, func, cfg["tau"], cfg["mode"], opts)
    report = {
        "tool": {"name": "sectorcert", "version": tool_version()},
        "command": "certify",
        "config": cfg,
        "certificates": {name: cert_to_dict(c, opts, eps_cfg) for name, c in runs},
    }
    path = _write_report(report, args.out, cfg.get("output", {}).get("report", "report.json"))
    for name, cert in runs:
        t = report["certificates"][name]["settling"]["time_bound"]
        print(
            f"certificate[{name}]: rho in [{cert.rho_lo:.6g}, {cert.rho_hi:.6g}], "
            f"|x_i| <= {cert.x_hi_effective:.6g}, x0 radius {cert.x0_radius:.6g}, "
            f"delta {cert.delta:.6g}, time bound {t:.6g}"
        )
    print(f"report: {path}")
    return EXIT_OK


def cmd_compare(cfg, args):
    plant = build_plant(cfg)
    gain = Gain(np.array(cfg["gain"], dtype=float))
    func = build_function(cfg["law"]["function"], os.path.dirname(os.path.abspath(args.config)))
    opts = build_options(cfg, args)
    eps_cfg = cfg.get("simulation", {}).get("eps")
    cert = certify_componentwise(plant, gain, func, cfg["tau"], opts)
    gamma_lin, delta_lin = ultimate_bound(
        plant, gain, 1.0, cert.aggregates.tau_min,
        strict_energy=opts.strict_energy, solve_options=opts.solve,
    )

    sim_cfg = cfg.get("simulation", {})
    dt = sim_cfg.get("dt", 1e-3)
    t_end = sim_cfg.get("t_end", 30.0)
    tail = sim_cfg.get("tail_fraction", 0.2)
    dist = Disturbance.constant(plant.f_bar)
    laws = {
        "linear": ControlLaw.linear(gain),
        "componentwise": ControlLaw.componentwise(gain, [func] * plant.n),
        "scalar_wrapped": ControlLaw.scalar_wrapped(gain, func),
    }
    empirical = {}
    diverged = False
    for name, law in laws.items():
        traj = simulate(plant, law, dist, np.zeros(plant.n), dt, t_end)
        diverged = diverged or traj.diverged
        empirical[name] = {
            "steady_state_error": empirical_ultimate_bound(traj, tail),
            "diverged": traj.diverged,
        }

    report = {
        "tool": {"name": "sectorcert", "version": tool_version()},
        "command": "compare",
        "config": cfg,
        "certificate": cert_to_dict(cert, opts, eps_cfg),
        "comparison": {
            "gamma_lin": gamma_lin,
            "gamma_nl": cert.gamma_star,
            "delta_lin": delta_lin,
            "delta_nl": cert.delta,
            "theta_scale": cert.theta_scale,
            "certified_improved": bool(cert.delta <= delta_lin),
            "empirical": empirical,
        },
    }
    path = _write_report(report, args.out, cfg.get("output", {}).get("report", "report.json"))
    print(
        f"certified: delta_lin {delta_lin:.6g} vs delta_nl {cert.delta:.6g} "
        f"(gamma {gamma_lin:.6g} vs {cert.gamma_star:.6g})"
    )
    for name in ("linear", "componentwise", "scalar_wrapped"):
        print(f"empirical[{name}]: steady-state error {empirical[name]['steady_state_error']:.6g}")
    print(f"report: {path}")
    return EXIT_DIVERGED if diverged else EXIT_OK


def _sim_task(task):
    """Run one (x0, disturbance) pair; used directly and via worker pools."""
    cfg = task["cfg"]
    plant = build_plant(cfg)
    gain = Gain(np.array(cfg["gain"], dtype=float))
    func = build_function(cfg["law"]["function"], task["config_dir"])
    law = build_law(cfg, gain, func, plant.n)
    dist = build_disturbance(task["dist"], task["derived_seed"])
    traj = simulate(plant, law, dist, np.array(task["x0"], dtype=float),
                    task["dt"], task["t_end"])
    traj.to_csv(task["csv_path"])
    eps = task["eps"]
    return {
        "index": task["index"],
        "x0": list(task["x0"]),
        "disturbance": task["dist"]["kind"],
        "csv": os.path.basename(task["csv_path"]),
        "diverged": traj.diverged,
        "final_norm": float(traj.norms()[-1]),
        "delta_emp": empirical_ultimate_bound(traj, task["tail"]),
        "t_star": None if eps is None else time_to_ball(traj, eps),
    }


def cmd_simulate(cfg, args):
    plant = build_plant(cfg)
    sim_cfg = cfg.get("simulation", {})
    seed = args.seed if args.seed is not None else cfg.get("seed", 0)

    if sim_cfg.get("x0") is not None:
        x0_list = [list(map(float, row)) for row in sim_cfg["x0"]]
    elif sim_cfg.get("n_x0"):
        radius = sim_cfg.get("x0_radius")
        if radius is None:
            raise ConfigError("simulation.n_x0 requires simulation.x0_radius")
        rng = np.random.default_rng(seed)
        pts = rng.standard_normal((sim_cfg["n_x0"], plant.n))
        pts /= np.linalg.norm(pts, axis=1, keepdims=True)
        pts *= radius * rng.random(sim_cfg["n_x0"])[:, None] ** (1.0 / plant.n)
        x0_list = [list(map(float, row)) for row in pts]
    else:
        raise ConfigError("simulation needs 'x0' (list of states) or 'n_x0' + 'x0_radius'")
    dists = sim_cfg.get("disturbances", [{"kind": "zero"}])
    dt = sim_cfg.get("dt", 1e-3)
    t_end = sim_cfg.get("t_end", 30.0)
    eps = sim_cfg.get("eps")
    tail = sim_cfg.get("tail_fraction", 0.2)

    traj_dir = os.path.join(args.out, cfg.get("output", {}).get("trajectory_dir", "traj"))
    os.makedirs(traj_dir, exist_ok=True)
    derived = splitmix64_stream(seed, max(len(dists), 1))
    config_dir = os.path.dirname(os.path.abspath(args.config))
    tasks = []
    for i, x0 in enumerate(x0_list):
        for j, dcfg in enumerate(dists):
            tasks.append({
                "cfg": cfg,
                "config_dir": config_dir,
                "index": len(tasks),
                "x0": x0,
                "dist": dcfg,
                "derived_seed": derived[j],
                "dt": dt,
                "t_end": t_end,
                "eps": eps,
                "tail": tail,
                "csv_path": os.path.join(traj_dir, f"traj_{i:03d}_{j:02d}_{dcfg['kind']}.csv"),
            })

    if args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            rows = list(pool.map(_sim_task, tasks))
    else:
        rows = [_sim_task(t) for t in tasks]

    any_diverged = any(r["diverged"] for r in rows)
    summary = {
        "tool": {"name": "sectorcert", "version": tool_version()},
        "command": "simulate",
        "config": cfg,
        "seed": seed,
        "runs": rows,
        "any_diverged": any_diverged,
    }
    path = _write_report(summary, args.out, cfg.get("output", {}).get("summary", "summary.json"))
    worst = max((r["delta_emp"] for r in rows), default=0.0)
    print(f"{len(rows)} runs, worst tail norm {worst:.6g}, diverged: {any_diverged}")
    print(f"summary: {path}")
    return EXIT_DIVERGED if any_diverged else EXIT_OK


def _sweep_point(task):
    """Certify one sweep grid point; never raises (status carried in the row)."""
    cfg = task["cfg"]
    row = dict(task["point"])
    row["mode"] = task["mode"]
    try:
        plant = build_plant(cfg)
        gain = Gain(np.array(cfg["gain"], dtype=float))
        fcfg = dict(cfg["law"]["function"])
        fcfg.update(task["point"])
        func = build_function(fcfg, task["config_dir"])
        opts = build_options(cfg, task["args_proxy"])
        fn = certify_scalar if task["mode"] == "scalar" else certify_componentwise
        cert = fn(plant, gain, func, cfg["tau"], opts)
        row.update(
            status="ok", message="",
            rho_lo=cert.rho_lo, rho_hi=cert.rho_hi,
            x_lo=cert.x_lo, x_hi=cert.x_hi, x_hi_effective=cert.x_hi_effective,
            x0_radius=cert.x0_radius,
            gamma_min=cert.aggregates.gamma_min, chi_max=cert.aggregates.chi_max,
            p_norm_max=cert.aggregates.p_norm_max,
            gamma_star=cert.gamma_star, delta=cert.delta,
            region_capped=cert.region_capped,
        )
    except _CERT_ERRORS as exc:
        row.update(status="infeasible", message=str(exc))
    except _INPUT_ERRORS as exc:
        row.update(status="error", message=str(exc))
    return row


class _ArgsProxy:
    """Picklable stand-in for the CLI namespace inside worker processes."""

    def __init__(self, region_cap, strict_energy):
        self.region_cap = region_cap
        self.strict_energy = strict_energy


_SWEEP_COLUMNS = (
    "status", "message", "rho_lo", "rho_hi", "x_lo", "x_hi", "x_hi_effective",
    "x0_radius", "gamma_min", "chi_max", "p_norm_max", "gamma_star", "delta",
    "region_capped",
)


def cmd_sweep(cfg, args):
    if "sweep" not in cfg:
        raise ConfigError("sweep command requires a 'sweep' section in the config")
    params = cfg["sweep"]["parameters"]
    names = list(params.keys())
    grid = [dict(zip(names, combo)) for combo in itertools.product(*(params[n] for n in names))]
    modes = ["componentwise", "scalar"] if cfg["mode"] == "both" else [cfg["mode"]]
    proxy = _ArgsProxy(getattr(args, "region_cap", None), getattr(args, "strict_energy", False))
    config_dir = os.path.dirname(os.path.abspath(args.config))
    tasks = [
        {"cfg": cfg, "point": point, "mode": mode, "args_proxy": proxy,
         "config_dir": config_dir}
        for point in grid
        for mode in modes
    ]
    if args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            rows = list(pool.map(_sweep_point, tasks))
    else:
        rows = [_sweep_point(t) for t in tasks]

    os.makedirs(args.out, exist_ok=True)
    path = os.path.join(args.out, cfg.get("output", {}).get("sweep", "sweep.csv"))
    columns = names + ["mode"] + list(_SWEEP_COLUMNS)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(row.get(c)) for c in columns])
    n_ok = sum(1 for r in rows if r["status"] == "ok")
    print(f"sweep: {n_ok}/{len(rows)} points certified, grid written to {path}")
    return EXIT_OK if n_ok > 0 else EXIT_INFEASIBLE


def make_parser():
    parser = argparse.ArgumentParser(
        prog="sectorcert",
        description="LMI-based stability certification for linear plants under "
                    "odd-function-wrapped linear gains, with ODE cross-validation.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {tool_version()}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("certify", "run the certification pipeline and write a report"),
        ("compare", "certified and empirical comparison against the linear law"),
        ("simulate", "integrate closed-loop trajectories and write CSV files"),
        ("sweep", "certify over a grid of function parameters"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="path to the JSON analysis config")
        p.add_argument("--out", default=".", help="output directory (default: current)")
        p.add_argument("--workers", type=int, default=1, help="parallel worker processes")
        p.add_argument("--seed", type=int, default=None, help="override the config seed")
        p.add_argument("--strict-energy", action="store_true", dest="strict_energy",
                       help="use the squared disturbance bound in the certificate formulas")
        p.add_argument("--region-cap", type=float, default=None, dest="region_cap",
                       help="cap substituted for an unbounded region bound")
    return parser


_DISPATCH = {
    "certify": cmd_certify,
    "compare": cmd_compare,
    "simulate": cmd_simulate,
    "sweep": cmd_sweep,
}


def main(argv=None):
    args = make_parser().parse_args(argv)
    try:
        return _DISPATCH[args.command](load_config(args.config), args)
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except _CERT_ERRORS as exc:
        print(f"no certificate: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
