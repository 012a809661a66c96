"""End-to-end certification: multistep interval search, aggregation, region
and initial-set formulas, settling-time bound, and the ultimate bound from
decay-rate maximization.

The search chains contiguous slope intervals (rho_0, rho_1), (rho_1, rho_2),
..., each with its own verified (P_i, chi_i, gamma_i). Aggregates over the
chain (tau_min, gamma_min, chi_max, max |P_i|) feed the certificate formulas:

    region      x_lo <= |x_j| <= x_hi   from the sector inequalities,
    radius      x0_bar^2 = (tau_min gamma_min x_hi^2 - 2 chi_max f_bar)
                           / (n^2 tau_min |P|_max),
    time bound  T = (1/tau_min) ln[(tau_min |x0|^2 |P|_max + chi_max f_bar)
                                   / (tau_min gamma_min eps^2 - chi_max f_bar)],
    ultimate    delta = sqrt(f_bar / gamma_star).

The disturbance term enters these formulas as chi_max * f_bar literally; the
strict_energy flag replaces f_bar by f_bar^2 (consistent with the quadratic
form chi * f'f in the derivation) and is reported when set.
"""

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import Infeasible, InvalidParameter, NoFeasibleInterval, NumericalFailure
from .lmi import SolveOptions, assemble, solve_feasibility, vertex_set
from .model import validate_plant
from .sector import SlopeProfile, sector_region, sector_region_scalar

RHO_SEARCH_CAP = 1e3  # search bound when the origin slope is unbounded
GAMMA_BISECT_REL = 1e-4
GAMMA_PROBE_FLOOR = 1e-9


@dataclass(frozen=True)
class SearchOptions:
    """Multistep search and pipeline knobs.

    rho_start = 0 tries the open loop first and otherwise scans upward from
    scan_start for a feasible anchor. Each interval starts with step
    initial_step (default 0.1 * max(lo, 1)), doubles while feasible, and the
    feasibility edge is then bisected to relative min_step_rel. The accepted
    endpoint backs off from the edge by edge_backoff of the step (solutions
    at the edge verify fine but carry extreme chi, which poisons the
    aggregate certificate); the cap endpoint, when reached, is kept exactly.
    """

    rho_start: float = 0.0
    rho_cap: float = None
    initial_step: float = None
    growth: float = 2.0
    max_intervals: int = 64
    min_step_rel: float = 1e-3
    edge_backoff: float = 0.5
    scan_start: float = 1e-3
    scan_growth: float = 2.0
    region_cap: float = 1e3
    strict_energy: bool = False
    solve: SolveOptions = field(default_factory=SolveOptions)


@dataclass(frozen=True)
class IntervalCertificate:
    """One certified slope interval with its Lyapunov data."""

    rho_prev: float
    rho_cur: float
    tau: float
    solution: object  # LMISolution


@dataclass(frozen=True)
class Aggregates:
    tau_min: float
    gamma_min: float
    chi_max: float
    p_norm_max: float


@dataclass(frozen=True)
class Certificate:
    mode: str
    intervals: tuple
    rho_lo: float
    rho_hi: float
    x_lo: float
    x_hi: float
    x_hi_effective: float
    region_capped: bool
    x0_radius: float
    x0_radius_unclamped: float
    x0_clamped: bool
    aggregates: Aggregates
    gamma_star: float
    delta: float
    theta_scale: float
    strict_energy: bool
    f_bar: float
    n: int
    warnings: tuple
    counters: dict


def compute_aggregates(intervals):
    """Theorem aggregates over the interval chain."""
    return Aggregates(
        tau_min=min(iv.tau for iv in intervals),
        gamma_min=min(iv.solution.gamma for iv in intervals),
        chi_max=max(iv.solution.chi for iv in intervals),
        p_norm_max=max(float(np.linalg.norm(iv.solution.p, 2)) for iv in intervals),
    )


def _tau_at(tau_schedule, index):
    if np.ndim(tau_schedule) == 0:
        return float(tau_schedule)
    seq = list(tau_schedule)
    if not seq:
        raise InvalidParameter("tau schedule must not be empty")
    return float(seq[min(index, len(seq) - 1)])


def _new_stats():
    return {
        "solve_calls": 0,
        "vertex_assembles": 0,
        "numerical_failures": 0,
        "vertices_per_interval": [],
        "gamma_bisection_solves": 0,
    }


def multistep_search(plant, gain, func, tau_schedule, mode, options=None, stats=None):
    """Chain contiguous certified slope intervals starting from an anchor.

    Returns the interval list; raises NoFeasibleInterval when not even one
    interval can be certified. When the origin slope of func is finite the
    candidate upper slope is capped there; otherwise the chain grows until
    the LMI goes infeasible or the search bound RHO_SEARCH_CAP is reached.
    """
    opts = options or SearchOptions()
    stats = stats if stats is not None else _new_stats()
    n = plant.n
    vmode = "scalar" if mode == "scalar" else "componentwise"

    rho0 = SlopeProfile.from_func(func).rho_at_origin
    if opts.rho_cap is not None:
        cap = float(opts.rho_cap)
    elif math.isfinite(rho0):
        cap = rho0
    else:
        cap = RHO_SEARCH_CAP

    def try_interval(lo, hi, tau):
        stats["solve_calls"] += 1
        psis = vertex_set(lo, hi, n, vmode)
        stats["vertex_assembles"] += len(psis)
        verts = [assemble(plant, gain, psi, tau) for psi in psis]
        try:
            return solve_feasibility(verts, shared_unknowns=True, options=opts.solve)
        except Infeasible:
            return None
        except NumericalFailure:
            stats["numerical_failures"] += 1
            return None

    tau0 = _tau_at(tau_schedule, 0)
    anchor = None
    if try_interval(max(opts.rho_start, 0.0), max(opts.rho_start, 0.0), tau0) is not None:
        anchor = max(opts.rho_start, 0.0)
    else:
        a = opts.scan_start if opts.rho_start <= 0 else opts.rho_start * opts.scan_growth
        limit = min(cap, 1e6)
        while a <= limit:
            if try_interval(a, a, tau0) is not None:
                anchor = a
                break
            a *= opts.scan_growth
    if anchor is None:
        raise NoFeasibleInterval(
            f"no feasible anchor slope found (scan up to {min(cap, 1e6):g}, cap {cap:g})"
        )
    if anchor >= cap:
        raise NoFeasibleInterval(
            f"anchor slope {anchor:g} is at or above the upper slope cap {cap:g}"
        )

    intervals = []
    lo = anchor
    while lo < cap and len(intervals) < opts.max_intervals:
        tau_i = _tau_at(tau_schedule, len(intervals))
        step0 = opts.initial_step if opts.initial_step else 0.1 * max(lo, 1.0)
        got = _extend_interval(
            lambda a, b: try_interval(a, b, tau_i),
            lo, step0, cap, opts.growth, opts.min_step_rel, opts.edge_backoff,
        )
        if got is None:
            break
        hi_used, sol = got
        intervals.append(IntervalCertificate(rho_prev=lo, rho_cur=hi_used, tau=tau_i, solution=sol))
        stats["vertices_per_interval"].append(len(vertex_set(lo, hi_used, n, vmode)))
        lo = hi_used
    if not intervals:
        raise NoFeasibleInterval(
            f"anchor {anchor:g} is feasible but no interval of length >= "
            f"{opts.min_step_rel * 0.1 * max(anchor, 1.0):g} extends from it"
        )
    return intervals


def _extend_interval(try_iv, lo, step0, cap, growth, min_step_rel, edge_backoff):
    """Grow one interval from lo: double while feasible, bisect the edge,
    then back off. Returns (hi, solution) or None when no step >= the
    minimum yields feasibility."""
    min_step = min_step_rel * step0
    hi = min(lo + step0, cap)
    if hi <= lo:
        return None
    sol = try_iv(lo, hi)
    if sol is None:
        good, good_sol, bad = None, None, hi
        step = hi - lo
        while step > min_step:
            step *= 0.5
            mid = lo + step
            s = try_iv(lo, mid)
            if s is not None:
                good, good_sol = mid, s
                break
            bad = mid
        if good is None:
            return None
    else:
        good, good_sol = hi, sol
        bad = None
        for _ in range(200):
            if good >= cap:
                break
            nxt = min(lo + (good - lo) * growth, cap)
            if nxt <= good:
                break
            s = try_iv(lo, nxt)
            if s is None:
                bad = nxt
                break
            good, good_sol = nxt, s
        if bad is None:
            return good, good_sol  # stopped at the cap, keep it exactly
    while (bad - good) > min_step_rel * max(good - lo, min_step):
        mid = 0.5 * (good + bad)
        s = try_iv(lo, mid)
        if s is not None:
            good, good_sol = mid, s
        else:
            bad = mid
    if edge_backoff > 0.0:
        hi_used = lo + (1.0 - edge_backoff) * (good - lo)
        if hi_used > lo:
            s = try_iv(lo, hi_used)
            if s is not None:
                return hi_used, s
    return good, good_sol


def _certify(plant, gain, func, tau_schedule, mode, options):
    opts = options or SearchOptions()
    validate_plant(plant)
    stats = _new_stats()
    intervals = multistep_search(plant, gain, func, tau_schedule, mode, opts, stats)
    rho_lo = intervals[0].rho_prev
    rho_hi = intervals[-1].rho_cur
    profile = SlopeProfile.from_func(func)

    warnings = []
    if mode == "scalar":
        x_lo, x_hi = sector_region_scalar(profile, gain, rho_lo, rho_hi)
    else:
        x_lo, x_hi = sector_region(profile, rho_lo, rho_hi)
    if x_lo > 0.0:
        warnings.append(
            f"region has inner bound x_lo = {x_lo:g} > 0 (annulus); the initial-set "
            "ball near the origin is outside the certified sector"
        )
    region_capped = math.isinf(x_hi)
    x_hi_eff = opts.region_cap if region_capped else x_hi
    if region_capped:
        warnings.append(f"region unbounded; radius formula uses cap x_hi = {opts.region_cap:g}")

    agg = compute_aggregates(intervals)
    f_eff = plant.f_bar ** 2 if opts.strict_energy else plant.f_bar
    n = plant.n
    radicand_num = agg.tau_min * agg.gamma_min * x_hi_eff ** 2 - 2.0 * agg.chi_max * f_eff
    if radicand_num <= 0.0:
        x0_unclamped = 0.0
        warnings.append(
            "degenerate initial set: tau_min * gamma_min * x_hi^2 <= 2 * chi_max * f_bar; "
            "certificate emitted with x0_radius = 0"
        )
    else:
        x0_unclamped = math.sqrt(radicand_num / (n ** 2 * agg.tau_min * agg.p_norm_max))
    x0_clamped = x0_unclamped > x_hi_eff
    x0 = min(x0_unclamped, x_hi_eff)
    if x0_clamped:
        warnings.append(
            f"x0_radius clamped from {x0_unclamped:g} to the region bound {x_hi_eff:g}"
        )

    gamma_star, delta = ultimate_bound(
        plant, gain, rho_hi, agg.tau_min,
        strict_energy=opts.strict_energy,
        solve_options=opts.solve,
        stats=stats,
    )

    return Certificate(
        mode=mode,
        intervals=tuple(intervals),
        rho_lo=rho_lo,
        rho_hi=rho_hi,
        x_lo=x_lo,
        x_hi=x_hi,
        x_hi_effective=x_hi_eff,
        region_capped=region_capped,
        x0_radius=x0,
        x0_radius_unclamped=x0_unclamped,
        x0_clamped=x0_clamped,
        aggregates=agg,
        gamma_star=gamma_star,
        delta=delta,
        theta_scale=rho_hi,
        strict_energy=opts.strict_energy,
        f_bar=plant.f_bar,
        n=n,
        warnings=tuple(warnings),
        counters=stats,
    )


def certify_componentwise(plant, gain, func, tau_schedule, options=None):
    """Certificate for the componentwise law u = sum k_i phi(x_i).

    Each interval is certified at all 2**n corner assignments of the slope
    box, so one shared phi applies to every component.
    """
    return _certify(plant, gain, func, tau_schedule, "componentwise", options)


def certify_scalar(plant, gain, func, tau_schedule, options=None):
    """Certificate for the scalar-wrapped law u = phi(K x).

    Only the 2 endpoint multiples of the identity are needed per interval;
    the region shrinks by |sum k_i| relative to the componentwise one.
    """
    return _certify(plant, gain, func, tau_schedule, "scalar", options)


def settling_time(cert, x0_norm, eps, f_bar):
    """Upper bound on the time to enter (and stay in) the ball |x| < eps.

    Returns math.inf when tau_min * gamma_min * eps^2 <= chi_max * f_bar,
    i.e. when the requested ball is smaller than the certified invariant
    neighborhood. The disturbance term mirrors the certificate's
    strict_energy setting.
    """
    if eps <= 0.0:
        raise InvalidParameter(f"eps must be positive, got {eps}")
    if x0_norm > cert.x0_radius * (1.0 + 1e-12):
        raise InvalidParameter(
            f"x0_norm {x0_norm:g} exceeds the certified radius {cert.x0_radius:g}"
        )
    agg = cert.aggregates
    f_eff = f_bar ** 2 if cert.strict_energy else f_bar
    denom = agg.tau_min * agg.gamma_min * eps ** 2 - agg.chi_max * f_eff
    if denom <= 0.0:
        return math.inf
    num = agg.tau_min * x0_norm ** 2 * agg.p_norm_max + agg.chi_max * f_eff
    return math.log(num / denom) / agg.tau_min


def ultimate_bound(plant, gain, theta, tau, *, literal_tau_block=False,
                   strict_energy=False, solve_options=None, stats=None):
    """Largest verified gamma for the loop A + B K Theta, and the bound
    delta = sqrt(f_bar / gamma_star) on the asymptotic state norm.

    gamma is maximized by bisection (relative gap 1e-4); every probe is a
    full feasibility solve plus eigenvalue verification. The optimization
    caps chi at tau, which reproduces the fixed -tau I disturbance block at
    the optimum; literal_tau_block pins that block exactly instead of
    treating chi as a capped variable.

    Every constraint is homogeneous in (P, chi) jointly, so feasibility at
    floor gamma with cap tau equals feasibility at floor 1 with cap
    tau/gamma. Probes are solved in that normalized form, which keeps the
    solver at scale ~1 for any gamma instead of feeding it matrices scaled
    by gamma itself.
    """
    theta = np.asarray(theta, dtype=float)
    if theta.ndim == 0:
        psi = np.full(plant.n, float(theta))
    elif theta.ndim == 1:
        psi = theta
    else:
        psi = np.diag(theta)
    vertices = [assemble(plant, gain, psi, tau)]
    base = solve_options or SolveOptions()

    def probe(gamma):
        if stats is not None:
            stats["gamma_bisection_solves"] += 1
        if literal_tau_block:
            opt = replace(base, objective="pnorm", gamma_floor=1.0, chi_cap=None,
                          chi_fixed=tau / gamma, literal_tau_block=False)
        else:
            opt = replace(base, objective="pnorm", gamma_floor=1.0,
                          chi_cap=tau / gamma, chi_fixed=None,
                          literal_tau_block=False)
        try:
            solve_feasibility(vertices, shared_unknowns=True, options=opt)
            return True
        except (Infeasible, NumericalFailure):
            return False

    if not probe(GAMMA_PROBE_FLOOR):
        raise Infeasible(
            f"loop with Theta scale {np.max(psi):g} admits no certificate at any gamma > 0"
        )
    glo = GAMMA_PROBE_FLOOR
    ghi = 1.0
    for _ in range(200):
        if not probe(ghi):
            break
        glo = ghi
        ghi *= 2.0
    while (ghi - glo) > GAMMA_BISECT_REL * ghi:
        mid = 0.5 * (glo + ghi)
        if probe(mid):
            glo = mid
        else:
            ghi = mid
    gamma_star = glo
    # monotonicity spot check: anything below gamma_star must stay feasible
    for frac in (0.25, 0.5, 0.75):
        if not probe(frac * gamma_star):
            raise NumericalFailure(
                f"feasibility is not monotone in gamma near {gamma_star:g}"
            )
    f_eff = plant.f_bar ** 2 if strict_energy else plant.f_bar
    delta = math.sqrt(f_eff / gamma_star) if f_eff > 0.0 else 0.0
    return gamma_star, delta


@dataclass(frozen=True)
class ComparisonRecord:
    """Certified ultimate bounds of the linear and wrapped loops side by side."""

    gamma_lin: float
    gamma_nl: float
    delta_lin: float
    delta_nl: float
    rho_hi: float
    x_lo: float
    x_hi: float
    x0_radius: float
    improved: bool  # delta_nl <= delta_lin


def compare_report(plant, gain, func, tau, options=None):
    """Ultimate-bound comparison of the wrapped laws against the linear law.

    The wrapped loop is evaluated at Theta = rho_hi * I with rho_hi taken
    from the certificate; the linear loop at Theta = I. Both deltas are
    reported honestly whether or not the wrapped one wins.
    """
    opts = options or SearchOptions()
    cert = certify_componentwise(plant, gain, func, tau, opts)
    gamma_lin, delta_lin = ultimate_bound(
        plant, gain, 1.0, cert.aggregates.tau_min,
        strict_energy=opts.strict_energy, solve_options=opts.solve,
    )
    return ComparisonRecord(
        gamma_lin=gamma_lin,
        gamma_nl=cert.gamma_star,
        delta_lin=delta_lin,
        delta_nl=cert.delta,
        rho_hi=cert.rho_hi,
        x_lo=cert.x_lo,
        x_hi=cert.x_hi,
        x0_radius=cert.x0_radius,
        improved=cert.delta <= delta_lin,
    )
