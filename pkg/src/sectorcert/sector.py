"""Odd function families, slope representation, and sector-validity regions.

Every function here is odd (phi(-s) = -phi(s), exact at the bit level) and
continuous with phi(0) = 0. The slope representation writes phi(s) =
rho(s) * s with the even slope rho(s) = phi(s)/s; certificates confine rho to
an interval [rho_lo, rho_hi], and the region computation inverts that
confinement back into bounds on |s|.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import EmptyRegion, InvalidParameter, ZeroGainSum

FAMILY_CODES = {
    "identity": 0,
    "saturation": 1,
    "arctan": 2,
    "sigmoid": 3,
    "power": 4,
    "variable_power": 5,
    "power_sum": 6,
    "tabulated": 7,
}

# sector_region sampling plan: log grid density, span, and refinement targets
GRID_PER_DECADE = 4096
GRID_S_MIN = 1e-9
GRID_S_MAX = 1e9
FAR_PROBES = (1e12, 1e15, 1e18)
BISECT_REL = 1e-10
RHO_INF_SURROGATE = 1e30


@dataclass(frozen=True)
class OddFunction:
    """A parametrized odd scalar function.

    Use the classmethod constructors; parameters are validated once here and
    never re-checked during evaluation.
    """

    family: str
    mu: float = 0.0
    sigma: float = 0.0
    lam: float = 0.0
    theta: float = 0.0
    table_s: np.ndarray = field(default=None, repr=False)
    table_v: np.ndarray = field(default=None, repr=False)
    base_family: str = ""

    @classmethod
    def identity(cls):
        return cls("identity")

    @classmethod
    def saturation(cls, mu, sigma):
        _positive(mu, "mu"), _positive(sigma, "sigma")
        return cls("saturation", mu=float(mu), sigma=float(sigma))

    @classmethod
    def arctan(cls, mu, sigma):
        _positive(mu, "mu"), _positive(sigma, "sigma")
        return cls("arctan", mu=float(mu), sigma=float(sigma))

    @classmethod
    def sigmoid(cls, mu, sigma):
        _positive(mu, "mu"), _positive(sigma, "sigma")
        return cls("sigmoid", mu=float(mu), sigma=float(sigma))

    @classmethod
    def power(cls, lam):
        if not (0.0 < lam < 1.0):
            raise InvalidParameter(f"power exponent must satisfy 0 < lam < 1, got {lam}")
        return cls("power", lam=float(lam))

    @classmethod
    def variable_power(cls, mu):
        _positive(mu, "mu")
        psi0 = mu * (0.0 + 1.0 / (mu * mu)) / (0.0 + 1.0)
        if not psi0 < 1.0:
            raise InvalidParameter(
                f"variable_power requires psi(0) < 1, got psi(0) = {psi0} (mu = {mu})"
            )
        return cls("variable_power", mu=float(mu))

    @classmethod
    def power_sum(cls, lam):
        if not (0.0 < lam < 1.0):
            raise InvalidParameter(f"power_sum exponent must satisfy 0 < lam < 1, got {lam}")
        return cls("power_sum", lam=float(lam))

    @classmethod
    def affine_plus(cls, base, theta):
        if not isinstance(base, OddFunction):
            raise InvalidParameter("affine_plus base must be an OddFunction")
        if base.theta != 0.0:
            raise InvalidParameter("affine_plus cannot nest another affine extension")
        if theta < 0.0 or not math.isfinite(theta):
            raise InvalidParameter(f"theta must be >= 0, got {theta}")
        return cls(
            base.family,
            mu=base.mu,
            sigma=base.sigma,
            lam=base.lam,
            theta=float(theta),
            table_s=base.table_s,
            table_v=base.table_v,
            base_family=base.family,
        )

    @classmethod
    def tabulated(cls, s_values, phi_values):
        """Sampled function, stored as its odd part on s >= 0.

        Rows may cover any abscissa range; negative rows are mirrored through
        the origin and averaged with positive ones where both exist. The
        canonical table is anchored at (0, 0), interpolates linearly between
        breakpoints, and clamps to its last value above the largest one.
        """
        s = np.asarray(s_values, dtype=float).reshape(-1)
        v = np.asarray(phi_values, dtype=float).reshape(-1)
        if s.shape != v.shape or s.size < 2:
            raise InvalidParameter("tabulated needs two equal-length columns, >= 2 rows")
        if not (np.all(np.isfinite(s)) and np.all(np.isfinite(v))):
            raise InvalidParameter("tabulated entries must be finite")
        if not np.all(np.diff(s) > 0):
            raise InvalidParameter("tabulated abscissas must be strictly increasing")
        zero = s == 0.0
        if np.any(v[zero] != 0.0):
            raise InvalidParameter("a tabulated row at s = 0 must have phi(0) = 0")
        pos_s, pos_v = s[s > 0.0], v[s > 0.0]
        neg_s, neg_v = -s[s < 0.0][::-1], -v[s < 0.0][::-1]
        grid = np.unique(np.concatenate([pos_s, neg_s]))
        if grid.size == 0:
            raise InvalidParameter("tabulated needs at least one row with s != 0")
        vals = np.zeros(grid.shape)
        cnt = np.zeros(grid.shape)
        for gs, gv in ((pos_s, pos_v), (neg_s, neg_v)):
            if gs.size:
                inside = (grid >= gs[0]) & (grid <= gs[-1])
                vals[inside] += np.interp(grid[inside], gs, gv)
                cnt[inside] += 1.0
        vals /= cnt
        canon_s = np.concatenate([[0.0], grid])
        canon_v = np.concatenate([[0.0], vals])
        canon_s.setflags(write=False)
        canon_v.setflags(write=False)
        return cls("tabulated", table_s=canon_s, table_v=canon_v)

    @classmethod
    def tabulated_from_file(cls, path):
        """Load a two-column text file (s, phi(s)); '#' comments allowed."""
        data = np.loadtxt(path, dtype=float, ndmin=2)
        if data.shape[1] != 2:
            raise InvalidParameter(f"{path}: expected two columns, got {data.shape[1]}")
        return cls.tabulated(data[:, 0], data[:, 1])

    def encode(self):
        """Kernel encoding (fam, p1, p2, theta, tab_s, tab_v)."""
        fam = FAMILY_CODES[self.family]
        if self.family in ("saturation", "arctan", "sigmoid"):
            p1, p2 = self.mu, self.sigma
        elif self.family in ("power", "power_sum"):
            p1, p2 = self.lam, 0.0
        elif self.family == "variable_power":
            p1, p2 = self.mu, 0.0
        else:
            p1, p2 = 0.0, 0.0
        if self.family == "tabulated":
            tab_s, tab_v = self.table_s, self.table_v
        else:
            tab_s, tab_v = _kernels.dummy_table()
        return fam, p1, p2, self.theta, tab_s, tab_v


def _positive(value, name):
    if not (value > 0.0 and math.isfinite(value)):
        raise InvalidParameter(f"{name} must be positive and finite, got {value}")


def eval_phi(func, s):
    """phi(s) for scalar or array s; odd symmetry is exact by construction."""
    fam, p1, p2, th, tab_s, tab_v = func.encode()
    if np.ndim(s) == 0:
        return _kernels.phi_scalar(fam, p1, p2, th, tab_s, tab_v, 0, tab_s.shape[0], float(s))
    svec = np.ascontiguousarray(s, dtype=float).reshape(-1)
    out = np.empty_like(svec)
    _kernels.phi_array(fam, p1, p2, th, tab_s, tab_v, 0, tab_s.shape[0], svec, out)
    return out.reshape(np.shape(s))


def slope_at_origin(func):
    """Analytic origin slope rho(0) = lim phi(s)/s; math.inf when unbounded."""
    base = {
        "identity": 1.0,
        "saturation": func.mu * func.sigma,
        "arctan": func.mu * func.sigma,
        "sigmoid": 0.25 * func.mu * func.sigma,
        "power": math.inf,
        "variable_power": math.inf,
        "power_sum": math.inf,
    }.get(func.family)
    if base is None:
        # canonical odd-part table: secant through the first positive
        # breakpoint (the table is linear on [0, s_1])
        base = float(func.table_v[1] / func.table_s[1])
    if math.isinf(base):
        return math.inf
    return base + func.theta


@dataclass(frozen=True)
class SlopeProfile:
    """An odd function together with its (extended-real) origin slope."""

    func: OddFunction
    rho_at_origin: float

    @classmethod
    def from_func(cls, func):
        return cls(func, slope_at_origin(func))


def slope(profile, s):
    """rho(s) = phi(s)/s for s != 0; the origin limit at s = 0."""
    if np.ndim(s) == 0:
        if s == 0.0:
            return profile.rho_at_origin
        return float(eval_phi(profile.func, s)) / float(s)
    s = np.asarray(s, dtype=float)
    out = np.empty(s.shape)
    nz = s != 0.0
    out[~nz] = profile.rho_at_origin
    out[nz] = eval_phi(profile.func, s[nz]) / s[nz]
    return out


# relative slack on sector membership: interpolated or transcendental slope
# evaluations carry rounding of a few ulp, which would fracture regions whose
# boundary sits exactly on rho_lo or rho_hi
MEMBER_SLACK = 1e-12


def _member_bounds(rho_lo, rho_hi):
    lo = rho_lo - MEMBER_SLACK * max(abs(rho_lo), 1.0)
    hi = rho_hi + MEMBER_SLACK * max(abs(rho_hi), 1.0) if math.isfinite(rho_hi) else rho_hi
    return lo, hi


def _rho_ok(profile, s, rho_lo, rho_hi):
    lo, hi = _member_bounds(rho_lo, rho_hi)
    r = slope(profile, s)
    return lo <= r <= hi


def _refine(profile, good, bad, rho_lo, rho_hi):
    """Bisect the ok/not-ok boundary; returns the ok-side endpoint."""
    for _ in range(200):
        span = abs(bad - good)
        if span <= BISECT_REL * max(abs(good), abs(bad)):
            break
        mid = 0.5 * (good + bad)
        if mid == good or mid == bad:
            break
        if _rho_ok(profile, mid, rho_lo, rho_hi):
            good = mid
        else:
            bad = mid
    return good


def sector_region(profile, rho_lo, rho_hi):
    """Maximal interval [x_lo, x_hi] with rho_lo <= phi(s)/s <= rho_hi on it.

    The bounds apply to |s|; x_lo = 0 means the sector holds down to the
    origin and x_hi = math.inf means it holds for all large |s|. The slope is
    sampled on a dense log grid, runs of validity are extracted, the longest
    run is kept, and each finite boundary is sharpened by bisection (the
    returned endpoints always lie on the valid side).
    """
    if not (0.0 <= rho_lo and math.isfinite(rho_lo)):
        raise InvalidParameter(f"rho_lo must be finite and >= 0, got {rho_lo}")
    if rho_hi >= RHO_INF_SURROGATE:
        rho_hi = math.inf
    if not rho_lo < rho_hi:
        raise InvalidParameter(f"need rho_lo < rho_hi, got ({rho_lo}, {rho_hi})")

    decades = int(round(math.log10(GRID_S_MAX / GRID_S_MIN)))
    grid = np.logspace(math.log10(GRID_S_MIN), math.log10(GRID_S_MAX),
                       decades * GRID_PER_DECADE + 1)
    m_lo, m_hi = _member_bounds(rho_lo, rho_hi)
    r = slope(profile, grid)
    ok = (r >= m_lo) & (r <= m_hi)

    rho0 = profile.rho_at_origin
    origin_ok = m_lo <= rho0 <= m_hi if math.isfinite(rho0) else math.isinf(rho_hi)

    if not np.any(ok):
        if origin_ok:
            # sector collapses below the grid floor
            hi = _refine(profile, GRID_S_MIN * 1e-6, grid[0], rho_lo, rho_hi)
            return 0.0, hi
        raise EmptyRegion(
            f"no |s| in [{GRID_S_MIN:g}, {GRID_S_MAX:g}] satisfies "
            f"{rho_lo} <= rho(s) <= {rho_hi}"
        )

    # maximal runs of consecutive ok samples
    idx = np.flatnonzero(ok)
    breaks = np.flatnonzero(np.diff(idx) > 1)
    starts = np.concatenate(([0], breaks + 1))
    ends = np.concatenate((breaks, [idx.size - 1]))
    runs = [(idx[s], idx[e]) for s, e in zip(starts, ends)]

    def run_length(run):
        i0, i1 = run
        left = 0.0 if (i0 == 0 and origin_ok) else grid[i0]
        if i1 == grid.size - 1:
            return math.inf
        return grid[i1] - left

    i0, i1 = max(runs, key=run_length)

    if i0 == 0 and origin_ok:
        x_lo = 0.0
    elif i0 == 0:
        # valid at the grid floor but not at the origin: boundary below the grid
        x_lo = _refine(profile, grid[0], 0.0, rho_lo, rho_hi)
    else:
        x_lo = _refine(profile, grid[i0], grid[i0 - 1], rho_lo, rho_hi)

    if i1 == grid.size - 1:
        x_hi = math.inf
        last_good = grid[-1]
        for probe in FAR_PROBES:
            if _rho_ok(profile, probe, rho_lo, rho_hi):
                last_good = probe
            else:
                x_hi = _refine(profile, last_good, probe, rho_lo, rho_hi)
                break
    else:
        x_hi = _refine(profile, grid[i1], grid[i1 + 1], rho_lo, rho_hi)

    return float(x_lo), float(x_hi)


def sector_region_scalar(profile, gain, rho_lo, rho_hi):
    """Region for the scalar-wrapped law, evaluated on phi(kappa s)/(kappa s).

    kappa = sum(k). Oddness makes the wrapped slope an even function of
    kappa*s, so the region is the componentwise one shrunk by |kappa|.
    """
    kappa = gain.kappa
    if kappa == 0.0:
        raise ZeroGainSum("sum of gain entries is zero; scalar-wrapped region undefined")
    x_lo, x_hi = sector_region(profile, rho_lo, rho_hi)
    scale = abs(kappa)
    return x_lo / scale, (math.inf if math.isinf(x_hi) else x_hi / scale)
