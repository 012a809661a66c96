"""Closed-loop ODE simulation with bounded disturbance generators.

Integration is classical fixed-step 4th order (no adaptive stepping), which
keeps runs deterministic and makes Lyapunov finite-differencing trivial. The
control u is always evaluated through phi directly, never through the slope
rho, so families with unbounded slope at the origin integrate cleanly.

The seeded noise generator is splitmix-style 64-bit, implemented here from
the published constants so any other language can reproduce the stream:

    state <- (state + 0x9E3779B97F4A7C15) mod 2^64
    z <- state
    z <- ((z xor (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2^64
    z <- ((z xor (z >> 27)) * 0x94D049BB133111EB) mod 2^64
    output: z xor (z >> 31)

Outputs map to uniforms in [-1, 1) via z * 2^-63 - 1. Noise samples are then
one-pole low-pass filtered and renormalized so the peak norm equals the
requested amplitude.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import InvalidParameter

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def splitmix64_stream(seed, count):
    """Raw 64-bit splitmix outputs as Python ints (reference implementation)."""
    state = seed & _MASK64
    out = []
    for _ in range(count):
        state = (state + _GOLDEN) & _MASK64
        z = state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        out.append(z ^ (z >> 31))
    return out


@dataclass(frozen=True)
class Disturbance:
    """A bounded deterministic disturbance signal f(t).

    kinds: zero, constant (level c), sinusoid (amplitude, frequency, phase),
    bounded_noise (seed, amplitude, cutoff frequency of the smoothing
    filter). Scalar generators drive all l channels through the unit vector
    ones/sqrt(l), so the reported amplitude is the Euclidean norm bound.
    """

    kind: str
    value: float = 0.0
    frequency: float = 0.0
    phase: float = 0.0
    cutoff: float = 0.0
    seed: int = 0

    @classmethod
    def zero(cls):
        return cls("zero")

    @classmethod
    def constant(cls, c):
        return cls("constant", value=float(c))

    @classmethod
    def sinusoid(cls, amplitude, frequency, phase=0.0):
        if amplitude < 0.0 or frequency < 0.0:
            raise InvalidParameter("sinusoid amplitude and frequency must be >= 0")
        return cls("sinusoid", value=float(amplitude), frequency=float(frequency),
                   phase=float(phase))

    @classmethod
    def bounded_noise(cls, seed, amplitude, cutoff):
        if amplitude < 0.0 or cutoff <= 0.0:
            raise InvalidParameter("noise needs amplitude >= 0 and cutoff > 0")
        return cls("bounded_noise", value=float(amplitude), cutoff=float(cutoff),
                   seed=int(seed))

    def samples(self, l, dt, nsteps, f_bar):
        """Samples on the half-step grid t_j = j dt/2, shape (2 nsteps + 1, l).

        Raises InvalidParameter when the configured amplitude exceeds f_bar;
        every returned row satisfies |f| <= f_bar.
        """
        m = 2 * nsteps + 1
        if self.kind == "zero":
            return np.zeros((m, l))
        if abs(self.value) > f_bar:
            raise InvalidParameter(
                f"disturbance amplitude {abs(self.value):g} exceeds the bound {f_bar:g}"
            )
        unit = np.ones(l) / math.sqrt(l)
        t = 0.5 * dt * np.arange(m)
        if self.kind == "constant":
            f = np.outer(np.full(m, self.value), unit)
        elif self.kind == "sinusoid":
            f = np.outer(self.value * np.sin(self.frequency * t + self.phase), unit)
        elif self.kind == "bounded_noise":
            raw = splitmix64_stream(self.seed, m * l)
            u = np.array(raw, dtype=float).reshape(m, l) * 2.0 ** -63 - 1.0
            alpha = math.exp(-2.0 * math.pi * self.cutoff * 0.5 * dt)
            f = np.empty((m, l))
            prev = np.zeros(l)
            for j in range(m):
                prev = alpha * prev + (1.0 - alpha) * u[j]
                f[j] = prev
            peak = float(np.max(np.linalg.norm(f, axis=1)))
            if peak > 0.0:
                f *= self.value / peak
        else:
            raise InvalidParameter(f"unknown disturbance kind {self.kind!r}")
        return _cap_rows(f, f_bar)


def _cap_rows(f, bound):
    """Scale any row whose norm exceeds bound back onto it (rounding hygiene)."""
    for _ in range(4):
        norms = np.linalg.norm(f, axis=1)
        over = norms > bound
        if not over.any():
            return f
        f[over] *= ((bound / norms[over]) * (1.0 - 1e-15))[:, None]
    return f


@dataclass(frozen=True)
class Trajectory:
    """Uniformly sampled closed-loop run. diverged marks truncation at the
    |x| > 1e12 cutoff."""

    times: np.ndarray
    states: np.ndarray
    controls: np.ndarray
    disturbances: np.ndarray
    diverged: bool

    def norms(self):
        return np.linalg.norm(self.states, axis=1)

    def to_csv(self, path):
        """Write the contract CSV: columns t, x1..xn, u, f1..fl."""
        n = self.states.shape[1]
        l = self.disturbances.shape[1]
        header = ",".join(
            ["t"] + [f"x{i + 1}" for i in range(n)] + ["u"] + [f"f{j + 1}" for j in range(l)]
        )
        data = np.column_stack(
            [self.times, self.states, self.controls, self.disturbances]
        )
        np.savetxt(path, data, delimiter=",", header=header, comments="", fmt="%.17g")


def _encode_for_kernels(law, n):
    if law.variant == "linear":
        code, funcs = _kernels.LAW_LINEAR, []
    elif law.variant == "componentwise":
        code, funcs = _kernels.LAW_COMPONENTWISE, list(law.functions)
    else:
        code, funcs = _kernels.LAW_SCALAR_WRAPPED, list(law.functions)
    m = max(len(funcs), 1)
    fam = np.zeros(m, dtype=np.int64)
    p1 = np.zeros(m)
    p2 = np.zeros(m)
    th = np.zeros(m)
    tab_off = np.zeros(m, dtype=np.int64)
    tab_len = np.full(m, 2, dtype=np.int64)
    if funcs:
        seg_s, seg_v, pos = [], [], 0
        for i, fn in enumerate(funcs):
            fcode, a, b, theta, ts, tv = fn.encode()
            fam[i], p1[i], p2[i], th[i] = fcode, a, b, theta
            tab_off[i], tab_len[i] = pos, len(ts)
            seg_s.append(np.asarray(ts, dtype=float))
            seg_v.append(np.asarray(tv, dtype=float))
            pos += len(ts)
        tab_s = np.concatenate(seg_s)
        tab_v = np.concatenate(seg_v)
    else:
        ds, dv = _kernels.dummy_table()
        tab_s, tab_v = np.array(ds, dtype=float), np.array(dv, dtype=float)
    return code, fam, p1, p2, th, tab_s, tab_v, tab_off, tab_len


def simulate(plant, law, dist, x0, dt=1e-3, t_end=30.0):
    """Integrate dx/dt = A x + B u(x) + D f(t) and return the Trajectory.

    Deterministic for fixed inputs (noise included, via its seed). On
    divergence the trajectory is truncated at the offending step and flagged
    rather than raising, so parameter sweeps survive unstable corners.
    """
    if dt <= 0.0:
        raise InvalidParameter(f"dt must be positive, got {dt}")
    if t_end < dt:
        raise InvalidParameter(f"t_end must be >= dt, got {t_end}")
    law.check_against(plant)
    x0 = np.asarray(x0, dtype=float).reshape(-1)
    if x0.shape[0] != plant.n:
        raise InvalidParameter(f"x0 has {x0.shape[0]} entries for n={plant.n}")
    if not np.all(np.isfinite(x0)):
        raise InvalidParameter("x0 must be finite")

    nsteps = max(int(round(t_end / dt)), 1)
    code, fam, p1, p2, th, tab_s, tab_v, tab_off, tab_len = _encode_for_kernels(law, plant.n)
    fsamp = dist.samples(plant.l, dt, nsteps, plant.f_bar)
    states = np.zeros((nsteps + 1, plant.n))
    controls = np.zeros(nsteps + 1)
    completed = _kernels.rk4_loop(
        np.array(plant.a, dtype=float),
        np.array(plant.b[:, 0], dtype=float),
        np.array(plant.d, dtype=float),
        np.array(law.gain.k, dtype=float),
        code, fam, p1, p2, th, tab_s, tab_v, tab_off, tab_len,
        x0.copy(), float(dt), nsteps, fsamp, states, controls,
    )
    m = completed + 1
    return Trajectory(
        times=dt * np.arange(m),
        states=states[:m].copy(),
        controls=controls[:m].copy(),
        disturbances=fsamp[0:2 * m:2].copy(),
        diverged=completed < nsteps,
    )


def empirical_ultimate_bound(traj, tail_fraction):
    """Max state norm over the final tail_fraction of the time window."""
    if not (0.0 < tail_fraction <= 1.0):
        raise InvalidParameter(f"tail_fraction must be in (0, 1], got {tail_fraction}")
    last = traj.states.shape[0] - 1
    start = int(math.floor((1.0 - tail_fraction) * last))
    return float(np.max(np.linalg.norm(traj.states[start:], axis=1)))


def time_to_ball(traj, eps):
    """Earliest sampled time t* with |x(t)| < eps for all t >= t*, else None."""
    if eps <= 0.0:
        raise InvalidParameter(f"eps must be positive, got {eps}")
    norms = traj.norms()
    if norms[-1] >= eps:
        return None
    inside = norms < eps
    idx = len(norms) - 1
    while idx > 0 and inside[idx - 1]:
        idx -= 1
    return float(traj.times[idx])


def lyapunov_trace(traj, p):
    """V(t_k) = x(t_k)^T P x(t_k) along the trajectory."""
    p = np.asarray(p, dtype=float)
    if p.shape != (traj.states.shape[1],) * 2:
        raise InvalidParameter(f"P has shape {p.shape}, states have n={traj.states.shape[1]}")
    if not np.allclose(p, p.T, rtol=0.0, atol=1e-10 * max(np.abs(p).max(), 1.0)):
        raise InvalidParameter("P must be symmetric")
    if np.linalg.eigvalsh(0.5 * (p + p.T)).min() <= 0.0:
        raise InvalidParameter("P must be positive definite")
    return np.einsum("ti,ij,tj->t", traj.states, p, traj.states)
