"""Hot numerical kernels with a numba backend and a pure-Python fallback.

Both backends are built from the same source functions by the factory below,
so they execute the same statement sequence. Set SECTORCERT_DISABLE_JIT=1 to
force the pure-Python path; the package also falls back automatically when
numba is not importable.

Function family codes (column `fam`):
    0 identity          phi(s) = s
    1 saturation        phi(s) = mu * sat(sigma * s)
    2 arctan            phi(s) = mu * atan(sigma * s)
    3 sigmoid           phi(s) = mu * (1 - exp(-0.5 sigma s)) / (1 + exp(-0.5 sigma s))
                                = mu * tanh(sigma s / 4)
    4 power             phi(s) = sign(s) |s|^lam
    5 variable power    phi(s) = sign(s) |s|^psi(s),  psi(s) = mu (s^2 + mu^-2) / (s^2 + 1)
    6 power sum         phi(s) = sign(s) (|s|^lam + |s|^(1/lam))
    7 tabulated         linear interpolation of the odd-part sample table

Every family may carry an additive affine term theta * s (theta >= 0); the
affine-extended family is encoded as the base code plus a nonzero `th` entry.
Oddness is exact by construction: the value is computed on |s| and the sign
of s is applied afterwards.
"""

import math
import os

import numpy as np

DIVERGENCE_LIMIT = 1.0e12

LAW_LINEAR = 0
LAW_COMPONENTWISE = 1
LAW_SCALAR_WRAPPED = 2


def _make_kernels(jit):
    if jit:
        from numba import njit

        dec = njit(cache=False)
    else:

        def dec(f):
            return f

    def phi_scalar(fam, p1, p2, th, tab_s, tab_v, lo, ln, s):
        """Evaluate one odd function at scalar s. Exactly odd by construction."""
        a = abs(s)
        if fam == 0:
            v = a
        elif fam == 1:
            z = p2 * a
            if z > 1.0:
                z = 1.0
            v = p1 * z
        elif fam == 2:
            v = p1 * math.atan(p2 * a)
        elif fam == 3:
            # (1 - e^-x)/(1 + e^-x) written as tanh(x/2): stable near 0
            v = p1 * math.tanh(0.25 * p2 * a)
        elif fam == 4:
            v = a ** p1
        elif fam == 5:
            q = a * a
            ps = p1 * (q + 1.0 / (p1 * p1)) / (q + 1.0)
            v = a ** ps
        elif fam == 6:
            v = a ** p1 + a ** (1.0 / p1)
        else:
            # canonical odd-part table anchored at (0, 0); clamps above the end
            v = _interp(tab_s, tab_v, lo, ln, a)
        if th > 0.0:
            v = v + th * a
        if s > 0.0:
            return v
        elif s < 0.0:
            return -v
        return 0.0

    def _interp(tab_s, tab_v, lo, ln, x):
        """Linear interpolation on tab_s[lo:lo+ln] with clamping at both ends."""
        if x <= tab_s[lo]:
            return tab_v[lo]
        if x >= tab_s[lo + ln - 1]:
            return tab_v[lo + ln - 1]
        a = lo
        b = lo + ln - 1
        while b - a > 1:
            m = (a + b) // 2
            if tab_s[m] <= x:
                a = m
            else:
                b = m
        w = (x - tab_s[a]) / (tab_s[b] - tab_s[a])
        return tab_v[a] + w * (tab_v[b] - tab_v[a])

    if jit:
        _interp = dec(_interp)
        phi_scalar = dec(phi_scalar)

    def phi_array(fam, p1, p2, th, tab_s, tab_v, lo, ln, svec, out):
        for i in range(svec.shape[0]):
            out[i] = phi_scalar(fam, p1, p2, th, tab_s, tab_v, lo, ln, svec[i])

    def _control(law, kvec, fam, p1, p2, th, tab_s, tab_v, tab_off, tab_len, x):
        n = x.shape[0]
        if law == LAW_LINEAR:
            acc = 0.0
            for i in range(n):
                acc += kvec[i] * x[i]
            return acc
        elif law == LAW_COMPONENTWISE:
            acc = 0.0
            for i in range(n):
                acc += kvec[i] * phi_scalar(
                    fam[i], p1[i], p2[i], th[i], tab_s, tab_v, tab_off[i], tab_len[i], x[i]
                )
            return acc
        else:
            acc = 0.0
            for i in range(n):
                acc += kvec[i] * x[i]
            return phi_scalar(fam[0], p1[0], p2[0], th[0], tab_s, tab_v, tab_off[0], tab_len[0], acc)

    if jit:
        _control = dec(_control)

    def rk4_loop(
        amat, bvec, dmat, kvec, law,
        fam, p1, p2, th, tab_s, tab_v, tab_off, tab_len,
        x0, dt, nsteps, fsamp, states, controls,
    ):
        """Classical fixed-step RK4 for dx/dt = A x + B u(x) + D f(t).

        fsamp holds the disturbance on the half-step grid: row 2k is f(t_k),
        row 2k+1 is f(t_k + dt/2). Returns the number of completed steps; on
        divergence (|x| > DIVERGENCE_LIMIT) the trajectory is truncated there.
        """
        n = x0.shape[0]
        l = dmat.shape[1]
        x = np.empty(n)
        xs = np.empty(n)
        k1 = np.empty(n)
        k2 = np.empty(n)
        k3 = np.empty(n)
        k4 = np.empty(n)
        for i in range(n):
            x[i] = x0[i]
            states[0, i] = x0[i]
        controls[0] = _control(law, kvec, fam, p1, p2, th, tab_s, tab_v, tab_off, tab_len, x)
        for k in range(nsteps):
            u = controls[k]
            for i in range(n):
                acc = bvec[i] * u
                for j in range(n):
                    acc += amat[i, j] * x[j]
                for j in range(l):
                    acc += dmat[i, j] * fsamp[2 * k, j]
                k1[i] = acc
            for i in range(n):
                xs[i] = x[i] + 0.5 * dt * k1[i]
            u = _control(law, kvec, fam, p1, p2, th, tab_s, tab_v, tab_off, tab_len, xs)
            for i in range(n):
                acc = bvec[i] * u
                for j in range(n):
                    acc += amat[i, j] * xs[j]
                for j in range(l):
                    acc += dmat[i, j] * fsamp[2 * k + 1, j]
                k2[i] = acc
            for i in range(n):
                xs[i] = x[i] + 0.5 * dt * k2[i]
            u = _control(law, kvec, fam, p1, p2, th, tab_s, tab_v, tab_off, tab_len, xs)
            for i in range(n):
                acc = bvec[i] * u
                for j in range(n):
                    acc += amat[i, j] * xs[j]
                for j in range(l):
                    acc += dmat[i, j] * fsamp[2 * k + 1, j]
                k3[i] = acc
            for i in range(n):
                xs[i] = x[i] + dt * k3[i]
            u = _control(law, kvec, fam, p1, p2, th, tab_s, tab_v, tab_off, tab_len, xs)
            for i in range(n):
                acc = bvec[i] * u
                for j in range(n):
                    acc += amat[i, j] * xs[j]
                for j in range(l):
                    acc += dmat[i, j] * fsamp[2 * k + 2, j]
                k4[i] = acc
            nrm2 = 0.0
            for i in range(n):
                x[i] = x[i] + (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
                states[k + 1, i] = x[i]
                nrm2 += x[i] * x[i]
            controls[k + 1] = _control(law, kvec, fam, p1, p2, th, tab_s, tab_v, tab_off, tab_len, x)
            if not nrm2 <= DIVERGENCE_LIMIT * DIVERGENCE_LIMIT:
                return k + 1
        return nsteps

    if jit:
        phi_array = dec(phi_array)
        rk4_loop = dec(rk4_loop)

    return phi_scalar, phi_array, rk4_loop


phi_scalar_py, phi_array_py, rk4_loop_py = _make_kernels(jit=False)

_disabled = os.environ.get("SECTORCERT_DISABLE_JIT", "") not in ("", "0")
try:
    import numba  # noqa: F401

    JIT_AVAILABLE = True
except ImportError:
    JIT_AVAILABLE = False

JIT_ENABLED = JIT_AVAILABLE and not _disabled

if JIT_ENABLED:
    phi_scalar_jit, phi_array_jit, rk4_loop_jit = _make_kernels(jit=True)
    phi_scalar, phi_array, rk4_loop = phi_scalar_jit, phi_array_jit, rk4_loop_jit
else:
    phi_scalar_jit = phi_array_jit = rk4_loop_jit = None
    phi_scalar, phi_array, rk4_loop = phi_scalar_py, phi_array_py, rk4_loop_py


def backend_name():
    return "numba" if JIT_ENABLED else "python"


def dummy_table():
    """Placeholder table arrays for encodings with no tabulated family."""
    return np.array([0.0, 1.0]), np.array([0.0, 0.0])
