"""Plant, gain, and control-law definitions plus closed-loop assembly.

The plant is the single-input linear system dx/dt = A x + B u + D f with a
pointwise norm bound |f(t)| <= f_bar on the disturbance. Three control-law
variants share one fixed row gain K: the plain linear law u = K x, the
componentwise law u = sum_i k_i phi_i(x_i), and the scalar-wrapped law
u = phi(K x).
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, InvalidParameter, Uncontrollable

CONTROLLABILITY_RTOL = 1e-9


def _matrix(value, name):
    m = np.asarray(value, dtype=float)
    if m.ndim != 2:
        raise DimensionMismatch(f"{name} must be a 2-d matrix, got ndim={m.ndim}")
    if not np.all(np.isfinite(m)):
        raise InvalidParameter(f"{name} contains non-finite entries")
    m = m.copy()
    m.setflags(write=False)
    return m


@dataclass(frozen=True)
class Plant:
    """Immutable plant data (A, B, D, f_bar)."""

    a: np.ndarray
    b: np.ndarray
    d: np.ndarray
    f_bar: float

    def __init__(self, a, b, d, f_bar):
        a = _matrix(a, "A")
        b = np.asarray(b, dtype=float)
        if b.ndim == 1:
            b = b.reshape(-1, 1)
        b = _matrix(b, "B")
        d = np.asarray(d, dtype=float)
        if d.ndim == 1:
            d = d.reshape(-1, 1)
        d = _matrix(d, "D")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "f_bar", float(f_bar))

    @property
    def n(self):
        return self.a.shape[0]

    @property
    def l(self):
        return self.d.shape[1]


@dataclass(frozen=True)
class Gain:
    """Row gain vector k of length n; u_lin = k . x."""

    k: np.ndarray

    def __init__(self, k):
        k = np.asarray(k, dtype=float).reshape(-1)
        if not np.all(np.isfinite(k)):
            raise InvalidParameter("gain contains non-finite entries")
        k = k.copy()
        k.setflags(write=False)
        object.__setattr__(self, "k", k)

    @property
    def n(self):
        return self.k.shape[0]

    @property
    def row(self):
        return self.k.reshape(1, -1)

    @property
    def kappa(self):
        """Sum of gain entries; the scalar-wrapped region scale."""
        return float(np.sum(self.k))


@dataclass(frozen=True)
class ControlLaw:
    """One of the three law variants over a shared gain.

    variant: "linear", "componentwise", or "scalar_wrapped".
    functions: n odd functions for componentwise (all equal reproduces the
    uniform law; distinct entries realize the per-component generalization),
    a 1-tuple for scalar_wrapped, empty for linear.
    """

    variant: str
    gain: Gain
    functions: tuple = field(default=())

    def __post_init__(self):
        if self.variant not in ("linear", "componentwise", "scalar_wrapped"):
            raise InvalidParameter(f"unknown law variant {self.variant!r}")
        if self.variant == "linear" and self.functions:
            raise InvalidParameter("linear law carries no functions")
        if self.variant == "scalar_wrapped" and len(self.functions) != 1:
            raise InvalidParameter("scalar_wrapped law carries exactly one function")
        if self.variant == "componentwise" and not self.functions:
            raise InvalidParameter("componentwise law needs at least one function")

    @classmethod
    def linear(cls, gain):
        return cls("linear", gain, ())

    @classmethod
    def componentwise(cls, gain, functions):
        try:
            funcs = tuple(functions)
        except TypeError:
            funcs = (functions,)
        if len(funcs) == 1 and gain.n > 1:
            funcs = funcs * gain.n
        return cls("componentwise", gain, funcs)

    @classmethod
    def scalar_wrapped(cls, gain, function):
        return cls("scalar_wrapped", gain, (function,))

    def check_against(self, plant):
        if self.gain.n != plant.n:
            raise DimensionMismatch(
                f"gain length {self.gain.n} does not match plant dimension {plant.n}"
            )
        if self.variant == "componentwise" and len(self.functions) != plant.n:
            raise DimensionMismatch(
                f"componentwise law carries {len(self.functions)} functions for n={plant.n}"
            )


def validate_plant(plant):
    """Dimension and controllability checks; returns the plant unchanged.

    Controllability of (A, B) is decided from the singular values of the
    controllability matrix [B, AB, ..., A^(n-1) B]: all must exceed
    CONTROLLABILITY_RTOL times the largest one.
    """
    a, b = plant.a, plant.b
    n = a.shape[0]
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"A must be square, got {a.shape}")
    if b.shape != (n, 1):
        raise DimensionMismatch(f"B must be {n}x1, got {b.shape}")
    if plant.d.shape[0] != n:
        raise DimensionMismatch(f"D must have {n} rows, got {plant.d.shape}")
    if plant.f_bar < 0:
        raise InvalidParameter("f_bar must be nonnegative")
    blocks = [b]
    for _ in range(n - 1):
        blocks.append(a @ blocks[-1])
    ctrb = np.hstack(blocks)
    sv = np.linalg.svd(ctrb, compute_uv=False)
    if sv[0] == 0.0 or sv[-1] < CONTROLLABILITY_RTOL * sv[0]:
        raise Uncontrollable(
            f"controllability matrix is rank deficient (sigma_min/sigma_max = "
            f"{0.0 if sv[0] == 0 else sv[-1] / sv[0]:.3e})"
        )
    return plant


def closed_loop_matrix(plant, gain, psi):
    """A + B K Psi for a diagonal slope assignment Psi.

    psi may be a length-n vector of diagonal entries or a full n x n
    diagonal matrix.
    """
    psi = np.asarray(psi, dtype=float)
    if psi.ndim == 1:
        diag = psi
    elif psi.ndim == 2:
        if psi.shape != (plant.n, plant.n):
            raise DimensionMismatch(f"Psi must be {plant.n}x{plant.n}, got {psi.shape}")
        diag = np.diag(psi)
    else:
        raise DimensionMismatch("Psi must be a vector or a square matrix")
    if diag.shape[0] != plant.n:
        raise DimensionMismatch(f"Psi has {diag.shape[0]} entries for n={plant.n}")
    if not np.all(np.isfinite(diag)):
        raise InvalidParameter("Psi entries must be finite")
    # A + B (K Psi): K Psi scales column i of K by psi_i
    return plant.a + plant.b @ (gain.row * diag)
