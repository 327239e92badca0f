# CR-Calculus for Real-Valued Functions of Complex Vectors
# Dual real/complex representations, the real inner product, the Hermitian
# quadratic cost x^H A x and its analytic and finite-difference gradients.
"""
Derivative convention
=====================
The complex partial derivative used throughout is

    d/dw_m := d/dx_m^1 + j d/dx_m^2

with w_m = x_m^1 + j x_m^2. There is no 1/2 factor, so for real-valued f it
equals twice the conjugate Wirtinger derivative df/dw_m-bar. With this
convention the gradient of f(x) = x^H A x is 2Ax. The finite-difference
oracle is built to the same convention.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from numpy.typing import NDArray

from config import HERMITIAN_TOL_REL, IMAG_TOL_REL, FD_STEP
from core import log_debug
from error_handler import (
    DimensionError,
    HermitianError,
    InvalidArgumentError,
    NonFiniteError,
)

ComplexVec = NDArray[np.complex128]
RealVec = NDArray[np.float64]
CostFunction = Callable[[ComplexVec], float]


def as_complex_vec(v, name: str = "v") -> ComplexVec:
    """Validate and return v as a 1-D complex128 array"""
    arr = np.asarray(v, dtype=np.complex128)
    if arr.ndim != 1 or arr.size < 1:
        raise DimensionError(f"{name} must be a non-empty vector", shape=list(arr.shape))
    if not np.all(np.isfinite(arr)):
        raise NonFiniteError(f"{name} has non-finite entries")
    return arr


def as_real_vec(v, name: str = "v") -> RealVec:
    """Validate and return v as a 1-D float64 array of even length"""
    arr = np.asarray(v, dtype=np.float64)
    if arr.ndim != 1 or arr.size < 2 or arr.size % 2:
        raise DimensionError(f"{name} must have even length >= 2", length=int(arr.size))
    if not np.all(np.isfinite(arr)):
        raise NonFiniteError(f"{name} has non-finite entries")
    return arr


def _require_same_length(u: np.ndarray, v: np.ndarray):
    if u.shape != v.shape:
        raise DimensionError("length mismatch", left=int(u.size), right=int(v.size))


@dataclass(frozen=True, eq=False)
class HermitianMatrix:
    """Square complex matrix with a_ik = conj(a_ki) within hermitian_tol.

    hermitian_tol defaults to HERMITIAN_TOL_REL * max|a_ik|. Construction
    never repairs its input; see symmetrize().
    """
    entries: NDArray[np.complex128]
    hermitian_tol: Optional[float] = field(default=None, repr=False)

    def __post_init__(self):
        a = np.array(self.entries, dtype=np.complex128)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise DimensionError("matrix must be square and non-empty", shape=list(a.shape))
        if not np.all(np.isfinite(a)):
            raise NonFiniteError("matrix has non-finite entries")

        tol = self.hermitian_tol
        if tol is None:
            tol = HERMITIAN_TOL_REL * float(np.max(np.abs(a)))
        asymmetry = float(np.max(np.abs(a - a.conj().T)))
        if asymmetry > tol:
            i, k = np.unravel_index(int(np.argmax(np.abs(a - a.conj().T))), a.shape)
            raise HermitianError(
                f"a[{i + 1},{k + 1}] differs from conj(a[{k + 1},{i + 1}]) by {asymmetry:.3e} (tolerance {tol:.3e})",
                asymmetry=asymmetry,
                tolerance=tol,
            )

        a.setflags(write=False)
        object.__setattr__(self, "entries", a)
        object.__setattr__(self, "hermitian_tol", tol)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def row_inf_norm(self) -> float:
        return float(np.max(np.sum(np.abs(self.entries), axis=1)))

    def require_dim(self, n: int):
        if n != self.n:
            raise DimensionError("matrix and vector dimensions differ", matrix=self.n, vector=n)


def symmetrize(a) -> HermitianMatrix:
    """Explicit repair: return the Hermitian part (A + A^H)/2"""
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError("matrix must be square", shape=list(a.shape))
    repaired = (a + a.conj().T) / 2
    log_debug("Matrix symmetrized", {
        "n": a.shape[0],
        "max_asymmetry": float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0
    })
    return HermitianMatrix(repaired, hermitian_tol=0.0)


def to_real(v) -> RealVec:
    """Interleaved (Re v_1, Im v_1, ..., Re v_n, Im v_n)"""
    v = as_complex_vec(v)
    out = np.empty(2 * v.size, dtype=np.float64)
    out[0::2] = v.real
    out[1::2] = v.imag
    return out


def to_complex(v) -> ComplexVec:
    """Inverse of to_real"""
    v = as_real_vec(v)
    out = np.empty(v.size // 2, dtype=np.complex128)
    out.real = v[0::2]
    out.imag = v[1::2]
    return out


def inner_real(v, w) -> float:
    """<v, w> = sum_i v_i w_i over the 2n real coordinates"""
    v = as_real_vec(v, "v")
    w = as_real_vec(w, "w")
    _require_same_length(v, w)
    return float(np.dot(v, w))


def hadamard(u, v) -> ComplexVec:
    u = as_complex_vec(u, "u")
    v = as_complex_vec(v, "v")
    _require_same_length(u, v)
    return u * v


def quadratic_cost(A: HermitianMatrix, x) -> float:
    """f(x) = Re(x^H A x); the imaginary part must vanish within IMAG_TOL_REL * (1 + |f|)"""
    x = as_complex_vec(x, "x")
    A.require_dim(x.size)
    value = np.vdot(x, A.entries @ x)
    if abs(value.imag) > IMAG_TOL_REL * (1.0 + abs(value)):
        raise HermitianError(
            "x^H A x has a non-negligible imaginary part",
            imag=float(value.imag),
            magnitude=float(abs(value)),
        )
    return float(value.real)


def partial_derivative(A: HermitianMatrix, x, m: int, l: int) -> float:
    """df/dx_m^l with 1-based coordinate m; l=1 real part, l=2 imaginary part"""
    x = as_complex_vec(x, "x")
    A.require_dim(x.size)
    if not 1 <= m <= x.size:
        raise InvalidArgumentError(f"coordinate index {m} outside 1..{x.size}", m=m, n=int(x.size))
    if l not in (1, 2):
        raise InvalidArgumentError(f"part selector {l} must be 1 or 2", l=l)
    row_sum = complex(np.dot(A.entries[m - 1], x))
    return 2.0 * (row_sum.real if l == 1 else row_sum.imag)


def euclidean_gradient(A: HermitianMatrix, x) -> ComplexVec:
    """nabla_w f = 2Ax"""
    x = as_complex_vec(x, "x")
    A.require_dim(x.size)
    return 2.0 * (A.entries @ x)


def fd_gradient(cost: CostFunction, x, h: float = FD_STEP) -> ComplexVec:
    """Central-difference gradient under the d/dx^1 + j d/dx^2 convention"""
    x = as_complex_vec(x, "x")
    if not h > 0:
        raise InvalidArgumentError("finite-difference step must be positive", h=h)

    def evaluate(point: ComplexVec, m: int) -> float:
        value = float(cost(point))
        if not np.isfinite(value):
            raise NonFiniteError(f"cost is not finite near coordinate {m + 1}", coordinate=m + 1)
        return value

    grad = np.empty(x.size, dtype=np.complex128)
    for m in range(x.size):
        shifted = x.copy()
        partials = []
        for direction in (1.0, 1j):
            shifted[m] = x[m] + h * direction
            f_plus = evaluate(shifted, m)
            shifted[m] = x[m] - h * direction
            f_minus = evaluate(shifted, m)
            shifted[m] = x[m]
            partials.append((f_plus - f_minus) / (2 * h))
        grad[m] = complex(partials[0], partials[1])
    return grad


def from_conjugate_wirtinger(g) -> ComplexVec:
    """Convert a conjugate-Wirtinger gradient df/dw-bar to the d/dx^1 + j d/dx^2 convention"""
    return 2.0 * as_complex_vec(g, "g")
