# Complex Circle Manifold
# Point validation, tangent space, projection, Riemannian gradient and retraction
"""
The complex circle manifold M is the product of n unit circles in C,
embedded in R^2n through the interleaved real representation. At a point x
the tangent space is

    T_x M = {z : Re{z * conj(x)} = 0}

and the orthogonal projection onto it is P_x(z) = z - Re{z * conj(x)} * x,
all products taken elementwise. The normal space at x is spanned by the
vectors O_i = x_i e_i; normal_component() applies their sum in closed form.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from config import POINT_TOL, TANGENT_TOL_REL, RETRACT_FLOOR
from cr_calculus import (
    ComplexVec,
    HermitianMatrix,
    RealVec,
    as_complex_vec,
    as_real_vec,
    euclidean_gradient,
)
from error_handler import (
    ConstraintError,
    DimensionError,
    InvalidArgumentError,
    RetractionError,
    TangencyError,
)


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.complex128)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class ManifoldPoint:
    """A point of M. Build validated points with check_point()."""
    x: ComplexVec

    def __post_init__(self):
        object.__setattr__(self, "x", _frozen(self.x))

    @property
    def n(self) -> int:
        return self.x.size


@dataclass(frozen=True, eq=False)
class TangentVector:
    """Vector z anchored at base with Re{z * conj(base.x)} = 0"""
    base: ManifoldPoint
    z: ComplexVec

    def __post_init__(self):
        object.__setattr__(self, "z", _frozen(self.z))
        if self.z.shape != self.base.x.shape:
            raise DimensionError("tangent vector and base point lengths differ",
                                 base=self.base.n, vector=int(self.z.size))

    def scaled(self, t: float) -> "TangentVector":
        return TangentVector(self.base, t * self.z)

    def norm(self) -> float:
        return float(np.linalg.norm(self.z))


@dataclass(frozen=True, eq=False)
class NormalComponent:
    """The part Re{z * conj(x)} * x removed by the projection"""
    v: ComplexVec

    def __post_init__(self):
        object.__setattr__(self, "v", _frozen(self.v))


def _operand(x: ManifoldPoint, z, name: str = "z") -> ComplexVec:
    z = as_complex_vec(z, name)
    if z.shape != x.x.shape:
        raise DimensionError("vector and base point lengths differ", base=x.n, vector=int(z.size))
    return z


def _normal_coefficients(x: ManifoldPoint, z: ComplexVec) -> np.ndarray:
    """Re{z * conj(x)}, one real coefficient per circle"""
    return (z * np.conj(x.x)).real


def check_point(x, tol: float = POINT_TOL) -> ManifoldPoint:
    """Validate | |x_i| - 1 | <= tol for every i"""
    x = as_complex_vec(x, "x")
    deviation = np.abs(np.abs(x) - 1.0)
    worst = int(np.argmax(deviation))
    if deviation[worst] > tol:
        modulus = float(np.abs(x[worst]))
        raise ConstraintError(
            f"|x_{worst + 1}| = {modulus!r} is off the unit circle (tolerance {tol:.1e})",
            index=worst + 1,
            modulus=modulus,
            tolerance=tol,
        )
    return ManifoldPoint(x)


def random_point(n: int, seed: int) -> ManifoldPoint:
    """x_i = exp(j*theta_i), theta_i uniform on [0, 2*pi)"""
    if n < 1:
        raise InvalidArgumentError("dimension must be at least 1", n=n)
    rng = np.random.default_rng(seed)
    theta = rng.uniform(0.0, 2.0 * np.pi, size=n)
    return ManifoldPoint(np.exp(1j * theta))


def random_tangent(x: ManifoldPoint, seed: int) -> TangentVector:
    """Unit-norm tangent vector from a projected complex Gaussian"""
    rng = np.random.default_rng(seed)
    z = rng.standard_normal(x.n) + 1j * rng.standard_normal(x.n)
    xi = project(x, z)
    norm = xi.norm()
    return xi.scaled(1.0 / norm) if norm > 0 else xi


def project(x: ManifoldPoint, z) -> TangentVector:
    """P_x(z) = z - Re{z * conj(x)} * x"""
    z = _operand(x, z)
    return TangentVector(x, z - _normal_coefficients(x, z) * x.x)


def normal_component(x: ManifoldPoint, z) -> NormalComponent:
    z = _operand(x, z)
    return NormalComponent(_normal_coefficients(x, z) * x.x)


def is_tangent(x: ManifoldPoint, z, tol: Optional[float] = None) -> bool:
    """True iff ||Re{z * conj(x)}||_inf <= tol (default relative to 1 + ||z||_inf)"""
    z = _operand(x, z)
    if tol is None:
        tol = TANGENT_TOL_REL * (1.0 + float(np.max(np.abs(z))))
    return bool(np.max(np.abs(_normal_coefficients(x, z))) <= tol)


def normal_basis(x: ManifoldPoint) -> np.ndarray:
    """Rows O_i = x_i e_i spanning the normal space at x"""
    return np.diag(x.x)


def project_real(x: ManifoldPoint, z_real) -> RealVec:
    """Projection evaluated in the interleaved 2n real coordinates"""
    z_real = as_real_vec(z_real, "z")
    if z_real.size != 2 * x.n:
        raise DimensionError("real vector length must be 2n", n=x.n, length=int(z_real.size))
    x1, x2 = x.x.real, x.x.imag
    z1, z2 = z_real[0::2], z_real[1::2]
    removed = np.empty_like(z_real)
    removed[0::2] = z1 * x1 ** 2 + z2 * x1 * x2
    removed[1::2] = z2 * x2 ** 2 + z1 * x1 * x2
    return z_real - removed


def manifold_inner(x: ManifoldPoint, u, v) -> float:
    """Re sum u_i conj(v_i), the embedding metric restricted to T_x M"""
    u = _operand(x, u, "u")
    v = _operand(x, v, "v")
    return float(np.vdot(v, u).real)


def riemannian_gradient(A: HermitianMatrix, x: ManifoldPoint) -> TangentVector:
    """P_x(2Ax)"""
    A.require_dim(x.n)
    return project(x, euclidean_gradient(A, x.x))


def transport(xi: TangentVector, x_new: ManifoldPoint) -> TangentVector:
    """Projection-based vector transport of xi to T_{x_new} M"""
    return project(x_new, xi.z)


def retract(x: ManifoldPoint, xi: TangentVector) -> ManifoldPoint:
    """Componentwise metric projection (x_i + xi_i) / |x_i + xi_i|"""
    if xi.base is not x and not np.array_equal(xi.base.x, x.x):
        raise TangencyError("tangent vector is anchored at a different point")
    y = x.x + xi.z
    modulus = np.abs(y)
    smallest = int(np.argmin(modulus))
    if modulus[smallest] < RETRACT_FLOOR:
        raise RetractionError(
            f"|x_{smallest + 1} + xi_{smallest + 1}| = {modulus[smallest]:.3e} is below the retraction floor",
            index=smallest + 1,
            modulus=float(modulus[smallest]),
        )
    return ManifoldPoint(np.where(xi.z == 0, x.x, y / modulus))


def distance(x: ManifoldPoint, y: ManifoldPoint) -> float:
    """Geodesic distance on the product of circles"""
    if x.n != y.n:
        raise DimensionError("points have different lengths", left=x.n, right=y.n)
    cosines = np.clip((np.conj(x.x) * y.x).real, -1.0, 1.0)
    return float(np.linalg.norm(np.arccos(cosines)))
