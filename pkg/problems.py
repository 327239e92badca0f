# Problem Instances and Oracles
# Random Hermitian and steering-vector generators, the phase-grid brute-force
# oracle, its self-calibrated resolution bound, and the spectral lower bound

from dataclasses import dataclass, field
from typing import Any, Dict, Sequence, Tuple

import numpy as np

from config import (
    BRUTE_FORCE_MAX_N,
    EIGEN_RESIDUAL_TOL,
    GRID_LADDER,
    MIN_GRID_LEVELS,
    ORACLE_CHUNK_SIZE,
)
from core import log_debug
from cr_calculus import HermitianMatrix
from error_handler import (
    ConvergenceError,
    InvalidArgumentError,
    OracleRefusalError,
)


@dataclass(frozen=True, eq=False)
class ProblemInstance:
    A: HermitianMatrix
    label: str
    provenance: Dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class OracleResult:
    """Grid minimum of x^H A x; argmin_phases holds n-1 indices when the first phase is fixed"""
    value: float
    argmin_phases: Tuple[int, ...]
    grid_levels: int
    fixed_first_phase: bool = True


@dataclass(frozen=True)
class GridResolutionBound:
    levels: Tuple[int, ...]
    values: Tuple[float, ...]
    curvature: float
    target_levels: int
    delta: float


def make_random_hermitian(n: int, seed: int, scale: float = 1.0) -> ProblemInstance:
    """A = scale * (B + B^H)/2 with B standard complex Gaussian"""
    if n < 1:
        raise InvalidArgumentError("dimension must be at least 1", n=n)
    if not (np.isfinite(scale) and scale > 0):
        raise InvalidArgumentError("scale must be positive and finite", scale=scale)
    rng = np.random.default_rng(seed)
    b = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    a = scale * ((b + b.conj().T) / 2)
    return ProblemInstance(
        A=HermitianMatrix(a, hermitian_tol=0.0),
        label=f"random-hermitian n={n} seed={seed}",
        provenance={"generator": "random-hermitian", "n": n, "seed": seed, "scale": scale},
    )


def steering_vector(n_elements: int, theta: float) -> np.ndarray:
    """Half-wavelength uniform linear array response a(theta)_m = exp(j*pi*(m-1)*sin(theta))"""
    return np.exp(1j * np.pi * np.arange(n_elements) * np.sin(theta))


def make_steering_problem(
    n_elements: int,
    angles: Sequence[float],
    weights: Sequence[float],
) -> ProblemInstance:
    """A = sum_k w_k a(theta_k) a(theta_k)^H"""
    if n_elements < 1:
        raise InvalidArgumentError("array needs at least one element", n_elements=n_elements)
    angles = [float(a) for a in angles]
    weights = [float(w) for w in weights]
    if not angles or len(angles) != len(weights):
        raise InvalidArgumentError("angles and weights must be non-empty and of equal length",
                                   angles=len(angles), weights=len(weights))
    for k, theta in enumerate(angles):
        if not np.isfinite(theta):
            raise InvalidArgumentError(f"angle {k + 1} is not finite", index=k + 1, angle=theta)
    for k, w in enumerate(weights):
        if not (np.isfinite(w) and w >= 0):
            raise InvalidArgumentError(f"weight {k + 1} is negative or not finite", index=k + 1, weight=w)

    a = np.zeros((n_elements, n_elements), dtype=np.complex128)
    for theta, w in zip(angles, weights):
        s = steering_vector(n_elements, theta)
        a += w * np.outer(s, s.conj())
    return ProblemInstance(
        A=HermitianMatrix(a),
        label=f"steering n={n_elements} beams={len(angles)}",
        provenance={"generator": "steering", "n": n_elements, "angles": angles, "weights": weights},
    )


def _phase_table(grid_levels: int) -> np.ndarray:
    # (2*pi*k)/g, so level 2g at index 2k reproduces level g at index k bit for bit
    return np.exp(1j * (2.0 * np.pi * np.arange(grid_levels) / grid_levels))


def brute_force_min(A: HermitianMatrix, grid_levels: int, fix_first_phase: bool = True) -> OracleResult:
    """Exhaustive minimum of x^H A x over the phase grid; ties go to the lexicographically smallest indices"""
    n = A.n
    if n > BRUTE_FORCE_MAX_N:
        log_debug("Oracle refused", {"n": n, "limit": BRUTE_FORCE_MAX_N})
        raise OracleRefusalError(
            f"exhaustive search is limited to n <= {BRUTE_FORCE_MAX_N}, got n = {n}",
            n=n,
            limit=BRUTE_FORCE_MAX_N,
        )
    if grid_levels < MIN_GRID_LEVELS:
        raise InvalidArgumentError(f"grid_levels must be at least {MIN_GRID_LEVELS}", grid_levels=grid_levels)

    free = n - 1 if fix_first_phase else n
    phases = _phase_table(grid_levels)
    a_t = A.entries.T

    if free == 0:
        return OracleResult(float(A.entries[0, 0].real), (), grid_levels, fix_first_phase)

    total = grid_levels ** free
    best_value = np.inf
    best_index = 0
    for start in range(0, total, ORACLE_CHUNK_SIZE):
        flat = np.arange(start, min(start + ORACLE_CHUNK_SIZE, total))
        digits = np.unravel_index(flat, (grid_levels,) * free)
        columns = [phases[d] for d in digits]
        if fix_first_phase:
            columns.insert(0, np.ones(flat.size, dtype=np.complex128))
        points = np.stack(columns, axis=1)
        values = np.sum(np.conj(points) * (points @ a_t), axis=1).real
        k = int(np.argmin(values))
        if values[k] < best_value:
            best_value = float(values[k])
            best_index = int(flat[k])

    argmin = tuple(int(d) for d in np.unravel_index(best_index, (grid_levels,) * free))
    return OracleResult(best_value, argmin, grid_levels, fix_first_phase)


def grid_resolution_bound(
    A: HermitianMatrix,
    levels: Sequence[int] = GRID_LADDER,
    target_levels: int = GRID_LADDER[1],
) -> GridResolutionBound:
    """Calibrate delta = C * (2*pi/g)^2 from a refinement ladder g, 2g, 4g, ..."""
    levels = tuple(int(g) for g in levels)
    if len(levels) < 2 or any(b % a for a, b in zip(levels, levels[1:])):
        raise InvalidArgumentError("ladder needs at least two levels, each a multiple of the previous",
                                   levels=list(levels))
    values = tuple(brute_force_min(A, g).value for g in levels)

    estimates = []
    for (g_a, v_a), (g_b, v_b) in zip(zip(levels, values), zip(levels[1:], values[1:])):
        spacing = (2 * np.pi / g_a) ** 2 - (2 * np.pi / g_b) ** 2
        estimates.append(max(v_a - v_b, 0.0) / spacing)
    curvature = max(estimates)
    delta = curvature * (2 * np.pi / target_levels) ** 2

    log_debug("Grid resolution calibrated", {"levels": levels, "values": values, "delta": delta})
    return GridResolutionBound(levels, values, curvature, target_levels, delta)


def eigen_lower_bound(A: HermitianMatrix) -> float:
    """n * lambda_min(A), which bounds x^H A x from below on the manifold since ||x||^2 = n"""
    try:
        eigenvalues, eigenvectors = np.linalg.eigh(A.entries)
    except np.linalg.LinAlgError as e:
        raise ConvergenceError(f"eigendecomposition failed: {e}") from e

    lam = float(eigenvalues[0])
    v = eigenvectors[:, 0]
    residual = float(np.linalg.norm(A.entries @ v - lam * v))
    if not residual <= EIGEN_RESIDUAL_TOL * (1.0 + A.row_inf_norm()):
        raise ConvergenceError(
            f"smallest eigenpair residual {residual:.3e} exceeds tolerance",
            residual=residual,
        )
    return A.n * lam
