# Riemannian Gradient Descent on the Complex Circle Manifold
# Armijo backtracking along the negative Riemannian gradient, with full tracing

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ccm_manifold import (
    ManifoldPoint,
    TangentVector,
    check_point,
    retract,
    riemannian_gradient,
)
from config import OPTIMIZER_DEFAULTS
from core import log_debug
from cr_calculus import HermitianMatrix, quadratic_cost
from error_handler import (
    InvalidArgumentError,
    LineSearchError,
    NonFiniteError,
    RetractionError,
)


class OptimizerConfig(BaseModel):
    """Stopping and line-search parameters; initial_step=None scales with the problem"""
    model_config = ConfigDict(frozen=True, extra="forbid")

    max_iters: int = Field(default=OPTIMIZER_DEFAULTS["max_iters"], gt=0)
    grad_tol: float = Field(default=OPTIMIZER_DEFAULTS["grad_tol"], ge=0, allow_inf_nan=False)
    initial_step: Optional[float] = Field(default=OPTIMIZER_DEFAULTS["initial_step"], gt=0, allow_inf_nan=False)
    armijo_c: float = Field(default=OPTIMIZER_DEFAULTS["armijo_c"], gt=0, lt=1)
    backtrack_factor: float = Field(default=OPTIMIZER_DEFAULTS["backtrack_factor"], gt=0, lt=1)
    max_backtracks: int = Field(default=OPTIMIZER_DEFAULTS["max_backtracks"], gt=0)

    def resolve_initial_step(self, A: HermitianMatrix) -> float:
        if self.initial_step is not None:
            return self.initial_step
        return 1.0 / (2.0 * A.row_inf_norm() + np.finfo(float).eps)


class SolveStatus(str, Enum):
    CONVERGED = "converged"
    MAX_ITERS = "max_iters"
    LINE_SEARCH_FAILED = "line_search_failed"


@dataclass(frozen=True)
class IterationRecord:
    """One row of the trace; row 0 is the starting point and carries step 0"""
    iter: int
    cost: float
    grad_norm: float
    step: float
    backtracks: int


@dataclass(frozen=True)
class SolveResult:
    x_final: ManifoldPoint
    cost_final: float
    trace: List[IterationRecord] = field(default_factory=list)
    status: SolveStatus = SolveStatus.MAX_ITERS

    @property
    def grad_norm_final(self) -> float:
        return self.trace[-1].grad_norm

    @property
    def iterations(self) -> int:
        return self.trace[-1].iter


def _finite_cost(A: HermitianMatrix, x: ManifoldPoint, iterate: int) -> float:
    cost = quadratic_cost(A, x.x)
    if not np.isfinite(cost):
        raise NonFiniteError(f"cost is not finite at iterate {iterate}", iterate=iterate)
    return cost


def armijo_step(
    A: HermitianMatrix,
    x: ManifoldPoint,
    g: TangentVector,
    config: OptimizerConfig,
    current_cost: Optional[float] = None,
) -> Tuple[float, ManifoldPoint, int]:
    """Largest t = t0 * beta^k with f(R_x(-t g)) <= f(x) - c t ||g||^2 and a strict decrease.

    Raises LineSearchError after max_backtracks reductions.
    """
    g_norm_sq = g.norm() ** 2
    if not g_norm_sq > 0:
        raise InvalidArgumentError("line search needs a nonzero gradient")
    f0 = quadratic_cost(A, x.x) if current_cost is None else current_cost

    t = config.resolve_initial_step(A)
    for backtracks in range(config.max_backtracks + 1):
        try:
            candidate = retract(x, g.scaled(-t))
        except RetractionError:
            candidate = None
        if candidate is not None:
            f_new = quadratic_cost(A, candidate.x)
            if f_new <= f0 - config.armijo_c * t * g_norm_sq and f_new < f0:
                return t, candidate, backtracks
        t *= config.backtrack_factor

    raise LineSearchError(
        f"no acceptable step after {config.max_backtracks} backtracks",
        last_step=t / config.backtrack_factor,
        grad_norm=float(np.sqrt(g_norm_sq)),
    )


def solve_rgd(
    A: HermitianMatrix,
    x0: ManifoldPoint,
    config: Optional[OptimizerConfig] = None,
) -> SolveResult:
    """Minimize x^H A x over the manifold from x0"""
    config = config or OptimizerConfig()
    A.require_dim(x0.n)
    check_point(x0.x)

    x = x0
    cost = _finite_cost(A, x, 0)
    g = riemannian_gradient(A, x)
    grad_norm = g.norm()
    trace = [IterationRecord(0, cost, grad_norm, 0.0, 0)]
    status = SolveStatus.MAX_ITERS

    for k in range(1, config.max_iters + 1):
        if grad_norm <= config.grad_tol:
            status = SolveStatus.CONVERGED
            break
        try:
            step, x, backtracks = armijo_step(A, x, g, config, current_cost=cost)
        except LineSearchError as e:
            log_debug("Line search failed", {"iterate": k - 1, "details": e.details})
            status = SolveStatus.LINE_SEARCH_FAILED
            break
        check_point(x.x)
        cost = _finite_cost(A, x, k)
        g = riemannian_gradient(A, x)
        grad_norm = g.norm()
        trace.append(IterationRecord(k, cost, grad_norm, step, backtracks))
    else:
        if grad_norm <= config.grad_tol:
            status = SolveStatus.CONVERGED

    log_debug("Solve finished", {
        "status": status.value,
        "iterations": trace[-1].iter,
        "cost_final": cost,
        "grad_norm_final": grad_norm
    })
    return SolveResult(x_final=x, cost_final=cost, trace=trace, status=status)
