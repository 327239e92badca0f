# Invariant Verification Suite
# Gradient-vs-finite-difference, projection, dimension and retraction checks
# over random manifold points, reporting the worst residual per check

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

import numpy as np

from ccm_manifold import (
    ManifoldPoint,
    normal_component,
    project,
    project_real,
    random_point,
    random_tangent,
    retract,
    riemannian_gradient,
)
from config import CHECK_TOLERANCES
from core import log_debug
from cr_calculus import (
    HermitianMatrix,
    euclidean_gradient,
    fd_gradient,
    inner_real,
    partial_derivative,
    quadratic_cost,
    to_complex,
    to_real,
)
from error_handler import InvalidArgumentError


@dataclass
class CheckOutcome:
    name: str
    observed: float
    upper: float
    lower: float = 0.0

    @property
    def passed(self) -> bool:
        return bool(self.lower <= self.observed <= self.upper)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "observed": self.observed,
            "lower": self.lower,
            "upper": self.upper,
            "passed": self.passed,
        }


@dataclass
class CheckReport:
    n: int
    trials: int
    source: Dict[str, Any]
    outcomes: List[CheckOutcome] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(o.passed for o in self.outcomes)

    def failing(self) -> List[str]:
        return [o.name for o in self.outcomes if not o.passed]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "trials": self.trials,
            "source": self.source,
            "passed": self.passed,
            "failing": self.failing(),
            "checks": [o.to_dict() for o in self.outcomes],
        }


def _inf(v: np.ndarray) -> float:
    return float(np.max(np.abs(v)))


def _retraction_error(x: ManifoldPoint, xi, t: float) -> float:
    step = xi.scaled(t)
    return float(np.linalg.norm(retract(x, step).x - (x.x + step.z)))


def _projection_trace(x: ManifoldPoint) -> float:
    """Trace of P_x as a 2n x 2n real operator"""
    trace = 0.0
    for k in range(2 * x.n):
        e = np.zeros(2 * x.n)
        e[k] = 1.0
        trace += to_real(project(x, to_complex(e)).z)[k]
    return trace


def sample_point(n: int, seed: int, modulus: float = 1.0) -> ManifoldPoint:
    """Random manifold point; modulus != 1 deliberately leaves the manifold"""
    x = random_point(n, seed)
    return x if modulus == 1.0 else ManifoldPoint(modulus * x.x)


def run_invariant_suite(
    A: HermitianMatrix,
    trials: int,
    seed: int,
    source: Optional[Dict[str, Any]] = None,
    perturb_modulus: float = 1.0,
) -> CheckReport:
    """Evaluate every invariant at `trials` random points and keep the worst residual"""
    if trials < 1:
        raise InvalidArgumentError("trials must be at least 1", trials=trials)
    n = A.n
    rng = np.random.default_rng(seed)
    worst: Dict[str, float] = {name: 0.0 for name in (
        "gradient_vs_fd", "partials_vs_gradient", "riemannian_vs_fd", "tangency",
        "idempotence", "orthogonal_split", "pythagoras", "complex_vs_real_form",
        "dimension_trace", "retraction_modulus", "retraction_zero_step",
    )}
    ratio_low, ratio_high = np.inf, 0.0

    def keep(name: str, value: float):
        # NaN must surface as a failure
        worst[name] = value if np.isnan(value) else max(worst[name], value)

    cost: Callable[[np.ndarray], float] = lambda w: quadratic_cost(A, w)

    for _ in range(trials):
        x = sample_point(n, int(rng.integers(2 ** 32)), perturb_modulus)
        z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        z_inf = _inf(z)
        z_sq = float(np.vdot(z, z).real)

        # gradients
        grad = euclidean_gradient(A, x.x)
        fd = fd_gradient(cost, x.x)
        keep("gradient_vs_fd", float(np.linalg.norm(grad - fd)) / (1.0 + float(np.linalg.norm(grad))))
        partials = np.array([
            partial_derivative(A, x.x, m, 1) + 1j * partial_derivative(A, x.x, m, 2)
            for m in range(1, n + 1)
        ])
        keep("partials_vs_gradient", _inf(grad - partials) / (1.0 + _inf(grad)))
        rgrad = riemannian_gradient(A, x)
        keep("riemannian_vs_fd",
             float(np.linalg.norm(rgrad.z - project(x, fd).z)) / (1.0 + rgrad.norm()))

        # projection
        p = project(x, z)
        normal = normal_component(x, z)
        keep("tangency", _inf((p.z * np.conj(x.x)).real) / (1.0 + z_inf))
        keep("idempotence", _inf(project(x, p.z).z - p.z) / (1.0 + z_inf))
        keep("orthogonal_split", abs(inner_real(to_real(p.z), to_real(normal.v))) / z_sq)
        keep("pythagoras",
             abs(z_sq - float(np.vdot(p.z, p.z).real) - float(np.vdot(normal.v, normal.v).real)) / z_sq)
        keep("complex_vs_real_form",
             _inf(to_real(p.z) - project_real(x, to_real(z))) / (1.0 + z_inf) ** 2)
        keep("dimension_trace", abs(_projection_trace(x) - n))

        # retraction
        xi = random_tangent(x, int(rng.integers(2 ** 32)))
        keep("retraction_modulus", _inf(np.abs(retract(x, xi).x) - 1.0))
        keep("retraction_zero_step", 0.0 if np.array_equal(retract(x, xi.scaled(0.0)).x, x.x) else 1.0)
        coarse = _retraction_error(x, xi, 1e-2)
        fine = _retraction_error(x, xi, 1e-3)
        ratio = fine / coarse if coarse > 0 else np.nan
        ratio_low = ratio if np.isnan(ratio) else min(ratio_low, ratio)
        ratio_high = ratio if np.isnan(ratio) else max(ratio_high, ratio)

    outcomes = [CheckOutcome(name, value, CHECK_TOLERANCES[name]) for name, value in worst.items()]
    outcomes.append(CheckOutcome("retraction_order_min", float(ratio_low),
                                 np.inf, CHECK_TOLERANCES["retraction_order_low"]))
    outcomes.append(CheckOutcome("retraction_order_max", float(ratio_high),
                                 CHECK_TOLERANCES["retraction_order_high"], 0.0))

    report = CheckReport(n=n, trials=trials, source=source or {}, outcomes=outcomes)
    log_debug("Invariant suite finished", {"n": n, "trials": trials, "failing": report.failing()})
    return report
