# Complex Circle Manifold Toolkit Configuration
# Tolerances, optimizer defaults, oracle limits and the exit-code contract

import os
from typing import Dict, Any

VERSION = "1.0.0"

# Environment Configuration
ENVIRONMENT = os.getenv("CCM_ENVIRONMENT", "development")
DEBUG_ENABLED = os.getenv("CCM_DEBUG", "false").lower() in ("1", "true", "yes")
# Default only; core.resolve_log_level() re-reads CCM_LOG_LEVEL after .env is loaded
LOG_LEVEL = os.getenv("CCM_LOG_LEVEL", "DEBUG")

# CR-calculus tolerances
HERMITIAN_TOL_REL = 1e-10  # times max|a_ik|
IMAG_TOL_REL = 1e-10  # times (1 + |f|)
FD_STEP = 1e-6  # central differences

# Manifold tolerances
POINT_TOL = 1e-9
TANGENT_TOL_REL = 1e-9  # times (1 + ||z||_inf)
RETRACT_FLOOR = 1e-12

# Riemannian gradient descent defaults; initial_step None means 1/(2*||A||_row_inf + eps)
OPTIMIZER_DEFAULTS: Dict[str, Any] = {
    "max_iters": 1000,
    "grad_tol": 1e-8,
    "initial_step": None,
    "armijo_c": 1e-4,
    "backtrack_factor": 0.5,
    "max_backtracks": 60,
}

# Problem oracles
BRUTE_FORCE_MAX_N = 4
MIN_GRID_LEVELS = 8
GRID_LADDER = (128, 256, 512)
ORACLE_CHUNK_SIZE = 65536
EIGEN_RESIDUAL_TOL = 1e-10

# Structured-text matrix files
MATRIX_FILE_FORMAT = "ccm-matrix/1"
RUN_REPORT_FORMAT = "ccm-run-report/1"

# Exit-code contract
EXIT_CODES: Dict[str, int] = {
    "converged": 0,
    "internal_error": 1,
    "max_iters": 2,
    "line_search_failed": 3,
    "input_error": 4,
    "check_failed": 5,
}

# Verification suite tolerances (cmd_check)
CHECK_TOLERANCES: Dict[str, float] = {
    "gradient_vs_fd": 1e-6,
    "partials_vs_gradient": 1e-12,
    "riemannian_vs_fd": 1e-6,
    "tangency": 1e-12,
    "idempotence": 1e-14,
    "orthogonal_split": 1e-12,
    "pythagoras": 1e-10,
    "complex_vs_real_form": 1e-15,
    "dimension_trace": 1e-10,
    "retraction_modulus": 1e-15,
    "retraction_zero_step": 0.0,
    "retraction_order_low": 0.005,
    "retraction_order_high": 0.02,
}
