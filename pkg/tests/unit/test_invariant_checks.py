import numpy as np
import pytest

from cr_calculus import HermitianMatrix
from error_handler import InvalidArgumentError
from invariant_checks import CheckOutcome, run_invariant_suite, sample_point
from problems import make_random_hermitian

CHECK_NAMES = {
    "gradient_vs_fd", "partials_vs_gradient", "riemannian_vs_fd", "tangency",
    "idempotence", "orthogonal_split", "pythagoras", "complex_vs_real_form",
    "dimension_trace", "retraction_modulus", "retraction_zero_step",
    "retraction_order_min", "retraction_order_max",
}


@pytest.mark.parametrize("n", [1, 2, 5, 16])
def test_suite_passes_on_random_instances(n):
    A = make_random_hermitian(n, seed=n).A
    report = run_invariant_suite(A, trials=10, seed=7)
    assert report.failing() == []
    assert report.passed
    assert {o.name for o in report.outcomes} == CHECK_NAMES


def test_suite_passes_on_identity():
    assert run_invariant_suite(HermitianMatrix(np.eye(3)), trials=5, seed=1).passed


def test_off_manifold_points_fail_tangency():
    A = make_random_hermitian(4, seed=3).A
    report = run_invariant_suite(A, trials=5, seed=2, perturb_modulus=1.1)
    assert not report.passed
    assert "tangency" in report.failing()


def test_report_is_deterministic():
    A = make_random_hermitian(3, seed=5).A
    first = run_invariant_suite(A, trials=4, seed=11).to_dict()
    second = run_invariant_suite(A, trials=4, seed=11).to_dict()
    assert first == second


def test_report_payload():
    A = make_random_hermitian(2, seed=0).A
    payload = run_invariant_suite(A, trials=2, seed=0, source={"random": 2}).to_dict()
    assert payload["n"] == 2
    assert payload["trials"] == 2
    assert payload["source"] == {"random": 2}
    assert payload["passed"] is True
    assert payload["failing"] == []
    assert all(set(check) == {"name", "observed", "lower", "upper", "passed"} for check in payload["checks"])


def test_rejects_zero_trials():
    with pytest.raises(InvalidArgumentError):
        run_invariant_suite(HermitianMatrix(np.eye(2)), trials=0, seed=0)


def test_check_outcome_bounds():
    assert CheckOutcome("x", 0.5, upper=1.0).passed
    assert not CheckOutcome("x", 2.0, upper=1.0).passed
    assert not CheckOutcome("x", 0.001, upper=1.0, lower=0.005).passed
    assert not CheckOutcome("x", float("nan"), upper=1.0).passed


def test_sample_point_modulus():
    assert np.allclose(np.abs(sample_point(3, seed=0).x), 1.0)
    assert np.allclose(np.abs(sample_point(3, seed=0, modulus=1.1).x), 1.1)
