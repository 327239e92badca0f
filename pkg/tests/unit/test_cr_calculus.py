import numpy as np
import pytest

from cr_calculus import (
    HermitianMatrix,
    euclidean_gradient,
    fd_gradient,
    from_conjugate_wirtinger,
    hadamard,
    inner_real,
    partial_derivative,
    quadratic_cost,
    symmetrize,
    to_complex,
    to_real,
)
from error_handler import DimensionError, HermitianError, InvalidArgumentError, NonFiniteError


def random_complex(rng, n):
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def test_to_real_layout():
    """Real and imaginary parts are interleaved"""
    assert np.array_equal(to_real([1 + 0j]), [1.0, 0.0])
    assert np.array_equal(to_real([1j, -1 + 0j]), [0.0, 1.0, -1.0, 0.0])


def test_to_complex_layout():
    assert np.array_equal(to_complex([3.0, 4.0]), [3 + 4j])
    assert np.array_equal(to_complex([0.0, 0.0, 0.0, 0.0]), [0j, 0j])


def test_representation_round_trip_is_exact(rng):
    for _ in range(100):
        n = int(rng.integers(1, 20))
        v = random_complex(rng, n)
        assert np.array_equal(to_complex(to_real(v)), v)
        u = rng.standard_normal(2 * n)
        assert np.array_equal(to_real(to_complex(u)), u)


def test_to_complex_rejects_odd_length():
    with pytest.raises(DimensionError):
        to_complex([1.0, 2.0, 3.0])


def test_non_finite_vector_rejected():
    with pytest.raises(NonFiniteError):
        to_real([np.nan + 0j])


def test_inner_real_examples():
    assert inner_real([1, 0, 0, 1], [0, 1, 1, 0]) == 0.0
    assert inner_real([1, 1, 1, 1], [1, 1, 1, 1]) == 4.0
    with pytest.raises(DimensionError):
        inner_real([1, 0], [1, 0, 0, 1])


@pytest.mark.parametrize("n", [1, 2, 7, 32])
def test_inner_real_matches_complex_form(rng, n):
    """<to_real(u), to_real(v)> = Re sum u_i conj(v_i)"""
    for _ in range(100):
        u, v = random_complex(rng, n), random_complex(rng, n)
        expected = float(np.sum(u * np.conj(v)).real)
        scale = np.linalg.norm(u) * np.linalg.norm(v)
        assert abs(inner_real(to_real(u), to_real(v)) - expected) <= 1e-12 * max(scale, 1.0)


def test_hadamard_examples(rng):
    assert np.array_equal(hadamard([1 + 1j], [1 - 1j]), [2 + 0j])
    assert np.array_equal(hadamard([1j, 2], [1j, 3]), [-1 + 0j, 6 + 0j])
    u = random_complex(rng, 6)
    assert np.array_equal(hadamard(u, np.ones(6)), u)
    with pytest.raises(DimensionError):
        hadamard([1, 2], [1])


def test_hermitian_matrix_rejects_asymmetry():
    with pytest.raises(HermitianError):
        HermitianMatrix(np.array([[1.0, 2.0], [0.0, 1.0]]))
    with pytest.raises(HermitianError):
        HermitianMatrix(np.array([[1.0, 1j], [1j, 1.0]]))


def test_hermitian_matrix_accepts_within_tolerance():
    a = np.array([[1.0, 1 + 1j], [1 - 1j, 2.0]])
    a[0, 1] += 1e-13
    assert HermitianMatrix(a).n == 2


def test_hermitian_matrix_rejects_non_square():
    with pytest.raises(DimensionError):
        HermitianMatrix(np.ones((2, 3)))


def test_symmetrize_is_explicit_repair():
    a = np.array([[1.0, 2.0], [0.0, 3.0]])
    repaired = symmetrize(a)
    assert np.array_equal(repaired.entries, [[1.0, 1.0], [1.0, 3.0]])


def test_quadratic_cost_examples():
    assert quadratic_cost(HermitianMatrix(np.eye(2)), [1, 1j]) == pytest.approx(2.0)
    assert quadratic_cost(HermitianMatrix(np.array([[1.0, -1.0], [-1.0, 1.0]])), [1, 1]) == 0.0
    assert quadratic_cost(HermitianMatrix(np.array([[2.0, 1.0], [1.0, 2.0]])), [1, 1]) == pytest.approx(6.0)


def test_quadratic_cost_dimension_mismatch():
    with pytest.raises(DimensionError):
        quadratic_cost(HermitianMatrix(np.eye(3)), [1, 1])


def test_quadratic_form_is_real(rng, random_instances):
    """Imaginary part of x^H A x cancels for Hermitian A"""
    for A in random_instances(6, count=20):
        x = random_complex(rng, 6)
        value = np.vdot(x, A.entries @ x)
        assert abs(value.imag) <= 1e-10 * (1 + abs(value))


def test_partial_derivative_examples():
    identity = HermitianMatrix(np.eye(2))
    assert partial_derivative(identity, [1, 1j], 1, 1) == pytest.approx(2.0)
    assert partial_derivative(identity, [1, 1j], 2, 2) == pytest.approx(2.0)


def test_partial_derivative_index_checks():
    identity = HermitianMatrix(np.eye(2))
    with pytest.raises(InvalidArgumentError):
        partial_derivative(identity, [1, 1j], 3, 1)
    with pytest.raises(InvalidArgumentError):
        partial_derivative(identity, [1, 1j], 0, 1)
    with pytest.raises(InvalidArgumentError):
        partial_derivative(identity, [1, 1j], 1, 3)


def test_partials_match_finite_differences(rng):
    A = symmetrize(random_complex(rng, 16).reshape(4, 4))
    x = random_complex(rng, 4)
    fd = fd_gradient(lambda w: quadratic_cost(A, w), x)
    for m in range(1, 5):
        assert partial_derivative(A, x, m, 1) == pytest.approx(fd[m - 1].real, rel=1e-6, abs=1e-6)
        assert partial_derivative(A, x, m, 2) == pytest.approx(fd[m - 1].imag, rel=1e-6, abs=1e-6)


def test_euclidean_gradient_examples(rng):
    x = random_complex(rng, 5)
    assert np.allclose(euclidean_gradient(HermitianMatrix(np.eye(5)), x), 2 * x, rtol=0, atol=1e-15)
    A = HermitianMatrix(np.array([[2.0, 1.0], [1.0, 2.0]]))
    assert np.allclose(euclidean_gradient(A, [1, 1]), [6, 6])


@pytest.mark.parametrize("n", [1, 2, 5, 16])
def test_gradient_equals_per_coordinate_partials(rng, random_instances, n):
    for A in random_instances(n):
        for _ in range(10):
            x = random_complex(rng, n)
            grad = euclidean_gradient(A, x)
            partials = np.array([
                partial_derivative(A, x, m, 1) + 1j * partial_derivative(A, x, m, 2)
                for m in range(1, n + 1)
            ])
            assert np.max(np.abs(grad - partials)) <= 1e-12 * (1 + np.max(np.abs(grad)))


@pytest.mark.parametrize("n", [1, 2, 5, 16])
def test_gradient_matches_finite_difference_oracle(rng, random_instances, n):
    """||2Ax - fd|| / (1 + ||2Ax||) <= 1e-6 with h = 1e-6"""
    for A in random_instances(n):
        cost = lambda w, A=A: quadratic_cost(A, w)
        for _ in range(10):
            x = random_complex(rng, n)
            grad = euclidean_gradient(A, x)
            fd = fd_gradient(cost, x, h=1e-6)
            assert np.linalg.norm(grad - fd) / (1 + np.linalg.norm(grad)) <= 1e-6


def test_fd_gradient_of_squared_norm(rng):
    x = random_complex(rng, 4)
    fd = fd_gradient(lambda w: float(np.vdot(w, w).real), x)
    assert np.allclose(fd, 2 * x, rtol=0, atol=1e-7)


def test_fd_gradient_of_constant_is_zero(rng):
    assert np.array_equal(fd_gradient(lambda w: 3.0, random_complex(rng, 3)), np.zeros(3))


def test_fd_gradient_rejects_bad_inputs():
    with pytest.raises(InvalidArgumentError):
        fd_gradient(lambda w: 0.0, [1 + 0j], h=0.0)
    with pytest.raises(NonFiniteError):
        fd_gradient(lambda w: np.inf, [1 + 0j])


def test_conjugate_wirtinger_conversion(rng, random_instances):
    """df/dw-bar of x^H A x is Ax; the working convention doubles it"""
    A = random_instances(3, count=1)[0]
    x = random_complex(rng, 3)
    assert np.allclose(from_conjugate_wirtinger(A.entries @ x), euclidean_gradient(A, x))
