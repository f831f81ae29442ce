import numpy as np
import pytest
from hypothesis import given, settings

from conftest import density_matrices, hermitian_matrices
from weakdiscord import qmath, states
from weakdiscord.errors import DimensionError, DomainError
from weakdiscord.qmath import SIGMA_X, SIGMA_Z, I2


def test_kron_identity_and_paulis():
    np.testing.assert_array_equal(qmath.kron(I2, I2), np.eye(4))
    np.testing.assert_array_equal(qmath.kron(SIGMA_Z, SIGMA_Z), np.diag([1, -1, -1, 1]))
    np.testing.assert_array_equal(qmath.kron(SIGMA_X, SIGMA_X), np.fliplr(np.eye(4)))


def test_kron_rejects_oversized_result():
    with pytest.raises(DimensionError):
        qmath.kron(np.eye(4), np.eye(4))


@given(hermitian_matrices(2), hermitian_matrices(2), hermitian_matrices(2))
def test_kron_associative(a, b, c):
    left = qmath.kron(qmath.kron(a, b), c)
    right = qmath.kron(a, qmath.kron(b, c))
    assert np.max(np.abs(left - right)) <= 1e-12 * max(1.0, np.max(np.abs(left)))


def test_partial_trace_examples(werner_08):
    bell = states.pure(states.PHI_PLUS)
    np.testing.assert_allclose(qmath.partial_trace(bell, [2, 2], [0]), I2 / 2, atol=1e-15)
    rho_a = states.bloch_state(0.1, 0.2, 0.3)
    rho_b = states.bloch_state(-0.5, 0.0, 0.4)
    np.testing.assert_allclose(
        qmath.partial_trace(np.kron(rho_a, rho_b), [2, 2], [1]), rho_b, atol=1e-15)
    np.testing.assert_allclose(qmath.partial_trace(werner_08, [2, 2], [0]), I2 / 2, atol=1e-15)


def test_partial_trace_by_index_contraction():
    rng = np.random.default_rng(5)
    rho = states.random_density(8, rng)
    t = rho.reshape(2, 2, 2, 2, 2, 2)
    # keep the middle qubit
    manual = np.zeros((2, 2), dtype=complex)
    for a in range(2):
        for c in range(2):
            manual += t[a, :, c, a, :, c]
    np.testing.assert_allclose(qmath.partial_trace(rho, [2, 2, 2], [1]), manual, atol=1e-15)


def test_partial_trace_dimension_errors():
    with pytest.raises(DimensionError):
        qmath.partial_trace(np.eye(4), [2, 3], [0])
    with pytest.raises(DimensionError):
        qmath.partial_trace(np.eye(4), [2, 2], [])


@given(hermitian_matrices(2), hermitian_matrices(2))
def test_partial_trace_of_product(a, b):
    got = qmath.partial_trace(qmath.kron(a, b), [2, 2], [0])
    assert np.max(np.abs(got - a * np.trace(b))) <= 1e-12 * max(1.0, np.max(np.abs(a)) * np.max(np.abs(b)))


def test_eigh_examples(werner_08):
    np.testing.assert_allclose(qmath.eigh(I2 / 2).eigenvalues, [0.5, 0.5])
    np.testing.assert_allclose(qmath.eigh(SIGMA_Z).eigenvalues, [1, -1])
    np.testing.assert_allclose(qmath.eigh(werner_08).eigenvalues, [0.85, 0.05, 0.05, 0.05], atol=1e-14)


def test_eigh_rejects_non_hermitian():
    with pytest.raises(DomainError):
        qmath.eigh(np.array([[0, 1], [0, 0]]))


@given(hermitian_matrices(4))
def test_eigh_reconstruction_and_orthonormality(m):
    spec = qmath.eigh(m)
    v = spec.eigenvectors
    assert np.all(np.diff(spec.eigenvalues) <= 0)
    assert np.max(np.abs(spec.reconstruct() - m)) <= 1e-10
    assert np.max(np.abs(v.conj().T @ v - np.eye(4))) <= 1e-10


def test_entropy_examples(werner_08):
    assert qmath.von_neumann_entropy(np.diag([1, 0])) == 0
    assert qmath.von_neumann_entropy(I2 / 2) == pytest.approx(1, abs=1e-15)
    expected = -0.85 * np.log2(0.85) - 3 * 0.05 * np.log2(0.05)
    assert qmath.von_neumann_entropy(werner_08) == pytest.approx(expected, abs=1e-12)
    assert expected == pytest.approx(0.8476, abs=5e-5)


def test_entropy_rejects_unphysical():
    with pytest.raises(DomainError):
        qmath.von_neumann_entropy(np.diag([1.1, -0.1]))


def test_entropy_tolerates_roundoff_negative():
    assert qmath.von_neumann_entropy(np.diag([1.0, -1e-9])) == 0
    assert qmath.von_neumann_entropy(np.diag([0.5, 0.5 + 1e-9, -1e-9, 0.0])) == pytest.approx(1, abs=1e-8)


@settings(max_examples=50)
@given(density_matrices(2), density_matrices(2))
def test_entropy_additive(a, b):
    joint = qmath.von_neumann_entropy(qmath.kron(a, b))
    assert joint == pytest.approx(qmath.von_neumann_entropy(a) + qmath.von_neumann_entropy(b), abs=1e-9)


def test_fidelity_examples():
    zero, one = np.diag([1.0, 0.0]), np.diag([0.0, 1.0])
    assert qmath.fidelity(zero, zero) == pytest.approx(1, abs=1e-10)
    assert qmath.fidelity(zero, one) == pytest.approx(0, abs=1e-12)
    assert qmath.fidelity(I2 / 2, zero) == pytest.approx(0.5, abs=1e-12)


def test_fidelity_dimension_mismatch():
    with pytest.raises(DimensionError):
        qmath.fidelity(np.eye(2) / 2, np.eye(4) / 4)


@settings(max_examples=50)
@given(density_matrices(4), density_matrices(4))
def test_fidelity_symmetric_and_self_one(a, b):
    assert qmath.fidelity(a, a) == pytest.approx(1, abs=1e-10)
    assert qmath.fidelity(a, b) == pytest.approx(qmath.fidelity(b, a), abs=1e-10)


def test_fidelity_of_rank_deficient_state_with_itself(bell_pure):
    assert qmath.fidelity(bell_pure, bell_pure) == pytest.approx(1, abs=1e-10)


def test_fidelity_tends_to_one(rng):
    rho = states.random_density(4, rng)
    sigma = states.random_density(4, rng)
    gaps = [1 - qmath.fidelity(rho, (1 - t) * rho + t * sigma) for t in (1e-1, 1e-2, 1e-3, 1e-4)]
    assert all(g2 < g1 for g1, g2 in zip(gaps, gaps[1:]))
    assert gaps[-1] < 1e-7


def test_trace_distance_examples():
    zero, one = np.diag([1.0, 0.0]), np.diag([0.0, 1.0])
    assert qmath.trace_distance(zero, zero) == 0
    assert qmath.trace_distance(zero, one) == pytest.approx(1)
    assert qmath.trace_distance(I2 / 2, zero) == pytest.approx(0.5)
    with pytest.raises(DimensionError):
        qmath.trace_distance(zero, np.eye(4) / 4)
