import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from weakdiscord import qmath, states
from weakdiscord.errors import DimensionError, DomainError


@pytest.mark.parametrize("z", np.linspace(0, 1, 11))
def test_werner_is_valid_with_maximally_mixed_marginals(z):
    rho = states.werner(z)
    states.validate_density(rho)
    for marginal in states.marginals(rho):
        np.testing.assert_allclose(marginal, np.eye(2) / 2, atol=1e-15)
        assert qmath.von_neumann_entropy(marginal) == pytest.approx(1)


def test_werner_endpoints():
    np.testing.assert_allclose(states.werner(0), np.eye(4) / 4)
    np.testing.assert_allclose(states.werner(1), states.pure(states.PSI_MINUS), atol=1e-15)


@pytest.mark.parametrize("z", [-0.1, 1.5])
def test_werner_domain(z):
    with pytest.raises(DomainError):
        states.werner(z)


def test_bell_diagonal_examples():
    np.testing.assert_allclose(states.bell_diagonal(0, 0, 0), np.eye(4) / 4)
    rho = states.bell_diagonal(1, -1, 1)
    np.testing.assert_allclose(rho, states.pure(states.PHI_PLUS), atol=1e-15)
    np.testing.assert_allclose(qmath.eigh(rho).eigenvalues, [1, 0, 0, 0], atol=1e-14)


def test_bell_diagonal_rejects_unphysical():
    assert states.BellDiagonalParams(1, 1, 1).eigenvalues()[0] == -0.5
    with pytest.raises(DomainError):
        states.bell_diagonal(1, 1, 1)


@given(st.integers(0, 2**32 - 1))
def test_random_bell_diagonal_marginals(seed):
    params = states.random_bell_diagonal(np.random.default_rng(seed))
    assert params.is_physical()
    rho = states.bell_diagonal(*params)
    states.validate_density(rho)
    for marginal in states.marginals(rho):
        np.testing.assert_allclose(marginal, np.eye(2) / 2, atol=1e-14)


def test_bloch_state_examples():
    np.testing.assert_allclose(states.bloch_state(0, 0, 0), np.eye(2) / 2)
    np.testing.assert_allclose(states.bloch_state(0, 0, 1), np.diag([1, 0]))
    np.testing.assert_allclose(states.bloch_state(1, 0, 0), [[0.5, 0.5], [0.5, 0.5]])
    with pytest.raises(DomainError):
        states.bloch_state(1, 1, 0)


def test_bloch_vector_round_trip():
    v = states.BlochVector(0.3, -0.2, 0.5)
    assert states.bloch_vector(states.bloch_state(*v)) == pytest.approx(v)


def test_pseudopure():
    np.testing.assert_allclose(states.pseudopure_3q(0), np.eye(8) / 8)
    expected = np.zeros((8, 8))
    expected[0, 0] = 1
    np.testing.assert_allclose(states.pseudopure_3q(1), expected)
    rho = states.pseudopure_3q(1e-5)
    states.validate_density(rho)
    assert rho[0, 0].real == pytest.approx((1 - 1e-5) / 8 + 1e-5)
    with pytest.raises(DomainError):
        states.pseudopure_3q(2)


def _correlator(values, i, j):
    return values[states.PAULI_LABELS.index((i, j))]


def test_pauli_expectations_examples(bell_pure, werner_08):
    np.testing.assert_allclose(states.pauli_expectations(np.eye(4) / 4), np.zeros(15), atol=1e-15)

    bd = states.pauli_expectations(bell_pure)
    for (i, j), want in {(1, 1): 1, (2, 2): -1, (3, 3): 1}.items():
        assert _correlator(bd, i, j) == pytest.approx(want)
    off = [v for (ij, v) in zip(states.PAULI_LABELS, bd) if ij not in {(1, 1), (2, 2), (3, 3)}]
    np.testing.assert_allclose(off, 0, atol=1e-15)

    w = states.pauli_expectations(werner_08)
    for i in (1, 2, 3):
        assert _correlator(w, i, i) == pytest.approx(-0.8)
    assert np.count_nonzero(np.abs(w) > 1e-15) == 3


def test_from_pauli_expectations(bell_pure, werner_08):
    np.testing.assert_allclose(states.from_pauli_expectations(np.zeros(15)), np.eye(4) / 4)
    for rho in (werner_08, bell_pure):
        back = states.from_pauli_expectations(states.pauli_expectations(rho))
        assert np.max(np.abs(back - rho)) <= 1e-12


def test_from_pauli_expectations_unphysical():
    values = np.zeros(15)
    values[states.PAULI_LABELS.index((3, 3))] = 2.0
    with pytest.raises(DomainError):
        states.from_pauli_expectations(values)


@given(st.integers(0, 2**32 - 1))
def test_pauli_round_trip_random(seed):
    rho = states.random_density(4, np.random.default_rng(seed))
    values = states.pauli_expectations(rho)
    again = states.pauli_expectations(states.from_pauli_expectations(values))
    assert np.max(np.abs(again - values)) <= 1e-12


def test_json_round_trip(rng):
    rho = states.random_density(4, rng)
    doc = json.loads(states.dumps(rho))
    assert set(doc) == {"dim", "re", "im"} and doc["dim"] == 4
    np.testing.assert_array_equal(states.loads(states.dumps(rho)), rho)


def test_json_rejects_bad_documents():
    with pytest.raises(DimensionError):
        states.from_json_dict({"dim": 2, "re": np.eye(4).tolist(), "im": np.zeros((4, 4)).tolist()})
    with pytest.raises(DomainError):
        states.from_json_dict({"dim": 2, "re": [[2, 0], [0, 0]], "im": [[0, 0], [0, 0]]})
    with pytest.raises(DomainError):
        states.from_json_dict({"re": []})


def test_validate_density_rejects_non_hermitian():
    with pytest.raises(DomainError):
        states.validate_density(np.array([[0.5, 0.1], [0.0, 0.5]]))
    assert not states.is_density(np.array([[0.5, 0.1], [0.0, 0.5]]))
