"""State families used in the weak-measurement experiments.

Density operators are plain ``numpy`` complex arrays. Subsystem A is the first
tensor factor and B the second; every measurement in this package acts on B.
"""

from __future__ import annotations

import json
from itertools import product
from typing import NamedTuple

import numpy as np

from . import qmath
from .errors import DimensionError, DomainError

DENSITY_TOL = 1e-10
PHYSICAL_TOL = 1e-12

PSI_MINUS = np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2)
PHI_PLUS = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)


class BlochVector(NamedTuple):
    r_x: float
    r_y: float
    r_z: float


class BellDiagonalParams(NamedTuple):
    c1: float
    c2: float
    c3: float

    def eigenvalues(self) -> tuple[float, float, float, float]:
        c1, c2, c3 = self
        return (
            (1 - c1 - c2 - c3) / 4,
            (1 - c1 + c2 + c3) / 4,
            (1 + c1 - c2 + c3) / 4,
            (1 + c1 + c2 - c3) / 4,
        )

    def is_physical(self) -> bool:
        return all(abs(c) <= 1 + PHYSICAL_TOL for c in self) and min(self.eigenvalues()) >= -PHYSICAL_TOL


def validate_density(rho, tol: float = DENSITY_TOL) -> np.ndarray:
    """Return ``rho`` as a complex array, raising if it is not a density operator."""
    rho = qmath.as_matrix(rho)
    if rho.shape[0] != rho.shape[1] or rho.shape[0] not in (2, 4, 8):
        raise DimensionError(f"density operators must be 2x2, 4x4 or 8x8, got {rho.shape}")
    herm = np.max(np.abs(rho - rho.conj().T))
    if herm > tol:
        raise DomainError(f"state is not Hermitian (defect {herm:.3g})")
    tr = np.trace(rho).real
    if abs(tr - 1) > tol:
        raise DomainError(f"state trace is {tr!r}, expected 1")
    low = np.linalg.eigvalsh(qmath.hermitize(rho))[0]
    if low < -tol:
        raise DomainError(f"state has negative eigenvalue {low:.3g}")
    return rho


def is_density(rho, tol: float = DENSITY_TOL) -> bool:
    try:
        validate_density(rho, tol)
    except (DomainError, DimensionError):
        return False
    return True


def pure(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    psi = psi / np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


def werner(z: float) -> np.ndarray:
    """Singlet mixed with white noise: ``z |psi-><psi-| + (1 - z) I/4``."""
    if not 0 <= z <= 1:
        raise DomainError(f"Werner parameter z must lie in [0, 1], got {z}")
    return z * pure(PSI_MINUS) + (1 - z) * np.eye(4, dtype=complex) / 4


def bell_diagonal(c1: float, c2: float, c3: float) -> np.ndarray:
    """``(I⊗I + sum_i c_i σ_i⊗σ_i) / 4``, rejected if not positive."""
    params = BellDiagonalParams(float(c1), float(c2), float(c3))
    if not params.is_physical():
        raise DomainError(
            f"Bell-diagonal parameters {tuple(params)} are unphysical "
            f"(Bell-basis weights {params.eigenvalues()})"
        )
    rho = np.eye(4, dtype=complex)
    for c, s in zip(params, qmath.PAULIS[1:]):
        rho = rho + c * np.kron(s, s)
    return rho / 4


def bloch_state(r_x: float, r_y: float, r_z: float) -> np.ndarray:
    """Single-qubit state ``(I + r·σ) / 2``."""
    if r_x * r_x + r_y * r_y + r_z * r_z > 1 + PHYSICAL_TOL:
        raise DomainError(f"Bloch vector ({r_x}, {r_y}, {r_z}) lies outside the unit ball")
    return 0.5 * (qmath.I2 + r_x * qmath.SIGMA_X + r_y * qmath.SIGMA_Y + r_z * qmath.SIGMA_Z)


def bloch_vector(rho) -> BlochVector:
    rho = np.asarray(rho, dtype=complex)
    return BlochVector(*(float(np.trace(rho @ s).real) for s in qmath.PAULIS[1:]))


def pseudopure_3q(epsilon: float) -> np.ndarray:
    """Three-qubit pseudopure state ``(1 - ε) I/8 + ε |000><000|``."""
    if not 0 <= epsilon <= 1:
        raise DomainError(f"polarization epsilon must lie in [0, 1], got {epsilon}")
    ground = np.zeros((8, 8), dtype=complex)
    ground[0, 0] = 1
    return (1 - epsilon) * np.eye(8, dtype=complex) / 8 + epsilon * ground


PAULI_LABELS = tuple((i, j) for i, j in product(range(4), repeat=2) if (i, j) != (0, 0))


def pauli_expectations(rho) -> np.ndarray:
    """The 15 two-qubit correlators ``Tr(rho σ_i⊗σ_j)``, ordered as ``PAULI_LABELS``."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise DimensionError(f"expected a two-qubit state, got shape {rho.shape}")
    return np.array(
        [np.trace(rho @ np.kron(qmath.PAULIS[i], qmath.PAULIS[j])).real for i, j in PAULI_LABELS]
    )


def from_pauli_expectations(values) -> np.ndarray:
    """Invert :func:`pauli_expectations`; the result must be a valid state."""
    values = np.asarray(values, dtype=float)
    if values.shape != (15,):
        raise DimensionError(f"expected 15 expectation values, got shape {values.shape}")
    rho = np.eye(4, dtype=complex)
    for v, (i, j) in zip(values, PAULI_LABELS):
        rho = rho + v * np.kron(qmath.PAULIS[i], qmath.PAULIS[j])
    rho /= 4
    return validate_density(rho)


def marginals(rho) -> tuple[np.ndarray, np.ndarray]:
    """Reduced states ``(rho_A, rho_B)`` of a two-qubit operator."""
    return qmath.partial_trace(rho, [2, 2], [0]), qmath.partial_trace(rho, [2, 2], [1])


def to_json_dict(rho) -> dict:
    rho = np.asarray(rho, dtype=complex)
    return {"dim": int(rho.shape[0]), "re": rho.real.tolist(), "im": rho.imag.tolist()}


def from_json_dict(doc: dict) -> np.ndarray:
    try:
        dim = int(doc["dim"])
        rho = np.asarray(doc["re"], dtype=float) + 1j * np.asarray(doc["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"malformed state document: {exc}") from exc
    if rho.shape != (dim, dim):
        raise DimensionError(f"state document declares dim {dim} but holds shape {rho.shape}")
    return validate_density(rho)


def dumps(rho, **kwargs) -> str:
    return json.dumps(to_json_dict(rho), **kwargs)


def loads(text: str) -> np.ndarray:
    return from_json_dict(json.loads(text))


# Random generators for property checks and the CLI verification suites.

def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR of a complex Ginibre matrix."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_density(dim: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """Random density operator from the induced (Ginibre) ensemble."""
    rank = dim if rank is None else rank
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_bell_diagonal(rng: np.random.Generator) -> BellDiagonalParams:
    """Uniform draw from the tetrahedron of physical correlation triples."""
    weights = rng.dirichlet(np.ones(4))
    # Invert the weight formulas in BellDiagonalParams.eigenvalues.
    w0, w1, w2, w3 = weights
    c1 = (w2 + w3) - (w0 + w1)
    c2 = (w1 + w3) - (w0 + w2)
    c3 = (w1 + w2) - (w0 + w3)
    return BellDiagonalParams(float(c1), float(c2), float(c3))
