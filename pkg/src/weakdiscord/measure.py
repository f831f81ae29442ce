"""Projective and weak two-outcome measurements on qubit B of a two-qubit state.

The single-basis functions (``projectors``, ``measure_b_weak`` and so on) are
thin wrappers over array routines that accept broadcastable arrays of angles.
The optimizer in :mod:`weakdiscord.discord` calls the array routines directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import qmath
from .errors import DomainError
from .states import validate_density

X_MAX = 30.0
ZERO_PROB = 1e-14


@dataclass(frozen=True)
class MeasurementBasis:
    """Bloch-sphere direction ``(theta, phi)`` of the measured axis on B."""

    theta: float
    phi: float

    def __post_init__(self):
        if not (0.0 <= self.theta <= math.pi and 0.0 <= self.phi < 2 * math.pi):
            raise DomainError(f"basis angles out of range: theta={self.theta}, phi={self.phi}")


POLAR_BASIS = MeasurementBasis(math.pi, math.pi)


@dataclass(frozen=True)
class WeakPovm:
    x: float
    p_plus: np.ndarray = field(repr=False)
    p_minus: np.ndarray = field(repr=False)
    basis: MeasurementBasis = POLAR_BASIS

    def completeness_defect(self) -> float:
        total = self.p_plus.conj().T @ self.p_plus + self.p_minus.conj().T @ self.p_minus
        return float(np.max(np.abs(total - np.eye(2))))


@dataclass(frozen=True)
class MeasurementOutcome:
    probability: float
    conditional_state: np.ndarray = field(repr=False)


def basis_vectors(theta, phi) -> tuple[np.ndarray, np.ndarray]:
    """The orthonormal pair ``|psi_1>, |psi_2>`` with shape ``(..., 2)``.

    The phase convention is fixed: ``|psi_2> = -sin(θ/2)|0> + e^{iφ} cos(θ/2)|1>``.
    """
    theta, phi = np.broadcast_arrays(np.asarray(theta, dtype=float), np.asarray(phi, dtype=float))
    c = np.cos(theta / 2)
    s = np.sin(theta / 2)
    e = np.exp(1j * phi)
    psi1 = np.stack([c + 0j, e * s], axis=-1)
    psi2 = np.stack([-s + 0j, e * c], axis=-1)
    return psi1, psi2


def projector_stack(theta, phi) -> np.ndarray:
    """Projector pairs with shape ``(..., 2, 2, 2)``; axis -3 indexes the outcome."""
    psi1, psi2 = basis_vectors(theta, phi)
    pi1 = psi1[..., :, None] * psi1.conj()[..., None, :]
    pi2 = psi2[..., :, None] * psi2.conj()[..., None, :]
    return np.stack([pi1, pi2], axis=-3)


def weak_coefficients(x) -> tuple[np.ndarray, np.ndarray]:
    """``sqrt((1 - tanh x)/2)`` and ``sqrt((1 + tanh x)/2)`` without cancellation.

    ``(1 ∓ tanh x)/2`` equals the logistic function of ``∓2x``.
    """
    x = np.asarray(x, dtype=float)
    small = np.sqrt(0.5 * np.exp(-x) / np.cosh(x))
    large = np.sqrt(0.5 * np.exp(x) / np.cosh(x))
    return small, large


def _check_strength(x: float) -> float:
    x = float(x)
    if not math.isfinite(x) or x < 0:
        raise DomainError(f"measurement strength must be finite and non-negative, got {x}")
    if x > X_MAX:
        raise DomainError(f"measurement strength {x} exceeds the cap {X_MAX}; use a projective measurement")
    return x


def weak_stack(theta, phi, x) -> np.ndarray:
    """``P(x), P(-x)`` with shape ``(..., 2, 2, 2)``; axis -3 indexes the outcome."""
    proj = projector_stack(theta, phi)
    small, large = weak_coefficients(x)
    small = np.asarray(small)[..., None, None]
    large = np.asarray(large)[..., None, None]
    p_plus = small * proj[..., 0, :, :] + large * proj[..., 1, :, :]
    p_minus = large * proj[..., 0, :, :] + small * proj[..., 1, :, :]
    return np.stack([p_plus, p_minus], axis=-3)


def projectors(basis: MeasurementBasis) -> tuple[np.ndarray, np.ndarray]:
    proj = projector_stack(basis.theta, basis.phi)
    return proj[0], proj[1]


def weak_povm(basis: MeasurementBasis, x: float) -> WeakPovm:
    x = _check_strength(x)
    ops = weak_stack(basis.theta, basis.phi, x)
    return WeakPovm(x=x, p_plus=ops[0], p_minus=ops[1], basis=basis)


# Array routines: ``rho`` is (..., 4, 4), ``ops`` is (..., k, 2, 2) Kraus
# operators acting on qubit B. Leading axes broadcast.

def _on_b(op: np.ndarray) -> np.ndarray:
    """Lift (..., 2, 2) operators on B to (..., 4, 4) operators ``I ⊗ op``."""
    out = np.zeros(op.shape[:-2] + (4, 4), dtype=complex)
    out[..., 0:2, 0:2] = op
    out[..., 2:4, 2:4] = op
    return out


def post_state_array(rho: np.ndarray, ops: np.ndarray) -> np.ndarray:
    """Non-selective post-measurement state ``sum_k (I⊗K) rho (I⊗K)†``."""
    lifted = _on_b(ops)
    return np.sum(lifted @ rho[..., None, :, :] @ qmath.dagger(lifted), axis=-3)


def conditional_a_array(rho: np.ndarray, effects: np.ndarray) -> np.ndarray:
    """Unnormalized A states ``Tr_B[(I⊗M_k) rho]`` for POVM effects ``M_k``.

    Returns shape ``(..., k, 2, 2)``; the trace of each block is the outcome
    probability.
    """
    t = rho.reshape(rho.shape[:-2] + (2, 2, 2, 2))
    return np.einsum("...kcb,...abdc->...kad", effects, t)


def effects_from_kraus(ops: np.ndarray) -> np.ndarray:
    return qmath.dagger(ops) @ ops


def conditional_entropy_array(rho: np.ndarray, effects: np.ndarray) -> np.ndarray:
    """``sum_k p_k S(rho_A|k)`` in bits, from unnormalized conditional states."""
    sigma = conditional_a_array(rho, effects)
    p = np.real(np.trace(sigma, axis1=-2, axis2=-1))
    safe = np.where(p > ZERO_PROB, p, 1.0)
    w = np.linalg.eigvalsh(qmath.hermitize(sigma)) / safe[..., None]
    w = np.clip(w, 0.0, None)
    s = qmath.entropy_from_eigvals(w)
    return np.sum(np.where(p > ZERO_PROB, p * s, 0.0), axis=-1)


def _outcomes(rho: np.ndarray, ops: np.ndarray) -> list[MeasurementOutcome]:
    sigma = conditional_a_array(rho, effects_from_kraus(ops))
    out = []
    for block in sigma:
        p = float(np.trace(block).real)
        if p > ZERO_PROB:
            cond = qmath.hermitize(block / p)
        else:
            cond = np.eye(2, dtype=complex) / 2
        out.append(MeasurementOutcome(probability=p, conditional_state=cond))
    return out


def measure_b_projective(rho, basis: MeasurementBasis):
    """Projective measurement of B along ``basis``.

    Returns ``(outcomes, post_state)``. Outcome ``j`` corresponds to ``Π_j``;
    zero-probability outcomes carry ``I/2`` as their conditional state.
    """
    rho = validate_density(rho)
    ops = projector_stack(basis.theta, basis.phi)
    return _outcomes(rho, ops), post_state_array(rho, ops)


def measure_b_weak(rho, povm: WeakPovm):
    """Weak measurement of B with outcomes ordered ``(P(x), P(-x))``."""
    rho = validate_density(rho)
    ops = np.stack([povm.p_plus, povm.p_minus])
    return _outcomes(rho, ops), post_state_array(rho, ops)


def conditional_entropy_projective(rho, basis: MeasurementBasis) -> float:
    rho = validate_density(rho)
    ops = projector_stack(basis.theta, basis.phi)
    return float(conditional_entropy_array(rho, ops))


def conditional_entropy_weak(rho, povm: WeakPovm) -> float:
    rho = validate_density(rho)
    ops = np.stack([povm.p_plus, povm.p_minus])
    return float(conditional_entropy_array(rho, effects_from_kraus(ops)))
