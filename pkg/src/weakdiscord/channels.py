"""Phase damping in Kraus form and through an ancilla-qubit dilation.

A weak measurement of strength ``x`` along a fixed axis dephases that axis by
``sech x``; phase damping of strength ``lam`` dephases the computational basis
by ``sqrt(1 - lam)``. The two agree when ``lam = 1 - sech(x)**2 = tanh(x)**2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import qmath
from .errors import DimensionError, DomainError
from .measure import basis_vectors
from .states import validate_density

TP_TOL = 1e-12


@dataclass(frozen=True)
class KrausChannel:
    """Single- or multi-qubit channel ``rho -> sum_k E_k rho E_k†``."""

    kraus_ops: tuple = field(repr=False)
    label: str = ""

    def __post_init__(self):
        ops = tuple(np.asarray(k, dtype=complex) for k in self.kraus_ops)
        if not ops:
            raise DimensionError("a channel needs at least one Kraus operator")
        dim = ops[0].shape[0]
        if any(k.shape != (dim, dim) for k in ops):
            raise DimensionError("Kraus operators must be square and of equal size")
        object.__setattr__(self, "kraus_ops", ops)
        if self.trace_preservation_defect() > TP_TOL:
            raise DomainError(f"channel {self.label!r} is not trace preserving")

    @property
    def dim(self) -> int:
        return self.kraus_ops[0].shape[0]

    def trace_preservation_defect(self) -> float:
        total = sum(k.conj().T @ k for k in self.kraus_ops)
        return float(np.max(np.abs(total - np.eye(self.dim))))


@dataclass(frozen=True)
class DilationGates:
    """Ancilla preparation ``v``, recombination ``w`` and controlled gates ``u0``, ``u1``."""

    v: np.ndarray
    w: np.ndarray
    u0: np.ndarray
    u1: np.ndarray

    def all_unitary(self, atol: float = 1e-12) -> bool:
        return all(qmath.is_unitary(g, atol) for g in (self.v, self.w, self.u0, self.u1))


def _check_lambda(lam: float, *, allow_one: bool = True) -> float:
    lam = float(lam)
    upper_ok = lam <= 1 if allow_one else lam < 1
    if not (math.isfinite(lam) and lam >= 0 and upper_ok):
        bound = "[0, 1]" if allow_one else "[0, 1)"
        raise DomainError(f"damping strength must lie in {bound}, got {lam}")
    return lam


def lambda_from_x(x: float) -> float:
    """Damping strength matching weak strength ``x``; ``1 - sech^2 x`` written as ``tanh^2 x``."""
    x = float(x)
    if not math.isfinite(x) or x < 0:
        raise DomainError(f"measurement strength must be finite and non-negative, got {x}")
    return math.tanh(x) ** 2


def x_from_lambda(lam: float) -> float:
    lam = _check_lambda(lam, allow_one=False)
    return math.atanh(math.sqrt(lam))


def phase_damping_kraus(lam: float) -> KrausChannel:
    lam = _check_lambda(lam)
    keep = math.sqrt(1 - lam)
    e0 = 0.5 * (1 + keep) * qmath.I2 + 0.5 * (1 - keep) * qmath.SIGMA_Z
    e1 = 0.5 * math.sqrt(lam) * (qmath.I2 - qmath.SIGMA_Z)
    return KrausChannel((e0, e1), label=f"phase damping lambda={lam:g}")


def embed(op: np.ndarray, target: int, n_qubits: int) -> np.ndarray:
    """Place a single-qubit operator on qubit ``target`` of an ``n_qubits`` register."""
    if not 0 <= target < n_qubits:
        raise DimensionError(f"qubit index {target} out of range for {n_qubits} qubits")
    factors = [qmath.I2] * n_qubits
    factors[target] = op
    return qmath.kron_all(*factors)


def _n_qubits(rho: np.ndarray) -> int:
    n = int(round(math.log2(rho.shape[-1])))
    if 2 ** n != rho.shape[-1] or n < 1:
        raise DimensionError(f"operator of size {rho.shape[-1]} is not a qubit register")
    return n


def kraus_apply_array(ops, rho: np.ndarray) -> np.ndarray:
    """``sum_k E_k rho E_k†`` for full-register operators; ``rho`` may be a stack."""
    out = np.zeros_like(rho, dtype=complex)
    for e in ops:
        out = out + e @ rho @ e.conj().T
    return out


def apply_channel(channel: KrausChannel, rho, target_qubit: int) -> np.ndarray:
    rho = validate_density(rho)
    if channel.dim != 2:
        raise DimensionError("apply_channel expects a single-qubit channel")
    n = _n_qubits(rho)
    full = [embed(e, target_qubit, n) for e in channel.kraus_ops]
    return qmath.hermitize(kraus_apply_array(full, rho))


def dilation_gates(lam: float) -> DilationGates:
    """Gates for which ``E_k = sum_i W[k, i] V[i, 0] U_i`` reproduces phase damping.

    ``V = W = [[a, b], [b, -a]]`` with ``a = sqrt((1 + sqrt(1 - lam))/2)`` and
    ``b = sqrt((1 - sqrt(1 - lam))/2)``, which is a real reflection and hence
    unitary.
    """
    lam = _check_lambda(lam)
    keep = math.sqrt(1 - lam)
    a = math.sqrt((1 + keep) / 2)
    # (1 - keep) rewritten as lam / (1 + keep) to keep precision at small lam
    b = math.sqrt(lam / (2 * (1 + keep)))
    v = np.array([[a, b], [b, -a]], dtype=complex)
    return DilationGates(v=v, w=v.copy(), u0=qmath.I2.copy(), u1=qmath.SIGMA_Z.copy())


def kraus_from_dilation(gates: DilationGates) -> tuple[np.ndarray, np.ndarray]:
    us = (gates.u0, gates.u1)
    return tuple(
        sum(gates.w[k, i] * gates.v[i, 0] * us[i] for i in range(2)) for k in range(2)
    )


def dilation_unitary(gates: DilationGates, target_qubit: int, n_system: int = 2) -> np.ndarray:
    """Full circuit unitary with the ancilla as the first (most significant) qubit.

    Order of operations: ``V`` on the ancilla, ancilla-controlled ``U_1`` on the
    target (``U_0`` when the ancilla is 0), then ``W`` on the ancilla.
    """
    n = n_system + 1
    p0 = np.diag([1, 0]).astype(complex)
    p1 = np.diag([0, 1]).astype(complex)
    controlled = qmath.kron(p0, embed(gates.u0, target_qubit, n_system)) + qmath.kron(
        p1, embed(gates.u1, target_qubit, n_system)
    )
    v_full = embed(gates.v, 0, n)
    w_full = embed(gates.w, 0, n)
    return w_full @ controlled @ v_full


def dilation_apply_array(unitary: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """Attach ``|0><0|`` ancilla, evolve by ``unitary``, trace the ancilla out."""
    d = rho.shape[-1]
    big = np.zeros(rho.shape[:-2] + (2 * d, 2 * d), dtype=complex)
    big[..., :d, :d] = rho
    out = unitary @ big @ unitary.conj().T
    return out[..., :d, :d] + out[..., d:, d:]


def apply_via_dilation(lam: float, rho, target_qubit: int) -> np.ndarray:
    """Phase damping on one qubit of a two-qubit state, realized with an ancilla."""
    lam = _check_lambda(lam)
    rho = validate_density(rho)
    if rho.shape != (4, 4):
        raise DimensionError("apply_via_dilation supports two-qubit states only")
    if target_qubit not in (0, 1):
        raise DimensionError(f"qubit index {target_qubit} out of range for 2 qubits")
    u = dilation_unitary(dilation_gates(lam), target_qubit)
    return qmath.hermitize(dilation_apply_array(u, rho))


def rotation_angle_from_lambda(lam: float) -> float:
    """Ancilla rotation angle ``-2 asin(sqrt((1 - sqrt(1 - lam))/2))`` in radians."""
    lam = _check_lambda(lam)
    return -2 * math.asin(math.sqrt(lam / (2 * (1 + math.sqrt(1 - lam)))))


def basis_rotation(theta, phi) -> np.ndarray:
    """Unitaries with columns ``|psi_1>, |psi_2>``; shape ``(..., 2, 2)``."""
    psi1, psi2 = basis_vectors(theta, phi)
    return np.stack([psi1, psi2], axis=-1)


def dephase_b_array(rho: np.ndarray, theta, phi, lam: float, route: str = "kraus") -> np.ndarray:
    """Phase-damp qubit B along the axis ``(theta, phi)`` instead of z.

    B is rotated so the measurement axis becomes z, damped by the Kraus channel
    or the ancilla circuit, and rotated back. For ``lam = tanh(x)**2`` this is
    the non-selective weak measurement of strength ``x`` along that axis.
    """
    r = basis_rotation(theta, phi)
    r_full = np.zeros(r.shape[:-2] + (4, 4), dtype=complex)
    r_full[..., :2, :2] = r
    r_full[..., 2:, 2:] = r
    local = qmath.dagger(r_full) @ rho @ r_full
    if route == "kraus":
        ops = [embed(e, 1, 2) for e in phase_damping_kraus(lam).kraus_ops]
        local = kraus_apply_array(ops, local)
    elif route == "dilation":
        local = dilation_apply_array(dilation_unitary(dilation_gates(lam), 1), local)
    else:
        raise ValueError(f"unknown dephasing route {route!r}")
    return r_full @ local @ qmath.dagger(r_full)
