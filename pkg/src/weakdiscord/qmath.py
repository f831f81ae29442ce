"""Dense complex linear algebra for one to three qubits.

Every function works on plain ``numpy`` arrays. Where it is cheap to do so,
functions also accept a stack of matrices with shape ``(..., d, d)`` so that
the basis optimizer can evaluate thousands of candidate measurements in a
single call.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionError, DomainError

ALLOWED_DIMS = (1, 2, 4, 8)

HERMITIAN_TOL = 1e-8
NEGATIVE_EIG_TOL = 1e-8
ZERO_EIG_CUTOFF = 1e-12

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (I2, SIGMA_X, SIGMA_Y, SIGMA_Z)


@dataclass(frozen=True)
class HermitianSpectrum:
    """Eigen-decomposition with eigenvalues sorted in descending order."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_matrix(m) -> np.ndarray:
    """Convert to a complex square matrix, checking size and finiteness."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] not in ALLOWED_DIMS or a.shape[1] not in ALLOWED_DIMS:
        raise DimensionError(f"expected a matrix with sides in {ALLOWED_DIMS}, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DomainError("matrix has non-finite entries")
    return a


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(m, -1, -2))


def hermitize(m: np.ndarray) -> np.ndarray:
    return 0.5 * (m + dagger(m))


def kron(a, b) -> np.ndarray:
    """Kronecker product, limited to results no larger than 8x8."""
    a = as_matrix(a)
    b = as_matrix(b)
    rows, cols = a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]
    if rows > 8 or cols > 8:
        raise DimensionError(f"kron result {rows}x{cols} exceeds 8x8")
    return np.kron(a, b)


def kron_all(*ops) -> np.ndarray:
    out = np.eye(1, dtype=complex)
    for op in ops:
        out = kron(out, op)
    return out


def partial_trace(m, subsystem_dims: Sequence[int], keep) -> np.ndarray:
    """Trace out every subsystem not listed in ``keep``.

    ``m`` may carry leading batch axes; the last two axes are the operator.
    Kept subsystems stay in their original order.
    """
    m = np.asarray(m, dtype=complex)
    dims = [int(d) for d in subsystem_dims]
    keep = sorted(set(int(k) for k in keep))
    total = int(np.prod(dims))
    if m.ndim < 2 or m.shape[-1] != total or m.shape[-2] != total:
        raise DimensionError(f"subsystem dims {dims} do not match operator shape {m.shape[-2:]}")
    if not keep:
        raise DimensionError("keep must name at least one subsystem")
    if keep[0] < 0 or keep[-1] >= len(dims):
        raise DimensionError(f"keep indices {keep} out of range for {len(dims)} subsystems")

    n = len(dims)
    batch = m.shape[:-2]
    t = m.reshape(batch + tuple(dims) + tuple(dims))
    letters = "abcdefghijklmnopqrstuvw"
    row = list(letters[:n])
    col = list(letters[n:2 * n])
    for i in range(n):
        if i not in keep:
            col[i] = row[i]
    out_sub = "".join(row[i] for i in keep) + "".join(col[i] for i in keep)
    sub = "..." + "".join(row) + "".join(col) + "->..." + out_sub
    kept = int(np.prod([dims[i] for i in keep]))
    return np.einsum(sub, t).reshape(batch + (kept, kept))


def eigh(m) -> HermitianSpectrum:
    """Hermitian eigen-decomposition of a symmetrized copy of ``m``."""
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"eigh needs a square matrix, got {m.shape}")
    defect = np.max(np.abs(m - m.conj().T))
    if defect > HERMITIAN_TOL:
        raise DomainError(f"matrix is not Hermitian (defect {defect:.3g})")
    w, v = np.linalg.eigh(hermitize(m))
    return HermitianSpectrum(eigenvalues=w[::-1].copy(), eigenvectors=v[:, ::-1].copy())


def _physical_eigvals(m: np.ndarray) -> np.ndarray:
    """Eigenvalues of a (stack of) density operators with roundoff negatives clipped."""
    w = np.linalg.eigvalsh(hermitize(m))
    low = np.min(w)
    if low < -NEGATIVE_EIG_TOL:
        raise DomainError(f"operator has negative eigenvalue {low:.3g}")
    return np.clip(w, 0.0, None)


def entropy_from_eigvals(w: np.ndarray) -> np.ndarray:
    """Shannon entropy in bits over the last axis with 0 log 0 = 0."""
    w = np.asarray(w, dtype=float)
    safe = np.where(w > ZERO_EIG_CUTOFF, w, 1.0)
    return -np.sum(np.where(w > ZERO_EIG_CUTOFF, w * np.log2(safe), 0.0), axis=-1)


def von_neumann_entropy(rho) -> float | np.ndarray:
    """Entropy -Tr(rho log2 rho) in bits; accepts stacks of operators."""
    rho = np.asarray(rho, dtype=complex)
    # Eigenvalues a hair above 1 would otherwise give entropies of order -1e-16.
    s = np.maximum(entropy_from_eigvals(_physical_eigvals(rho)), 0.0)
    return float(s) if np.ndim(s) == 0 else s


def sqrtm_psd(m) -> np.ndarray:
    """Square root of a positive semidefinite matrix via its eigenbasis."""
    w, v = np.linalg.eigh(hermitize(np.asarray(m, dtype=complex)))
    if np.min(w) < -NEGATIVE_EIG_TOL:
        raise DomainError(f"operator has negative eigenvalue {np.min(w):.3g}")
    return (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T


def _same_shape(a, b):
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch {a.shape} vs {b.shape}")
    return a, b


def fidelity(rho_th, rho_ex) -> float:
    """Uhlmann-Jozsa fidelity ``(Tr sqrt(sqrt(r) s sqrt(r)))**2``.

    Evaluated as the squared trace norm of ``sqrt(r) @ sqrt(s)``. The value is
    the same, but roundoff in near-zero eigenvalues of rank-deficient states is
    not amplified by a second square root.
    """
    a, b = _same_shape(rho_th, rho_ex)
    sv = np.linalg.svd(sqrtm_psd(a) @ sqrtm_psd(b), compute_uv=False)
    return float(min(max(np.sum(sv) ** 2, 0.0), 1.0))


def trace_distance(a, b) -> float:
    """Half the trace norm of ``a - b``."""
    a, b = _same_shape(a, b)
    w = np.linalg.eigvalsh(hermitize(a - b))
    return float(0.5 * np.sum(np.abs(w)))


def is_unitary(u, atol: float = 1e-12) -> bool:
    u = np.asarray(u, dtype=complex)
    return bool(np.allclose(u.conj().T @ u, np.eye(u.shape[0]), rtol=0.0, atol=atol))
