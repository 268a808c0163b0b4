"""Two-qubit density operators and Pauli correlation data.

Basis order is |00>, |01>, |10>, |11> with qubit A as the slow index.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import ValidationError

I2 = np.eye(2, dtype=np.complex128)
SX = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SY = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SZ = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULIS = (SX, SY, SZ)


@dataclass(frozen=True, eq=False)
class QubitPairState:
    """Validated 4x4 density matrix of the pair AB.

    Construction fails unless the matrix is Hermitian, has unit trace and no
    eigenvalue below -1e-10. The stored array is a read-only copy.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = linalg.as_matrix(self.matrix, "state")
        if m.shape != (4, 4):
            raise ValidationError(f"two-qubit state must be 4x4, got {m.shape}")
        if not linalg.is_hermitian(m):
            raise ValidationError(
                f"state is not Hermitian (residual {linalg.hermiticity_residual(m):.3e})"
            )
        tr = np.trace(m).real
        if abs(tr - 1.0) > linalg.CHECK_TOL:
            raise ValidationError(f"state trace is {tr!r}, expected 1")
        lo = np.linalg.eigvalsh(0.5 * (m + linalg.dagger(m)))[0]
        if lo < linalg.EIG_FLOOR:
            raise ValidationError(f"state is not positive semidefinite (min eigenvalue {lo:.3e})")
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)

    def __repr__(self):
        return f"QubitPairState(purity={self.purity():.6f})"


@dataclass(frozen=True)
class CorrelationData:
    """Pauli decomposition ``rho = (I + a.s x I + I x b.s + sum T_ij s_i x s_j) / 4``."""

    t_matrix: np.ndarray
    a_vector: np.ndarray
    b_vector: np.ndarray

    def reconstruct(self) -> np.ndarray:
        rho = np.kron(I2, I2).astype(np.complex128)
        for i, si in enumerate(PAULIS):
            rho = rho + self.a_vector[i] * np.kron(si, I2) + self.b_vector[i] * np.kron(I2, si)
            for j, sj in enumerate(PAULIS):
                rho = rho + self.t_matrix[i, j] * np.kron(si, sj)
        return rho / 4


def from_ket(ket) -> QubitPairState:
    psi = np.asarray(ket, dtype=np.complex128).reshape(4)
    psi = psi / np.linalg.norm(psi)
    return QubitPairState(np.outer(psi, psi.conj()))


def _check_family_args(alpha: float, sign: int) -> float:
    if not 0.0 <= alpha <= 1.0:
        raise ValidationError(f"alpha must lie in [0, 1], got {alpha!r}")
    if sign not in (1, -1):
        raise ValidationError(f"sign must be +1 or -1, got {sign!r}")
    return float(np.sqrt(max(0.0, 1.0 - alpha * alpha)))


def antiparallel_state(alpha: float, sign: int = 1) -> QubitPairState:
    """alpha|01> + sign*beta|10> with beta = sqrt(1 - alpha^2)."""
    beta = _check_family_args(alpha, sign)
    return from_ket([0.0, alpha, sign * beta, 0.0])


def parallel_state(alpha: float, sign: int = 1) -> QubitPairState:
    """alpha|00> + sign*beta|11> with beta = sqrt(1 - alpha^2)."""
    beta = _check_family_args(alpha, sign)
    return from_ket([alpha, 0.0, 0.0, sign * beta])


FAMILIES = {"antiparallel": antiparallel_state, "parallel": parallel_state}


def family_state(family: str, alpha: float, sign: int = 1) -> QubitPairState:
    try:
        ctor = FAMILIES[family]
    except KeyError:
        raise ValidationError(f"unknown state family {family!r}; expected one of {sorted(FAMILIES)}")
    return ctor(alpha, sign)


def maximally_mixed() -> QubitPairState:
    return QubitPairState(np.eye(4, dtype=np.complex128) / 4)


def random_state(rng: np.random.Generator, rank: int = 4) -> QubitPairState:
    """Random density matrix of the given rank (Ginibre construction)."""
    g = rng.normal(size=(4, rank)) + 1j * rng.normal(size=(4, rank))
    rho = g @ linalg.dagger(g)
    return QubitPairState(rho / np.trace(rho).real)


_PAIR_OPS = np.array([np.kron(si, sj) for si in PAULIS for sj in PAULIS])
_A_OPS = np.array([np.kron(si, I2) for si in PAULIS])
_B_OPS = np.array([np.kron(I2, sj) for sj in PAULIS])


def _expect(ops, rho):
    vals = np.einsum("kij,ji->k", ops, rho)
    worst = float(np.max(np.abs(vals.imag)))
    if worst > linalg.CHECK_TOL:
        raise ValidationError(f"expectation value has imaginary part {worst:.3e}")
    return vals.real


def correlation_data(state: QubitPairState) -> CorrelationData:
    rho = state.matrix
    return CorrelationData(
        _expect(_PAIR_OPS, rho).reshape(3, 3), _expect(_A_OPS, rho), _expect(_B_OPS, rho)
    )
