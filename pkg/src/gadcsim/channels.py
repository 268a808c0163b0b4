"""Single-qubit Kraus channels acting on one side of a qubit pair."""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt
from typing import Optional, Sequence

import numpy as np

from . import linalg
from .errors import ValidationError
from .states import I2, QubitPairState

NULL_PROBABILITY = 1e-12


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """Ordered Kraus operators with sum K^dagger K = I checked at construction."""

    operators: tuple
    label: str = ""

    def __post_init__(self):
        ops = tuple(linalg.as_matrix(k, "Kraus operator") for k in self.operators)
        if not ops:
            raise ValidationError("a channel needs at least one Kraus operator")
        d = ops[0].shape[1]
        if any(k.shape[1] != d or k.shape[0] != d for k in ops):
            raise ValidationError("Kraus operators must be square and of equal size")
        for k in ops:
            k.flags.writeable = False
        object.__setattr__(self, "operators", ops)
        res = self.completeness_residual()
        if res > linalg.CHECK_TOL:
            raise ValidationError(
                f"Kraus operators of {self.label or 'channel'} are not complete (residual {res:.3e})"
            )

    @property
    def dim(self) -> int:
        return self.operators[0].shape[0]

    def __len__(self):
        return len(self.operators)

    def __iter__(self):
        return iter(self.operators)

    def __getitem__(self, i):
        return self.operators[i]

    def completeness_residual(self) -> float:
        total = sum(linalg.dagger(k) @ k for k in self.operators)
        return float(np.max(np.abs(total - np.eye(self.operators[0].shape[1]))))

    def apply(self, rho) -> np.ndarray:
        """Act on a bare ``dim x dim`` operator (no state validation)."""
        rho = np.asarray(rho, dtype=np.complex128)
        return sum(k @ rho @ linalg.dagger(k) for k in self.operators)


@dataclass(frozen=True)
class SelectiveOutcome:
    """One heralded branch of a selective measurement.

    ``state`` is ``None`` for a null branch (probability at or below 1e-12).
    """

    state: Optional[QubitPairState]
    probability: float
    operator_index: int

    @property
    def is_null(self) -> bool:
        return self.state is None


def _check_unit(name, value, upper_open=False):
    ok = 0.0 <= value < 1.0 if upper_open else 0.0 <= value <= 1.0
    if not ok:
        bound = "[0, 1)" if upper_open else "[0, 1]"
        raise ValidationError(f"{name} must lie in {bound}, got {value!r}")


def gadc_operators(nu: float, eta: float) -> tuple:
    _check_unit("nu", nu)
    _check_unit("eta", eta)
    sn, sm = sqrt(nu), sqrt(1.0 - nu)
    k1 = sn * np.array([[1.0, 0.0], [0.0, sqrt(eta)]])
    k2 = sn * np.array([[0.0, sqrt(1.0 - eta)], [0.0, 0.0]])
    k3 = sm * np.array([[sqrt(eta), 0.0], [0.0, 1.0]])
    k4 = sm * np.array([[0.0, 0.0], [sqrt(1.0 - eta), 0.0]])
    return k1, k2, k3, k4


def gadc(nu: float, eta: float) -> KrausChannel:
    """Generalized amplitude damping.

    ``nu`` in [0, 1] sets the bath temperature (``nu = 1`` is zero temperature,
    i.e. plain amplitude damping) and ``eta`` in [0, 1] is the surviving
    amplitude fraction (``eta = 1`` means no dissipation).
    """
    return KrausChannel(gadc_operators(nu, eta), label=f"gadc(nu={nu:g}, eta={eta:g})")


def amplitude_damping(eta: float) -> KrausChannel:
    _check_unit("eta", eta)
    k1 = np.array([[1.0, 0.0], [0.0, sqrt(eta)]])
    k2 = np.array([[0.0, sqrt(1.0 - eta)], [0.0, 0.0]])
    return KrausChannel((k1, k2), label=f"adc(eta={eta:g})")


def identity_channel(dim: int = 2) -> KrausChannel:
    return KrausChannel((np.eye(dim),), label="identity")


def weak_measurement_operator(w: float) -> np.ndarray:
    """No-detection operator diag(1, sqrt(1 - w)); invertible for w < 1."""
    _check_unit("w", w, upper_open=True)
    return np.diag([1.0, sqrt(1.0 - w)]).astype(np.complex128)


def weak_detection_operator(w: float) -> np.ndarray:
    """Detection operator diag(0, sqrt(w)), the singular partner of the above."""
    _check_unit("w", w)
    return np.diag([0.0, sqrt(w)]).astype(np.complex128)


def reversal_operator(r: float) -> np.ndarray:
    """Reverse weak measurement diag(sqrt(1 - r), 1)."""
    _check_unit("r", r, upper_open=True)
    return np.diag([sqrt(1.0 - r), 1.0]).astype(np.complex128)


def lift(op, side: str = "B") -> np.ndarray:
    """Embed a single-qubit operator on side ``"A"`` or ``"B"`` of the pair."""
    if side == "B":
        return np.kron(I2, op)
    if side == "A":
        return np.kron(op, I2)
    raise ValidationError(f"side must be 'A' or 'B', got {side!r}")


def apply_one_sided(channel: KrausChannel, state: QubitPairState, side: str = "B") -> QubitPairState:
    if channel.dim != 2:
        raise ValidationError("one-sided action needs a qubit channel")
    rho = state.matrix
    out = np.zeros((4, 4), dtype=np.complex128)
    for k in channel.operators:
        big = lift(k, side)
        out += big @ rho @ linalg.dagger(big)
    return QubitPairState(0.5 * (out + linalg.dagger(out)))


def apply_selective(op, state: QubitPairState, index: int = 0, side: str = "B") -> SelectiveOutcome:
    """Keep the branch of measurement operator ``op`` and renormalize.

    Raises
    ------
    ValidationError
        If ``op^dagger op`` has an eigenvalue above 1 + 1e-10.
    """
    op = linalg.as_matrix(op, "measurement operator")
    if op.shape != (2, 2):
        raise ValidationError("measurement operator must be 2x2")
    top = np.linalg.eigvalsh(linalg.dagger(op) @ op)[-1]
    if top > 1.0 + linalg.CHECK_TOL:
        raise ValidationError(f"op^dagger op exceeds identity (max eigenvalue {top:.12g})")
    big = lift(op, side)
    out = big @ state.matrix @ linalg.dagger(big)
    out = 0.5 * (out + linalg.dagger(out))
    prob = float(np.trace(out).real)
    if prob <= NULL_PROBABILITY:
        return SelectiveOutcome(None, max(prob, 0.0), index)
    return SelectiveOutcome(QubitPairState(out / prob), prob, index)


def measure_all(operators: Sequence, state: QubitPairState, side: str = "B") -> list[SelectiveOutcome]:
    return [apply_selective(op, state, i, side) for i, op in enumerate(operators)]
