"""Noise-only baseline and the two protection pipelines.

All noise and filtering act on qubit B. Selective steps keep one heralded
branch, renormalize it, and multiply its probability into the reported
success probability.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .channels import (
    KrausChannel,
    apply_one_sided,
    apply_selective,
    gadc,
    reversal_operator,
    weak_measurement_operator,
)
from .dilation import (
    closed_form_unitary_one,
    closed_form_unitary_two,
    inverse_channel_kraus,
    povm_elements,
)
from .errors import NullOutcomeError, ValidationError
from .measures import concurrence, steering_value
from .states import QubitPairState


@dataclass(frozen=True)
class ProtocolResult:
    label: str
    branch: Optional[int]
    state: Optional[QubitPairState]
    success_probability: float
    concurrence: float
    steering: float

    @property
    def is_null(self) -> bool:
        return self.state is None

    @classmethod
    def from_state(cls, label, branch, state, probability):
        if state is None:
            return cls(label, branch, None, probability, float("nan"), float("nan"))
        return cls(label, branch, state, probability, concurrence(state), steering_value(state).value)


def baseline(state: QubitPairState, nu: float, eta: float) -> ProtocolResult:
    out = apply_one_sided(gadc(nu, eta), state)
    return ProtocolResult.from_state("baseline", None, out, 1.0)


def weak_protocol(state: QubitPairState, nu: float, eta: float, w: float, r: float) -> ProtocolResult:
    """Weak measurement (strength w), GADC, then reversal (strength r).

    Raises
    ------
    NullOutcomeError
        If either heralded step has vanishing probability.
    """
    first = apply_selective(weak_measurement_operator(w), state, 0)
    if first.is_null:
        raise NullOutcomeError("weak-measurement branch has zero probability")
    damped = apply_one_sided(gadc(nu, eta), first.state)
    second = apply_selective(reversal_operator(r), damped, 0)
    if second.is_null:
        raise NullOutcomeError("reversal branch has zero probability")
    return ProtocolResult.from_state("weak", None, second.state, first.probability * second.probability)


def povm_case_one(state: QubitPairState, nu: float, eta: float, inverse_set: KrausChannel,
                  label: str = "povm-case1") -> list[ProtocolResult]:
    """Selective POVM element sqrt(J_i^dagger J_i) first, then the GADC; one result per i."""
    channel = gadc(nu, eta)
    results = []
    for i, m in enumerate(povm_elements(inverse_set)):
        hit = apply_selective(m, state, i)
        out = None if hit.is_null else apply_one_sided(channel, hit.state)
        results.append(ProtocolResult.from_state(label, i, out, hit.probability))
    return results


def povm_case_two(state: QubitPairState, nu: float, eta: float, inverse_set: KrausChannel,
                  label: str = "povm-case2") -> list[ProtocolResult]:
    """GADC first, then the selective POVM element sqrt(J_i^dagger J_i)."""
    damped = apply_one_sided(gadc(nu, eta), state)
    results = []
    for i, m in enumerate(povm_elements(inverse_set)):
        hit = apply_selective(m, damped, i)
        results.append(ProtocolResult.from_state(label, i, hit.state, hit.probability))
    return results


def best_branch(results: list[ProtocolResult], key: str = "concurrence") -> ProtocolResult:
    """Non-null branch maximizing ``key`` (``"concurrence"`` or ``"steering"``)."""
    live = [res for res in results if not res.is_null]
    if not live:
        raise NullOutcomeError("every branch is null")
    return max(live, key=lambda res: getattr(res, key))


def inverse_set(which: str, nu: float, eta: float) -> KrausChannel:
    """Inverse-channel Kraus set (ancilla index order) of closed-form unitary ``"povm1"``/``"povm2"``."""
    if which == "povm1":
        return inverse_channel_kraus(closed_form_unitary_one(nu, eta))
    if which == "povm2":
        return inverse_channel_kraus(closed_form_unitary_two(nu, eta))
    raise ValidationError(f"unknown POVM family {which!r}")


def _povm_runner(which: str, case: int) -> Callable:
    fn = povm_case_one if case == 1 else povm_case_two
    name = f"{which}-case{case}"

    def run(state, nu, eta, w=0.0, r=0.0):
        return fn(state, nu, eta, inverse_set(which, nu, eta), label=name)

    return run


PROTOCOLS: dict[str, Callable[..., list[ProtocolResult]]] = {
    "baseline": lambda state, nu, eta, w=0.0, r=0.0: [baseline(state, nu, eta)],
    "weak": lambda state, nu, eta, w=0.0, r=0.0: [weak_protocol(state, nu, eta, w, r)],
    "povm1-case1": _povm_runner("povm1", 1),
    "povm1-case2": _povm_runner("povm1", 2),
    "povm2-case1": _povm_runner("povm2", 1),
    "povm2-case2": _povm_runner("povm2", 2),
}


def run_protocol(name: str, state: QubitPairState, nu: float, eta: float,
                 w: float = 0.0, r: float = 0.0) -> list[ProtocolResult]:
    try:
        fn = PROTOCOLS[name]
    except KeyError:
        raise ValidationError(f"unknown protocol {name!r}; expected one of {list(PROTOCOLS)}")
    return fn(state, nu, eta, w, r)


def branch_count(name: str) -> int:
    return 1 if name in ("baseline", "weak") else 4


def improvement(protected: ProtocolResult, unprotected: ProtocolResult) -> tuple[float, float]:
    """(concurrence gain, steering gain); NaN for a null branch."""
    return (protected.concurrence - unprotected.concurrence,
            protected.steering - unprotected.steering)

