"""Unitary dilations of qubit channels and the Kraus sets of their inverses.

Joint system-ancilla basis is ordered ``(k, a)`` with the system index slow:
row/column ``k*M + a``. The ancilla starts in basis vector ``ancilla_init``
(index 0 by default), so the Kraus operators of the forward channel are
``L_i = <i|_anc U |init>_anc`` and those of the inverse channel are
``J_i = <i|_anc U^dagger |init>_anc``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np

from . import linalg
from .channels import KrausChannel, gadc
from .errors import NumericalError, SingularParameterError, ValidationError

SINGULAR_TOL = 1e-12
UNITARITY_REPORT_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class UnitaryDilation:
    matrix: np.ndarray
    system_dim: int
    ancilla_dim: int
    ancilla_init: int = 0
    label: str = ""

    def __post_init__(self):
        u = linalg.as_matrix(self.matrix, "dilation")
        n = self.system_dim * self.ancilla_dim
        if u.shape != (n, n):
            raise ValidationError(
                f"dilation must be {n}x{n} for d={self.system_dim}, M={self.ancilla_dim}"
            )
        if not 0 <= self.ancilla_init < self.ancilla_dim:
            raise ValidationError("ancilla_init out of range")
        res = linalg.unitarity_residual(u)
        if res > UNITARITY_REPORT_TOL:
            raise NumericalError(f"{self.label or 'dilation'} is not unitary (residual {res:.3e})")
        u = u.copy()
        u.flags.writeable = False
        object.__setattr__(self, "matrix", u)

    def blocks(self, inverse: bool = False) -> np.ndarray:
        """Array ``B[a, b]`` of ``d x d`` blocks ``<a|_anc X |b>_anc`` with X = U or U^dagger."""
        d, m = self.system_dim, self.ancilla_dim
        x = linalg.dagger(self.matrix) if inverse else self.matrix
        # x[k*m + a, l*m + b] -> [a, b, k, l]
        return x.reshape(d, m, d, m).transpose(1, 3, 0, 2)

    def channel_action(self, rho, inverse: bool = False) -> np.ndarray:
        """``Tr_anc[X (rho x |init><init|) X^dagger]`` computed by explicit partial trace."""
        d, m = self.system_dim, self.ancilla_dim
        anc = np.zeros((m, m), dtype=np.complex128)
        anc[self.ancilla_init, self.ancilla_init] = 1.0
        x = linalg.dagger(self.matrix) if inverse else self.matrix
        joint = x @ np.kron(rho, anc) @ linalg.dagger(x)
        # the ancilla is the fast (second) factor
        return linalg.partial_trace_second(joint, d, m)


def extract_kraus(dilation: UnitaryDilation, label: str = "") -> KrausChannel:
    """Forward-channel Kraus operators ``L_i = <i| U |init>``."""
    b = dilation.blocks()
    ops = [b[i, dilation.ancilla_init] for i in range(dilation.ancilla_dim)]
    return KrausChannel(ops, label=label or f"kraus({dilation.label})")


def inverse_channel_kraus(dilation: UnitaryDilation, label: str = "") -> KrausChannel:
    """Kraus operators ``J_i = <i| U^dagger |init>`` of the channel dilated by U^dagger."""
    b = dilation.blocks(inverse=True)
    ops = [b[i, dilation.ancilla_init] for i in range(dilation.ancilla_dim)]
    return KrausChannel(ops, label=label or f"inverse({dilation.label})")


def build_dilation(channel: KrausChannel, ancilla_init: int = 0) -> UnitaryDilation:
    """Unitary dilation from a Kraus set by fixing d columns and completing the basis.

    Column ``beta*M + init`` holds the entries ``<alpha|L_i|beta>`` at row
    ``alpha*M + i``; all other columns come from
    :func:`linalg.complete_orthonormal_basis` and fill the free column slots in
    increasing order. The completion is deterministic but, like any
    completion, not unique.
    """
    d, m = channel.dim, len(channel)
    n = d * m
    if not 0 <= ancilla_init < m:
        raise ValidationError("ancilla_init out of range")
    kraus = np.stack(channel.operators)  # [i, alpha, beta]
    fixed = [kraus[:, :, beta].T.reshape(n) for beta in range(d)]
    basis = linalg.complete_orthonormal_basis(fixed, n)
    fixed_slots = [beta * m + ancilla_init for beta in range(d)]
    free_slots = [c for c in range(n) if c not in fixed_slots]
    u = np.zeros((n, n), dtype=np.complex128)
    for slot, vec in zip(fixed_slots + free_slots, basis):
        u[:, slot] = vec
    return UnitaryDilation(u, d, m, ancilla_init, label=f"built({channel.label})")


def _check_params(nu, eta):
    for name, v in (("nu", nu), ("eta", eta)):
        if not 0.0 <= v <= 1.0:
            raise ValidationError(f"{name} must lie in [0, 1], got {v!r}")


def _den(value_sq: float, what: str, nu, eta) -> float:
    den = sqrt(max(value_sq, 0.0))
    if den < SINGULAR_TOL:
        raise SingularParameterError(f"{what} vanishes at nu={nu!r}, eta={eta!r}")
    return den


def unitary_one_matrix(nu: float, eta: float) -> np.ndarray:
    """First closed-form 8x8 GADC dilation.

    Singular (direction-dependent limit) only at ``nu = eta = 0``.
    """
    _check_params(nu, eta)
    s = lambda x: sqrt(max(x, 0.0))  # noqa: E731
    n, e = nu, eta
    D = _den(1 - (1 - n) * (1 - e), "sqrt(1-(1-nu)(1-eta))", nu, eta)
    return np.array([
        [s(n), 0, -s((1 - n) * e) / D, 0, 0, 0, 0, -s(n * (1 - n) * (1 - e)) / D],
        [0, s(e), 0, 0, s(n * (1 - e)), 0, -s((1 - n) * (1 - e)), 0],
        [s((1 - n) * e), 0, s(n) / D, 0, 0, 0, 0, -(1 - n) * s(e * (1 - e)) / D],
        [0, 0, 0, s(e * (1 - n) + n), 0, -s((1 - n) * (1 - e)), 0, 0],
        [0, -s(1 - e), 0, 0, s(n * e), 0, -s((1 - n) * e), 0],
        [0, 0, 0, s((1 - n) * (1 - e)), 0, s(e * (1 - n) + n), 0, 0],
        [0, 0, 0, 0, s(1 - n), 0, s(n), 0],
        [s((1 - n) * (1 - e)), 0, 0, 0, 0, 0, 0, (e * (1 - n) + n) / D],
    ], dtype=np.complex128)


def unitary_two_matrix(nu: float, eta: float) -> np.ndarray:
    """Second closed-form 8x8 GADC dilation.

    Two entries carry the denominator ``sqrt(1-(1-nu))``; at ``nu = 0`` they
    are replaced by their finite limits ``sqrt(eta)`` and ``-sqrt(1-eta)``.
    Singular at ``nu = 0, eta = 1``.
    """
    _check_params(nu, eta)
    s = lambda x: sqrt(max(x, 0.0))  # noqa: E731
    n, e = nu, eta
    D = _den(1 - e * (1 - n), "sqrt(1-eta(1-nu))", nu, eta)
    q = s(1 - (1 - n))
    if q < SINGULAR_TOL:
        u11, u41 = s(e), -s(1 - e)
    else:
        u11, u41 = s(e * n) / q, -s((1 - e) * n) / q
    return np.array([
        [s(n), 0, -s(e * (1 - n)) * s(n) / D, 0, 0, 0, 0, -s((1 - e) * (1 - n)) / D],
        [0, u11, 0, 0, s((1 - e) * n), 0, -s(1 - n) * s(1 - e), 0],
        [s(e * (1 - n)), 0, s(1 - e * (1 - n)), 0, 0, 0, 0, 0],
        [0, 0, 0, s(e * (1 - n) + n), 0, -s((1 - e) * (1 - n)), 0, 0],
        [0, u41, 0, 0, s(e * n), 0, -s(1 - n) * s(e), 0],
        [0, 0, 0, s((1 - e) * (1 - n)), 0, s(e * (1 - n) + n), 0, 0],
        [0, 0, 0, 0, s(1 - n), 0, s(n), 0],
        [s((1 - e) * (1 - n)), 0, -(1 - n) * s(e * (1 - e)) / D, 0, 0, 0, 0, s(n) / D],
    ], dtype=np.complex128)


def closed_form_unitary_one(nu: float, eta: float) -> UnitaryDilation:
    return UnitaryDilation(unitary_one_matrix(nu, eta), 2, 4, 0, label=f"U1(nu={nu:g}, eta={eta:g})")


def closed_form_unitary_two(nu: float, eta: float) -> UnitaryDilation:
    return UnitaryDilation(unitary_two_matrix(nu, eta), 2, 4, 0, label=f"U2(nu={nu:g}, eta={eta:g})")


def closed_form_inverse_one(nu: float, eta: float) -> KrausChannel:
    """Inverse-channel Kraus set of the first unitary, in closed form.

    The closed-form labelling lists ``<2|U^dagger|1>`` and ``<3|U^dagger|1>``
    swapped relative to ancilla index order; :func:`inverse_channel_kraus`
    returns index order.
    """
    _check_params(nu, eta)
    n, e = nu, eta
    D = _den(-n * e + e + n, "sqrt(eta+nu-nu*eta)", nu, eta)
    a = sqrt(max(e - e * n, 0.0))
    j1 = np.array([[sqrt(n), 0], [0, sqrt(e * n)]])
    j2 = np.array([[-a / D, 0], [0, -a]])
    j3 = np.array([[0, -sqrt(1 - e)], [0, 0]])
    j4 = np.array([[0, 0], [-sqrt(max((e - 1) * (n - 1) * n, 0.0)) / D, 0]])
    return KrausChannel((j1, j2, j3, j4), label=f"J1(nu={nu:g}, eta={eta:g})")


def closed_form_inverse_two(nu: float, eta: float) -> KrausChannel:
    """Closed-form inverse-channel Kraus set of the second unitary (closed-form labelling)."""
    _check_params(nu, eta)
    n, e = nu, eta
    D = _den(e * (n - 1) + 1, "sqrt(eta(nu-1)+1)", nu, eta)
    j1 = np.array([[sqrt(n), 0], [0, sqrt(e * n)]])
    j2 = np.array([[-sqrt(n) * sqrt(max(e - e * n, 0.0)) / D, 0], [0, -sqrt(e) * sqrt(1 - n)]])
    j3 = np.array([[0, -sqrt(1 - e)], [0, 0]])
    j4 = np.array([[0, 0], [-sqrt(max((e - 1) * (n - 1), 0.0)) / D, 0]])
    return KrausChannel((j1, j2, j3, j4), label=f"J2(nu={nu:g}, eta={eta:g})")


# Permutation between ancilla index order and the closed-form J labelling (an involution).
CLOSED_FORM_ORDER = (0, 2, 1, 3)


def povm_elements(inverse: KrausChannel) -> list[np.ndarray]:
    """POVM measurement operators ``sqrt(J_i^dagger J_i)``."""
    return [linalg.psd_sqrt(linalg.dagger(j) @ j) for j in inverse.operators]


def verification_report(dilation_matrix, reference: KrausChannel | None = None,
                        system_dim: int = 2, ancilla_dim: int = 4, ancilla_init: int = 0) -> dict:
    """Numerical health report for a candidate dilation matrix.

    Works on the raw matrix so that a non-unitary transcription is reported
    rather than rejected.
    """
    u = linalg.as_matrix(dilation_matrix, "dilation")
    n = system_dim * ancilla_dim
    gram = linalg.dagger(u) @ u
    col_norm_dev = np.abs(np.sqrt(np.abs(np.diag(gram))) - 1.0)
    off = gram - np.diag(np.diag(gram))
    blocks = u.reshape(system_dim, ancilla_dim, system_dim, ancilla_dim).transpose(1, 3, 0, 2)
    inv_blocks = linalg.dagger(u).reshape(
        system_dim, ancilla_dim, system_dim, ancilla_dim).transpose(1, 3, 0, 2)
    fwd = [blocks[i, ancilla_init] for i in range(ancilla_dim)]
    inv = [inv_blocks[i, ancilla_init] for i in range(ancilla_dim)]
    eye = np.eye(system_dim)
    report = {
        "dimension": n,
        "unitarity_residual": float(np.max(np.abs(gram - np.eye(n)))),
        "column_norm_deviation": [float(x) for x in col_norm_dev],
        "gram_offdiag_max": float(np.max(np.abs(off))),
        "forward_completeness_residual": float(
            np.max(np.abs(sum(linalg.dagger(k) @ k for k in fwd) - eye))),
        "inverse_completeness_residual": float(
            np.max(np.abs(sum(linalg.dagger(j) @ j for j in inv) - eye))),
    }
    if reference is not None:
        if len(reference) != ancilla_dim:
            raise ValidationError("reference channel has the wrong number of Kraus operators")
        report["kraus_extraction_residual"] = float(
            max(np.max(np.abs(a - b)) for a, b in zip(fwd, reference.operators)))
    return report


def worst_residual(report: dict) -> float:
    """Largest residual in a :func:`verification_report` dict."""
    vals = [v for k, v in report.items() if k.endswith(("_residual", "_max"))]
    return float(max(vals + report["column_norm_deviation"]))


def gadc_dilation(which: str, nu: float, eta: float) -> UnitaryDilation:
    """``which`` is ``"u1"``, ``"u2"`` or ``"built"``."""
    if which == "u1":
        return closed_form_unitary_one(nu, eta)
    if which == "u2":
        return closed_form_unitary_two(nu, eta)
    if which == "built":
        return build_dilation(gadc(nu, eta))
    raise ValidationError(f"unknown dilation {which!r}; expected u1, u2 or built")
