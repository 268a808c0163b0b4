"""Concurrence and the two-setting steering functional.

The steering functional is

    F(a0, a1) = sqrt(<(A0+A1) B0>^2 + <(A0+A1) B1>^2)
              + sqrt(<(A0-A1) B0>^2 + <(A0-A1) B1>^2)

with B0 = sigma_z, B1 = sigma_x on qubit B and A_x = a_x . sigma on qubit A.
Values above 2 certify steering; 2*sqrt(2) is the quantum maximum.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .states import PAULIS, SX, SY, SZ, QubitPairState, correlation_data

STEERING_BOUND = 2.0
STEERING_MAX = 2.0 * np.sqrt(2.0)
_YY = np.kron(SY, SY)


def spin_flip(state: QubitPairState, conjugate: bool = True) -> np.ndarray:
    """``(sy x sy) rho* (sy x sy)``; ``conjugate=False`` drops the complex conjugation."""
    rho = state.matrix
    return _YY @ (np.conj(rho) if conjugate else rho) @ _YY


# density-matrix eigenvalues below this are round-off and dropped
RANK_FLOOR = 1e-14


def concurrence_roots(state: QubitPairState, conjugate: bool = True) -> np.ndarray:
    """Square roots of the eigenvalues of ``rho . rho_tilde``, descending.

    With ``rho = W W^dagger`` (columns of W are eigenvectors scaled by the root
    of their eigenvalue), the nonzero spectrum of ``rho . rho_tilde`` equals
    that of ``tau tau^dagger`` for ``tau = W^T (sy x sy) W``, so the roots are
    the singular values of ``tau``. This never square-roots a round-off
    eigenvalue, which would otherwise leave ~1e-8 of spurious concurrence on
    product states. ``conjugate=False`` uses ``W^dagger`` in place of ``W^T``.
    """
    vals, vecs = linalg.hermitian_eig(state.matrix)
    keep = vals > RANK_FLOOR
    w = vecs[:, keep] * np.sqrt(vals[keep])
    tau = (w.T if conjugate else linalg.dagger(w)) @ _YY @ w
    roots = np.zeros(4)
    sv = linalg.singular_values(tau)
    roots[: sv.size] = sv
    return roots


def concurrence_eigenvalues(state: QubitPairState, conjugate: bool = True) -> np.ndarray:
    """Eigenvalues of ``rho . rho_tilde``, descending, non-negative."""
    return concurrence_roots(state, conjugate) ** 2


def concurrence(state: QubitPairState, conjugate: bool = True) -> float:
    lam = concurrence_roots(state, conjugate)
    return float(max(lam[0] - lam[1] - lam[2] - lam[3], 0.0))


@dataclass(frozen=True)
class SteeringResult:
    value: float
    violates: bool
    optimal_a0: np.ndarray
    optimal_a1: np.ndarray


def response_matrix(state: QubitPairState) -> np.ndarray:
    """3x2 matrix ``[T e_z, T e_x]`` of correlation-matrix columns for B's settings."""
    t = correlation_data(state).t_matrix
    return t[:, [2, 0]]


def steering_functional(state: QubitPairState, a0, a1) -> float:
    """Evaluate F for given Bloch vectors of A's two observables."""
    m = response_matrix(state)
    u, v = np.asarray(a0, float) + a1, np.asarray(a0, float) - a1
    return float(np.linalg.norm(u @ m) + np.linalg.norm(v @ m))


def steering_value(state: QubitPairState) -> SteeringResult:
    """Maximum of F over unit vectors a0, a1.

    With ``u = a0 + a1`` and ``v = a0 - a1`` orthogonal and ``|u|^2 + |v|^2 = 4``,
    the maximum is ``2 sqrt(s1^2 + s2^2)`` for the singular values of the
    response matrix, attained at ``a0, a1 = c*u1 +- s*u2`` with ``u1, u2`` its
    left singular vectors and ``(c, s)`` proportional to ``(s1, s2)``.
    """
    m = response_matrix(state)
    left, sv, _ = np.linalg.svd(m)
    norm = float(np.hypot(sv[0], sv[1]))
    value = 2.0 * norm
    if norm == 0.0:
        a0 = a1 = np.array([0.0, 0.0, 1.0])
    else:
        c, s = sv[0] / norm, sv[1] / norm
        a0 = c * left[:, 0] + s * left[:, 1]
        a1 = c * left[:, 0] - s * left[:, 1]
    return SteeringResult(value, value > STEERING_BOUND + 1e-12, a0, a1)


def _sphere(theta, phi):
    st = np.sin(theta)
    return np.stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta)], axis=-1)


def steering_value_oracle(state: QubitPairState, grid_density: int = 48,
                          refine_tol: float = 1e-7, chunk: int = 512) -> float:
    """Brute-force maximum of F, independent of the singular-value shortcut.

    Each Bloch vector runs over a ``grid_density x grid_density`` grid of
    spherical angles; the best grid pair is then polished by coordinate ascent
    with step halving down to ``refine_tol``. The result is a lower bound on
    the true maximum.
    """
    if grid_density < 24:
        raise ValueError("grid_density must be at least 24")
    rho = state.matrix
    # r[i, y] = Tr[rho (sigma_i x B_y)] evaluated directly from the density matrix
    r = np.array([[np.trace(rho @ np.kron(si, b)).real for b in (SZ, SX)] for si in PAULIS])

    def value(t0, p0, t1, p1):
        a0, a1 = _sphere(t0, p0), _sphere(t1, p1)
        return float(np.linalg.norm((a0 + a1) @ r) + np.linalg.norm((a0 - a1) @ r))

    thetas = np.linspace(0.0, np.pi, grid_density)
    phis = np.linspace(0.0, 2.0 * np.pi, grid_density, endpoint=False)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    tt, pp = tt.ravel(), pp.ravel()
    proj = _sphere(tt, pp) @ r  # (g^2, 2)
    sq = np.sum(proj * proj, axis=1)

    best, best_ij = -1.0, (0, 0)
    for start in range(0, proj.shape[0], chunk):
        blk = proj[start:start + chunk]
        cross = 2.0 * blk @ proj.T
        base = sq[start:start + chunk, None] + sq[None, :]
        f = np.sqrt(np.clip(base + cross, 0.0, None)) + np.sqrt(np.clip(base - cross, 0.0, None))
        k = int(np.argmax(f))
        if f.flat[k] > best:
            best = float(f.flat[k])
            best_ij = (start + k // f.shape[1], k % f.shape[1])

    i, j = best_ij
    x = [tt[i], pp[i], tt[j], pp[j]]
    fx = value(*x)
    step = np.pi / (grid_density - 1)
    while step >= refine_tol:
        moved = False
        for c in range(4):
            for d in (step, -step):
                y = list(x)
                y[c] += d
                fy = value(*y)
                if fy > fx:
                    x, fx, moved = y, fy, True
                    break
        if not moved:
            step *= 0.5
    return max(fx, best)
