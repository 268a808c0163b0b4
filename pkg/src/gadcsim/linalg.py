"""Small dense complex linear algebra.

Every matrix in the package is a plain ``numpy.ndarray`` of dtype
``complex128``. The helpers here validate shapes and tolerances and wrap the
handful of LAPACK routines the rest of the package needs.

Tensor-product ordering: the left factor is the slow (most significant) index,
so ``tensor(a, b)[i*m + k, j*n + l] == a[i, j] * b[k, l]``.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import NumericalError, ValidationError

# Global tolerances (matrices are at most 8x8 in practice).
CHECK_TOL = 1e-10
RECON_TOL = 1e-9
EIG_FLOOR = -1e-10
PSD_FAIL = -1e-8
IMAG_TOL = 1e-8
RESIDUAL_DISCARD = 1e-8
MAX_DIM = 64


def as_matrix(m, name: str = "matrix") -> np.ndarray:
    """Return ``m`` as a 2-D complex128 array, rejecting NaN/Inf and oversize input."""
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2 or 0 in arr.shape:
        raise ValidationError(f"{name} must be a non-empty 2-D array, got shape {arr.shape}")
    if max(arr.shape) > MAX_DIM:
        raise ValidationError(f"{name} exceeds the {MAX_DIM}x{MAX_DIM} size cap")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name} contains non-finite entries")
    return arr


def _square(m, name="matrix") -> np.ndarray:
    arr = as_matrix(m, name)
    if arr.shape[0] != arr.shape[1]:
        raise ValidationError(f"{name} must be square, got shape {arr.shape}")
    return arr


def dagger(m) -> np.ndarray:
    return np.conj(np.asarray(m)).T


def hermiticity_residual(m) -> float:
    arr = np.asarray(m)
    return float(np.max(np.abs(arr - dagger(arr))))


def unitarity_residual(m) -> float:
    arr = np.asarray(m)
    return float(np.max(np.abs(dagger(arr) @ arr - np.eye(arr.shape[1]))))


def is_hermitian(m, tol: float = CHECK_TOL) -> bool:
    return hermiticity_residual(m) <= tol


def is_unitary(m, tol: float = CHECK_TOL) -> bool:
    return unitarity_residual(m) <= tol


def tensor(a, b) -> np.ndarray:
    """Kronecker product with ``a`` as the slow subsystem."""
    return np.kron(as_matrix(a, "a"), as_matrix(b, "b"))


def partial_trace_second(m, dim_first: int, dim_second: int) -> np.ndarray:
    """Trace out the second (fast) factor of a ``dim_first*dim_second`` square matrix."""
    arr = _square(m)
    if dim_first < 1 or dim_second < 1 or arr.shape[0] != dim_first * dim_second:
        raise ValidationError(
            f"cannot split a {arr.shape[0]}x{arr.shape[0]} matrix as {dim_first}x{dim_second}"
        )
    return np.einsum("iaja->ij", arr.reshape(dim_first, dim_second, dim_first, dim_second))


def hermitian_eig(m) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix.

    Returns
    -------
    eigenvalues : ndarray of float, sorted descending
    eigenvectors : ndarray, columns ordered to match ``eigenvalues``

    Raises
    ------
    ValidationError
        If ``m`` deviates from ``m^dagger`` by more than ``CHECK_TOL`` entrywise.
    """
    arr = _square(m)
    if not is_hermitian(arr):
        raise ValidationError(
            f"matrix is not Hermitian (residual {hermiticity_residual(arr):.3e})"
        )
    herm = 0.5 * (arr + dagger(arr))
    vals, vecs = np.linalg.eigh(herm)
    order = np.argsort(vals)[::-1]
    return vals[order], vecs[:, order]


def general_eigenvalues(m) -> np.ndarray:
    """Eigenvalues (complex) of an arbitrary square matrix."""
    arr = _square(m)
    try:
        return np.linalg.eigvals(arr)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigenvalue iteration failed: {exc}") from exc


def real_eigenvalues(m, imag_tol: float = IMAG_TOL) -> np.ndarray:
    """Eigenvalues of a matrix known to have a real spectrum, sorted descending.

    Imaginary parts below ``imag_tol`` are discarded; larger ones raise
    :class:`NumericalError`.
    """
    vals = general_eigenvalues(m)
    worst = float(np.max(np.abs(vals.imag))) if vals.size else 0.0
    if worst > imag_tol:
        raise NumericalError(f"eigenvalue with imaginary part {worst:.3e} > {imag_tol:g}")
    return np.sort(vals.real)[::-1]


def psd_sqrt(m) -> np.ndarray:
    """Principal square root of a Hermitian positive semidefinite matrix.

    Eigenvalues in ``[PSD_FAIL, 0)`` are treated as round-off and clamped to
    zero; anything more negative means the input was not PSD.
    """
    vals, vecs = hermitian_eig(m)
    if vals.size and vals[-1] < PSD_FAIL:
        raise ValidationError(f"matrix is not positive semidefinite (min eigenvalue {vals[-1]:.3e})")
    root = np.sqrt(np.clip(vals, 0.0, None))
    return (vecs * root) @ dagger(vecs)


def singular_values(m) -> np.ndarray:
    """Singular values, descending."""
    return np.linalg.svd(as_matrix(m), compute_uv=False)


def complete_orthonormal_basis(partial: Sequence, n: int | None = None) -> list[np.ndarray]:
    """Extend orthonormal vectors to a full orthonormal basis of C^n.

    The input vectors are returned unchanged as the leading entries. Remaining
    vectors come from standard-basis candidates ``e_0, e_1, ...`` tried in index
    order, each Gram-Schmidt projected (twice, for stability) against the
    current set and discarded when the residual norm falls below
    ``RESIDUAL_DISCARD``.

    Parameters
    ----------
    partial : sequence of 1-D arrays
        Pairwise orthonormal vectors (within ``CHECK_TOL``).
    n : int, optional
        Ambient dimension; inferred from the vectors if omitted. Required when
        ``partial`` is empty.
    """
    vecs = [np.asarray(v, dtype=np.complex128).reshape(-1) for v in partial]
    if n is None:
        if not vecs:
            raise ValidationError("dimension required when no vectors are given")
        n = vecs[0].size
    if any(v.size != n for v in vecs):
        raise ValidationError("all vectors must have length n")
    if len(vecs) > n:
        raise ValidationError("more vectors than the ambient dimension")
    if vecs:
        block = np.column_stack(vecs)
        gram = dagger(block) @ block
        dev = float(np.max(np.abs(gram - np.eye(len(vecs)))))
        if dev > CHECK_TOL:
            raise ValidationError(f"input vectors are not orthonormal (Gram deviation {dev:.3e})")

    basis = list(vecs)
    for idx in range(n):
        if len(basis) == n:
            break
        cand = np.zeros(n, dtype=np.complex128)
        cand[idx] = 1.0
        for _ in range(2):
            for b in basis:
                cand = cand - np.vdot(b, cand) * b
        norm = np.linalg.norm(cand)
        if norm < RESIDUAL_DISCARD:
            continue
        basis.append(cand / norm)
    if len(basis) != n:
        raise NumericalError("basis completion failed to reach full rank")
    return basis
