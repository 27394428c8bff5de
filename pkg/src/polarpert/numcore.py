"""Dense complex matrices, basic arithmetic and the tolerance policy.

A "matrix" throughout the package is a 2-D ``numpy.ndarray`` of dtype
``complex128`` with finite entries.  :func:`as_matrix` is the single entry
point that validates and converts user input.
"""

from dataclasses import dataclass

import numpy as np

from . import _jacobi
from .errors import InvalidMatrix, ShapeMismatch


@dataclass(frozen=True)
class TolerancePolicy:
    """Numerical tolerances used for rank decisions and verdicts.

    Attributes
    ----------
    rank_cut_factor : float
        A singular value ``s`` counts as nonzero iff
        ``s > rank_cut_factor * max(rows, cols) * eps * s_max``.
    bound_slack : float
        Multiplicative slack on every "bound holds" verdict.
    residual_tol : float
        Tolerance for Hermitian checks and equation residuals.
    """

    rank_cut_factor: float = 1.0
    bound_slack: float = 1e-8
    residual_tol: float = 1e-10

    def __post_init__(self):
        for name in ("rank_cut_factor", "bound_slack", "residual_tol"):
            value = getattr(self, name)
            if not np.isfinite(value) or value < 0:
                raise ValueError(f"{name} must be a finite nonnegative number, got {value!r}")


DEFAULT_TOL = TolerancePolicy()


def as_matrix(a, allow_empty=False):
    """Validate ``a`` and return it as a 2-D complex128 array.

    Zero-column (or zero-row) matrices are accepted only with
    ``allow_empty=True``; they serve as bases of the zero subspace.
    """
    arr = np.asarray(a)
    if arr.ndim != 2:
        raise InvalidMatrix(f"expected a 2-D array, got ndim={arr.ndim}")
    if not np.issubdtype(arr.dtype, np.number):
        raise InvalidMatrix(f"non-numeric dtype {arr.dtype}")
    arr = arr.astype(np.complex128, copy=False)
    if not allow_empty and 0 in arr.shape:
        raise InvalidMatrix(f"matrix has an empty dimension: {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidMatrix("matrix has non-finite entries")
    return arr


def adjoint(a):
    """Conjugate transpose."""
    return np.conj(np.asarray(a)).T


def matmul(a, b):
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape[1] != b.shape[0]:
        raise ShapeMismatch(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def spectral_norm(a):
    """Largest singular value (operator 2-norm); 0 for empty or zero input."""
    a = np.asarray(a, dtype=np.complex128)
    if a.size == 0:
        return 0.0
    s = _jacobi.singular_values(a)
    return float(s[0])


def frobenius_norm(a):
    return float(np.linalg.norm(np.asarray(a)))


def orthonormalize(a, tol=DEFAULT_TOL):
    """Orthonormal basis of the column space of ``a``.

    Returns an ``(rows, r)`` matrix where ``r`` is the numerical rank of
    ``a``; ``r`` may be zero.
    """
    a = as_matrix(a, allow_empty=True)
    m, n = a.shape
    if n == 0 or m == 0:
        return np.zeros((m, 0), dtype=np.complex128)
    u, _, _, rank = _jacobi.jacobi_svd(a, tol.rank_cut_factor)
    return np.ascontiguousarray(u[:, :rank])


def identity(n):
    return np.eye(n, dtype=np.complex128)
