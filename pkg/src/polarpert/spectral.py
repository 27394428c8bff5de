"""SVD, Hermitian eigendecomposition, rank, reduced minimum modulus, pseudoinverse."""

from dataclasses import dataclass

import numpy as np

from . import _jacobi
from .errors import NotHermitian, ZeroOperator
from .numcore import DEFAULT_TOL, adjoint, as_matrix, spectral_norm


@dataclass(frozen=True)
class SvdResult:
    """``a = u @ diag(singvals) @ v^*`` with full unitary ``u`` and ``v``."""

    u: np.ndarray
    singvals: np.ndarray
    v: np.ndarray
    rank: int

    @property
    def shape(self):
        return (self.u.shape[0], self.v.shape[0])

    def sigma_matrix(self):
        m, n = self.shape
        out = np.zeros((m, n), dtype=np.complex128)
        k = len(self.singvals)
        out[:k, :k] = np.diag(self.singvals)
        return out

    def reconstruct(self):
        return self.u @ self.sigma_matrix() @ adjoint(self.v)

    # Orthonormal bases of the four fundamental subspaces.
    def range_basis(self):
        return self.u[:, : self.rank]

    def cokernel_basis(self):
        return self.u[:, self.rank :]

    def corange_basis(self):
        return self.v[:, : self.rank]

    def kernel_basis(self):
        return self.v[:, self.rank :]


@dataclass(frozen=True)
class EighResult:
    q: np.ndarray
    eigvals: np.ndarray

    def reconstruct(self):
        return (self.q * self.eigvals) @ adjoint(self.q)


def svd(a, tol=DEFAULT_TOL):
    """Singular value decomposition by one-sided Jacobi.

    Raises
    ------
    ConvergenceError
        If the sweep cap (60) is hit.
    """
    a = as_matrix(a)
    u, s, v, rank = _jacobi.jacobi_svd(a, tol.rank_cut_factor)
    return SvdResult(u=u, singvals=s, v=v, rank=rank)


def numerical_rank(a, tol=DEFAULT_TOL):
    a = as_matrix(a, allow_empty=True)
    if a.size == 0:
        return 0
    s = _jacobi.singular_values(a)
    return int(np.count_nonzero(s > _jacobi.rank_cut(s, a.shape, tol.rank_cut_factor)))


def is_hermitian(a, tol=DEFAULT_TOL):
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        return False
    return spectral_norm(a - adjoint(a)) <= tol.residual_tol * spectral_norm(a)


def eigh(a, tol=DEFAULT_TOL):
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending."""
    a = as_matrix(a)
    if not is_hermitian(a, tol):
        raise NotHermitian("eigh requires a Hermitian matrix")
    h = (a + adjoint(a)) / 2
    w, q = np.linalg.eigh(h)
    return EighResult(q=q, eigvals=w)


def reduced_min_modulus(a, tol=DEFAULT_TOL):
    """Smallest singular value above the rank cut.

    Equals the infimum of the nonzero spectrum of ``|A|`` and
    ``1 / ||pinv(A)||``.
    """
    a = as_matrix(a)
    s = _jacobi.singular_values(a)
    rank = int(np.count_nonzero(s > _jacobi.rank_cut(s, a.shape, tol.rank_cut_factor)))
    if rank == 0:
        raise ZeroOperator("reduced minimum modulus is undefined for the zero operator")
    return float(s[rank - 1])


def pinv(a, tol=DEFAULT_TOL):
    """Moore-Penrose inverse; singular values below the rank cut are dropped."""
    a = as_matrix(a)
    res = svd(a, tol)
    r = res.rank
    if r == 0:
        return np.zeros(a.shape[::-1], dtype=np.complex128)
    return (res.v[:, :r] / res.singvals[:r]) @ adjoint(res.u[:, :r])
