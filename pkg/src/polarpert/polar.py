"""Polar decomposition ``A = Q|A|`` with the angular factor ``Q``.

``Q`` is the unique partial isometry with ``N(Q) = N(A)``.  It is built from
the singular triplets above the rank cut, so directions below the cut land in
the kernel of ``Q`` by construction.
"""

from dataclasses import dataclass

import numpy as np

from .errors import NotIndexZero, ZeroOperator
from .numcore import DEFAULT_TOL, adjoint, as_matrix, orthonormalize, spectral_norm
from .spectral import SvdResult, svd
from .subspace import Subspace, gap_report

# Agreement tolerance for projector identities and angular-factor comparisons.
IDENTITY_TOL = 1e-8


@dataclass(frozen=True)
class PolarResult:
    """Angular factor ``q``, modulus ``h = |A|``, reduced minimum modulus, rank.

    The SVD the factors were built from is kept so that range and kernel
    bases stay consistent with ``q``.
    """

    q: np.ndarray
    h: np.ndarray
    sigma: float
    rank: int
    svd: SvdResult

    def kernel_projector(self):
        k = self.svd.kernel_basis()
        return k @ adjoint(k)

    def corange_projector(self):
        """Projector onto ``N(A)^perp``."""
        c = self.svd.corange_basis()
        return c @ adjoint(c)

    def range_projector(self):
        r = self.svd.range_basis()
        return r @ adjoint(r)

    def range(self):
        return Subspace.from_orthonormal(self.svd.range_basis())

    def kernel(self):
        return Subspace.from_orthonormal(self.svd.kernel_basis())


@dataclass(frozen=True)
class UnitaryExtension:
    u: np.ndarray
    q: np.ndarray


def polar_decompose(a, tol=DEFAULT_TOL):
    """Polar decomposition of a nonzero matrix.

    Parameters
    ----------
    a : (m, n) array_like
    tol : TolerancePolicy

    Returns
    -------
    PolarResult

    Raises
    ------
    ZeroOperator
        If ``a`` has numerical rank 0.
    """
    a = as_matrix(a)
    res = svd(a, tol)
    r = res.rank
    if r == 0:
        raise ZeroOperator("polar decomposition needs a nonzero operator")
    q = res.u[:, :r] @ adjoint(res.v[:, :r])
    n = a.shape[1]
    s_full = np.zeros(n)
    s_full[: len(res.singvals)] = res.singvals
    h = (res.v * s_full) @ adjoint(res.v)
    return PolarResult(q=q, h=h, sigma=float(res.singvals[r - 1]), rank=r, svd=res)


def angular_factor(a, tol=DEFAULT_TOL):
    return polar_decompose(a, tol).q


def is_partial_isometry(q, atol=1e-10):
    q = np.asarray(q)
    return spectral_norm(q @ adjoint(q) @ q - q) <= atol


def angular_factor_adjoint_check(a, tol=DEFAULT_TOL):
    """Check that ``Q*`` is the angular factor of ``A*`` and ``R(Q) = R(A)``.

    Both factors come from independent decompositions of ``a`` and
    ``adjoint(a)``; the ranges are compared through fresh bases.
    """
    a = as_matrix(a)
    q = polar_decompose(a, tol).q
    q_adj = polar_decompose(adjoint(a), tol).q
    adjoint_ok = spectral_norm(q_adj - adjoint(q)) <= IDENTITY_TOL
    rq = Subspace(a.shape[0], orthonormalize(q, tol))
    ra = Subspace(a.shape[0], orthonormalize(a, tol))
    range_ok = gap_report(rq, ra).gap_hat <= IDENTITY_TOL
    return bool(adjoint_ok and range_ok)


def unitary_extension(a, tol=DEFAULT_TOL, polar=None):
    """Unitary ``U = Q P_{N(A)^perp} + W P_{N(A)}`` for a square matrix.

    ``W`` maps the i-th kernel basis vector to the i-th basis vector of
    ``R(A)^perp``.  In the SVD basis this reduces to ``U = u @ v^*``.
    """
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise NotIndexZero(f"unitary extension needs index zero, got shape {a.shape}")
    pr = polar if polar is not None else polar_decompose(a, tol)
    kernel = pr.svd.kernel_basis()
    cokernel = pr.svd.cokernel_basis()
    w = cokernel @ adjoint(kernel)
    u = pr.q @ pr.corange_projector() + w @ pr.kernel_projector()
    return UnitaryExtension(u=u, q=pr.q)


def dilate_to_index_zero(a):
    """Zero-pad ``a`` to a square matrix.

    Tall matrices get extra zero columns (``[A, 0]``), wide matrices get
    extra zero rows (the adjoint of the same construction).
    """
    a = as_matrix(a)
    m, n = a.shape
    if m > n:
        return np.hstack([a, np.zeros((m, m - n), dtype=np.complex128)])
    if n > m:
        return np.vstack([a, np.zeros((n - m, n), dtype=np.complex128)])
    return a
