"""Subspaces of C^n as orthonormal bases: projectors, gaps, cross-projections."""

import enum
from dataclasses import dataclass

import numpy as np

from . import _jacobi
from .errors import InvalidMatrix, ShapeMismatch
from .numcore import DEFAULT_TOL, adjoint, as_matrix, identity, orthonormalize, spectral_norm

ORTHONORMAL_TOL = 1e-12


@dataclass(frozen=True)
class Subspace:
    """Subspace of ``C^ambient_dim`` spanned by the orthonormal columns of ``basis``."""

    ambient_dim: int
    basis: np.ndarray

    def __post_init__(self):
        b = as_matrix(self.basis, allow_empty=True)
        if b.shape[0] != self.ambient_dim:
            raise ShapeMismatch(f"basis has {b.shape[0]} rows, ambient dimension is {self.ambient_dim}")
        if b.shape[1] > self.ambient_dim:
            raise InvalidMatrix("more basis vectors than the ambient dimension")
        if b.shape[1] and orthonormality_defect(b) > ORTHONORMAL_TOL:
            raise InvalidMatrix("basis columns are not orthonormal")
        object.__setattr__(self, "basis", b)

    @classmethod
    def from_orthonormal(cls, basis):
        basis = np.asarray(basis)
        return cls(basis.shape[0], basis)

    @classmethod
    def span(cls, vectors, tol=DEFAULT_TOL):
        """Column space of ``vectors`` (any spanning set)."""
        vectors = as_matrix(vectors, allow_empty=True)
        return cls(vectors.shape[0], orthonormalize(vectors, tol))

    @classmethod
    def zero(cls, n):
        return cls(n, np.zeros((n, 0), dtype=np.complex128))

    @property
    def dim(self):
        return self.basis.shape[1]

    def complement(self, tol=DEFAULT_TOL):
        """Orthogonal complement, computed from ``I - P`` (never implicitly)."""
        p = identity(self.ambient_dim) - projector(self)
        # I - P has singular values 0 or 1, so a relative cut would promote
        # pure rounding noise (V = C^n) to full rank; cut at 1/2 instead.
        u, s, _, _ = _jacobi.jacobi_svd(p, tol.rank_cut_factor)
        k = int(np.count_nonzero(s > 0.5))
        return Subspace(self.ambient_dim, np.ascontiguousarray(u[:, :k]))

    def direct_sum_zero(self, extra):
        """Embed into ``C^(n + extra)`` by appending zero coordinates."""
        pad = np.zeros((extra, self.dim), dtype=np.complex128)
        return Subspace(self.ambient_dim + extra, np.vstack([self.basis, pad]))


@dataclass(frozen=True)
class GapReport:
    delta_vw: float
    delta_wv: float
    gap_hat: float
    gap_diff: float


class SurjectivityClass(enum.Enum):
    BothSurjective = "BothSurjective"
    NeitherSurjective = "NeitherSurjective"
    Mixed = "Mixed"

    @property
    def delta_zero(self):
        """Whether the class corresponds to a vanishing gap difference."""
        return self is not SurjectivityClass.Mixed


def orthonormality_defect(b):
    b = np.asarray(b)
    g = adjoint(b) @ b - np.eye(b.shape[1])
    defect = np.linalg.norm(g)
    if defect <= ORTHONORMAL_TOL:
        return defect
    return spectral_norm(g)


def _check_ambient(v, w):
    if v.ambient_dim != w.ambient_dim:
        raise ShapeMismatch(f"ambient dimensions differ: {v.ambient_dim} vs {w.ambient_dim}")


def projector(s):
    """Orthogonal projector ``basis @ basis^*``."""
    return s.basis @ adjoint(s.basis)


def directed_gap(v, w):
    """Gap from ``v`` to ``w``: ``||(I - P_W)|V||``.

    The gap from the zero subspace is 0 (empty supremum).
    """
    _check_ambient(v, w)
    if v.dim == 0:
        return 0.0
    bv = v.basis
    bw = w.basis
    resid = bv - bw @ (adjoint(bw) @ bv) if w.dim else bv
    return min(spectral_norm(resid), 1.0)


def gap_report(v, w):
    d_vw = directed_gap(v, w)
    d_wv = directed_gap(w, v)
    return GapReport(delta_vw=d_vw, delta_wv=d_wv, gap_hat=max(d_vw, d_wv), gap_diff=abs(d_vw - d_wv))


def gap(v, w):
    """Gap metric ``max(delta(V, W), delta(W, V))``."""
    return gap_report(v, w).gap_hat


def cross_blocks(v, w, tol=DEFAULT_TOL):
    """Matrices of ``P_V|W``, ``P_V|W^perp`` and ``P_{V^perp}|W`` in the stored bases.

    Returns ``(t11, t12, t21)`` with ``t11 = B_V^* B_W`` etc.
    """
    _check_ambient(v, w)
    wc = w.complement(tol)
    vc = v.complement(tol)
    t11 = adjoint(v.basis) @ w.basis
    t12 = adjoint(v.basis) @ wc.basis
    t21 = adjoint(vc.basis) @ w.basis
    return t11, t12, t21


def _cross_rank(m, ambient, tol):
    # B_V^* B_W has scale 1 and inherits the basis errors of the SVDs that produced
    # V and W (about eps * cond), so the cut is absolute and floored at residual_tol.
    if m.size == 0:
        return 0
    s = _jacobi.singular_values(m)
    cut = max(
        tol.rank_cut_factor * ambient * np.finfo(float).eps * max(float(s[0]), 1.0),
        tol.residual_tol,
    )
    return int(np.count_nonzero(s > cut))


def classify_cross_projections(v, w, tol=DEFAULT_TOL):
    """Decide which of ``P_V|W`` and ``P_W|V`` are onto.

    ``P_V|W`` is onto ``V`` iff ``rank(B_V^* B_W) = dim V``; likewise for
    ``P_W|V`` with ``dim W``.  A map into the zero space is onto; a map from
    the zero space onto a nonzero space is not.
    """
    _check_ambient(v, w)
    r = _cross_rank(adjoint(v.basis) @ w.basis, v.ambient_dim, tol)
    onto_v = r == v.dim
    onto_w = r == w.dim
    if onto_v and onto_w:
        return SurjectivityClass.BothSurjective
    if not onto_v and not onto_w:
        return SurjectivityClass.NeitherSurjective
    return SurjectivityClass.Mixed
