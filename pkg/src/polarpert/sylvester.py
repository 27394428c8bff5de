"""Sylvester equation ``X S - T X = Y`` for Hermitian ``S`` and ``T``."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import GeometryViolated, NotHermitian, ShapeMismatch, SpectraOverlap
from .numcore import DEFAULT_TOL, adjoint, as_matrix, spectral_norm
from .spectral import eigh

OVERLAP_FACTOR = 1e-12


@dataclass(frozen=True)
class SylvesterSolution:
    """Solution with its residual and the separation bound.

    ``separation`` and ``bound_value`` are ``None`` when the spectra of ``S``
    and ``T`` are disjoint but not separated by a disc around ``sigma(T)``.
    """

    x: np.ndarray
    residual: float
    separation: Optional[float]
    bound_value: Optional[float]

    def bound_holds(self, slack=1e-10):
        if self.bound_value is None:
            return None
        return spectral_norm(self.x) <= self.bound_value * (1 + slack)


def _hermitian_eigvals(a, name, tol):
    try:
        return eigh(a, tol)
    except NotHermitian:
        raise NotHermitian(f"{name} must be Hermitian") from None


def _separation_from_spectra(ls, lt):
    a = (lt.min() + lt.max()) / 2
    r = (lt.max() - lt.min()) / 2
    return float(np.min(np.abs(ls - a)) - r)


def separation_bound(s, t, tol=DEFAULT_TOL):
    """Distance ``delta`` between ``sigma(S)`` and the smallest interval disc around ``sigma(T)``.

    With ``a`` the midpoint and ``r`` the half-width of ``[min sigma(T), max sigma(T)]``,
    returns ``min |lambda - a| - r`` over ``lambda`` in ``sigma(S)``.

    Raises
    ------
    GeometryViolated
        If that quantity is not positive.
    """
    ls = _hermitian_eigvals(as_matrix(s), "s", tol).eigvals
    lt = _hermitian_eigvals(as_matrix(t), "t", tol).eigvals
    delta = _separation_from_spectra(ls, lt)
    if delta <= 0:
        raise GeometryViolated(f"sigma(S) meets the disc around sigma(T) (delta = {delta:.3g})")
    return delta


def solve_sylvester(s, t, y, tol=DEFAULT_TOL):
    """Solve ``X S - T X = Y`` by diagonalising both coefficients.

    Parameters
    ----------
    s : (n, n) Hermitian, acts on the right
    t : (m, m) Hermitian, acts on the left
    y : (m, n)

    Raises
    ------
    NotHermitian, ShapeMismatch
    SpectraOverlap
        If some ``|lambda_S - lambda_T| <= 1e-12 * max(||S||, ||T||, 1)``.
    """
    s = as_matrix(s)
    t = as_matrix(t)
    y = as_matrix(y)
    if y.shape != (t.shape[0], s.shape[0]):
        raise ShapeMismatch(f"y must be {t.shape[0]}x{s.shape[0]}, got {y.shape}")
    es = _hermitian_eigvals(s, "s", tol)
    et = _hermitian_eigvals(t, "t", tol)

    denom = es.eigvals[None, :] - et.eigvals[:, None]
    scale = max(np.abs(es.eigvals).max(), np.abs(et.eigvals).max(), 1.0)
    if np.min(np.abs(denom)) <= OVERLAP_FACTOR * scale:
        raise SpectraOverlap("spectra of S and T intersect; the solution is not unique")

    yt = adjoint(et.q) @ y @ es.q
    x = et.q @ (yt / denom) @ adjoint(es.q)
    residual = spectral_norm(x @ s - t @ x - y)

    delta = _separation_from_spectra(es.eigvals, et.eigvals)
    if delta > 0:
        separation, bound = delta, spectral_norm(y) / delta
    else:
        separation, bound = None, None
    return SylvesterSolution(x=x, residual=residual, separation=separation, bound_value=bound)
