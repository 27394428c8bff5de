"""One-sided (Hestenes) Jacobi SVD for dense complex matrices.

The input is implicitly transposed so that rows >= cols; column pairs are
then rotated until they are mutually orthogonal.  Singular values come out
as column norms, which gives small singular values to high relative
accuracy.  The sweep kernel is compiled with numba.
"""

import math

import numba
import numpy as np

from .errors import ConvergenceError

MAX_SWEEPS = 60
ORTH_TOL = 1e-14


@numba.njit(cache=True)
def _sweeps(a, v, accumulate, tol, max_sweeps):
    """Rotate columns of ``a`` (and ``v``) in place. Returns sweeps used, -1 on cap."""
    m, n = a.shape
    nv = v.shape[0]
    frob2 = 0.0
    for j in range(n):
        for i in range(m):
            frob2 += a[i, j].real ** 2 + a[i, j].imag ** 2
    # columns below eps * ||A||_F are rounding noise; rotating them never converges
    tiny2 = (2.220446049250313e-16) ** 2 * frob2
    for sweep in range(max_sweeps):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                alpha = 0.0
                beta = 0.0
                g = 0j
                for i in range(m):
                    ap = a[i, p]
                    aq = a[i, q]
                    alpha += ap.real * ap.real + ap.imag * ap.imag
                    beta += aq.real * aq.real + aq.imag * aq.imag
                    g += ap.conjugate() * aq
                if alpha <= tiny2 or beta <= tiny2:
                    continue
                absg = abs(g)
                if absg == 0.0 or absg <= tol * math.sqrt(alpha) * math.sqrt(beta):
                    continue
                rotated = True
                zeta = (beta - alpha) / (2.0 * absg)
                t = math.copysign(1.0, zeta) / (abs(zeta) + math.hypot(1.0, zeta))
                c = 1.0 / math.hypot(1.0, t)
                s = c * t
                # phase makes <a_p, ph* a_q> real and positive
                phc = (g / absg).conjugate()
                for i in range(m):
                    ap = a[i, p]
                    aq = a[i, q] * phc
                    a[i, p] = c * ap - s * aq
                    a[i, q] = s * ap + c * aq
                if accumulate:
                    for i in range(nv):
                        vp = v[i, p]
                        vq = v[i, q] * phc
                        v[i, p] = c * vp - s * vq
                        v[i, q] = s * vp + c * vq
        if not rotated:
            return sweep + 1
    return -1


def rank_cut(singvals, shape, factor):
    """Threshold below which a singular value counts as zero."""
    if len(singvals) == 0:
        return 0.0
    return factor * max(shape) * np.finfo(float).eps * float(singvals[0])


def singular_values(a):
    """Singular values of ``a`` in descending order (no vectors)."""
    a = np.asarray(a, dtype=np.complex128)
    if a.shape[0] < a.shape[1]:
        a = a.conj().T
    work = np.array(a, dtype=np.complex128, order="F")
    if work.size == 0:
        return np.zeros(0)
    dummy = np.zeros((1, 1), dtype=np.complex128, order="F")
    if _sweeps(work, dummy, False, ORTH_TOL, MAX_SWEEPS) < 0:
        raise ConvergenceError(f"Jacobi SVD did not converge in {MAX_SWEEPS} sweeps")
    return np.sort(np.linalg.norm(work, axis=0))[::-1]


def _complete_basis(u_r, m):
    r = u_r.shape[1]
    if r == m:
        return u_r
    if r == 0:
        return np.eye(m, dtype=np.complex128)
    q, _ = np.linalg.qr(u_r, mode="complete")
    return np.hstack([u_r, q[:, r:]])


def jacobi_svd(a, cut_factor=1.0):
    """Full SVD ``a = u @ diag(s) @ v^*`` by one-sided Jacobi.

    Parameters
    ----------
    a : (m, n) array_like
    cut_factor : float
        Rank cut multiplier; singular values at or below
        ``cut_factor * max(m, n) * eps * s[0]`` are treated as zero.

    Returns
    -------
    u : (m, m) unitary
    s : (min(m, n),) descending
    v : (n, n) unitary
    rank : int
    """
    a = np.asarray(a, dtype=np.complex128)
    m, n = a.shape
    transposed = m < n
    if transposed:
        a = a.conj().T
    mm, nn = a.shape
    work = np.array(a, order="F")
    v = np.eye(nn, dtype=np.complex128, order="F")
    if _sweeps(work, v, True, ORTH_TOL, MAX_SWEEPS) < 0:
        raise ConvergenceError(f"Jacobi SVD did not converge in {MAX_SWEEPS} sweeps")

    norms = np.linalg.norm(work, axis=0)
    order = np.argsort(-norms, kind="stable")
    s = norms[order]
    work = work[:, order]
    v = np.ascontiguousarray(v[:, order])
    cut = rank_cut(s, (m, n), cut_factor)
    rank = int(np.count_nonzero(s > cut))
    u = _complete_basis(work[:, :rank] / s[:rank], mm)

    if transposed:
        u, v = v, u
    return u, s, v, rank
