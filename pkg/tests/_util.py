"""Shared random-matrix helpers for the test modules."""

import numpy as np

from polarpert.genlab import InstanceSpec, generate


def crandn(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def rank_r(rng, m, n, r, lo=0.1, hi=10.0):
    seed = int(rng.integers(2**63))
    return generate(InstanceSpec(m, n, r, lo, hi, seed))


def random_hermitian(rng, n):
    g = crandn(rng, n, n)
    return (g + g.conj().T) / 2


def np_norm(a):
    """Spectral norm from LAPACK, used as an independent oracle."""
    a = np.asarray(a)
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))


SUBSPACE_KINDS = ("equal-dim", "nested", "orthogonal", "random", "shared")


def random_subspace_pair(rng, n, kind):
    """Bases ``(bv, bw)`` of subspaces of ``C^n`` in one of a few configurations."""
    from polarpert.genlab import random_unitary

    u = random_unitary(n, rng)
    if kind == "equal-dim":
        k = int(rng.integers(1, n + 1))
        return u[:, :k], random_unitary(n, rng)[:, :k]
    if kind == "nested":
        k = int(rng.integers(1, n))
        j = int(rng.integers(k + 1, n + 1))
        pair = (u[:, :k], u[:, :j] @ random_unitary(j, rng))
        return pair if rng.random() < 0.5 else pair[::-1]
    if kind == "orthogonal":
        k = int(rng.integers(1, n))
        j = int(rng.integers(1, n - k + 1))
        return u[:, :k], u[:, k : k + j]
    if kind == "random":
        k, j = (int(x) for x in rng.integers(1, n + 1, size=2))
        return u[:, :k], random_unitary(n, rng)[:, :j]
    if kind == "shared":
        # common part plus independent random parts
        c = int(rng.integers(1, n - 1))
        k = int(rng.integers(c, n))
        j = int(rng.integers(c, n))
        rest = u[:, c:]
        x = rest @ random_unitary(n - c, rng)
        y = rest @ random_unitary(n - c, rng)
        return np.hstack([u[:, :c], x[:, : k - c]]), np.hstack([u[:, :c], y[:, : j - c]])
    raise ValueError(kind)


def small_rotation(rng, n, k, angle):
    """Subspace pair related by a unitary ``exp(angle * K)`` with ``||K|| = 1``."""
    from scipy.linalg import expm

    from polarpert.genlab import random_unitary

    g = crandn(rng, n, n)
    skew = (g - g.conj().T) / 2
    skew /= np.linalg.norm(skew, 2)
    bv = random_unitary(n, rng)[:, :k]
    return bv, expm(angle * skew) @ bv


def lapack_angular_factor(a, rcond=1e-12):
    """Angular factor from numpy's SVD, as an oracle independent of the Jacobi code."""
    u, s, vh = np.linalg.svd(a)
    r = int(np.count_nonzero(s > rcond * s[0]))
    return u[:, :r] @ vh[:r], float(s[r - 1])
