import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from numpy.testing import assert_allclose

from _util import SUBSPACE_KINDS, crandn, np_norm, random_subspace_pair, small_rotation
from polarpert import InvalidMatrix, ShapeMismatch
from polarpert.subspace import (
    Subspace,
    SurjectivityClass,
    classify_cross_projections,
    cross_blocks,
    directed_gap,
    gap_report,
    projector,
)

seeds = st.integers(0, 2**32 - 1)
E = np.eye(3)


def sub(*cols):
    return Subspace.span(np.column_stack(cols))


def test_projector_examples(rng):
    assert_allclose(projector(sub(np.array([1.0, 0.0]))), [[1, 0], [0, 0]])
    z = projector(Subspace.zero(3))
    assert z.shape == (3, 3) and not z.any()
    p = projector(Subspace.span(crandn(rng, 5, 2)))
    assert np_norm(p @ p - p) <= 1e-12
    assert np_norm(p - p.conj().T) <= 1e-12


def test_subspace_rejects_bad_bases():
    with pytest.raises(InvalidMatrix):
        Subspace(2, np.array([[1.0], [1.0]]))
    with pytest.raises(ShapeMismatch):
        Subspace(3, np.eye(2))


def test_directed_gap_examples():
    v = sub(E[:, 0])
    assert directed_gap(v, v) == pytest.approx(0, abs=1e-15)
    c, s = math.cos(math.pi / 6), math.sin(math.pi / 6)
    w = sub(np.array([c, s]))
    assert directed_gap(sub(np.array([1.0, 0.0])), w) == pytest.approx(0.5, abs=1e-14)
    assert directed_gap(v, sub(E[:, 1], E[:, 2])) == pytest.approx(1.0, abs=1e-15)


def test_zero_subspace_gap_conventions():
    z, w = Subspace.zero(3), sub(E[:, 0])
    assert directed_gap(z, w) == 0.0
    assert directed_gap(w, z) == 1.0


def test_gap_report_examples():
    r = gap_report(sub(E[:, 0]), sub(E[:, 1], E[:, 2]))
    assert (r.delta_vw, r.delta_wv, r.gap_hat, r.gap_diff) == pytest.approx((1, 1, 1, 0), abs=1e-15)
    i2 = np.eye(2)
    r = gap_report(sub(i2[:, 0]), Subspace.from_orthonormal(i2))
    assert (r.delta_vw, r.delta_wv, r.gap_diff) == pytest.approx((0, 1, 1), abs=1e-15)


def test_gap_hat_is_projector_difference(rng):
    v = Subspace.span(crandn(rng, 6, 2))
    w = Subspace.span(crandn(rng, 6, 3))
    assert abs(gap_report(v, w).gap_hat - np_norm(projector(v) - projector(w))) <= 1e-10


def test_classify_examples(rng):
    bv, bw = small_rotation(rng, 5, 2, 0.3)
    v, w = Subspace.span(bv), Subspace.span(bw)
    assert gap_report(v, w).gap_hat < 1
    assert classify_cross_projections(v, w) is SurjectivityClass.BothSurjective
    i2 = np.eye(2)
    assert classify_cross_projections(sub(i2[:, 0]), Subspace.from_orthonormal(i2)) is SurjectivityClass.Mixed
    assert (
        classify_cross_projections(sub(E[:, 0]), sub(E[:, 1], E[:, 2]))
        is SurjectivityClass.NeitherSurjective
    )


def test_complement(rng):
    v = Subspace.span(crandn(rng, 5, 2))
    c = v.complement()
    assert c.dim == 3
    assert np_norm(v.basis.conj().T @ c.basis) <= 1e-12
    assert Subspace.zero(4).complement().dim == 4


@given(seeds, st.sampled_from(SUBSPACE_KINDS))
def test_complement_gap_swaps_direction(seed, kind):
    bv, bw = random_subspace_pair(np.random.default_rng(seed), 6, kind)
    v, w = Subspace.span(bv), Subspace.span(bw)
    assert abs(directed_gap(v.complement(), w.complement()) - directed_gap(w, v)) <= 1e-10


@given(seeds, st.integers(2, 8), st.floats(0.0, 0.7))
def test_gap_below_one_is_symmetric(seed, n, angle):
    rng = np.random.default_rng(seed)
    k = int(rng.integers(1, n))
    v, w = (Subspace.span(b) for b in small_rotation(rng, n, k, angle))
    r = gap_report(v, w)
    assert r.gap_hat < 1
    assert r.gap_diff <= 1e-10


@given(seeds, st.sampled_from(SUBSPACE_KINDS))
def test_gap_difference_matches_surjectivity(seed, kind):
    bv, bw = random_subspace_pair(np.random.default_rng(seed), 6, kind)
    v, w = Subspace.span(bv), Subspace.span(bw)
    small = gap_report(v, w).gap_diff <= 1e-8
    assert small == classify_cross_projections(v, w).delta_zero


@given(seeds, st.integers(1, 8))
def test_equal_dimension_gives_zero_difference(seed, n):
    rng = np.random.default_rng(seed)
    k = int(rng.integers(1, n + 1))
    v = Subspace.span(crandn(rng, n, k))
    w = Subspace.span(crandn(rng, n, k))
    assert gap_report(v, w).gap_diff <= 1e-8


@given(seeds, st.sampled_from(SUBSPACE_KINDS))
def test_block_norm_identity(seed, kind):
    bv, bw = random_subspace_pair(np.random.default_rng(seed), 6, kind)
    v, w = Subspace.span(bv), Subspace.span(bw)
    t11, t12, _ = cross_blocks(v, w)
    lhs = np_norm(t12) ** 2
    rhs = 1 - np.linalg.eigvalsh(t11 @ t11.conj().T).min()
    assert abs(lhs - rhs) <= 1e-8
