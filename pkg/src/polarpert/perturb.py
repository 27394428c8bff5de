"""Perturbation bounds for the angular factor of the polar decomposition.

For nonzero ``A1, A2`` of the same shape with angular factors ``Q1, Q2``
and reduced minimum moduli ``s1, s2``, with ``d = ||A1 - A2||``:

* main bound      ``||Q1 - Q2|| <= 4 d / (s1 + s2)``, when the indices agree
  and the gap difference of the ranges or of the kernels vanishes;
* improved bound  ``(1 + sqrt(1 + (s1^2 + s2^2) / max(s1, s2)^2)) d / (s1 + s2)``
  under the same hypothesis;
* closed-range bound ``(3 / (s1 + s2) + 1 / min(s1, s2)) d``, unconditional;
* gap bound ``5 d / (s1 + s2)`` when the range gap or the kernel gap is < 1.

Besides the certificates this module replays the intermediate estimates of
the arguments behind the first and third bounds on concrete matrices.
"""

import math
from dataclasses import asdict, dataclass, fields
from typing import List, Optional, Tuple

import numpy as np

from .errors import AmbiguousHypothesis, NotApplicable, ShapeMismatch
from .numcore import DEFAULT_TOL, adjoint, as_matrix, identity, spectral_norm
from .polar import PolarResult, dilate_to_index_zero, polar_decompose, unitary_extension
from .spectral import pinv
from .subspace import GapReport, classify_cross_projections, gap_report
from .sylvester import solve_sylvester

DELTA_ZERO_TOL = 1e-8
GAP_MARGIN = 1e-8
VANISH_TOL = 1e-10


@dataclass(frozen=True)
class Hypotheses:
    same_shape: bool
    index_equal: bool
    rank1: int
    rank2: int
    delta_range_zero: bool
    delta_kernel_zero: bool
    gap_range_lt1: bool
    gap_kernel_lt1: bool


@dataclass(frozen=True)
class Certificate:
    sigma1: float
    sigma2: float
    dist: float
    qdist: float
    bound_main: float
    bound_improved: float
    bound_cr_plain: float
    bound_cr_gap: Optional[float]
    hyp: Hypotheses
    main_applicable: bool
    cr_gap_applicable: bool
    main_holds: Optional[bool]
    improved_holds: Optional[bool]
    cr_plain_holds: bool
    cr_gap_holds: Optional[bool]

    def to_dict(self):
        """Flat dict: hypothesis fields are inlined next to the bound fields."""
        out = {f.name: getattr(self, f.name) for f in fields(self) if f.name != "hyp"}
        out.update(asdict(self.hyp))
        return out

    def failed_bounds(self):
        """Names of applicable bounds that were violated."""
        names = ("main", "improved", "cr_plain", "cr_gap")
        return [n for n in names if getattr(self, f"{n}_holds") is False]


@dataclass(frozen=True)
class MainTrace:
    """Intermediate quantities of the main-bound argument (index zero, range branch).

    ``summands`` are the norms of the four terms whose sum is ``X D1 + D2 X``;
    each is at most ``dist``.
    """

    sigma1: float
    sigma2: float
    dist: float
    swapped: bool
    dilated: bool
    summands: Tuple[float, float, float, float]
    x_norm: float
    qdist: float
    lhs_norm: float
    decomposition_residual: float
    sylvester_solution_error: float
    summands_hold: Tuple[bool, bool, bool, bool]
    sylvester_holds: bool

    @property
    def ok(self):
        return all(self.summands_hold) and self.sylvester_holds


@dataclass(frozen=True)
class CrTrace:
    """Intermediate quantities of the closed-range bound argument."""

    sigma1: float
    sigma2: float
    dist: float
    swapped: bool
    x_norm: float
    first_term: float
    second_term: float
    vanishing_term: float
    kernel_term: float
    leak_norm: float
    range_gap: float
    qdist: float
    decomposition_residual: float
    checks: dict

    @property
    def ok(self):
        return all(self.checks.values())


@dataclass(frozen=True)
class SmallPertReport:
    applies: bool
    gap_lt1: bool
    wedin_holds: Optional[bool]
    dist: float
    sigma1: float
    sigma2: float
    range_gap: float
    pinv_dist: Optional[float]
    wedin_bound: Optional[float]


def _pair(a1, a2, tol):
    a1 = as_matrix(a1)
    a2 = as_matrix(a2)
    if a1.shape != a2.shape:
        raise ShapeMismatch(f"shapes differ: {a1.shape} vs {a2.shape}")
    return a1, a2, polar_decompose(a1, tol), polar_decompose(a2, tol)


def _delta_zero(report: GapReport, cls):
    by_gap = report.gap_diff <= DELTA_ZERO_TOL
    if by_gap != cls.delta_zero:
        raise AmbiguousHypothesis(
            f"gap difference {report.gap_diff:.3g} disagrees with cross-projection class {cls.value}"
        )
    return by_gap


def _hypotheses(a1, a2, p1: PolarResult, p2: PolarResult, tol):
    r1, r2 = p1.range(), p2.range()
    k1, k2 = p1.kernel(), p2.kernel()
    range_rep = gap_report(r1, r2)
    kernel_rep = gap_report(k1, k2)
    hyp = Hypotheses(
        same_shape=a1.shape == a2.shape,
        index_equal=(a1.shape[1] - a1.shape[0]) == (a2.shape[1] - a2.shape[0]),
        rank1=p1.rank,
        rank2=p2.rank,
        delta_range_zero=_delta_zero(range_rep, classify_cross_projections(r1, r2, tol)),
        delta_kernel_zero=_delta_zero(kernel_rep, classify_cross_projections(k1, k2, tol)),
        gap_range_lt1=range_rep.gap_hat < 1 - GAP_MARGIN,
        gap_kernel_lt1=kernel_rep.gap_hat < 1 - GAP_MARGIN,
    )
    return hyp, range_rep, kernel_rep


def check_hypotheses(a1, a2, tol=DEFAULT_TOL):
    """Evaluate the index, gap-difference and gap hypotheses for a pair.

    Raises
    ------
    ShapeMismatch, ZeroOperator
    AmbiguousHypothesis
        If the gap difference and the surjectivity classification disagree.
    """
    a1, a2, p1, p2 = _pair(a1, a2, tol)
    return _hypotheses(a1, a2, p1, p2, tol)[0]


def main_applicable(hyp: Hypotheses):
    return hyp.index_equal and (hyp.delta_range_zero or hyp.delta_kernel_zero)


def improved_constant(sigma1, sigma2):
    smax = max(sigma1, sigma2)
    return 1 + math.sqrt(1 + (sigma1**2 + sigma2**2) / smax**2)


def _holds(value, bound, slack, floor=0.0):
    return bool(value <= bound * (1 + slack) + floor)


def _rounding_floor(*mats):
    # absolute allowance for traced terms that vanish exactly in real arithmetic
    return 64 * np.finfo(float).eps * max(max(spectral_norm(m) for m in mats), 1.0)


def certify(a1, a2, tol=DEFAULT_TOL):
    """Evaluate every perturbation bound for the pair and whether it holds.

    A ``*_holds`` field is ``None`` when the corresponding bound is not
    applicable to the pair.
    """
    a1, a2, p1, p2 = _pair(a1, a2, tol)
    hyp = _hypotheses(a1, a2, p1, p2, tol)[0]
    s1, s2 = p1.sigma, p2.sigma
    dist = spectral_norm(a1 - a2)
    qdist = spectral_norm(p1.q - p2.q)
    slack = tol.bound_slack

    bound_main = 4 * dist / (s1 + s2)
    bound_improved = improved_constant(s1, s2) * dist / (s1 + s2)
    bound_cr_plain = dist * (3 / (s1 + s2) + 1 / min(s1, s2))
    cr_gap_applicable = hyp.gap_range_lt1 or hyp.gap_kernel_lt1
    bound_cr_gap = 5 * dist / (s1 + s2) if cr_gap_applicable else None
    applicable = main_applicable(hyp)

    return Certificate(
        sigma1=s1,
        sigma2=s2,
        dist=dist,
        qdist=qdist,
        bound_main=bound_main,
        bound_improved=bound_improved,
        bound_cr_plain=bound_cr_plain,
        bound_cr_gap=bound_cr_gap,
        hyp=hyp,
        main_applicable=applicable,
        cr_gap_applicable=cr_gap_applicable,
        main_holds=_holds(qdist, bound_main, slack) if applicable else None,
        improved_holds=_holds(qdist, bound_improved, slack) if applicable else None,
        cr_plain_holds=_holds(qdist, bound_cr_plain, slack),
        cr_gap_holds=_holds(qdist, bound_cr_gap, slack) if cr_gap_applicable else None,
    )


def proof_trace_main(a1, a2, tol=DEFAULT_TOL):
    """Replay the main-bound argument on a pair with vanishing range gap difference.

    Non-square inputs are first zero-padded to index zero (this keeps ranges,
    and hence the hypothesis, unchanged).  Inputs are swapped internally so
    that ``sigma1 <= sigma2``.  For the kernel branch pass the adjoints.

    Raises
    ------
    NotApplicable
        If the range gap difference does not vanish.
    """
    a1, a2 = as_matrix(a1), as_matrix(a2)
    if a1.shape != a2.shape:
        raise ShapeMismatch(f"shapes differ: {a1.shape} vs {a2.shape}")
    dilated = a1.shape[0] != a1.shape[1]
    if dilated:
        a1, a2 = dilate_to_index_zero(a1), dilate_to_index_zero(a2)
    a1, a2, p1, p2 = _pair(a1, a2, tol)
    hyp = _hypotheses(a1, a2, p1, p2, tol)[0]
    if not hyp.delta_range_zero:
        raise NotApplicable("range gap difference does not vanish")
    swapped = p1.sigma > p2.sigma
    if swapped:
        a1, a2, p1, p2 = a2, a1, p2, p1

    s1, s2 = p1.sigma, p2.sigma
    slack = tol.bound_slack
    floor = _rounding_floor(a1, a2)
    dist = spectral_norm(a1 - a2)
    u1 = unitary_extension(a1, tol, polar=p1).u
    u2 = unitary_extension(a2, tol, polar=p2).u
    pk1, pk2 = p1.kernel_projector(), p2.kernel_projector()
    pc2 = p2.corange_projector()
    h1, h2 = p1.h, p2.h
    d1 = h1 + s1 * pk1
    d2 = h2 + s2 * pk2

    x = adjoint(u2) @ p1.q - pc2
    lhs = x @ d1 + d2 @ x
    terms = (
        adjoint(u2) @ p1.q @ h1 - h2,
        h2 @ adjoint(u2) @ p1.q - pc2 @ h1,
        -s1 * pc2 @ pk1,
        s2 * pk2 @ adjoint(u2) @ u1 @ p1.corange_projector(),
    )
    norms = tuple(spectral_norm(t) for t in terms)
    x_norm = spectral_norm(x)
    lhs_norm = spectral_norm(lhs)
    # X solves X D1 - (-D2) X = lhs; re-solve independently.
    solved = solve_sylvester(d1, -d2, lhs, tol)
    return MainTrace(
        sigma1=s1,
        sigma2=s2,
        dist=dist,
        swapped=swapped,
        dilated=dilated,
        summands=norms,
        x_norm=x_norm,
        qdist=spectral_norm(p1.q - p2.q),
        lhs_norm=lhs_norm,
        decomposition_residual=spectral_norm(lhs - sum(terms)),
        sylvester_solution_error=spectral_norm(solved.x - x),
        summands_hold=tuple(_holds(n, dist, slack, floor) for n in norms),
        sylvester_holds=_holds(x_norm, lhs_norm / (s1 + s2), slack, floor / (s1 + s2)),
    )


def proof_trace_cr(a1, a2, tol=DEFAULT_TOL):
    """Replay the closed-range bound argument.

    Inputs are swapped internally so that ``sigma1 <= sigma2``.
    """
    a1, a2, p1, p2 = _pair(a1, a2, tol)
    swapped = p1.sigma > p2.sigma
    if swapped:
        a1, a2, p1, p2 = a2, a1, p2, p1
    s1, s2 = p1.sigma, p2.sigma
    slack = tol.bound_slack
    floor = _rounding_floor(a1, a2)
    dist = spectral_norm(a1 - a2)
    q1, q2 = p1.q, p2.q
    h1, h2 = p1.h, p2.h
    pk1, pk2 = p1.kernel_projector(), p2.kernel_projector()
    pc1, pc2 = p1.corange_projector(), p2.corange_projector()

    x = adjoint(q2) @ q1 - pc2
    lhs = x @ (h1 + s1 * pk1) + (h2 + s2 * pk2) @ x
    terms = (
        adjoint(q2) @ q1 @ h1 - h2,
        h2 @ adjoint(q2) @ q1 - pc2 @ h1,
        s2 * pk2 @ adjoint(q2) @ q1 @ pc1,
        -s1 * pc2 @ pk1,
    )
    t1, t2, t3, t4 = (spectral_norm(t) for t in terms)
    m = a1.shape[0]
    leak = spectral_norm((identity(m) - p2.range_projector()) @ q1)
    rgap = gap_report(p2.range(), p1.range()).gap_hat
    x_norm = spectral_norm(x)
    qdist = spectral_norm(q1 - q2)
    checks = {
        "first_term": _holds(t1, dist, slack, floor),
        "second_term": _holds(t2, dist, slack, floor),
        "vanishing_term": t3 <= VANISH_TOL,
        "kernel_term": _holds(t4, s1 / s2 * dist, slack, floor),
        "leak_vs_range_gap": leak <= rgap + DELTA_ZERO_TOL,
        "x_bound": _holds(x_norm, 3 * dist / (s1 + s2), slack, floor / (s1 + s2)),
        "qdist_split": _holds(qdist, x_norm + leak, slack, floor),
    }
    return CrTrace(
        sigma1=s1,
        sigma2=s2,
        dist=dist,
        swapped=swapped,
        x_norm=x_norm,
        first_term=t1,
        second_term=t2,
        vanishing_term=t3,
        kernel_term=t4,
        leak_norm=leak,
        range_gap=rgap,
        qdist=qdist,
        decomposition_residual=spectral_norm(lhs - sum(terms)),
        checks=checks,
    )


def small_pert_implication(a1, a2, tol=DEFAULT_TOL):
    """Equal rank and ``dist < max(sigma1, sigma2) / 3`` force a range gap below 1.

    Also evaluates ``||A1^+ - A2^+|| <= 2 ||A1^+|| ||A2^+|| dist`` whenever the
    ranks agree.
    """
    a1, a2, p1, p2 = _pair(a1, a2, tol)
    dist = spectral_norm(a1 - a2)
    s1, s2 = p1.sigma, p2.sigma
    equal_rank = p1.rank == p2.rank
    rgap = gap_report(p1.range(), p2.range()).gap_hat
    pinv_dist = wedin_bound = wedin = None
    if equal_rank:
        g1, g2 = pinv(a1, tol), pinv(a2, tol)
        pinv_dist = spectral_norm(g1 - g2)
        wedin_bound = 2 * spectral_norm(g1) * spectral_norm(g2) * dist
        wedin = _holds(pinv_dist, wedin_bound, tol.bound_slack)
    return SmallPertReport(
        applies=bool(equal_rank and dist < max(s1, s2) / 3),
        gap_lt1=rgap < 1 - GAP_MARGIN,
        wedin_holds=wedin,
        dist=dist,
        sigma1=s1,
        sigma2=s2,
        range_gap=rgap,
        pinv_dist=pinv_dist,
        wedin_bound=wedin_bound,
    )


def scan_resolvent_angular(a, center, radius, samples, tol=DEFAULT_TOL) -> List[Tuple[complex, float]]:
    """Angular factor of ``A - lambda I`` along a circle around ``center``.

    Samples ``lambda_k = center + radius * exp(2 pi i k / samples)`` and returns
    ``(lambda_k, ||Q(lambda_k) - Q(lambda_{k+1})||)`` with the last entry
    wrapping around to ``k = 0``.
    """
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ShapeMismatch("resolvent scan needs a square matrix")
    if samples < 2 or radius <= 0:
        raise ValueError("need samples >= 2 and radius > 0")
    n = a.shape[0]
    lams = complex(center) + radius * np.exp(2j * np.pi * np.arange(samples) / samples)
    qs = [polar_decompose(a - lam * identity(n), tol).q for lam in lams]
    return [(complex(lams[k]), spectral_norm(qs[k] - qs[(k + 1) % samples])) for k in range(samples)]


def max_consecutive_distance(scan):
    return max(d for _, d in scan)
