"""Deterministic random instances and the corpus runner.

Randomness comes from numpy's counter-based Philox bit generator.  Trial
``i`` of a corpus with master seed ``s`` uses the child seed

    child_seed(s, i) = SeedSequence([s, i]).generate_state(1, uint64)[0]

so every trial is reproducible on its own and the report does not depend on
the order in which trials are executed.
"""

import math
import re
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy.linalg import expm

from .errors import AmbiguousHypothesis, EpsilonTooLarge, UnknownInstance
from .numcore import DEFAULT_TOL, adjoint, as_matrix, spectral_norm
from .perturb import (
    certify,
    proof_trace_cr,
    proof_trace_main,
    small_pert_implication,
)
from .polar import polar_decompose
from .spectral import svd
from .subspace import gap_report

ENSEMBLES = ("equal-rank", "small-perturbation", "remark", "unrestricted")
DEFAULT_MIX = {"equal-rank": 0.40, "small-perturbation": 0.30, "remark": 0.15, "unrestricted": 0.15}
BOUND_NAMES = ("main", "improved", "cr_plain", "cr_gap")


def child_seed(master_seed, index):
    """64-bit seed of trial ``index`` (SeedSequence hash of the pair)."""
    ss = np.random.SeedSequence([int(master_seed), int(index)])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def make_rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.Philox(int(seed)))


@dataclass(frozen=True)
class InstanceSpec:
    rows: int
    cols: int
    rank: int
    sigma_min: float = 0.1
    sigma_max: float = 10.0
    seed: int = 0

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("rows and cols must be positive")
        if not 1 <= self.rank <= min(self.rows, self.cols):
            raise ValueError(f"rank {self.rank} impossible for shape {self.rows}x{self.cols}")
        if not 0 < self.sigma_min <= self.sigma_max:
            raise ValueError("need 0 < sigma_min <= sigma_max")


def random_unitary(n, seed):
    """Haar-distributed unitary: QR of a complex Gaussian with phase-fixed R diagonal."""
    rng = make_rng(seed)
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def _log_uniform(rng, lo, hi, size):
    if lo == hi:
        return np.full(size, float(lo))
    s = np.exp(rng.uniform(math.log(lo), math.log(hi), size))
    return np.clip(s, lo, hi)


def _from_factors(u, s, v):
    return (u[:, : len(s)] * s) @ adjoint(v[:, : len(s)])


def generate(spec: InstanceSpec, rng=None):
    """``U diag(s) V^*`` with ``spec.rank`` log-uniform singular values and the rest 0."""
    rng = make_rng(spec.seed) if rng is None else rng
    u = random_unitary(spec.rows, rng)
    v = random_unitary(spec.cols, rng)
    s = _log_uniform(rng, spec.sigma_min, spec.sigma_max, spec.rank)
    return _from_factors(u, s, v)


def _random_skew(n, rng):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    k = (g - adjoint(g)) / 2
    nk = spectral_norm(k)
    return k / nk if nk > 0 else k


def perturb_rank_preserving(a, epsilon, seed, tol=DEFAULT_TOL):
    """Random ``a + E`` with ``||E|| <= epsilon`` and the same rank.

    The nonzero singular values move by at most ``epsilon / 3`` and the
    singular bases are rotated by ``exp(t K)`` with unit-norm skew-Hermitian
    ``K`` and ``t = (epsilon / 3) / (s_max + epsilon / 3)``, which keeps the
    total change within ``epsilon``.

    Raises
    ------
    EpsilonTooLarge
        If ``epsilon >= sigma_A / 2``.
    """
    a = as_matrix(a)
    res = svd(a, tol)
    r = res.rank
    if r == 0:
        raise EpsilonTooLarge("cannot perturb the zero matrix rank-preservingly")
    s = res.singvals[:r]
    if epsilon < 0 or epsilon >= s[-1] / 2:
        raise EpsilonTooLarge(f"epsilon must lie in [0, sigma_A/2) = [0, {s[-1] / 2:.6g})")
    if epsilon == 0:
        return a.copy()
    rng = make_rng(seed)
    m, n = a.shape
    third = epsilon / 3
    s_new = s + rng.uniform(-third, third, r)
    t = third / (s[0] + third)
    u = expm(t * _random_skew(m, rng)) @ res.u[:, :r]
    v = expm(t * _random_skew(n, rng)) @ res.v[:, :r]
    return (u * s_new) @ adjoint(v)


NAMED_NOTES = {
    "remark-projections": "A1 = P_span{e1}, A2 = P_span{e2,e3} in C^3: ranks differ, gap differences vanish",
    "intro-counterexample": "A1 = eps^2 I replaces the zero matrix (bounds need nonzero operators); ranks agree, "
    "so this pair shows the jump only in the limit eps -> 0",
    "nested-rank-drop": "A1 = diag(1, eps), A2 = diag(1, 0): nested ranges and kernels, main hypothesis fails",
}

_PARAM_NAME = re.compile(r"^(intro-counterexample|nested-rank-drop)\(\s*([^()]+?)\s*\)$")


def named_instance(name):
    """Return a named pair ``(A1, A2)``; see ``NAMED_NOTES`` for descriptions."""
    if name == "remark-projections":
        return (
            np.diag([1, 0, 0]).astype(np.complex128),
            np.diag([0, 1, 1]).astype(np.complex128),
        )
    match = _PARAM_NAME.match(name)
    if match is None:
        raise UnknownInstance(f"unknown instance {name!r}")
    kind, arg = match.groups()
    try:
        eps = float(arg)
    except ValueError:
        raise UnknownInstance(f"bad parameter in {name!r}") from None
    if not (math.isfinite(eps) and eps > 0):
        raise UnknownInstance(f"parameter must be positive in {name!r}")
    if kind == "intro-counterexample":
        return eps**2 * np.eye(2, dtype=np.complex128), eps * np.eye(2, dtype=np.complex128)
    return np.diag([1, eps]).astype(np.complex128), np.diag([1, 0]).astype(np.complex128)


def note_for(name):
    return NAMED_NOTES[name.split("(")[0]]


# ---------------------------------------------------------------- ensembles


@dataclass(frozen=True)
class CorpusConfig:
    """Corpus parameters.  ``rows``/``cols`` of ``None`` draws shapes up to ``max_dim``."""

    trials: int
    seed: int = 0
    rows: Optional[int] = None
    cols: Optional[int] = None
    max_dim: int = 12
    sigma_min: float = 0.1
    sigma_max: float = 10.0
    mix: Dict[str, float] = field(default_factory=lambda: dict(DEFAULT_MIX))

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if (self.rows is None) != (self.cols is None):
            raise ValueError("give both rows and cols or neither")
        unknown = set(self.mix) - set(ENSEMBLES)
        if unknown:
            raise ValueError(f"unknown ensembles: {sorted(unknown)}")
        if not self.mix or min(self.mix.values()) < 0 or sum(self.mix.values()) <= 0:
            raise ValueError("mix weights must be nonnegative with positive sum")


def _shape(cfg, rng, ensemble):
    if cfg.rows is not None:
        return cfg.rows, cfg.cols
    lo_rows = 3 if ensemble == "remark" else 1
    lo_cols = 2 if ensemble == "remark" else 1
    return int(rng.integers(lo_rows, cfg.max_dim + 1)), int(rng.integers(lo_cols, cfg.max_dim + 1))


def _instance(rows, cols, rank, cfg, rng):
    spec = InstanceSpec(rows, cols, rank, cfg.sigma_min, cfg.sigma_max)
    return generate(spec, rng)


def draw_pair(ensemble, cfg, rng):
    """Draw one pair ``(A1, A2)`` from the named ensemble."""
    m, n = _shape(cfg, rng, ensemble)
    kmax = min(m, n)
    if ensemble == "equal-rank":
        r = int(rng.integers(1, kmax + 1))
        return _instance(m, n, r, cfg, rng), _instance(m, n, r, cfg, rng)
    if ensemble == "small-perturbation":
        r = int(rng.integers(1, kmax + 1))
        a1 = _instance(m, n, r, cfg, rng)
        sigma = polar_decompose(a1).sigma
        eps = 0.99 * sigma / 2 * 10 ** rng.uniform(-6, 0)
        return a1, perturb_rank_preserving(a1, eps, rng)
    if ensemble == "remark":
        return _remark_pair(m, n, cfg, rng)
    if ensemble == "unrestricted":
        r1, r2 = (int(x) for x in rng.integers(1, kmax + 1, size=2))
        return _instance(m, n, r1, cfg, rng), _instance(m, n, r2, cfg, rng)
    raise ValueError(f"unknown ensemble {ensemble!r}")


def _remark_pair(m, n, cfg, rng):
    # Mutually orthogonal ranges; ranks differ whenever the shape allows it.
    if m < 2:
        raise ValueError(f"shape {m}x{n} admits no pair with orthogonal ranges")
    r1 = int(rng.integers(1, min(n, m - 1) + 1))
    r2_max = min(m - r1, n)
    choices = [r for r in range(1, r2_max + 1) if r != r1] or [r1]
    r2 = int(rng.choice(choices))
    u = random_unitary(m, rng)
    v1 = random_unitary(n, rng)
    v2 = random_unitary(n, rng)
    s1 = _log_uniform(rng, cfg.sigma_min, cfg.sigma_max, r1)
    s2 = _log_uniform(rng, cfg.sigma_min, cfg.sigma_max, r2)
    a1 = (u[:, :r1] * s1) @ adjoint(v1[:, :r1])
    a2 = (u[:, r1 : r1 + r2] * s2) @ adjoint(v2[:, :r2])
    return a1, a2


def pick_ensemble(mix, rng):
    names = [k for k in ENSEMBLES if mix.get(k, 0) > 0]
    w = np.array([mix[k] for k in names], dtype=float)
    return names[int(rng.choice(len(names), p=w / w.sum()))]


# ---------------------------------------------------------------- corpus


@dataclass
class CorpusReport:
    trials: int
    failures: List[Tuple[int, str]]
    worst_slack: Dict[str, float]
    runtime_seconds: float
    counts: Dict[str, int] = field(default_factory=dict)

    def to_dict(self):
        return {
            "trials": self.trials,
            "failures": [[int(s), n] for s, n in self.failures],
            "worst_slack": dict(self.worst_slack),
            "runtime_seconds": self.runtime_seconds,
            "counts": dict(self.counts),
        }


def run_trial(a1, a2, tol=DEFAULT_TOL):
    """Every check on one pair.

    Returns ``(failed_names, slacks, flags)`` where ``slacks`` maps bound
    name to ``qdist / bound`` for applicable bounds with a positive value.
    """
    failed = []
    slacks = {}
    flags = {}
    try:
        cert = certify(a1, a2, tol)
    except AmbiguousHypothesis:
        return ["hypothesis-ambiguous"], slacks, flags
    failed.extend(cert.failed_bounds())
    flags["main_applicable"] = cert.main_applicable
    flags["cr_gap_applicable"] = cert.cr_gap_applicable
    bounds = {
        "main": cert.bound_main if cert.main_applicable else None,
        "improved": cert.bound_improved if cert.main_applicable else None,
        "cr_plain": cert.bound_cr_plain,
        "cr_gap": cert.bound_cr_gap,
    }
    for name, b in bounds.items():
        if b is not None and b > 0:
            slacks[name] = cert.qdist / b
    if cert.main_applicable and cert.bound_improved > cert.bound_main * (1 + 1e-12):
        failed.append("improved_le_main")

    if not proof_trace_cr(a1, a2, tol).ok:
        failed.append("trace_cr")
    if cert.hyp.delta_range_zero:
        if not proof_trace_main(a1, a2, tol).ok:
            failed.append("trace_main")
    elif cert.main_applicable:
        if not proof_trace_main(adjoint(a1), adjoint(a2), tol).ok:
            failed.append("trace_main")

    sp = small_pert_implication(a1, a2, tol)
    if sp.applies and not sp.gap_lt1:
        failed.append("small_pert")
    if sp.wedin_holds is False:
        failed.append("wedin")

    p1s, p2s = polar_decompose(adjoint(a1), tol), polar_decompose(adjoint(a2), tol)
    if abs(spectral_norm(p1s.q - p2s.q) - cert.qdist) > 1e-10:
        failed.append("duality")

    p1, p2 = polar_decompose(a1, tol), polar_decompose(a2, tol)
    rg = gap_report(p1.range(), p2.range())
    slack = 1 + tol.bound_slack
    if rg.delta_vw > cert.dist / cert.sigma1 * slack or rg.delta_wv > cert.dist / cert.sigma2 * slack:
        failed.append("gap_vs_sigma")
    if rg.gap_hat < 1 - 1e-8 and rg.gap_hat > cert.dist / max(cert.sigma1, cert.sigma2) * slack:
        failed.append("gap_vs_sigma_max")
    return failed, slacks, flags


def run_corpus(cfg: CorpusConfig, tol=DEFAULT_TOL):
    """Run ``cfg.trials`` independent trials and aggregate in trial order."""
    start = time.perf_counter()
    failures = []
    worst = {}
    counts = {name: 0 for name in ENSEMBLES}
    counts.update(main_applicable=0, cr_gap_applicable=0)
    for i in range(cfg.trials):
        seed = child_seed(cfg.seed, i)
        rng = make_rng(seed)
        ensemble = pick_ensemble(cfg.mix, rng)
        counts[ensemble] += 1
        a1, a2 = draw_pair(ensemble, cfg, rng)
        failed, slacks, flags = run_trial(a1, a2, tol)
        failures.extend((seed, name) for name in failed)
        for name, v in slacks.items():
            worst[name] = max(worst.get(name, 0.0), v)
        for name, flag in flags.items():
            counts[name] += int(flag)
    return CorpusReport(
        trials=cfg.trials,
        failures=failures,
        worst_slack=worst,
        runtime_seconds=time.perf_counter() - start,
        counts=counts,
    )
