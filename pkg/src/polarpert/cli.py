"""Command-line front end.

Exit codes: 0 all requested checks passed, 1 a verified inequality failed,
2 invalid input or flags.
"""

import argparse
import dataclasses
import json
import sys

import numpy as np

from . import genlab, jsonio
from .errors import NotApplicable, PolarPertError
from .numcore import DEFAULT_TOL, spectral_norm
from .perturb import certify, proof_trace_cr, proof_trace_main, scan_resolvent_angular
from .polar import is_partial_isometry, polar_decompose
from .subspace import classify_cross_projections, gap_report
from .sylvester import solve_sylvester

EXIT_OK, EXIT_FAILED, EXIT_INVALID = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _shape(text):
    try:
        r, c = (int(x) for x in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"shape must look like RxC, got {text!r}") from None
    if r < 1 or c < 1:
        raise argparse.ArgumentTypeError("shape dimensions must be positive")
    return r, c


def _complex(text):
    try:
        re, im = (float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected re,im, got {text!r}") from None
    return complex(re, im)


def _u64(text):
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write JSON here instead of stdout")
    common.add_argument("--tol", type=float, help="multiplicative slack on bound verdicts")
    common.add_argument("--format", choices=["json"], default="json")

    p = _Parser(prog="polarpert", description="Angular-factor perturbation toolkit")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    sp = sub.add_parser("polar", parents=[common], help="polar decomposition of --a")
    sp.add_argument("--a", required=True)

    for verb in ("gap", "classify"):
        sp = sub.add_parser(verb, parents=[common], help=f"{verb} for subspaces --v, --w")
        sp.add_argument("--v", required=True)
        sp.add_argument("--w", required=True)

    sp = sub.add_parser("sylvester", parents=[common], help="solve X S - T X = Y")
    for flag in ("--s", "--t", "--y"):
        sp.add_argument(flag, required=True)

    for verb in ("certify", "trace"):
        sp = sub.add_parser(verb, parents=[common])
        sp.add_argument("--a1", required=True)
        sp.add_argument("--a2", required=True)
    sub.choices["certify"].add_argument(
        "--require-main", action="store_true", help="exit 1 unless the main bound applies and holds"
    )

    sp = sub.add_parser("corpus", parents=[common], help="seeded random corpus")
    sp.add_argument("--trials", type=_positive_int, default=1000)
    sp.add_argument("--seed", type=_u64, default=0)
    sp.add_argument("--shape", type=_shape)
    sp.add_argument("--sigma-min", type=float, default=0.1)
    sp.add_argument("--sigma-max", type=float, default=10.0)
    sp.add_argument("--ensemble", choices=["default", *genlab.ENSEMBLES], default="default")
    sp.add_argument("--report", help="alias for --out")

    sp = sub.add_parser("scan", parents=[common], help="angular factor of A - lambda I on a circle")
    sp.add_argument("--a", required=True)
    sp.add_argument("--center", type=_complex, default=0j)
    sp.add_argument("--radius", type=float, required=True)
    sp.add_argument("--samples", type=_positive_int, default=64)

    sp = sub.add_parser("gen", parents=[common], help="random matrix with prescribed rank")
    sp.add_argument("--shape", type=_shape, required=True)
    sp.add_argument("--rank", type=_positive_int)
    sp.add_argument("--sigma-min", type=float, default=0.1)
    sp.add_argument("--sigma-max", type=float, default=10.0)
    sp.add_argument("--seed", type=_u64, default=0)

    sp = sub.add_parser("named", parents=[common], help="named matrix pairs")
    sp.add_argument("--name", required=True)
    return p


def _policy(args):
    if args.tol is None:
        return DEFAULT_TOL
    return dataclasses.replace(DEFAULT_TOL, bound_slack=args.tol)


def _cmd_polar(args, tol):
    a = jsonio.load_matrix(args.a)
    pr = polar_decompose(a, tol)
    resid = spectral_norm(a - pr.q @ pr.h)
    ok = resid <= 1e-10 * max(1.0, spectral_norm(a)) and is_partial_isometry(pr.q)
    out = {"q": pr.q, "h": pr.h, "sigma": pr.sigma, "rank": pr.rank, "reconstruction_residual": resid}
    return out, ok


def _cmd_gap(args, tol):
    v, v_on = jsonio.load_subspace(args.v, tol)
    w, w_on = jsonio.load_subspace(args.w, tol)
    out = dataclasses.asdict(gap_report(v, w))
    out.update(v_orthonormal=v_on, w_orthonormal=w_on)
    return out, True


def _cmd_classify(args, tol):
    v, _ = jsonio.load_subspace(args.v, tol)
    w, _ = jsonio.load_subspace(args.w, tol)
    return {"tag": classify_cross_projections(v, w, tol).value}, True


def _cmd_sylvester(args, tol):
    s, t, y = (jsonio.load_matrix(p) for p in (args.s, args.t, args.y))
    sol = solve_sylvester(s, t, y, tol)
    holds = sol.bound_holds(tol.residual_tol)
    residual_ok = sol.residual <= tol.residual_tol * max(1.0, spectral_norm(y))
    out = {
        "x": sol.x,
        "residual": sol.residual,
        "separation": sol.separation,
        "bound_value": sol.bound_value,
        "bound_holds": holds,
    }
    return out, residual_ok and holds is not False


def _cmd_certify(args, tol):
    cert = certify(jsonio.load_matrix(args.a1), jsonio.load_matrix(args.a2), tol)
    ok = not cert.failed_bounds()
    if args.require_main:
        ok = ok and cert.main_holds is True
    return cert.to_dict(), ok


def _cmd_trace(args, tol):
    a1, a2 = jsonio.load_matrix(args.a1), jsonio.load_matrix(args.a2)
    cr = proof_trace_cr(a1, a2, tol)
    out = {"cr": dataclasses.asdict(cr), "main": None}
    ok = cr.ok
    try:
        main = proof_trace_main(a1, a2, tol)
    except NotApplicable as exc:
        out["main_skipped"] = str(exc)
    else:
        out["main"] = dataclasses.asdict(main)
        ok = ok and main.ok
    return out, ok


def _cmd_corpus(args, tol):
    rows, cols = args.shape if args.shape else (None, None)
    mix = dict(genlab.DEFAULT_MIX) if args.ensemble == "default" else {args.ensemble: 1.0}
    cfg = genlab.CorpusConfig(
        trials=args.trials,
        seed=args.seed,
        rows=rows,
        cols=cols,
        sigma_min=args.sigma_min,
        sigma_max=args.sigma_max,
        mix=mix,
    )
    report = genlab.run_corpus(cfg, tol)
    return report.to_dict(), not report.failures


def _cmd_scan(args, tol):
    a = jsonio.load_matrix(args.a)
    scan = scan_resolvent_angular(a, args.center, args.radius, args.samples, tol)
    out = {
        "samples": [{"lambda": [lam.real, lam.imag], "distance": d} for lam, d in scan],
        "max_distance": max(d for _, d in scan),
    }
    return out, True


def _cmd_gen(args, tol):
    rows, cols = args.shape
    rank = args.rank if args.rank is not None else min(rows, cols)
    spec = genlab.InstanceSpec(rows, cols, rank, args.sigma_min, args.sigma_max, args.seed)
    return genlab.generate(spec), True


def _cmd_named(args, tol):
    a1, a2 = genlab.named_instance(args.name)
    return {"name": args.name, "a1": a1, "a2": a2, "note": genlab.note_for(args.name)}, True


COMMANDS = {
    "polar": _cmd_polar,
    "gap": _cmd_gap,
    "classify": _cmd_classify,
    "sylvester": _cmd_sylvester,
    "certify": _cmd_certify,
    "trace": _cmd_trace,
    "corpus": _cmd_corpus,
    "scan": _cmd_scan,
    "gen": _cmd_gen,
    "named": _cmd_named,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        tol = _policy(args)
        out, ok = COMMANDS[args.verb](args, tol)
        if isinstance(out, np.ndarray):
            out = jsonio.matrix_to_json(out)
        dest = getattr(args, "report", None) or args.out
        jsonio.dump(out, dest)
    except (PolarPertError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"polarpert {args.verb}: error: {msg}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK if ok else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
