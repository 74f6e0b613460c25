"""Command-line front end.

One process per command; all randomness is surfaced through ``--seed``.
Exit codes: 0 success, 2 configuration error, 3 data validation error,
4 degenerate data.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np
from threadpoolctl import threadpool_limits

from . import __version__
from .data import load_matrix, save_matrix
from .errors import ConfigurationError, IntdimError
from .linear import gaussian_surrogate, spectrum
from .manifolds import (
    KINDS,
    LuminanceConfig,
    ManifoldSpec,
    embed_orthogonal,
    gen_manifold,
    perturb_luminance,
)
from .neighbors import dedupe
from .report import load_manifest, min_id_bound, pearson, profile
from .scale import decimation_curve, stability_verdict
from .twonn import METHODS, estimate_matrix, subsample_estimate

SCHEMA_VERSION = 1


def _emit(args, payload: dict | str):
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(args):
    m = load_matrix(args.input)
    if args.dedupe_tol is not None:
        m, _ = dedupe(m, tol=args.dedupe_tol)
    return m


def _cmd_estimate(args):
    m = _load(args)
    fraction = 1.0 if args.subsample_fraction is None else args.subsample_fraction
    repeats = 1 if args.repeats is None else args.repeats
    if repeats > 1 or fraction < 1.0:
        est = subsample_estimate(
            m,
            fraction=fraction,
            repeats=repeats,
            method=args.method,
            seed=args.seed,
        )
    else:
        est = estimate_matrix(m, method=args.method, seed=args.seed)
    _emit(args, {"schema_version": SCHEMA_VERSION, **est.to_dict(), "seed": args.seed})


def _cmd_decimate(args):
    m = _load(args)
    curve = decimation_curve(m, k_max=args.k_max, method=args.method, seed=args.seed)
    verdict = stability_verdict(curve, rel_tol=args.rel_tol)
    if args.format == "csv":
        _emit(args, curve.to_csv())
    else:
        doc = json.loads(curve.to_json())
        doc["verdict"] = verdict
        _emit(args, doc)


def _cmd_spectrum(args):
    m = load_matrix(args.input)
    rep = spectrum(m, use_correlation=not args.raw_covariance, threshold=args.threshold)
    if args.format == "csv":
        _emit(args, rep.to_csv())
    else:
        _emit(
            args,
            {
                "schema_version": SCHEMA_VERSION,
                "pc_id": rep.pc_id,
                "threshold": rep.threshold,
                "used_correlation": rep.used_correlation,
                "dropped_columns": rep.dropped_columns,
                "eigenvalues": rep.eigenvalues.tolist(),
                "cumulative_fraction": rep.cumulative_fraction.tolist(),
            },
        )


def _cmd_surrogate(args):
    m = load_matrix(args.input)
    out = gaussian_surrogate(m, seed=args.seed)
    save_matrix(out, args.out)
    print(f"wrote {args.out} ({out.n}x{out.d_embed})")


def _cmd_synth(args):
    spec = ManifoldSpec(
        kind=args.kind,
        d_intrinsic=args.d,
        n=args.n,
        d_embed=args.d_embed,
        noise=args.noise,
        seed=args.seed,
    )
    m, _true_id = gen_manifold(spec)
    save_matrix(m, args.out, sidecar=spec.sidecar())
    print(f"wrote {args.out} ({m.n}x{m.d_embed}, true_id={spec.d_intrinsic})")


def _cmd_embed(args):
    m = load_matrix(args.input)
    out = embed_orthogonal(m, args.d_target, seed=args.seed)
    save_matrix(out, args.out)
    print(f"wrote {args.out} ({out.n}x{out.d_embed})")


def _cmd_perturb_luminance(args):
    m = load_matrix(args.input)
    out = perturb_luminance(m, LuminanceConfig(lam=args.lam, seed=args.seed))
    save_matrix(out, args.out)
    print(f"wrote {args.out} ({out.n}x{out.d_embed})")


def _cmd_profile(args):
    prof = profile(
        args.manifest,
        method=args.method,
        fraction=0.9 if args.subsample_fraction is None else args.subsample_fraction,
        repeats=20 if args.repeats is None else args.repeats,
        seed=args.seed,
    )
    _emit(args, prof.to_csv() if args.format == "csv" else prof.to_dict())


def _cmd_correlate(args):
    if args.csv:
        arr = np.loadtxt(args.csv, delimiter=",", ndmin=2)
        x, y = arr[:, 0], arr[:, 1]
    elif args.x is None or args.y is None:
        raise ConfigurationError("correlate needs either --csv or both --x and --y")
    else:
        x = np.array([float(v) for v in args.x.split(",")])
        y = np.array([float(v) for v in args.y.split(",")])
    r = pearson(x, y)
    _emit(args, {"schema_version": SCHEMA_VERSION, "pearson_r": r, "n": int(x.size)})


def _cmd_bound(args):
    b = min_id_bound(args.n_classes)
    _emit(
        args,
        {"schema_version": SCHEMA_VERSION, "n_classes": b.n_classes, "min_id": b.min_id},
    )


def _cmd_validate_manifest(args):
    name, cps = load_manifest(args.manifest)
    _emit(
        args,
        {"schema_version": SCHEMA_VERSION, "network_name": name, "checkpoints": len(cps)},
    )


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="intdim",
        description="Intrinsic-dimension estimation and validation toolkit",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for all randomness")
    common.add_argument("--method", choices=METHODS, default="mle")
    # defaults resolved per command: estimate/decimate use 1.0/1 (direct
    # estimate), profile uses the 0.9/20 subsampling convention
    common.add_argument("--subsample-fraction", type=float, default=None)
    common.add_argument("--repeats", type=int, default=None)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--threads", type=int, default=None, help="cap BLAS threads")
    common.add_argument("--output", default=None, help="write report here instead of stdout")

    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("estimate", parents=[common], help="TwoNN ID of a matrix file")
    sp.add_argument("input")
    sp.add_argument("--dedupe-tol", type=float, default=None)
    sp.set_defaults(func=_cmd_estimate)

    sp = sub.add_parser("decimate", parents=[common], help="decimation curve + verdict")
    sp.add_argument("input")
    sp.add_argument("--dedupe-tol", type=float, default=None)
    sp.add_argument("--k-max", type=int, default=20)
    sp.add_argument("--rel-tol", type=float, default=0.1)
    sp.set_defaults(func=_cmd_decimate)

    sp = sub.add_parser("spectrum", parents=[common], help="PCA eigenspectrum and PC-ID")
    sp.add_argument("input")
    sp.add_argument("--raw-covariance", action="store_true")
    sp.add_argument("--threshold", type=float, default=0.9)
    sp.set_defaults(func=_cmd_spectrum)

    sp = sub.add_parser("surrogate", parents=[common], help="covariance-matched Gaussian")
    sp.add_argument("input")
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=_cmd_surrogate)

    sp = sub.add_parser("synth", parents=[common], help="generate a known-ID manifold")
    sp.add_argument("--kind", choices=KINDS, required=True)
    sp.add_argument("--d", type=int, required=True, help="intrinsic dimension")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--d-embed", type=int, default=None)
    sp.add_argument("--noise", type=float, default=0.0)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=_cmd_synth)

    sp = sub.add_parser("embed", parents=[common], help="orthogonal lift to higher D")
    sp.add_argument("input")
    sp.add_argument("--d-target", type=int, required=True)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=_cmd_embed)

    sp = sub.add_parser(
        "perturb-luminance", parents=[common], help="add per-row brightness offsets"
    )
    sp.add_argument("input")
    sp.add_argument("--lam", type=float, required=True)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=_cmd_perturb_luminance)

    sp = sub.add_parser("profile", parents=[common], help="per-layer ID profile")
    sp.add_argument("manifest")
    sp.set_defaults(func=_cmd_profile)

    sp = sub.add_parser("correlate", parents=[common], help="Pearson r of two vectors")
    sp.add_argument("--csv", default=None, help="two-column CSV file")
    sp.add_argument("--x", default=None, help="comma-separated values")
    sp.add_argument("--y", default=None)
    sp.set_defaults(func=_cmd_correlate)

    sp = sub.add_parser("bound", parents=[common], help="class-count lower bound on ID")
    sp.add_argument("n_classes", type=int)
    sp.set_defaults(func=_cmd_bound)

    sp = sub.add_parser("validate-manifest", parents=[common], help="check a manifest file")
    sp.add_argument("manifest")
    sp.set_defaults(func=_cmd_validate_manifest)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if getattr(args, "threads", None):
            with threadpool_limits(limits=args.threads):
                args.func(args)
        else:
            args.func(args)
    except IntdimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
