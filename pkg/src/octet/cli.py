"""Command-line front end: verification suites and individual computations.

``octet verify <selector>`` runs a suite and writes one JSON object per check
(exit code 0 when everything passes, 1 otherwise); ``octet compute <command>``
emits a single JSON document.  The OCTET_REPORT_DIR environment variable
redirects relative output paths.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import checks, f2geom, qseries, tableaux, weil
from .checks import RunConfig


def _frac_str(x: Fraction) -> str:
    return "%d/%d" % (x.numerator, x.denominator)


def _output_path(out: str | None):
    if out is None:
        return None
    if os.path.isabs(out):
        return out
    base = os.environ.get("OCTET_REPORT_DIR", "")
    return os.path.join(base, out) if base else out


def _emit(text: str, out: str | None) -> None:
    path = _output_path(out)
    if path is None:
        sys.stdout.write(text)
    else:
        parent = os.path.dirname(path)
        if parent:
            os.makedirs(parent, exist_ok=True)
        with open(path, "w") as fh:
            fh.write(text)


def _config_from_args(args) -> RunConfig:
    return RunConfig(
        seed=args.seed,
        series_order=args.order,
        sample_count=args.samples,
        box_bound=args.bound,
        tolerance=args.tolerance,
    )


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--order", type=int, default=20)
    parser.add_argument("--samples", type=int, default=300)
    parser.add_argument("--bound", type=int, default=3)
    parser.add_argument("--tolerance", type=str, default="1e-9")
    parser.add_argument("--out", type=str, default=None,
                        help="output file (relative paths honor OCTET_REPORT_DIR)")


def cmd_verify(args) -> int:
    cfg = _config_from_args(args)
    reports = checks.run_suite(args.selector, cfg)
    _emit(checks.reports_to_jsonl(reports), args.out)
    return 0 if checks.all_passed(reports) else 1


# ---------------------------------------------------------------------------
# compute subcommands


def _parse_subspace(args) -> f2geom.Subspace:
    if args.generators:
        gens = [int(x) for x in args.generators.split(",")]
        sub = f2geom.echelon_basis(gens)
    else:
        singulars = f2geom.enumerate_singular_subspaces()
        if not 0 <= args.index < len(singulars):
            raise SystemExit(2)
        sub = singulars[args.index]
    return sub


def compute_fv(args) -> dict:
    sub = _parse_subspace(args)
    vec = weil.singular_vector(sub)
    plane = f2geom.kernel_plane(sub)
    plus, minus = f2geom.isotropic_plane_extensions(plane)
    return {
        "subspace": list(sub),
        "kernel_plane": list(plane),
        "extension_plus": list(plus),
        "extension_minus": list(minus),
        "coordinates": [[i, v] for i, v in enumerate(vec) if v],
    }


def compute_subspaces(args) -> dict:
    if args.singular:
        subs = f2geom.enumerate_singular_subspaces()
        kind = "singular"
    else:
        subs = f2geom.enumerate_isotropic_subspaces(args.dim)
        kind = "isotropic"
    return {"kind": kind, "dimension": args.dim if not args.singular else 3,
            "count": len(subs), "bases": [list(s) for s in subs]}


def compute_hseries(args) -> dict:
    comps = qseries.h_components(args.order)
    return {"order": args.order,
            "h00": qseries.serialize_series(comps.h00),
            "h0": qseries.serialize_series(comps.h0),
            "h1": qseries.serialize_series(comps.h1)}


def compute_theta(args) -> dict:
    if args.config:
        pairs = json.loads(args.config)
        config = tableaux.parse_config(pairs)
    elif args.affine:
        xs = [Fraction(x) for x in args.affine.split(",")]
        config = tableaux.affine_config(xs)
    else:
        raise SystemExit(2)
    try:
        coords = tableaux.theta_map(config)
    except tableaux.UnstableConfiguration:
        return {"unstable": True, "coordinates": None}
    return {"unstable": False, "coordinates": [_frac_str(x) for x in coords]}


def compute_relations(args) -> dict:
    rel = tableaux.relation_discovery(args.degree, args.samples, args.seed)
    basis = [
        [[list(mono), _frac_str(coeff)]
         for mono, coeff in zip(rel["monomials"], vec) if coeff]
        for vec in rel["basis"]
    ]
    return {"degree": rel["degree"], "monomial_count": rel["monomial_count"],
            "samples_used": rel["samples_used"], "dimension": rel["dimension"],
            "stable": rel["stable"], "basis": basis}


def compute_group(args) -> dict:
    group = f2geom.group_elements()
    return {"order": len(group),
            "transvection_generators": len(f2geom.all_transvections()),
            "orbit_sizes": sorted(len(o) for o in f2geom.orbits())}


def cmd_compute(args) -> int:
    handlers = {"fv": compute_fv, "subspaces": compute_subspaces,
                "hseries": compute_hseries, "theta": compute_theta,
                "relations": compute_relations, "group": compute_group}
    doc = handlers[args.command](args)
    _emit(json.dumps(doc, separators=(",", ":")) + "\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="octet",
        description="exact verification of the 8-point moduli computations",
    )
    sub = parser.add_subparsers(dest="mode", required=True)

    verify = sub.add_parser("verify", help="run a verification suite")
    verify.add_argument("selector", choices=checks.SELECTORS)
    _add_config_flags(verify)
    verify.set_defaults(func=cmd_verify)

    compute = sub.add_parser("compute", help="emit one computed object")
    csub = compute.add_subparsers(dest="command", required=True)

    fv = csub.add_parser("fv", help="signed vector of a totally singular subspace")
    group_sel = fv.add_mutually_exclusive_group()
    group_sel.add_argument("--generators", type=str, default=None,
                           help="comma-separated 6-bit generator patterns")
    group_sel.add_argument("--index", type=int, default=0,
                           help="index into the canonical list of 105")
    _add_config_flags(fv)

    subs = csub.add_parser("subspaces", help="enumerate subspaces")
    subs.add_argument("--singular", action="store_true")
    subs.add_argument("--dim", type=int, default=3, choices=(1, 2, 3))
    _add_config_flags(subs)

    hseries = csub.add_parser("hseries", help="the three component series")
    _add_config_flags(hseries)

    theta = csub.add_parser("theta", help="standard coordinates of a configuration")
    theta.add_argument("--config", type=str, default=None,
                       help="JSON list of 8 homogeneous coordinate pairs")
    theta.add_argument("--affine", type=str, default=None,
                       help="comma-separated affine coordinates")
    _add_config_flags(theta)

    relations = csub.add_parser("relations", help="exact relation kernel")
    relations.add_argument("--degree", type=int, default=2, choices=(1, 2, 4))
    _add_config_flags(relations)

    group = csub.add_parser("group", help="orthogonal group summary")
    _add_config_flags(group)

    compute.set_defaults(func=cmd_compute)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, tableaux.UnstableConfiguration) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
