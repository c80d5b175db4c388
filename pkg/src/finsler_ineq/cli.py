"""Command-line entry point.

Exit codes: 0 pass, 1 usage or parse error, 2 domain error, 3 inequality
violated, 4 internal failure (sampling exhausted, broken invariant).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from importlib import resources
from pathlib import Path

import numpy as np

from . import inequalities as ineq
from .campaign import ALL_CHECKS, CampaignError, load_manifest, run_campaign, summary_rows
from .errors import DomainError, InvariantError, SamplingExhaustedError
from .jsonio import dumps
from .linalg import classify_signature
from .norms import CATALOG_HELP, check_domain, spec_from_dict
from .sampling import SampleConfig, export_lines, sample_domain, sample_pairs

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_VIOLATION, EXIT_INTERNAL = 0, 1, 2, 3, 4
BUNDLED = {"paper-suite", "paper-suite.json"}

# check name -> (number of vectors, needs --spec)
CHECK_ARITY = {
    "fundamental": (2, True),
    "reverse_triangle": (2, True),
    "scaled_refinement": (2, True),
    "integral_refinement": (2, True),
    "aczel": (2, False),
    "popoviciu": (2, False),
    "bellman": (2, False),
    "am_gm": (1, False),
    "weighted_am_gm": (1, False),
    "holder_minkowski": (2, False),
    "kropina": (2, False),
    "bimetric": (2, False),
    "bimetric_plane": (2, False),
    "finslerian_aczel": (2, True),
    "aczel_lemma": (2, True),
    "aczel_refinements": (2, True),
    "aczel_refinement_as_displayed": (2, True),
    "mth_root": (1, True),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt(x):
    # + 0.0 folds a negative zero into "0"
    return format(float(x) + 0.0, ".12g")


def _fmt_vec(v):
    return "(" + ", ".join(_fmt(x) for x in v) + ")"


def parse_vector(text):
    """Accept ``2,1`` / ``(2,1)`` / ``[2, 1]``."""
    cleaned = text.strip().strip("()[]")
    try:
        vals = [float(x) for x in cleaned.replace(" ", ",").split(",") if x]
    except ValueError:
        raise UsageError(f"cannot parse vector {text!r}") from None
    if not vals:
        raise UsageError(f"empty vector {text!r}")
    return np.array(vals)


def load_spec(text):
    """A spec given inline as JSON or as a path to a JSON file."""
    try:
        raw = text if text.lstrip().startswith("{") else Path(text).read_text()
        return spec_from_dict(json.loads(raw))
    except OSError as exc:
        raise UsageError(f"cannot read spec {text!r}: {exc.strerror}") from None
    except (ValueError, TypeError, KeyError) as exc:
        raise UsageError(f"invalid norm spec: {exc}") from None


def _emit(text, out_path=None):
    print(text)
    if out_path:
        Path(out_path).write_text(text + "\n")


def cmd_eval(args):
    spec = load_spec(args.spec)
    v = check_domain(spec, parse_vector(args.vector))
    g = spec._tensor(v)
    sig = classify_signature(g, args.tol or 1e-9)
    lines = [
        f"family     {spec.family.value} (dim {spec.dim})",
        f"v          {_fmt_vec(v)}",
        f"F(v)       {_fmt(spec._value(v))}",
        f"grad F(v)  {_fmt_vec(spec._gradient(v))}",
        "g_v",
    ]
    lines += ["  " + " ".join(f"{_fmt(x):>20}" for x in row) for row in g]
    lines.append(f"signature  {sig.cls.value} {sig.counts}")
    print("\n".join(lines))
    if args.out:
        doc = {
            "spec": spec.to_dict(),
            "v": v,
            "F": spec._value(v),
            "gradient": spec._gradient(v),
            "g": g,
            "signature": sig.to_dict(),
        }
        Path(args.out).write_text(dumps(doc, indent=2) + "\n")
    return EXIT_OK


def _need(args, attr, check):
    val = getattr(args, attr)
    if val is None:
        raise UsageError(f"check {check!r} needs --{attr}")
    return val


def _run_check(args):
    name = args.name
    if name not in CHECK_ARITY:
        raise UsageError(f"unknown check {name!r}; valid checks: {', '.join(CHECK_ARITY)}")
    arity, needs_spec = CHECK_ARITY[name]
    if len(args.vectors) != arity:
        raise UsageError(f"check {name!r} takes {arity} vector(s), got {len(args.vectors)}")
    vecs = [parse_vector(t) for t in args.vectors]
    spec = load_spec(_need(args, "spec", name)) if needs_spec else None
    rel = args.tol or ineq.DEFAULT_REL_TOL
    if name == "fundamental":
        return ineq.check_fundamental(spec, *vecs, rel)
    if name == "reverse_triangle":
        return ineq.check_reverse_triangle(spec, *vecs, rel)
    if name == "scaled_refinement":
        return ineq.check_scaled_refinement(spec, *vecs, _need(args, "a", name), _need(args, "b", name), rel)
    if name == "integral_refinement":
        return ineq.check_integral_refinement(spec, *vecs, args.panels, rel)
    if name == "aczel":
        return ineq.check_aczel_classical(*vecs, rel)
    if name == "popoviciu":
        return ineq.check_popoviciu(*vecs, _need(args, "p", name), rel)
    if name == "bellman":
        return ineq.check_bellman(*vecs, _need(args, "p", name), rel)
    if name == "am_gm":
        return ineq.check_am_gm(vecs[0], rel)
    if name == "weighted_am_gm":
        return ineq.check_weighted_am_gm(parse_vector(_need(args, "weights", name)), vecs[0], rel)
    if name == "holder_minkowski":
        return ineq.check_holder_minkowski(*vecs, _need(args, "p", name), rel)
    if name == "kropina":
        return ineq.check_kropina(*vecs, rel)
    if name == "bimetric":
        try:
            h = json.loads(_need(args, "h", name))
        except json.JSONDecodeError as exc:
            raise UsageError(f"--h must be a JSON matrix: {exc}") from None
        return ineq.check_bimetric(*vecs, h, rel)
    if name == "bimetric_plane":
        return ineq.check_bimetric_plane(*vecs, rel)
    if name == "finslerian_aczel":
        return ineq.finslerian_aczel(spec, *vecs, rel)
    if name == "aczel_lemma":
        return {"aczel_lemma_deviation": ineq.aczel_lemma_identity(spec, *vecs)}
    if name == "aczel_refinements":
        return ineq.aczel_refinements(spec, *vecs, rel)
    if name == "aczel_refinement_as_displayed":
        return ineq.aczel_refinement_as_displayed(spec, *vecs, rel)
    sig_h, sig_g = ineq.mth_root_signature_transfer(spec, vecs[0], args.tol or 1e-9)
    return {"hessian_H": sig_h.to_dict(), "g": sig_g.to_dict()}


def cmd_check(args):
    result = _run_check(args)
    if isinstance(result, ineq.IneqReport):
        reports = [result]
        doc = result.to_dict()
    elif isinstance(result, tuple):
        reports = list(result)
        doc = [r.to_dict() for r in reports]
    else:
        reports = []
        doc = result
    _emit(dumps(doc, indent=2), args.out)
    return EXIT_VIOLATION if any(not r.holds for r in reports) else EXIT_OK


def _read_manifest(path):
    p = Path(path)
    if not p.exists() and path in BUNDLED:
        return "paper-suite", resources.files("finsler_ineq").joinpath("data/paper-suite.json").read_text()
    try:
        return p.stem, p.read_text()
    except OSError as exc:
        raise UsageError(f"cannot read manifest {path!r}: {exc.strerror}") from None


def _print_table(report):
    header = ("family", "dim", "check", "count", "min slack", "viol", "eq", "pass")
    rows = [header] + [
        (f, str(d), c, str(n), format(s, ".3e"), str(vi), str(eq), "yes" if ok else "NO")
        for f, d, c, n, s, vi, eq, ok in summary_rows(report)
    ]
    widths = [max(len(r[k]) for r in rows) for k in range(len(header))]
    for r in rows:
        print("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip())


def cmd_verify(args):
    stem, text = _read_manifest(args.manifest)
    try:
        name, runs, out = load_manifest(text, seed=args.seed, margin=args.margin, tol=args.tol)
    except (ValueError, TypeError, KeyError) as exc:
        raise UsageError(f"invalid manifest: {exc}") from None
    out_path = args.out or out or f"{stem}.report.json"
    start = time.perf_counter()
    report = run_campaign(name, runs)
    elapsed = time.perf_counter() - start
    # wall time goes to stdout only, so the JSON file stays byte-identical across runs
    Path(out_path).write_text(dumps(report, indent=2) + "\n")
    _print_table(report)
    print(f"\n{name}: {'PASS' if report['pass'] else 'FAIL'} ({len(runs)} runs, {elapsed:.1f} s) -> {out_path}")
    return EXIT_OK if report["pass"] else EXIT_VIOLATION


def cmd_catalog(args):
    for fam, text in CATALOG_HELP.items():
        print(f"{fam.value:22} {text}")
    print("\nchecks: " + ", ".join(CHECK_ARITY))
    print("campaign checks: " + ", ".join(ALL_CHECKS))
    return EXIT_OK


def cmd_sample(args):
    spec = load_spec(args.spec)
    try:
        cfg = SampleConfig(
            seed=args.seed if args.seed is not None else 0,
            count=args.count,
            margin=args.margin if args.margin is not None else 0.05,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    samples = sample_pairs(spec, cfg) if args.pairs else sample_domain(spec, cfg)
    text = export_lines(spec, cfg, samples)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="finsler-ineq", description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, help="override the sampling seed")
    parser.add_argument("--margin", type=float, help="override the interior margin")
    parser.add_argument("--tol", type=float, help="override tolerances (relative)")
    parser.add_argument("--out", help="write the JSON result to this path")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="print F, its gradient, g_v and the signature at a vector")
    p.add_argument("spec", help="norm spec: JSON file path or inline JSON")
    p.add_argument("vector", help="comma-separated components, e.g. 2,1")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("check", help="evaluate one inequality and print its report")
    p.add_argument("name", help="check name (see `catalog`)")
    p.add_argument("vectors", nargs="*", help="comma-separated vectors")
    p.add_argument("--spec", help="norm spec for generic checks (base norm for the Aczel family)")
    p.add_argument("--p", type=float, help="exponent for popoviciu/bellman/holder_minkowski")
    p.add_argument("--a", type=float, help="lower scale for scaled_refinement")
    p.add_argument("--b", type=float, help="upper scale for scaled_refinement")
    p.add_argument("--h", help="second metric for bimetric, as a JSON matrix")
    p.add_argument("--weights", help="weights for weighted_am_gm")
    p.add_argument("--panels", type=int, default=64, help="Simpson panels for integral_refinement")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify", help="run a manifest or suite and write a campaign report")
    p.add_argument("manifest", help="manifest path, or 'paper-suite' for the bundled suite")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("catalog", help="list norm families, their params and the check names")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("sample", help="export reproducible samples as JSON lines")
    p.add_argument("spec")
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--pairs", action="store_true")
    p.set_defaults(func=cmd_sample)
    return parser


def main(argv=None):
    parser = build_parser()
    # vectors may follow the check options, so leftovers are folded back in for `check`
    args, extra = parser.parse_known_args(argv)
    if extra:
        if args.command != "check":
            parser.error(f"unrecognized arguments: {' '.join(extra)}")
        args.vectors = list(args.vectors) + extra
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except CampaignError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (SamplingExhaustedError, InvariantError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ValueError as exc:
        # argument validation inside the library (bad p, a > b, weights not normalized, ...)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # pragma: no cover - last-resort guard for the exit-code contract
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
