"""Batch verification: run named checks over sampled points and aggregate the reports."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import inequalities as ineq
from .calculus import FDConfig, fd_fundamental_tensor, fd_gradient, hessian_F
from .errors import DomainError, InvariantError, SamplingExhaustedError
from .linalg import classify_signature, sym_eigenvalues
from .norms import Family, NormSpec, spec_from_dict
from .sampling import SampleConfig, substream, sample_pairs

FD_TENSOR_TOL = 1e-5
FD_GRADIENT_STEP_FACTOR = 10.0
ANGULAR_TOL = 1e-9
REFINEMENT_TOL = 1e-6
ACZEL_TOL = 1e-10
BELLMAN_SLACK_TOL = 1e-10

POINT_CHECKS = ("fd_gradient", "fd_tensor", "signature", "angular_metric", "mth_root")
PAIR_CHECKS = ("fundamental", "reverse_triangle", "scaled_refinement", "integral_refinement")
CLASSICAL_CHECKS = {
    "aczel": {Family.MINKOWSKI_BILINEAR},
    "popoviciu": {Family.P_PSEUDO_NORM},
    "bellman": {Family.P_PSEUDO_NORM},
    "am_gm": {Family.BERWALD_MOOR},
    "weighted_am_gm": {Family.WEIGHTED_GEOMETRIC},
    "holder_minkowski": {Family.EUCLIDEAN_P},
    "kropina": {Family.KROPINA},
    "bimetric": {Family.BIMETRIC},
    "finslerian_aczel": {Family.STATIONARY},
    "aczel_lemma": {Family.STATIONARY},
    "aczel_refinements": {Family.STATIONARY},
    "aczel_refinement_as_displayed": {Family.STATIONARY},
}
ALL_CHECKS = POINT_CHECKS + PAIR_CHECKS + tuple(CLASSICAL_CHECKS)


class CampaignError(RuntimeError):
    """A check failed internally; carries the family and sample index for the exit-4 message."""

    def __init__(self, family, index, cause):
        self.family = family
        self.index = index
        self.cause = cause
        where = f" at sample {index}" if index is not None else ""
        super().__init__(f"{family}{where}: {type(cause).__name__}: {cause}")


def applicable_checks(spec: NormSpec) -> list:
    """Every check id that makes sense for ``spec`` (used by the bundled suite)."""
    out = ["fd_gradient", "fd_tensor", "signature", "angular_metric"]
    if spec.root_degree is not None:
        out.append("mth_root")
    out += list(PAIR_CHECKS)
    for name, fams in CLASSICAL_CHECKS.items():
        if name == "aczel_refinement_as_displayed" or spec.family not in fams:
            continue
        if name == "aczel" and not np.array_equal(getattr(spec, "g", None), _eta_of(spec)):
            continue
        out.append(name)
    return out


def _eta_of(spec):
    eta = -np.eye(spec.dim)
    eta[0, 0] = 1.0
    return eta


@dataclass
class RunManifest:
    spec: NormSpec
    checks: list
    sample_cfg: SampleConfig
    tolerances: dict = field(default_factory=dict)
    output_path: Optional[str] = None

    def __post_init__(self):
        if not self.checks:
            raise ValueError("a run needs at least one check")
        for name in self.checks:
            if name not in ALL_CHECKS:
                raise ValueError(f"unknown check {name!r}; valid checks: {', '.join(ALL_CHECKS)}")
            fams = CLASSICAL_CHECKS.get(name)
            if fams is not None and self.spec.family not in fams:
                raise ValueError(f"check {name!r} does not apply to family {self.spec.family.value}")
            if name == "mth_root" and self.spec.root_degree is None:
                raise ValueError(f"check 'mth_root' needs an m-th root family, not {self.spec.family.value}")
        for name, tol in self.tolerances.items():
            if name not in self.checks:
                raise ValueError(f"tolerance override for {name!r}, which is not a listed check")
            if not (isinstance(tol, (int, float)) and not isinstance(tol, bool) and tol > 0):
                raise ValueError(f"tolerance override for {name!r} must be positive, got {tol!r}")

    def to_dict(self):
        out = {
            "spec": self.spec.to_dict(),
            "checks": list(self.checks),
            "sample_cfg": self.sample_cfg.to_dict(),
            "tolerances": dict(self.tolerances),
        }
        if self.output_path is not None:
            out["output_path"] = self.output_path
        return out

    @classmethod
    def from_dict(cls, doc, defaults=None):
        if not isinstance(doc, dict):
            raise ValueError("a run must be a JSON object")
        unknown = set(doc) - {"spec", "checks", "sample_cfg", "tolerances", "output_path"}
        if unknown:
            raise ValueError(f"unknown manifest fields: {sorted(unknown)}")
        spec = spec_from_dict(doc["spec"])
        cfg_doc = dict((defaults or {}).get("sample_cfg", {}))
        cfg_doc.update(doc.get("sample_cfg", {}))
        checks = doc.get("checks", "all")
        if checks == "all":
            checks = applicable_checks(spec)
        return cls(
            spec=spec,
            checks=list(checks),
            sample_cfg=SampleConfig.from_dict(cfg_doc),
            tolerances=dict(doc.get("tolerances", {})),
            output_path=doc.get("output_path"),
        )


def load_manifest(text: str, seed=None, margin=None, tol=None):
    """Parse a single-run manifest or a suite ``{"name", "defaults", "runs"}``.

    Returns ``(name, runs, output_path)``. ``seed``/``margin`` override every
    run's sampling config; ``tol`` overrides every check's tolerance.
    """
    doc = json.loads(text)
    if not isinstance(doc, dict):
        raise ValueError("manifest must be a JSON object")
    if "runs" in doc:
        unknown = set(doc) - {"name", "defaults", "runs", "output_path"}
        if unknown:
            raise ValueError(f"unknown suite fields: {sorted(unknown)}")
        if not doc["runs"]:
            raise ValueError("suite has no runs")
        defaults = doc.get("defaults", {})
        runs = [RunManifest.from_dict(r, defaults) for r in doc["runs"]]
        name, out = doc.get("name", "suite"), doc.get("output_path")
    else:
        runs = [RunManifest.from_dict(doc)]
        name, out = "manifest", doc.get("output_path")
    for run in runs:
        cfg = run.sample_cfg.to_dict()
        if seed is not None:
            cfg["seed"] = seed
        if margin is not None:
            cfg["margin"] = margin
        run.sample_cfg = SampleConfig.from_dict(cfg)
        if tol is not None:
            run.tolerances = {c: tol for c in run.checks}
        run.__post_init__()
    return name, runs, out


# ---------------------------------------------------------------------------
# per-sample evaluation


def _bound_report(name, deviation, bound):
    """Report that holds iff ``deviation <= bound`` (slack ``bound - deviation``)."""
    return ineq.make_report(name, bound, deviation, strict=False, collinear=False, rel_tol=0.0)


def fd_gradient_bound(spec, v, tol=None):
    """``10 step^2 scale`` with curvature scale ``(1 + |F_ij|_max max(1, |v|_max))^2``.

    Central differences err by ``step^2`` times the third derivative of F,
    which grows like the square of the angular metric near the cone boundary.
    """
    step = FDConfig().step
    fij = float(np.max(np.abs(hessian_F(spec, v).entries)))
    scale = (1.0 + fij * max(1.0, float(np.max(np.abs(v))))) ** 2
    return (tol or FD_GRADIENT_STEP_FACTOR * step * step) * scale


def _point_reports(check, spec, v, tol):
    if check == "fd_gradient":
        dev = float(np.max(np.abs(fd_gradient(spec, v) - spec._gradient(v))))
        return [_bound_report("fd_gradient", dev, fd_gradient_bound(spec, v, tol))]
    if check == "fd_tensor":
        g = spec._tensor(v)
        dev = float(np.max(np.abs(fd_fundamental_tensor(spec, v).entries - g)))
        return [_bound_report("fd_tensor", dev, (tol or FD_TENSOR_TOL) * (1.0 + float(np.max(np.abs(g)))))]
    if check == "signature":
        got = classify_signature(spec._tensor(v), tol or 1e-9).cls
        mismatch = 0.0 if got is spec.expected_signature() else 1.0
        return [_bound_report("signature", mismatch, 0.0)]
    if check == "angular_metric":
        tol = tol or ANGULAR_TOL
        fij = hessian_F(spec, v).entries
        scale = max(1.0, float(np.max(np.abs(fij))))
        eig = sym_eigenvalues(fij)
        g_sig = classify_signature(spec._tensor(v))
        if g_sig.cls.one_positive:
            # negative semidefinite where g has a single positive direction
            semidef = _bound_report("angular_semidefinite", float(eig[0]), tol * scale)
        else:
            semidef = _bound_report("angular_semidefinite", -float(eig[-1]), tol * scale)
        radical = float(np.max(np.abs(fij @ v)))
        rad = _bound_report("angular_radical", radical, tol * scale * float(np.max(np.abs(v))))
        return [semidef, rad]
    if check == "mth_root":
        dev = ineq.mth_root_identity_deviation(spec, v)
        sig_h, sig_g = ineq.mth_root_signature_transfer(spec, v)
        transfer = 1.0 if sig_h.cls.value == "lorentzian" and sig_g.cls.value != "lorentzian" else 0.0
        return [
            _bound_report("mth_root_identity", dev, tol or ineq.ROOT_IDENTITY_TOL),
            _bound_report("mth_root_transfer", transfer, 0.0),
        ]
    raise ValueError(check)


def _with_rel(tol, default):
    return tol if tol is not None else default


def _scaled_ab(cfg, index):
    rng = substream(cfg.seed, "ab", index)
    a = rng.uniform(0.1, 1.0)
    return a, a * rng.uniform(1.0, 4.0)


def _pair_reports(check, spec, v, w, tol, cfg, index):
    rel = _with_rel(tol, ineq.DEFAULT_REL_TOL)
    if check == "fundamental":
        return [ineq.check_fundamental(spec, v, w, rel)]
    if check == "reverse_triangle":
        return [ineq.check_reverse_triangle(spec, v, w, rel)]
    if check == "scaled_refinement":
        a, b = _scaled_ab(cfg, index)
        return list(ineq.check_scaled_refinement(spec, v, w, a, b, _with_rel(tol, REFINEMENT_TOL)))
    if check == "integral_refinement":
        return list(ineq.check_integral_refinement(spec, v, w, rel_tol=_with_rel(tol, REFINEMENT_TOL)))
    if check == "aczel":
        return [ineq.check_aczel_classical(v, w, rel)]
    if check == "popoviciu":
        a = np.exp((spec.p - 1.0) * np.log(v))
        return [ineq.check_popoviciu(a, w, spec.p, rel)]
    if check == "bellman":
        rep = ineq.check_bellman(v, w, spec.p, rel)
        gap = abs(rep.slack - rep.counterpart.slack)
        scale = 1.0 + abs(rep.lhs) + abs(rep.rhs)
        return [rep, _bound_report("bellman_slack_match", gap, BELLMAN_SLACK_TOL * scale)]
    if check == "am_gm":
        rep = ineq.check_am_gm(w / v, rel)
        return [rep]
    if check == "weighted_am_gm":
        return [ineq.check_weighted_am_gm(spec.a, w / v, rel)]
    if check == "holder_minkowski":
        # the p = 2 cone is all of R^n \ {0}; the classical forms want positive entries
        v, w = np.abs(v), np.abs(w)
        a = np.exp((spec.p - 1.0) * np.log(v))
        return list(ineq.check_holder_minkowski(a, w, spec.p, rel))
    if check == "kropina":
        return [ineq.check_kropina(v, w, rel)]
    if check == "bimetric":
        return [ineq.check_bimetric(v, w, spec.h, rel)]
    if check == "finslerian_aczel":
        return [ineq.finslerian_aczel(spec, v, w, rel)]
    if check == "aczel_lemma":
        dev = ineq.aczel_lemma_identity(spec, v, w, relative=True)
        return [_bound_report("aczel_lemma", dev, _with_rel(tol, ACZEL_TOL))]
    if check == "aczel_refinements":
        return list(ineq.aczel_refinements(spec, v, w, _with_rel(tol, ACZEL_TOL)))
    if check == "aczel_refinement_as_displayed":
        return [ineq.aczel_refinement_as_displayed(spec, v, w, _with_rel(tol, ACZEL_TOL))]
    raise ValueError(check)


# ---------------------------------------------------------------------------
# aggregation


@dataclass
class CheckAggregate:
    name: str
    count: int = 0
    min_slack: float = math.inf
    violations: int = 0
    equality_cases: int = 0
    collinear_equality_cases: int = 0
    strict_noncollinear_equalities: int = 0
    disagreements: int = 0
    worst: Optional[dict] = None

    def add(self, index, rep: ineq.IneqReport, payload):
        self.count += 1
        if not rep.holds:
            self.violations += 1
        if rep.is_equality:
            self.equality_cases += 1
            if rep.collinear:
                self.collinear_equality_cases += 1
        if not rep.strictness_ok:
            self.strict_noncollinear_equalities += 1
        if not rep.agrees:
            self.disagreements += 1
        # strict < keeps the lowest index on ties since samples arrive in index order
        if rep.slack < self.min_slack:
            self.min_slack = rep.slack
            self.worst = {"index": index, **payload, "report": rep.to_dict()}

    @property
    def passed(self):
        return self.violations == 0 and self.strict_noncollinear_equalities == 0 and self.disagreements == 0

    def to_dict(self):
        return {
            "count": self.count,
            "min_slack": self.min_slack,
            "violations": self.violations,
            "equality_cases": self.equality_cases,
            "collinear_equality_cases": self.collinear_equality_cases,
            "strict_noncollinear_equalities": self.strict_noncollinear_equalities,
            "disagreements": self.disagreements,
            "worst": self.worst,
            "pass": self.passed,
        }


def run_manifest(run: RunManifest) -> dict:
    """Evaluate every check of ``run`` over its sample set; deterministic in the manifest."""
    spec, cfg = run.spec, run.sample_cfg
    fam = spec.family.value
    try:
        pairs = sample_pairs(spec, cfg)
    except SamplingExhaustedError as exc:
        raise CampaignError(fam, exc.index, exc) from exc
    aggregates = {}

    def record(i, reports, payload):
        for rep in reports:
            agg = aggregates.get(rep.name)
            if agg is None:
                agg = aggregates[rep.name] = CheckAggregate(rep.name)
            agg.add(i, rep, payload)

    for check in run.checks:
        tol = run.tolerances.get(check)
        for i, (v, w) in enumerate(pairs):
            try:
                if check in POINT_CHECKS:
                    record(i, _point_reports(check, spec, v, tol), {"v": v.tolist()})
                else:
                    record(i, _pair_reports(check, spec, v, w, tol, cfg, i), {"v": v.tolist(), "w": w.tolist()})
            except (DomainError, InvariantError, ArithmeticError) as exc:
                raise CampaignError(fam, i, exc) from exc
    checks = {name: agg.to_dict() for name, agg in aggregates.items()}
    return {
        "spec": spec.to_dict(),
        "sample_cfg": cfg.to_dict(),
        "tolerances": dict(run.tolerances),
        "checks": checks,
        "pass": all(c["pass"] for c in checks.values()),
    }


def run_campaign(name, runs) -> dict:
    results = [run_manifest(r) for r in runs]
    return {
        "name": name,
        "runs": results,
        "pass": all(r["pass"] for r in results),
    }


def summary_rows(report: dict) -> list:
    """Flat rows ``(family, dim, check, count, min_slack, violations, equalities, pass)`` for the text table."""
    rows = []
    for run in report["runs"]:
        spec = run["spec"]
        for name, agg in run["checks"].items():
            rows.append(
                (
                    spec["family"],
                    spec.get("dim"),
                    name,
                    agg["count"],
                    agg["min_slack"],
                    agg["violations"],
                    agg["equality_cases"],
                    agg["pass"],
                )
            )
    return rows
