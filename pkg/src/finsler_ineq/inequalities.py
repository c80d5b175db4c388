"""Inequality checks as structured reports.

Each ``check_*`` evaluates one inequality and returns an :class:`IneqReport`
whose ``slack`` is oriented so that ``slack >= 0`` means the inequality holds.
Generic checks go through the norm machinery (``F``, ``F_i``, ``g_v``). The
classical specializations evaluate the textbook formula directly and attach
the generic report they reduce to as ``counterpart``.
"""

from __future__ import annotations

import enum
import functools
import json
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .calculus import DEFAULT_PANELS, integrate_unit_interval
from .errors import DomainError, InvariantError
from .linalg import SignatureClass, as_vector, classify_signature
from .norms import (
    BerwaldMoor,
    Bimetric,
    EuclideanP,
    Kropina,
    MinkowskiBilinear,
    NormSpec,
    PPseudoNorm,
    Stationary,
    WeightedGeometric,
    check_domain,
    spec_from_json,
    spec_to_json,
)

DEFAULT_REL_TOL = 1e-9
COLLINEAR_TOL = 1e-8
LEMMA_TOL = 1e-10
ROOT_IDENTITY_TOL = 1e-8


class Verdict(str, enum.Enum):
    HOLDS = "holds"
    HOLDS_WITH_EQUALITY = "holds_with_equality"
    VIOLATED = "violated"


@dataclass(frozen=True)
class IneqReport:
    name: str
    lhs: float
    rhs: float
    slack: float
    verdict: Verdict
    strict_expected: bool
    collinear: bool
    tol_used: float
    counterpart: Optional["IneqReport"] = None

    @property
    def holds(self) -> bool:
        return self.verdict is not Verdict.VIOLATED

    @property
    def is_equality(self) -> bool:
        return self.verdict is Verdict.HOLDS_WITH_EQUALITY

    @property
    def strictness_ok(self) -> bool:
        """False when a strict inequality is attained by non-collinear vectors."""
        return not (self.strict_expected and self.is_equality and not self.collinear)

    @property
    def agrees(self) -> bool:
        """Direct and generic evaluations reach the same verdict (True without a counterpart)."""
        return self.counterpart is None or self.counterpart.verdict is self.verdict

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "verdict": self.verdict.value,
            "strict_expected": self.strict_expected,
            "collinear": self.collinear,
            "tol_used": self.tol_used,
        }
        if self.counterpart is not None:
            out["counterpart"] = self.counterpart.to_dict()
        return out


def make_report(name, lhs, rhs, *, strict, collinear, rel_tol=DEFAULT_REL_TOL, extra_tol=0.0, counterpart=None):
    lhs = float(lhs)
    rhs = float(rhs)
    slack = lhs - rhs
    tol = rel_tol * (1.0 + abs(lhs) + abs(rhs)) + extra_tol
    if slack > tol:
        verdict = Verdict.HOLDS
    elif slack < -tol:
        verdict = Verdict.VIOLATED
    else:
        verdict = Verdict.HOLDS_WITH_EQUALITY
    return IneqReport(name, lhs, rhs, slack, verdict, bool(strict), bool(collinear), tol, counterpart)


def normalized_difference(spec: NormSpec, v, w) -> float:
    """``max |v/F(v) - w/F(w)|``, the projective distance used for collinearity."""
    return float(np.max(np.abs(v / spec._value(v) - w / spec._value(w))))


def _collinear(spec, v, w) -> bool:
    return normalized_difference(spec, v, w) <= COLLINEAR_TOL


def _reverse_mode(spec: NormSpec) -> bool:
    sig = spec.expected_signature()
    if sig.one_positive:
        return True
    if sig in (SignatureClass.POSITIVE_DEFINITE, SignatureClass.POSITIVE_SEMIDEFINITE):
        return False
    raise ValueError(f"no inequality mode for signature class {sig.value}")


def _pair(spec, v, w):
    return check_domain(spec, v), check_domain(spec, w)


# ---------------------------------------------------------------------------
# generic inequalities of a (Lorentz-)Finsler norm


def check_fundamental(spec: NormSpec, v, w, rel_tol=DEFAULT_REL_TOL) -> IneqReport:
    """Fundamental inequality: ``dF_v(w) >= F(w)`` (reversed for positive-definite norms)."""
    v, w = _pair(spec, v, w)
    d = float(spec._gradient(v) @ w)
    fw = spec._value(w)
    lhs, rhs = (d, fw) if _reverse_mode(spec) else (fw, d)
    return make_report(
        "fundamental",
        lhs,
        rhs,
        strict=spec.expected_signature().nondegenerate,
        collinear=_collinear(spec, v, w),
        rel_tol=rel_tol,
    )


def _sum_in_domain(spec, x, what):
    msg = spec._violation(x, 0.0)
    if msg:
        raise InvariantError(f"{what} left the convex cone of {spec.family.value}: {msg}")
    return x


def check_reverse_triangle(spec: NormSpec, v, w, rel_tol=DEFAULT_REL_TOL) -> IneqReport:
    """``F(v + w) >= F(v) + F(w)`` (reversed for positive-definite norms)."""
    v, w = _pair(spec, v, w)
    s = _sum_in_domain(spec, v + w, "v + w")
    fs = spec._value(s)
    fvw = spec._value(v) + spec._value(w)
    lhs, rhs = (fs, fvw) if _reverse_mode(spec) else (fvw, fs)
    return make_report(
        "reverse_triangle" if _reverse_mode(spec) else "triangle",
        lhs,
        rhs,
        strict=spec.expected_signature().nondegenerate,
        collinear=_collinear(spec, v, w),
        rel_tol=rel_tol,
    )


def check_scaled_refinement(spec: NormSpec, v, w, a, b, rel_tol=DEFAULT_REL_TOL):
    """Chain ``a*D <= F(av + bw) - aF(v) - bF(w) <= b*D`` with ``D = F(v+w) - F(v) - F(w)``.

    Returns the two links as separate reports. For positive-definite norms the
    chain runs the other way (``b*D <= mid <= a*D``).
    """
    a = float(a)
    b = float(b)
    if not (0.0 < a <= b):
        raise ValueError(f"need 0 < a <= b, got a={a}, b={b}")
    v, w = _pair(spec, v, w)
    fv = spec._value(v)
    fw = spec._value(w)
    s = _sum_in_domain(spec, v + w, "v + w")
    mix = _sum_in_domain(spec, a * v + b * w, "a v + b w")
    delta = spec._value(s) - fv - fw
    mid = spec._value(mix) - a * fv - b * fw
    # the chain is stated without a strictness claim
    strict = False
    col = _collinear(spec, v, w)
    if _reverse_mode(spec):
        pairs = ((mid, a * delta), (b * delta, mid))
    else:
        pairs = ((a * delta, mid), (mid, b * delta))
    return tuple(
        make_report(f"scaled_refinement_{k}", lhs, rhs, strict=strict, collinear=col, rel_tol=rel_tol)
        for k, (lhs, rhs) in enumerate(pairs, start=1)
    )


def check_integral_refinement(spec: NormSpec, v, w, n_panels=DEFAULT_PANELS, rel_tol=DEFAULT_REL_TOL):
    """Sandwich ``F(v) + F(w) <= 2 int_0^1 F(tv + (1-t)w) dt <= F(v + w)``.

    The tolerance of both reports is widened by a Richardson estimate of the
    Simpson error (difference against half as many panels).
    """
    v, w = _pair(spec, v, w)
    s = _sum_in_domain(spec, v + w, "v + w")

    def integrand(t):
        return spec._value(t * v + (1.0 - t) * w)

    twice = 2.0 * integrate_unit_interval(integrand, n_panels)
    quad_err = 0.0
    if n_panels >= 4 and (n_panels // 2) % 2 == 0:
        coarse = 2.0 * integrate_unit_interval(integrand, n_panels // 2)
        quad_err = 2.0 * abs(twice - coarse) / 15.0
    ends = spec._value(v) + spec._value(w)
    fs = spec._value(s)
    strict = False
    col = _collinear(spec, v, w)
    if _reverse_mode(spec):
        pairs = ((twice, ends), (fs, twice))
    else:
        pairs = ((ends, twice), (twice, fs))
    return tuple(
        make_report(
            f"integral_refinement_{k}", lhs, rhs, strict=strict, collinear=col, rel_tol=rel_tol, extra_tol=quad_err
        )
        for k, (lhs, rhs) in enumerate(pairs, start=1)
    )


# ---------------------------------------------------------------------------
# cached specs used by the classical reductions


@functools.lru_cache(maxsize=64)
def _minkowski(dim):
    return MinkowskiBilinear(dim)


@functools.lru_cache(maxsize=64)
def _p_pseudo(dim, p):
    return PPseudoNorm(dim, p)


@functools.lru_cache(maxsize=64)
def _euclid(dim, p):
    return EuclideanP(dim, p)


@functools.lru_cache(maxsize=64)
def _berwald_moor(dim):
    return BerwaldMoor(dim)


@functools.lru_cache(maxsize=64)
def _kropina(dim):
    return Kropina(dim)


@functools.lru_cache(maxsize=64)
def _bimetric(h_key):
    return Bimetric(json.loads(h_key))


@functools.lru_cache(maxsize=64)
def _stationary(base_key):
    return Stationary(spec_from_json(base_key))


def _stationary_for(base):
    if isinstance(base, Stationary):
        return base
    return _stationary(spec_to_json(base))


def _eta(u, w):
    return float(u[0] * w[0] - u[1:] @ w[1:])


def _positive(x, name):
    x = as_vector(x, name, min_len=1)
    for i, c in enumerate(x):
        if not c > 0:
            raise DomainError(f"component {name}{i} must be > 0")
    return x


def _check_p(p):
    p = float(p)
    if not p > 1.0:
        raise ValueError(f"p must be > 1, got {p}")
    return p


def _same_dim(u, w):
    if u.shape != w.shape:
        raise ValueError(f"dimension mismatch: {u.shape[0]} vs {w.shape[0]}")


def _future_timelike(x, name):
    if not x[0] > 0:
        raise DomainError(f"component {name}0 must be > 0")
    if not _eta(x, x) > 0:
        raise DomainError(f"eta({name},{name}) must be > 0")


# ---------------------------------------------------------------------------
# classical specializations


def check_aczel_classical(v, w, rel_tol=DEFAULT_REL_TOL) -> IneqReport:
    """Aczel: ``eta(v,w)^2 >= eta(v,v) eta(w,w)`` for future timelike ``v, w``."""
    v = as_vector(v, "v", 2)
    w = as_vector(w, "w", 2)
    _same_dim(v, w)
    _future_timelike(v, "v")
    _future_timelike(w, "w")
    cp = check_fundamental(_minkowski(v.shape[0]), v, w, rel_tol)
    return make_report(
        "aczel",
        _eta(v, w) ** 2,
        _eta(v, v) * _eta(w, w),
        strict=True,
        collinear=cp.collinear,
        rel_tol=rel_tol,
        counterpart=cp,
    )


def _signed_power_form(x, p):
    return x[0] ** p - math.fsum(x[1:] ** p)


def check_popoviciu(a, b, p, rel_tol=DEFAULT_REL_TOL) -> IneqReport:
    """Popoviciu: ``eta(a,b) >= (a0^q - sum a^q)^(1/q) (b0^p - sum b^p)^(1/p)``, ``1/p + 1/q = 1``.

    The generic counterpart is the fundamental inequality of the p-pseudo-norm
    at ``v = a**(1/(p-1))``, ``w = b``.
    """
    p = _check_p(p)
    q = p / (p - 1.0)
    a = _positive(a, "a")
    b = _positive(b, "b")
    _same_dim(a, b)
    qa = _signed_power_form(a, q)
    pb = _signed_power_form(b, p)
    if not qa > 0:
        raise DomainError("a0^q - a1^q - ... - an^q must be > 0")
    if not pb > 0:
        raise DomainError("b0^p - b1^p - ... - bn^p must be > 0")
    v = np.exp(np.log(a) / (p - 1.0))
    cp = check_fundamental(_p_pseudo(a.shape[0], p), v, b, rel_tol)
    return make_report(
        "popoviciu",
        _eta(a, b),
        qa ** (1.0 / q) * pb ** (1.0 / p),
        strict=True,
        collinear=cp.collinear,
        rel_tol=rel_tol,
        counterpart=cp,
    )


def check_bellman(v, w, p, rel_tol=DEFAULT_REL_TOL) -> IneqReport:
    """Bellman: ``P(v)^(1/p) + P(w)^(1/p) <= P(v + w)^(1/p)`` with ``P(x) = x0^p - sum x^p``."""
    p = _check_p(p)
    spec = _p_pseudo(as_vector(v).shape[0], p)
    v, w = _pair(spec, v, w)
    cp = check_reverse_triangle(spec, v, w, rel_tol)

    def root(x):
        return _signed_power_form(x, p) ** (1.0 / p)

    return make_report(
        "bellman",
        root(v + w),
        root(v) + root(w),
        strict=True,
        collinear=cp.collinear,
        rel_tol=rel_tol,
        counterpart=cp,
    )


def check_am_gm(a, rel_tol=DEFAULT_REL_TOL) -> IneqReport:
    """Arithmetic mean >= geometric mean, via Berwald-Moor at ``v = (1, ..., 1)``, ``w = a``."""
    a = _positive(a, "a")
    n1 = a.shape[0]
    mean = math.fsum(a) / n1
    geo = math.exp(math.fsum(np.log(a)) / n1)
    if n1 >= 2:
        cp = check_fundamental(_berwald_moor(n1), np.ones(n1), a, rel_tol)
        col = cp.collinear
    else:
        cp, col = None, True
    return make_report("am_gm", mean, geo, strict=True, collinear=col, rel_tol=rel_tol, counterpart=cp)


def check_weighted_am_gm(weights, v, rel_tol=DEFAULT_REL_TOL) -> IneqReport:
    """``sum a_i v_i >= prod v_i**a_i`` for weights summing to one."""
    a = as_vector(weights, "weights", 2)
    if np.any(a < 0):
        raise ValueError("weights must be nonnegative")
    total = math.fsum(a)
    if abs(total - 1.0) > 1e-10:
        raise ValueError(f"weights must sum to 1 within 1e-10 (got {total!r}); normalize first")
    v = _positive(v, "v")
    _same_dim(a, v)
    spec = WeightedGeometric(a / total)
    cp = check_fundamental(spec, np.ones(a.shape[0]), v, rel_tol)
    return make_report(
        "weighted_am_gm",
        math.fsum(a * v),
        math.exp(math.fsum(a * np.log(v))),
        strict=bool(np.all(a > 0)),
        collinear=cp.collinear,
        rel_tol=rel_tol,
        counterpart=cp,
    )


def check_holder_minkowski(a, b, p, rel_tol=DEFAULT_REL_TOL):
    """Holder and Minkowski for positive vectors; counterparts use the positive-definite p-norm."""
    p = _check_p(p)
    q = p / (p - 1.0)
    a = _positive(a, "a")
    b = _positive(b, "b")
    _same_dim(a, b)
    spec = _euclid(a.shape[0], p)

    def norm(x, r):
        return math.fsum(x**r) ** (1.0 / r)

    holder_cp = check_fundamental(spec, np.exp(np.log(a) / (p - 1.0)), b, rel_tol)
    holder = make_report(
        "holder",
        norm(a, q) * norm(b, p),
        math.fsum(a * b),
        strict=True,
        collinear=holder_cp.collinear,
        rel_tol=rel_tol,
        counterpart=holder_cp,
    )
    mink_cp = check_reverse_triangle(spec, a, b, rel_tol)
    mink = make_report(
        "minkowski",
        norm(a, p) + norm(b, p),
        norm(a + b, p),
        strict=True,
        collinear=mink_cp.collinear,
        rel_tol=rel_tol,
        counterpart=mink_cp,
    )
    return holder, mink


def check_kropina(v, w, rel_tol=DEFAULT_REL_TOL) -> IneqReport:
    """``2 eta(v,w) >= (w0/v0) eta(v,v) + (v0/w0) eta(w,w)``, asserted non-strictly."""
    v = as_vector(v, "v", 2)
    w = as_vector(w, "w", 2)
    _same_dim(v, w)
    _future_timelike(v, "v")
    _future_timelike(w, "w")
    cp = check_fundamental(_kropina(v.shape[0]), v, w, rel_tol)
    return make_report(
        "kropina",
        2.0 * _eta(v, w),
        w[0] / v[0] * _eta(v, v) + v[0] / w[0] * _eta(w, w),
        strict=False,
        collinear=cp.collinear,
        rel_tol=rel_tol,
        counterpart=cp,
    )


def bimetric_spec(h) -> Bimetric:
    h = np.array(h, dtype=float)
    return _bimetric(json.dumps(h.tolist()))


def check_bimetric(v, w, h, rel_tol=DEFAULT_REL_TOL) -> IneqReport:
    """``(eta(v,w)/eta(v,v) + h(v,w)/h(v,v)) / 2 >= (H(w)/H(v))**(1/4)`` with ``H = eta(.,.) h(.,.)``."""
    spec = bimetric_spec(h)
    v, w = _pair(spec, v, w)
    hm = spec.h
    qv = _eta(v, v) * float(v @ hm @ v)
    qw = _eta(w, w) * float(w @ hm @ w)
    lhs = 0.5 * (_eta(v, w) / _eta(v, v) + float(v @ hm @ w) / float(v @ hm @ v))
    cp = check_fundamental(spec, v, w, rel_tol)
    return make_report(
        "bimetric", lhs, (qw / qv) ** 0.25, strict=True, collinear=cp.collinear, rel_tol=rel_tol, counterpart=cp
    )


PLANE_H = ((2.0, 0.0), (0.0, -1.0))


def check_bimetric_plane(v, w, rel_tol=DEFAULT_REL_TOL) -> IneqReport:
    """Explicit planar case with ``h(v,v) = 2 v0^2 - v1^2``, in fourth-power form.

    Only ``v0^2 > v1^2`` and ``w0^2 > w1^2`` are required; both sides are even
    in ``v`` and in ``w``, so the counterpart uses the future-pointing representatives.
    """
    v = as_vector(v, "v", 2)
    w = as_vector(w, "w", 2)
    if v.shape[0] != 2 or w.shape[0] != 2:
        raise ValueError("the planar bimetric inequality needs two-component vectors")
    for x, name in ((v, "v"), (w, "w")):
        if not x[0] ** 2 > x[1] ** 2:
            raise DomainError(f"{name}0^2 must be > {name}1^2")

    def h(x, y):
        return 2.0 * x[0] * y[0] - x[1] * y[1]

    ratio = (_eta(v, w) / _eta(v, v) + h(v, w) / h(v, v)) ** 4 / 16.0
    target = (_eta(w, w) * h(w, w)) / (_eta(v, v) * h(v, v))
    cp = check_bimetric(np.sign(v[0]) * v, np.sign(w[0]) * w, PLANE_H, rel_tol)
    return make_report(
        "bimetric_plane", ratio, target, strict=True, collinear=cp.collinear, rel_tol=rel_tol, counterpart=cp
    )


# ---------------------------------------------------------------------------
# Finslerian Aczel inequality over a stationary norm


@dataclass(frozen=True)
class AczelTerms:
    v0: float
    w0: float
    norm_v: float
    norm_w: float
    mixed: float  # gbar_{v_vec}(v_vec, w_vec)

    @property
    def aczel_slack(self):
        return (self.v0 * self.w0 - self.mixed) ** 2 - (self.v0**2 - self.norm_v**2) * (
            self.w0**2 - self.norm_w**2
        )

    @property
    def scale(self):
        return (self.v0**2 + self.norm_v**2) * (self.w0**2 + self.norm_w**2)

    def refinement_1_term(self):
        nv, nw = self.norm_v, self.norm_w
        return (self.w0**2 - nw**2) / nw**2 * (nv**2 * nw**2 - self.mixed**2)

    def refinement_2_term(self):
        return (self.w0 * self.mixed / self.norm_w - self.v0 * self.norm_w) ** 2


def _aczel_terms(base, v, w, need_w_spatial=False):
    spec = _stationary_for(base)
    v, w = _pair(spec, v, w)
    sv, sw = v[1:], w[1:]
    if not np.any(sv):
        raise ValueError("v_vec = 0: the spatial fundamental tensor needs a nonzero base point")
    if need_w_spatial and not np.any(sw):
        raise ValueError("w_vec must be nonzero")
    base = spec.base
    gbar = spec.base_tensor(sv)
    terms = AczelTerms(
        v0=float(v[0]),
        w0=float(w[0]),
        norm_v=base._value(sv),
        norm_w=base._value(sw),
        mixed=float(sv @ gbar @ sw),
    )
    return spec, v, w, terms


def finslerian_aczel(base, v, w, rel_tol=DEFAULT_REL_TOL) -> IneqReport:
    """``[v0 w0 - gbar(v_vec, w_vec)]^2 >= (v0^2 - |v_vec|^2)(w0^2 - |w_vec|^2)``.

    ``base`` is the positive-definite norm on the spatial part (or an already
    built :class:`Stationary` spec); ``gbar`` is its fundamental tensor at ``v_vec``.
    """
    spec, v, w, t = _aczel_terms(base, v, w)
    cp = check_fundamental(spec, v, w, rel_tol)
    return make_report(
        "finslerian_aczel",
        (t.v0 * t.w0 - t.mixed) ** 2,
        (t.v0**2 - t.norm_v**2) * (t.w0**2 - t.norm_w**2),
        strict=True,
        collinear=cp.collinear,
        rel_tol=rel_tol,
        counterpart=cp,
    )


def aczel_lemma_identity(base, v, w, relative=False) -> float:
    """Largest pairwise gap between the three equal forms of the Aczel slack.

    Forms: the defining difference, the two-term decomposition, and the
    expanded polynomial. The mixed term ``gbar(v_vec, w_vec)`` enters squared
    wherever it is compared with ``|v_vec|^2 |w_vec|^2``, which is what makes
    the three agree. With ``relative=True`` the gap is divided by ``1 + scale``.
    """
    _, _, _, t = _aczel_terms(base, v, w, need_w_spatial=True)
    g, nv, nw = t.mixed, t.norm_v, t.norm_w
    defining = t.aczel_slack
    decomposed = t.refinement_2_term() + t.refinement_1_term()
    expanded = (nv**2 * t.w0**2 + t.v0**2 * nw**2 - 2.0 * t.v0 * t.w0 * g) + (g**2 - nv**2 * nw**2)
    gap = max(abs(defining - decomposed), abs(defining - expanded), abs(decomposed - expanded))
    return gap / (1.0 + t.scale) if relative else gap


def aczel_refinements(base, v, w, rel_tol=DEFAULT_REL_TOL):
    """Both refinements: the Aczel slack dominates each of the two decomposition terms."""
    spec, v, w, t = _aczel_terms(base, v, w, need_w_spatial=True)
    col = _collinear(spec, v, w)
    r1 = make_report(
        "aczel_refinement_1", t.aczel_slack, t.refinement_1_term(), strict=False, collinear=col, rel_tol=rel_tol
    )
    r2 = make_report(
        "aczel_refinement_2", t.aczel_slack, t.refinement_2_term(), strict=False, collinear=col, rel_tol=rel_tol
    )
    return r1, r2


def aczel_refinement_as_displayed(base, v, w, rel_tol=DEFAULT_REL_TOL) -> IneqReport:
    """First refinement with the mixed term *unsquared*: ``(|v|^2 |w|^2 - gbar(v,w))``.

    This variant is not homogeneous and fails in general (e.g. Euclidean base,
    ``v = (3,2,1)``, ``w = (3,1,2)``); it is kept as a diagnostic next to
    :func:`aczel_refinements`.
    """
    spec, v, w, t = _aczel_terms(base, v, w, need_w_spatial=True)
    nv, nw = t.norm_v, t.norm_w
    rhs = (t.w0**2 - nw**2) / nw**2 * (nv**2 * nw**2 - t.mixed)
    return make_report(
        "aczel_refinement_1_as_displayed",
        t.aczel_slack,
        rhs,
        strict=False,
        collinear=_collinear(spec, v, w),
        rel_tol=rel_tol,
    )


# ---------------------------------------------------------------------------
# m-th root metrics


def mth_root_identity_deviation(spec: NormSpec, v) -> float:
    """Relative max-entry gap in ``H_ij = m F^(m-2) [g_ij + (m-2) F_i F_j]``."""
    if spec.root_degree is None:
        raise ValueError(f"{spec.family.value} is not an m-th root metric")
    v = check_domain(spec, v)
    m = spec.root_degree
    f = spec._value(v)
    grad = spec._gradient(v)
    hess = spec._root_hessian(v)
    assembled = m * f ** (m - 2.0) * (spec._tensor(v) + (m - 2.0) * np.outer(grad, grad))
    scale = max(float(np.max(np.abs(hess))), float(np.max(np.abs(assembled))))
    return float(np.max(np.abs(hess - assembled))) / scale


def mth_root_signature_transfer(spec: NormSpec, v, tol=1e-9):
    """Signatures of ``Hess(H)`` and ``g_v`` for ``F = H**(1/m)``.

    Raises :class:`InvariantError` if the Hessian identity fails beyond
    ``1e-8`` relative, or if ``Hess(H)`` is Lorentzian while ``g_v`` is not.
    """
    dev = mth_root_identity_deviation(spec, v)
    if dev > ROOT_IDENTITY_TOL:
        raise InvariantError(f"m-th root Hessian identity off by {dev:.3e} (relative) for {spec.family.value}")
    v = check_domain(spec, v)
    sig_h = classify_signature(spec._root_hessian(v), tol)
    sig_g = classify_signature(spec._tensor(v), tol)
    if sig_h.cls is SignatureClass.LORENTZIAN and sig_g.cls is not SignatureClass.LORENTZIAN:
        raise InvariantError(f"Hess(H) is Lorentzian but g_v has signature {sig_g.counts}")
    return sig_h, sig_g
