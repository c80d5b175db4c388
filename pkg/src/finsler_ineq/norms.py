"""Catalog of (possibly degenerate) Lorentz-Finsler norms on conic domains.

Every family provides the norm ``F``, membership in its open convex cone,
and closed-form first derivatives and fundamental tensor
``g_ij(v) = 1/2 d^2(F^2)/dv^i dv^j``.

Module-level functions (:func:`evaluate`, :func:`gradient_analytic`, ...)
check domain membership before evaluating; the ``_value``/``_gradient``/
``_tensor`` methods on the classes do not.
"""

from __future__ import annotations

import enum
import json
import math
from typing import Optional

import numpy as np

from .errors import DomainError
from .linalg import SignatureClass, SymTensor, as_vector, classify_signature, jacobi_eigh

MAX_P = 64.0
WEIGHT_SUM_TOL = 1e-12


class Family(str, enum.Enum):
    MINKOWSKI_BILINEAR = "minkowski_bilinear"
    DEGENERATE_MINKOWSKI = "degenerate_minkowski"
    P_PSEUDO_NORM = "p_pseudo_norm"
    EUCLIDEAN_P = "euclidean_p"
    BERWALD_MOOR = "berwald_moor"
    WEIGHTED_GEOMETRIC = "weighted_geometric"
    BIMETRIC = "bimetric"
    KROPINA = "kropina"
    STATIONARY = "stationary"


def minkowski_eta(dim: int) -> np.ndarray:
    """``diag(1, -1, ..., -1)`` of size ``dim``."""
    eta = -np.eye(dim)
    eta[0, 0] = 1.0
    return eta


def _eta_form(u, w) -> float:
    return float(u[0] * w[0] - u[1:] @ w[1:])


def _positive_components(v, margin, ref=None) -> Optional[str]:
    """Violation message if some component is not (relatively) positive.

    With ``margin > 0`` each component must reach ``margin * ref``, where
    ``ref`` defaults to ``max |v|``.
    """
    if margin > 0:
        floor = margin * (float(np.max(np.abs(v))) if ref is None else ref)
        for i, x in enumerate(v):
            if not x >= floor or x <= 0:
                return f"component v{i} must be >= {margin:g}*max|v| (got {x:.6g})"
        return None
    for i, x in enumerate(v):
        if not x > 0:
            return f"component v{i} must be > 0"
    return None


def _future_timelike(q, time, ref, margin, form="eta(v,v)", time_name="v0") -> Optional[str]:
    """Shared test for ``{q(v) > 0, time > 0}`` cones with margin ``q >= margin*ref``."""
    if not time > 0:
        return f"component {time_name} must be > 0" if time_name == "v0" else f"{time_name} must be > 0"
    if not q > 0:
        return f"{form} must be > 0"
    if margin > 0 and q < margin * ref:
        return f"{form} must be >= {margin:g}*{ref:.6g}"
    return None


def _lorentz_frame(m: np.ndarray):
    """Positive eigenvalue and its unit eigenvector, oriented with a positive time component."""
    vals, vecs = jacobi_eigh(m, want_vectors=True)
    lam = float(vals[0])
    tau = vecs[:, 0].copy()
    pivot = 0 if abs(tau[0]) > 1e-12 else int(np.argmax(np.abs(tau) > 1e-12))
    if tau[pivot] < 0:
        tau = -tau
    return lam, tau


class NormSpec:
    """Base class for catalog families. Instances are immutable once validated."""

    family: Family
    dim: int
    # degree of the homogeneous polynomial H with F = H**(1/m); None if not an m-th root metric
    root_degree: Optional[float] = None

    def _value(self, v: np.ndarray) -> float:
        raise NotImplementedError

    def _violation(self, v: np.ndarray, margin: float) -> Optional[str]:
        raise NotImplementedError

    def _gradient(self, v: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _tensor(self, v: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def expected_signature(self) -> SignatureClass:
        raise NotImplementedError

    def params(self) -> dict:
        raise NotImplementedError

    # m-th root families override these
    def _root_poly(self, v: np.ndarray) -> float:
        raise TypeError(f"{self.family.value} is not an m-th root metric")

    def _root_hessian(self, v: np.ndarray) -> np.ndarray:
        raise TypeError(f"{self.family.value} is not an m-th root metric")

    def to_dict(self) -> dict:
        return {"family": self.family.value, "dim": self.dim, "params": self.params()}

    def __eq__(self, other):
        return isinstance(other, NormSpec) and self.to_dict() == other.to_dict()

    def __hash__(self):
        return hash(json.dumps(self.to_dict(), sort_keys=True))

    def __repr__(self):
        return f"{type(self).__name__}({json.dumps(self.params())}, dim={self.dim})"


def _check_dim(dim, minimum=2) -> int:
    if isinstance(dim, bool) or int(dim) != dim or dim < minimum:
        raise ValueError(f"dim must be an integer >= {minimum}, got {dim!r}")
    return int(dim)


def _check_p(p) -> float:
    p = float(p)
    if not (1.0 < p <= MAX_P):
        raise ValueError(f"p must satisfy 1 < p <= {MAX_P:g}, got {p}")
    return p


class MinkowskiBilinear(NormSpec):
    """``F(v) = sqrt(g(v, v))`` for a constant Lorentzian matrix ``g`` (default ``eta``).

    The cone is the future timelike component ``{g(v,v) > 0, tau.v > 0}``,
    with ``tau`` the eigenvector of the single positive eigenvalue.
    """

    family = Family.MINKOWSKI_BILINEAR

    def __init__(self, dim=None, g=None):
        if g is None:
            self.dim = _check_dim(dim)
            g = minkowski_eta(self.dim)
        else:
            g = SymTensor(g).entries
            if dim is not None and _check_dim(dim) != g.shape[0]:
                raise ValueError(f"dim={dim} does not match g of size {g.shape[0]}")
            self.dim = _check_dim(g.shape[0])
        sig = classify_signature(g)
        if sig.cls is not SignatureClass.LORENTZIAN:
            raise ValueError(f"g must be Lorentzian, got signature {sig.counts}")
        self.g = np.array(g)
        self.g.setflags(write=False)
        self._lam, self._tau = _lorentz_frame(self.g)

    def _value(self, v):
        return math.sqrt(float(v @ self.g @ v))

    def _violation(self, v, margin):
        t = float(self._tau @ v)
        return _future_timelike(
            float(v @ self.g @ v), t, self._lam * t * t, margin, "g(v,v)", "tau.v"
        )

    def _gradient(self, v):
        return (self.g @ v) / self._value(v)

    def _tensor(self, v):
        return np.array(self.g)

    def expected_signature(self):
        return SignatureClass.LORENTZIAN

    def params(self):
        return {"g": self.g.tolist()}


class DegenerateMinkowski(NormSpec):
    """``F(v) = sqrt(v0^2 - v1^2 - ... - vk^2)``; the last ``n - k`` components are free."""

    family = Family.DEGENERATE_MINKOWSKI

    def __init__(self, dim, k):
        self.dim = _check_dim(dim, 4)
        n = self.dim - 1
        if isinstance(k, bool) or int(k) != k or not (1 <= k <= n - 2):
            raise ValueError(f"k must be an integer with 1 <= k <= n-2 = {n - 2}, got {k!r}")
        self.k = int(k)
        self._diag = np.zeros(self.dim)
        self._diag[0] = 1.0
        self._diag[1 : self.k + 1] = -1.0

    def _q(self, v):
        return float(v[0] * v[0] - v[1 : self.k + 1] @ v[1 : self.k + 1])

    def _value(self, v):
        return math.sqrt(self._q(v))

    def _violation(self, v, margin):
        return _future_timelike(self._q(v), v[0], v[0] * v[0], margin, f"v0^2 - v1^2 - ... - v{self.k}^2")

    def _gradient(self, v):
        return self._diag * v / self._value(v)

    def _tensor(self, v):
        return np.diag(self._diag)

    def expected_signature(self):
        return SignatureClass.DEGENERATE_LORENTZIAN

    def params(self):
        return {"k": self.k}


class PPseudoNorm(NormSpec):
    """``F(v) = (v0^p - v1^p - ... - vn^p)**(1/p)`` on the positive cone where the bracket is positive."""

    family = Family.P_PSEUDO_NORM

    def __init__(self, dim, p):
        self.dim = _check_dim(dim)
        self.p = _check_p(p)
        self.root_degree = self.p
        self._sign = -np.ones(self.dim)
        self._sign[0] = 1.0

    def _spatial_ratio_sum(self, v):
        # H(v) / v0^p = 1 - s; powers of ratios < 1 cannot overflow
        return math.fsum(np.exp(self.p * np.log(v[1:] / v[0])))

    def _value(self, v):
        s = self._spatial_ratio_sum(v)
        return float(v[0] * math.exp(math.log1p(-s) / self.p))

    def _violation(self, v, margin):
        msg = _positive_components(v, margin)
        if msg:
            return msg
        s = self._spatial_ratio_sum(v)
        if not s < 1.0:
            return "v0^p - v1^p - ... - vn^p must be > 0"
        if margin > 0 and 1.0 - s < margin:
            return f"v0^p - v1^p - ... - vn^p must be >= {margin:g}*v0^p"
        return None

    def _gradient(self, v):
        f = self._value(v)
        return self._sign * np.exp((self.p - 1.0) * np.log(v / f))

    def _tensor(self, v):
        # g = (p-1) diag(eps_i (v_i/F)^(p-2)) + (2-p) F_i F_j
        f = self._value(v)
        grad = self._sign * np.exp((self.p - 1.0) * np.log(v / f))
        diag = self._sign * np.exp((self.p - 2.0) * np.log(v / f))
        return (self.p - 1.0) * np.diag(diag) + (2.0 - self.p) * np.outer(grad, grad)

    def _root_poly(self, v):
        return float(v[0] ** self.p - math.fsum(v[1:] ** self.p))

    def _root_hessian(self, v):
        return self.p * (self.p - 1.0) * np.diag(self._sign * v ** (self.p - 2.0))

    def expected_signature(self):
        return SignatureClass.LORENTZIAN

    def params(self):
        return {"p": self.p}


class EuclideanP(NormSpec):
    """Positive-definite ``F(v) = (sum |v_i|^p)**(1/p)``.

    For ``p = 2`` the domain is all of ``R^n \\ {0}``; otherwise it is the open
    positive orthant, where the fundamental tensor is smooth and positive definite.
    """

    family = Family.EUCLIDEAN_P

    def __init__(self, dim, p):
        self.dim = _check_dim(dim, 1)
        self.p = _check_p(p)

    @property
    def smooth_everywhere(self) -> bool:
        return self.p == 2.0

    def _value(self, v):
        a = np.abs(v)
        top = float(np.max(a))
        if top == 0.0:
            return 0.0
        return top * math.fsum((a / top) ** self.p) ** (1.0 / self.p)

    def _violation(self, v, margin):
        if self.smooth_everywhere:
            return None if np.any(v != 0) else "v must be nonzero"
        return _positive_components(v, margin)

    def _gradient(self, v):
        f = self._value(v)
        if self.smooth_everywhere:
            return v / f
        return np.sign(v) * (np.abs(v) / f) ** (self.p - 1.0)

    def _tensor(self, v):
        if self.smooth_everywhere:
            return np.eye(self.dim)
        f = self._value(v)
        grad = np.sign(v) * (np.abs(v) / f) ** (self.p - 1.0)
        return (self.p - 1.0) * np.diag((np.abs(v) / f) ** (self.p - 2.0)) + (2.0 - self.p) * np.outer(
            grad, grad
        )

    def expected_signature(self):
        return SignatureClass.POSITIVE_DEFINITE

    def params(self):
        return {"p": self.p}


class WeightedGeometric(NormSpec):
    """``F(v) = prod v_i**a_i`` with ``a_i >= 0`` summing to one, on the positive orthant."""

    family = Family.WEIGHTED_GEOMETRIC

    def __init__(self, a):
        a = as_vector(a, "a", min_len=2)
        if np.any(a < 0):
            raise ValueError("weights must be nonnegative")
        if abs(math.fsum(a) - 1.0) > WEIGHT_SUM_TOL:
            raise ValueError(f"weights must sum to 1 (got {math.fsum(a)!r})")
        self.a = a
        self.a.setflags(write=False)
        self.dim = a.shape[0]

    def _value(self, v):
        return math.exp(math.fsum(self.a * np.log(v)))

    def _violation(self, v, margin):
        return _positive_components(v, margin)

    def _gradient(self, v):
        return self.a * self._value(v) / v

    def _tensor(self, v):
        f = self._value(v)
        b = self.a / v
        return f * f * (2.0 * np.outer(b, b) - np.diag(self.a / (v * v)))

    def expected_signature(self):
        if np.all(self.a > 0):
            return SignatureClass.LORENTZIAN
        return SignatureClass.DEGENERATE_LORENTZIAN

    def params(self):
        return {"a": self.a.tolist()}


class BerwaldMoor(WeightedGeometric):
    """``F(v) = (v0 v1 ... vn)**(1/(n+1))``, the equal-weight geometric mean."""

    family = Family.BERWALD_MOOR

    def __init__(self, dim):
        dim = _check_dim(dim)
        super().__init__(np.full(dim, 1.0 / dim))
        self.root_degree = float(dim)

    def _root_poly(self, v):
        return float(np.prod(v))

    def _root_hessian(self, v):
        h = self._root_poly(v) / np.outer(v, v)
        np.fill_diagonal(h, 0.0)
        return h

    def params(self):
        return {}


class Bimetric(NormSpec):
    """``F(v) = (eta(v,v) h(v,v))**(1/4)`` on the intersection of both future cones.

    ``h`` must be Lorentzian with a negative-definite spatial block, so that
    ``v0 > 0`` selects a single time orientation of its cone.
    """

    family = Family.BIMETRIC
    root_degree = 4.0

    def __init__(self, h, dim=None):
        h = SymTensor(h).entries
        self.dim = _check_dim(h.shape[0])
        if dim is not None and _check_dim(dim) != self.dim:
            raise ValueError(f"dim={dim} does not match h of size {self.dim}")
        sig = classify_signature(h)
        if sig.cls is not SignatureClass.LORENTZIAN:
            raise ValueError(f"h must be Lorentzian, got signature {sig.counts}")
        spatial = classify_signature(-h[1:, 1:]) if self.dim > 1 else None
        if spatial is not None and spatial.cls is not SignatureClass.POSITIVE_DEFINITE:
            raise ValueError("h restricted to the v0 = 0 hyperplane must be negative definite")
        self.h = np.array(h)
        self.h.setflags(write=False)
        self.eta = minkowski_eta(self.dim)
        self._lam, self._tau = _lorentz_frame(self.h)

    def _forms(self, v):
        return _eta_form(v, v), float(v @ self.h @ v)

    def _value(self, v):
        qe, qh = self._forms(v)
        return math.sqrt(math.sqrt(qe) * math.sqrt(qh))

    def _violation(self, v, margin):
        qe, qh = self._forms(v)
        msg = _future_timelike(qe, v[0], v[0] * v[0], margin)
        if msg:
            return msg
        t = float(self._tau @ v)
        return _future_timelike(qh, t, self._lam * t * t, margin, "h(v,v)", "h-time component")

    def _root_poly(self, v):
        qe, qh = self._forms(v)
        return qe * qh

    def _root_grad(self, v):
        qe, qh = self._forms(v)
        return 2.0 * (self.eta @ v) * qh + 2.0 * qe * (self.h @ v)

    def _root_hessian(self, v):
        qe, qh = self._forms(v)
        ev = self.eta @ v
        hv = self.h @ v
        return 2.0 * self.eta * qh + 4.0 * (np.outer(ev, hv) + np.outer(hv, ev)) + 2.0 * self.h * qe

    def _gradient(self, v):
        qe, qh = self._forms(v)
        big_h = qe * qh
        return 0.5 * big_h ** -0.75 * ((self.eta @ v) * qh + qe * (self.h @ v))

    def _tensor(self, v):
        # 1/2 Hess(H^(1/2)) = H^(-1/2) H_ij / 4 - H^(-3/2) H_i H_j / 8
        big_h = self._root_poly(v)
        hi = self._root_grad(v)
        return 0.25 * self._root_hessian(v) / math.sqrt(big_h) - 0.125 * np.outer(hi, hi) / big_h**1.5

    def expected_signature(self):
        return SignatureClass.LORENTZIAN

    def params(self):
        return {"h": self.h.tolist()}


class Kropina(NormSpec):
    """``F(v) = eta(v,v) / v0`` on the future timelike cone."""

    family = Family.KROPINA

    def __init__(self, dim):
        self.dim = _check_dim(dim)

    def _value(self, v):
        return _eta_form(v, v) / v[0]

    def _violation(self, v, margin):
        return _future_timelike(_eta_form(v, v), v[0], v[0] * v[0], margin)

    def _gradient(self, v):
        sp = v[1:]
        out = np.empty(self.dim)
        out[0] = 1.0 + float(sp @ sp) / v[0] ** 2
        out[1:] = -2.0 * sp / v[0]
        return out

    def _hessian_f(self, v):
        v0 = v[0]
        sp = v[1:]
        hess = np.empty((self.dim, self.dim))
        hess[0, 0] = -2.0 * float(sp @ sp) / v0**3
        hess[1:, 0] = hess[0, 1:] = 2.0 * sp / v0**2
        hess[1:, 1:] = -2.0 * np.eye(self.dim - 1) / v0
        return hess

    def _tensor(self, v):
        grad = self._gradient(v)
        return self._value(v) * self._hessian_f(v) + np.outer(grad, grad)

    def expected_signature(self):
        return SignatureClass.LORENTZIAN

    def params(self):
        return {}


class Stationary(NormSpec):
    """``F(v) = sqrt(v0^2 - Fbar(v_vec)^2)`` for a positive-definite Finsler norm ``Fbar``.

    The fundamental tensor is block diagonal: ``g_00 = 1``, ``g_0a = 0`` and
    ``g_ab = -gbar_ab(v_vec)``.
    """

    family = Family.STATIONARY

    def __init__(self, base: NormSpec):
        if not isinstance(base, NormSpec):
            raise TypeError("base must be a NormSpec")
        if base.expected_signature() is not SignatureClass.POSITIVE_DEFINITE:
            raise ValueError(f"base must be positive definite, got {base.family.value}")
        self.base = base
        self.dim = base.dim + 1

    def _on_axis_ok(self, sp):
        return getattr(self.base, "smooth_everywhere", False) and not np.any(sp)

    def _value(self, v):
        fb = self.base._value(v[1:])
        return math.sqrt((v[0] - fb) * (v[0] + fb))

    def _violation(self, v, margin):
        sp = v[1:]
        if not self._on_axis_ok(sp):
            msg = self.base._violation(sp, margin)
            if not msg and margin > 0 and isinstance(self.base, EuclideanP) and not self.base.smooth_everywhere:
                # orthant bases: the component slack is measured against the whole vector
                msg = _positive_components(sp, margin, ref=float(np.max(np.abs(v))))
            if msg:
                return f"spatial part: {msg}"
        if not v[0] > 0:
            return "component v0 must be > 0"
        fb = self.base._value(sp)
        if not v[0] > fb:
            return "v0 must be > Fbar(v_vec)"
        if margin > 0 and v[0] - fb < margin * v[0]:
            return f"v0 - Fbar(v_vec) must be >= {margin:g}*v0"
        return None

    def _gradient(self, v):
        f = self._value(v)
        sp = v[1:]
        out = np.empty(self.dim)
        out[0] = v[0] / f
        if np.any(sp):
            out[1:] = -self.base._value(sp) * self.base._gradient(sp) / f
        else:
            out[1:] = 0.0
        return out

    def base_tensor(self, sp) -> np.ndarray:
        if self._on_axis_ok(sp):
            return np.eye(self.base.dim)
        return self.base._tensor(sp)

    def _tensor(self, v):
        g = np.zeros((self.dim, self.dim))
        g[0, 0] = 1.0
        g[1:, 1:] = -self.base_tensor(v[1:])
        return g

    def expected_signature(self):
        return SignatureClass.LORENTZIAN

    def params(self):
        return {"base": self.base.to_dict()}


# ---------------------------------------------------------------------------
# public operations


def _prepare(spec: NormSpec, v) -> np.ndarray:
    v = as_vector(v)
    if v.shape[0] != spec.dim:
        raise ValueError(f"{spec.family.value} expects {spec.dim} components, got {v.shape[0]}")
    return v


def check_domain(spec: NormSpec, v, margin=0.0) -> np.ndarray:
    """Return ``v`` as an array, raising :class:`DomainError` if it is outside the cone."""
    v = _prepare(spec, v)
    msg = spec._violation(v, margin)
    if msg:
        raise DomainError(msg, spec.family.value)
    return v


def domain_contains(spec: NormSpec, v, margin=0.0) -> bool:
    """True iff ``v`` lies in the open cone with relative interior slack ``margin``."""
    if not 0.0 <= margin < 1.0:
        raise ValueError(f"margin must lie in [0, 1), got {margin}")
    try:
        v = _prepare(spec, v)
    except ValueError:
        return False
    return spec._violation(v, margin) is None


def evaluate(spec: NormSpec, v) -> float:
    v = check_domain(spec, v)
    return spec._value(v)


def gradient_analytic(spec: NormSpec, v) -> np.ndarray:
    """Covector ``(F_0(v), ..., F_n(v))`` from the closed-form derivative."""
    v = check_domain(spec, v)
    return spec._gradient(v)


def fundamental_tensor_analytic(spec: NormSpec, v) -> SymTensor:
    v = check_domain(spec, v)
    return SymTensor(spec._tensor(v), ref_vector=v)


def expected_signature(spec: NormSpec) -> SignatureClass:
    """Signature class the family has everywhere on its cone.

    Stationary norms are Lorentzian off the time axis; with a Euclidean base
    they are Lorentzian on it too.
    """
    return spec.expected_signature()


def root_polynomial_hessian(spec: NormSpec, v) -> SymTensor:
    """Hessian of ``H = F**m`` for m-th root families."""
    v = check_domain(spec, v)
    return SymTensor(spec._root_hessian(v), ref_vector=v)


# ---------------------------------------------------------------------------
# construction and JSON


_PARAM_KEYS = {
    Family.MINKOWSKI_BILINEAR: ({"g"}, set()),
    Family.DEGENERATE_MINKOWSKI: ({"k"}, {"k"}),
    Family.P_PSEUDO_NORM: ({"p"}, {"p"}),
    Family.EUCLIDEAN_P: ({"p"}, {"p"}),
    Family.BERWALD_MOOR: (set(), set()),
    Family.WEIGHTED_GEOMETRIC: ({"a"}, {"a"}),
    Family.BIMETRIC: ({"h"}, {"h"}),
    Family.KROPINA: (set(), set()),
    Family.STATIONARY: ({"base"}, {"base"}),
}


def make_spec(family, dim=None, **params) -> NormSpec:
    """Build a validated spec from a family name and its parameters."""
    family = Family(family)
    allowed, required = _PARAM_KEYS[family]
    unknown = set(params) - allowed
    if unknown:
        raise ValueError(f"unknown params for {family.value}: {sorted(unknown)}")
    missing = required - set(params)
    if missing:
        raise ValueError(f"missing params for {family.value}: {sorted(missing)}")

    if family is Family.MINKOWSKI_BILINEAR:
        return MinkowskiBilinear(dim=dim, g=params.get("g"))
    if family is Family.DEGENERATE_MINKOWSKI:
        return DegenerateMinkowski(dim, params["k"])
    if family is Family.P_PSEUDO_NORM:
        return PPseudoNorm(dim, params["p"])
    if family is Family.EUCLIDEAN_P:
        return EuclideanP(dim, params["p"])
    if family is Family.BERWALD_MOOR:
        return BerwaldMoor(dim)
    if family is Family.KROPINA:
        return Kropina(dim)
    if family is Family.WEIGHTED_GEOMETRIC:
        spec = WeightedGeometric(params["a"])
    elif family is Family.BIMETRIC:
        spec = Bimetric(params["h"])
    else:
        base = params["base"]
        spec = Stationary(base if isinstance(base, NormSpec) else spec_from_dict(base))
    if dim is not None and dim != spec.dim:
        raise ValueError(f"dim={dim} does not match params (dim {spec.dim})")
    return spec


def spec_from_dict(doc) -> NormSpec:
    if not isinstance(doc, dict):
        raise ValueError("norm spec must be a JSON object")
    unknown = set(doc) - {"family", "dim", "params"}
    if unknown:
        raise ValueError(f"unknown fields in norm spec: {sorted(unknown)}")
    if "family" not in doc:
        raise ValueError("norm spec needs a 'family'")
    try:
        family = Family(doc["family"])
    except ValueError:
        names = ", ".join(f.value for f in Family)
        raise ValueError(f"unknown family {doc['family']!r}; expected one of {names}") from None
    params = doc.get("params", {}) or {}
    if not isinstance(params, dict):
        raise ValueError("'params' must be a JSON object")
    return make_spec(family, doc.get("dim"), **params)


def spec_from_json(text: str) -> NormSpec:
    return spec_from_dict(json.loads(text))


def spec_to_json(spec: NormSpec) -> str:
    return json.dumps(spec.to_dict(), sort_keys=True)


CATALOG_HELP = {
    Family.MINKOWSKI_BILINEAR: "sqrt(g(v,v)); params: g (Lorentzian matrix, optional, default eta); dim",
    Family.DEGENERATE_MINKOWSKI: "sqrt(v0^2 - v1^2 - ... - vk^2); params: k (1 <= k <= n-2); dim >= 4",
    Family.P_PSEUDO_NORM: "(v0^p - v1^p - ... - vn^p)^(1/p); params: p (1 < p <= 64); dim",
    Family.EUCLIDEAN_P: "(sum v_i^p)^(1/p), positive definite; params: p; dim",
    Family.BERWALD_MOOR: "(v0 v1 ... vn)^(1/(n+1)); no params; dim",
    Family.WEIGHTED_GEOMETRIC: "prod v_i^a_i; params: a (weights >= 0 summing to 1)",
    Family.BIMETRIC: "(eta(v,v) h(v,v))^(1/4); params: h (Lorentzian matrix)",
    Family.KROPINA: "eta(v,v)/v0; no params; dim",
    Family.STATIONARY: "sqrt(v0^2 - Fbar(v_vec)^2); params: base (positive-definite spec, e.g. euclidean_p)",
}
