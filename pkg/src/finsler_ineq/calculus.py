"""Finite-difference derivative oracles, the Hessian of F, and Simpson quadrature."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, EvaluationError, InvariantError
from .linalg import SymTensor, as_vector
from .norms import NormSpec, check_domain

GRADIENT_STEP = 1e-5
HESSIAN_STEP = 1e-4
DEFAULT_PANELS = 64


@dataclass(frozen=True)
class FDConfig:
    """Relative step of a second-order central difference stencil."""

    step: float = GRADIENT_STEP
    order: int = 2

    def __post_init__(self):
        if not 0.0 < self.step < 0.1:
            raise ValueError(f"step must lie in (0, 0.1), got {self.step}")
        if self.order != 2:
            raise ValueError("only second-order central differences are supported")


def _steps(v, step):
    return step * np.maximum(1.0, np.abs(v))


def _stencil_value(spec, x, coords, fn):
    msg = spec._violation(x, 0.0)
    if msg:
        raise DomainError(f"stencil point along coordinate(s) {coords} leaves the cone: {msg}", spec.family.value)
    return fn(x)


def fd_gradient(spec: NormSpec, v, cfg: FDConfig = FDConfig()) -> np.ndarray:
    """Central-difference approximation of ``dF/dv^i``."""
    v = check_domain(spec, v)
    h = _steps(v, cfg.step)
    out = np.empty_like(v)
    x = v.copy()
    for i in range(v.shape[0]):
        x[i] = v[i] + h[i]
        fp = _stencil_value(spec, x, f"v{i}", spec._value)
        x[i] = v[i] - h[i]
        fm = _stencil_value(spec, x, f"v{i}", spec._value)
        x[i] = v[i]
        out[i] = (fp - fm) / (2.0 * h[i])
    return out


def fd_fundamental_tensor(spec: NormSpec, v, cfg: FDConfig = FDConfig(step=HESSIAN_STEP)) -> SymTensor:
    """Central-difference Hessian of ``F^2 / 2``.

    Diagonal entries use the three-point second difference; off-diagonal
    entries the four-point mixed-partial stencil.
    """
    v = check_domain(spec, v)
    n = v.shape[0]
    h = _steps(v, cfg.step)

    def half_sq(x):
        return 0.5 * spec._value(x) ** 2

    f0 = half_sq(v)
    hess = np.empty((n, n))
    x = v.copy()
    for i in range(n):
        x[i] = v[i] + h[i]
        fp = _stencil_value(spec, x, f"v{i}", half_sq)
        x[i] = v[i] - h[i]
        fm = _stencil_value(spec, x, f"v{i}", half_sq)
        x[i] = v[i]
        hess[i, i] = (fp - 2.0 * f0 + fm) / (h[i] * h[i])
        for j in range(i + 1, n):
            where = f"v{i},v{j}"
            vals = []
            for si, sj in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
                x[i] = v[i] + si * h[i]
                x[j] = v[j] + sj * h[j]
                vals.append(_stencil_value(spec, x, where, half_sq))
            x[i] = v[i]
            x[j] = v[j]
            hess[i, j] = hess[j, i] = (vals[0] - vals[1] - vals[2] + vals[3]) / (4.0 * h[i] * h[j])
    return SymTensor(hess, ref_vector=v)


def hessian_F(spec: NormSpec, v) -> SymTensor:
    """``F_ij(v) = (g_ij(v) - F_i(v) F_j(v)) / F(v)``."""
    v = check_domain(spec, v)
    f = spec._value(v)
    grad = spec._gradient(v)
    return SymTensor((spec._tensor(v) - np.outer(grad, grad)) / f, ref_vector=v)


def differential(spec: NormSpec, v, w, rel_tol=1e-9) -> float:
    """``dF_v(w) = F_i(v) w^i``, cross-checked against ``g_v(v, w) / F(v)``."""
    v = check_domain(spec, v)
    w = as_vector(w, "w")
    if w.shape[0] != spec.dim:
        raise ValueError(f"w must have {spec.dim} components, got {w.shape[0]}")
    direct = float(spec._gradient(v) @ w)
    via_tensor = float(v @ spec._tensor(v) @ w) / spec._value(v)
    scale = 1.0 + abs(direct) + float(np.max(np.abs(w)))
    if abs(direct - via_tensor) > rel_tol * scale:
        raise InvariantError(
            f"dF_v(w) = {direct!r} disagrees with g_v(v,w)/F(v) = {via_tensor!r} for {spec.family.value}"
        )
    return direct


def integrate_unit_interval(f, n_panels: int = DEFAULT_PANELS) -> float:
    """Composite Simpson rule for ``int_0^1 f(t) dt`` on ``n_panels`` (even) panels."""
    if isinstance(n_panels, bool) or int(n_panels) != n_panels or n_panels < 2 or n_panels % 2:
        raise ValueError(f"n_panels must be an even integer >= 2, got {n_panels!r}")
    n_panels = int(n_panels)
    h = 1.0 / n_panels
    values = [f(i * h) for i in range(n_panels + 1)]
    for i, y in enumerate(values):
        if not math.isfinite(y):
            raise EvaluationError(f"integrand is not finite at t = {i * h!r}")
    odd = math.fsum(values[1:-1:2])
    even = math.fsum(values[2:-1:2])
    return h / 3.0 * (values[0] + 4.0 * odd + 2.0 * even + values[-1])
