"""Reproducible samples strictly inside the cone of a norm.

Every draw comes from its own generator keyed by ``(seed, stream name,
sample index)``, so sample ``i`` can be regenerated on its own and adding a
new stream never shifts the values of an existing one.
"""

from __future__ import annotations

import functools
import json
import math
import zlib
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import SamplingExhaustedError
from .jsonio import dumps
from .linalg import jacobi_eigh
from .norms import (
    Bimetric,
    DegenerateMinkowski,
    EuclideanP,
    Kropina,
    MinkowskiBilinear,
    NormSpec,
    PPseudoNorm,
    Stationary,
    WeightedGeometric,
    domain_contains,
    spec_from_dict,
)

REJECTION_BUDGET = 10_000
MIN_ACCEPTANCE = 1e-4


@dataclass(frozen=True)
class SampleConfig:
    seed: int
    count: int
    margin: float = 0.05
    scale_range: tuple = (0.5, 2.0)
    collinear_fraction: float = 0.05

    def __post_init__(self):
        if isinstance(self.seed, bool) or int(self.seed) != self.seed or not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        if isinstance(self.count, bool) or int(self.count) != self.count or self.count < 1:
            raise ValueError(f"count must be an integer >= 1, got {self.count!r}")
        if not 0.0 <= self.margin < 0.5:
            raise ValueError(f"margin must lie in [0, 0.5), got {self.margin}")
        lo, hi = self.scale_range
        if not 0.0 < lo <= hi:
            raise ValueError(f"scale_range must satisfy 0 < min <= max, got {self.scale_range}")
        if not 0.0 <= self.collinear_fraction <= 1.0:
            raise ValueError(f"collinear_fraction must lie in [0, 1], got {self.collinear_fraction}")
        object.__setattr__(self, "scale_range", (float(lo), float(hi)))

    def to_dict(self):
        return {
            "seed": int(self.seed),
            "count": int(self.count),
            "margin": self.margin,
            "scale_range": list(self.scale_range),
            "collinear_fraction": self.collinear_fraction,
        }

    @classmethod
    def from_dict(cls, doc):
        unknown = set(doc) - {"seed", "count", "margin", "scale_range", "collinear_fraction"}
        if unknown:
            raise ValueError(f"unknown sample config fields: {sorted(unknown)}")
        kw = dict(doc)
        if "scale_range" in kw:
            kw["scale_range"] = tuple(kw["scale_range"])
        return cls(**kw)


def substream(seed: int, name: str, index: int) -> np.random.Generator:
    """Independent Philox generator for one ``(name, index)`` cell of a seed."""
    ss = np.random.SeedSequence(int(seed), spawn_key=(zlib.crc32(name.encode()), int(index)))
    return np.random.Generator(np.random.Philox(ss))


def _inflate(margin):
    # stay a hair inside the requested margin so the post-hoc check never sits on the boundary
    return max(margin * (1.0 + 1e-3), 1e-6)


def _ball(rng, n, radius):
    """Uniform point in the ``n``-ball of ``radius``."""
    d = rng.standard_normal(n)
    norm = math.sqrt(float(d @ d))
    while norm == 0.0:
        d = rng.standard_normal(n)
        norm = math.sqrt(float(d @ d))
    r = radius * rng.random() ** (1.0 / n)
    return d * (r / norm)


def _eta_cone(rng, dim, m):
    v = np.empty(dim)
    v[0] = 1.0
    v[1:] = _ball(rng, dim - 1, math.sqrt(1.0 - m))
    return v


@functools.lru_cache(maxsize=32)
def _eigenframe(g_bytes, n):
    g = np.frombuffer(g_bytes).reshape(n, n)
    vals, vecs = jacobi_eigh(g, want_vectors=True)
    tau = vecs[:, 0]
    pivot = 0 if abs(tau[0]) > 1e-12 else int(np.argmax(np.abs(tau) > 1e-12))
    if tau[pivot] < 0:
        tau = -tau
    return vals, vecs, tau


def _lorentz_cone(rng, g, m):
    vals, vecs, tau = _eigenframe(np.ascontiguousarray(g, dtype=float).tobytes(), g.shape[0])
    lam0 = vals[0]
    y = _ball(rng, g.shape[0] - 1, math.sqrt((1.0 - m) * lam0))
    return tau + vecs[:, 1:] @ (y / np.sqrt(-vals[1:]))


def _orthant(rng, dim, m):
    return rng.uniform(m, 1.0, dim)


def _p_pseudo(rng, spec: PPseudoNorm, m):
    n = spec.dim - 1
    u_min = m / (1.0 - m)
    u = u_min + rng.random()
    # keep every spatial component above m * v0 as well
    floor = m * ((2.0 + u_min) * n) ** (1.0 / spec.p)
    sp = rng.uniform(min(floor, 0.999), 1.0, n)
    v = np.empty(spec.dim)
    v[1:] = sp
    v[0] = math.exp((math.log1p(u) + math.log(math.fsum(sp**spec.p))) / spec.p)
    return v


def _raw_draw(spec: NormSpec, rng, m):
    """One candidate in the cone of ``spec`` before rescaling, or None to redraw."""
    if isinstance(spec, MinkowskiBilinear):
        return _lorentz_cone(rng, spec.g, m)
    if isinstance(spec, DegenerateMinkowski):
        v = rng.uniform(-1.0, 1.0, spec.dim)
        v[0] = 1.0
        v[1 : spec.k + 1] = _ball(rng, spec.k, math.sqrt(1.0 - m))
        return v
    if isinstance(spec, PPseudoNorm):
        return _p_pseudo(rng, spec, m)
    if isinstance(spec, EuclideanP):
        if spec.smooth_everywhere:
            return _ball(rng, spec.dim, 1.0)
        return _orthant(rng, spec.dim, m)
    if isinstance(spec, WeightedGeometric):
        return _orthant(rng, spec.dim, m)
    if isinstance(spec, Kropina):
        return _eta_cone(rng, spec.dim, m)
    if isinstance(spec, Bimetric):
        return _eta_cone(rng, spec.dim, m)
    if isinstance(spec, Stationary):
        sp = _raw_draw(spec.base, rng, m)
        fb = spec.base._value(sp)
        r_lo = 0.0
        if isinstance(spec.base, EuclideanP) and not spec.base.smooth_everywhere:
            # spatial components must also clear m * v0 = m * fb / r
            r_lo = m * fb / float(np.min(sp))
        r_hi = 1.0 - m
        if r_lo >= r_hi:
            return None
        r = r_hi - (r_hi - r_lo) * rng.random()
        v = np.empty(spec.dim)
        v[1:] = sp
        v[0] = fb / r
        return v
    raise TypeError(f"no sampler for {type(spec).__name__}")


def draw_one(spec: NormSpec, cfg: SampleConfig, index: int, stream="v", scale_stream="scale") -> np.ndarray:
    """Sample ``index`` of ``stream``: a cone point with ``F(v)`` uniform in ``scale_range``."""
    rng = substream(cfg.seed, stream, index)
    m = _inflate(cfg.margin)
    accepted = None
    for _ in range(REJECTION_BUDGET):
        v = _raw_draw(spec, rng, m)
        if v is not None and domain_contains(spec, v, cfg.margin):
            accepted = v
            break
    if accepted is None:
        raise SamplingExhaustedError(spec.family.value, REJECTION_BUDGET, index)
    lo, hi = cfg.scale_range
    s = substream(cfg.seed, scale_stream, index).uniform(lo, hi)
    return accepted * (s / spec._value(accepted))


def sample_domain(spec: NormSpec, cfg: SampleConfig) -> list:
    """``cfg.count`` vectors inside the cone with interior margin ``cfg.margin``."""
    return [draw_one(spec, cfg, i) for i in range(cfg.count)]


def collinear_indices(count: int, fraction: float) -> list:
    """Indices ``i`` with ``floor((i+1) f) > floor(i f)``: evenly spread, exactly ``floor(count f)`` of them."""
    f = Fraction(fraction).limit_denominator(10**9)
    return [i for i in range(count) if math.floor((i + 1) * f) > math.floor(i * f)]


def sample_pairs(spec: NormSpec, cfg: SampleConfig) -> list:
    """``cfg.count`` pairs ``(v, w)``; a ``collinear_fraction`` of them have ``w`` a positive multiple of ``v``."""
    collinear = set(collinear_indices(cfg.count, cfg.collinear_fraction))
    lo, hi = cfg.scale_range
    out = []
    for i in range(cfg.count):
        v = draw_one(spec, cfg, i, "v", "scale")
        if i in collinear:
            s = substream(cfg.seed, "scale_w", i).uniform(lo, hi)
            w = v * (s / spec._value(v))
        else:
            w = draw_one(spec, cfg, i, "w", "scale_w")
        out.append((v, w))
    return out


# ---------------------------------------------------------------------------
# replay format: one JSON object per line


def export_lines(spec: NormSpec, cfg: SampleConfig, samples) -> str:
    lines = [dumps({"family": spec.family.value, "spec": spec.to_dict(), "config": cfg.to_dict()})]
    for i, item in enumerate(samples):
        rec = {"index": i, "seed": int(cfg.seed)}
        if isinstance(item, tuple):
            rec["v"] = item[0].tolist()
            rec["w"] = item[1].tolist()
        else:
            rec["v"] = item.tolist()
        lines.append(dumps(rec))
    return "\n".join(lines) + "\n"


def load_lines(text: str):
    """Inverse of :func:`export_lines`: returns ``(spec, cfg, samples)``."""
    rows = [json.loads(line) for line in text.splitlines() if line.strip()]
    if not rows:
        raise ValueError("empty sample file")
    head = rows[0]
    spec = spec_from_dict(head["spec"])
    cfg = SampleConfig.from_dict(head["config"])
    samples = []
    for rec in rows[1:]:
        v = np.array(rec["v"], dtype=float)
        samples.append((v, np.array(rec["w"], dtype=float)) if "w" in rec else v)
    return spec, cfg, samples
