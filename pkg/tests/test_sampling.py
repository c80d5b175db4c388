import numpy as np
import pytest

from finsler_ineq.errors import SamplingExhaustedError
from finsler_ineq.norms import EuclideanP, MinkowskiBilinear, PPseudoNorm, domain_contains, evaluate
from finsler_ineq.sampling import (
    SampleConfig,
    collinear_indices,
    draw_one,
    export_lines,
    load_lines,
    sample_domain,
    sample_pairs,
    substream,
)


def test_samples_respect_margin_and_scale(any_spec):
    cfg = SampleConfig(seed=11, count=40)
    for v in sample_domain(any_spec, cfg):
        assert domain_contains(any_spec, v, cfg.margin)
        assert 0.5 - 1e-12 <= evaluate(any_spec, v) <= 2.0 + 1e-12


def test_sampling_is_deterministic(any_spec):
    cfg = SampleConfig(seed=3, count=5)
    a = sample_domain(any_spec, cfg)
    b = sample_domain(any_spec, cfg)
    assert all(np.array_equal(x, y) for x, y in zip(a, b))


def test_sample_index_is_independent_of_count():
    spec = MinkowskiBilinear(4)
    short = sample_domain(spec, SampleConfig(seed=9, count=3))
    long = sample_domain(spec, SampleConfig(seed=9, count=30))
    assert all(np.array_equal(x, y) for x, y in zip(short, long))
    assert np.array_equal(draw_one(spec, SampleConfig(seed=9, count=1), 17), long[17])


def test_seed_changes_samples():
    spec = MinkowskiBilinear(3)
    a = sample_domain(spec, SampleConfig(seed=1, count=4))
    b = sample_domain(spec, SampleConfig(seed=2, count=4))
    assert not any(np.array_equal(x, y) for x, y in zip(a, b))


def test_substreams_differ_by_name_and_index():
    a = substream(5, "v", 0).random()
    assert a != substream(5, "w", 0).random()
    assert a != substream(5, "v", 1).random()
    assert a == substream(5, "v", 0).random()


@pytest.mark.parametrize("count, fraction, expected", [(100, 0.05, 5), (200, 0.05, 10), (7, 0.0, 0), (9, 1.0, 9), (10, 1 / 3, 3)])
def test_collinear_indices_count(count, fraction, expected):
    idx = collinear_indices(count, fraction)
    assert len(idx) == expected
    assert idx == sorted(set(idx))


def test_pairs_collinear_fraction():
    spec = MinkowskiBilinear(3)
    cfg = SampleConfig(seed=4, count=60)
    pairs = sample_pairs(spec, cfg)
    colin = set(collinear_indices(60, 0.05))
    for i, (v, w) in enumerate(pairs):
        dev = np.max(np.abs(v / evaluate(spec, v) - w / evaluate(spec, w)))
        assert (dev <= 1e-12) == (i in colin)
        assert domain_contains(spec, w, cfg.margin)


def test_sampler_covers_the_cone():
    # points should approach the margin and also reach deep inside
    spec = MinkowskiBilinear(2)
    vs = np.array(sample_domain(spec, SampleConfig(seed=0, count=400)))
    ratio = np.abs(vs[:, 1]) / vs[:, 0]
    assert ratio.max() > 0.9 and ratio.min() < 0.05
    assert (vs[:, 1] > 0).any() and (vs[:, 1] < 0).any()


def test_p_pseudo_spatial_floor():
    spec = PPseudoNorm(3, 1.5)
    for v in sample_domain(spec, SampleConfig(seed=2, count=50, margin=0.1)):
        assert np.all(v[1:] >= 0.1 * np.max(np.abs(v)))


def test_export_load_roundtrip():
    spec = EuclideanP(4, 3)
    cfg = SampleConfig(seed=8, count=6, margin=0.02)
    pairs = sample_pairs(spec, cfg)
    text = export_lines(spec, cfg, pairs)
    spec2, cfg2, pairs2 = load_lines(text)
    assert spec2 == spec and cfg2 == cfg
    for (v, w), (v2, w2) in zip(pairs, pairs2):
        assert np.array_equal(v, v2) and np.array_equal(w, w2)
    assert text.count("\n") == 7


def test_export_points_roundtrip():
    spec = MinkowskiBilinear(2)
    cfg = SampleConfig(seed=1, count=3)
    _, _, pts = load_lines(export_lines(spec, cfg, sample_domain(spec, cfg)))
    assert all(isinstance(p, np.ndarray) for p in pts)


@pytest.mark.parametrize(
    "kw",
    [
        {"count": 0},
        {"count": 2.5},
        {"seed": -1},
        {"margin": 0.5},
        {"margin": -0.1},
        {"scale_range": (2.0, 1.0)},
        {"scale_range": (0.0, 1.0)},
        {"collinear_fraction": 1.5},
    ],
)
def test_config_validation(kw):
    base = {"seed": 0, "count": 1}
    base.update(kw)
    with pytest.raises(ValueError):
        SampleConfig(**base)


def test_config_rejects_unknown_fields():
    with pytest.raises(ValueError, match="unknown"):
        SampleConfig.from_dict({"seed": 0, "count": 1, "colour": "red"})


def test_exhausted_budget_raises(monkeypatch):
    import finsler_ineq.sampling as sampling

    monkeypatch.setattr(sampling, "REJECTION_BUDGET", 5)
    monkeypatch.setattr(sampling, "_raw_draw", lambda spec, rng, m: None)
    with pytest.raises(SamplingExhaustedError):
        sampling.draw_one(MinkowskiBilinear(2), SampleConfig(seed=0, count=1), 0)


def test_norm_values_cover_scale_range():
    # 10,000 samples per family; F(v) must reach both ends of scale_range
    from conftest import catalog

    seen = set()
    for spec in catalog(5):
        if spec.family in seen:
            continue
        seen.add(spec.family)
        cfg = SampleConfig(seed=21, count=10_000)
        vals = np.array([evaluate(spec, v) for v in sample_domain(spec, cfg)])
        assert vals.min() <= 0.5 + 0.01 and vals.max() >= 2.0 * 0.9
    assert len(seen) == 9


def test_no_accidental_collinear_pairs_without_fraction():
    from finsler_ineq.inequalities import normalized_difference

    spec = MinkowskiBilinear(3)
    pairs = sample_pairs(spec, SampleConfig(seed=2, count=300, collinear_fraction=0.0))
    assert min(normalized_difference(spec, v, w) for v, w in pairs) > 1e-8
