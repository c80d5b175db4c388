import math

import numpy as np
import pytest

from finsler_ineq import inequalities as ineq
from finsler_ineq.errors import DomainError, InvariantError
from finsler_ineq.inequalities import Verdict
from finsler_ineq.linalg import SignatureClass
from finsler_ineq.norms import (
    BerwaldMoor,
    Bimetric,
    DegenerateMinkowski,
    EuclideanP,
    Kropina,
    MinkowskiBilinear,
    PPseudoNorm,
    Stationary,
)

ETA2 = MinkowskiBilinear(2)
H2 = np.diag([2.0, -1.0])
HOLDS, EQ, VIOLATED = Verdict.HOLDS, Verdict.HOLDS_WITH_EQUALITY, Verdict.VIOLATED


def test_report_verdict_bands():
    r = ineq.make_report("x", 1.0, 1.0 - 1e-12, strict=True, collinear=False)
    assert r.verdict is EQ and not r.strictness_ok
    assert ineq.make_report("x", 1.0, 0.9, strict=True, collinear=False).verdict is HOLDS
    assert ineq.make_report("x", 0.9, 1.0, strict=False, collinear=False).verdict is VIOLATED
    assert r.tol_used == pytest.approx(1e-9 * (1 + 1 + 1 - 1e-12))


def test_report_serialization_keys():
    d = ineq.check_fundamental(ETA2, [2, 1], [3, 1]).to_dict()
    assert list(d) == ["name", "lhs", "rhs", "slack", "verdict", "strict_expected", "collinear", "tol_used"]


# fundamental inequality


def test_fundamental_minkowski_example():
    r = ineq.check_fundamental(ETA2, [2, 1], [3, 1])
    assert r.lhs == pytest.approx(5 / math.sqrt(3), rel=1e-15)
    assert r.rhs == pytest.approx(math.sqrt(8), rel=1e-15)
    assert r.verdict is HOLDS and r.strict_expected and not r.collinear


def test_fundamental_degenerate_example():
    r = ineq.check_fundamental(DegenerateMinkowski(5, 2), [1, 0, 0, 1, 0], [1, 0, 0, 0, 1])
    assert abs(r.slack) <= 1e-12
    assert r.verdict is EQ and not r.collinear and not r.strict_expected
    assert r.strictness_ok


def test_fundamental_self_is_collinear_equality(any_spec):
    from finsler_ineq.sampling import SampleConfig, sample_domain

    v = sample_domain(any_spec, SampleConfig(seed=5, count=1))[0]
    r = ineq.check_fundamental(any_spec, v, v)
    assert r.verdict is EQ and r.collinear


def test_fundamental_positive_definite_orientation():
    spec = EuclideanP(2, 2)
    r = ineq.check_fundamental(spec, [3, 4], [4, 3])
    # F(w) - dF_v(w) = 5 - 24/5
    assert r.slack == pytest.approx(0.2, abs=1e-15)


def test_fundamental_domain_error():
    with pytest.raises(DomainError):
        ineq.check_fundamental(ETA2, [1, 2], [3, 1])


# reverse triangle and refinements


def test_reverse_triangle_examples():
    r = ineq.check_reverse_triangle(ETA2, [2, 1], [3, 1])
    assert r.slack == pytest.approx(math.sqrt(21) - math.sqrt(3) - math.sqrt(8), rel=1e-13)
    assert r.verdict is HOLDS
    r = ineq.check_reverse_triangle(ETA2, [2, 1], [6, 3])
    assert r.verdict is EQ and r.collinear


def test_triangle_positive_definite_mode():
    r = ineq.check_reverse_triangle(EuclideanP(2, 2), [3, 4], [4, 3])
    assert r.name == "triangle"
    assert r.slack == pytest.approx(10 - math.sqrt(98), rel=1e-14)


def test_reverse_triangle_sum_outside_cone_is_invariant_failure():
    class Broken(MinkowskiBilinear):
        def _violation(self, v, margin):
            if abs(v[0] - 5.0) < 1e-12:
                return "synthetic hole in the cone"
            return super()._violation(v, margin)

    with pytest.raises(InvariantError):
        ineq.check_reverse_triangle(Broken(2), [2, 1], [3, 1])


def test_scaled_refinement_frozen_chain():
    r1, r2 = ineq.check_scaled_refinement(ETA2, [2, 1], [3, 1], 1, 2)
    delta = 0.022097762640772615
    mid = 0.027293430034405460
    assert r1.lhs == pytest.approx(mid, rel=1e-12) and r1.rhs == pytest.approx(delta, rel=1e-12)
    assert r2.lhs == pytest.approx(2 * delta, rel=1e-12) and r2.rhs == pytest.approx(mid, rel=1e-12)
    assert r1.verdict is HOLDS and r2.verdict is HOLDS


def test_scaled_refinement_degenerate_cases():
    r1, r2 = ineq.check_scaled_refinement(ETA2, [2, 1], [3, 1], 1, 1)
    assert r1.verdict is EQ and r2.verdict is EQ
    for r in ineq.check_scaled_refinement(ETA2, [2, 1], [6, 3], 0.5, 3):
        assert abs(r.lhs) < 1e-14 and abs(r.rhs) < 1e-14


@pytest.mark.parametrize("a, b", [(0, 1), (-1, 1), (2, 1)])
def test_scaled_refinement_argument_errors(a, b):
    with pytest.raises(ValueError):
        ineq.check_scaled_refinement(ETA2, [2, 1], [3, 1], a, b)


def test_integral_refinement_minkowski_frozen():
    r1, r2 = ineq.check_integral_refinement(ETA2, [2, 1], [3, 1])
    assert r1.lhs == pytest.approx(4.57539048198654636, abs=1e-9)
    assert r1.rhs == pytest.approx(4.5604779323150674, rel=1e-14)
    assert r2.lhs == pytest.approx(math.sqrt(21), rel=1e-15)
    assert r1.verdict is HOLDS and r2.verdict is HOLDS


def test_integral_refinement_berwald_moor_frozen():
    exact = 4.68125461997201828
    r1, r2 = ineq.check_integral_refinement(BerwaldMoor(2), [1, 4], [4, 1])
    # 64 panels: quadrature error must sit inside the 1e-6 refinement allowance
    assert abs(r1.lhs - exact) <= 1e-6
    fine, _ = ineq.check_integral_refinement(BerwaldMoor(2), [1, 4], [4, 1], n_panels=1024)
    assert fine.lhs == pytest.approx(exact, abs=1e-11)
    assert r1.rhs == 4.0 and r2.lhs == pytest.approx(5.0)
    assert r1.verdict is HOLDS and r2.verdict is HOLDS


def test_integral_refinement_constant_integrand():
    r1, r2 = ineq.check_integral_refinement(ETA2, [2, 1], [2, 1])
    assert r1.verdict is EQ and r2.verdict is EQ


# classical reductions


def test_aczel_examples():
    r = ineq.check_aczel_classical([2, 1], [3, 1])
    assert r.slack == 1.0 and r.verdict is HOLDS and r.agrees
    r = ineq.check_aczel_classical([2, 1], [2, 1])
    assert r.verdict is EQ and r.collinear
    assert ineq.check_aczel_classical([1, 0], [1, 0.5]).slack == 0.25


def test_aczel_preconditions():
    with pytest.raises(DomainError):
        ineq.check_aczel_classical([-2, 1], [3, 1])
    with pytest.raises(DomainError):
        ineq.check_aczel_classical([1, 1], [3, 1])


def test_popoviciu_examples():
    r = ineq.check_popoviciu([2, 1], [3, 1], 2)
    assert r.slack == pytest.approx(5 - math.sqrt(24), rel=1e-14) and r.agrees
    # a = b is not an equality case for p != 2: equality needs b proportional to a^(1/(p-1))
    r = ineq.check_popoviciu([2, 1], [2, 1], 3)
    assert r.slack == pytest.approx(0.13965918231986320, rel=1e-12) and r.verdict is HOLDS
    # a = (4, 1) = b^(p-1) with b = (2, 1): this pair is the equality case
    r = ineq.check_popoviciu([4, 1], [2, 1], 3)
    assert r.verdict is EQ and r.collinear and r.agrees
    assert abs(r.slack) <= 1e-14


def test_popoviciu_domain():
    with pytest.raises(DomainError):
        ineq.check_popoviciu([1, 2], [3, 1], 2)
    with pytest.raises(ValueError):
        ineq.check_popoviciu([2, 1], [3, 1], 1.0)


def test_bellman_examples():
    r = ineq.check_bellman([2, 1], [3, 1], 2)
    assert r.slack == pytest.approx(math.sqrt(21) - math.sqrt(3) - math.sqrt(8), rel=1e-13)
    r = ineq.check_bellman([2, 1], [4, 2], 3)
    assert r.verdict is EQ
    r = ineq.check_bellman([2, 1], [3, 2], 3)
    assert r.slack == pytest.approx(0.029103460564112601, rel=1e-12)
    assert abs(r.slack - r.counterpart.slack) <= 1e-10 * (1 + abs(r.lhs) + abs(r.rhs))


def test_am_gm_examples():
    assert ineq.check_am_gm([1, 4]).slack == pytest.approx(0.5, abs=1e-15)
    assert ineq.check_am_gm([3, 3, 3]).verdict is EQ
    r = ineq.check_am_gm([1, 2, 4])
    assert r.slack == pytest.approx(1 / 3, abs=1e-14) and r.agrees
    with pytest.raises(DomainError):
        ineq.check_am_gm([1, 0])


def test_weighted_am_gm_examples():
    assert ineq.check_weighted_am_gm([0.5, 0.5], [1, 4]).slack == pytest.approx(0.5, abs=1e-15)
    r = ineq.check_weighted_am_gm([1, 0], [3, 7])
    assert r.verdict is EQ and r.agrees
    assert ineq.check_weighted_am_gm([1 / 3, 2 / 3], [1, 8]).slack == pytest.approx(17 / 3 - 4, rel=1e-14)


def test_weighted_am_gm_needs_normalized_weights():
    with pytest.raises(ValueError, match="normalize"):
        ineq.check_weighted_am_gm([1, 1], [1, 4])


def test_holder_minkowski_examples():
    holder, mink = ineq.check_holder_minkowski([3, 4], [4, 3], 2)
    assert holder.slack == pytest.approx(1.0, abs=1e-13)
    holder, _ = ineq.check_holder_minkowski([3, 4], [3, 4], 2)
    assert holder.verdict is EQ
    holder, mink = ineq.check_holder_minkowski([1, 1], [1, 2], 3)
    assert holder.slack == pytest.approx(0.30192724889462668, rel=1e-12)
    assert mink.slack == pytest.approx(0.068938562758187551, rel=1e-12)
    assert holder.agrees and mink.agrees


def test_kropina_examples():
    r = ineq.check_kropina([2, 1], [3, 1])
    assert r.slack == pytest.approx(1 / 6, abs=1e-14) and not r.strict_expected and r.agrees
    assert ineq.check_kropina([2, 1], [2, 1]).verdict is EQ
    assert ineq.check_kropina([1, 0], [2, 1]).slack == pytest.approx(0.5, abs=1e-15)


def test_bimetric_examples():
    assert ineq.check_bimetric([2, 0], [2, 0], H2).verdict is EQ
    r = ineq.check_bimetric([2, 1], [3, 1], H2)
    assert r.slack == pytest.approx(0.023793394442209286, rel=1e-12) and r.agrees
    r = ineq.check_bimetric([2, 0], [4, 0], H2)
    assert r.verdict is EQ and r.collinear


def test_bimetric_plane_matches_general_verdict():
    r = ineq.check_bimetric_plane([2, 1], [3, 1])
    assert r.verdict is HOLDS and r.agrees
    # even in each argument
    assert ineq.check_bimetric_plane([-2, -1], [3, 1]).slack == pytest.approx(r.slack)


# Finslerian Aczel


def test_finslerian_aczel_euclidean_example():
    e = EuclideanP(2, 2)
    r = ineq.finslerian_aczel(e, [3, 2, 1], [3, 1, 2])
    assert r.slack == pytest.approx(9.0, abs=1e-13) and r.agrees
    r = ineq.finslerian_aczel(e, [3, 2, 1], [6, 4, 2])
    assert r.verdict is EQ and r.collinear


def test_finslerian_aczel_rejects_axis():
    with pytest.raises(ValueError, match="v_vec"):
        ineq.finslerian_aczel(EuclideanP(2, 2), [3, 0, 0], [3, 1, 2])


def test_aczel_lemma_identity_examples():
    e = EuclideanP(2, 2)
    assert ineq.aczel_lemma_identity(e, [3, 2, 1], [3, 1, 2]) <= 1e-10 * 100
    assert ineq.aczel_lemma_identity(e, [3, 2, 1], [3, 2, 1]) <= 1e-12
    with pytest.raises(ValueError, match="w_vec"):
        ineq.aczel_lemma_identity(e, [3, 2, 1], [3, 0, 0])


def test_aczel_lemma_non_euclidean_base():
    base = EuclideanP(3, 3)
    v, w = [4.0, 1.0, 2.0, 1.5], [5.0, 2.0, 0.5, 1.0]
    assert ineq.aczel_lemma_identity(base, v, w, relative=True) <= 1e-10


def test_aczel_refinements_euclidean_example():
    r1, r2 = ineq.aczel_refinements(EuclideanP(2, 2), [3, 2, 1], [3, 1, 2])
    assert r1.lhs == pytest.approx(9.0) and r1.rhs == pytest.approx(7.2)
    assert r2.rhs == pytest.approx(1.8)
    assert r1.verdict is HOLDS and r2.verdict is HOLDS


def test_aczel_refinements_collinear():
    _, r2 = ineq.aczel_refinements(EuclideanP(2, 2), [3, 2, 1], [3, 2, 1])
    assert r2.verdict is EQ


def test_refinement_as_displayed_is_violated_on_the_example():
    r = ineq.aczel_refinement_as_displayed(EuclideanP(2, 2), [3, 2, 1], [3, 1, 2])
    assert r.rhs == pytest.approx(16.8) and r.verdict is VIOLATED


# m-th root metrics


def test_mth_root_examples():
    for spec, v in [
        (BerwaldMoor(3), [1, 1, 1]),
        (PPseudoNorm(2, 3), [2, 1]),
        (Bimetric(H2), [2, 0]),
    ]:
        sig_h, sig_g = ineq.mth_root_signature_transfer(spec, v)
        assert sig_h.cls is SignatureClass.LORENTZIAN and sig_g.cls is SignatureClass.LORENTZIAN
    sig_h, _ = ineq.mth_root_signature_transfer(BerwaldMoor(3), [1, 1, 1])
    assert np.allclose(sig_h.eigenvalues, [2, -1, -1])


def test_mth_root_rejects_other_families():
    with pytest.raises(ValueError):
        ineq.mth_root_signature_transfer(Kropina(2), [2, 1])


def test_mth_root_identity_failure_is_reported():
    class WrongDegree(BerwaldMoor):
        pass

    spec = WrongDegree(3)
    spec.root_degree = 4.0
    with pytest.raises(InvariantError):
        ineq.mth_root_signature_transfer(spec, [1, 2, 3])


def test_stationary_spec_accepted_as_aczel_base():
    spec = Stationary(EuclideanP(2, 2))
    assert ineq.finslerian_aczel(spec, [3, 2, 1], [3, 1, 2]).slack == pytest.approx(9.0)
