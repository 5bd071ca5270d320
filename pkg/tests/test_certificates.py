import math

import numpy as np
import pytest

from framelab import (
    Ch2Violated,
    INF,
    PerturbationContext,
    PerturbationSpec,
    TheoremContradiction,
    canonical_dual,
    cert_atomic_stability,
    cert_casazza_christensen,
    cert_christensen,
    cert_mixed_norm,
    cert_schur_localized,
    frame_bounds,
    gen_exp_localized,
    gen_onb,
    gen_union_onb,
    implication_chain,
    perturb,
)
from framelab.frames import parseval_normalization

from conftest import random_frame

ALL_CERTS = (
    cert_christensen,
    cert_mixed_norm,
    cert_casazza_christensen,
    cert_schur_localized,
)


def make_ctx(f, e, g=None):
    """Context with a tight (Parseval) localization reference by default."""
    pair = canonical_dual(parseval_normalization(f) if g is None else g)
    return PerturbationContext(reference=f, perturbed=e, localization_pair=pair)


def bumped_onb(d=2, delta=0.1):
    f = gen_onb(d)
    vectors = f.vectors.copy()
    vectors[0, 1] += delta
    return f, f.replace_vectors(vectors)


class TestDegeneracy:
    def test_identity_perturbation_reproduces_bounds(self, rng):
        f = random_frame(rng, 4, 7)
        ctx = make_ctx(f, f)
        b = frame_bounds(f)
        for cert in ALL_CERTS:
            rep = cert(ctx)
            assert rep.hypothesis_holds, rep.certificate_id
            assert rep.predicted_bounds.lower == pytest.approx(b.lower, abs=1e-10)
            assert rep.predicted_bounds.upper == pytest.approx(b.upper, abs=1e-10)
            assert rep.actual_bounds.lower == pytest.approx(b.lower, abs=1e-10)
            assert rep.actual_bounds.upper == pytest.approx(b.upper, abs=1e-10)
            assert rep.bracketing_ok

    def test_atomic_identity_perturbation(self):
        f = gen_union_onb(3)
        rep = cert_atomic_stability(make_ctx(f, f), p_list=(1, 2, INF))
        assert rep.hypothesis_holds
        assert rep.bracketing_ok
        for p, (lo, hi) in rep.predicted_per_p.items():
            act = rep.actual_per_p[p]
            assert act.lower == pytest.approx(lo, abs=1e-10)
            assert act.upper == pytest.approx(hi, abs=1e-10)


class TestChristensen:
    def test_bump_example(self):
        f, e = bumped_onb(delta=0.1)
        rep = cert_christensen(make_ctx(f, e))
        assert rep.hypothesis_values["R"] == pytest.approx(0.01, abs=1e-14)
        assert rep.hypothesis_holds
        assert rep.predicted_bounds.lower == pytest.approx(0.81, abs=1e-12)
        assert rep.actual_bounds.lower >= 0.81 - 1e-12
        assert rep.bracketing_ok

    def test_upper_bound_forms_recorded(self):
        f, e = bumped_onb(delta=0.1)
        rep = cert_christensen(make_ctx(f, e))
        hv = rep.hypothesis_values
        assert hv["upper_plus_form"] == pytest.approx(1.1**2, abs=1e-12)
        assert hv["upper_printed_form"] == pytest.approx(0.9**2, abs=1e-12)
        assert rep.predicted_bounds.upper == hv["upper_plus_form"]

    def test_gate_rejects_large_r(self):
        f = gen_onb(2)
        e = f.replace_vectors(f.vectors + np.full((2, 2), 1.0))
        rep = cert_christensen(make_ctx(f, e))
        assert rep.hypothesis_values["R"] >= rep.hypothesis_values["A"]
        assert not rep.hypothesis_holds
        assert rep.predicted_bounds is None
        assert rep.bracketing_ok  # vacuous

    def test_monotone_in_magnitude(self):
        f = gen_union_onb(2)
        lowers = []
        for t in (1.0, 0.5, 0.25, 0.1):
            e = perturb(f, PerturbationSpec("additive_noise", 0.4 * t, seed=6))
            rep = cert_christensen(make_ctx(f, e))
            assert rep.hypothesis_values["R"] == pytest.approx(
                f.size * (0.4 * t) ** 2, abs=1e-12
            )
            lowers.append(rep.predicted_bounds.lower)
        assert all(x <= y + 1e-12 for x, y in zip(lowers, lowers[1:]))


class TestMixedNorm:
    def test_bump_example(self):
        f, e = bumped_onb(delta=0.05)
        rep = cert_mixed_norm(make_ctx(f, e, g=gen_onb(2)))
        assert rep.hypothesis_values["m1"] == pytest.approx(0.05, abs=1e-14)
        assert rep.hypothesis_values["minf"] == pytest.approx(0.05, abs=1e-14)
        assert rep.hypothesis_values["eps"] == pytest.approx(0.05, abs=1e-14)
        assert rep.predicted_bounds.lower == pytest.approx(0.9025, abs=1e-12)
        assert rep.actual_bounds.lower >= rep.predicted_bounds.lower - 1e-12
        assert rep.bracketing_ok

    def test_gate_rejects_large_eps(self):
        f = gen_onb(2)
        e = f.replace_vectors(f.vectors + np.full((2, 2), 2.0))
        rep = cert_mixed_norm(make_ctx(f, e))
        assert rep.hypothesis_values["eps"] >= math.sqrt(
            rep.hypothesis_values["A"]
        )
        assert not rep.hypothesis_holds
        assert rep.predicted_bounds is None

    def test_brackets_with_tight_localization_reference(self, rng):
        for seed in range(20):
            f = random_frame(np.random.default_rng(seed), 4, 8)
            e = perturb(f, PerturbationSpec("additive_noise", 0.02, seed=seed))
            rep = cert_mixed_norm(make_ctx(f, e))
            if rep.hypothesis_holds:
                assert rep.bracketing_ok


class TestCasazzaChristensen:
    def test_auto_bump(self):
        f, e = bumped_onb(delta=0.05)
        rep = cert_casazza_christensen(make_ctx(f, e))
        assert rep.hypothesis_values["lambda"] == 0.0
        assert rep.hypothesis_values["mu"] == pytest.approx(0.05, abs=1e-12)
        assert rep.predicted_bounds.lower == pytest.approx(0.9025, abs=1e-10)
        assert rep.bracketing_ok
        assert "auto" in rep.notes

    def test_boundary_gate(self):
        f = gen_onb(3)
        rep = cert_casazza_christensen(make_ctx(f, f), lam=1.0, mu=0.0)
        assert rep.hypothesis_values["gate"] == pytest.approx(1.0)
        assert not rep.hypothesis_holds

    def test_explicit_constants_validated(self):
        f, e = bumped_onb(delta=0.05)
        rep = cert_casazza_christensen(make_ctx(f, e), lam=0.0, mu=0.06)
        assert rep.hypothesis_holds
        assert "explicit" in rep.notes

    def test_explicit_constants_refuted(self):
        f, e = bumped_onb(delta=0.2)
        with pytest.raises(Ch2Violated):
            cert_casazza_christensen(make_ctx(f, e), lam=0.0, mu=1e-4)

    def test_half_supplied_constants_rejected(self):
        f = gen_onb(2)
        with pytest.raises(ValueError):
            cert_casazza_christensen(make_ctx(f, f), lam=0.5)
        with pytest.raises(ValueError):
            cert_casazza_christensen(make_ctx(f, f), lam=-0.1, mu=0.1)

    def test_mu_below_sqrt_r(self, rng):
        # auto mode is never weaker than the quadratic-sum certificate
        for seed in range(20):
            f = random_frame(np.random.default_rng(seed), 3, 6)
            e = perturb(f, PerturbationSpec("additive_noise", 0.05, seed=seed))
            ctx = make_ctx(f, e)
            r = cert_christensen(ctx).hypothesis_values["R"]
            mu = cert_casazza_christensen(ctx).hypothesis_values["mu"]
            assert mu <= math.sqrt(r) + 1e-10


class TestSchurLocalized:
    def test_bump_example(self):
        f, e = bumped_onb(delta=0.1)
        rep = cert_schur_localized(make_ctx(f, e, g=gen_onb(2)))
        assert rep.hypothesis_values["eps"] == pytest.approx(0.1, abs=1e-14)
        assert rep.hypothesis_values["gamma"] == pytest.approx(1.0)
        assert rep.predicted_bounds.lower == pytest.approx(0.81, abs=1e-12)
        assert rep.bracketing_ok

    def test_dense_perturbation_fails_gate(self, rng):
        f = gen_onb(8)
        e = f.replace_vectors(f.vectors + 0.5 * rng.random(size=(8, 8)))
        rep = cert_schur_localized(make_ctx(f, e))
        assert not rep.hypothesis_holds

    def test_weighted_diagnostic_added(self):
        from framelab import SchurWeight

        f, e = bumped_onb(delta=0.05)
        rep = cert_schur_localized(make_ctx(f, e), w=SchurWeight(1.0))
        assert "eps_s1" in rep.hypothesis_values

    def test_brackets_on_localized_family(self):
        for seed in range(10):
            f = gen_exp_localized(6, 12, 0.4, seed=seed)
            e = perturb(f, PerturbationSpec("additive_noise", 0.02, seed=seed))
            rep = cert_schur_localized(make_ctx(f, e))
            if rep.hypothesis_holds:
                assert rep.bracketing_ok


class TestNonFrameHandling:
    def test_failed_hypothesis_with_collapsed_system(self):
        f = gen_onb(2)
        e = f.replace_vectors(np.array([[1.0, 0.0], [1.0, 0.0]]))
        for cert in ALL_CERTS:
            rep = cert(make_ctx(f, e))
            assert not rep.hypothesis_holds, rep.certificate_id
            assert rep.actual_bounds is None
            assert rep.bracketing_ok

    def test_contradiction_sentinel_raises(self):
        # exercise the sentinel path directly: a certificate whose hypothesis
        # held must never see the perturbed system fail the frame test
        from framelab.certificates import _actual_bounds_or_contradiction

        f = gen_onb(2)
        e = f.replace_vectors(np.array([[1.0, 0.0], [1.0, 0.0]]))
        ctx = make_ctx(f, e)
        with pytest.raises(TheoremContradiction):
            _actual_bounds_or_contradiction(ctx, True, "synthetic")
        assert _actual_bounds_or_contradiction(ctx, False, "synthetic") is None


class TestImplicationChain:
    def test_identity_perturbation(self):
        f = gen_onb(3)
        rep = implication_chain(make_ctx(f, f), eps=0.1)
        assert rep.q_i == rep.q_ii == 0.0
        assert rep.i_holds and rep.ii_holds
        assert rep.implication_i_ii_ok and rep.implication_ii_iii_ok
        assert rep.sampled_iii_ok

    def test_bump(self):
        f, e = bumped_onb(delta=0.07)
        rep = implication_chain(make_ctx(f, e, g=gen_onb(2)), eps=0.07)
        assert rep.q_i == pytest.approx(0.07, abs=1e-14)
        assert rep.q_ii == pytest.approx(0.07, abs=1e-14)
        assert rep.gamma == pytest.approx(1.0)
        assert rep.i_holds and rep.sampled_iii_ok

    def test_random_trials_respect_ordering(self):
        eps = 0.3
        for seed in range(20):
            f = gen_exp_localized(5, 10, 0.4, seed=seed)
            e = perturb(f, PerturbationSpec("additive_noise", 0.01, seed=seed))
            ctx = make_ctx(f, e)
            rep = implication_chain(ctx, eps=eps, seed=seed)
            assert rep.implication_i_ii_ok
            assert rep.implication_ii_iii_ok

    def test_hypothesis_gate_can_fail_without_breaking_chain(self):
        f, e = bumped_onb(delta=0.5)
        rep = implication_chain(make_ctx(f, e), eps=0.01)
        assert not rep.i_holds
        assert rep.implication_i_ii_ok  # vacuous


class TestAtomicStability:
    def test_bump_p2(self):
        f, e = bumped_onb(delta=0.1)
        rep = cert_atomic_stability(make_ctx(f, e, g=gen_onb(2)), p_list=(2,))
        hv = rep.hypothesis_values
        assert hv["A_2"] == pytest.approx(1.0, abs=1e-10)
        assert hv["B_2"] == pytest.approx(1.0, abs=1e-10)
        assert hv["eps"] == pytest.approx(0.1, abs=1e-14)
        lo, hi = rep.predicted_per_p[2.0]
        assert lo == pytest.approx(1 / 1.1, abs=1e-10)
        assert hi == pytest.approx(1 / 0.9, abs=1e-10)
        assert rep.bracketing_ok

    def test_gate_rejects_large_eps(self):
        f = gen_onb(2)
        e = f.replace_vectors(f.vectors + np.full((2, 2), 3.0))
        rep = cert_atomic_stability(make_ctx(f, e), p_list=(2,))
        assert not rep.hypothesis_holds
        assert rep.predicted_per_p is None

    def test_reports_perturbed_gramian_norm(self):
        f, e = bumped_onb(delta=0.05)
        rep = cert_atomic_stability(make_ctx(f, e), p_list=(2,))
        assert rep.hypothesis_values["gamma_E"] > 0
        assert rep.hypothesis_values["F_localization_degree"] > 0

    def test_intermediate_bound_flag_set(self):
        f, e = bumped_onb(delta=0.05)
        rep = cert_atomic_stability(make_ctx(f, e), p_list=(1, 2, INF))
        assert rep.hypothesis_values["intermediate_bound_ok"] == 1.0

    def test_collapsed_system_reports_failure(self):
        f = gen_onb(2)
        e = f.replace_vectors(np.array([[5.0, 0.0], [5.0, 0.0]]))
        rep = cert_atomic_stability(make_ctx(f, e), p_list=(2,))
        assert not rep.hypothesis_holds
        assert "not a frame" in rep.notes


def test_shape_mismatch_rejected():
    from framelab import ShapeMismatch

    f = gen_onb(2)
    other = gen_onb(3)
    with pytest.raises(ShapeMismatch):
        make_ctx(f, other)
