import numpy as np
import pytest

from framelab import (
    IndexGeometry,
    SchurWeight,
    canonical_dual,
    check_dual_localization,
    cross_gramian,
    decay_profile,
    gen_exp_localized,
    gen_onb,
    gen_union_onb,
    gramian,
    localization_degree,
    schur_norm,
)
from framelab.localization import GramianMatrix

from conftest import random_frame


def geometric_matrix(n=3, base=2.0):
    k = np.arange(n)
    return base ** (-np.abs(k[:, None] - k[None, :]))


class TestSchurNorm:
    def test_identity_any_s(self):
        for s in (0.0, 1.0, 2.5):
            assert schur_norm(np.eye(5), SchurWeight(s)) == 1.0

    def test_worked_example_s0(self):
        # middle row: 1/2 + 1 + 1/2
        assert schur_norm(geometric_matrix()) == pytest.approx(2.0, abs=1e-12)

    def test_worked_example_s1(self):
        # middle row weighted: (1/2)*2 + 1*1 + (1/2)*2
        val = schur_norm(geometric_matrix(), SchurWeight(1.0))
        assert val == pytest.approx(3.0, abs=1e-12)

    def test_positions_respected(self):
        m = GramianMatrix(
            entries=np.array([[0.0, 1.0], [1.0, 0.0]]),
            row_positions=np.array([0, 10]),
            col_positions=np.array([0, 10]),
        )
        assert schur_norm(m, SchurWeight(1.0)) == pytest.approx(11.0)

    def test_circular_geometry_wraps(self):
        m = GramianMatrix(
            entries=np.array([[0.0, 1.0], [1.0, 0.0]]),
            row_positions=np.array([0, 7]),
            col_positions=np.array([0, 7]),
        )
        geom = IndexGeometry.circular(8)
        assert schur_norm(m, SchurWeight(1.0), geom) == pytest.approx(2.0)

    def test_submultiplicative(self, rng):
        # Banach-algebra law over both geometries and several weights
        for seed in range(50):
            gen = np.random.default_rng(seed)
            n = int(gen.integers(2, 10))
            a = gen.normal(size=(n, n)) + 1j * gen.normal(size=(n, n))
            b = gen.normal(size=(n, n)) + 1j * gen.normal(size=(n, n))
            for s in (0.0, 1.0, 2.0):
                for geom in (IndexGeometry.linear(), IndexGeometry.circular(n)):
                    w = SchurWeight(s)
                    lhs = schur_norm(a @ b, w, geom)
                    rhs = schur_norm(a, w, geom) * schur_norm(b, w, geom)
                    assert lhs <= rhs + 1e-10 * max(1.0, rhs)

    def test_involution_invariance(self, rng):
        for _ in range(50):
            a = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
            for s in (0.0, 1.5):
                assert schur_norm(a.conj().T, SchurWeight(s)) == pytest.approx(
                    schur_norm(a, SchurWeight(s)), abs=1e-12
                )

    def test_solidity(self, rng):
        for _ in range(50):
            a = rng.normal(size=(7, 7)) + 1j * rng.normal(size=(7, 7))
            mask = rng.random(size=(7, 7))
            b = a * mask  # |b_kl| <= |a_kl| entrywise
            for s in (0.0, 2.0):
                assert schur_norm(b, SchurWeight(s)) <= schur_norm(
                    a, SchurWeight(s)
                ) + 1e-10

    def test_monotone_in_s(self, rng):
        for _ in range(50):
            a = rng.normal(size=(5, 5))
            values = [schur_norm(a, SchurWeight(s)) for s in (0.0, 0.5, 1.0, 2.0)]
            assert all(x <= y + 1e-12 for x, y in zip(values, values[1:]))

    def test_bounds_lp_operator_norm(self, rng):
        # property (A0): the unweighted norm dominates every induced p-norm
        for _ in range(50):
            a = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
            bound = schur_norm(a)
            x = rng.normal(size=6) + 1j * rng.normal(size=6)
            for p in (1, 2, np.inf):
                lhs = np.linalg.norm(a @ x, ord=p)
                assert lhs <= bound * np.linalg.norm(x, ord=p) + 1e-10


class TestLocalizationDegree:
    def test_onb_self(self):
        f = gen_onb(4)
        assert localization_degree(f, f) == pytest.approx(1.0)

    def test_matches_brute_force(self):
        f = gen_exp_localized(8, 16, 0.5, seed=3)
        g = cross_gramian(f, f)
        val = localization_degree(f, f, SchurWeight(0.0), f.geometry)
        mags = np.abs(g.entries)
        brute = max(mags.sum(axis=1).max(), mags.sum(axis=0).max())
        assert val == pytest.approx(brute, abs=1e-12)

    def test_tight_frame_dual_scaling(self):
        f = gen_union_onb(3)
        pair = canonical_dual(f)
        # dual of a tight frame with A = 2 is the frame scaled by 1/2
        assert localization_degree(f, pair.dual) == pytest.approx(
            0.5 * schur_norm(gramian(f)), abs=1e-12
        )


class TestCheckDualLocalization:
    def test_onb_passes(self):
        rep = check_dual_localization(gen_onb(5), SchurWeight(1.0), threshold=1.5)
        assert rep.frame_norm == pytest.approx(1.0)
        assert rep.dual_norm == pytest.approx(1.0)
        assert rep.both_within

    def test_union_of_onbs(self):
        rep = check_dual_localization(
            gen_union_onb(4), SchurWeight(0.0), threshold=2.0
        )
        assert rep.frame_norm <= 2.0 + 1e-12
        assert rep.dual_norm <= 2.0 + 1e-12
        assert rep.both_within

    def test_exp_localized_reports_finite_values(self):
        f = gen_exp_localized(8, 16, 0.5, seed=1)
        rep = check_dual_localization(f, SchurWeight(1.0), f.geometry)
        assert np.isfinite(rep.frame_norm)
        assert np.isfinite(rep.dual_norm)
        assert rep.dual_norm > 0


class TestDecayProfile:
    def test_identity(self):
        prof = dict(decay_profile(np.eye(4)))
        assert prof[0] == 1.0
        assert all(prof[k] == 0.0 for k in prof if k >= 1)

    def test_geometric_matrix(self):
        prof = dict(decay_profile(geometric_matrix(5)))
        for k, v in prof.items():
            assert v == pytest.approx(2.0 ** (-k), abs=1e-15)

    def test_cauchy_schwarz_cap(self, rng):
        f = random_frame(rng, 4, 8)
        norms = np.linalg.norm(f.vectors, axis=1)
        cap = float(norms.max() ** 2)
        for _, v in decay_profile(gramian(f)):
            assert v <= cap + 1e-10
