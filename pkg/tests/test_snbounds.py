import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gsnw import snbounds
from gsnw.errors import InputError
from gsnw.params import WitnessParams
from gsnw.snbounds import SymTridiagonal

PN = WitnessParams("N", 0.5, 0.5, -0.6)
PP = WitnessParams("P", 0.5, 0.5, 0.6)
G2_N = 2.0 - math.sqrt(1.36)  # 0.833810


def dense_min(t):
    return float(np.linalg.eigvalsh(t.dense())[0])


def valid_params(family):
    @st.composite
    def build(draw):
        w1 = draw(st.floats(0.05, 0.95))
        w2 = 1.0 - w1
        frac = draw(st.floats(-0.99, 0.99))
        return WitnessParams(family, w1, w2, frac * 2.0 * math.sqrt(w1 * w2))

    return build()


class TestTridiagonals:
    def test_n_examples(self):
        t = snbounds.tridiag_n(1, PN)
        assert t.diag.tolist() == [0.0] and t.offdiag.size == 0
        t = snbounds.tridiag_n(2, PN)
        assert t.diag.tolist() == [0.0, 2.0] and t.offdiag.tolist() == [-0.6]
        t = snbounds.tridiag_n(3, PN)
        assert t.diag.tolist() == [0.0, 2.0, 4.0]
        assert t.offdiag == pytest.approx([-0.6, -1.2], abs=1e-15)

    def test_p_examples(self):
        assert snbounds.tridiag_p(1, PP).diag.tolist() == [0.0]
        t = snbounds.tridiag_p(2, PP)
        assert t.diag.tolist() == [1.0, 1.0] and t.offdiag.tolist() == [0.6]
        t = snbounds.tridiag_p(3, WitnessParams("P", 0.3, 0.7, 0.5))
        assert t.diag == pytest.approx([2.8, 2.0, 1.2], abs=1e-15)
        assert t.offdiag == pytest.approx([math.sqrt(2) * 0.5] * 2, abs=1e-15)

    def test_validation(self):
        with pytest.raises(InputError):
            SymTridiagonal([1.0, 2.0], [])
        with pytest.raises(InputError):
            SymTridiagonal([], [])
        with pytest.raises(InputError):
            SymTridiagonal([1.0, np.inf], [0.0])


class TestMinEigen:
    def test_examples(self):
        assert snbounds.min_eigen_tridiag(SymTridiagonal([3.0], [])) == 3.0
        assert snbounds.min_eigen_tridiag(SymTridiagonal([0.0, 2.0], [-0.6])) == pytest.approx(1 - math.sqrt(1.36), abs=1e-12)
        assert snbounds.min_eigen_tridiag(SymTridiagonal([1.0, 1.0], [0.6])) == pytest.approx(0.4, abs=1e-12)

    def test_against_dense(self, rng):
        for _ in range(100):
            r = int(rng.integers(1, 51))
            t = SymTridiagonal(rng.uniform(-5, 5, r), rng.uniform(-3, 3, r - 1))
            assert snbounds.min_eigen_tridiag(t) == pytest.approx(dense_min(t), abs=1e-10)

    def test_zero_offdiagonal(self):
        t = SymTridiagonal([4.0, -1.0, 2.0, -1.0], [0.0, 0.0, 0.0])
        assert snbounds.min_eigen_tridiag(t) == pytest.approx(-1.0, abs=1e-12)


class TestLevels:
    def test_g_r_examples(self):
        assert snbounds.g_r(PN, 1) == 1.0
        assert snbounds.g_r(PN, 2) == pytest.approx(G2_N, abs=1e-12)
        assert snbounds.g_r(PN, 2) == pytest.approx(0.833810, abs=1e-6)
        assert snbounds.g_r(PP, 2) == pytest.approx(1.4, abs=1e-12)
        assert snbounds.g_r(WitnessParams("P", 0.3, 0.7, 0.4), 1) == 1.0

    def test_g_inf_examples(self):
        assert snbounds.g_inf(PN) == pytest.approx(0.8, abs=1e-15)
        assert snbounds.g_inf(PP) == pytest.approx(0.6, abs=1e-15)
        assert snbounds.g_inf(WitnessParams("N", 0.5, 0.5, 0.0)) == 1.0

    def test_bad_r(self):
        with pytest.raises(InputError):
            snbounds.g_r(PN, 0)
        with pytest.raises(InputError):
            snbounds.ladder(PN, 0)

    def test_n_ladder_example(self):
        lad = snbounds.ladder(PN, 3)
        assert lad.raw[0] == 1.0
        assert lad.raw[1] == pytest.approx(G2_N, abs=1e-12)
        assert 0.8 < lad.raw[2] < lad.raw[1]
        assert np.array_equal(lad.effective, lad.raw)
        # frozen from a dense 3x3 eigensolve of [[0,-.6,0],[-.6,2,-1.2],[0,-1.2,4]] + 1
        assert lad.raw[2] == pytest.approx(0.8055276945857917, abs=1e-11)

    def test_p_ladder_example(self):
        lad = snbounds.ladder(PP, 3)
        assert np.all(np.diff(lad.raw) > 0)
        assert lad.effective.tolist() == [1.0, 1.0, 1.0]

    def test_uncoupled(self):
        lad = snbounds.ladder(WitnessParams("N", 0.4, 0.6, 0.0), 6)
        assert lad.raw == pytest.approx(np.ones(6), abs=1e-12)
        lad = snbounds.ladder(WitnessParams("P", 0.4, 0.6, 0.0), 6)
        assert np.all(lad.effective == 1.0)

    def test_oracle_chain(self):
        # N matrix = leading block of L_n restricted to span{|n, n>}
        for r in range(1, 8):
            n = np.arange(r, dtype=float)
            chain = np.diag(2 * n + 1.0) + np.diag(-0.6 * (n[:-1] + 1), 1) + np.diag(-0.6 * (n[:-1] + 1), -1)
            assert snbounds.g_r(PN, r) == pytest.approx(np.linalg.eigvalsh(chain)[0], abs=1e-11)

    @settings(max_examples=40, deadline=None)
    @given(p=valid_params("N"), r=st.integers(1, 30))
    def test_sign_invariance(self, p, r):
        q = WitnessParams(p.family, p.omega1, p.omega2, -p.omegac)
        assert snbounds.g_r(p, r) == pytest.approx(snbounds.g_r(q, r), abs=1e-11)

    @settings(max_examples=40, deadline=None)
    @given(p=valid_params("P"), r=st.integers(1, 30))
    def test_sign_invariance_p(self, p, r):
        q = WitnessParams(p.family, p.omega1, p.omega2, -p.omegac)
        assert snbounds.g_r(p, r) == pytest.approx(snbounds.g_r(q, r), abs=1e-11)

    @settings(max_examples=40, deadline=None)
    @given(p=valid_params("N"))
    def test_n_ladder_properties(self, p):
        lad = snbounds.ladder(p, 60)
        assert lad.raw[0] == p.omega1 + p.omega2
        assert np.all(np.diff(lad.raw) <= 1e-12)
        assert np.all(lad.raw >= lad.g_inf - 1e-9)
        assert np.array_equal(lad.effective, np.minimum.accumulate(lad.raw))

    @settings(max_examples=40, deadline=None)
    @given(p=valid_params("P"))
    def test_p_ladder_properties(self, p):
        lad = snbounds.ladder(p, 40)
        assert np.all(lad.raw >= p.g1 - 1e-9)
        assert np.all(lad.effective == p.g1)

    def test_convergence_to_g_inf(self, rng):
        for _ in range(10):
            w1 = rng.uniform(0.1, 0.9)
            w2 = 1 - w1
            wc = -rng.uniform(0, math.sqrt(3.5 * w1 * w2))
            lad = snbounds.ladder(WitnessParams("N", w1, w2, wc), 200)
            assert lad.raw[-1] - lad.g_inf < 1e-2

    @settings(max_examples=30, deadline=None)
    @given(p=valid_params("N"), c=st.floats(0.01, 100.0), frac=st.floats(0.0, 1.5))
    def test_scaling_invariance(self, p, c, frac):
        lad = snbounds.ladder(p, 20)
        e = lad.g_inf + frac * (p.g1 - lad.g_inf)
        lad_c = snbounds.ladder(p.scaled(c), 20)
        assert lad_c.raw == pytest.approx(c * lad.raw, rel=1e-9)
        assert lad_c.g_inf == pytest.approx(c * lad.g_inf, rel=1e-12)
        a = snbounds.certify(e, lad)
        b = snbounds.certify(c * e, lad_c)
        # a level within rounding of e can flip; stay clear of the guard band
        if np.min(np.abs(lad.effective - e)) > 1e-8 * p.g1:
            assert a.certified_r == b.certified_r


class TestCertify:
    def test_examples(self):
        lad = snbounds.ladder(PN, 3)
        assert snbounds.certify(1.0, lad).certified_r == 1
        assert snbounds.certify(0.9, lad).certified_r == 2
        rep = snbounds.certify(0.81, lad)
        assert rep.certified_r == 3
        assert not rep.saturated_inf
        assert rep.margins == pytest.approx(lad.effective - 0.81)

    def test_strict_guard(self):
        lad = snbounds.ladder(PN, 3)
        assert snbounds.certify(1.0 - 5e-13, lad).certified_r == 1
        assert snbounds.certify(1.0 - 2e-12, lad).certified_r == 2

    def test_saturation(self):
        p = WitnessParams("N", 0.5, 0.5, -math.tanh(1.4))
        lad = snbounds.ladder(p, 50)
        rep = snbounds.certify(lad.g_inf, lad)
        assert rep.saturated_inf
        assert rep.certified_r == 51

    def test_vacuum_never_certified(self):
        p = WitnessParams("N", 0.5, 0.5, -0.9)
        lad = snbounds.ladder(p, 64)
        assert snbounds.certify(p.g1, lad).certified_r == 1

    def test_p_family_flat_ladder(self):
        # any value below g1 clears every level of a flat ladder; bona fide
        # states never get there (see the witness tests)
        lad = snbounds.ladder(PP, 10)
        assert snbounds.certify(1.0, lad).certified_r == 1
        assert snbounds.certify(0.99, lad).certified_r == 11

    def test_bound(self, rng):
        for _ in range(50):
            lad = snbounds.ladder(WitnessParams("N", 0.5, 0.5, -rng.uniform(0, 0.99)), 16)
            rep = snbounds.certify(rng.uniform(lad.g_inf - 0.1, 1.1), lad)
            assert 1 <= rep.certified_r <= lad.rmax + 1
