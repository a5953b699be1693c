import math

import numpy as np
import pytest

import oracles
from ftdft import (
    ConvergenceError,
    ErrorReport,
    FunctionPair,
    PolyDecay,
    SamplingPlan,
    SampledVector,
    SubExpDecay,
    corpus_get,
    decomposition_terms,
    dft_unitary,
    error_l2,
    error_sup,
    idft_unitary,
    logical_indices,
    periodize,
    periodize_tail_many,
    physical_index,
    poisson_check,
    sample,
    symmetry_pair,
)


def _zero_pair():
    z = lambda x: np.zeros(np.shape(np.asarray(x)), dtype=complex)
    return FunctionPair(
        f=z,
        fhat=z,
        time_decay=PolyDecay(3.0, 1.0),
        freq_decay=PolyDecay(3.0, 1.0),
        label="zero",
    )


class TestSamplingPlan:
    def test_p_stored(self):
        plan = SamplingPlan(1024, 0.03125)
        assert plan.p == 1024 * 0.03125
        assert plan.n == 1024

    def test_power_of_two_gate(self):
        with pytest.raises(ValueError):
            SamplingPlan(100, 0.1)
        plan = SamplingPlan(100, 0.1, general=True)
        assert plan.n == 100

    def test_bad_params(self):
        with pytest.raises(ValueError):
            SamplingPlan(0, 0.1)
        with pytest.raises(ValueError):
            SamplingPlan(16, 0.0)
        with pytest.raises(ValueError):
            SamplingPlan(16, float("nan"))


class TestIndexing:
    def test_logical_indices_small(self):
        # physical layout: slot m holds logical m for m <= n/2, m - n after
        assert list(logical_indices(4)) == [0, 1, 2, -1]
        assert list(logical_indices(2)) == [0, 1]
        assert sorted(logical_indices(4)) == [-1, 0, 1, 2]

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 8, 17, 64])
    def test_bijection(self, n):
        js = logical_indices(n)
        assert len(js) == n
        assert all(-n / 2 < j <= n / 2 for j in js)
        for m, j in enumerate(js):
            assert physical_index(int(j), n) == m
            assert (j - m) % n == 0

    def test_half_bin_is_positive(self):
        js = list(logical_indices(8))
        assert 4 in js and -4 not in js


class TestSampledVector:
    def test_modular_getitem(self):
        v = SampledVector(np.arange(4, dtype=complex), 4)
        assert v[0] == v.values[0]
        # logical 2 = n/2 sits at physical 2; logical -1 at physical 3
        assert v[2] == v.values[2]
        assert v[-1] == v.values[3]
        assert v[-1] == v[3]

    def test_immutable(self):
        v = SampledVector(np.arange(4, dtype=complex), 4)
        with pytest.raises((ValueError, TypeError)):
            v.values[0] = 5.0

    def test_norm(self):
        v = SampledVector(np.array([3.0, 4.0], dtype=complex), 2)
        assert v.norm() == pytest.approx(5.0)


class TestSample:
    def test_constant_function(self):
        fp = FunctionPair(
            f=lambda x: np.ones(np.shape(np.asarray(x)), dtype=complex),
            fhat=lambda x: np.zeros(np.shape(np.asarray(x)), dtype=complex),
            time_decay=PolyDecay(3.0, 1.0),
            freq_decay=PolyDecay(3.0, 1.0),
            label="one",
        )
        v = sample(fp, SamplingPlan(4, 1.0), "time")
        assert np.allclose(v.values, 1.0)

    def test_b1_support_enumeration(self):
        fp = corpus_get("fab:2,2")  # placeholder pair; we sample a bare B1 below
        from ftdft import bspline_eval

        pair = FunctionPair(
            f=lambda x: np.asarray(bspline_eval(1, np.asarray(x)), dtype=complex),
            fhat=fp.fhat,
            time_decay=fp.time_decay,
            freq_decay=fp.freq_decay,
            label="b1",
        )
        v = sample(pair, SamplingPlan(8, 0.5), "time")
        expect = {j: 0.0 for j in range(-3, 5)}
        expect[0] = math.sqrt(0.5)
        expect[-1] = math.sqrt(0.5)  # B1(-1/2) = 1 on the closed left endpoint
        for j in range(-3, 5):
            assert v[j] == pytest.approx(expect[j], abs=0)

    def test_step_weight_identity(self):
        fp = corpus_get("exp_abs")
        plan = SamplingPlan(64, 0.25)
        v = sample(fp, plan, "time")
        js = logical_indices(64)
        direct = 0.25 * np.sum(np.abs(np.asarray(fp.f(0.25 * js), dtype=complex)) ** 2)
        assert v.norm() ** 2 == pytest.approx(float(direct), rel=1e-14)

    def test_freq_side_step(self):
        fp = corpus_get("gauss")
        plan = SamplingPlan(16, 0.5)
        z = sample(fp, plan, "freq")
        ks = logical_indices(16)
        expect = np.sqrt(1.0 / plan.p) * np.asarray(fp.fhat(ks / plan.p), dtype=complex)
        got = np.array([z[int(k)] for k in ks])
        assert np.allclose(got, expect, atol=0, rtol=1e-15)

    def test_bad_side(self):
        with pytest.raises(ValueError):
            sample(corpus_get("gauss"), SamplingPlan(8, 0.5), "both")


class TestDftUnitary:
    def test_impulse(self):
        y = np.zeros(4, dtype=complex)
        y[0] = 1.0  # physical 0 = logical 0
        out = dft_unitary(SampledVector(y, 4))
        assert np.allclose(out.values, 0.5)

    def test_constant(self):
        out = dft_unitary(SampledVector(np.ones(4, dtype=complex), 4))
        assert out[0] == pytest.approx(2.0)
        for k in (-1, 1, 2):
            assert abs(out[k]) < 1e-15

    @pytest.mark.parametrize("n", [4, 64, 1024])
    def test_unitarity(self, n):
        rng = np.random.default_rng(n)
        y = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        v = SampledVector(y, n)
        out = dft_unitary(v)
        assert out.norm() == pytest.approx(v.norm(), rel=1e-13)

    @pytest.mark.parametrize("n", [4, 16, 256])
    def test_inversion(self, n):
        rng = np.random.default_rng(n + 1)
        y = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        v = SampledVector(y, n)
        back = idft_unitary(dft_unitary(v))
        assert np.max(np.abs(back.values - v.values)) < 1e-13 * v.norm()

    def test_matches_extended_precision_oracle(self):
        n = 256
        fp = corpus_get("fab:2,2")
        plan = SamplingPlan(n, n**-0.5)
        y = sample(fp, plan, "time")
        got = dft_unitary(y).values
        expect = oracles.dft_oracle(y.values)
        scale = np.max(np.abs(expect))
        assert np.max(np.abs(got - expect)) < 1e-11 * scale

    def test_logical_phase_convention(self):
        # an impulse at logical j=1 must produce e^{-2 pi i k/n}/sqrt(n) at
        # logical k, distinguishing the logical from the physical layout
        n = 8
        y = np.zeros(n, dtype=complex)
        y[physical_index(1, n)] = 1.0
        out = dft_unitary(SampledVector(y, n))
        for k in logical_indices(n):
            expect = np.exp(-2j * np.pi * k / n) / math.sqrt(n)
            assert out[int(k)] == pytest.approx(expect, abs=1e-15)

    def test_dual_step_metadata(self):
        v = SampledVector(np.ones(8, dtype=complex), 8, step=0.25)
        out = dft_unitary(v)
        assert out.step == pytest.approx(1.0 / (8 * 0.25))

    def test_plain_array_passthrough(self):
        rng = np.random.default_rng(3)
        y = rng.standard_normal(16) + 1j * rng.standard_normal(16)
        out = dft_unitary(y)
        assert isinstance(out, np.ndarray)
        back = idft_unitary(out)
        assert np.allclose(back, y, atol=1e-14)


class TestErrorFunctionals:
    def test_zero_function(self):
        rep = error_l2(_zero_pair(), SamplingPlan(16, 0.25))
        assert rep.e_l2 == 0.0
        assert error_sup(_zero_pair(), SamplingPlan(16, 0.25)) == 0.0

    def test_fab22_against_oracle(self):
        n = 1024
        fp = corpus_get("fab:2,2")
        plan = SamplingPlan(n, n**-0.5)
        rep = error_l2(fp, plan)
        assert rep.e_l2 > 0.0
        y = sample(fp, plan, "time")
        z = sample(fp, plan, "freq")
        trans = oracles.dft_oracle(y.values)
        v = np.asarray(z.values, dtype=complex) - trans
        expect = float(np.linalg.norm(v))
        assert rep.e_l2 == pytest.approx(expect, rel=1e-9)

    def test_gauss_below_machine_floor(self):
        n = 256
        rep = error_l2(corpus_get("gauss"), SamplingPlan(n, n**-0.5))
        assert rep.e_l2 < 1e-12
        assert rep.bounds_valid
        assert rep.e_l2 <= rep.bound_time + rep.bound_freq

    def test_report_fields(self):
        fp = corpus_get("fab:2,2")
        plan = SamplingPlan(256, 0.0625)
        rep = error_l2(fp, plan, label="custom")
        assert isinstance(rep, ErrorReport)
        assert rep.label == "custom"
        assert rep.plan is plan
        assert rep.e_l2 >= 0.0 and rep.e_sup >= 0.0
        assert rep.bounds_valid
        assert rep.e_l2 <= rep.bound_time + rep.bound_freq

    def test_invalid_bounds_flagged(self):
        fp = corpus_get("fab:2,2")
        slow = FunctionPair(
            f=fp.f,
            fhat=fp.fhat,
            time_decay=PolyDecay(1.0001, fp.time_decay.sup_weighted),
            freq_decay=fp.freq_decay,
            label="slow",
        )
        rep = error_l2(slow, SamplingPlan(256, 0.0625))
        assert not rep.bounds_valid
        assert rep.bound_time == 0.0 and rep.bound_freq == 0.0
        assert rep.e_l2 > 0.0

    def test_sup_l2_inequality(self):
        for name in ("fab:2,2", "exp_abs"):
            fp = corpus_get(name)
            for n in (64, 256):
                plan = SamplingPlan(n, n**-0.5)
                el2 = error_l2(fp, plan).e_l2
                esup = error_sup(fp, plan)
                assert el2 <= math.sqrt(n) * esup / math.sqrt(plan.p) * (1 + 1e-12)

    def test_sup_monotone_under_paper_rule(self):
        from ftdft import PlanRequest, plan_step

        fp = corpus_get("fab:2,2")
        vals = []
        for l in range(7, 15):
            plan = plan_step(PlanRequest(fp.time_decay, fp.freq_decay, 2**l))
            vals.append(error_sup(fp, plan))
        assert all(a > b for a, b in zip(vals, vals[1:]))


class TestSymmetry:
    def test_metadata_swap(self):
        fp = corpus_get("fab:2,3")
        sp = symmetry_pair(fp)
        assert sp.time_decay.exponent == 3.0
        assert sp.freq_decay.exponent == 2.0
        assert sp.label.startswith("sym(")

    def test_involution_up_to_conjugation(self):
        fp = corpus_get("fab:2,3")
        spp = symmetry_pair(symmetry_pair(fp))
        x = np.linspace(-3.0, 3.0, 17)
        assert np.allclose(np.asarray(spp.f(x)), np.asarray(fp.f(x)), atol=1e-15)
        assert np.allclose(np.asarray(spp.fhat(x)), np.asarray(fp.fhat(x)), atol=1e-15)

    def test_error_identity(self):
        n = 1024
        fp = corpus_get("fab:2,2")
        plan = SamplingPlan(n, n**-0.5)
        e1 = error_l2(fp, plan).e_l2
        sp = symmetry_pair(fp)
        e2 = error_l2(sp, SamplingPlan(n, 1.0 / plan.p)).e_l2
        assert e2 == pytest.approx(e1, rel=1e-10)


class TestPeriodize:
    def test_b2_partition_of_unity(self):
        from ftdft import bspline_eval

        d = PolyDecay(4.0, 8.0)
        for x in (0.0, 0.3, -0.49, 0.5):
            val = periodize(lambda t: bspline_eval(2, np.asarray(t)), 1.0, x, d, 1e-12)
            assert val == pytest.approx(1.0, abs=1e-12)

    def test_compact_support_single_term(self):
        from ftdft import bspline_eval

        d = PolyDecay(4.0, 8.0)
        val = periodize(lambda t: bspline_eval(2, np.asarray(t)), 8.0, 0.7, d, 1e-12)
        assert val == pytest.approx(float(bspline_eval(2, 0.7)), abs=1e-14)

    def test_exp_abs_geometric(self):
        fp = corpus_get("exp_abs")
        got = periodize(fp.f, 4.0, 0.0, fp.time_decay, 1e-13)
        q = math.exp(-8.0 * math.pi)
        expect = (1.0 + q) / (1.0 - q)  # 2/(1-q) - 1
        assert got.real == pytest.approx(expect, rel=1e-13)
        assert abs(got.imag) < 1e-15

    def test_validation(self):
        fp = corpus_get("exp_abs")
        with pytest.raises(ValueError):
            periodize(fp.f, 0.0, 0.0, fp.time_decay, 1e-10)
        with pytest.raises(ValueError):
            periodize(fp.f, 1.0, 0.0, fp.time_decay, 0.0)

    def test_tail_many_matches_scalar(self):
        fp = corpus_get("exp_abs")
        xs = np.linspace(-0.5, 0.5, 11)
        tails = periodize_tail_many(fp.f, 1.0, xs, fp.time_decay, 1e-12)
        for x, t in zip(xs, tails):
            full = periodize(fp.f, 1.0, float(x), fp.time_decay, 1e-13)
            center = complex(np.asarray(fp.f(np.array([x])), dtype=complex)[0])
            assert t == pytest.approx(full - center, abs=5e-12)

    def test_tail_many_domain_check(self):
        fp = corpus_get("exp_abs")
        with pytest.raises(ValueError):
            periodize_tail_many(fp.f, 1.0, np.array([0.6]), fp.time_decay, 1e-10)


class TestPoisson:
    def test_gauss(self):
        assert poisson_check(corpus_get("gauss"), SamplingPlan(32, 0.25), 0, 1e-12) <= 1e-12

    def test_exp_abs(self):
        tol = 1e-10
        fp = corpus_get("exp_abs")
        assert poisson_check(fp, SamplingPlan(64, 0.125), 3, tol) <= 3 * tol

    def test_zero_function(self):
        assert poisson_check(_zero_pair(), SamplingPlan(16, 0.5), 1, 1e-10) == 0.0

    def test_k_range_validation(self):
        fp = corpus_get("gauss")
        with pytest.raises(ValueError):
            poisson_check(fp, SamplingPlan(16, 0.5), -8, 1e-10)
        # +n/2 is inside the symmetric set
        assert poisson_check(fp, SamplingPlan(16, 0.5), 8, 1e-10) <= 3e-10


class TestDecomposition:
    @pytest.mark.parametrize("name,n", [("fab:2,2", 1024), ("fab:3,3", 512), ("exp_abs", 512)])
    def test_inequality(self, name, n):
        fp = corpus_get(name)
        from ftdft import PlanRequest, plan_step

        plan = plan_step(PlanRequest(fp.time_decay, fp.freq_decay, n))
        rep = error_l2(fp, plan)
        tol = rep.e_l2 / 20.0
        t_term, f_term = decomposition_terms(fp, plan, tol)
        assert t_term >= 0.0 and f_term >= 0.0
        assert rep.e_l2 <= t_term + f_term + 5.0 * tol
