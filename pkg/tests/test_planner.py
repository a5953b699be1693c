"""Tests for step-size planning, the Lambert W solver, and bound_total."""

import math

import pytest

from ftdft.corpus import PolyDecay, SubExpDecay, corpus_get
from ftdft.dft import SamplingPlan
from ftdft.planner import (
    BoundReport,
    PlanRequest,
    bound_total,
    lambert_w,
    plan_step,
    predicted_rate,
)
from ftdft.weights import PolynomialWeight, SubExponentialWeight

from oracles import lambert_residual

OMEGA = 0.5671432904097838  # W(1), the omega constant


class TestLambertW:
    def test_zero(self):
        assert lambert_w(0.0) == 0.0

    def test_at_e(self):
        assert abs(lambert_w(math.e) - 1.0) <= 1e-12

    def test_omega_constant(self):
        w = lambert_w(1.0)
        assert abs(w - OMEGA) <= 1e-9
        assert abs(w * math.exp(w) - 1.0) <= 1e-12

    @pytest.mark.parametrize(
        "x", [1e-8, 1e-3, 0.1, 0.5, 1.0, 2.0, math.e, 10.0, 100.0, 1e4, 1e6]
    )
    def test_residual_bound(self, x):
        assert lambert_residual(x, lambert_w(x)) <= 1e-12 * max(x, 1.0)

    def test_monotone_on_range(self):
        xs = [0.0] + [10.0 ** (0.25 * k) for k in range(-32, 25)]  # up to 1e6
        ws = [lambert_w(x) for x in xs]
        assert all(b > a for a, b in zip(ws, ws[1:]))

    @pytest.mark.parametrize("x", [1e150, 1e300])
    def test_huge_arguments(self, x):
        w = lambert_w(x)
        # w + log(w) = log(x); checked in log space to dodge e^w overflow noise
        assert abs(w + math.log(w) - math.log(x)) <= 1e-12 * math.log(x)

    @pytest.mark.parametrize("x", [-1.0, -1e-12, math.inf, math.nan])
    def test_rejects_bad_input(self, x):
        with pytest.raises(ValueError):
            lambert_w(x)


class TestPredictedRate:
    def test_table_corner_values(self):
        assert predicted_rate(PolyDecay(2.0, 1.0), PolyDecay(2.0, 1.0)) == pytest.approx(
            0.75, abs=1e-15
        )
        assert predicted_rate(PolyDecay(3.0, 1.0), PolyDecay(4.0, 1.0)) == pytest.approx(
            35.0 / 24.0, abs=1e-15
        )

    @pytest.mark.parametrize("a", [1.75, 2.0, 3.0, 5.5])
    def test_symmetric_case_is_half_alpha(self, a):
        d = PolyDecay(a, 1.0)
        assert predicted_rate(d, d) == pytest.approx((a - 0.5) / 2.0, rel=1e-15)

    def test_mixed_returns_freq_exponent(self):
        rate = predicted_rate(SubExpDecay(1.0, 1.0, 1.0), PolyDecay(2.5, 1.0))
        assert rate == pytest.approx(2.0, abs=1e-15)

    def test_subexp_both_sides_is_inf(self):
        assert predicted_rate(
            SubExpDecay(1.0, 1.0, 1.0), SubExpDecay(2.0, 0.5, 1.0)
        ) == math.inf

    def test_role_swap_rejected(self):
        with pytest.raises(ValueError, match="symmetry_pair"):
            predicted_rate(PolyDecay(2.0, 1.0), SubExpDecay(1.0, 1.0, 1.0))

    def test_critical_exponent_rejected(self):
        with pytest.raises(ValueError):
            predicted_rate(PolyDecay(1.0, 1.0), PolyDecay(2.0, 1.0))
        with pytest.raises(ValueError):
            predicted_rate(PolyDecay(2.0, 1.0), PolyDecay(0.75, 1.0))


class TestPlanRequest:
    def test_holds_fields(self):
        req = PlanRequest(PolyDecay(2.0, 1.0), PolyDecay(3.0, 1.0), 256)
        assert req.n == 256

    @pytest.mark.parametrize("n", [0, 1, -4])
    def test_rejects_small_n(self, n):
        with pytest.raises(ValueError):
            PlanRequest(PolyDecay(2.0, 1.0), PolyDecay(2.0, 1.0), n)

    def test_rejects_critical_poly_exponent(self):
        with pytest.raises(ValueError):
            PlanRequest(PolyDecay(1.0, 1.0), PolyDecay(2.0, 1.0), 64)
        with pytest.raises(ValueError):
            PlanRequest(PolyDecay(2.0, 1.0), PolyDecay(1.0, 1.0), 64)

    def test_gaussian_power_allowed(self):
        req = PlanRequest(
            SubExpDecay(math.pi, 2.0, 1.0), SubExpDecay(math.pi, 2.0, 1.0), 64
        )
        assert req.n == 64


class TestPlanStep:
    def test_poly_poly_square_case(self):
        fp = corpus_get("fab:2,2")
        plan = plan_step(PlanRequest(fp.time_decay, fp.freq_decay, 1024))
        assert plan.h == pytest.approx(1024.0 ** -0.5, rel=1e-12)
        assert plan.p == pytest.approx(32.0, rel=1e-12)

    def test_poly_poly_asymmetric_case(self):
        # alpha = 3/2, beta = 7/2: h = n^{-3/10}, p = n^{7/10}
        plan = plan_step(PlanRequest(PolyDecay(2.0, 1.0), PolyDecay(4.0, 1.0), 1024))
        assert plan.h == pytest.approx(2.0 ** -3.0, rel=1e-12)
        assert plan.p == pytest.approx(2.0 ** 7.0, rel=1e-12)

    @pytest.mark.parametrize("a,b", [(2.0, 2.0), (2.0, 3.0), (3.0, 4.0), (1.8, 5.5)])
    @pytest.mark.parametrize("n", [64, 1024, 2 ** 16])
    def test_poly_poly_balance(self, a, b, n):
        al, be = a - 0.5, b - 0.5
        plan = plan_step(PlanRequest(PolyDecay(a, 1.0), PolyDecay(b, 1.0), n))
        assert abs(be * math.log(plan.h) + al * math.log(plan.p)) <= 1e-12

    def test_subexp_equal_rates(self):
        plan = plan_step(
            PlanRequest(SubExpDecay(1.0, 1.0, 1.0), SubExpDecay(1.0, 1.0, 1.0), 4096)
        )
        assert plan.h == pytest.approx(4096.0 ** -0.5, rel=1e-12)

    @pytest.mark.parametrize(
        "t,f",
        [
            (SubExpDecay(1.0, 1.0, 1.0), SubExpDecay(1.0, 1.0, 1.0)),
            (SubExpDecay(1.5, 1.0, 1.0), SubExpDecay(0.7, 0.5, 1.0)),
            (SubExpDecay(math.pi, 2.0, 1.0), SubExpDecay(math.pi, 2.0, 1.0)),
            (SubExpDecay(0.5, 0.75, 1.0), SubExpDecay(2.0, 1.0, 1.0)),
        ],
    )
    @pytest.mark.parametrize("n", [256, 4096])
    def test_subexp_balance(self, t, f, n):
        plan = plan_step(PlanRequest(t, f, n))
        lhs = t.rate * (plan.p / 2.0) ** t.power
        rhs = f.rate * (2.0 * plan.h) ** -f.power
        assert lhs == pytest.approx(rhs, rel=1e-10)

    def test_mixed_small_case_is_omega(self):
        plan = plan_step(
            PlanRequest(SubExpDecay(1.0, 1.0, 1.0), PolyDecay(1.5, 1.0), 2)
        )
        assert plan.h == pytest.approx(OMEGA, abs=1e-12)

    @pytest.mark.parametrize(
        "t,b",
        [
            (SubExpDecay(1.0, 1.0, 1.0), 1.5),
            (SubExpDecay(2.0, 0.5, 1.0), 3.0),
            (SubExpDecay(math.pi * 2, 1.0, 1.0), 2.0),
        ],
    )
    @pytest.mark.parametrize("n", [128, 4096])
    def test_mixed_balance(self, t, b, n):
        plan = plan_step(PlanRequest(t, PolyDecay(b, 1.0), n))
        be = b - 0.5
        lhs = math.exp(-t.rate * (plan.p / 2.0) ** t.power)
        assert lhs == pytest.approx(plan.h ** be, rel=1e-10)

    def test_mixed_shrinks_h_with_n(self):
        t, f = SubExpDecay(1.0, 1.0, 1.0), PolyDecay(2.0, 1.0)
        hs = [plan_step(PlanRequest(t, f, 2 ** l)).h for l in range(3, 12)]
        assert all(b < a for a, b in zip(hs, hs[1:]))

    def test_role_swap_rejected(self):
        with pytest.raises(ValueError, match="symmetry_pair"):
            plan_step(
                PlanRequest(PolyDecay(2.0, 1.0), SubExpDecay(1.0, 1.0, 1.0), 64)
            )

    def test_exp_abs_orientation_plans(self):
        fp = corpus_get("exp_abs")
        plan = plan_step(PlanRequest(fp.time_decay, fp.freq_decay, 256))
        assert 0.0 < plan.h <= 1.0 <= plan.p


class TestBoundTotal:
    def _plan(self, n=1024, h=None):
        return SamplingPlan(n, n ** -0.5 if h is None else h)

    def test_poly_constant_three_halves(self):
        # c_s = 2^{2s+1} (1 + 1/(4s-2))^{1/2} = 16 sqrt(5)/2 at s = 3/2
        plan = self._plan()
        rep = bound_total(
            1.0, 1.0, (PolynomialWeight(1.5), PolynomialWeight(1.5)), plan
        )
        c = 16.0 * math.sqrt(1.25)
        assert rep.constants_used["time_c"] == pytest.approx(c, rel=1e-14)
        assert rep.constants_used["freq_c"] == pytest.approx(c, rel=1e-14)
        assert c == pytest.approx(17.88854382, abs=1e-8)
        assert rep.regime == "PolyPoly"

    def test_poly_terms_scale_with_norms(self):
        plan = self._plan()
        vw = (PolynomialWeight(1.5), PolynomialWeight(2.5))
        rep = bound_total(2.0, 3.0, vw, plan)
        c_t = 16.0 * math.sqrt(1.25)
        assert rep.time_term == pytest.approx(c_t * plan.p ** -1.5 * 2.0, rel=1e-13)
        assert rep.total == pytest.approx(rep.time_term + rep.freq_term, rel=1e-15)

    def test_subexp_constant(self):
        plan = self._plan(n=4096)
        rep = bound_total(
            1.0,
            1.0,
            (SubExponentialWeight(1.0, 1.0), SubExponentialWeight(1.0, 1.0)),
            plan,
        )
        c = math.e * math.sqrt(6.0)
        assert rep.constants_used["time_c"] == pytest.approx(c, rel=1e-14)
        assert c == pytest.approx(6.6584, abs=5e-5)
        assert rep.regime == "SubExpSubExp"
        assert rep.time_term == pytest.approx(
            c * math.exp(-plan.p / 2.0), rel=1e-13
        )

    def test_zero_norms_zero_total(self):
        rep = bound_total(
            0.0, 0.0, (PolynomialWeight(1.5), PolynomialWeight(1.5)), self._plan()
        )
        assert rep.total == 0.0

    def test_mixed_regime_label(self):
        rep = bound_total(
            1.0,
            1.0,
            (SubExponentialWeight(1.0, 1.0), PolynomialWeight(1.5)),
            self._plan(n=4096),
        )
        assert rep.regime == "Mixed"

    def test_constants_used_keys(self):
        rep = bound_total(
            1.0, 1.0, (PolynomialWeight(1.5), PolynomialWeight(1.5)), self._plan()
        )
        assert set(rep.constants_used) == {
            "time_c",
            "freq_c",
            "time_chain_raw",
            "time_chain_simplified",
            "freq_chain_raw",
            "freq_chain_simplified",
        }
        # (1+h)^{1/2} <= sqrt(2) for h <= 1, so raw <= simplified on each side
        cu = rep.constants_used
        assert cu["time_chain_raw"] <= cu["time_chain_simplified"]
        assert cu["freq_chain_raw"] <= cu["freq_chain_simplified"]

    def test_rejects_h_p_outside_standing_assumption(self):
        vw = (PolynomialWeight(1.5), PolynomialWeight(1.5))
        with pytest.raises(ValueError, match="0 < h <= 1 <= p"):
            bound_total(1.0, 1.0, vw, SamplingPlan(4, 2.0))  # h > 1
        with pytest.raises(ValueError, match="0 < h <= 1 <= p"):
            bound_total(1.0, 1.0, vw, SamplingPlan(4, 0.1))  # p < 1

    def test_subexp_threshold_reported(self):
        # r = 0.01, alpha = 1: threshold 2/(2*0.01) = 100 > p = 32
        vw = (SubExponentialWeight(0.01, 1.0), PolynomialWeight(1.5))
        with pytest.raises(ValueError, match="needs effective period >= 100"):
            bound_total(1.0, 1.0, vw, self._plan())

    def test_freq_side_threshold_uses_inverse_h(self):
        # freq side decays in 1/h = 32 >= threshold 1 for r = 1, fine;
        # shrink r until 1/h falls below the threshold
        vw = (SubExponentialWeight(1.0, 1.0), SubExponentialWeight(0.01, 1.0))
        with pytest.raises(ValueError, match="freq-side"):
            bound_total(1.0, 1.0, vw, self._plan())

    def test_role_swap_rejected(self):
        with pytest.raises(ValueError, match="symmetry_pair"):
            bound_total(
                1.0,
                1.0,
                (PolynomialWeight(1.5), SubExponentialWeight(1.0, 1.0)),
                self._plan(),
            )

    def test_negative_norms_rejected(self):
        vw = (PolynomialWeight(1.5), PolynomialWeight(1.5))
        with pytest.raises(ValueError):
            bound_total(-1.0, 1.0, vw, self._plan())

    def test_report_is_bound_report(self):
        rep = bound_total(
            1.0, 1.0, (PolynomialWeight(1.5), PolynomialWeight(1.5)), self._plan()
        )
        assert isinstance(rep, BoundReport)
        assert rep.time_term >= 0.0 and rep.freq_term >= 0.0
