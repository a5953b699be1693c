"""Decay-matched step-size planning and the explicit error bounds.

Given decay classes for a pair (f, fhat), plan_step balances the time-side
aliasing term (driven by the period p = n h) against the frequency-side
term (driven by 1/h) and returns the h that equalizes them.  bound_total
evaluates the proved bound c_time * decay(p) * ||f|| + c_freq * decay(1/h)
* ||fhat|| for caller-supplied weighted norms.

Three regimes: PolyPoly (both sides polynomial), SubExpSubExp, and Mixed
(sub-exponential time decay against polynomial frequency decay, balanced
through the Lambert W function).  Polynomial time decay against
sub-exponential frequency decay is intentionally not duplicated: swap the
roles with symmetry_pair and plan for the swapped pair.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Tuple

from .corpus import DecaySpec, PolyDecay, SubExpDecay
from .dft import SamplingPlan
from .errors import ConvergenceError
from .weights import (
    PolynomialWeight,
    SubExponentialWeight,
    WeightSpec,
    phi,
)

_ROLE_SWAP_MSG = (
    "polynomial time decay with sub-exponential frequency decay is handled by "
    "role swapping: apply symmetry_pair and plan for the swapped pair"
)


@dataclass(frozen=True)
class PlanRequest:
    """Decay metadata for both sides plus the grid size to plan for."""

    time_decay: DecaySpec
    freq_decay: DecaySpec
    n: int

    def __post_init__(self):
        if not (isinstance(self.n, int) and self.n >= 2):
            raise ValueError("n must be an integer >= 2")
        for side, d in (("time", self.time_decay), ("freq", self.freq_decay)):
            if isinstance(d, PolyDecay) and d.exponent <= 1.0:
                raise ValueError(
                    f"{side} polynomial decay exponent must exceed 1 "
                    "(weight exponent a - 1/2 must exceed 1/2)"
                )


@dataclass(frozen=True)
class BoundReport:
    """Proved error bound split into its time and frequency terms."""

    time_term: float
    freq_term: float
    total: float
    constants_used: Dict[str, float]
    regime: str


def lambert_w(x: float) -> float:
    """Principal-branch W(x) for x >= 0: |W e^W - x| <= 1e-12 max(x, 1).

    Halley iteration from the initial guess ln(1+x); for astronomically
    large x (where e^W overflows) a log-space Newton iteration takes over.
    """
    if not (x >= 0.0 and math.isfinite(x)):
        raise ValueError("lambert_w is implemented for finite x >= 0")
    if x == 0.0:
        return 0.0
    if x > 1e100:
        w = math.log(x)
        for _ in range(100):
            g = w + math.log(w) - math.log(x)
            if abs(g) <= 1e-13:
                return w
            w -= g * w / (1.0 + w)
        raise ConvergenceError("lambert_w log-space iteration stalled")
    w = math.log1p(x)
    for _ in range(100):
        ew = math.exp(w)
        f = w * ew - x
        if abs(f) <= 1e-12 * max(x, 1.0):
            return w
        w -= f / (ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0))
    raise ConvergenceError("lambert_w Halley iteration stalled")


def _poly_alpha(d: PolyDecay, side: str) -> float:
    if d.exponent <= 1.0:
        raise ValueError(f"{side} polynomial decay exponent must exceed 1")
    return d.exponent - 0.5


def predicted_rate(time: DecaySpec, freq: DecaySpec) -> float:
    """Exponent of the balanced error rate in n.

    PolyPoly: alpha*beta/(alpha+beta) with alpha = a - 1/2, beta = b - 1/2
    (the error is ~ n^{-rate}).  Mixed (sub-exponential time, polynomial
    frequency): beta, the exponent of the h-driven term (the n-rate holds
    up to a log factor).  SubExpSubExp: inf (super-polynomial decay).
    """
    if isinstance(time, PolyDecay) and isinstance(freq, PolyDecay):
        al = _poly_alpha(time, "time")
        be = _poly_alpha(freq, "freq")
        return al * be / (al + be)
    if isinstance(time, SubExpDecay) and isinstance(freq, PolyDecay):
        return _poly_alpha(freq, "freq")
    if isinstance(time, SubExpDecay) and isinstance(freq, SubExpDecay):
        return math.inf
    raise ValueError(_ROLE_SWAP_MSG)


def plan_step(req: PlanRequest) -> SamplingPlan:
    """The balanced step size h for the requested decay classes and n.

    PolyPoly: h = n^{-alpha/(alpha+beta)} (unit constant), which makes
    h^beta = p^{-alpha} exactly.  SubExpSubExp: the closed form that makes
    r (p/2)^alpha = s (2h)^{-beta}.  Mixed: h = (2/n) (beta/(alpha r))^{1/alpha}
    W(alpha n^alpha r / (2^alpha beta))^{1/alpha}, making
    e^{-r (p/2)^alpha} = h^beta.
    """
    t, f, n = req.time_decay, req.freq_decay, req.n
    if isinstance(t, PolyDecay) and isinstance(f, PolyDecay):
        al = _poly_alpha(t, "time")
        be = _poly_alpha(f, "freq")
        h = float(n) ** (-al / (al + be))
    elif isinstance(t, SubExpDecay) and isinstance(f, SubExpDecay):
        al, be = t.power, f.power
        r, s = t.rate, f.rate
        g = al + be
        h = float(n) ** (-al / g) * (s / r) ** (1.0 / g) * 2.0 ** ((al - be) / g)
    elif isinstance(t, SubExpDecay) and isinstance(f, PolyDecay):
        al, r = t.power, t.rate
        be = _poly_alpha(f, "freq")
        z = al * float(n) ** al * r / (2.0 ** al * be)
        h = (2.0 / n) * (be / (al * r)) ** (1.0 / al) * lambert_w(z) ** (1.0 / al)
    else:
        raise ValueError(_ROLE_SWAP_MSG)
    return SamplingPlan(n, h)


def _poly_c(alpha: float) -> float:
    """c_s = 2^{2s+1} (1 + 1/(4s-2))^{1/2} at s = alpha."""
    return 2.0 ** (2.0 * alpha + 1.0) * math.sqrt(1.0 + 1.0 / (4.0 * alpha - 2.0))


def _subexp_c(r: float, alpha: float) -> float:
    """c_{r,alpha} = e^r (4 + 2/alpha)^{1/2}."""
    return math.exp(r) * math.sqrt(4.0 + 2.0 / alpha)


def _side_term(w: WeightSpec, q: float, norm: float, side: str) -> Tuple[float, float]:
    """(constant, term) for one side of the bound at effective period q."""
    if isinstance(w, PolynomialWeight):
        c = _poly_c(w.alpha)
        return c, c * q ** (-w.alpha) * norm
    thr = (2.0 ** w.alpha / (2.0 * w.r * w.alpha)) ** (1.0 / w.alpha)
    if q < thr:
        raise ValueError(
            f"{side}-side sub-exponential bound needs effective period >= {thr:g}, got {q:g}"
        )
    c = _subexp_c(w.r, w.alpha)
    return c, c * math.exp(-w.r * (q / 2.0) ** w.alpha) * norm


def bound_total(
    norm_time: float,
    norm_freq: float,
    vw: Tuple[WeightSpec, WeightSpec],
    plan: SamplingPlan,
) -> BoundReport:
    """Evaluate the proved bound for caller-supplied weighted norms.

    norm_time bounds ||f|| in the amalgam space weighted by v = vw[0];
    norm_freq bounds ||fhat|| for w = vw[1].  The time term decays in
    p = n h, the frequency term in 1/h.  Standing assumption 0 < h <= 1 <= p.
    constants_used also carries the raw general-weight chains
    v(1) Phi_v(p) (1+h)^{1/2} (and the sqrt(2)-simplified variant) per side.
    """
    v, w = vw
    if isinstance(v, PolynomialWeight) and isinstance(w, SubExponentialWeight):
        raise ValueError(_ROLE_SWAP_MSG)
    if norm_time < 0.0 or norm_freq < 0.0:
        raise ValueError("norms must be nonnegative")
    h, p = plan.h, plan.p
    if not (0.0 < h <= 1.0 <= p):
        raise ValueError(f"bound_total needs 0 < h <= 1 <= p, got h={h:g}, p={p:g}")
    c_t, time_term = _side_term(v, p, norm_time, "time")
    c_f, freq_term = _side_term(w, 1.0 / h, norm_freq, "freq")
    if isinstance(v, SubExponentialWeight) and isinstance(w, SubExponentialWeight):
        regime = "SubExpSubExp"
    elif isinstance(v, SubExponentialWeight):
        regime = "Mixed"
    else:
        regime = "PolyPoly"
    phi_t = phi(v, p)
    phi_f = phi(w, 1.0 / h)
    v1 = float(math.exp(v.r) if isinstance(v, SubExponentialWeight) else 2.0 ** v.alpha)
    w1 = float(math.exp(w.r) if isinstance(w, SubExponentialWeight) else 2.0 ** w.alpha)
    constants = {
        "time_c": c_t,
        "freq_c": c_f,
        "time_chain_raw": v1 * phi_t * math.sqrt(1.0 + h),
        "time_chain_simplified": math.sqrt(2.0) * v1 * phi_t,
        "freq_chain_raw": w1 * phi_f * math.sqrt(1.0 + 1.0 / p),
        "freq_chain_simplified": math.sqrt(2.0) * w1 * phi_f,
    }
    return BoundReport(time_term, freq_term, time_term + freq_term, constants, regime)
