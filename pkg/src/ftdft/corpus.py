"""Test-function corpus: explicit Fourier pairs with decay metadata.

Every entry is a pair (f, fhat) known in closed form on both sides, so
discretization error can be measured against exact samples.  The spline
family fab couples polynomial decay (1+|x|)^{-a} in time with (1+|xi|)^{-b}
in frequency; exp_abs and gauss cover the exponential regimes.

Decay metadata is certified: sup_weighted is an upper bound for
sup |f(x)| * envelope(x)^{-1}, so envelope-based truncation-tail bounds
derived from it are valid inequalities, not estimates.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class PolyDecay:
    """|f(x)| <= sup_weighted * (1+|x|)^{-exponent}."""

    exponent: float
    sup_weighted: float

    def __post_init__(self):
        if not (self.exponent > 0.0 and math.isfinite(self.exponent)):
            raise ValueError("polynomial decay exponent must be positive")
        if not (self.sup_weighted >= 0.0 and math.isfinite(self.sup_weighted)):
            raise ValueError("sup_weighted must be finite and nonnegative")


@dataclass(frozen=True)
class SubExpDecay:
    """|f(x)| <= sup_weighted * exp(-rate * |x|^power).

    power > 1 (e.g. a Gaussian) is allowed as decay metadata; the weighted
    theory caps its weight exponents at 1 separately.
    """

    rate: float
    power: float
    sup_weighted: float

    def __post_init__(self):
        if not (self.rate > 0.0 and math.isfinite(self.rate)):
            raise ValueError("sub-exponential rate must be positive")
        if not (self.power > 0.0 and math.isfinite(self.power)):
            raise ValueError("sub-exponential power must be positive")
        if not (self.sup_weighted >= 0.0 and math.isfinite(self.sup_weighted)):
            raise ValueError("sup_weighted must be finite and nonnegative")


DecaySpec = Union[PolyDecay, SubExpDecay]


def envelope(decay: DecaySpec, t):
    """Decay envelope at distance t >= 0 (envelope alone, without sup_weighted)."""
    t = np.asarray(t, dtype=float)
    if isinstance(decay, PolyDecay):
        return (1.0 + t) ** (-decay.exponent)
    return np.exp(-decay.rate * t ** decay.power)


def envelope_tail_integral(decay: DecaySpec, T: float) -> float:
    """Upper bound for integral_T^inf envelope(t) dt, T >= 0.

    Poly needs exponent > 1.  For sub-exponential power < 1 the incomplete
    gamma tail is bounded by (1/a) u^{a-1} e^{-u} (valid once
    u = rate*T^power >= max(1, 1/power)); below that threshold inf is
    returned and callers extend the truncation until the bound applies.
    For power >= 1 the substitution bound T^{1-power} e^{-u} / (power*rate)
    holds at every T > 0 (capped by the full integral near T = 0).
    """
    if T < 0:
        raise ValueError("T must be nonnegative")
    if isinstance(decay, PolyDecay):
        a = decay.exponent
        if a <= 1.0:
            raise ValueError("polynomial tail integral needs exponent > 1")
        return (1.0 + T) ** (1.0 - a) / (a - 1.0)
    r, al = decay.rate, decay.power
    if al == 1.0:
        return math.exp(-r * T) / r
    u = r * T ** al
    if al > 1.0:
        full = math.gamma(1.0 + 1.0 / al) * r ** (-1.0 / al)
        if T == 0.0:
            return full
        return min(full, T ** (1.0 - al) * math.exp(-u) / (r * al))
    if u < max(1.0, 1.0 / al):
        return math.inf
    # integral = (1/al) r^{-1/al} Gamma(1/al, u) <= (1/al^2) r^{-1} T^{1-al} e^{-u}
    return T ** (1.0 - al) * math.exp(-u) / (r * al * al)


# --- centered cardinal B-splines -------------------------------------------

def _b1(x):
    return np.where((x >= -0.5) & (x < 0.5), 1.0, 0.0)


def _b2(x):
    return np.maximum(0.0, 1.0 - np.abs(x))


def _b3(x):
    ax = np.abs(x)
    return np.select(
        [ax <= 0.5, ax <= 1.5],
        [0.75 - ax * ax, 0.5 * (1.5 - ax) ** 2],
        0.0,
    )


def _b4(x):
    ax = np.abs(x)
    return np.select(
        [ax <= 1.0, ax <= 2.0],
        [2.0 / 3.0 - ax * ax + 0.5 * ax ** 3, (2.0 - ax) ** 3 / 6.0],
        0.0,
    )


_EXPLICIT = {1: _b1, 2: _b2, 3: _b3, 4: _b4}


def bspline_eval(b: int, x):
    """Centered cardinal B-spline B_b, support [-b/2, b/2], integral 1.

    B_1 is the half-open indicator of [-1/2, 1/2); B_{b+1} = B_b * B_1.
    Explicit piecewise polynomials for b <= 4, the two-term recursion
    B_b(x) = ((b/2+x) B_{b-1}(x+1/2) + (b/2-x) B_{b-1}(x-1/2)) / (b-1)
    for 5 <= b <= 8.
    """
    if not isinstance(b, (int, np.integer)) or b < 1 or b > 8:
        raise ValueError("b-spline order must be an integer in 1..8")
    x = np.asarray(x, dtype=float)
    if b <= 4:
        return _EXPLICIT[b](x)
    lower = bspline_eval(b - 1, x + 0.5), bspline_eval(b - 1, x - 0.5)
    return ((b / 2.0 + x) * lower[0] + (b / 2.0 - x) * lower[1]) / (b - 1.0)


# --- the 1-periodic factors u_a and the pair f^{a,b} ------------------------

U_SUP = {1: 1.0, 2: 0.5, 3: 3.0 / 16.0}


def u_eval(a: int, xi):
    """1-periodic factor u_a on the fundamental cell [-1/2, 1/2).

    u_1 is the indicator of (-1/2, 0) with value 1/2 at the two endpoints,
    u_2(t) = |t|, u_3(t) = t/2 - sign(t) t^2 + 1/8.  Fourier coefficients
    are the a-th powers of c_k (c_0 = 1/2, c_k = 1/(k pi i) for odd k);
    the u_3 branch is the one consistent with that series, checked against
    partial sums.
    """
    if a not in (1, 2, 3):
        raise ValueError("u_a has closed form only for a in {1, 2, 3}")
    xi = np.asarray(xi, dtype=float)
    t = xi - np.floor(xi + 0.5)
    if a == 1:
        interior = np.where((t > -0.5) & (t < 0.0), 1.0, 0.0)
        return np.where((t == -0.5) | (t == 0.0), 0.5, interior)
    if a == 2:
        return np.abs(t)
    return 0.5 * t - np.sign(t) * t * t + 0.125


def _fab_coeff(a: int, k):
    """a-th powers of the coefficients c_k: 1/2 at k=0, 1/(k pi i) for odd k."""
    k = np.asarray(k)
    odd = k % 2 != 0
    safe = np.where(odd, k, 1)
    c = np.where(odd, 1.0 / (safe * np.pi * 1j), 0.0 + 0.0j)
    c = np.where(k == 0, 0.5 + 0.0j, c)
    if a == 1:
        return c
    if a == 2:
        return c * c
    return c * c * c


def fab_eval(a: int, b: int, x):
    """f^{a,b}(x) = sum_k c_k^a B_b(x - k): decay (1+|x|)^{-a} in time."""
    if a not in (1, 2, 3):
        raise ValueError("a must be in {1, 2, 3}")
    if not isinstance(b, (int, np.integer)) or b < 1 or b > 8:
        raise ValueError("b must be an integer in 1..8")
    x = np.asarray(x, dtype=float)
    kmin = np.ceil(x - b / 2.0).astype(np.int64)
    total = np.zeros(x.shape, dtype=complex)
    for m in range(b + 1):
        k = kmin + m
        total = total + _fab_coeff(a, k) * bspline_eval(b, x - k)
    return total


def fab_hat_eval(a: int, b: int, xi):
    """Fourier side of f^{a,b}: sinc(xi)^b * u_a(xi), decay (1+|xi|)^{-b}."""
    if a not in (1, 2, 3):
        raise ValueError("a must be in {1, 2, 3}")
    if not isinstance(b, (int, np.integer)) or b < 1 or b > 8:
        raise ValueError("b must be an integer in 1..8")
    xi = np.asarray(xi, dtype=float)
    sinc = np.sinc(xi)
    # sin(pi m) vanishes exactly; float sinc leaves ~1e-16 residue there
    sinc = np.where((xi == np.rint(xi)) & (xi != 0.0), 0.0, sinc)
    return (sinc**b * u_eval(a, xi)).astype(complex)


@functools.lru_cache(maxsize=None)
def _fab_sup_weighted_time(a: int, b: int, cells: int = 4096) -> float:
    """Certified upper bound for sup |f^{a,b}(x)| (1+|x|)^a.

    On cell [l, l+1] the partition of unity gives |f| <= max |c_k^a| over
    the <= b+1 coefficients whose spline touches the cell, and
    (1+|x|)^a <= (l+2)^a.  |f(-x)| = |f(x)|, so l >= 0 suffices.  Beyond
    the scanned cells the bound ((l+2)/(pi k_min))^a is decreasing.
    """
    best = 0.0
    for l in range(cells + 1):
        k_lo = math.floor(l - b / 2.0) - 1
        k_hi = math.ceil(l + 1 + b / 2.0) + 1
        cmax = 0.0
        for k in range(k_lo, k_hi + 1):
            if k == 0:
                cmax = max(cmax, 0.5 ** a)
            elif k % 2 != 0:
                cmax = max(cmax, (1.0 / (math.pi * abs(k))) ** a)
        best = max(best, (l + 2.0) ** a * cmax)
    l = cells + 1
    tail = ((l + 2.0) / (math.pi * (l - b / 2.0 - 2.0))) ** a
    return max(best, tail)


@dataclass(frozen=True)
class FunctionPair:
    """A function, its Fourier transform, and certified decay metadata.

    f and fhat are vectorized complex-valued evaluators.  The convention is
    fhat(xi) = integral f(x) exp(-2 pi i x xi) dx.
    """

    f: Callable
    fhat: Callable
    time_decay: DecaySpec
    freq_decay: DecaySpec
    label: str


def _parse_fab(name: str):
    body = name.split(":", 1)[1]
    parts = body.split(",")
    if len(parts) != 2:
        raise ValueError(f"malformed corpus name {name!r}; expected fab:a,b")
    try:
        a, b = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise ValueError(f"malformed corpus name {name!r}") from exc
    return a, b


def corpus_get(name: str) -> FunctionPair:
    """Look up a corpus entry by name: 'fab:a,b', 'exp_abs', or 'gauss'."""
    if name.startswith("fab:"):
        a, b = _parse_fab(name)
        if a not in (1, 2, 3) or not 1 <= b <= 8:
            raise ValueError(f"fab requires a in 1..3 and b in 1..8, got {name!r}")
        return FunctionPair(
            f=lambda x, a=a, b=b: fab_eval(a, b, x),
            fhat=lambda xi, a=a, b=b: fab_hat_eval(a, b, xi),
            time_decay=PolyDecay(float(a), _fab_sup_weighted_time(a, b)),
            freq_decay=PolyDecay(float(b), U_SUP[a] * 2.0 ** b),
            label=name,
        )
    if name == "exp_abs":
        return FunctionPair(
            f=lambda x: np.exp(-_TWO_PI * np.abs(np.asarray(x, float))).astype(complex),
            fhat=lambda xi: (1.0 / (np.pi * (1.0 + np.asarray(xi, float) ** 2))).astype(complex),
            time_decay=SubExpDecay(_TWO_PI, 1.0, 1.0),
            freq_decay=PolyDecay(2.0, 2.0 / math.pi),
            label=name,
        )
    if name == "gauss":
        decay = SubExpDecay(math.pi, 2.0, 1.0)
        return FunctionPair(
            f=lambda x: np.exp(-math.pi * np.asarray(x, float) ** 2).astype(complex),
            fhat=lambda xi: np.exp(-math.pi * np.asarray(xi, float) ** 2).astype(complex),
            time_decay=decay,
            freq_decay=decay,
            label=name,
        )
    raise ValueError(f"unknown corpus entry {name!r}")


def corpus_list():
    """Canonical corpus names (the balanced-table spline pairs plus the exponentials)."""
    fabs = [f"fab:{a},{b}" for a in (2, 3) for b in (2, 3, 4)]
    return fabs + ["exp_abs", "gauss"]
