"""Symmetric-index sampling, the unitary DFT, and the sampled-error functional.

Grids are indexed by the symmetric logical set [n] = {j : -n/2 < j <= n/2};
physical storage position m in {0..n-1} holds logical index j == m (mod n),
so a fast transform over physical order computes the symmetric-index sum
exactly (the k = n/2 bin is well defined because e^{-2pi i (n/2) j / n} =
e^{+2pi i (n/2) j / n} for integer j).

A time sample vector stores sqrt(h) f(hj); a frequency sample vector stores
sqrt(1/p) fhat(k/p) with p = n h.  With those weights baked in, the plain
Euclidean norm of a vector is the step-weighted l2 norm of the samples, and

    e_l2 = || fhat_{1/p,n} - F f_{h,n} ||_2

is the quantity every bound in the package controls.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np

from .corpus import DecaySpec, FunctionPair, envelope, envelope_tail_integral
from .errors import ConvergenceError

_PERIODIZE_TERM_CAP = 2 * 10 ** 9


def _is_pow2(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class SamplingPlan:
    """Grid size n, time step h, and the induced period p = n*h (stored once)."""

    n: int
    h: float
    p: float = field(default=None)  # type: ignore[assignment]
    general: bool = False

    def __post_init__(self):
        if not (isinstance(self.n, int) and self.n >= 2):
            raise ValueError("n must be an integer >= 2")
        if not (self.h > 0.0 and math.isfinite(self.h)):
            raise ValueError("h must be positive and finite")
        if not self.general and not _is_pow2(self.n):
            raise ValueError(
                "n must be a power of two (pass general=True for other lengths)"
            )
        if self.p is None:
            object.__setattr__(self, "p", self.n * self.h)
        elif self.p != self.n * self.h:
            raise ValueError("p must equal n*h")


def logical_indices(n: int) -> np.ndarray:
    """Logical index j at each physical position m = 0..n-1."""
    m = np.arange(n)
    return np.where(m <= n // 2, m, m - n)


def physical_index(j, n: int):
    """Physical storage position of logical index j (j == m mod n)."""
    return np.asarray(j) % n if np.ndim(j) else int(j) % n


@dataclass(frozen=True, eq=False)
class SampledVector:
    """Immutable length-n complex vector in physical layout with logical indexing."""

    values: np.ndarray
    n: int
    step: Optional[float] = None

    def __post_init__(self):
        v = np.array(self.values, dtype=complex)
        if v.shape != (self.n,):
            raise ValueError("values must have shape (n,)")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __getitem__(self, j):
        return self.values[np.asarray(j) % self.n if np.ndim(j) else j % self.n]

    def norm(self) -> float:
        return float(np.linalg.norm(self.values))


def sample(fp: FunctionPair, plan: SamplingPlan, side: str = "time") -> SampledVector:
    """sqrt(h) f(hj) over j in [n], or sqrt(1/p) fhat(k/p) for side="freq"."""
    j = logical_indices(plan.n)
    if side == "time":
        vals = math.sqrt(plan.h) * np.asarray(fp.f(plan.h * j), dtype=complex)
        return SampledVector(vals, plan.n, plan.h)
    if side == "freq":
        vals = np.asarray(fp.fhat(j / plan.p), dtype=complex) / math.sqrt(plan.p)
        return SampledVector(vals, plan.n, 1.0 / plan.p)
    raise ValueError("side must be 'time' or 'freq'")


def dft_unitary(y):
    """(1/sqrt(n)) sum_{j in [n]} y_j e^{-2 pi i k j / n}; unitary, O(n log n).

    Accepts a SampledVector (returns one, with the dual step) or a plain
    physical-layout array (returns an array).
    """
    if isinstance(y, SampledVector):
        out = np.fft.fft(y.values) / math.sqrt(y.n)
        dual = None if y.step is None else 1.0 / (y.n * y.step)
        return SampledVector(out, y.n, dual)
    arr = np.asarray(y, dtype=complex)
    return np.fft.fft(arr) / math.sqrt(arr.shape[0])


def idft_unitary(y):
    """Inverse (conjugate-transpose) of dft_unitary."""
    if isinstance(y, SampledVector):
        out = np.fft.ifft(y.values) * math.sqrt(y.n)
        dual = None if y.step is None else 1.0 / (y.n * y.step)
        return SampledVector(out, y.n, dual)
    arr = np.asarray(y, dtype=complex)
    return np.fft.ifft(arr) * math.sqrt(arr.shape[0])


@dataclass(frozen=True)
class ErrorReport:
    """Measured errors plus the theoretical bound split, for one plan and pair."""

    e_l2: float
    e_sup: float
    bound_time: float
    bound_freq: float
    plan: SamplingPlan
    label: str
    bounds_valid: bool = True


def _measured(fp: FunctionPair, plan: SamplingPlan) -> Tuple[float, float, float]:
    z = sample(fp, plan, "freq")
    y = sample(fp, plan, "time")
    d = z.values - dft_unitary(y.values)
    scale = z.norm() + y.norm() + 1.0
    return float(np.linalg.norm(d)), math.sqrt(plan.p) * float(np.max(np.abs(d))), scale


def error_l2(fp: FunctionPair, plan: SamplingPlan, label: Optional[str] = None) -> ErrorReport:
    """Exact-evaluator error functional with bound terms from the decay metadata.

    Bound fields are zeroed and flagged invalid when the decay combination
    falls outside the proved regimes; they are flagged (but kept) when the
    proved bound sits below the rounding floor of the measurement itself.
    """
    from .planner import bound_total  # late import: planner builds SamplingPlans
    from .weights import weighted_norm_certificate

    e2, esup, scale = _measured(fp, plan)
    lab = fp.label if label is None else label
    try:
        v, norm_time = weighted_norm_certificate(fp.time_decay)
        w, norm_freq = weighted_norm_certificate(fp.freq_decay)
        rep = bound_total(norm_time, norm_freq, (v, w), plan)
        bt, bf, valid = rep.time_term, rep.freq_term, True
    except (ValueError, ConvergenceError):
        bt, bf, valid = 0.0, 0.0, False
    if valid and bt + bf < 1e-13 * scale:
        valid = False
    return ErrorReport(e2, esup, bt, bf, plan, lab, valid)


def error_sup(fp: FunctionPair, plan: SamplingPlan) -> float:
    """sqrt(p) * max_k |fhat_{1/p,n}(k) - (F f_{h,n})(k)|."""
    return _measured(fp, plan)[1]


def symmetry_pair(fp: FunctionPair) -> FunctionPair:
    """The pair (conj o fhat, conj o f) with decay metadata swapped.

    Unitarity of the DFT plus Fourier inversion give E^[n]_h(fp) =
    E^[n]_{1/p}(symmetry_pair(fp)) exactly in exact arithmetic.
    """
    f, fhat = fp.f, fp.fhat
    return FunctionPair(
        f=lambda x, _g=fhat: np.conj(_g(x)),
        fhat=lambda xi, _g=f: np.conj(_g(xi)),
        time_decay=fp.freq_decay,
        freq_decay=fp.time_decay,
        label=f"sym({fp.label})",
    )


def _ring_tail(decay: DecaySpec, period: float, offset: float, L: int) -> float:
    """Upper bound on sum_{|l| > L} |f(x + period*l)| given |x| <= offset.

    Uses |x + period*l| >= period*|l| - offset and the monotone envelope:
    sum <= 2 [S env(T) + (S/period) int_T^inf env], T = period*(L+1) - offset.
    """
    T = period * (L + 1) - offset
    if T <= 0.0:
        return math.inf
    S = decay.sup_weighted
    return 2.0 * (S * envelope(decay, T) + S / period * envelope_tail_integral(decay, T))


def periodize(f, period: float, x: float, decay: DecaySpec, tol: float) -> complex:
    """sum_l f(x + period*l) truncated once the decay tail bound is <= tol."""
    if not (period > 0.0 and math.isfinite(period)):
        raise ValueError("period must be positive and finite")
    if not (tol > 0.0):
        raise ValueError("tol must be positive")
    ax = abs(x)
    total = complex(np.asarray(f(np.array([x])), dtype=complex)[0])
    L = 0
    chunk = 64
    while (2 * L + 1) < _PERIODIZE_TERM_CAP:
        ls = np.arange(L + 1, L + 1 + chunk)
        pts = np.concatenate([x + period * ls, x - period * ls])
        total += complex(np.sum(np.asarray(f(pts), dtype=complex)))
        L += chunk
        if _ring_tail(decay, period, ax, L) <= tol:
            return total
        chunk = min(2 * chunk, 10 ** 6)
    raise ConvergenceError(
        f"periodize tail bound did not reach tol={tol:g} within {_PERIODIZE_TERM_CAP} terms"
    )


def periodize_tail_many(
    f, period: float, xs: np.ndarray, decay: DecaySpec, tol: float
) -> np.ndarray:
    """sum_{l != 0} f(x + period*l) for every x in xs, |x| <= period/2.

    One shared truncation level serves the whole grid; the per-point tail
    bound is <= tol.
    """
    xs = np.asarray(xs, dtype=float)
    if xs.size and float(np.max(np.abs(xs))) > period / 2.0 + 1e-12 * period:
        raise ValueError("periodize_tail_many needs |x| <= period/2")
    if not (tol > 0.0):
        raise ValueError("tol must be positive")
    total = np.zeros(xs.shape, dtype=complex)
    L = 0
    chunk = 8
    while (2 * L) < _PERIODIZE_TERM_CAP // max(xs.size, 1):
        for l in range(L + 1, L + 1 + chunk):
            total += np.asarray(f(xs + period * l), dtype=complex)
            total += np.asarray(f(xs - period * l), dtype=complex)
        L += chunk
        if _ring_tail(decay, period, period / 2.0, L) <= tol:
            return total
        # slow growth cap: checkpoints stay dense, so a slowly decaying tail
        # stops close to the needed ring count instead of overshooting
        chunk = min(2 * chunk, 128)
    raise ConvergenceError(
        f"periodized tail bound did not reach tol={tol:g} within the term cap"
    )


def poisson_check(
    fp: FunctionPair, plan: SamplingPlan, k: int, tol: float
) -> float:
    """|h sum_j f(hj) e^{-2 pi i (k/p) h j}  -  (P_{1/h} fhat)(k/p)|.

    Both series are truncated with decay-metadata tail bounds <= tol, so the
    discrepancy of the exact identity is at most ~3 tol.
    """
    n, h, p = plan.n, plan.h, plan.p
    if not (-n / 2 < k <= n / 2):
        raise ValueError("k must lie in the symmetric index set")
    xi = k / p
    # left side: full lattice sum over j in Z, truncated by ring tails
    lhs = 0 + 0j
    J = 0  # highest |j| summed so far; the j=0 term is added below
    chunk = max(64, plan.n)
    lhs += h * complex(np.asarray(fp.f(np.array([0.0])), dtype=complex)[0])
    while (2 * J + 3) < _PERIODIZE_TERM_CAP:
        js = np.arange(J + 1, J + 1 + chunk, dtype=float)
        pts = np.concatenate([h * js, -h * js])
        vals = np.asarray(fp.f(pts), dtype=complex)
        phase = np.exp(-2j * np.pi * xi * pts)
        lhs += h * complex(np.sum(vals * phase))
        J += chunk
        if h * _ring_tail(fp.time_decay, h, 0.0, J) <= tol:
            break
        chunk = min(2 * chunk, 10 ** 6)
    else:
        raise ConvergenceError("poisson_check left-hand tail did not converge")
    rhs = periodize(fp.fhat, 1.0 / h, xi, fp.freq_decay, tol)
    return abs(lhs - rhs)


def decomposition_terms(
    fp: FunctionPair, plan: SamplingPlan, tol: float
) -> Tuple[float, float]:
    """The two sampled periodization-defect norms bounding e_l2 from above.

    Returns (time_term, freq_term) = (||(f - P_p f)_{h,n}||,
    ||(fhat - P_{1/h} fhat)_{1/p,n}||), each computed pointwise via
    periodize_tail_many with per-point truncation tolerance tol /
    (3 sqrt(max(p, 1/h))) so the norm-level truncation error stays below
    tol/3 on each side.
    """
    n, h, p = plan.n, plan.h, plan.p
    j = logical_indices(n)
    tol_pt = tol / (3.0 * math.sqrt(max(p, 1.0 / h)))
    time_defect = periodize_tail_many(fp.f, p, h * j, fp.time_decay, tol_pt)
    freq_defect = periodize_tail_many(fp.fhat, 1.0 / h, j / p, fp.freq_decay, tol_pt)
    time_term = math.sqrt(h) * float(np.linalg.norm(time_defect))
    freq_term = float(np.linalg.norm(freq_defect)) / math.sqrt(p)
    return time_term, freq_term
