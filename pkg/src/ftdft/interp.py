"""Cardinal interpolation of the transform from DFT output, with error measures.

The interpolant is Phi(xi) = sqrt(p) sum_{k in [n]} c_k phi(p xi - k) where
c = dft_unitary(f_{h,n}) and phi is an interpolating kernel (phi(j) = delta_j
at integers): the line sinc, or the B-splines B_1, B_2.

The sinc sum is evaluated through the factorization sinc(delta + m - k) =
(-1)^{m-k} sin(pi delta) / (pi (delta + m - k)) with m = rint(p xi) and
delta = p xi - m, so points near nodes never hit the catastrophic
sin(pi t) cancellation at large arguments, and exact nodes are exact.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .corpus import FunctionPair, PolyDecay, SubExpDecay, envelope_tail_integral
from .dft import SampledVector, SamplingPlan, dft_unitary, logical_indices, sample


class Kernel(Enum):
    SINC = "sinc"
    B1 = "b1"
    B2 = "b2"


_BSPLINE_ORDER = {Kernel.B1: 1, Kernel.B2: 2}


def kernel_eval(kernel: Kernel, x):
    """The kernel function itself; exactly delta_{k,0} at integer arguments."""
    x = np.asarray(x, dtype=float)
    if kernel is Kernel.B1:
        return np.where((x >= -0.5) & (x < 0.5), 1.0, 0.0)
    if kernel is Kernel.B2:
        return np.maximum(0.0, 1.0 - np.abs(x))
    # series below |pi x| < 1e-4: next term (pi x)^6/5040 is under 2e-28
    px = np.pi * x
    small = np.abs(px) < 1e-4
    px2 = np.where(small, px * px, 0.0)
    series = 1.0 - px2 / 6.0 + px2 * px2 / 120.0
    with np.errstate(invalid="ignore", divide="ignore"):
        direct = np.where(small, 1.0, np.sin(px) / np.where(small, 1.0, px))
    y = np.where(small, series, direct)
    exact = x == np.rint(x)
    return np.where(exact, np.where(x == 0.0, 1.0, 0.0), y)


@dataclass(frozen=True)
class Interpolant:
    """DFT coefficients plus the kernel reconstructing fhat on the line."""

    coeffs: SampledVector
    p: float
    kernel: Kernel


def make_interpolant(fp: FunctionPair, plan: SamplingPlan, kernel: Kernel) -> Interpolant:
    """Interpolant built from the unitary DFT of the time samples."""
    return Interpolant(dft_unitary(sample(fp, plan, "time")), plan.p, kernel)


def _logical_in_range(k, n: int):
    return (k > -n / 2) & (k <= n / 2)


def _eval_sinc(itp: Interpolant, t: np.ndarray) -> np.ndarray:
    n = itp.coeffs.n
    c = itp.coeffs.values
    klog = logical_indices(n)
    d = np.where(klog % 2 == 0, 1.0, -1.0) * c
    dr, di = np.ascontiguousarray(d.real), np.ascontiguousarray(d.imag)
    m = np.rint(t)
    delta = t - m
    node = delta == 0.0
    delta_safe = np.where(node, 0.5, delta)
    mi = m.astype(np.int64)
    sign_m = np.where(mi % 2 == 0, 1.0, -1.0)
    pref = math.sqrt(itp.p) * sign_m * np.sin(np.pi * delta_safe) / np.pi
    out = np.empty(t.shape, dtype=complex)
    chunk = max(1, min(len(t), (1 << 23) // max(n, 1)))
    for lo in range(0, len(t), chunk):
        hi = min(lo + chunk, len(t))
        D = delta_safe[lo:hi, None] + (m[lo:hi, None] - klog[None, :])
        R = 1.0 / D
        out[lo:hi] = pref[lo:hi] * (R @ dr + 1j * (R @ di))
    if np.any(node):
        ok = node & _logical_in_range(mi, n)
        out[node & ~ok] = 0.0
        idx = np.flatnonzero(ok)
        out[idx] = math.sqrt(itp.p) * c[mi[idx] % n]
    return out


def _eval_bspline(itp: Interpolant, t: np.ndarray) -> np.ndarray:
    n = itp.coeffs.n
    c = itp.coeffs.values
    sp = math.sqrt(itp.p)
    if itp.kernel is Kernel.B1:
        k = np.floor(t + 0.5).astype(np.int64)
        ok = _logical_in_range(k, n)
        return sp * np.where(ok, c[k % n], 0.0 + 0.0j)
    k0 = np.floor(t).astype(np.int64)
    frac = t - k0
    k1 = k0 + 1
    ok0 = _logical_in_range(k0, n)
    ok1 = _logical_in_range(k1, n)
    v0 = np.where(ok0, c[k0 % n], 0.0 + 0.0j)
    v1 = np.where(ok1, c[k1 % n], 0.0 + 0.0j)
    return sp * ((1.0 - frac) * v0 + frac * v1)


def interp_eval(itp: Interpolant, xi):
    """Phi(xi); scalar in, complex out; arrays evaluate elementwise."""
    arr = np.atleast_1d(np.asarray(xi, dtype=float))
    t = itp.p * arr
    out = _eval_sinc(itp, t) if itp.kernel is Kernel.SINC else _eval_bspline(itp, t)
    return complex(out[0]) if np.ndim(xi) == 0 else out.reshape(np.shape(xi))


@dataclass(frozen=True)
class InterpL2Result:
    """Quadrature value over the covered window plus a bound on everything outside."""

    main: float
    tail_bound: float


def _freq_tail_norm(fp: FunctionPair, W: float) -> float:
    """Upper bound for ||fhat||_{L^2(|xi| > W)} from the decay metadata."""
    d = fp.freq_decay
    S = d.sup_weighted
    if isinstance(d, PolyDecay):
        b = d.exponent
        if 2.0 * b <= 1.0:
            return math.inf
        return S * math.sqrt(2.0 * (1.0 + W) ** (1.0 - 2.0 * b) / (2.0 * b - 1.0))
    sq = envelope_tail_integral(SubExpDecay(2.0 * d.rate, d.power, 1.0), W)
    return S * math.sqrt(2.0 * sq) if math.isfinite(sq) else math.inf


def _panel_points(edges: np.ndarray, q: int):
    nodes, wts = np.polynomial.legendre.leggauss(q)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1:] - edges[:-1])
    pts = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
    ws = (half[:, None] * wts[None, :]).ravel()
    return pts, ws


def _warn_kernel_order(fp: FunctionPair, kernel: Kernel):
    if kernel is Kernel.SINC:
        return
    order = _BSPLINE_ORDER[kernel]
    t = fp.time_decay
    sat = isinstance(t, SubExpDecay) or t.exponent - 0.5 > order + 1e-12
    if sat:
        warnings.warn(
            f"time-side smoothness exceeds the B{order} kernel order; "
            "the interpolation error rate saturates at the kernel order",
            stacklevel=3,
        )


def interp_l2_error(
    fp: FunctionPair,
    plan: SamplingPlan,
    kernel: Kernel,
    points_per_cell: int = 8,
    window_cells: int = 4,
    tail_tol: float = None,
) -> InterpL2Result:
    """L2 deviation ||fhat - Phi|| split into a quadrature window and a tail bound.

    The window [-W, W] with W = n/(2p) + window_cells/p is integrated by
    composite Gauss-Legendre over panels of width 1/(2p) (kernel breakpoints
    only ever sit on panel edges) with points_per_cell nodes per width-1/p
    cell.  tail_bound adds the decay tail of fhat beyond W to the
    interpolant's exterior energy (Parseval for sinc, the leftover support
    sliver for B-splines).  A second pass at half resolution guards against
    under-resolution; if tail_tol is given, a tail_bound above it raises
    with advice to widen the window.
    """
    if points_per_cell < 2:
        raise ValueError("points_per_cell must be >= 2")
    if window_cells < 0:
        raise ValueError("window_cells must be >= 0")
    _warn_kernel_order(fp, kernel)
    n, p = plan.n, plan.p
    itp = make_interpolant(fp, plan, kernel)
    half_panels = 2 * (n + 2 * window_cells)
    W = (n / 2.0 + window_cells) / p
    edges = np.linspace(-W, W, half_panels + 1)
    q1 = max(2, (points_per_cell + 1) // 2)

    def _window_pass(q: int):
        pts, ws = _panel_points(edges, q)
        fh = np.asarray(fp.fhat(pts), dtype=complex)
        ph = interp_eval(itp, pts)
        main_sq = float(np.sum(ws * np.abs(fh - ph) ** 2))
        return main_sq, float(np.sum(ws * np.abs(ph) ** 2)), float(
            np.sum(ws * np.abs(fh) ** 2)
        )

    main_sq, win_energy, fh_energy = _window_pass(q1)
    main = math.sqrt(max(main_sq, 0.0))
    check_sq, _, _ = _window_pass(max(1, q1 // 2))
    check = math.sqrt(max(check_sq, 0.0))
    scale = 1e-13 * (math.sqrt(fh_energy) + math.sqrt(win_energy) + 1e-300)
    if max(main, check) > scale and abs(main - check) > 0.25 * max(main, check):
        raise ValueError(
            f"quadrature under-resolved at points_per_cell={points_per_cell}; "
            "increase points_per_cell"
        )
    tail = _freq_tail_norm(fp, W)
    if kernel is Kernel.SINC:
        total_energy = float(np.sum(np.abs(itp.coeffs.values) ** 2))
        tail += math.sqrt(max(0.0, total_energy - win_energy))
    else:
        supp = (n / 2.0 + _BSPLINE_ORDER[kernel] / 2.0) / p
        if supp > W:
            m = max(2, int(math.ceil((supp - W) * 4.0 * p)))
            for sgn in (1.0, -1.0):
                e = np.linspace(sgn * W, sgn * supp, m + 1)
                pts, ws = _panel_points(e, q1)
                tail += math.sqrt(
                    abs(float(np.sum(ws * np.abs(interp_eval(itp, pts)) ** 2)))
                )
    if tail_tol is not None and tail > tail_tol:
        raise ValueError(
            f"tail bound {tail:g} exceeds tail_tol={tail_tol:g}; increase window_cells"
        )
    return InterpL2Result(main, tail)


def interp_sup_error(fp: FunctionPair, plan: SamplingPlan, kernel: Kernel, grid) -> float:
    """Max pointwise deviation over the grid, restricted to |xi| <= n/(2p).

    Scoped to the finitely supported kernels; the covered window is the
    node window [-n/(2p), n/(2p)].
    """
    if kernel is Kernel.SINC:
        raise ValueError("sup error is measured for the B-spline kernels (B1, B2)")
    _warn_kernel_order(fp, kernel)
    g = np.asarray(grid, dtype=float).ravel()
    g = g[np.abs(g) <= plan.n / (2.0 * plan.p)]
    if g.size == 0:
        raise ValueError("no grid points inside the covered window")
    itp = make_interpolant(fp, plan, kernel)
    dev = np.abs(np.asarray(fp.fhat(g), dtype=complex) - interp_eval(itp, g))
    return float(np.max(dev))
