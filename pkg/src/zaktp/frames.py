"""Gabor frame bounds on integer lattices and discrete periodized frames.

Frame bounds for the lattice alpha = 1, beta = 1/N are grid estimates of
ess inf / ess sup of Sum_{j<N} |Zg(x, omega + j/N)|^2 over the unit cell.
The discrete route periodizes and samples the window to C^K and tests the
frame property by brute-force eigenvalues of the frame operator.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ebspline import eval_ebspline
from .errors import Indivisible
from .weights import WeightMultiset, eval_tp
from .zak import _decay_constant, _spline_for, zak_prefactor


@dataclass(frozen=True)
class FrameBoundsReport:
    N: int
    grid_resolution: tuple[int, int]
    A_est: float
    B_est: float
    min_location: tuple[float, float]
    refinement_trace: tuple[tuple[tuple[int, int], float], ...]

    def to_json_dict(self):
        return {
            "schema": "framebounds/1",
            "N": self.N,
            "grid_resolution": list(self.grid_resolution),
            "A_est": self.A_est,
            "B_est": self.B_est,
            "min_location": list(self.min_location),
            "refinement_trace": [
                {"resolution": list(res), "A_est": a} for res, a in self.refinement_trace
            ],
        }


@dataclass(frozen=True)
class DiscreteWindow:
    """Periodized samples v_j = sum_k g(j + kK) of a TP window, j in Z_K."""

    K: int
    values: tuple[float, ...]
    weights: WeightMultiset

    def to_csv_rows(self):
        yield ("index", "value")
        for j, v in enumerate(self.values):
            yield (j, v)


def _zak_squares(weights: WeightMultiset, N: int, n_x: int, n_w: int, extra=None):
    """Grid of Sum_{j<N} |Zg(x, omega + j/N)|^2 plus optional extra points."""
    B = _spline_for(weights.raw)
    xs = np.arange(n_x) / n_x
    oms = np.arange(n_w) / n_w
    pts = [(x, om) for om in oms for x in xs]
    if extra:
        pts.extend(extra)
    xs_all = np.asarray([p[0] for p in pts])
    om_all = np.asarray([p[1] for p in pts])
    bv = np.stack([eval_ebspline(B, xs_all + k) for k in range(B.m)])
    ks = np.arange(B.m)
    total = np.zeros(len(pts))
    for j in range(N):
        om_j = om_all + j / N
        # distinct omegas are few on a uniform grid; evaluate per unique value
        pref = {om: zak_prefactor(weights, complex(om)) for om in np.unique(om_j)}
        phases = np.exp(-2j * np.pi * np.outer(om_j, ks))
        z = np.einsum("pk,kp->p", phases, bv) * np.asarray([pref[o] for o in om_j])
        total += np.abs(z) ** 2
    return pts, total


def frame_bounds(
    weights: WeightMultiset,
    N: int,
    resolution: tuple[int, int] = (64, 64),
    refinements: int = 3,
    zero_hint: float | None = None,
) -> FrameBoundsReport:
    """Grid estimates of the optimal frame bounds for alpha = 1, beta = 1/N.

    When N = 1 the grid additionally contains the known zero (x~, 1/2) of
    the Zak transform, so A_est is exactly zero there.  The refinement
    trace records A_est over ``refinements`` grid doublings.
    """
    if N < 1:
        raise ValueError("N must be positive")
    n_x, n_w = resolution
    extra = None
    if N == 1:
        if zero_hint is None:
            from .analysis import locate_zero_half

            zero_hint = locate_zero_half(weights) if weights.n >= 2 else None
        if zero_hint is not None:
            extra = [(zero_hint, 0.5)]
    trace = []
    for step in range(refinements + 1):
        res = (n_x << step, n_w << step)
        pts, vals = _zak_squares(weights, N, res[0], res[1], extra)
        a = float(np.min(vals))
        b = float(np.max(vals))
        loc = pts[int(np.argmin(vals))]
        trace.append((res, a))
    return FrameBoundsReport(
        N=N,
        grid_resolution=res,
        A_est=a,
        B_est=b,
        min_location=(float(loc[0]), float(loc[1])),
        refinement_trace=tuple(trace),
    )


def periodize_sample(weights: WeightMultiset, K: int, tol: float = 1e-14) -> DiscreteWindow:
    """Periodized integer samples of the window with tail below tol."""
    if K < 1:
        raise ValueError("K must be positive")
    if tol <= 0:
        raise ValueError("tol must be positive")
    C = _decay_constant(weights.raw)
    a0 = weights.a0
    # |g(j + kK)| <= C e^{-a0(|k| K - K)}; choose k-range so the tail sums below tol
    kp = 1
    while 2.0 * C * math.exp(-a0 * (kp * K - K)) / (1.0 - math.exp(-a0 * K)) >= tol:
        kp += 1
        if kp > 10**6:
            break
    js = np.arange(K)
    vals = np.zeros(K)
    for k in range(-kp, kp + 1):
        vals += eval_tp(weights, js + k * K)
    return DiscreteWindow(K=K, values=tuple(float(v) for v in vals), weights=weights)


def discrete_frame_test(window: DiscreteWindow, M: int) -> dict:
    """Brute-force frame test of the discrete Gabor system on C^K.

    The system consists of translates by M and modulations by 1/M of the
    window: phi_{k,l}[j] = v[(j - kM) mod K] e^{2 pi i j l / M}; the frame
    operator's extreme eigenvalues decide the frame property.
    """
    K = window.K
    if M < 1:
        raise ValueError("M must be positive")
    if K % M != 0:
        raise Indivisible(f"M = {M} does not divide K = {K}")
    v = np.asarray(window.values)
    j = np.arange(K)
    vectors = []
    for k in range(K // M):
        shifted = v[(j - k * M) % K]
        for l in range(M):
            vectors.append(shifted * np.exp(2j * np.pi * j * l / M))
    Phi = np.stack(vectors)  # rows are the frame vectors
    S = Phi.conj().T @ Phi
    eig = np.linalg.eigvalsh(S)
    lam_min, lam_max = float(eig[0]), float(eig[-1])
    return {
        "K": K,
        "M": M,
        "lambda_min": lam_min,
        "lambda_max": lam_max,
        "is_frame": bool(lam_min > 1e-10 * lam_max),
    }
