"""Zak transforms of TP windows and splines, with certified truncation.

Two independent evaluation routes are provided: the direct quasi-periodic
series with a geometric tail bound, and the exact factorization through the
associated exponential B-spline (finite sum, no truncation error).  The
frequency argument may be complex, s = omega + i*tau, inside the strip
|tau| < a0 / (2*pi).
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from numpy.polynomial.legendre import leggauss

from .ebspline import PiecewiseExpPoly, build_ebspline, eval_ebspline
from .errors import PoleHit, SlowDecay, StripViolation, ToleranceUnreachable
from .weights import WeightMultiset, eval_tp, fourier_tp, make_weights

_STRIP_MARGIN = 1e-6
_K_CAP = 10**6


@dataclass(frozen=True)
class ComplexFrequency:
    """Frequency point s = omega + i*tau of the complexified Zak transform."""

    omega: float
    tau: float = 0.0

    @property
    def s(self) -> complex:
        return complex(self.omega, self.tau)


def _as_s(s) -> complex:
    if isinstance(s, ComplexFrequency):
        return s.s
    return complex(s)


def _check_strip(weights: WeightMultiset, tau: float):
    edge = weights.a0 / (2.0 * np.pi)
    if abs(tau) >= (1.0 - _STRIP_MARGIN) * edge:
        raise StripViolation(
            f"|tau| = {abs(tau):.6g} is outside the open strip (edge {edge:.6g})"
        )


@functools.lru_cache(maxsize=128)
def _decay_constant(raw: tuple[float, ...]) -> float:
    """C with |g(x)| <= C e^{-a0 |x|} on the far field, safety factor 2."""
    w = make_weights(raw, coalesce_tol=0.0)
    a0 = w.a0
    xs = np.concatenate([np.linspace(1.0, 40.0, 200), -np.linspace(1.0, 40.0, 200)]) / a0
    vals = np.abs(eval_tp(w, xs)) * np.exp(a0 * np.abs(xs))
    near = np.max(np.abs(eval_tp(w, np.linspace(-1.0, 1.0, 64) / a0)))
    return 2.0 * max(float(np.max(vals)), float(near), 1e-300)


def _series_length(weights: WeightMultiset, tau: float, tol: float) -> tuple[int, float]:
    """Truncation K and the geometric tail bound it guarantees."""
    a0 = weights.a0
    C = _decay_constant(weights.raw)
    rate = a0 - 2.0 * np.pi * abs(tau)
    r = math.exp(-rate)
    # tail over |k| > K: 2 C e^{a0} r^(K+1) / (1 - r)
    K = 8
    while True:
        bound = 2.0 * C * math.exp(a0) * r ** (K + 1) / (1.0 - r)
        if bound < tol:
            return K, bound
        K = max(K + 1, int(K * 1.5))
        if K > _K_CAP:
            raise ToleranceUnreachable(
                f"series needs more than {_K_CAP} terms (tau too near the strip edge?)"
            )


def zak_tp_with_tail(
    weights: WeightMultiset, x: float, s, tol: float = 1e-10
) -> tuple[complex, float]:
    """Direct Zak series value and the certified truncation tail bound."""
    sc = _as_s(s)
    _check_strip(weights, sc.imag)
    n_shift = math.floor(x)
    x0 = x - n_shift
    K, bound = _series_length(weights, sc.imag, tol)
    k = np.arange(-K, K + 1)
    g = np.asarray(eval_tp(weights, x0 + k), dtype=float)
    # combine magnitudes in log space: g * e^{2 pi k tau} can pair overflow
    with np.errstate(divide="ignore"):
        mag = np.exp(np.log(np.abs(g)) + 2.0 * np.pi * k * sc.imag)
    phase = np.exp(-2j * np.pi * k * sc.real)
    val = complex(np.sum(np.sign(g) * mag * phase))
    if n_shift != 0:
        val *= np.exp(2j * np.pi * n_shift * sc)
    return val, bound


def zak_tp(weights: WeightMultiset, x: float, s, tol: float = 1e-10) -> complex:
    """Zak transform of the TP window by the direct series (the oracle route)."""
    return zak_tp_with_tail(weights, x, s, tol)[0]


def zak_ebspline(B: PiecewiseExpPoly, x, s) -> complex | np.ndarray:
    """Zak transform of a compactly supported spline: exact finite sum.

    Any complex s is legal.  Vectorized over x.
    """
    sc = _as_s(s)
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    n_shift = np.floor(xs)
    x0 = xs - n_shift
    out = np.zeros(xs.shape, dtype=complex)
    for k in range(B.m):
        out += eval_ebspline(B, x0 + k) * np.exp(-2j * np.pi * k * sc)
    out *= np.exp(2j * np.pi * n_shift * sc)
    if np.isscalar(x) or np.asarray(x).ndim == 0:
        return complex(out[0])
    return out


@functools.lru_cache(maxsize=128)
def _spline_for(raw: tuple[float, ...]) -> PiecewiseExpPoly:
    return build_ebspline([-a for a in raw])


def zak_prefactor(weights: WeightMultiset, s) -> complex:
    """The factor prod a_nu / (1 - e^{-(a_nu + 2 pi i s)}) of the factorization."""
    sc = _as_s(s)
    out = 1.0 + 0.0j
    for a in weights.raw:
        denom = 1.0 - np.exp(-(a + 2j * np.pi * sc))
        if abs(denom) < 1e-14:
            raise PoleHit(f"prefactor denominator vanishes for weight {a} at s = {sc}")
        out *= a / denom
    return complex(out)


def zak_factorized(weights: WeightMultiset, x, s) -> complex | np.ndarray:
    """Zak transform via the spline factorization (exact, preferred for scans)."""
    B = _spline_for(weights.raw)
    return zak_prefactor(weights, s) * zak_ebspline(B, x, s)


def extend_quasiperiodic(z: complex, shift_n: int, shift_m: int, omega: float) -> complex:
    """Value at (x + shift_n, omega + shift_m) from the value z at (x, omega)."""
    return z * np.exp(2j * np.pi * shift_n * omega)


def zak_inversion_check(weights: WeightMultiset, omega: float, quad_points: int = 256) -> complex:
    """Gauss-Legendre quadrature of Z g(x, w) e^{-2 pi i x w} over one period.

    The caller compares the result with the Fourier transform at w.
    """
    if quad_points < 16:
        raise ValueError("quad_points must be at least 16")
    nodes, wts = leggauss(quad_points)
    x = 0.5 * (nodes + 1.0)
    vals = zak_factorized(weights, x, omega) * np.exp(-2j * np.pi * x * omega)
    return complex(np.sum(0.5 * wts * vals))


def _zak_series_lattice(
    weights: WeightMultiset, alpha: float, x: float, omega: float, tol: float = 1e-10
) -> complex:
    """Z_alpha g(x, w) = sum_k g(x + alpha k) e^{-2 pi i k alpha w}, truncated."""
    a0 = weights.a0
    C = _decay_constant(weights.raw)
    rate = a0 * alpha
    K = max(16, int(math.ceil((math.log(C / tol) + a0 * (abs(x) + 1)) / rate)) + 2)
    k = np.arange(-K, K + 1)
    g = np.asarray(eval_tp(weights, x + alpha * k), dtype=float)
    return complex(np.sum(g * np.exp(-2j * np.pi * k * alpha * omega)))


def zak_dilation_check(
    weights: WeightMultiset,
    alpha: float,
    x: float,
    omega: float,
    identities: Sequence[str] = ("d",),
    tol: float = 1e-10,
) -> dict[str, tuple[complex, complex]]:
    """Evaluate both sides of the scaling identity (d) and, on request, the
    Fourier-side identity (c); each side uses an independent route.

    (d):  Z_alpha g(x, w)  vs  Z_1 g(alpha .)(x/alpha, alpha w)
    (c):  alpha Z_alpha g(x, w)  vs  e^{2 pi i x w} Z_{1/alpha} g-hat(w, -x)
    """
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    out: dict[str, tuple[complex, complex]] = {}
    if "d" in identities:
        lhs = _zak_series_lattice(weights, alpha, x, omega, tol)
        scaled = make_weights([alpha * a for a in weights.raw], coalesce_tol=0.0)
        rhs = zak_factorized(scaled, x / alpha, alpha * omega) / alpha
        out["d"] = (lhs, complex(rhs))
    if "c" in identities:
        if weights.n < 2:
            raise SlowDecay("identity (c) needs type n >= 2 for a summable Fourier side")
        lhs = alpha * _zak_series_lattice(weights, alpha, x, omega, tol)
        # algebraic tail: |g-hat(w')| <= prod|a| (2 pi |w'|)^{-n}
        n = weights.n
        prod_abs = float(np.prod(np.abs(np.asarray(weights.raw))))
        K = 64
        while True:
            tail = (
                2.0
                * prod_abs
                * (alpha / (2.0 * np.pi)) ** n
                * (K - alpha * abs(omega) - 1) ** (-(n - 1))
                / (n - 1)
            )
            if tail < 1e-8 or K > 10**7:
                break
            K *= 4
        k = np.arange(-K, K + 1)
        fh = fourier_tp(weights, omega + k / alpha)
        rhs = np.exp(2j * np.pi * x * omega) * np.sum(fh * np.exp(2j * np.pi * k * x / alpha))
        out["c"] = (lhs, complex(rhs))
    return out


# ---------------------------------------------------------------------------
# Grid scans


@dataclass(frozen=True)
class ZakGrid:
    """Sampled Zak values over a rectangle inside the lattice cell [0,1)^2."""

    x_samples: tuple[float, ...]
    omega_samples: tuple[float, ...]
    tau: float
    values: np.ndarray = field(repr=False)  # shape (n_omega, n_x)
    tail_bound: float
    source: str  # "direct_series" | "ebspline_factorized"

    def to_csv_rows(self):
        yield ("x", "omega", "tau", "re", "im", "abs")
        for i, om in enumerate(self.omega_samples):
            for j, xx in enumerate(self.x_samples):
                v = self.values[i, j]
                yield (xx, om, self.tau, v.real, v.imag, abs(v))

    def to_json_dict(self):
        return {
            "schema": "zakgrid/1",
            "x_samples": list(self.x_samples),
            "omega_samples": list(self.omega_samples),
            "tau": self.tau,
            "tail_bound": self.tail_bound,
            "source": self.source,
            "re": [[v.real for v in row] for row in self.values],
            "im": [[v.imag for v in row] for row in self.values],
        }


def compute_zak_grid(
    weights: WeightMultiset,
    x_samples: Sequence[float],
    omega_samples: Sequence[float],
    tau: float = 0.0,
    source: str = "ebspline_factorized",
    tol: float = 1e-10,
) -> ZakGrid:
    """Scan the Zak transform over a rectangle of one lattice cell."""
    xs = np.asarray(x_samples, dtype=float)
    oms = np.asarray(omega_samples, dtype=float)
    if np.any(xs < 0) or np.any(xs >= 1) or np.any(oms < 0) or np.any(oms >= 1):
        raise ValueError("grid must lie within the lattice cell [0,1) x [0,1)")
    _check_strip(weights, tau)
    values = np.empty((len(oms), len(xs)), dtype=complex)
    tail = 0.0
    if source == "ebspline_factorized":
        B = _spline_for(weights.raw)
        bv = np.stack([eval_ebspline(B, xs + k) for k in range(B.m)])  # (m, nx)
        for i, om in enumerate(oms):
            s = complex(om, tau)
            phases = np.exp(-2j * np.pi * np.arange(B.m) * s)
            values[i] = zak_prefactor(weights, s) * (phases @ bv)
    elif source == "direct_series":
        for i, om in enumerate(oms):
            for j, xx in enumerate(xs):
                v, b = zak_tp_with_tail(weights, float(xx), complex(om, tau), tol)
                values[i, j] = v
                tail = max(tail, b)
    else:
        raise ValueError(f"unknown source {source!r}")
    return ZakGrid(
        x_samples=tuple(float(v) for v in xs),
        omega_samples=tuple(float(v) for v in oms),
        tau=float(tau),
        values=values,
        tail_bound=tail,
        source=source,
    )
