"""Exponential B-splines by exact symbolic convolution.

A spline with weight vector (lambda_1, ..., lambda_m) is the m-fold
convolution of the functions e^{lambda_j t} chi_[0,1).  Each convolution step
is carried out in closed form on the piecewise polynomial-times-exponential
representation, so no quadrature error enters any downstream identity.
Pieces live on local coordinates t = x - k in [0,1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

_P = np.polynomial.polynomial

# exponents closer than this are treated as equal (the eta = lambda branch)
_EXP_EQ_TOL = 1e-12


@dataclass(frozen=True)
class WeightVector:
    """Spline weight vector: zeros are allowed, unlike TP weights."""

    lambdas: tuple[float, ...]
    clusters: tuple[tuple[float, int], ...]

    @property
    def m(self) -> int:
        return len(self.lambdas)


def make_weight_vector(values: Sequence[float], coalesce_tol: float = 1e-9) -> WeightVector:
    vals = [float(v) for v in values]
    if not vals:
        raise ValueError("weight vector is empty")
    for v in vals:
        if not math.isfinite(v):
            raise ValueError(f"weight {v!r} is not finite")
    order = np.argsort(vals)
    groups: list[list[float]] = []
    for idx in order:
        v = vals[idx]
        if groups and v - groups[-1][-1] <= coalesce_tol:
            groups[-1].append(v)
        else:
            groups.append([v])
    clusters = tuple((float(np.mean(g)), len(g)) for g in groups)
    # snap raw entries to their cluster mean so repeated exponents compare equal
    snapped = []
    for v in vals:
        for b, _ in clusters:
            if abs(v - b) <= coalesce_tol + 1e-300:
                snapped.append(b)
                break
    return WeightVector(lambdas=tuple(snapped), clusters=clusters)


@dataclass(frozen=True)
class PiecewiseExpPoly:
    """Piecewise sums of poly(t) * e^{eta t} on unit knot intervals.

    ``pieces[k]`` is a tuple of (eta, ascending coefficients) terms valid for
    x in [k, k+1) with local coordinate t = x - k; support is exactly [0, m].
    Coefficients may be real or complex.
    """

    pieces: tuple[tuple[tuple[float, tuple], ...], ...]

    @property
    def m(self) -> int:
        return len(self.pieces)

    @property
    def is_complex(self) -> bool:
        return any(
            np.iscomplexobj(np.asarray(c)) for piece in self.pieces for _, c in piece
        )

    def piece_eval(self, k: int, t):
        """Evaluate piece k at local coordinates t (no support clipping)."""
        t = np.asarray(t)
        dtype = complex if self.is_complex else float
        out = np.zeros(t.shape, dtype=dtype)
        for eta, coeffs in self.pieces[k]:
            out += _P.polyval(t, np.asarray(coeffs)) * np.exp(eta * t)
        return out

    def __call__(self, x):
        return eval_ebspline(self, x)


def _add_term(d: dict, eta: float, coeffs: np.ndarray):
    for key in d:
        if abs(key - eta) <= _EXP_EQ_TOL:
            a, b = d[key], coeffs
            if len(a) < len(b):
                a, b = b, a
            a = a.astype(np.result_type(a, b), copy=True)
            a[: len(b)] += b
            d[key] = a
            return
    d[eta] = np.asarray(coeffs).copy()


def _antideriv_exp(p: np.ndarray, c: float) -> np.ndarray:
    """q with d/dv [q(v) e^{c v}] = p(v) e^{c v}, for c != 0."""
    q = np.zeros_like(p, dtype=np.result_type(p, float))
    term = p.astype(q.dtype)
    sign = 1.0
    k = 0
    while term.size and np.any(term != 0):
        q[: len(term)] += sign * term / c ** (k + 1)
        term = _P.polyder(term)
        sign = -sign
        k += 1
        if k > len(p) + 1:
            break
    return q


def _convolve_factor(pieces: list[dict], lam: float) -> list[dict]:
    """Convolve a piecewise exp-poly with e^{lam t} chi_[0,1)."""
    m = len(pieces)
    new: list[dict] = [dict() for _ in range(m + 1)]
    e_lam = math.exp(lam)
    for j, piece in enumerate(pieces):
        for eta, p in piece.items():
            c = eta - lam
            if abs(c) > _EXP_EQ_TOL:
                q = _antideriv_exp(p, c)
                q0 = _P.polyval(0.0, q)
                q1 = _P.polyval(1.0, q)
                # A-part on piece j:  e^{lam t} (G(t) - G(0)), G = q e^{c v}
                _add_term(new[j], eta, q)
                _add_term(new[j], lam, np.asarray([-q0]))
                # B-part on piece j+1:  e^{lam (t+1)} (G(1) - G(t))
                _add_term(new[j + 1], lam, np.asarray([math.exp(eta) * q1]))
                _add_term(new[j + 1], eta, -e_lam * q)
            else:
                Q = _P.polyint(p)
                Q0 = _P.polyval(0.0, Q)
                Q1 = _P.polyval(1.0, Q)
                QA = Q.copy()
                QA[0] -= Q0
                _add_term(new[j], lam, QA)
                QB = -Q
                QB[0] += Q1
                _add_term(new[j + 1], lam, e_lam * QB)
    return new


def build_ebspline(lam: WeightVector | Sequence[float]) -> PiecewiseExpPoly:
    """Construct the spline for the weight vector by exact convolution."""
    if not isinstance(lam, WeightVector):
        lam = make_weight_vector(lam)
    lambdas = lam.lambdas
    pieces: list[dict] = [{lambdas[0]: np.asarray([1.0])}]
    for lj in lambdas[1:]:
        pieces = _convolve_factor(pieces, lj)
    return _dicts_to_pieces_any(pieces)


def eval_ebspline(B: PiecewiseExpPoly, x):
    """Evaluate the spline at x (scalar or array); zero outside [0, m]."""
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    dtype = complex if B.is_complex else float
    out = np.zeros(xs.shape, dtype=dtype)
    k = np.floor(xs).astype(int)
    inside = (xs >= 0) & (xs < B.m)
    for kk in range(B.m):
        sel = inside & (k == kk)
        if np.any(sel):
            out[sel] = B.piece_eval(kk, xs[sel] - kk)
    if np.isscalar(x) or np.asarray(x).ndim == 0:
        return out[0] if B.is_complex else float(out[0].real)
    return out


def fourier_ebspline(lam: WeightVector | Sequence[float], omega):
    """Fourier transform: the product of (e^{lambda_j - 2 pi i w} - 1)/(lambda_j - 2 pi i w).

    The removable singularity at lambda_j = 2 pi i w (only reachable for
    lambda_j = 0, w = 0 on the real line) is handled by a series branch.
    """
    if not isinstance(lam, WeightVector):
        lam = make_weight_vector(lam)
    w = np.atleast_1d(np.asarray(omega, dtype=float))
    out = np.ones(w.shape, dtype=complex)
    for lj in lam.lambdas:
        z = lj - 2j * np.pi * w
        small = np.abs(z) < 1e-6
        factor = np.empty_like(out)
        zs = z[~small]
        factor[~small] = (np.exp(zs) - 1.0) / zs
        zt = z[small]
        factor[small] = 1.0 + zt / 2.0 + zt**2 / 6.0 + zt**3 / 24.0
        out *= factor
    if np.isscalar(omega) or np.asarray(omega).ndim == 0:
        return complex(out[0])
    return out


def reduce_ebspline(B: PiecewiseExpPoly, eta: float) -> PiecewiseExpPoly:
    """Apply the reduction operator e^{eta x} d/dx (e^{-eta x} .) piecewise.

    Each term p(t) e^{mu t} maps to (p' + (mu - eta) p)(t) e^{mu t}; knot
    discontinuities are ignored (classical derivative between knots).
    """
    dicts = []
    for piece in B.pieces:
        d: dict = {}
        for mu, coeffs in piece:
            p = np.asarray(coeffs)
            dp = _P.polyder(p) if len(p) > 1 else np.zeros(1, dtype=p.dtype)
            q = (mu - eta) * p
            q = q.astype(np.result_type(q, dp), copy=True)
            q[: len(dp)] += dp
            _add_term(d, mu, q)
        dicts.append(d)
    return _dicts_to_pieces_any(dicts)


def _dicts_to_pieces_any(dicts: list[dict]) -> PiecewiseExpPoly:
    # like _dicts_to_pieces but preserving complex coefficients
    pieces = []
    for d in dicts:
        terms = []
        for eta in sorted(d):
            coeffs = np.asarray(d[eta])
            trimmed = np.trim_zeros(coeffs, "b")
            if trimmed.size == 0:
                trimmed = np.zeros(1, dtype=coeffs.dtype)
            terms.append((float(eta), tuple(trimmed)))
        pieces.append(tuple(terms))
    return PiecewiseExpPoly(pieces=tuple(pieces))
