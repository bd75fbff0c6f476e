"""Truncation families of TP windows and their convergence observables.

An "infinite type" window is handled operationally: a weight generator
produces prefixes, and convergence is measured between prefixes (Cauchy
style) in the weighted sup norm on the line and uniformly on strips for the
Zak transform.  The limit function itself is never evaluated.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import polygamma

from .errors import SigmaTooLarge, StripViolation
from .weights import WeightMultiset, eval_tp, make_weights


@dataclass(frozen=True)
class WeightGenerator:
    """Weight sequence rule with a summable inverse-square tail."""

    rule: str  # harmonic | alternating | geometric | explicit
    c: float = 1.0
    r: float = 2.0
    values: tuple[float, ...] = ()

    @classmethod
    def harmonic(cls, c: float = 1.0) -> "WeightGenerator":
        if c == 0:
            raise ValueError("c must be nonzero")
        return cls(rule="harmonic", c=float(c))

    @classmethod
    def alternating(cls, c: float = 1.0) -> "WeightGenerator":
        if c == 0:
            raise ValueError("c must be nonzero")
        return cls(rule="alternating", c=float(c))

    @classmethod
    def geometric(cls, c: float = 1.0, r: float = 2.0) -> "WeightGenerator":
        if c == 0:
            raise ValueError("c must be nonzero")
        if r <= 1.0:
            raise ValueError("geometric rule needs r > 1")
        return cls(rule="geometric", c=float(c), r=float(r))

    @classmethod
    def explicit(cls, values: Sequence[float]) -> "WeightGenerator":
        vals = tuple(float(v) for v in values)
        if any(v == 0 for v in vals):
            raise ValueError("weights must be nonzero")
        return cls(rule="explicit", values=vals)

    def weight(self, nu: int) -> float:
        """The nu-th weight, 1-based."""
        if nu < 1:
            raise ValueError("nu is 1-based")
        if self.rule == "harmonic":
            return self.c * nu
        if self.rule == "alternating":
            return self.c * nu * (-1) ** nu
        if self.rule == "geometric":
            return self.c * self.r**nu
        if self.rule == "explicit":
            if nu > len(self.values):
                raise ValueError(f"explicit rule has only {len(self.values)} weights")
            return self.values[nu - 1]
        raise ValueError(f"unknown rule {self.rule!r}")

    def square_sum_tail(self, n: int) -> float:
        """Sum of a_nu^{-2} over nu > n, in closed form per rule."""
        if n < 0:
            raise ValueError("n must be nonnegative")
        if self.rule in ("harmonic", "alternating"):
            return float(polygamma(1, n + 1)) / self.c**2
        if self.rule == "geometric":
            q = self.r ** (-2)
            return q ** (n + 1) / (self.c**2 * (1.0 - q))
        if self.rule == "explicit":
            return float(sum(v ** (-2) for v in self.values[n:]))
        raise ValueError(f"unknown rule {self.rule!r}")


def truncate(gen: WeightGenerator, n: int) -> WeightMultiset:
    """First n weights of the generator as a TP weight multiset."""
    if n < 1:
        raise ValueError("n must be positive")
    return make_weights([gen.weight(nu) for nu in range(1, n + 1)])


def weighted_sup_distance(
    w_n: WeightMultiset,
    w_m: WeightMultiset,
    sigma: float,
    grid: np.ndarray | None = None,
) -> float:
    """max over the grid of |g_n(x) - g_m(x)| e^{sigma |x|}.

    The default grid covers [-R, R] with R = 40 / a0, where the windows are
    below 4e-18 of their peak.
    """
    a0 = min(w_n.a0, w_m.a0)
    if sigma < 0:
        raise ValueError("sigma must be nonnegative")
    if sigma >= a0:
        raise SigmaTooLarge(f"sigma = {sigma} >= a0 = {a0}")
    if grid is None:
        R = 40.0 / a0
        grid = np.linspace(-R, R, 4001)
    grid = np.asarray(grid, dtype=float)
    diff = np.abs(eval_tp(w_n, grid) - eval_tp(w_m, grid))
    return float(np.max(diff * np.exp(sigma * np.abs(grid))))


def _zak_series(w: WeightMultiset, xs: np.ndarray, omega: float, tau: float) -> np.ndarray:
    """Zg(x, omega + i tau) over the x-grid by the direct lattice series."""
    margin = w.a0 - 2.0 * np.pi * abs(tau)
    kmax = int(math.ceil(60.0 / margin)) + 2
    ks = np.arange(-kmax, kmax + 1)
    vals = eval_tp(w, (xs[None, :] + ks[:, None]).ravel()).reshape(len(ks), len(xs))
    coeff = np.exp((2.0 * np.pi * tau - 2j * np.pi * omega) * ks)
    return coeff @ vals


def zak_strip_distance(
    w_n: WeightMultiset,
    w_m: WeightMultiset,
    xi: float,
    n_x: int = 64,
    n_tau: int = 9,
    omegas: Sequence[float] = (0.0, 0.25, 0.5, 0.75),
) -> float:
    """max |Zg_n - Zg_m| over [0,1) x [-xi, xi] at the sampled omegas."""
    a0 = min(w_n.a0, w_m.a0)
    if xi < 0:
        raise ValueError("xi must be nonnegative")
    if xi >= a0 / (2.0 * np.pi):
        raise StripViolation(f"xi = {xi} >= a0/(2 pi) = {a0 / (2 * np.pi)}")
    xs = np.arange(n_x) / n_x
    taus = np.linspace(-xi, xi, n_tau) if xi > 0 else np.asarray([0.0])
    # sample each window once over the lattice; recombine per (tau, omega)
    margin = a0 - 2.0 * np.pi * xi
    kmax = int(math.ceil(60.0 / margin)) + 2
    ks = np.arange(-kmax, kmax + 1)
    grid = (xs[None, :] + ks[:, None]).ravel()
    vals_n = eval_tp(w_n, grid).reshape(len(ks), n_x)
    vals_m = eval_tp(w_m, grid).reshape(len(ks), n_x)
    worst = 0.0
    for tau in taus:
        for om in omegas:
            coeff = np.exp((2.0 * np.pi * tau - 2j * np.pi * om) * ks)
            d = np.abs(coeff @ (vals_n - vals_m))
            worst = max(worst, float(np.max(d)))
    return worst


def eval_reciprocal_laplace(weights: WeightMultiset, s: complex) -> complex:
    """The entire function Psi(s) = prod (1 + s/a_nu) e^{-s/a_nu}."""
    out = complex(1.0)
    for a in weights.raw:
        out *= (1.0 + s / a) * np.exp(-s / a)
    return complex(out)


def psi_decay_diagnostic(
    weights: WeightMultiset,
    omega: float,
    tau_samples: Sequence[float],
    p: int,
) -> float:
    """Fitted log-log slope of |1/Psi(omega + i tau)| against |tau|.

    The bound |1/Psi| <= M_p |tau|^{-p} (p <= n) predicts a slope <= -p;
    the constant is unknown, so only the exponent is diagnostic.
    """
    if p > weights.n:
        raise ValueError(f"p = {p} exceeds the number of weights n = {weights.n}")
    taus = np.asarray(tau_samples, dtype=float)
    if np.any(taus == 0):
        raise ValueError("tau samples must be nonzero")
    # log|1/Psi| accumulated in log space to avoid overflow for large tau
    log_inv = np.zeros(taus.shape)
    for a in weights.raw:
        s = omega + 1j * taus
        log_inv -= np.log(np.abs(1.0 + s / a)) - omega / a
    slope = np.polyfit(np.log(np.abs(taus)), log_inv, 1)[0]
    return float(slope)


def convergence_sweep(
    gen: WeightGenerator,
    ns: Sequence[int],
    sigma: float | None = None,
    n_ref: int = 64,
) -> list[tuple[int, float, float, float]]:
    """Rows (n, sigma, distance to the n_ref prefix, tail proxy) for a sweep."""
    ref = truncate(gen, n_ref)
    rows = []
    for n in ns:
        w = truncate(gen, n)
        sig = 0.5 * min(w.a0, ref.a0) if sigma is None else sigma
        d = weighted_sup_distance(w, ref, sig)
        rows.append((int(n), float(sig), d, gen.square_sum_tail(n)))
    return rows
