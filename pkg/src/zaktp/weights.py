"""Finite totally positive weight lists and closed-form window evaluation.

A window of finite type n is determined by nonzero reals (a_1, ..., a_n):
its Fourier transform is the product of the factors 1 / (1 + 2*pi*i*w / a_nu)
(shift-free normalization), and in the time domain it is the n-fold
convolution of one-sided exponentials.  Evaluation goes through a confluent
divided difference in the weights, or, for widely spread distinct weights,
through the partial-fraction form computed in log space.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import (
    DerivativeUnavailable,
    EmptyInput,
    IllConditioned,
    ZeroWeight,
)

# Beyond this value of sum(log|a_nu|) the product of the weights (and the
# reciprocal scale of the divided difference) leaves the double range, so
# evaluation switches to the log-space partial-fraction form.
_LOG_PRODUCT_SWITCH = 500.0


@dataclass(frozen=True)
class WeightMultiset:
    """A finite list of nonzero weights, clustered into distinct values.

    ``raw`` keeps the input order; ``distinct`` holds (value, multiplicity)
    clusters sorted ascending by value; ``a0`` is the minimum absolute raw
    weight (the decay rate of the window).
    """

    raw: tuple[float, ...]
    distinct: tuple[tuple[float, int], ...]
    a0: float

    @property
    def n(self) -> int:
        return len(self.raw)

    @property
    def is_confluent(self) -> bool:
        return any(mu > 1 for _, mu in self.distinct)

    @property
    def is_even(self) -> bool:
        """True when the weight multiset is symmetric, {a} = {-a}."""
        vals = np.sort(np.asarray(self.raw))
        return bool(np.allclose(vals, -vals[::-1], rtol=0.0, atol=1e-12 * max(1.0, abs(vals).max())))

    @property
    def log_abs_product(self) -> float:
        return float(np.sum(np.log(np.abs(np.asarray(self.raw)))))

    def cluster_nodes(self) -> np.ndarray:
        """Cluster values expanded with multiplicity, sorted ascending."""
        return np.concatenate([np.full(mu, b) for b, mu in self.distinct])


def make_weights(values: Sequence[float], coalesce_tol: float = 1e-9) -> WeightMultiset:
    """Build a :class:`WeightMultiset`, merging values closer than ``coalesce_tol``.

    Values whose pairwise distance is at most the tolerance are chained into
    one cluster and replaced by the cluster mean.  A value within the
    tolerance of zero raises :class:`ZeroWeight`.
    """
    vals = [float(v) for v in values]
    if len(vals) == 0:
        raise EmptyInput("weight sequence is empty")
    if coalesce_tol < 0:
        raise ValueError("coalesce_tol must be nonnegative")
    for v in vals:
        if not math.isfinite(v):
            raise ValueError(f"weight {v!r} is not finite")
        if abs(v) <= coalesce_tol or v == 0.0:
            raise ZeroWeight(f"weight {v!r} is within {coalesce_tol} of zero")

    order = np.argsort(vals)
    clusters: list[list[float]] = []
    for idx in order:
        v = vals[idx]
        if clusters and v - clusters[-1][-1] <= coalesce_tol:
            clusters[-1].append(v)
        else:
            clusters.append([v])
    distinct = tuple((float(np.mean(c)), len(c)) for c in clusters)
    a0 = min(abs(v) for v in vals)
    return WeightMultiset(raw=tuple(vals), distinct=distinct, a0=a0)


# ---------------------------------------------------------------------------
# Divided differences


def divided_difference(
    weights: WeightMultiset,
    f: Callable[[float], float],
    derivatives: Sequence[Callable[[float], float]] | None = None,
) -> float:
    """Confluent divided difference of ``f`` over the weight nodes.

    ``derivatives[j-1]`` must supply the j-th derivative of ``f`` wherever a
    cluster has multiplicity above j; for all-distinct weights only ``f``
    itself is needed and the result reduces to the classical alternating sum.
    """
    nodes = weights.cluster_nodes()
    n = len(nodes)
    max_order = max(mu for _, mu in weights.distinct) - 1
    if max_order > 0 and (derivatives is None or len(derivatives) < max_order):
        raise DerivativeUnavailable(
            f"need derivatives up to order {max_order}, got "
            f"{0 if derivatives is None else len(derivatives)}"
        )

    table = [float(f(t)) for t in nodes]
    for level in range(1, n):
        nxt = []
        for i in range(n - level):
            if nodes[i + level] == nodes[i]:
                nxt.append(derivatives[level - 1](nodes[i]) / math.factorial(level))
            else:
                nxt.append((table[i + 1] - table[i]) / (nodes[i + level] - nodes[i]))
        table = nxt
    return table[0]


def _dd_exp_chi(nodes: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Divided difference of t -> e^{-x t} * chi_[0,inf)(x t), vectorized in x.

    Used by :func:`eval_tp`; the x = 0 entries use the characteristic-function
    formula directly (value 1 at positive nodes, all derivatives zero).
    """
    n = len(nodes)
    m = len(x)
    pos = x > 0
    neg = x < 0
    zero = ~pos & ~neg

    # active[i, j]: node i contributes for sample j
    active = np.empty((n, m), dtype=bool)
    active[:, pos] = (nodes > 0)[:, None]
    active[:, neg] = (nodes < 0)[:, None]
    active[:, zero] = (nodes > 0)[:, None]

    expo = -np.outer(nodes, x)
    expo[:, zero] = 0.0
    expo[~active] = -np.inf
    table = np.exp(expo)

    for level in range(1, n):
        nxt = np.empty((n - level, m))
        fact = math.factorial(level)
        for i in range(n - level):
            if nodes[i + level] == nodes[i]:
                # repeated node: f^{(level)}(t)/level! = (-x)^level e^{-x t}/level!
                row = np.zeros(m)
                mask = active[i] & ~zero  # chi derivatives vanish at x = 0
                row[mask] = ((-x[mask]) ** level) * np.exp(-nodes[i] * x[mask]) / fact
                nxt[i] = row
            else:
                nxt[i] = (table[i + 1] - table[i]) / (nodes[i + level] - nodes[i])
        table = nxt
    return table[0]


def _eval_log_explicit(weights: WeightMultiset, x: np.ndarray) -> np.ndarray:
    """Partial-fraction evaluation in log space; distinct weights only."""
    b = np.array([bi for bi, _ in weights.distinct])
    raw = np.asarray(weights.raw)
    log_prod = np.sum(np.log(np.abs(raw)))
    sign_prod = np.prod(np.sign(raw))
    diffs = b[:, None] - b[None, :]
    np.fill_diagonal(diffs, -1.0)  # |.| = 1 and sign(-diag) = +1: neutral below
    logc = log_prod - np.sum(np.log(np.abs(diffs)), axis=1)
    # residue of prod(a) / prod(b_k + s) at s = -b_i: sign from prod_{k != i} (b_k - b_i)
    sgn = sign_prod / np.prod(np.sign(-diffs), axis=1)

    out = np.zeros_like(x)
    nonneg = x >= 0
    for bi, lc, s in zip(b, logc, sgn):
        if bi > 0:
            expo = lc - bi * x[nonneg]
            out[nonneg] += s * np.exp(expo)
        else:
            expo = lc - bi * x[~nonneg]
            out[~nonneg] -= s * np.exp(expo)
    return out


def eval_tp(weights: WeightMultiset, x):
    """Evaluate the window g_n at ``x`` (scalar or array).

    Uses the divided-difference closed form; for widely spread distinct
    weights the log-space partial-fraction form is used instead to avoid
    overflow of the weight product.
    """
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    if weights.log_abs_product > _LOG_PRODUCT_SWITCH:
        if weights.is_confluent:
            raise IllConditioned(
                "confluent clusters combined with an extreme weight product are unsupported"
            )
        vals = _eval_log_explicit(weights, xs)
    else:
        nodes = weights.cluster_nodes()
        dd = _dd_exp_chi(nodes, xs)
        prod_a = float(np.prod(np.asarray(weights.raw)))
        sign_x = np.sign(xs)
        sign_x[sign_x == 0] = 1.0  # x = 0 uses the dedicated chi formula (no sign factor)
        vals = (-1.0) ** (weights.n - 1) * sign_x * prod_a * dd
    # clip roundoff-negative values; genuine negatives would indicate a bug
    vals[(vals < 0) & (vals > -1e-10)] = 0.0
    if np.isscalar(x) or np.asarray(x).ndim == 0:
        return float(vals[0])
    return vals


def fourier_tp(weights: WeightMultiset, omega):
    """Fourier transform of g_n: the product of (1 + 2*pi*i*w/a_nu)^(-1)."""
    w = np.asarray(omega, dtype=float)
    out = np.ones(w.shape if w.ndim else (), dtype=complex)
    for a in weights.raw:
        out = out / (1.0 + 2j * np.pi * w / a)
    if np.isscalar(omega) or np.asarray(omega).ndim == 0:
        return complex(out)
    return out


# ---------------------------------------------------------------------------
# Two-sided exponential-sum representation


@dataclass(frozen=True)
class ExpSumRep:
    """Two-sided sum of polynomial x exponential terms representing g_n.

    Each side holds (b, coeffs) pairs with the term poly(x) * e^{-b x};
    ``positive_side`` covers x >= 0 (b > 0), ``negative_side`` x <= 0 (b < 0).
    Polynomial coefficients are ascending.
    """

    positive_side: tuple[tuple[float, tuple[float, ...]], ...]
    negative_side: tuple[tuple[float, tuple[float, ...]], ...]

    def _eval_side(self, side, x: np.ndarray) -> np.ndarray:
        out = np.zeros_like(x)
        for b, coeffs in side:
            p = np.polynomial.polynomial.polyval(x, np.asarray(coeffs))
            out += p * np.exp(-b * x)
        return out

    def eval(self, x) -> np.ndarray | float:
        xs = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.zeros_like(xs)
        pos = xs > 0
        neg = xs < 0
        zero = ~pos & ~neg
        out[pos] = self._eval_side(self.positive_side, xs[pos])
        out[neg] = self._eval_side(self.negative_side, xs[neg])
        at0 = self.positive_side if self.positive_side else self.negative_side
        out[zero] = self._eval_side(at0, xs[zero])
        if np.isscalar(x) or np.asarray(x).ndim == 0:
            return float(out[0])
        return out

    def derivative(self) -> "ExpSumRep":
        def d_side(side):
            res = []
            for b, coeffs in side:
                p = np.asarray(coeffs)
                dp = np.polynomial.polynomial.polyder(p) if len(p) > 1 else np.zeros(1)
                q = np.zeros(max(len(dp), len(p)))
                q[: len(dp)] += dp
                q[: len(p)] -= b * p
                res.append((b, tuple(q)))
            return tuple(res)

        return ExpSumRep(d_side(self.positive_side), d_side(self.negative_side))


def exp_sum_rep(weights: WeightMultiset, check_tol: float = 1e-8) -> ExpSumRep:
    """Partial-fraction representation of g_n as polynomial x exponential terms.

    The coefficients are the higher-order residues of the Fourier product at
    s = -b_i, obtained from the log-derivative recursion; the result is
    verified against the Fourier product and :class:`IllConditioned` is raised
    if the reconstruction residual exceeds ``check_tol``.
    """
    prod_a = float(np.prod(np.asarray(weights.raw)))
    pos_side = []
    neg_side = []
    all_c = []  # (b, mu, [c_1..c_mu]) for the residual check
    for i, (b, mu) in enumerate(weights.distinct):
        others = [(bk, mk) for k, (bk, mk) in enumerate(weights.distinct) if k != i]
        h0 = prod_a
        for bk, mk in others:
            h0 *= (bk - b) ** (-mk)
        hs = [h0]

        def l_deriv(p):
            return sum(
                -mk * (-1.0) ** p * math.factorial(p) / (bk - b) ** (p + 1)
                for bk, mk in others
            )

        for m_ in range(1, mu):
            hm = sum(math.comb(m_ - 1, l) * hs[l] * l_deriv(m_ - 1 - l) for l in range(m_))
            hs.append(hm)
        # c_{i,j} = H^{(mu-j)}(-b) / (mu-j)!
        cs = [hs[mu - j] / math.factorial(mu - j) for j in range(1, mu + 1)]
        all_c.append((b, mu, cs))
        coeffs = tuple(cs[j] / math.factorial(j) for j in range(mu))
        if b > 0:
            pos_side.append((b, coeffs))
        else:
            neg_side.append((b, tuple(-c for c in coeffs)))

    rep = ExpSumRep(tuple(pos_side), tuple(neg_side))

    # residual check against the Fourier product at a few frequencies
    for om in (0.1318, 0.7, 2.31):
        s = 2j * np.pi * om
        recon = sum(
            c / (b + s) ** (j + 1) for b, mu, cs in all_c for j, c in enumerate(cs)
        )
        target = complex(fourier_tp(weights, om))
        if abs(recon - target) > check_tol * max(1.0, abs(target)):
            raise IllConditioned(
                f"partial-fraction residual {abs(recon - target):.3e} at omega={om}; "
                "weights may be too close without coalescing"
            )
    return rep
