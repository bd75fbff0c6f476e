"""Tests for exponential B-splines built by exact convolution."""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from zaktp.ebspline import (
    build_ebspline,
    eval_ebspline,
    fourier_ebspline,
    make_weight_vector,
    reduce_ebspline,
)


def test_box_spline():
    B = build_ebspline([0.0])
    assert eval_ebspline(B, 0.5) == pytest.approx(1.0)
    assert eval_ebspline(B, -0.1) == 0.0
    assert eval_ebspline(B, 1.1) == 0.0


def test_hat_spline_values():
    B = build_ebspline([0.0, 0.0])
    xs = np.linspace(0, 2, 21)
    expected = np.where(xs <= 1, xs, 2 - xs)
    assert np.allclose(eval_ebspline(B, xs), expected, atol=1e-14)


def test_single_exponential_piece():
    lam = 0.7
    B = build_ebspline([lam])
    xs = np.linspace(0.0, 0.99, 10)
    assert np.allclose(eval_ebspline(B, xs), np.exp(lam * xs))


def test_convolution_oracle_quadrature():
    # B_{(l1,l2)}(x) = int B_{(l1)}(t) e^{l2 (x-t)} chi_[0,1)(x-t) dt
    l1, l2 = 0.6, -1.1
    B1 = build_ebspline([l1])
    B12 = build_ebspline([l1, l2])
    for x in (0.3, 0.9, 1.2, 1.8):
        val, _ = quad(
            lambda t: eval_ebspline(B1, t)
            * (math.exp(l2 * (x - t)) if 0 <= x - t < 1 else 0.0),
            max(0.0, x - 1),
            min(1.0, x),
            limit=200,
        )
        assert eval_ebspline(B12, x) == pytest.approx(val, abs=1e-12)


def test_confluent_branch_matches_near_confluent():
    lam = 0.9
    B_conf = build_ebspline([lam, lam])
    B_near = build_ebspline([lam, lam + 1e-7])
    xs = np.linspace(0.05, 1.95, 25)
    assert np.allclose(eval_ebspline(B_conf, xs), eval_ebspline(B_near, xs), atol=1e-6)


def test_support_and_positivity():
    rng = np.random.default_rng(2)
    for _ in range(10):
        m = int(rng.integers(1, 6))
        lams = rng.uniform(-2, 2, size=m)
        B = build_ebspline(lams)
        assert B.m == m
        xs = rng.uniform(0.01, m - 0.01, size=40)
        assert np.all(eval_ebspline(B, xs) > 0.0)
        assert eval_ebspline(B, -0.5) == 0.0
        assert eval_ebspline(B, m + 0.5) == 0.0


def test_smoothness_order():
    # m-fold convolution is C^{m-2}: derivative of order m-2 continuous at knots
    lams = [0.5, -0.3, 1.1]
    B = build_ebspline(lams)
    h = 1e-7
    for knot in (1.0, 2.0):
        left = (eval_ebspline(B, knot - h) - eval_ebspline(B, knot - 2 * h)) / h
        right = (eval_ebspline(B, knot + 2 * h) - eval_ebspline(B, knot + h)) / h
        assert left == pytest.approx(right, abs=1e-5)


def test_fourier_ebspline_against_quadrature():
    lams = [0.4, -0.8]
    B = build_ebspline(lams)
    for om in (0.0, 0.3, 1.7):
        re, _ = quad(lambda x: eval_ebspline(B, x) * math.cos(2 * np.pi * om * x), 0, 2, limit=200)
        im, _ = quad(lambda x: -eval_ebspline(B, x) * math.sin(2 * np.pi * om * x), 0, 2, limit=200)
        assert fourier_ebspline(lams, om) == pytest.approx(re + 1j * im, abs=1e-10)


def test_fourier_ebspline_product_form():
    lams = [0.4, -0.8, 0.0]
    om = 0.23
    expected = 1.0
    for lam in lams:
        z = lam - 2j * np.pi * om
        expected *= (np.exp(z) - 1) / z
    assert fourier_ebspline(lams, om) == pytest.approx(expected)


def test_reduce_kills_single_exponential():
    lam = 0.8
    B = build_ebspline([lam])
    red = reduce_ebspline(B, lam)
    xs = np.linspace(0.01, 0.99, 10)
    assert np.allclose(eval_ebspline(red, xs), 0.0, atol=1e-14)


def test_reduce_matches_finite_difference():
    B = build_ebspline([0.5, -0.7, 1.2])
    eta = 0.3
    red = reduce_ebspline(B, eta)
    h = 1e-6
    for x in (0.4, 1.3, 2.6):
        fd = math.exp(eta * x) * (
            math.exp(-eta * (x + h)) * eval_ebspline(B, x + h)
            - math.exp(-eta * (x - h)) * eval_ebspline(B, x - h)
        ) / (2 * h)
        assert eval_ebspline(red, x) == pytest.approx(fd, rel=1e-5, abs=1e-7)


def test_make_weight_vector_clusters():
    wv = make_weight_vector([1.0, 1.0 + 1e-12, -0.5])
    assert wv.m == 3
    assert len(wv.clusters) == 2
