"""Tests for zero location, certification, and monotonicity machinery."""

import numpy as np
import pytest

from zaktp.analysis import (
    Region,
    certify_zero_free,
    fully_reduced_sign_changes,
    locate_zero_half,
    reduced_slice_monotonicity,
    strong_sign_changes,
    unit_monotone_offset,
)
from zaktp.ebspline import build_ebspline
from zaktp.errors import NotUnitMonotone, NoZero, StripViolation
from zaktp.weights import make_weights
from zaktp.zak import zak_tp


def test_even_window_zero_at_half():
    w = make_weights([1.0, -1.0])
    assert locate_zero_half(w) == pytest.approx(0.5, abs=1e-9)


def test_zero_is_actually_a_zero():
    rng = np.random.default_rng(29)
    for _ in range(10):
        n = int(rng.integers(2, 6))
        a = rng.uniform(0.5, 4, size=n) * rng.choice([-1, 1], size=n)
        w = make_weights(a)
        x = locate_zero_half(w)
        assert 0.0 <= x < 1.0
        assert abs(zak_tp(w, x, 0.5)) < 1e-9


def test_hat_spline_zero():
    assert locate_zero_half(build_ebspline([0.0, 0.0])) == pytest.approx(0.5, abs=1e-9)


def test_type1_has_no_zero():
    with pytest.raises(NoZero):
        locate_zero_half(make_weights([1.0]))


def test_certify_away_from_zero():
    w = make_weights([1.0, -1.0])
    cert = certify_zero_free(w, Region(x=(0.0, 1.0), omega=(0.0, 0.4)), grid_step=1 / 512)
    assert cert.verdict == "zero_free_certified"
    assert cert.min_modulus > cert.lipschitz_bound * cert.grid_step * np.sqrt(2) / 2


def test_certify_finds_known_zero():
    w = make_weights([1.0, -1.0])
    cert = certify_zero_free(w, Region(x=(0.0, 1.0), omega=(0.4, 0.6)), grid_step=1 / 512)
    assert cert.verdict == "zero_found"
    assert cert.zero_location == pytest.approx((0.5, 0.5), abs=1e-3)


def test_certify_omega_zero_line():
    w = make_weights([0.8, -2.0, 1.5])
    cert = certify_zero_free(w, Region(x=(0.0, 1.0), omega=(0.0, 0.0)), grid_step=1 / 512)
    assert cert.verdict == "zero_free_certified"


def test_certify_complex_slice():
    w = make_weights([1.0, -1.0])
    tau = 0.5 * w.a0 / (2 * np.pi)
    cert = certify_zero_free(
        w, Region(x=(0.0, 1.0), omega=(0.0, 0.48), tau=tau), grid_step=1 / 1024
    )
    assert cert.verdict == "zero_free_certified"


def test_certify_strip_violation():
    w = make_weights([1.0, -1.0])
    with pytest.raises(StripViolation):
        certify_zero_free(
            w, Region(x=(0.0, 1.0), omega=(0.0, 0.4), tau=w.a0), grid_step=1 / 64
        )


def test_certificate_json_schema():
    w = make_weights([1.0, -1.0])
    cert = certify_zero_free(w, Region(x=(0.0, 1.0), omega=(0.0, 0.4)), grid_step=1 / 256)
    d = cert.to_json_dict()
    assert d["schema"] == "zerocert/1"
    assert d["verdict"] == "zero_free_certified"
    assert d["zero_location"] is None


def test_strong_sign_changes():
    assert strong_sign_changes([1, -1, 1]) == 2
    assert strong_sign_changes([0, 1, 1]) == 0
    assert strong_sign_changes([1, 0, -1]) == 1
    assert strong_sign_changes([]) == 0


def test_unit_monotone_offset_hat_slice():
    # Z(x, 1/2) = 2x - 1 extended by Z(x+1) = -Z(x): monotone up then down
    t = np.arange(512) / 256
    f = np.where(t < 1, 2 * t - 1, -(2 * (t - 1) - 1))
    assert unit_monotone_offset(f) == pytest.approx(0.0, abs=1e-2)


def test_unit_monotone_offset_sine():
    t = np.arange(512) / 256
    assert unit_monotone_offset(np.sin(np.pi * t)) == pytest.approx(0.5, abs=1e-2)


def test_unit_monotone_offset_rejects_two_bumps():
    t = np.arange(512) / 256
    bad = np.sin(2 * np.pi * t) + 0.3 * np.sin(4 * np.pi * t + 0.7)
    with pytest.raises(NotUnitMonotone):
        unit_monotone_offset(bad)


def test_reduced_slice_monotonicity_runs():
    for weights, idx in [([1.0, -1.0], 0), ([2.0, 3.0, -1.0], 0), ([2.0, 3.0, -1.0], 1)]:
        rep = reduced_slice_monotonicity(make_weights(weights), idx)
        assert 0.0 <= rep.x0 < 2.0
        assert 0.0 <= rep.y0 < 2.0


def test_fully_reduced_sign_change_bound():
    # reduced real slice obeys S^- <= 2 N |omega| + m over [0, N)
    rng = np.random.default_rng(31)
    N = 8
    for _ in range(10):
        n = int(rng.integers(2, 5))
        a = rng.uniform(0.5, 3, size=n) * rng.choice([-1, 1], size=n)
        w = make_weights(a)
        om = float(rng.uniform(0.05, 0.45))
        s = fully_reduced_sign_changes(w, om, N)
        assert s <= 2 * N * om + w.n
