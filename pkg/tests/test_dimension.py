import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dcearma.arma import ArmaModel
from dcearma.dimension import (
    bernoulli_kl,
    bid_bounds,
    concentration_bounds,
    continuity_chance_bound,
    empirical_entropy,
    estimate_bid_oracle,
    estimate_idr,
    estimate_rid,
    min_n_for_concentration,
    quantize,
    shifted_entropy_check,
)
from dcearma.distributions import bernoulli_gaussian, gaussian, rademacher
from dcearma.errors import DegenerateGrid, InvalidBand, SampleStarvation
from dcearma.rng import stream

GRID = [2**k for k in range(4, 11)]


def test_quantize_floors_toward_minus_infinity():
    assert quantize([2.37], 10)[0] == pytest.approx(2.3)
    assert quantize([-0.01], 10)[0] == pytest.approx(-0.1)
    x = np.array([-1.5, -0.2, 0.0, 0.9, 3.7])
    assert np.array_equal(quantize(x, 1), np.floor(x))


def test_entropy_of_constant_is_zero():
    assert empirical_entropy([4] * 100) == 0.0


def test_entropy_of_eight_equal_symbols():
    assert empirical_entropy(np.repeat(np.arange(8), 5)) == pytest.approx(3.0)


def test_fair_coin_entropy(rng):
    h = empirical_entropy(rng.integers(0, 2, 100_000))
    assert h == pytest.approx(1.0, abs=1e-3)


def test_miller_madow_adds_bias_term():
    s = np.repeat(np.arange(4), 10)
    assert empirical_entropy(s, True) - empirical_entropy(s) == pytest.approx(3 / (80 * math.log(2)))


def test_row_symbols():
    rows = np.array([[0, 1], [0, 1], [1, 0], [1, 1]])
    assert empirical_entropy(rows) == pytest.approx(1.5)


def test_rid_of_gaussian(rng):
    est = estimate_rid(gaussian(), GRID, 200_000, rng)
    assert est.slope == pytest.approx(1.0, abs=0.05)


def test_rid_of_atoms(rng):
    assert estimate_rid(rademacher(), GRID, 50_000, rng).slope == pytest.approx(0.0, abs=0.02)


def test_rid_of_bernoulli_gaussian(rng):
    est = estimate_rid(bernoulli_gaussian(0.5), GRID, 200_000, rng)
    assert est.slope == pytest.approx(0.5, abs=0.05)
    assert est.m_range == (128, 1024)


def test_rid_grid_validation(rng):
    with pytest.raises(DegenerateGrid):
        estimate_rid(gaussian(), [16, 32, 48, 64], 100, rng)
    with pytest.raises(DegenerateGrid):
        estimate_rid(gaussian(), [16, 32, 64], 100, rng)


def test_bid_oracle_degenerate_cases():
    full = ArmaModel((-0.5,), (0.2,), gaussian())
    assert estimate_bid_oracle(full, 30, 20, 0) == pytest.approx(1.0)
    atoms = ArmaModel((-0.5, 0.1), (), rademacher())
    assert estimate_bid_oracle(atoms, 30, 20, 0) == pytest.approx(2 / 30)


def test_bid_oracle_arma23():
    m = ArmaModel((-0.9, 0.2), (-0.1, -0.05, 0.125), bernoulli_gaussian(0.6))
    assert estimate_bid_oracle(m, 200, 2000, 1) == pytest.approx(0.6, abs=0.02)


def test_bid_bounds_examples():
    assert bid_bounds(1, 0, 0, 0.3) == pytest.approx((0.3, 0.3))
    assert bid_bounds(8, 2, 0, 0.5) == pytest.approx((0.4, 0.6))
    lo, hi = bid_bounds(200, 2, 0, 0.5)
    assert abs(lo - 0.5) < 0.01 and abs(hi - 0.5) < 0.01


@settings(max_examples=60, deadline=None)
@given(m=st.integers(1, 500), p=st.integers(0, 5), q=st.integers(0, 5), a=st.floats(0, 1))
def test_bid_bounds_are_ordered(m, p, q, a):
    lo, hi = bid_bounds(m, p, q, a)
    assert 0 <= lo <= hi + 1e-12
    assert hi <= (p + q + m) / (m + p) + 1e-12


def test_idr_probe_white_noise():
    g = ArmaModel((), (), gaussian())
    (n1,) = estimate_idr(g, 64, [1], 100_000, stream(2))
    assert n1[1] > 0.8
    r = ArmaModel((), (), rademacher())
    (n2,) = estimate_idr(r, 64, [1], 100_000, stream(2))
    assert n2[1] < 0.2


def test_idr_probe_ar1_decreases_toward_block_dimension():
    # d(X^2) / 2 = (1 + 0.5) / 2 for AR(1); finite m adds the spread of X on top
    m = ArmaModel((-0.5,), (), bernoulli_gaussian(0.5))
    vals = [estimate_idr(m, mm, [2], 500_000, stream(3))[0][1] for mm in (8, 16, 32, 64)]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    assert 0.75 < vals[-1] < 1.2


def test_idr_refuses_thin_samples():
    m = ArmaModel((), (), gaussian())
    with pytest.raises(SampleStarvation):
        estimate_idr(m, 64, [2], 1000, stream(0))


def test_bernoulli_kl_values():
    assert bernoulli_kl(0.5, 0.5) == 0.0
    assert bernoulli_kl(0.0, 0.3) == pytest.approx(-math.log(0.7))
    assert bernoulli_kl(0.3, 0.6) == pytest.approx(0.183786897386812, rel=1e-12)
    assert math.isinf(bernoulli_kl(0.5, 1.0))


def test_concentration_bound_at_the_mean_is_void():
    cb = concentration_bounds(100, 2, 3, 0.6, 60)
    assert cb.regime == "void" and cb.p_above == 0 and cb.p_below == 0


def test_concentration_bound_plugged_value():
    cb = concentration_bounds(100, 2, 3, 0.6, 50)
    assert cb.regime == "above"
    assert cb.p_above == pytest.approx(0.844906752341572, rel=1e-12)


def test_concentration_bound_below_regime():
    cb = concentration_bounds(100, 2, 3, 0.6, 75)
    r = 73 / 98
    d = r * math.log(r / 0.6) + (1 - r) * math.log((1 - r) / 0.4)
    assert cb.regime == "below"
    assert cb.p_below == pytest.approx(1 - math.exp(-101 * d))


def test_concentration_bound_full_continuity():
    assert concentration_bounds(50, 1, 1, 1.0, 30).p_above == 1.0


def test_appendix_variant_shifts_ratio():
    a = concentration_bounds(100, 2, 3, 0.6, 50, variant="appendix")
    assert a.p_above == pytest.approx(1 - math.exp(-101 * bernoulli_kl(53 / 101, 0.6)))


def test_min_n_golden():
    # direct mpmath evaluation of the four terms: -13, 444.44, 40, 432.13
    assert min_n_for_concentration(2, 3, 0.6, 0.2, 0.1) == 445


def test_min_n_iid_reduction():
    a, d, e = 0.5, 0.1, 0.1
    log_term = -math.log(e / 2)
    want = max(log_term / bernoulli_kl(a - d / 2, a), log_term / bernoulli_kl(a + d / 2, a))
    assert min_n_for_concentration(0, 0, a, e, d) == math.ceil(want)


def test_min_n_grows_as_band_shrinks():
    ns = [min_n_for_concentration(2, 3, 0.6, 0.2, d) for d in (0.2, 0.1, 0.05, 0.02)]
    assert ns == sorted(ns) and ns[-1] > 10 * ns[0]


def test_min_n_band_validation():
    with pytest.raises(InvalidBand):
        min_n_for_concentration(2, 3, 0.6, 0.2, 0.5)


def test_shifted_entropy_zero_shift_holds(rng):
    (row,) = shifted_entropy_check(bernoulli_gaussian(0.5), [0.0], 50_000, rng)
    assert row.lhs_bits == pytest.approx(row.base_bits) and row.holds


def test_shifted_entropy_gaussian(rng):
    for row in shifted_entropy_check(gaussian(), [-0.5, 0.5], 100_000, rng):
        assert row.holds and row.bound - row.lhs_bits > 1.0


def test_shifted_entropy_rademacher(rng):
    (row,) = shifted_entropy_check(rademacher(), [0.5], 20_000, rng)
    assert row.lhs_bits == pytest.approx(1.0, abs=1e-3)
    assert row.holds


def test_continuity_chance_bound():
    assert continuity_chance_bound(1.0, 3, 7, 2) == 1.0
    assert continuity_chance_bound(0.4, 2, 5, 5) == 0.0
    assert continuity_chance_bound(0.5, 1, 4, 0) == pytest.approx(0.9375)


def test_kl_nonnegative_and_convex():
    r = np.linspace(0, 1, 201)
    for a in (0.1, 0.35, 0.6, 0.9):
        d = np.array([bernoulli_kl(x, a) for x in r])
        assert np.all(d >= 0)
        assert np.all(d[np.abs(r - a) > 1e-9] > 0)
        assert np.all(d[:-2] + d[2:] - 2 * d[1:-1] >= -1e-12)


def test_concentration_bounds_in_unit_interval_and_grow_with_n():
    for ratio in (0.3, 0.45, 0.75, 0.9):
        prev = -1.0
        for n in (50, 100, 200, 400, 800):
            cb = concentration_bounds(n, 2, 3, 0.6, ratio * n)
            b = max(cb.p_above, cb.p_below)
            assert 0 <= b <= 1
            r = (ratio * n + 1) / (n + 1) if cb.regime == "above" else (ratio * n - 2) / (n - 2)
            if (n + 1) * bernoulli_kl(r, 0.6) < 36:  # beyond that 1 - exp(-x) rounds to 1.0
                assert b < 1
            assert b >= prev
            prev = b


def test_rid_of_mixed_law_within_two_stderr():
    from dcearma.distributions import DceDistribution, Uniform

    law = DceDistribution(0.5, ((-1.0, 0.5), (2.0, 0.5)), Uniform(-2.0, 2.0))
    est = estimate_rid(law, [2**k for k in range(4, 13)], 10**6, stream(21))
    assert abs(est.slope - 0.5) <= max(2 * est.stderr, 0.01)


def test_histogram_mean_at_n200():
    from dcearma.affine import empirical_dimension_histogram

    m = ArmaModel((-0.9, 0.2), (-0.1, -0.05, 0.125), bernoulli_gaussian(0.6))
    hist = empirical_dimension_histogram(m, 200, 10**4, 22)
    assert hist.mean_normalized == pytest.approx(0.6, abs=0.02)
