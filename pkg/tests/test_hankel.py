import itertools

import numpy as np
import pytest

from dcearma.arma import ArmaModel, build_toeplitz
from dcearma.distributions import bernoulli_gaussian
from dcearma.errors import IndexBelowThreshold, InsufficientImpulseLength
from dcearma.hankel import (
    RationalFilter,
    check_hankel_nonsingular,
    exact_column_rank_distribution,
    hankel_from_impulse,
    random_column_rank_distribution,
    random_stable_filter,
    shifted_hankel_full_rank,
    shifted_hankel_threshold,
)
from dcearma.linalg import numerical_rank
from dcearma.rng import stream

H5 = [1, 2, 3, 4, 5]


def test_hankel_layout():
    assert np.array_equal(hankel_from_impulse(H5, 2, 0), [[1, 2], [2, 3]])
    assert np.array_equal(hankel_from_impulse(H5, 2, 1), [[2, 3], [3, 4]])


def test_hankel_needs_enough_coefficients():
    with pytest.raises(InsufficientImpulseLength):
        hankel_from_impulse(H5, 3, 2)


@pytest.mark.parametrize("size", [1, 2, 5, 8])
def test_geometric_sequence_gives_rank_one(size):
    h = 0.7 ** np.arange(2 * size)
    assert numerical_rank(hankel_from_impulse(h, size)) == 1


def test_single_pole_hankel():
    filt = RationalFilter.from_roots([0.0], [0.5])
    c = check_hankel_nonsingular(filt)
    assert c.size == 1 and c.nonsingular
    assert c.det_estimate == pytest.approx(1.0)


def test_two_pole_hankel_determinant():
    # h[n] = (0.6^{n+1} - 0.3^{n+1}) / 0.3 for 1 / ((1 - 0.3/z)(1 - 0.6/z))
    filt = RationalFilter.from_roots([0.0, 0.0], [0.3, 0.6])
    h = filt.impulse(3)
    assert np.allclose(h, [1.0, 0.9, 0.63])
    c = check_hankel_nonsingular(filt)
    assert c.nonsingular
    assert c.det_estimate == pytest.approx(1.0 * 0.63 - 0.9**2)


def test_cancelling_pair_is_removed():
    filt = RationalFilter.from_roots([0.5, 0.0], [0.5, 0.2])
    assert filt.poles == (0.2 + 0j,)


def test_filter_from_arma_matches_impulse_response():
    from dcearma.arma import impulse_response

    m = ArmaModel((-0.9, 0.2), (-0.1, -0.05, 0.125), bernoulli_gaussian(0.6))
    filt = RationalFilter.from_arma(m)
    assert filt.p == 2 and filt.zero_pole_count == 1
    assert np.allclose(filt.impulse(20), impulse_response(m, 19), atol=1e-12)


def test_random_filters_nonsingular():
    for k in range(200):
        r = stream(11, k)
        filt = random_stable_filter(int(r.integers(1, 5)), int(r.integers(0, 4)), r)
        assert check_hankel_nonsingular(filt).nonsingular


def test_shifted_hankel_first_index_ar1():
    m = ArmaModel((-1 / 3,), (), bernoulli_gaussian(0.5))
    filt = RationalFilter.from_arma(m)
    assert shifted_hankel_threshold(filt) == 2
    c = shifted_hankel_full_rank(m, 2)
    assert c.size == 1 and c.full
    assert c.det_estimate == pytest.approx(1.0)


def test_pure_ma_has_no_admissible_index():
    m = ArmaModel((), (0.4, 0.1), bernoulli_gaussian(0.5))
    with pytest.raises(IndexBelowThreshold):
        shifted_hankel_full_rank(m, 5)


def test_index_below_threshold():
    filt = RationalFilter.from_roots([0.1, 0.2, 0.3], [0.5, 0.0, 0.0])
    th = shifted_hankel_threshold(filt)
    assert th == 4
    with pytest.raises(IndexBelowThreshold):
        shifted_hankel_full_rank(filt, th - 1)


def test_shifted_hankel_random_filters():
    for k in range(200):
        r = stream(12, k)
        filt = random_stable_filter(int(r.integers(1, 5)), int(r.integers(0, 4)), r)
        th = shifted_hankel_threshold(filt)
        assert shifted_hankel_full_rank(filt, th).full
        assert shifted_hankel_full_rank(filt, th + 1).full


def _theta_4x7():
    m = ArmaModel((-0.9, 0.2), (-0.1, -0.05, 0.125), bernoulli_gaussian(0.6))
    return build_toeplitz(m, 6).theta_mat


def test_full_selection_gives_full_row_rank(rng):
    hist = random_column_rank_distribution(_theta_4x7(), 1.0, 50, rng)
    assert hist.counts[4] == 50


def test_empty_selection_gives_rank_zero(rng):
    hist = random_column_rank_distribution(_theta_4x7(), 0.0, 50, rng)
    assert hist.counts[0] == 50


def test_exact_rank_law_by_direct_enumeration():
    theta = _theta_4x7()
    probs = exact_column_rank_distribution(theta, 0.6)
    oracle = np.zeros(5)
    for flags in itertools.product([False, True], repeat=7):
        f = np.array(flags)
        r = np.linalg.matrix_rank(theta[:, f]) if f.any() else 0
        oracle[r] += 0.6 ** f.sum() * 0.4 ** (7 - f.sum())
    assert np.allclose(probs, oracle)


def test_monte_carlo_rank_law_close_to_exact(rng):
    theta = _theta_4x7()
    exact = exact_column_rank_distribution(theta, 0.6)
    hist = random_column_rank_distribution(theta, 0.6, 100_000, rng)
    tv = 0.5 * np.abs(hist.probabilities - exact).sum()
    assert tv < 0.02


def test_rank_histograms_merge(rng):
    theta = _theta_4x7()
    a = random_column_rank_distribution(theta, 0.5, 100, rng)
    b = random_column_rank_distribution(theta, 0.5, 300, rng)
    c = a.merge(b)
    assert c.trials == 400 and c.counts.sum() == 400


@pytest.mark.parametrize("c", [1e-3, 0.1, 10.0, 1e3])
def test_rank_invariant_to_scaling(c):
    for k in range(50):
        r = stream(13, k)
        filt = random_stable_filter(int(r.integers(1, 5)), int(r.integers(0, 4)), r)
        h = filt.impulse(12)
        for size in (1, 3, 5, 6):
            assert numerical_rank(hankel_from_impulse(c * h, size)) == numerical_rank(hankel_from_impulse(h, size))


def test_hankel_is_constant_on_antidiagonals(rng):
    h = rng.normal(size=20)
    a = hankel_from_impulse(h, 6, 3)
    for j in range(6):
        for k in range(6):
            assert a[j, k] == h[3 + j + k]
    assert np.array_equal(a, a.T)


def test_exhaustive_vs_monte_carlo_on_twelve_columns(rng):
    theta = build_toeplitz(
        ArmaModel((0.3,), (0.5, -0.2), bernoulli_gaussian(0.5)), 11
    ).theta_mat  # 10 x 12
    exact = exact_column_rank_distribution(theta, 0.45)
    trials = 50_000
    hist = random_column_rank_distribution(theta, 0.45, trials, rng)
    band = 4 * np.sqrt(exact * (1 - exact) / trials) + 1e-12
    assert np.all(np.abs(hist.probabilities - exact) <= band)
