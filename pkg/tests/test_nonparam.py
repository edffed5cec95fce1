"""Exact nonparametric tests against exhaustive enumeration oracles."""

import itertools

import numpy as np
import pytest
from scipy import stats as scipy_stats

from moods.stats import mann_whitney_u, shapiro_wilk, wilcoxon_signed_rank
from moods.stats.nonparam import InsufficientDataError, _average_ranks


def wilcoxon_oracle(a, b):
    """Two-sided p by enumerating every sign assignment."""
    d = np.asarray(a, float) - np.asarray(b, float)
    d = d[d != 0]
    n = d.size
    ranks = _average_ranks(np.abs(d))
    w_obs = ranks[d > 0].sum()
    total = ranks.sum()
    obs_dev = abs(2 * w_obs - total)
    hits = 0
    for signs in itertools.product((0, 1), repeat=n):
        w = sum(r for r, s in zip(ranks, signs) if s)
        if abs(2 * w - total) >= obs_dev - 1e-9:
            hits += 1
    return w_obs, hits / 2**n


def mann_whitney_oracle(a, b):
    """Two-sided p by enumerating all C(n_a + n_b, n_a) labelings."""
    a = np.asarray(a, float)
    b = np.asarray(b, float)
    n_a, n_b = a.size, b.size
    combined = np.concatenate([a, b])
    ranks = _average_ranks(combined)
    u_obs = ranks[:n_a].sum() - n_a * (n_a + 1) / 2
    mu = n_a * n_b / 2
    obs_dev = abs(u_obs - mu)
    hits = total = 0
    for subset in itertools.combinations(range(n_a + n_b), n_a):
        u = ranks[list(subset)].sum() - n_a * (n_a + 1) / 2
        total += 1
        if abs(u - mu) >= obs_dev - 1e-9:
            hits += 1
    return u_obs, hits / total


class TestWilcoxon:
    def test_identical_pairs_rejected(self):
        with pytest.raises(InsufficientDataError):
            wilcoxon_signed_rank([1, 2, 3], [1, 2, 3])

    def test_hand_case_n6_matches_enumeration(self):
        a = [12.0, 9.5, 13.1, 8.0, 15.2, 10.0]
        b = [10.0, 11.0, 12.0, 9.0, 10.0, 10.5]
        w, p = wilcoxon_signed_rank(a, b)
        w_ref, p_ref = wilcoxon_oracle(a, b)
        assert w == pytest.approx(w_ref)
        assert p == pytest.approx(p_ref, abs=1e-12)

    def test_exact_matches_enumeration_randomized(self):
        rng = np.random.default_rng(7)
        for _ in range(60):
            n = int(rng.integers(2, 13))
            a = rng.normal(size=n)
            b = a + rng.choice([-1.0, 0.0, 0.5, 1.0], size=n) * rng.random(size=n)
            d = a - b
            if not np.any(d != 0):
                continue
            if rng.random() < 0.4:  # force tied |d| values
                b = a - np.round((a - b) * 2) / 2
                if not np.any(a - b != 0):
                    continue
            w, p = wilcoxon_signed_rank(a, b)
            w_ref, p_ref = wilcoxon_oracle(a, b)
            assert w == pytest.approx(w_ref)
            assert p == pytest.approx(p_ref, abs=1e-12)

    def test_large_n25_matches_vectorized_enumeration(self):
        rng = np.random.default_rng(11)
        n = 25
        a = rng.normal(size=n)
        b = a + rng.normal(scale=0.8, size=n)
        w, p = wilcoxon_signed_rank(a, b)
        d = a - b
        d = d[d != 0]
        ranks = _average_ranks(np.abs(d))
        total = ranks.sum()
        obs_dev = abs(2 * w - total)
        # independent oracle: bit-pattern enumeration in numpy chunks
        m = d.size
        hits = 0
        chunk = 1 << 20
        for start in range(0, 1 << m, chunk):
            idx = np.arange(start, min(start + chunk, 1 << m), dtype=np.int64)
            ws = np.zeros(idx.size)
            for j in range(m):
                ws += ranks[j] * ((idx >> j) & 1)
            hits += int(np.sum(np.abs(2 * ws - total) >= obs_dev - 1e-9))
        assert p == pytest.approx(hits / 2**m, abs=1e-12)

    def test_asymptotic_mode_reasonable(self):
        rng = np.random.default_rng(3)
        a = rng.normal(size=60)
        b = a + 0.8 + rng.normal(scale=0.3, size=60)
        _, p = wilcoxon_signed_rank(a, b)
        assert p < 1e-6
        _, p_scipy = scipy_stats.wilcoxon(a, b, correction=True)
        assert p == pytest.approx(p_scipy, rel=0.05)


class TestMannWhitney:
    def test_identical_samples_u_is_half_product(self):
        a = [1.0, 2.0, 3.0, 4.0]
        u, p = mann_whitney_u(a, a)
        assert u == pytest.approx(len(a) * len(a) / 2)
        assert p == pytest.approx(1.0)

    def test_fully_separated(self):
        u_low, _ = mann_whitney_u([1, 2, 3], [10, 11, 12, 13])
        u_high, _ = mann_whitney_u([10, 11, 12, 13], [1, 2, 3])
        assert u_low == 0.0
        assert u_high == 12.0  # n_a * n_b

    def test_hand_case_4x5_matches_enumeration(self):
        a = [3.1, 4.5, 2.2, 5.0]
        b = [6.1, 5.5, 7.2, 4.9, 6.6]
        u, p = mann_whitney_u(a, b)
        u_ref, p_ref = mann_whitney_oracle(a, b)
        assert u == pytest.approx(u_ref)
        assert p == pytest.approx(p_ref, abs=1e-12)

    def test_exact_matches_enumeration_randomized(self):
        rng = np.random.default_rng(19)
        for _ in range(40):
            n_a = int(rng.integers(1, 9))
            n_b = int(rng.integers(1, 11))
            a = rng.normal(size=n_a)
            b = rng.normal(loc=rng.normal(), size=n_b)
            if rng.random() < 0.4:  # ties across groups
                a = np.round(a)
                b = np.round(b)
            u, p = mann_whitney_u(a, b)
            u_ref, p_ref = mann_whitney_oracle(a, b)
            assert u == pytest.approx(u_ref)
            assert p == pytest.approx(p_ref, abs=1e-12)

    def test_asymptotic_mode_close_to_scipy(self):
        rng = np.random.default_rng(23)
        a = rng.normal(size=40)
        b = rng.normal(loc=0.7, size=45)
        u, p = mann_whitney_u(a, b)
        ref = scipy_stats.mannwhitneyu(a, b, alternative="two-sided", method="asymptotic")
        assert u == pytest.approx(ref.statistic)
        assert p == pytest.approx(ref.pvalue, rel=0.02)

    def test_empty_sample_rejected(self):
        with pytest.raises(InsufficientDataError):
            mann_whitney_u([], [1.0])


class TestShapiroWilk:
    def test_fixed_normal_sample(self):
        rng = np.random.default_rng(0)
        y = rng.standard_normal(50)
        w, p = shapiro_wilk(y)
        assert w > 0.95
        w_ref, p_ref = scipy_stats.shapiro(y)
        assert w == pytest.approx(w_ref, abs=1e-4)
        assert p == pytest.approx(p_ref, abs=1e-3)

    def test_bimodal_sample_rejected_as_normal(self):
        y = np.array([0.0] * 25 + [10.0] * 25) + np.linspace(0, 0.01, 50)
        w, p = shapiro_wilk(y)
        assert p < 1e-3
        _, p_ref = scipy_stats.shapiro(y)
        assert p == pytest.approx(p_ref, rel=0.3, abs=1e-6)

    def test_small_sample_rejected(self):
        with pytest.raises(InsufficientDataError):
            shapiro_wilk([1.0, 2.0])

    def test_matches_scipy_across_sizes(self):
        rng = np.random.default_rng(5)
        for n in (3, 4, 5, 6, 11, 12, 30, 200, 900):
            y = rng.normal(size=n) + rng.random() * 3
            w, p = shapiro_wilk(y)
            w_ref, p_ref = scipy_stats.shapiro(y)
            assert w == pytest.approx(w_ref, abs=2e-4), n
            assert p == pytest.approx(p_ref, abs=2e-3), n

    def test_constant_sample_rejected(self):
        with pytest.raises(InsufficientDataError):
            shapiro_wilk([2.0] * 10)
