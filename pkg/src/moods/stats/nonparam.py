"""Rank-based comparison tests and the Shapiro-Wilk normality gate.

Wilcoxon signed-rank and Mann-Whitney U carry exact small-sample modes that
enumerate the full null distribution with integer arithmetic (average ranks
are doubled so every rank sum is an integer), falling back to the normal
approximation with tie correction and continuity correction otherwise.

Shapiro-Wilk follows Royston's 1995 approximation (AS R94), valid for
3 <= n <= 5000.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np
from scipy.stats import norm

#: Largest sample size for which the signed-rank test enumerates exactly.
WILCOXON_EXACT_MAX_N = 25
#: Mann-Whitney enumerates exactly when min(n_a, n_b) <= 8 and
#: max(n_a, n_b) <= 25; beyond that the normal approximation is used.
MANN_WHITNEY_EXACT_MIN = 8
MANN_WHITNEY_EXACT_MAX = 25


class InsufficientDataError(ValueError):
    """Raised when a test's minimum sample requirements are not met."""


def _average_ranks(values: np.ndarray) -> np.ndarray:
    """Average (mid) ranks, 1-based."""
    order = np.argsort(values, kind="mergesort")
    ranks = np.empty(values.size, dtype=float)
    sorted_vals = values[order]
    i = 0
    while i < values.size:
        j = i
        while j + 1 < values.size and sorted_vals[j + 1] == sorted_vals[i]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def _tie_counts(values: np.ndarray) -> np.ndarray:
    _, counts = np.unique(values, return_counts=True)
    return counts[counts > 1]


def _signed_rank_pmf(doubled_ranks: Sequence[int]) -> dict[int, int]:
    """Counts of each achievable doubled rank sum over all sign assignments."""
    dist = {0: 1}
    for r in doubled_ranks:
        nxt: dict[int, int] = {}
        for s, c in dist.items():
            nxt[s] = nxt.get(s, 0) + c
            nxt[s + r] = nxt.get(s + r, 0) + c
        dist = nxt
    return dist


def wilcoxon_signed_rank(a: Sequence[float], b: Sequence[float]) -> tuple[float, float]:
    """Two-sided Wilcoxon signed-rank test for paired samples.

    Zero differences are dropped. Returns (W, p) with W the positive-rank
    sum. Exact enumeration for n <= 25 after zero removal; normal
    approximation with tie correction and continuity correction above that.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError("paired samples must have equal length")
    d = a - b
    d = d[d != 0]
    n = d.size
    if n < 1:
        raise InsufficientDataError("no nonzero paired differences")
    ranks = _average_ranks(np.abs(d))
    w_plus = float(ranks[d > 0].sum())

    if n <= WILCOXON_EXACT_MAX_N:
        doubled = np.rint(2 * ranks).astype(int)
        pmf = _signed_rank_pmf(doubled.tolist())
        total2 = int(doubled.sum())
        obs2 = int(round(2 * w_plus))
        # two-sided: mass at least as far from the null mean as observed
        dev = abs(2 * obs2 - total2)
        count = sum(c for s, c in pmf.items() if abs(2 * s - total2) >= dev)
        p = count / (1 << n)
        return w_plus, float(p)

    mu = n * (n + 1) / 4.0
    ties = _tie_counts(np.abs(d))
    var = n * (n + 1) * (2 * n + 1) / 24.0 - np.sum(ties**3 - ties) / 48.0
    if var <= 0:
        return w_plus, 1.0
    diff = w_plus - mu
    cc = 0.5 * np.sign(diff)
    z = (diff - cc) / np.sqrt(var)
    return w_plus, float(min(1.0, 2.0 * norm.sf(abs(z))))


def _mw_exact_counts(doubled_ranks: Sequence[int], k: int) -> dict[int, int]:
    """Counts of doubled rank sums over all subsets of size k (0/1 knapsack)."""
    dist: list[dict[int, int]] = [dict() for _ in range(k + 1)]
    dist[0][0] = 1
    for r in doubled_ranks:
        for size in range(k - 1, -1, -1):
            cur = dist[size]
            if not cur:
                continue
            target = dist[size + 1]
            for s, c in cur.items():
                target[s + r] = target.get(s + r, 0) + c
    return dist[k]


def mann_whitney_u(a: Sequence[float], b: Sequence[float]) -> tuple[float, float]:
    """Two-sided Mann-Whitney U test for independent samples.

    Returns (U, p) with U computed for the first sample. Exact enumeration
    over all C(n_a + n_b, n_a) group labelings when min(n_a, n_b) <= 8 and
    max(n_a, n_b) <= 25; otherwise normal approximation with tie and
    continuity corrections.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    n_a, n_b = a.size, b.size
    if n_a < 1 or n_b < 1:
        raise InsufficientDataError("both samples must be nonempty")
    combined = np.concatenate([a, b])
    ranks = _average_ranks(combined)
    r_a = float(ranks[:n_a].sum())
    u_a = r_a - n_a * (n_a + 1) / 2.0
    mu = n_a * n_b / 2.0

    if min(n_a, n_b) <= MANN_WHITNEY_EXACT_MIN and max(n_a, n_b) <= MANN_WHITNEY_EXACT_MAX:
        doubled = np.rint(2 * ranks).astype(int).tolist()
        counts = _mw_exact_counts(doubled, n_a)
        offset2 = n_a * (n_a + 1)  # doubled rank-sum offset for U
        mu2 = n_a * n_b  # doubled null mean of U
        obs_dev = abs(int(round(2 * u_a)) - mu2)
        total = sum(counts.values())
        hits = sum(c for r2, c in counts.items() if abs((r2 - offset2) - mu2) >= obs_dev)
        return u_a, float(hits / total)

    n = n_a + n_b
    ties = _tie_counts(combined)
    tie_term = np.sum(ties**3 - ties) / (n * (n - 1)) if n > 1 else 0.0
    var = n_a * n_b / 12.0 * ((n + 1) - tie_term)
    if var <= 0:
        return u_a, 1.0
    diff = u_a - mu
    cc = 0.5 * np.sign(diff)
    z = (diff - cc) / np.sqrt(var)
    return u_a, float(min(1.0, 2.0 * norm.sf(abs(z))))


def shapiro_wilk(y: Sequence[float]) -> tuple[float, float]:
    """Shapiro-Wilk W statistic and p-value for departure from normality.

    Royston's approximation; requires 3 <= n <= 5000 and a non-degenerate
    sample.
    """
    x = np.sort(np.asarray(y, dtype=float))
    n = x.size
    if n < 3:
        raise InsufficientDataError(f"shapiro_wilk needs n >= 3, got {n}")
    if n > 5000:
        raise InsufficientDataError("shapiro_wilk approximation valid only for n <= 5000")
    ssq = float(np.sum((x - x.mean()) ** 2))
    if ssq == 0.0:
        raise InsufficientDataError("sample has zero variance")

    m = norm.ppf((np.arange(1, n + 1) - 0.375) / (n + 0.25))
    msq = float(np.sum(m * m))
    u = 1.0 / np.sqrt(n)
    a = np.empty(n)
    if n == 3:
        a[:] = (-np.sqrt(0.5), 0.0, np.sqrt(0.5))
    else:
        c_n = m[-1] / np.sqrt(msq)
        a_n = (
            c_n
            + 0.221157 * u
            - 0.147981 * u**2
            - 2.071190 * u**3
            + 4.434685 * u**4
            - 2.706056 * u**5
        )
        if n > 5:
            c_n1 = m[-2] / np.sqrt(msq)
            a_n1 = (
                c_n1
                + 0.042981 * u
                - 0.293762 * u**2
                - 1.752461 * u**3
                + 5.682633 * u**4
                - 3.582633 * u**5
            )
            phi = (msq - 2 * m[-1] ** 2 - 2 * m[-2] ** 2) / (1 - 2 * a_n**2 - 2 * a_n1**2)
            a[2:-2] = m[2:-2] / np.sqrt(phi)
            a[-1], a[-2] = a_n, a_n1
            a[0], a[1] = -a_n, -a_n1
        else:
            phi = (msq - 2 * m[-1] ** 2) / (1 - 2 * a_n**2)
            a[1:-1] = m[1:-1] / np.sqrt(phi)
            a[-1] = a_n
            a[0] = -a_n

    w = float(np.sum(a * x) ** 2 / ssq)
    w = min(w, 1.0 - 1e-15)

    if n == 3:
        p = 6.0 / np.pi * (np.arcsin(np.sqrt(w)) - np.arcsin(np.sqrt(0.75)))
        return w, float(min(max(p, 0.0), 1.0))
    if n <= 11:
        g = -2.273 + 0.459 * n
        stat = -np.log(g - np.log1p(-w))
        mu = 0.5440 - 0.39978 * n + 0.025054 * n**2 - 0.0006714 * n**3
        sigma = np.exp(1.3822 - 0.77857 * n + 0.062767 * n**2 - 0.0020322 * n**3)
    else:
        ln_n = np.log(n)
        stat = np.log1p(-w)
        mu = -1.5861 - 0.31082 * ln_n - 0.083751 * ln_n**2 + 0.0038915 * ln_n**3
        sigma = np.exp(-0.4803 - 0.082676 * ln_n + 0.0030302 * ln_n**2)
    z = (stat - mu) / sigma
    return w, float(norm.sf(z))
