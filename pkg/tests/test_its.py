"""Interrupted time series estimator on synthetic aligned cohorts."""

import numpy as np
import pytest

from moods.stats import interrupted_time_series, zscore_per_participant
from moods.stats.its import zscore
from moods.stats.nonparam import InsufficientDataError


def build_cohort(rng, n_participants=17, step_z=0.0, action_week_mu=6, action_week_sd=0,
                 pre_slope=0.02, post_slope=0.0, noise_sd=0.15, n_days=98):
    """Daily intensity series with rising pre-action trend and optional step.

    The step is injected in z-units of each participant's pre-injection
    daily standard deviation, mirroring how the platform injects effects.
    """
    daily = {}
    action_weeks = {}
    for i in range(n_participants):
        pid = f"p{i:02d}"
        week = int(np.clip(round(rng.normal(action_week_mu, action_week_sd)), 4, 11))
        action_day = (week - 1) * 7
        days = np.arange(n_days)
        base = 1.5 + np.where(
            days < action_day,
            pre_slope * days,
            pre_slope * action_day + post_slope * (days - action_day),
        )
        values = base + rng.normal(scale=noise_sd, size=n_days)
        sd = values.std()
        values = values + np.where(days // 7 + 1 > week, step_z * sd, 0.0)
        daily[pid] = list(zip(days.tolist(), values.tolist()))
        action_weeks[pid] = week
    return daily, action_weeks


def test_zscore_basic_and_degenerate():
    z, flag = zscore([1.0, 2.0, 3.0])
    assert not flag
    assert z.mean() == pytest.approx(0.0)
    assert z.std() == pytest.approx(1.0)
    z, flag = zscore([4.0, 4.0, 4.0])
    assert flag
    assert np.all(z == 0.0)


def test_zscore_per_participant_keeps_days():
    out = zscore_per_participant({"a": [(0, 1.0), (3, 2.0), (9, 3.0)]})
    assert [d for d, _ in out["a"]] == [0, 3, 9]
    assert np.mean([v for _, v in out["a"]]) == pytest.approx(0.0)


def test_null_case_mean_level_change_near_zero():
    estimates = []
    for rep in range(100):
        rng = np.random.default_rng(1000 + rep)
        daily, weeks = build_cohort(rng, step_z=0.0)
        report = interrupted_time_series(daily, weeks)
        estimates.append(report.level_change)
    assert abs(np.mean(estimates)) < 0.05


def test_injected_step_recovered_within_ci():
    rng = np.random.default_rng(42)
    daily, weeks = build_cohort(rng, n_participants=40, step_z=-0.5, noise_sd=0.2)
    report = interrupted_time_series(daily, weeks)
    # 95% CI implied by the t test on the level-change coefficient
    se = abs(report.level_change / _tstat_from_p(report))
    assert abs(report.level_change - (-0.5)) < 2.0 * se + 0.05
    assert report.p_value < 0.05


def _tstat_from_p(report):
    from scipy.stats import t as student_t

    dof = report.n_pre_days + report.n_post_days - 4
    return student_t.isf(report.p_value / 2, dof)


def test_action_week_excluded_and_window_capped():
    rng = np.random.default_rng(3)
    daily, weeks = build_cohort(rng, n_participants=5)
    report = interrupted_time_series(daily, weeks)
    assert report.n_pre_days <= 5 * 20
    assert report.n_post_days <= 5 * 20
    # 98 days minus the 7 action-week days leaves at most 91 usable per pid
    assert report.n_pre_days + report.n_post_days <= 5 * 40


def test_counterfactual_extends_pre_fit():
    rng = np.random.default_rng(4)
    daily, weeks = build_cohort(rng, n_participants=10, step_z=-0.4)
    report = interrupted_time_series(daily, weeks)
    for day, value in report.counterfactual:
        assert day >= 1
        assert value == pytest.approx(report.intercept + report.pre_slope * day)


def test_participants_without_both_sides_dropped():
    rng = np.random.default_rng(5)
    daily, weeks = build_cohort(rng, n_participants=3)
    # participant with data only before the action week
    daily["pre_only"] = [(d, 1.0 + 0.01 * d) for d in range(0, 21)]
    weeks["pre_only"] = 6
    report = interrupted_time_series(daily, weeks)
    assert report.n_participants == 3


def test_no_usable_participants_rejected():
    with pytest.raises(InsufficientDataError):
        interrupted_time_series({"a": [(0, 1.0), (1, 2.0)]}, {"a": 6})
