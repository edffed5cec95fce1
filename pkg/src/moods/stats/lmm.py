"""REML fitting of the random-intercept + random-slope linear mixed model.

Model for participant i at week t:

    y_it = b0 + b1 * t + u0_i + u1_i * t + e_it,
    (u0_i, u1_i) ~ N(0, G),   e_it ~ N(0, sigma^2)

G is parameterized through the Cholesky factor of the *relative* covariance
Psi = G / sigma^2, so the residual variance profiles out of the REML
criterion along with the fixed effects. With W_i = Z_i Psi Z_i' + I the
profiled deviance is

    -2 l_R(theta) = sum_i log|W_i| + log|sum_i X_i' W_i^-1 X_i|
                    + (n - p) * (1 + log(2 pi * rss/(n-p)))

minimized by quasi-Newton iterations from several start points. Fixed-effect
p-values are Wald z tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.linalg import cho_factor, cho_solve
from scipy.optimize import minimize
from scipy.stats import norm

from .nonparam import InsufficientDataError

MIN_WEEKS_PER_PARTICIPANT = 5
N_RESTARTS = 5
DEVIANCE_TOL = 1e-8


@dataclass(frozen=True)
class LmmFit:
    """Fixed effects, variance components, and fit diagnostics."""

    beta: tuple[float, float]
    beta_se: tuple[float, float]
    beta_p: tuple[float, float]
    sd_intercept: float
    sd_slope: float
    re_corr: float
    residual_sd: float
    reml_loglik: float
    converged: bool
    n_participants: int
    n_obs: int
    n_excluded: int = 0

    def to_record(self) -> dict:
        return {
            "fixed_effects": {
                "intercept": {
                    "estimate": self.beta[0],
                    "se": self.beta_se[0],
                    "p_value": self.beta_p[0],
                },
                "week": {
                    "estimate": self.beta[1],
                    "se": self.beta_se[1],
                    "p_value": self.beta_p[1],
                },
            },
            "random_effects": {
                "sd_intercept": self.sd_intercept,
                "sd_slope": self.sd_slope,
                "corr": self.re_corr,
            },
            "residual_sd": self.residual_sd,
            "reml_loglik": self.reml_loglik,
            "converged": self.converged,
            "n_participants": self.n_participants,
            "n_obs": self.n_obs,
            "n_excluded": self.n_excluded,
        }


def filter_participants(
    observations: Sequence[tuple[str, float, float]],
    min_weeks: int = MIN_WEEKS_PER_PARTICIPANT,
) -> tuple[dict[str, tuple[np.ndarray, np.ndarray]], int]:
    """Group (participant, week, y) rows; drop thin or flat participants.

    Excludes participants with fewer than ``min_weeks`` distinct weeks or
    with zero variance in their responses. Returns (groups, n_excluded).
    """
    by_pid: dict[str, list[tuple[float, float]]] = {}
    for pid, week, y in observations:
        by_pid.setdefault(str(pid), []).append((float(week), float(y)))
    groups: dict[str, tuple[np.ndarray, np.ndarray]] = {}
    n_excluded = 0
    for pid in sorted(by_pid):
        rows = sorted(by_pid[pid])
        weeks = np.array([w for w, _ in rows])
        ys = np.array([v for _, v in rows])
        if np.unique(weeks).size < min_weeks or np.ptp(ys) == 0.0:
            n_excluded += 1
            continue
        groups[pid] = (weeks, ys)
    return groups, n_excluded


def _theta_to_psi(theta: np.ndarray) -> np.ndarray:
    ell = np.array([[theta[0], 0.0], [theta[1], theta[2]]])
    return ell @ ell.T


class _Profile:
    """Profiled REML deviance over theta = vech of chol(Psi)."""

    def __init__(self, groups: dict[str, tuple[np.ndarray, np.ndarray]]):
        self.designs = []
        cache: dict[tuple, int] = {}
        self.design_of_group = []
        for weeks, ys in groups.values():
            key = tuple(weeks.tolist())
            if key not in cache:
                cache[key] = len(self.designs)
                x = np.column_stack([np.ones_like(weeks), weeks])
                self.designs.append(x)
            self.design_of_group.append((cache[key], ys))
        self.n = sum(ys.size for _, ys in self.design_of_group)
        self.p = 2

    def components(self, theta: np.ndarray):
        psi = _theta_to_psi(theta)
        logdet_w = 0.0
        xtwx = np.zeros((2, 2))
        xtwy = np.zeros(2)
        solves = []
        for x in self.designs:
            w = x @ psi @ x.T + np.eye(x.shape[0])
            cf = cho_factor(w, lower=True)
            logdet = 2.0 * np.sum(np.log(np.diag(cf[0])))
            winv_x = cho_solve(cf, x)
            solves.append((cf, winv_x, logdet))
        ytwy = 0.0
        for idx, ys in self.design_of_group:
            cf, winv_x, logdet = solves[idx]
            x = self.designs[idx]
            logdet_w += logdet
            xtwx += x.T @ winv_x
            winv_y = cho_solve(cf, ys)
            xtwy += x.T @ winv_y
            ytwy += ys @ winv_y
        beta = np.linalg.solve(xtwx, xtwy)
        rss = ytwy - xtwy @ beta
        return logdet_w, xtwx, beta, max(rss, 1e-300)

    def deviance(self, theta: np.ndarray) -> float:
        try:
            logdet_w, xtwx, _, rss = self.components(theta)
        except np.linalg.LinAlgError:
            return np.inf
        sign, logdet_a = np.linalg.slogdet(xtwx)
        if sign <= 0:
            return np.inf
        df = self.n - self.p
        return float(logdet_w + logdet_a + df * (1.0 + np.log(2.0 * np.pi * rss / df)))


def fit_lmm(
    observations: Sequence[tuple[str, float, float]],
    min_weeks: int = MIN_WEEKS_PER_PARTICIPANT,
    seed: int = 0,
    constrain_zero_variance: bool = False,
) -> LmmFit:
    """REML fit of the random intercept/slope model to (participant, week, y) rows.

    ``constrain_zero_variance`` pins the random-effect covariance at zero,
    collapsing the fit to ordinary least squares (used for validation).
    Non-convergence is reported through the ``converged`` flag, never
    silently.
    """
    groups, n_excluded = filter_participants(observations, min_weeks=min_weeks)
    if len(groups) < 2:
        raise InsufficientDataError(
            f"need >= 2 usable participants after filtering, got {len(groups)}"
        )
    prof = _Profile(groups)
    df = prof.n - prof.p

    if constrain_zero_variance:
        best_theta = np.zeros(3)
        best_dev = prof.deviance(best_theta)
        converged = True
    else:
        rng = np.random.default_rng(seed)
        starts = [np.array([1.0, 0.0, 0.5])]
        starts += [rng.uniform(0.01, 2.0, size=3) * np.array([1, 0.2, 1]) for _ in range(N_RESTARTS - 1)]
        bounds = [(0.0, None), (None, None), (0.0, None)]
        best_dev, best_theta, converged = np.inf, starts[0], False
        for start in starts:
            res = minimize(
                prof.deviance,
                start,
                method="L-BFGS-B",
                bounds=bounds,
                options={"ftol": DEVIANCE_TOL, "gtol": 1e-10, "maxiter": 500},
            )
            if res.fun < best_dev - DEVIANCE_TOL:
                best_dev, best_theta, converged = res.fun, res.x, bool(res.success)
            elif res.fun < best_dev:
                best_dev = res.fun
                best_theta = res.x
                converged = converged or bool(res.success)

    logdet_w, xtwx, beta, rss = prof.components(best_theta)
    sigma2 = rss / df
    cov_beta = sigma2 * np.linalg.inv(xtwx)
    se = np.sqrt(np.diag(cov_beta))
    zstats = beta / se
    pvals = 2.0 * norm.sf(np.abs(zstats))
    psi = _theta_to_psi(best_theta)
    g = sigma2 * psi
    sd0, sd1 = np.sqrt(g[0, 0]), np.sqrt(g[1, 1])
    corr = float(g[0, 1] / (sd0 * sd1)) if sd0 > 0 and sd1 > 0 else 0.0
    return LmmFit(
        beta=(float(beta[0]), float(beta[1])),
        beta_se=(float(se[0]), float(se[1])),
        beta_p=(float(pvals[0]), float(pvals[1])),
        sd_intercept=float(sd0),
        sd_slope=float(sd1),
        re_corr=corr,
        residual_sd=float(np.sqrt(sigma2)),
        reml_loglik=float(-0.5 * prof.deviance(best_theta)),
        converged=converged,
        n_participants=len(groups),
        n_obs=prof.n,
        n_excluded=n_excluded,
    )


def reml_deviance(
    observations: Sequence[tuple[str, float, float]],
    theta: Sequence[float],
    min_weeks: int = MIN_WEEKS_PER_PARTICIPANT,
) -> float:
    """Profiled REML deviance at an arbitrary theta (for optimality probes)."""
    groups, _ = filter_participants(observations, min_weeks=min_weeks)
    return _Profile(groups).deviance(np.asarray(theta, dtype=float))
