"""Reference linear discriminants: pooled-covariance LDA and the
covariance-blend family searched by grid or random draws.

All of them produce a rule (w, w0) plus its model error, evaluated with
the same machinery as the fixed-point trainer, so the numbers are
directly comparable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .discriminant import (ClassStats, LinearDiscriminant, Priors,
                           bayes_error, project_stats)
from .errors import DegenerateProjection, ZeroDirection
from .numkit import solve_symmetric

__all__ = ["SweepConfig", "train_lda", "train_chld", "train_rhld1",
           "train_rhld2"]


@dataclass(frozen=True)
class SweepConfig:
    """Grid/random-search knobs shared by the blend-family trainers.

    step is the grid spacing of the constrained sweep; trials and s_range
    drive the random sweeps. s_range may be degenerate (a == b) to pin the
    draw to a single value.
    """

    step: float = 0.001
    trials: int = 1000
    s_range: tuple[float, float] = (-2.0, 3.0)
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.step <= 1.0:
            raise ValueError("step must be in (0, 1]")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        a, b = self.s_range
        if not (math.isfinite(a) and math.isfinite(b) and a <= b):
            raise ValueError("s_range must be a finite pair with a <= b")


def _mean_difference(stats1: ClassStats, stats2: ClassStats) -> np.ndarray:
    diff = stats1.mean - stats2.mean
    if not np.any(diff):
        raise ZeroDirection("class means are identical")
    return diff


def _evaluate(w: np.ndarray, w0: float, stats1: ClassStats,
              stats2: ClassStats, priors: Priors
              ) -> tuple[LinearDiscriminant, float]:
    disc = LinearDiscriminant(w, w0)
    return disc, bayes_error(project_stats(disc, stats1, stats2), priors)


def train_lda(stats1: ClassStats, stats2: ClassStats,
              priors: Priors) -> tuple[LinearDiscriminant, float]:
    """Homoscedastic maximum-a-posteriori rule on the pooled covariance.

    The pooled covariance is the count-weighted average pi1 C1 + pi2 C2;
    the normalization matters because the ln(tau) offset in the threshold
    is not scale-free.
    """
    diff = _mean_difference(stats1, stats2)
    pooled = priors.pi1 * stats1.cov + priors.pi2 * stats2.cov
    w = solve_symmetric(pooled, diff)
    if not np.any(w):
        raise ZeroDirection("mean difference is orthogonal to the pooled "
                            "covariance range")
    w0 = math.log(priors.tau) + 0.5 * float((stats1.mean + stats2.mean) @ w)
    return _evaluate(w, w0, stats1, stats2, priors)


def _direction(blend: np.ndarray, diff: np.ndarray) -> np.ndarray | None:
    w = solve_symmetric(blend, diff)
    if not np.any(w) or not np.all(np.isfinite(w)):
        return None
    return w


def train_chld(stats1: ClassStats, stats2: ClassStats, priors: Priors,
               config: SweepConfig | None = None
               ) -> tuple[LinearDiscriminant, float, float]:
    """Grid search of the constrained blend family.

    For s on the grid {0, step, 2 step, ..., 1}, the direction solves
    [s C1 + (1-s) C2] w = mean1 - mean2 and the threshold is the
    variance-weighted mean
    [s mu2 var1 + (1-s) mu1 var2] / [s var1 + (1-s) var2].
    Ties keep the smaller s. Returns (rule, error, best s).
    """
    cfg = config or SweepConfig()
    diff = _mean_difference(stats1, stats2)
    count = int(math.floor(1.0 / cfg.step + 1e-9))
    grid = [min(i * cfg.step, 1.0) for i in range(count + 1)]
    if grid[-1] < 1.0 - 1e-12:
        grid.append(1.0)
    best: tuple[LinearDiscriminant, float, float] | None = None
    for s in grid:
        w = _direction(s * stats1.cov + (1.0 - s) * stats2.cov, diff)
        if w is None:
            continue
        try:
            pre = project_stats(LinearDiscriminant(w, 0.0), stats1, stats2)
        except DegenerateProjection:
            continue
        w0 = ((s * pre.mu2 * pre.var1 + (1.0 - s) * pre.mu1 * pre.var2)
              / (s * pre.var1 + (1.0 - s) * pre.var2))
        if not math.isfinite(w0):
            continue
        disc, pe = _evaluate(w, w0, stats1, stats2, priors)
        if best is None or pe < best[1]:
            best = (disc, pe, s)
    if best is None:
        raise DegenerateProjection("no grid candidate produced a usable rule")
    return best


def train_rhld1(stats1: ClassStats, stats2: ClassStats, priors: Priors,
                config: SweepConfig | None = None
                ) -> tuple[LinearDiscriminant, float, float]:
    """Random search of the one-parameter blend family.

    Draws s uniformly from s_range (all draws generated up front from the
    seed), solves [s C2 + (1-s) C1] w = mean1 - mean2, and pairs it with
    the variance-weighted threshold in the same blend convention,
    [(1-s) mu2 var1 + s mu1 var2] / [(1-s) var1 + s var2]. Ties keep the
    earliest draw. Returns (rule, error, best s).
    """
    cfg = config or SweepConfig()
    diff = _mean_difference(stats1, stats2)
    rng = np.random.default_rng(cfg.seed)
    draws = rng.uniform(cfg.s_range[0], cfg.s_range[1], cfg.trials)
    best: tuple[LinearDiscriminant, float, float] | None = None
    for s in draws:
        s = float(s)
        w = _direction(s * stats2.cov + (1.0 - s) * stats1.cov, diff)
        if w is None:
            continue
        try:
            pre = project_stats(LinearDiscriminant(w, 0.0), stats1, stats2)
        except DegenerateProjection:
            continue
        denom = (1.0 - s) * pre.var1 + s * pre.var2
        if denom == 0.0:
            continue
        w0 = ((1.0 - s) * pre.mu2 * pre.var1 + s * pre.mu1 * pre.var2) / denom
        if not math.isfinite(w0):
            continue
        disc, pe = _evaluate(w, w0, stats1, stats2, priors)
        if best is None or pe < best[1]:
            best = (disc, pe, s)
    if best is None:
        raise DegenerateProjection("no random candidate produced a usable rule")
    return best


def train_rhld2(stats1: ClassStats, stats2: ClassStats, priors: Priors,
                config: SweepConfig | None = None
                ) -> tuple[LinearDiscriminant, float, float, float]:
    """Random search of the two-parameter blend family.

    Draws (s1, s2) uniformly from s_range^2, solves
    [s1 C1 + s2 C2] w = mean1 - mean2, and tries three thresholds: the two
    closed-form candidates mu1 - s1 var1 and mu2 + s2 var2 plus their
    midpoint, keeping whichever has the smallest model error. (For an
    exact blend solve the two candidates coincide; they differ only under
    the least-squares fallback.) Returns (rule, error, best s1, best s2).
    """
    cfg = config or SweepConfig()
    diff = _mean_difference(stats1, stats2)
    rng = np.random.default_rng(cfg.seed)
    draws = rng.uniform(cfg.s_range[0], cfg.s_range[1], (cfg.trials, 2))
    best = None
    for s1, s2 in draws:
        s1, s2 = float(s1), float(s2)
        w = _direction(s1 * stats1.cov + s2 * stats2.cov, diff)
        if w is None:
            continue
        try:
            pre = project_stats(LinearDiscriminant(w, 0.0), stats1, stats2)
        except DegenerateProjection:
            continue
        c_one = pre.mu1 - s1 * pre.var1
        c_two = pre.mu2 + s2 * pre.var2
        for w0 in (c_one, c_two, 0.5 * (c_one + c_two)):
            disc, pe = _evaluate(w, w0, stats1, stats2, priors)
            if best is None or pe < best[1]:
                best = (disc, pe, s1, s2)
    if best is None:
        raise DegenerateProjection("no random candidate produced a usable rule")
    return best
