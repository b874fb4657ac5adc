"""Minimum-error linear discriminant for heteroscedastic Gaussian models.

The trainer alternates two exact steps: given a direction w, the optimal
threshold w0 solves a quadratic stationarity condition in closed form;
given (w, w0), the direction is refreshed by solving

    [ (z2/sigma2) C2 - (z1/sigma1) C1 ] w = mean1 - mean2.

Of the two threshold roots only the one carrying the positive square root
satisfies the second-order condition z2/sigma2 >= z1/sigma1, so it is a
local minimum of the model error; the loop records every iterate and
returns the best one seen.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .discriminant import (ClassStats, LinearDiscriminant, Priors,
                           ProjectedStats, bayes_error, gradient_bayes_error,
                           project_stats)
from .errors import (ComplexRoot, DegenerateProjection, Indeterminate,
                     SingularUpdate, ZeroDirection)
from .numkit import solve_symmetric

__all__ = [
    "GldConfig", "GldIterate", "GldTrace", "threshold_roots",
    "solve_threshold", "second_order_holds", "fisher_init", "update_weights",
    "recover_s", "train_gld",
]

_SECOND_ORDER_TOL = 1e-12


@dataclass(frozen=True)
class GldConfig:
    """Knobs for train_gld.

    The gradient test (grad_tol) and the iteration cap (max_iters) are always
    active. The objective-change and weight-change tests participate only
    when their tolerances are set, and fire after `patience` consecutive
    qualifying iterations.
    """

    max_iters: int = 20
    grad_tol: float = 1e-6
    objective_tol: float | None = None
    weight_tol: float | None = None
    patience: int = 3
    variance_equality_tol: float = 1e-12

    def __post_init__(self):
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")
        if not self.grad_tol > 0:
            raise ValueError("grad_tol must be positive")
        for name in ("objective_tol", "weight_tol"):
            v = getattr(self, name)
            if v is not None and not v > 0:
                raise ValueError(f"{name} must be positive when set")
        if self.patience < 1:
            raise ValueError("patience must be at least 1")
        if not self.variance_equality_tol > 0:
            raise ValueError("variance_equality_tol must be positive")


@dataclass(frozen=True)
class GldIterate:
    """One recorded step: the rule, its model error, its gradient norm."""

    w: np.ndarray
    w0: float
    p_e: float
    grad_norm: float


@dataclass(frozen=True)
class GldTrace:
    """Full iteration history plus which test ended the loop."""

    records: tuple[GldIterate, ...]
    converged_by: str
    best_index: int


def _validate_inputs(mu1, mu2, var1, var2, tau):
    for name, v in (("var1", var1), ("var2", var2), ("tau", tau)):
        if not (v > 0 and math.isfinite(v)):
            raise ValueError(f"{name} must be positive and finite, got {v!r}")
    for name, v in (("mu1", mu1), ("mu2", mu2)):
        if not math.isfinite(v):
            raise ValueError(f"{name} must be finite, got {v!r}")


def threshold_roots(mu1: float, mu2: float, var1: float, var2: float,
                    tau: float) -> tuple[float, float]:
    """Both stationary thresholds of the model error for a fixed direction.

    Returns (plus, minus): the roots with the positive and negative square
    root in their numerator. Requires var1 != var2 (the quadratic case) and
    a non-negative radicand. The near-cancelling root is formed via the
    conjugate (product of roots = c/a), never by subtracting close numbers.
    """
    _validate_inputs(mu1, mu2, var1, var2, tau)
    a = var1 - var2
    if a == 0.0:
        raise ValueError("threshold_roots requires var1 != var2")
    log_ratio = math.log(tau) + 0.5 * (math.log(var1) - math.log(var2))
    radicand = (mu1 - mu2) ** 2 + 2.0 * a * log_ratio
    if radicand < 0.0:
        raise ComplexRoot(
            f"no real stationary threshold (radicand {radicand:.3e})")
    G = math.sqrt(var1 * var2 * radicand)
    N = mu2 * var1 - mu1 * var2
    c = var1 * mu2 ** 2 - var2 * mu1 ** 2 - 2.0 * var1 * var2 * log_ratio
    if N > 0.0:
        plus = (N + G) / a
        minus = c / (N + G)
    elif N < 0.0:
        minus = (N - G) / a
        plus = c / (N - G)
    else:
        plus, minus = G / a, -G / a
    return plus, minus


def solve_threshold(mu1: float, mu2: float, var1: float, var2: float,
                    tau: float, variance_equality_tol: float = 1e-12) -> float:
    """Threshold minimizing the model error along a fixed direction.

    Heteroscedastic case: the '+sqrt' stationary root. Variances equal to
    within variance_equality_tol (relative): the single stationary point
    (mu1+mu2)/2 + var ln(tau)/(mu1-mu2), or the plain midpoint when the
    projected means coincide as well.
    """
    _validate_inputs(mu1, mu2, var1, var2, tau)
    if abs(var1 - var2) <= variance_equality_tol * max(var1, var2):
        if mu1 == mu2:
            return 0.5 * (mu1 + mu2)
        var = 0.5 * (var1 + var2)
        return 0.5 * (mu1 + mu2) + var * math.log(tau) / (mu1 - mu2)
    return threshold_roots(mu1, mu2, var1, var2, tau)[0]


def second_order_holds(proj: ProjectedStats,
                       tol: float = _SECOND_ORDER_TOL) -> bool:
    """Local-minimum test for a stationary threshold:
    z2/sigma2 >= z1/sigma1 (up to tol)."""
    return proj.z2 / proj.sigma2 >= proj.z1 / proj.sigma1 - tol


def fisher_init(stats1: ClassStats, stats2: ClassStats) -> np.ndarray:
    """Fisher direction: (n1 C1 + n2 C2) w = mean1 - mean2."""
    pooled = stats1.count * stats1.cov + stats2.count * stats2.cov
    diff = stats1.mean - stats2.mean
    if not np.any(diff):
        raise ZeroDirection("class means are identical")
    w = solve_symmetric(pooled, diff)
    if not np.any(w):
        raise ZeroDirection("mean difference is orthogonal to the pooled "
                            "covariance range")
    return w


def update_weights(stats1: ClassStats, stats2: ClassStats,
                   proj: ProjectedStats) -> np.ndarray:
    """Direction refresh from the stationarity of the model error in w."""
    m = (proj.z2 / proj.sigma2) * stats2.cov - (proj.z1 / proj.sigma1) * stats1.cov
    w = solve_symmetric(m, stats1.mean - stats2.mean)
    if not np.any(w):
        raise SingularUpdate("update system maps the mean difference to zero")
    return w


def recover_s(proj: ProjectedStats) -> float:
    """Blend parameter locating the stationary rule inside the
    one-parameter covariance-average family; unbounded in general."""
    denom = proj.sigma1 * proj.z2 - proj.sigma2 * proj.z1
    if denom == 0.0:
        raise Indeterminate("sigma1 z2 == sigma2 z1")
    return -proj.sigma2 * proj.z1 / denom


def _project_direction(w: np.ndarray, stats1: ClassStats,
                       stats2: ClassStats) -> ProjectedStats:
    # threshold-independent pass; z slots are placeholders
    return project_stats(LinearDiscriminant(w, 0.0), stats1, stats2)


def train_gld(stats1: ClassStats, stats2: ClassStats, priors: Priors,
              config: GldConfig | None = None
              ) -> tuple[LinearDiscriminant, float, GldTrace]:
    """Alternating threshold/direction minimization of the model error.

    Starts from the Fisher direction, records every iterate (at most
    max_iters+1 of them), and returns the iterate with the smallest model
    error together with the full trace. A ComplexRoot or
    DegenerateProjection after the first iterate ends the loop and the best
    recorded iterate is still returned, with the cause in converged_by.
    """
    cfg = config or GldConfig()
    w = fisher_init(stats1, stats2)
    records: list[GldIterate] = []
    converged_by = "max_iters"
    prev_pe: float | None = None
    prev_w: np.ndarray | None = None
    objective_streak = 0
    weight_streak = 0

    for iteration in range(cfg.max_iters + 1):
        try:
            pre = _project_direction(w, stats1, stats2)
            w0 = solve_threshold(pre.mu1, pre.mu2, pre.var1, pre.var2,
                                 priors.tau, cfg.variance_equality_tol)
        except ComplexRoot:
            if records:
                converged_by = "complex_root"
                break
            # no usable iterate yet: fall back to the equal-variance form
            # with the prior-weighted variance so the trainer stays total
            pre = _project_direction(w, stats1, stats2)
            var = priors.pi1 * pre.var1 + priors.pi2 * pre.var2
            if pre.mu1 == pre.mu2:
                w0 = 0.5 * (pre.mu1 + pre.mu2)
            else:
                w0 = (0.5 * (pre.mu1 + pre.mu2)
                      + var * math.log(priors.tau) / (pre.mu1 - pre.mu2))
            disc = LinearDiscriminant(w, w0)
            proj = project_stats(disc, stats1, stats2)
            pe = bayes_error(proj, priors)
            gw, g0 = gradient_bayes_error(disc, stats1, stats2, priors)
            gnorm = math.hypot(float(np.linalg.norm(gw)), g0)
            records.append(GldIterate(w.copy(), w0, pe, gnorm))
            converged_by = "complex_root"
            break
        except DegenerateProjection:
            if records:
                converged_by = "degenerate_projection"
                break
            raise

        disc = LinearDiscriminant(w, w0)
        proj = project_stats(disc, stats1, stats2)
        pe = bayes_error(proj, priors)
        gw, g0 = gradient_bayes_error(disc, stats1, stats2, priors)
        gnorm = math.hypot(float(np.linalg.norm(gw)), g0)
        records.append(GldIterate(w.copy(), w0, pe, gnorm))

        if gnorm <= cfg.grad_tol:
            converged_by = "gradient"
            break
        if cfg.objective_tol is not None and prev_pe is not None:
            objective_streak = (objective_streak + 1
                                if abs(pe - prev_pe) <= cfg.objective_tol else 0)
            if objective_streak >= cfg.patience:
                converged_by = "objective"
                break
        if cfg.weight_tol is not None and prev_w is not None:
            moved = float(np.linalg.norm(w - prev_w))
            weight_streak = weight_streak + 1 if moved <= cfg.weight_tol else 0
            if weight_streak >= cfg.patience:
                converged_by = "weight"
                break
        if iteration == cfg.max_iters:
            converged_by = "max_iters"
            break

        prev_pe, prev_w = pe, w
        try:
            w = update_weights(stats1, stats2, proj)
        except SingularUpdate:
            converged_by = "singular_update"
            break

    pes = [r.p_e for r in records]
    best_index = int(np.argmin(pes))
    best = records[best_index]
    trace = GldTrace(tuple(records), converged_by, best_index)
    return LinearDiscriminant(best.w, best.w0), best.p_e, trace
