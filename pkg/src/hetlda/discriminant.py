"""Two-class Gaussian discriminant primitives.

A linear rule (w, w0) assigns the first class when w'x >= w0. Under
per-class Gaussian models the projected statistics (mu_k, sigma_k^2) and
standardized margins z_k = (w0 - mu_k)/sigma_k determine the model
misclassification probability

    p_e = pi_1 (1 - Q(z_1)) + pi_2 Q(z_2)

and its gradient in (w, w0), both implemented here.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateProjection, DimensionMismatch, EmptyClass
from .numkit import covariance_matrix, mean_vector, q_function

__all__ = [
    "LabeledDataset", "ClassStats", "Priors", "LinearDiscriminant",
    "ProjectedStats", "compute_class_stats", "project_stats", "bayes_error",
    "gradient_bayes_error", "classify", "decision_values",
    "training_error_count",
]

_SQRT_2PI = math.sqrt(2.0 * math.pi)
_MIN_PROJECTED_VARIANCE = 1e-300


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class LabeledDataset:
    """Feature matrix with dense integer labels.

    labels take values in [0, K) where K = max(label)+1; class_names, when
    given, has exactly K entries and names class k at index k. Arrays are
    normalized to float64/int64 and marked read-only.
    """

    features: np.ndarray
    labels: np.ndarray
    class_names: tuple[str, ...] | None = None

    def __post_init__(self):
        x = np.asarray(self.features, dtype=float)
        y = np.asarray(self.labels)
        if x.ndim != 2:
            raise DimensionMismatch(f"features must be n x d, got shape {x.shape}")
        if y.ndim != 1 or y.shape[0] != x.shape[0]:
            raise DimensionMismatch(
                f"labels shape {y.shape} does not match {x.shape[0]} rows")
        if x.shape[0] == 0:
            raise EmptyClass("dataset has no rows")
        if not np.all(np.isfinite(x)):
            raise ValueError("features must be finite")
        if not np.issubdtype(y.dtype, np.integer):
            rounded = np.asarray(y, dtype=float)
            y_int = rounded.astype(np.int64)
            if np.any(y_int != rounded):
                raise ValueError("labels must be integers")
            y = y_int
        y = y.astype(np.int64)
        if y.min() < 0:
            raise ValueError("labels must be non-negative")
        object.__setattr__(self, "features", _readonly(x))
        object.__setattr__(self, "labels", _readonly(y))
        if self.class_names is not None:
            names = tuple(str(n) for n in self.class_names)
            if len(names) != self.n_classes:
                raise DimensionMismatch(
                    f"{len(names)} class names for {self.n_classes} classes")
            object.__setattr__(self, "class_names", names)

    @property
    def n_samples(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    @property
    def n_classes(self) -> int:
        return int(self.labels.max()) + 1

    def class_indices(self, label: int) -> np.ndarray:
        return np.flatnonzero(self.labels == label)

    def subset(self, indices) -> "LabeledDataset":
        """Row subset; labels keep their values, and class names are
        trimmed to the labels that remain representable (entries above
        the new max label drop off)."""
        idx = np.asarray(indices)
        labels = self.labels[idx]
        names = self.class_names
        if names is not None and labels.size:
            names = names[: int(labels.max()) + 1]
        return LabeledDataset(self.features[idx], labels, names)


@dataclass(frozen=True)
class ClassStats:
    """Per-class first and second moments plus bookkeeping."""

    mean: np.ndarray
    cov: np.ndarray
    count: int
    prior: float

    def __post_init__(self):
        object.__setattr__(self, "mean", _readonly(np.asarray(self.mean, float)))
        object.__setattr__(self, "cov", _readonly(np.asarray(self.cov, float)))


@dataclass(frozen=True)
class Priors:
    """Class priors; tau = pi2/pi1 is the prior ratio used throughout."""

    pi1: float
    pi2: float
    tau: float = field(init=False)

    def __post_init__(self):
        if not (self.pi1 > 0 and self.pi2 > 0):
            raise EmptyClass("priors must be strictly positive")
        object.__setattr__(self, "tau", self.pi2 / self.pi1)


@dataclass(frozen=True)
class LinearDiscriminant:
    """Decision rule: first class iff w'x >= w0."""

    w: np.ndarray
    w0: float

    def __post_init__(self):
        w = np.asarray(self.w, dtype=float)
        if w.ndim != 1:
            raise DimensionMismatch(f"w must be a vector, got shape {w.shape}")
        object.__setattr__(self, "w", _readonly(w))
        object.__setattr__(self, "w0", float(self.w0))


@dataclass(frozen=True)
class ProjectedStats:
    """One-dimensional image of the two class models under (w, w0)."""

    mu1: float
    mu2: float
    var1: float
    var2: float
    z1: float
    z2: float

    @property
    def sigma1(self) -> float:
        return math.sqrt(self.var1)

    @property
    def sigma2(self) -> float:
        return math.sqrt(self.var2)


def compute_class_stats(data: LabeledDataset, class_a: int,
                        class_b: int) -> tuple[ClassStats, ClassStats, Priors]:
    """Moments and priors for the two named classes.

    Priors come from the relative counts of the two classes alone. Each
    class must contribute at least two samples.
    """
    out = []
    counts = []
    for label in (class_a, class_b):
        idx = data.class_indices(label)
        if idx.size < 2:
            raise EmptyClass(
                f"class {label} has {idx.size} sample(s); at least 2 required")
        rows = data.features[idx]
        m = mean_vector(rows)
        out.append((m, covariance_matrix(rows, m), idx.size))
        counts.append(idx.size)
    total = counts[0] + counts[1]
    priors = Priors(counts[0] / total, counts[1] / total)
    s1 = ClassStats(out[0][0], out[0][1], out[0][2], priors.pi1)
    s2 = ClassStats(out[1][0], out[1][1], out[1][2], priors.pi2)
    return s1, s2, priors


def project_stats(disc: LinearDiscriminant, stats1: ClassStats,
                  stats2: ClassStats) -> ProjectedStats:
    """Project both class models onto the discriminant direction."""
    w, w0 = disc.w, disc.w0
    mu1 = float(w @ stats1.mean)
    mu2 = float(w @ stats2.mean)
    var1 = float(w @ stats1.cov @ w)
    var2 = float(w @ stats2.cov @ w)
    for k, v in ((1, var1), (2, var2)):
        if not (v > _MIN_PROJECTED_VARIANCE) or not math.isfinite(v):
            raise DegenerateProjection(
                f"projected variance of class {k} is {v!r}")
    z1 = (w0 - mu1) / math.sqrt(var1)
    z2 = (w0 - mu2) / math.sqrt(var2)
    return ProjectedStats(mu1, mu2, var1, var2, z1, z2)


def bayes_error(proj: ProjectedStats, priors: Priors) -> float:
    """Model misclassification probability of the rule behind proj."""
    return (priors.pi1 * (1.0 - q_function(proj.z1))
            + priors.pi2 * q_function(proj.z2))


def gradient_bayes_error(disc: LinearDiscriminant, stats1: ClassStats,
                         stats2: ClassStats,
                         priors: Priors) -> tuple[np.ndarray, float]:
    """Exact gradient of bayes_error with respect to (w, w0)."""
    proj = project_stats(disc, stats1, stats2)
    s1, s2 = proj.sigma1, proj.sigma2
    z1, z2 = proj.z1, proj.z2
    phi1 = math.exp(-0.5 * z1 * z1) / _SQRT_2PI
    phi2 = math.exp(-0.5 * z2 * z2) / _SQRT_2PI
    w = disc.w
    grad_w = (-priors.pi1 * phi1 * (s1 * stats1.mean + z1 * (stats1.cov @ w)) / proj.var1
              + priors.pi2 * phi2 * (s2 * stats2.mean + z2 * (stats2.cov @ w)) / proj.var2)
    grad_w0 = priors.pi1 * phi1 / s1 - priors.pi2 * phi2 / s2
    return grad_w, grad_w0


def decision_values(disc: LinearDiscriminant, features) -> np.ndarray:
    """w'x - w0 for each row of features."""
    x = np.asarray(features, dtype=float)
    if x.ndim == 1:
        x = x[None, :]
    if x.shape[1] != disc.w.shape[0]:
        raise DimensionMismatch(
            f"{x.shape[1]} feature columns, discriminant expects {disc.w.shape[0]}")
    return x @ disc.w - disc.w0


def classify(disc: LinearDiscriminant, x, class_a: int = 0,
             class_b: int = 1) -> int:
    """Label for a single sample; the boundary w'x == w0 goes to class_a."""
    value = float(decision_values(disc, np.asarray(x, dtype=float))[0])
    return class_a if value >= 0.0 else class_b


def training_error_count(disc: LinearDiscriminant, data: LabeledDataset,
                         class_a: int | None = None,
                         class_b: int | None = None) -> int:
    """Misclassified-sample count on a two-class dataset.

    By default the smaller label plays the w'x >= w0 side (class_a).
    """
    present = np.unique(data.labels)
    if class_a is None or class_b is None:
        if present.size != 2:
            raise DimensionMismatch(
                f"dataset has {present.size} classes; pass class_a/class_b explicitly")
        class_a, class_b = int(present[0]), int(present[1])
    side_a = decision_values(disc, data.features) >= 0.0
    predicted = np.where(side_a, class_a, class_b)
    return int(np.sum(predicted != data.labels))
