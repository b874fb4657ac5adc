"""One-vs-one reduction for K > 2 classes.

One binary rule per unordered class pair; at prediction time each rule
votes for one of its two classes and the vote counts are weighted by
1 - p_e, so pairs that separate poorly count for less. This also breaks
most plurality ties without randomness.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .discriminant import LabeledDataset, LinearDiscriminant, decision_values
from .errors import EmptyClass

__all__ = ["BinaryTrainer", "OvoModel", "train_ovo", "predict_ovo",
           "predict_ovo_batch"]

# A binary training procedure: gets the dataset restricted to the two
# classes plus which label plays the w'x >= w0 side, returns the rule
# and its error estimate in [0, 1].
BinaryTrainer = Callable[[LabeledDataset, int, int],
                         tuple[LinearDiscriminant, float]]


@dataclass(frozen=True)
class OvoModel:
    """All K(K-1)/2 pairwise rules with their error estimates."""

    pairs: tuple[tuple[int, int, LinearDiscriminant, float], ...]
    n_classes: int
    class_names: tuple[str, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(self.pairs))
        k = self.n_classes
        expected = {(a, b) for a in range(k) for b in range(a + 1, k)}
        seen = set()
        for a, b, _disc, p_e in self.pairs:
            if not 0 <= a < b < k:
                raise ValueError(f"invalid class pair ({a}, {b})")
            if not 0.0 <= p_e <= 1.0:
                raise ValueError(f"pair ({a}, {b}) has error {p_e} "
                                 "outside [0, 1]")
            seen.add((a, b))
        if seen != expected or len(self.pairs) != len(expected):
            raise ValueError("pairs must cover every unordered class pair "
                             "exactly once")
        if self.class_names is not None:
            names = tuple(self.class_names)
            if len(names) != k:
                raise ValueError(f"{len(names)} class names for {k} classes")
            object.__setattr__(self, "class_names", names)

    @property
    def mean_p_e(self) -> float:
        return float(np.mean([p_e for *_rest, p_e in self.pairs]))


def train_ovo(data: LabeledDataset, trainer: BinaryTrainer) -> OvoModel:
    """Train one binary rule per unordered class pair.

    Each pair sees only its own samples; the other K-2 classes are
    ignored. Every class must contribute at least two samples.
    """
    k = data.n_classes
    if k < 2:
        raise EmptyClass("need at least two classes")
    for label in range(k):
        count = data.class_indices(label).size
        if count < 2:
            raise EmptyClass(f"class {label} has {count} samples")
    pairs = []
    for a in range(k):
        for b in range(a + 1, k):
            subset = data.subset(np.flatnonzero(
                (data.labels == a) | (data.labels == b)))
            disc, p_e = trainer(subset, a, b)
            pairs.append((a, b, disc, float(p_e)))
    return OvoModel(tuple(pairs), k, data.class_names)


def _scores(model: OvoModel, features: np.ndarray) -> np.ndarray:
    scores = np.zeros((features.shape[0] if features.ndim == 2 else 1,
                       model.n_classes))
    for a, b, disc, p_e in model.pairs:
        votes_a = decision_values(disc, features) >= 0.0
        weight = 1.0 - p_e
        scores[votes_a, a] += weight
        scores[~votes_a, b] += weight
    return scores


def predict_ovo(model: OvoModel, x) -> int:
    """Weighted-vote label for a single sample; ties go to the lowest
    class index."""
    return int(np.argmax(_scores(model, np.asarray(x, dtype=float))[0]))


def predict_ovo_batch(model: OvoModel, features) -> np.ndarray:
    """Weighted-vote labels for each row of features."""
    x = np.asarray(features, dtype=float)
    if x.ndim == 1:
        x = x[None, :]
    return np.argmax(_scores(model, x), axis=1)
