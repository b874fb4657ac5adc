"""Dataset ingestion, synthetic generators, cross-validation, and the
benchmark harness.

The two synthetic generators draw from a pair of diagonal-covariance
Gaussians with a 1:2 class imbalance; their population parameters are
also exposed directly so model errors can be computed without sampling
noise.
"""
from __future__ import annotations

import csv
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .discriminant import ClassStats, LabeledDataset, Priors
from .errors import (HetldaError, InconsistentWidth,
                     InfeasibleStratification, ParseError)
from .multiclass import BinaryTrainer, predict_ovo_batch, train_ovo

__all__ = ["CSV_HEADER", "CvPlan", "FoldRecord", "EvalMetrics",
           "BenchmarkReport", "load_csv", "load_matrix_csv", "save_csv",
           "generate_d1", "generate_d2", "d1_population", "d2_population",
           "kfold_split", "accuracy_score", "default_workers",
           "run_benchmark"]

CSV_HEADER = ("method,bayes_error_mean,bayes_error_std,"
              "accuracy_mean,accuracy_std,train_time_mean")


# ---------------------------------------------------------------------------
# CSV ingestion

def _read_rows(path: str, has_header: bool) -> list[list[str]]:
    with open(path, newline="") as handle:
        rows = [row for row in csv.reader(handle) if row]
    if has_header and rows:
        rows = rows[1:]
    if not rows:
        raise ParseError("no data rows")
    width = len(rows[0])
    offset = 2 if has_header else 1
    for i, row in enumerate(rows):
        if len(row) != width:
            raise InconsistentWidth(
                f"{len(row)} cells, expected {width}", row=i + offset)
    return rows


def _parse_feature(cell: str, row: int, column: int) -> float:
    try:
        value = float(cell)
    except ValueError:
        raise ParseError(f"feature cell {cell!r} is not a number",
                         row=row, column=column) from None
    if not math.isfinite(value):
        raise ParseError(f"feature cell {cell!r} is not finite",
                         row=row, column=column)
    return value


def load_csv(path: str, has_header: bool = False,
             label_column: int = -1) -> LabeledDataset:
    """Read a delimited file with one label column, the rest features.

    Integer labels forming a dense set {0..K-1} are kept as-is; any
    other labels (strings, sparse integers) are mapped to dense integers
    in order of first appearance, with the original text kept as class
    names.
    """
    rows = _read_rows(path, has_header)
    width = len(rows[0])
    if width < 2:
        raise ParseError(f"{width} columns; need at least one feature "
                         "and one label column")
    col = label_column if label_column >= 0 else width + label_column
    if not 0 <= col < width:
        raise ParseError(f"label column {label_column} out of range for "
                         f"{width} columns")
    offset = 2 if has_header else 1

    features = np.empty((len(rows), width - 1))
    raw_labels = []
    for i, row in enumerate(rows):
        j = 0
        for c, cell in enumerate(row):
            if c == col:
                raw_labels.append(cell.strip())
                continue
            features[i, j] = _parse_feature(cell.strip(), i + offset, c + 1)
            j += 1

    try:
        values = [int(cell) for cell in raw_labels]
    except ValueError:
        values = None
    if values is not None and set(values) == set(range(len(set(values)))):
        labels = np.asarray(values)
        names = tuple(str(v) for v in range(len(set(values))))
    else:
        order: dict[str, int] = {}
        for cell in raw_labels:
            order.setdefault(cell, len(order))
        labels = np.asarray([order[cell] for cell in raw_labels])
        names = tuple(order)
    return LabeledDataset(features, labels, names)


def load_matrix_csv(path: str, has_header: bool = False) -> np.ndarray:
    """Read a delimited file where every cell is a feature."""
    rows = _read_rows(path, has_header)
    offset = 2 if has_header else 1
    out = np.empty((len(rows), len(rows[0])))
    for i, row in enumerate(rows):
        for c, cell in enumerate(row):
            out[i, c] = _parse_feature(cell.strip(), i + offset, c + 1)
    return out


def save_csv(data: LabeledDataset, path: str) -> None:
    """Write features then an integer label column, full precision."""
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        for x, label in zip(data.features, data.labels):
            writer.writerow([f"{v:.17g}" for v in x] + [int(label)])


# ---------------------------------------------------------------------------
# Synthetic generators

_D1_MEAN2 = np.array([3.86, 3.10, 0.84, 0.84, 1.64, 1.08, 0.26, 0.01])
_D1_VAR2 = np.array([8.41, 12.06, 0.12, 0.22, 1.49, 1.77, 0.35, 2.73])
_D1_SHIFT = 0.3
_D1_COUNTS = (1000, 2000)

_D2_MEAN2 = np.array([-1.5, -0.75, 0.75, 1.5])
_D2_VAR2 = np.array([0.25, 0.75, 1.25, 1.75])
_D2_SHIFT = 0.75
_D2_COUNTS = (2000, 4000)


def _generate(seed: int, mean2: np.ndarray, var2: np.ndarray, shift: float,
              counts: tuple[int, int]) -> LabeledDataset:
    rng = np.random.default_rng(seed)
    d = mean2.shape[0]
    n1, n2 = counts
    x1 = rng.standard_normal((n1, d)) + (mean2 - shift)
    x2 = rng.standard_normal((n2, d)) * np.sqrt(var2) + mean2
    features = np.vstack([x1, x2])
    labels = np.concatenate([np.zeros(n1, dtype=int), np.ones(n2, dtype=int)])
    return LabeledDataset(features, labels)


def _population(mean2: np.ndarray, var2: np.ndarray, shift: float,
                counts: tuple[int, int]
                ) -> tuple[ClassStats, ClassStats, Priors]:
    n1, n2 = counts
    n = n1 + n2
    d = mean2.shape[0]
    stats1 = ClassStats(mean2 - shift, np.eye(d), n1, n1 / n)
    stats2 = ClassStats(mean2, np.diag(var2), n2, n2 / n)
    return stats1, stats2, Priors(n1 / n, n2 / n)


def generate_d1(seed: int) -> LabeledDataset:
    """8-dimensional pair: class 0 is N(m - 0.3, I) with 1000 samples,
    class 1 is N(m, diag(v)) with 2000."""
    return _generate(seed, _D1_MEAN2, _D1_VAR2, _D1_SHIFT, _D1_COUNTS)


def generate_d2(seed: int) -> LabeledDataset:
    """4-dimensional pair: class 0 is N(m - 0.75, I) with 2000 samples,
    class 1 is N(m, diag(v)) with 4000."""
    return _generate(seed, _D2_MEAN2, _D2_VAR2, _D2_SHIFT, _D2_COUNTS)


def d1_population() -> tuple[ClassStats, ClassStats, Priors]:
    """Exact class parameters behind generate_d1."""
    return _population(_D1_MEAN2, _D1_VAR2, _D1_SHIFT, _D1_COUNTS)


def d2_population() -> tuple[ClassStats, ClassStats, Priors]:
    """Exact class parameters behind generate_d2."""
    return _population(_D2_MEAN2, _D2_VAR2, _D2_SHIFT, _D2_COUNTS)


# ---------------------------------------------------------------------------
# Cross-validation

@dataclass(frozen=True)
class CvPlan:
    """Fold count, trial count, and shuffling seed for repeated k-fold."""

    folds: int = 10
    trials: int = 20
    seed: int = 0
    stratified: bool = True

    def __post_init__(self):
        if self.folds < 2:
            raise ValueError("folds must be at least 2")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")


def kfold_split(data: LabeledDataset, plan: CvPlan
                ) -> list[list[tuple[np.ndarray, np.ndarray]]]:
    """Per trial, a list of (train_indices, test_indices) partitions.

    Trial t shuffles with seed + t. Stratified mode permutes each class
    separately and deals its samples round-robin across folds, so fold
    class counts differ by at most one.
    """
    if data.n_samples < plan.folds:
        raise ValueError(f"{data.n_samples} samples cannot fill "
                         f"{plan.folds} folds")
    if plan.stratified:
        for label in range(data.n_classes):
            count = data.class_indices(label).size
            if count < plan.folds:
                raise InfeasibleStratification(
                    f"class {label} has {count} samples, fewer than "
                    f"{plan.folds} folds")
    everything = np.arange(data.n_samples)
    trials = []
    for trial in range(plan.trials):
        rng = np.random.default_rng(plan.seed + trial)
        test_folds: list[list[np.ndarray]] = [[] for _ in range(plan.folds)]
        if plan.stratified:
            for label in range(data.n_classes):
                perm = rng.permutation(data.class_indices(label))
                for f, part in enumerate(np.array_split(perm, plan.folds)):
                    test_folds[f].append(part)
        else:
            perm = rng.permutation(everything)
            for f, part in enumerate(np.array_split(perm, plan.folds)):
                test_folds[f].append(part)
        splits = []
        for parts in test_folds:
            test = np.sort(np.concatenate(parts))
            mask = np.ones(data.n_samples, dtype=bool)
            mask[test] = False
            splits.append((everything[mask], test))
        trials.append(splits)
    return trials


def accuracy_score(predicted, actual) -> float:
    predicted = np.asarray(predicted)
    actual = np.asarray(actual)
    if predicted.shape != actual.shape:
        raise ValueError("prediction/label length mismatch")
    return float(np.mean(predicted == actual))


# ---------------------------------------------------------------------------
# Benchmark harness

@dataclass(frozen=True)
class FoldRecord:
    """One method x trial x fold cell. failure holds the error text when
    the trainer raised; the metric fields are NaN in that case."""

    trial: int
    fold: int
    bayes_error: float
    accuracy: float
    train_time: float
    failure: str | None = None


@dataclass(frozen=True)
class EvalMetrics:
    """Aggregate row for one method: means and standard deviations over
    all successful cells, plus the per-fold records behind them."""

    method: str
    mean_bayes_error: float
    bayes_error_std: float
    accuracy: float
    accuracy_std: float
    training_time: float
    per_fold: tuple[FoldRecord, ...]
    failures: int = 0


@dataclass(frozen=True)
class BenchmarkReport:
    methods: tuple[EvalMetrics, ...]
    plan: CvPlan

    def to_text(self) -> str:
        lines = [f"folds={self.plan.folds} trials={self.plan.trials} "
                 f"seed={self.plan.seed}; Bayes error is the mean over "
                 "pairwise rules, computed on the training fold"]
        header = f"{'method':<10} {'bayes_error':<19} {'accuracy':<19} " \
                 f"{'train_time':<12}"
        lines.append(header)
        for m in self.methods:
            row = (f"{m.method:<10} "
                   f"{m.mean_bayes_error:.4f} ± {m.bayes_error_std:.4f}"
                   f"    {m.accuracy:.4f} ± {m.accuracy_std:.4f}    "
                   f"{m.training_time:.4f} s")
            if m.failures:
                row += f"  [{m.failures} failed cells]"
            lines.append(row)
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        lines = [CSV_HEADER]
        for m in self.methods:
            lines.append(",".join([m.method] + [
                f"{v:.17g}" for v in (m.mean_bayes_error, m.bayes_error_std,
                                      m.accuracy, m.accuracy_std,
                                      m.training_time)]))
        return "\n".join(lines) + "\n"


def _standardizer(train: LabeledDataset):
    mean = train.features.mean(axis=0)
    std = train.features.std(axis=0)
    std = np.where(std > 0, std, 1.0)
    return lambda x: (x - mean) / std


def _run_cell(data: LabeledDataset, trainer: BinaryTrainer,
              train_idx: np.ndarray, test_idx: np.ndarray,
              trial: int, fold: int, standardize: bool) -> FoldRecord:
    train = data.subset(train_idx)
    test_features = data.features[test_idx]
    if standardize:
        transform = _standardizer(train)
        train = LabeledDataset(transform(train.features), train.labels,
                               train.class_names)
        test_features = transform(test_features)
    try:
        start = time.perf_counter()
        model = train_ovo(train, trainer)
        elapsed = time.perf_counter() - start
        predicted = predict_ovo_batch(model, test_features)
        acc = accuracy_score(predicted, data.labels[test_idx])
        return FoldRecord(trial, fold, model.mean_p_e, acc, elapsed)
    except (HetldaError, ArithmeticError, ValueError,
            np.linalg.LinAlgError) as exc:
        return FoldRecord(trial, fold, math.nan, math.nan, math.nan,
                          failure=f"{type(exc).__name__}: {exc}")


def default_workers() -> int:
    env = os.environ.get("HETLDA_THREADS")
    if env:
        workers = int(env)
        if workers < 1:
            raise ValueError("HETLDA_THREADS must be a positive integer")
        return workers
    return os.cpu_count() or 1


def run_benchmark(data: LabeledDataset,
                  methods: list[tuple[str, BinaryTrainer]],
                  plan: CvPlan | None = None,
                  max_workers: int | None = None,
                  standardize: bool = False) -> BenchmarkReport:
    """Repeated k-fold comparison of named binary trainers.

    Every method x trial x fold cell trains on the train split (one-vs-
    one when K > 2), records the model error on the training fold and
    the accuracy on the test fold, and times the training call. Cells
    run on a thread pool; a cell whose trainer raises is recorded as a
    failure and excluded from the aggregates. Standardization, when
    enabled, fits the scaling on each training fold only.
    """
    if not methods:
        raise ValueError("need at least one method")
    plan = plan or CvPlan()
    splits = kfold_split(data, plan)
    jobs = [(name, trainer, trial, fold, train_idx, test_idx)
            for name, trainer in methods
            for trial in range(plan.trials)
            for fold, (train_idx, test_idx) in enumerate(splits[trial])]
    workers = max_workers if max_workers is not None else default_workers()
    with ThreadPoolExecutor(max_workers=workers) as pool:
        records = list(pool.map(
            lambda job: _run_cell(data, job[1], job[4], job[5], job[2],
                                  job[3], standardize), jobs))

    rows = []
    per_method = len(records) // len(methods)
    for m, (name, _trainer) in enumerate(methods):
        cells = records[m * per_method:(m + 1) * per_method]
        ok = [c for c in cells if c.failure is None]
        if ok:
            bayes = np.array([c.bayes_error for c in ok])
            acc = np.array([c.accuracy for c in ok])
            times = np.array([c.train_time for c in ok])
            row = EvalMetrics(name, float(bayes.mean()), float(bayes.std()),
                              float(acc.mean()), float(acc.std()),
                              float(times.mean()), tuple(cells),
                              len(cells) - len(ok))
        else:
            row = EvalMetrics(name, math.nan, math.nan, math.nan, math.nan,
                              math.nan, tuple(cells), len(cells))
        rows.append(row)
    return BenchmarkReport(tuple(rows), plan)
