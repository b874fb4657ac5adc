"""Command-line front end.

Subcommands: generate (synthetic datasets to CSV), train (fit and save a
model), predict (apply a saved model), benchmark (repeated k-fold
comparison). Exit codes: 0 success, 1 runtime or data error, 2 usage
error.
"""
from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from .baselines import SweepConfig
from .data import (CvPlan, generate_d1, generate_d2, load_csv,
                   load_matrix_csv, run_benchmark, save_csv)
from .errors import HetldaError
from .gld import GldConfig
from .lns import LnsConfig
from .methods import METHOD_NAMES, make_trainer
from .model_io import dataset_hash, load_model, save_model
from .multiclass import predict_ovo_batch, train_ovo

__all__ = ["main"]

_GENERATORS = {"d1": generate_d1, "d2": generate_d2}


def _add_trainer_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("trainer options")
    group.add_argument("--max-iters", type=int, default=20,
                       help="fixed-point iteration cap (default 20)")
    group.add_argument("--grad-tol", type=float, default=1e-6,
                       help="gradient-norm stopping tolerance (default 1e-6)")
    group.add_argument("--step", type=float, default=0.001,
                       help="grid spacing for chld (default 0.001)")
    group.add_argument("--s-min", type=float, default=-2.0,
                       help="random-draw range lower end (default -2)")
    group.add_argument("--s-max", type=float, default=3.0,
                       help="random-draw range upper end (default 3)")
    group.add_argument("--lns-iters", type=int, default=1000,
                       help="perturbation sweeps for gld-lns (default 1000)")
    group.add_argument("--lns-early-stop", type=int, default=100,
                       help="sweeps without improvement before stopping "
                            "(default 100)")
    group.add_argument("--perturb-fraction", type=float, default=0.1,
                       help="relative perturbation size (default 0.1)")


def _trainer_configs(args) -> tuple[GldConfig, SweepConfig, LnsConfig]:
    gld = GldConfig(max_iters=args.max_iters, grad_tol=args.grad_tol)
    sweep = SweepConfig(step=args.step, trials=args.search_trials,
                        s_range=(args.s_min, args.s_max), seed=args.seed)
    lns = LnsConfig(max_iters=args.lns_iters,
                    early_stop=args.lns_early_stop,
                    perturb_fraction=args.perturb_fraction, seed=args.seed)
    return gld, sweep, lns


def _method_list(text: str) -> list[str]:
    names = [part.strip() for part in text.split(",") if part.strip()]
    if not names:
        raise argparse.ArgumentTypeError("no methods given")
    for name in names:
        if name not in METHOD_NAMES:
            raise argparse.ArgumentTypeError(
                f"unknown method {name!r}; choose from "
                f"{', '.join(METHOD_NAMES)}")
    return names


def cmd_generate(args) -> int:
    data = _GENERATORS[args.dataset](args.seed)
    save_csv(data, args.out)
    counts = [int(data.class_indices(k).size) for k in range(data.n_classes)]
    print(f"wrote {args.out}: n={data.n_samples} d={data.n_features} "
          f"class counts={counts}")
    return 0


def cmd_train(args) -> int:
    data = load_csv(args.data, has_header=args.header,
                    label_column=args.label_col)
    gld, sweep, lns = _trainer_configs(args)
    trainer = make_trainer(args.method, gld_config=gld, sweep_config=sweep,
                           lns_config=lns)
    start = time.perf_counter()
    model = train_ovo(data, trainer)
    elapsed = time.perf_counter() - start
    metadata = {
        "dataset_sha256": dataset_hash(data),
        "source": args.data,
        "seed": args.seed,
        "config": {
            "max_iters": args.max_iters, "grad_tol": args.grad_tol,
            "step": args.step, "trials": args.search_trials,
            "s_range": [args.s_min, args.s_max],
            "lns_iters": args.lns_iters,
            "lns_early_stop": args.lns_early_stop,
            "perturb_fraction": args.perturb_fraction,
        },
    }
    save_model(args.out, model, args.method, metadata)
    for a, b, _disc, p_e in model.pairs:
        print(f"pair ({a}, {b}): p_e={p_e:.6f}")
    print(f"trained {args.method} in {elapsed:.3f} s; model written to "
          f"{args.out}")
    return 0


def cmd_predict(args) -> int:
    model, _method, _metadata = load_model(args.model)
    labels = None
    if args.label_col is not None:
        data = load_csv(args.data, has_header=args.header,
                        label_column=args.label_col)
        features = data.features
        labels = data.labels
        label_names = data.class_names
    else:
        features = load_matrix_csv(args.data, has_header=args.header)
    predicted = predict_ovo_batch(model, features)
    names = model.class_names
    with open(args.out, "w") as handle:
        for label in predicted:
            handle.write((names[label] if names else str(int(label))) + "\n")
    print(f"wrote {predicted.shape[0]} predictions to {args.out}")
    if labels is not None:
        if names and label_names:
            matches = [names[p] == label_names[a]
                       for p, a in zip(predicted, labels)]
            acc = float(np.mean(matches))
        else:
            acc = float(np.mean(predicted == labels))
        print(f"accuracy: {acc:.4f}")
    return 0


def cmd_benchmark(args) -> int:
    if args.data in _GENERATORS:
        data = _GENERATORS[args.data](args.seed)
    else:
        data = load_csv(args.data, has_header=args.header,
                        label_column=args.label_col)
    gld, sweep, lns = _trainer_configs(args)
    methods = [(name, make_trainer(name, gld_config=gld, sweep_config=sweep,
                                   lns_config=lns))
               for name in args.methods]
    plan = CvPlan(folds=args.folds, trials=args.cv_trials, seed=args.seed)
    report = run_benchmark(data, methods, plan,
                           standardize=args.standardize)
    text = report.to_csv() if args.format == "csv" else report.to_text()
    if args.out:
        with open(args.out, "w") as handle:
            handle.write(text)
        print(f"report written to {args.out}")
    else:
        print(text, end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hetlda",
        description="Minimum-error linear discriminants for heteroscedastic "
                    "Gaussian class models")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a synthetic dataset to CSV")
    gen.add_argument("dataset", choices=sorted(_GENERATORS))
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True, help="output CSV path")
    gen.set_defaults(func=cmd_generate)

    train = sub.add_parser("train", help="fit a model and save it")
    train.add_argument("method", choices=METHOD_NAMES)
    train.add_argument("data", help="CSV file with a label column")
    train.add_argument("--label-col", type=int, required=True,
                       help="0-based label column index (negative counts "
                            "from the end)")
    train.add_argument("--header", action="store_true",
                       help="skip the first row")
    train.add_argument("--out", required=True, help="model file path")
    train.add_argument("--trials", dest="search_trials", type=int,
                       default=1000,
                       help="random draws for rhld1/rhld2 (default 1000)")
    train.add_argument("--seed", type=int, default=0,
                       help="seed for the random-search trainers (default 0)")
    _add_trainer_flags(train)
    train.set_defaults(func=cmd_train)

    predict = sub.add_parser("predict", help="apply a saved model")
    predict.add_argument("model", help="model file from train")
    predict.add_argument("data", help="CSV file of feature rows")
    predict.add_argument("--label-col", type=int, default=None,
                         help="label column present in the data; enables "
                              "the accuracy line")
    predict.add_argument("--header", action="store_true",
                         help="skip the first row")
    predict.add_argument("--out", required=True, help="predictions path")
    predict.set_defaults(func=cmd_predict)

    bench = sub.add_parser("benchmark",
                           help="repeated k-fold method comparison")
    bench.add_argument("data", help="d1, d2, or a CSV path")
    bench.add_argument("--methods", type=_method_list, required=True,
                       help="comma-separated subset of "
                            f"{','.join(METHOD_NAMES)}")
    bench.add_argument("--folds", type=int, default=10)
    bench.add_argument("--trials", dest="cv_trials", type=int, default=20,
                       help="number of cross-validation repetitions "
                            "(default 20)")
    bench.add_argument("--label-col", type=int, default=-1,
                       help="label column for CSV input (default: last)")
    bench.add_argument("--header", action="store_true",
                       help="skip the first row of CSV input")
    bench.add_argument("--search-trials", type=int, default=1000,
                       help="random draws for rhld1/rhld2 (default 1000)")
    bench.add_argument("--seed", type=int, default=0,
                       help="seeds generation, fold shuffling, and the "
                            "random-search trainers")
    bench.add_argument("--standardize", action="store_true",
                       help="z-score features using training-fold statistics")
    bench.add_argument("--format", choices=["text", "csv"], default="text")
    bench.add_argument("--out", default=None, help="write the report here "
                       "instead of stdout")
    _add_trainer_flags(bench)
    bench.set_defaults(func=cmd_benchmark)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (HetldaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
