"""Batch command line: synth, train, predict, eval, bayes-risk.

Seeds are mandatory wherever randomness is involved; there is no
wall-clock fallback, so identical invocations produce identical files.
All failures exit nonzero with a single ``error: ...`` line on stderr.
"""

import argparse
import sys

import numpy as np

from . import dataio, ensemble, model_io, projections, synthdata
from .errors import DataError, SingularMatrixError, TrainingError
from .rng import substream

# Substream tags so each CLI draw has its own deterministic stream.
_STREAM_COV0 = 1
_STREAM_COV1 = 2
_STREAM_TRAIN = 3
_STREAM_TEST = 4
_STREAM_RISK = 5


def _parse_cov(value: str, p: int, seed: int, tag: int, cov0=None):
    if value == "identity":
        return np.eye(p)
    if value == "random":
        return synthdata.random_correlation_matrix(p, substream(seed, tag))
    if value == "same":
        if cov0 is None:
            raise ValueError("'same' is only valid for --cov1")
        return cov0.copy()
    if value.startswith("block:"):
        parts = value.split(":")
        if len(parts) != 3:
            raise ValueError(f"expected block:SIZE:RHO, got {value!r}")
        return synthdata.block_correlation_matrix(p, int(parts[1]), float(parts[2]))
    raise ValueError(
        f"unknown covariance spec {value!r}; use identity, random, "
        "block:SIZE:RHO, or same"
    )


def _parse_marginal(value: str):
    if value in synthdata.MARGINAL_MAPS:
        return value
    if value.startswith("pwl:"):
        pairs = []
        for chunk in value[4:].split(","):
            x, _, y = chunk.partition(":")
            if not y:
                raise ValueError(f"expected pwl:X:Y,X:Y,... got {value!r}")
            pairs.append((float(x), float(y)))
        return synthdata.piecewise_linear_map(pairs)
    raise ValueError(
        f"unknown marginal map {value!r}; use "
        f"{sorted(synthdata.MARGINAL_MAPS)} or pwl:X:Y,X:Y,..."
    )


def _scenario_from_args(args) -> synthdata.ScenarioSpec:
    if not 0.0 < args.pi1 < 1.0:
        raise ValueError(f"prior must be interior: 0 < pi1 < 1, got {args.pi1}")
    cov0 = _parse_cov(args.cov0, args.p, args.seed, _STREAM_COV0)
    cov1 = _parse_cov(args.cov1, args.p, args.seed, _STREAM_COV1, cov0=cov0)
    return synthdata.ScenarioSpec(
        p=args.p,
        prior1=args.pi1,
        cov0=cov0,
        cov1=cov1,
        marginal_maps=_parse_marginal(args.marginal),
        seed=args.seed,
    )


def _add_scenario_flags(sub):
    sub.add_argument("--p", type=int, required=True, help="feature count")
    sub.add_argument("--pi1", type=float, default=0.5, help="class-1 prior")
    sub.add_argument("--cov0", default="random",
                     help="class-0 correlation: identity|random|block:SIZE:RHO")
    sub.add_argument("--cov1", default="random",
                     help="class-1 correlation: identity|random|block:SIZE:RHO|same")
    sub.add_argument("--marginal", default="identity",
                     help="marginal map: identity|exp|cube|pwl:X:Y,X:Y,...")
    sub.add_argument("--seed", type=int, required=True)


def cmd_synth(args) -> int:
    spec = _scenario_from_args(args)
    train = synthdata.sample_meta_gaussian(
        args.n_train, spec, substream(args.seed, _STREAM_TRAIN), args.fixed_counts
    )
    test = synthdata.sample_meta_gaussian(
        args.n_test, spec, substream(args.seed, _STREAM_TEST), args.fixed_counts
    )
    for dataset, path in ((train, args.out_train), (test, args.out_test)):
        dataio.write_data_csv(
            path,
            dataset.features,
            dataset.labels,
            latent=dataset.latent if args.latent else None,
        )
        print(f"wrote {dataset.n} rows to {path}")
    if args.bayes_risk:
        est = synthdata.monte_carlo_bayes_risk(
            spec, args.bayes_n, substream(args.seed, _STREAM_RISK)
        )
        print(f"bayes_risk: {est.risk} (std_error {est.std_error}, n {est.n_samples})")
    return 0


def cmd_bayes_risk(args) -> int:
    spec = _scenario_from_args(args)
    est = synthdata.monte_carlo_bayes_risk(spec, args.n, substream(args.seed, _STREAM_RISK))
    print(f"bayes_risk: {est.risk} (std_error {est.std_error}, n {est.n_samples})")
    return 0


def _parse_auto(value: str, what: str) -> float | None:
    if value == "auto":
        return None
    try:
        return float(value)
    except ValueError:
        raise ValueError(f"--{what} must be a number or 'auto', got {value!r}") from None


def cmd_train(args) -> int:
    X, y, _ = dataio.read_data_csv(args.data, label_col=args.label_col)
    config = ensemble.EnsembleConfig(
        d=args.d,
        b1=args.b1,
        b2=args.b2,
        flavor=args.projection,
        ridge=_parse_auto(args.ridge, "ridge"),
        alpha=_parse_auto(args.alpha, "alpha"),
        seed=args.seed,
    )
    model = ensemble.train_ensemble(X, y, config)
    for b, block in enumerate(model.blocks):
        print(f"block {b}: candidate {block.candidate} train_error {block.train_error}")
    print(f"alpha: {model.alpha}")
    model_io.save_model(model, args.model_out)
    print(f"wrote model to {args.model_out}")
    return 0


def _load_features(args, model):
    label_col = getattr(args, "label_col", None)
    X, y, _ = dataio.read_data_csv(args.data, label_col=label_col)
    if X.shape[1] != model.n_features:
        raise ValueError(
            f"feature dimension mismatch: model expects p={model.n_features}, "
            f"data has {X.shape[1]} feature columns"
        )
    return X, y


def cmd_predict(args) -> int:
    model = model_io.load_model(args.model)
    X, _ = _load_features(args, model)
    preds, votes = ensemble.predict(model, X)
    dataio.write_predictions_csv(args.out, preds, votes)
    print(f"wrote {len(preds)} predictions to {args.out}")
    return 0


def cmd_eval(args) -> int:
    model = model_io.load_model(args.model)
    X, y = _load_features(args, model)
    preds, _ = ensemble.predict(model, X)
    error = float(np.mean(preds != y))
    tn = int(np.sum((y == 0) & (preds == 0)))
    fp = int(np.sum((y == 0) & (preds == 1)))
    fn = int(np.sum((y == 1) & (preds == 0)))
    tp = int(np.sum((y == 1) & (preds == 1)))
    print(f"n: {len(y)}")
    print(f"alpha: {model.alpha}")
    print(f"error: {error}")
    print(f"confusion: tn={tn} fp={fp} fn={fn} tp={tp}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rankqda",
        description="Rank-based robust QDA with random-projection ensembles.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    synth = commands.add_parser("synth", help="generate synthetic train/test CSVs")
    _add_scenario_flags(synth)
    synth.add_argument("--n-train", type=int, required=True)
    synth.add_argument("--n-test", type=int, required=True)
    synth.add_argument("--out-train", default="train.csv")
    synth.add_argument("--out-test", default="test.csv")
    synth.add_argument("--latent", action="store_true",
                       help="include latent score columns in the CSVs")
    synth.add_argument("--fixed-counts", action="store_true",
                       help="fix class counts at round(pi1*n) instead of Bernoulli draws")
    synth.add_argument("--bayes-risk", action="store_true",
                       help="also print the scenario's Monte Carlo Bayes risk")
    synth.add_argument("--bayes-n", type=int, default=200000)
    synth.set_defaults(func=cmd_synth)

    risk = commands.add_parser("bayes-risk", help="Monte Carlo Bayes risk of a scenario")
    _add_scenario_flags(risk)
    risk.add_argument("--n", type=int, default=200000)
    risk.set_defaults(func=cmd_bayes_risk)

    train = commands.add_parser("train", help="fit an ensemble on a CSV")
    train.add_argument("--data", required=True)
    train.add_argument("--label-col", default="label")
    train.add_argument("--d", type=int, required=True)
    train.add_argument("--b1", type=int, required=True)
    train.add_argument("--b2", type=int, required=True)
    train.add_argument("--projection", default="haar", choices=projections.FLAVORS)
    train.add_argument("--ridge", default="auto", help="ridge value or 'auto'")
    train.add_argument("--alpha", default="auto", help="vote threshold in [0,1] or 'auto'")
    train.add_argument("--seed", type=int, required=True)
    train.add_argument("--model-out", required=True)
    train.set_defaults(func=cmd_train)

    predict = commands.add_parser("predict", help="write pred/vote CSV for a data file")
    predict.add_argument("--model", required=True)
    predict.add_argument("--data", required=True)
    predict.add_argument("--label-col", default=None,
                         help="label column to ignore, if the file has one")
    predict.add_argument("--out", required=True)
    predict.set_defaults(func=cmd_predict)

    evaluate = commands.add_parser("eval", help="error and confusion matrix on a labeled CSV")
    evaluate.add_argument("--model", required=True)
    evaluate.add_argument("--data", required=True)
    evaluate.add_argument("--label-col", default="label")
    evaluate.set_defaults(func=cmd_eval)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, DataError, TrainingError, SingularMatrixError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
