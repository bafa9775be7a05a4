"""Versioned JSON persistence for fitted ensembles.

Matrices are stored row-major as nested lists; floats round-trip exactly
through JSON's shortest-repr serialization, and the cached inverses and
log-determinants are recomputed from the stored covariances at load
time, so a reloaded model reproduces predictions bit-identically.
"""

import json

import numpy as np

from . import ensemble, marginals, projections, qda

FORMAT_NAME = "rankqda-ensemble"
FORMAT_VERSION = 1


def _matrix(a) -> list:
    return np.asarray(a, dtype=float).tolist()


def model_to_dict(model: ensemble.EnsembleModel) -> dict:
    cfg = model.config
    return {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "config": {
            "d": cfg.d,
            "b1": cfg.b1,
            "b2": cfg.b2,
            "projection": cfg.flavor,
            "ridge": cfg.ridge,
            "alpha": cfg.alpha,
            "seed": cfg.seed,
        },
        "alpha": model.alpha,
        "n_features": model.n_features,
        "marginals": {
            "n": model.marginal_model.n_samples,
            # one sorted array per feature
            "columns": _matrix(model.marginal_model.sorted_columns.T),
        },
        "blocks": [
            {
                "flavor": block.projection.flavor,
                "stream": list(block.projection.stream)
                if block.projection.stream is not None
                else None,
                "matrix": _matrix(block.projection.matrix),
                "prior0": block.model.prior0,
                "prior1": block.model.prior1,
                "cov0": _matrix(block.model.cov0),
                "cov1": _matrix(block.model.cov1),
                "ridge": block.model.ridge,
                "train_error": block.train_error,
                "candidate": block.candidate,
            }
            for block in model.blocks
        ],
    }


def model_from_dict(doc: dict) -> ensemble.EnsembleModel:
    if doc.get("format") != FORMAT_NAME:
        raise ValueError(f"not a {FORMAT_NAME} file (format={doc.get('format')!r})")
    if doc.get("version") != FORMAT_VERSION:
        raise ValueError(
            f"unsupported model format version {doc.get('version')!r}; "
            f"this build reads version {FORMAT_VERSION}"
        )

    cfg = doc["config"]
    config = ensemble.EnsembleConfig(
        d=cfg["d"],
        b1=cfg["b1"],
        b2=cfg["b2"],
        flavor=cfg["projection"],
        ridge=cfg["ridge"],
        alpha=cfg["alpha"],
        seed=cfg["seed"],
    )

    columns = np.asarray(doc["marginals"]["columns"], dtype=float)
    marginal_model = marginals.MarginalModel(sorted_columns=columns.T)

    blocks = []
    for raw in doc["blocks"]:
        proj = projections.Projection(
            matrix=np.asarray(raw["matrix"], dtype=float),
            flavor=raw["flavor"],
            stream=tuple(raw["stream"]) if raw["stream"] is not None else None,
        )
        model = qda.model_from_parameters(
            raw["prior1"], raw["cov0"], raw["cov1"], ridge=raw["ridge"]
        )
        blocks.append(
            ensemble.Block(
                projection=proj,
                model=model,
                train_error=raw["train_error"],
                candidate=raw["candidate"],
            )
        )

    return ensemble.EnsembleModel(
        marginal_model=marginal_model,
        blocks=blocks,
        alpha=doc["alpha"],
        config=config,
    )


def save_model(model: ensemble.EnsembleModel, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(model_to_dict(model), f, indent=1)
        f.write("\n")


def load_model(path) -> ensemble.EnsembleModel:
    with open(path, "r", encoding="utf-8") as f:
        doc = json.load(f)
    return model_from_dict(doc)
