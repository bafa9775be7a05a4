"""Random-projection ensemble around the single-projection classifier.

Training runs ``b1`` blocks; each block draws ``b2`` candidate
projections from its own substream, fits a quadratic discriminant per
candidate, and keeps the candidate with the lowest training error (ties
go to the lowest candidate index). Prediction averages the selected
blocks' hard votes into a fraction ``nu`` and thresholds it at ``alpha``
(``nu >= alpha`` means class 1). The whole pipeline is a pure function
of (data, config): substreams are keyed by (seed, block, candidate), so
the fit is reproducible regardless of execution order and could be
parallelized across the block/candidate grid without changing results.
"""

from dataclasses import dataclass

import numpy as np

from . import marginals, projections, qda
from .errors import SingularMatrixError, TrainingError
from .rng import substream


@dataclass(frozen=True)
class EnsembleConfig:
    """Free parameters of the ensemble.

    ``ridge=None`` lets each fit pick its automatic ridge;
    ``alpha=None`` selects the vote threshold on the training sample.
    """

    d: int
    b1: int
    b2: int
    flavor: str = "haar"
    ridge: float | None = None
    alpha: float | None = None
    seed: int = 0

    def __post_init__(self):
        if self.d < 1:
            raise ValueError(f"d must be >= 1, got {self.d}")
        if self.b1 < 1 or self.b2 < 1:
            raise ValueError(f"b1 and b2 must be >= 1, got b1={self.b1}, b2={self.b2}")
        if self.flavor not in projections.FLAVORS:
            raise ValueError(
                f"unknown projection flavor {self.flavor!r}; choose from {projections.FLAVORS}"
            )
        if self.ridge is not None and self.ridge < 0:
            raise ValueError(f"ridge must be >= 0, got {self.ridge}")
        if self.alpha is not None and not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")


@dataclass(frozen=True)
class Block:
    """One selected (projection, discriminant) pair and its training error."""

    projection: projections.Projection
    model: qda.RqdaModel
    train_error: float
    candidate: int


@dataclass(frozen=True)
class EnsembleModel:
    marginal_model: marginals.MarginalModel
    blocks: list[Block]
    alpha: float
    config: EnsembleConfig

    @property
    def n_features(self) -> int:
        return self.marginal_model.n_features

    @property
    def b1(self) -> int:
        return len(self.blocks)


def training_error(model: qda.RqdaModel, Z, labels) -> float:
    """Fraction of rows the fitted discriminant misclassifies."""
    labels = np.asarray(labels)
    preds = qda.rqda_classify(Z, model)
    return float(np.mean(preds != labels))


def select_alpha(votes, labels, b1: int) -> float:
    """Vote threshold minimizing the empirical error of ``vote >= alpha``.

    Candidates are 0 plus the midpoints ``(k + 1/2) / b1`` for
    k = 0..b1, i.e. one threshold between every pair of achievable vote
    levels plus the two constant classifiers; midpoints keep the decision
    stable under float noise in the votes. Ties pick the smallest alpha.
    """
    votes = np.asarray(votes, dtype=float)
    labels = qda._check_labels(labels)
    if votes.shape != labels.shape:
        raise ValueError(
            f"votes and labels disagree: {votes.shape} vs {labels.shape}"
        )
    if votes.size and (votes.min() < 0.0 or votes.max() > 1.0):
        raise ValueError("votes must lie in [0, 1]")
    if b1 < 1:
        raise ValueError(f"b1 must be >= 1, got {b1}")

    best_alpha, best_err = None, None
    for k in range(-1, b1 + 1):
        alpha = 0.0 if k < 0 else (k + 0.5) / b1
        err = float(np.mean((votes >= alpha).astype(int) != labels))
        if best_err is None or err < best_err:
            best_alpha, best_err = alpha, err
    return best_alpha


def train_ensemble(X, labels, config: EnsembleConfig) -> EnsembleModel:
    """Fit the full pipeline: marginals once, then b1 selected blocks.

    Each of the b1 x b2 candidates draws its projection from the
    substream keyed by (seed, block, candidate) and is fitted on the
    projected training scores; a candidate whose covariance is singular
    at the configured ridge is discarded. A block where every candidate
    fails aborts training (a silently smaller ensemble would corrupt the
    vote fractions).
    """
    labels = qda._check_labels(labels)
    if labels.size < 2:
        raise ValueError(f"need at least 2 samples, got {labels.size}")
    qda.estimate_priors(labels)  # fail fast on single-class data

    marginal_model, scores = marginals.fit_transform(X)
    p = marginal_model.n_features
    if config.d > p:
        raise ValueError(f"projection needs d <= p, got d={config.d}, p={p}")

    blocks: list[Block] = []
    block_scores: list[np.ndarray] = []
    for b in range(config.b1):
        best: Block | None = None
        best_z: np.ndarray | None = None
        for c in range(config.b2):
            rng = substream(config.seed, b, c)
            proj = projections.sample_projection(
                p, config.d, config.flavor, rng, stream=(b, c)
            )
            Z = projections.project(proj, scores)
            try:
                model = qda.fit_rqda(Z, labels, config.ridge)
            except SingularMatrixError:
                continue
            err = training_error(model, Z, labels)
            if best is None or err < best.train_error:
                best = Block(projection=proj, model=model, train_error=err, candidate=c)
                best_z = Z
        if best is None:
            raise TrainingError(
                f"block {b}: all {config.b2} candidate projections failed to fit "
                "(singular covariances); increase the ridge"
            )
        blocks.append(best)
        block_scores.append(best_z)

    if config.alpha is not None:
        alpha = float(config.alpha)
    else:
        counts = np.zeros(labels.size, dtype=int)
        for block, Z in zip(blocks, block_scores):
            counts += qda.rqda_classify(Z, block.model)
        alpha = select_alpha(counts / config.b1, labels, config.b1)

    return EnsembleModel(
        marginal_model=marginal_model, blocks=blocks, alpha=alpha, config=config
    )


def vote_fractions(model: EnsembleModel, X) -> np.ndarray:
    """Fraction of blocks voting class 1 for each row of X.

    Every value is an exact integer multiple of 1/b1.
    """
    scores = marginals.transform_new(model.marginal_model, np.atleast_2d(np.asarray(X, dtype=float)))
    counts = np.zeros(scores.shape[0], dtype=int)
    for block in model.blocks:
        Z = projections.project(block.projection, scores)
        counts += qda.rqda_classify(Z, block.model)
    return counts / model.b1


def vote_fraction(model: EnsembleModel, x) -> float:
    """Vote fraction for a single p-vector."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise ValueError(f"expected a 1-d feature vector, got shape {x.shape}")
    return float(vote_fractions(model, x[None, :])[0])


def predict(model: EnsembleModel, X) -> tuple[np.ndarray, np.ndarray]:
    """Hard labels and vote fractions for each row of X.

    A row is class 1 iff its vote fraction is >= alpha (ties included).
    """
    votes = vote_fractions(model, X)
    return (votes >= model.alpha).astype(int), votes


def classify(model: EnsembleModel, x) -> int:
    """Ensemble decision for a single p-vector."""
    return int(vote_fraction(model, x) >= model.alpha)
