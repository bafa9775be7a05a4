"""Two-class meta-Gaussian data generation and the Bayes oracle.

A scenario draws labels Bernoulli(prior1), latent scores
``S | Y=r ~ N_p(0, cov_r)`` with unit-diagonal positive definite
``cov_r``, and observed features ``X_j = m_j(S_j)`` for strictly
increasing per-feature maps ``m_j``. Because the maps are shared by both
classes, the optimal decision rule depends on the latent scores and the
two correlation matrices only; :func:`bayes_oracle_classify` evaluates it
with the true parameters and :func:`monte_carlo_bayes_risk` estimates the
corresponding minimal error rate.
"""

from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np

from . import qda


def piecewise_linear_map(breakpoints) -> Callable[[np.ndarray], np.ndarray]:
    """Strictly increasing piecewise-linear map through user breakpoints.

    ``breakpoints`` is a sequence of (input, output) knots with strictly
    increasing coordinates on both axes; the map interpolates linearly
    between knots and extrapolates with the end-segment slopes.
    """
    pts = np.asarray(breakpoints, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 2:
        raise ValueError("breakpoints must be a sequence of at least two (x, y) pairs")
    xs, ys = pts[:, 0], pts[:, 1]
    if not (np.all(np.diff(xs) > 0) and np.all(np.diff(ys) > 0)):
        raise ValueError("breakpoints must be strictly increasing in both coordinates")
    slope_lo = (ys[1] - ys[0]) / (xs[1] - xs[0])
    slope_hi = (ys[-1] - ys[-2]) / (xs[-1] - xs[-2])

    def apply(s):
        s = np.asarray(s, dtype=float)
        out = np.interp(s, xs, ys)
        out = np.where(s < xs[0], ys[0] + slope_lo * (s - xs[0]), out)
        out = np.where(s > xs[-1], ys[-1] + slope_hi * (s - xs[-1]), out)
        return out

    return apply


MARGINAL_MAPS: dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "identity": lambda s: np.asarray(s, dtype=float),
    "exp": np.exp,
    "cube": lambda s: np.asarray(s, dtype=float) ** 3,
}


def _resolve_maps(spec, p: int) -> list[Callable[[np.ndarray], np.ndarray]]:
    if isinstance(spec, str) or callable(spec):
        spec = [spec] * p
    maps = list(spec)
    if len(maps) != p:
        raise ValueError(f"expected {p} per-feature marginal maps, got {len(maps)}")
    resolved = []
    for m in maps:
        if isinstance(m, str):
            if m not in MARGINAL_MAPS:
                raise ValueError(
                    f"unknown marginal map {m!r}; choose from {sorted(MARGINAL_MAPS)} "
                    "or pass a callable"
                )
            resolved.append(MARGINAL_MAPS[m])
        elif callable(m):
            resolved.append(m)
        else:
            raise ValueError(f"marginal map must be a name or callable, got {m!r}")
    return resolved


def _check_correlation_matrix(C, p: int, name: str) -> np.ndarray:
    C = np.asarray(C, dtype=float)
    if C.shape != (p, p):
        raise ValueError(f"{name} must have shape ({p}, {p}), got {C.shape}")
    if not np.allclose(np.diag(C), 1.0, rtol=0.0, atol=1e-12):
        raise ValueError(f"{name} must have unit diagonal")
    if not np.array_equal(C, C.T):
        raise ValueError(f"{name} must be symmetric")
    try:
        np.linalg.cholesky(C)
    except np.linalg.LinAlgError:
        raise ValueError(f"{name} must be positive definite") from None
    return C


@dataclass(frozen=True)
class ScenarioSpec:
    """Generative parameters of one synthetic two-class scenario.

    ``marginal_maps`` is a single map (name or callable) applied to every
    feature, or a length-p sequence of per-feature maps. ``prior1`` may
    sit on the boundary for sampling-only use; the Bayes oracle and the
    classification pipeline require an interior prior.
    """

    p: int
    prior1: float
    cov0: np.ndarray
    cov1: np.ndarray
    marginal_maps: str | Callable | Sequence = "identity"
    seed: int = 0

    def __post_init__(self):
        if self.p < 1:
            raise ValueError(f"p must be >= 1, got {self.p}")
        if not 0.0 <= self.prior1 <= 1.0:
            raise ValueError(f"prior1 must lie in [0, 1], got {self.prior1}")
        object.__setattr__(self, "cov0", _check_correlation_matrix(self.cov0, self.p, "cov0"))
        object.__setattr__(self, "cov1", _check_correlation_matrix(self.cov1, self.p, "cov1"))
        _resolve_maps(self.marginal_maps, self.p)  # validate early


@dataclass(frozen=True)
class Dataset:
    """Sampled features with labels; latent scores kept for introspection."""

    features: np.ndarray
    labels: np.ndarray
    latent: np.ndarray

    @property
    def n(self) -> int:
        return self.features.shape[0]

    @property
    def p(self) -> int:
        return self.features.shape[1]


class BayesRiskEstimate(NamedTuple):
    risk: float
    std_error: float
    n_samples: int


def block_correlation_matrix(p: int, block_size: int, rho: float) -> np.ndarray:
    """Identity with an equicorrelated leading block of the given size.

    Positive definite for ``-1/(block_size-1) < rho < 1``.
    """
    if not 0 <= block_size <= p:
        raise ValueError(f"block size must lie in [0, {p}], got {block_size}")
    C = np.eye(p)
    C[:block_size, :block_size] = rho
    np.fill_diagonal(C, 1.0)
    return _check_correlation_matrix(C, p, "block correlation matrix")


def random_correlation_matrix(p: int, rng: np.random.Generator) -> np.ndarray:
    """Random unit-diagonal positive definite matrix.

    Normalizes the Gram matrix of p Gaussian vectors of dimension p+2,
    which is almost surely positive definite; the measure-zero failure is
    guarded by a re-draw.
    """
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    while True:
        G = rng.standard_normal((p, p + 2))
        M = G @ G.T
        scale = np.sqrt(np.diag(M))
        C = M / np.outer(scale, scale)
        C = (C + C.T) / 2.0
        np.fill_diagonal(C, 1.0)
        try:
            np.linalg.cholesky(C)
        except np.linalg.LinAlgError:
            continue
        return C


def _sample_latent(
    n: int, spec: ScenarioSpec, rng: np.random.Generator, fixed_counts: bool = False
) -> tuple[np.ndarray, np.ndarray]:
    """Labels and latent Gaussian scores, before any marginal map."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if fixed_counts:
        n1 = int(round(spec.prior1 * n))
        labels = np.zeros(n, dtype=int)
        labels[:n1] = 1
        rng.shuffle(labels)
    else:
        labels = (rng.random(n) < spec.prior1).astype(int)

    normals = rng.standard_normal((n, spec.p))
    L0 = np.linalg.cholesky(spec.cov0)
    L1 = np.linalg.cholesky(spec.cov1)
    latent = normals @ L0.T
    ones = labels == 1
    latent[ones] = normals[ones] @ L1.T
    return labels, latent


def sample_meta_gaussian(
    n: int, spec: ScenarioSpec, rng: np.random.Generator, fixed_counts: bool = False
) -> Dataset:
    """Draw a dataset from the scenario.

    Labels are Bernoulli(prior1) by default; ``fixed_counts=True``
    instead fixes the class-1 count at ``round(prior1 * n)`` (useful for
    variance reduction in tests). Features are the latent scores pushed
    through the per-feature marginal maps.
    """
    labels, latent = _sample_latent(n, spec, rng, fixed_counts)
    maps = _resolve_maps(spec.marginal_maps, spec.p)
    features = np.empty_like(latent)
    for j, m in enumerate(maps):
        features[:, j] = m(latent[:, j])
    return Dataset(features=features, labels=labels, latent=latent)


def oracle_model(spec: ScenarioSpec) -> qda.RqdaModel:
    """Discriminant model with the true generative parameters (no ridge)."""
    if not 0.0 < spec.prior1 < 1.0:
        raise ValueError(
            f"Bayes oracle needs prior1 strictly inside (0, 1), got {spec.prior1}"
        )
    return qda.model_from_parameters(spec.prior1, spec.cov0, spec.cov1)


def bayes_oracle_classify(s, spec: ScenarioSpec):
    """Optimal decision for latent scores under the true parameters.

    Accepts a single p-vector or an (m, p) matrix; class 1 iff the true
    discriminant is >= 0.
    """
    return qda.rqda_classify(s, oracle_model(spec))


def monte_carlo_bayes_risk(
    spec: ScenarioSpec, n_samples: int, rng: np.random.Generator
) -> BayesRiskEstimate:
    """Misclassification rate of the Bayes oracle on fresh draws.

    The oracle consumes latent scores directly, so the estimate is
    invariant to the scenario's marginal maps by construction. Returns
    the rate with its binomial standard error sqrt(r(1-r)/N).
    """
    if n_samples < 1:
        raise ValueError(f"n_samples must be >= 1, got {n_samples}")
    model = oracle_model(spec)
    labels, latent = _sample_latent(n_samples, spec, rng)
    preds = qda.rqda_classify(latent, model)
    risk = float(np.mean(preds != labels))
    std_error = float(np.sqrt(risk * (1.0 - risk) / n_samples))
    return BayesRiskEstimate(risk=risk, std_error=std_error, n_samples=n_samples)
