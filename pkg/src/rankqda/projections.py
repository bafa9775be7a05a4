"""Random linear maps from score space to the projected space.

Three flavors are provided: ``gaussian`` (i.i.d. N(0, 1/d) entries),
``haar`` (orthonormalized Gaussian rows, uniformly distributed over the
Stiefel manifold), and ``axis`` (d distinct coordinates). When a
projection ``A`` is applied to scores with class covariance ``C``, the
projected covariance is ``A C A'``.
"""

from dataclasses import dataclass

import numpy as np

FLAVORS = ("gaussian", "haar", "axis")


@dataclass(frozen=True)
class Projection:
    """A (d, p) projection matrix with its flavor and stream provenance."""

    matrix: np.ndarray
    flavor: str
    stream: tuple[int, ...] | None = None

    @property
    def n_components(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_features(self) -> int:
        return self.matrix.shape[1]


def sample_projection(
    p: int,
    d: int,
    flavor: str,
    rng: np.random.Generator,
    stream: tuple[int, ...] | None = None,
) -> Projection:
    """Draw a (d, p) projection of the requested flavor.

    Deterministic given the generator state. ``haar`` rows are
    orthonormal (``A A' = I`` to machine precision), built by QR of a
    Gaussian matrix with the sign correction that makes the distribution
    uniform; the probability-zero rank-deficient draw is guarded by a
    re-draw. ``axis`` rows are distinct standard basis vectors.
    """
    if not 1 <= d <= p:
        raise ValueError(f"projection needs 1 <= d <= p, got d={d}, p={p}")
    if flavor not in FLAVORS:
        raise ValueError(f"unknown projection flavor {flavor!r}; choose from {FLAVORS}")

    if flavor == "gaussian":
        matrix = rng.standard_normal((d, p)) / np.sqrt(d)
    elif flavor == "haar":
        while True:
            G = rng.standard_normal((d, p))
            Q, R = np.linalg.qr(G.T)
            diag = np.diag(R)
            if np.all(np.abs(diag) > 1e-12):
                break
        matrix = (Q * np.sign(diag)).T
    else:
        cols = rng.choice(p, size=d, replace=False)
        matrix = np.zeros((d, p))
        matrix[np.arange(d), cols] = 1.0

    return Projection(matrix=matrix, flavor=flavor, stream=stream)


def project(A: Projection, S) -> np.ndarray:
    """Apply the projection to score rows: row i of the output is A @ S_i."""
    S = np.asarray(S, dtype=float)
    if S.shape[-1] != A.n_features:
        raise ValueError(
            f"score dimension mismatch: projection expects p={A.n_features}, "
            f"got shape {S.shape}"
        )
    return S @ A.matrix.T
