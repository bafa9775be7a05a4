"""Deterministic random-stream derivation.

Every stochastic routine in the package takes an explicit
``numpy.random.Generator``. Streams for subtasks (ensemble blocks,
candidate projections, train/test splits) are derived from a master seed
plus an integer key, so results do not depend on execution order or on
how many workers share the job.
"""

import numpy as np


def substream(*key: int) -> np.random.Generator:
    """Return a generator deterministically derived from an integer key.

    The first key component is conventionally the master seed; the rest
    identify the subtask, e.g. ``substream(seed, block, candidate)``.
    Identical keys always yield identical streams.
    """
    return np.random.default_rng(np.random.SeedSequence(key))
