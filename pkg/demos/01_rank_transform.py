"""Probit scores from ranks, and why monotone feature maps don't matter.

Each feature column is replaced by inv_norm_cdf(count / (n + 1)), where
count is the number of training values <= the entry. The scores depend
on the data only through ranks, so distorting a feature with any
strictly increasing map leaves them bit-identical.
"""

import numpy as np

import rankqda as rq

rng = np.random.default_rng(7)
X = rng.standard_normal((8, 2))

model, scores = rq.fit_transform(X)
print("raw feature column 0:      ", np.round(X[:, 0], 3))
print("probit scores column 0:    ", np.round(scores[:, 0], 3))
print()

# distort both columns with different increasing maps
X_warped = np.column_stack([np.exp(X[:, 0]), X[:, 1] ** 3])
_, scores_warped = rq.fit_transform(X_warped)
print("warped with exp / cube -> scores identical:",
      np.array_equal(scores, scores_warped))
print()

# out-of-sample points use the stored sorted columns; a point below the
# training minimum gets the lowest achievable score, never -inf
x_new = np.array([-50.0, 0.1])
print("new point scores:          ", np.round(rq.transform_new(model, x_new), 3))
print("lowest achievable score:   ", round(rq.inv_norm_cdf(1 / 9), 3))
print()

# the scores are marginally close to N(0, 1) no matter the input law
heavy = rng.standard_cauchy((5000, 1))
_, heavy_scores = rq.fit_transform(heavy)
print("cauchy input -> score mean %.4f, variance %.4f"
      % (heavy_scores.mean(), heavy_scores.var()))
