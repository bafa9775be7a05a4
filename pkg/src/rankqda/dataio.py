"""CSV reading and writing for the batch pipeline.

Data files carry a header row; every column except the named label
column is a numeric feature. UTF-8, '.' decimal, no missing values (an
empty field is a hard error, never imputed).
"""

import csv

import numpy as np

from .errors import DataError


def read_data_csv(path, label_col: str | None = None):
    """Read a data CSV.

    Returns ``(X, y, feature_names)``; ``y`` is None when ``label_col``
    is None. Labels must be 0/1.
    """
    with open(path, "r", newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header is None:
            raise DataError(f"empty data file: {path}")
        header = [h.strip() for h in header]
        rows = list(reader)

    if not rows:
        raise DataError(f"no data rows in {path}")

    label_idx = None
    if label_col is not None:
        if label_col not in header:
            raise ValueError(f"label column {label_col!r} not found in {path}")
        label_idx = header.index(label_col)

    feature_names = [h for i, h in enumerate(header) if i != label_idx]
    n, p = len(rows), len(feature_names)
    X = np.empty((n, p), dtype=float)
    y = np.empty(n, dtype=int) if label_idx is not None else None

    for i, row in enumerate(rows):
        if len(row) != len(header):
            raise DataError(
                f"row {i} of {path} has {len(row)} fields, expected {len(header)}"
            )
        k = 0
        for j, cell in enumerate(row):
            cell = cell.strip()
            if cell == "":
                raise DataError(f"missing value at row {i}, column {header[j]!r}")
            try:
                value = float(cell)
            except ValueError:
                raise DataError(
                    f"non-numeric value {cell!r} at row {i}, column {header[j]!r}"
                ) from None
            if j == label_idx:
                if value not in (0.0, 1.0):
                    raise ValueError(
                        f"labels must be 0/1; row {i} has {header[j]!r}={cell}"
                    )
                y[i] = int(value)
            else:
                X[i, k] = value
                k += 1

    return X, y, feature_names


def write_data_csv(path, X, labels, latent=None, label_col: str = "label") -> None:
    """Write features plus a label column; latent columns are optional."""
    X = np.asarray(X)
    header = [f"x{j}" for j in range(X.shape[1])] + [label_col]
    if latent is not None:
        header += [f"s{j}" for j in range(X.shape[1])]
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(header)
        for i in range(X.shape[0]):
            row = [repr(v) for v in X[i].tolist()] + [int(labels[i])]
            if latent is not None:
                row += [repr(v) for v in latent[i].tolist()]
            writer.writerow(row)


def write_predictions_csv(path, preds, votes) -> None:
    """Write one (pred, vote) row per input row."""
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(["pred", "vote"])
        for pred, vote in zip(preds, votes):
            writer.writerow([int(pred), repr(float(vote))])
