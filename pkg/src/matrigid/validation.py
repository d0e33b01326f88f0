"""Input checks shared by the estimator facade."""

import numpy as np
from sklearn.utils.validation import check_array

from .rigidity import Framework


def check_framework(fw):
    if not isinstance(fw, Framework):
        raise TypeError(f"expected a Framework, got {type(fw).__name__}")
    return fw


def check_frameworks(X):
    if isinstance(X, Framework):
        return [X]
    items = list(X)
    if not items:
        raise ValueError("no frameworks given")
    return [check_framework(fw) for fw in items]


def check_velocities(Z, n_features):
    """2-d float array of stacked vertex velocities, one row per sample."""
    Z = check_array(Z, dtype=np.float64, ensure_2d=False)
    if Z.ndim == 1:
        Z = Z.reshape(1, -1)
    if Z.shape[1] != n_features:
        raise ValueError(f"expected {n_features} velocity coordinates per sample, got {Z.shape[1]}")
    return Z
