"""Column-wise z-score standardization.

Fitted on the training split only and applied frozen everywhere else, so
no test-set statistic ever leaks into the model.  Standard deviations are
population (divide by n), matching the feature moments.  Columns whose
std falls below 1e-12 are flagged constant and transform to exact zeros.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, EmptyMatrixError

CONSTANT_STD_THRESHOLD = 1e-12


@dataclass(frozen=True)
class ScalerModel:
    means: np.ndarray
    stds: np.ndarray
    constant_column_mask: np.ndarray

    @property
    def n_features(self) -> int:
        return self.means.shape[0]


def scaler_fit(X: np.ndarray) -> ScalerModel:
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] == 0:
        raise EmptyMatrixError("cannot fit a scaler on an empty matrix")
    means = X.mean(axis=0)
    stds = np.sqrt(np.mean((X - means) ** 2, axis=0))
    return ScalerModel(means=means, stds=stds, constant_column_mask=stds < CONSTANT_STD_THRESHOLD)


def scaler_transform(model: ScalerModel, X: np.ndarray) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != model.n_features:
        raise DimensionMismatchError(
            f"scaler expects {model.n_features} columns, got {X.shape[1] if X.ndim == 2 else 'non-matrix'}"
        )
    safe_stds = np.where(model.constant_column_mask, 1.0, model.stds)
    out = (X - model.means) / safe_stds
    out[:, model.constant_column_mask] = 0.0
    return out
