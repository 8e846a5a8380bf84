"""AdaBoost over depth-1 decision stumps.

Each round trains the stump minimizing weighted 0/1 error over every
(feature, threshold, polarity) triple, with thresholds at midpoints
between consecutive distinct sorted values plus -inf/+inf sentinels.
Ties break toward the lowest feature index, then the lowest threshold,
then polarity +1; the search enumerates candidates in exactly that order
and only replaces the incumbent on a strict improvement, so the winner
is reproducible and matches a brute-force enumeration.

Round weights follow the exponential reweighting
    D_{t+1}(i) = D_t(i) * exp(-alpha_t y_i h_t(x_i)) / Z_t
with alpha_t = ln((1 - e) / e) / 2 on the clamped round error e, so a
perfect stump still gets a finite vote.  A round at error exactly 0.5
contributes nothing (alpha would be 0) and ends training.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import (
    DimensionMismatchError,
    EmptyMatrixError,
    LengthMismatchError,
    NoProgressError,
    SingleClassError,
)


@dataclass(frozen=True)
class Stump:
    feature_index: int
    threshold: float
    polarity: int  # +1: x > threshold votes +1; -1: the reverse
    weighted_error: float

    def predict(self, X: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        if X.shape[1] <= self.feature_index:
            raise DimensionMismatchError(
                f"stump needs feature {self.feature_index}, input has {X.shape[1]} columns"
            )
        base = np.where(X[:, self.feature_index] > self.threshold, 1, -1)
        return self.polarity * base


@dataclass(frozen=True)
class BoostModel:
    stumps: tuple[Stump, ...]
    alphas: tuple[float, ...]
    rounds_requested: int
    stop_reason: str  # completed | perfect_fit | no_progress
    n_features: int

    @property
    def rounds_used(self) -> int:
        return len(self.stumps)


def _feature_candidates(xs: np.ndarray, cpos: np.ndarray, cneg: np.ndarray):
    """Thresholds (ascending) and error-of-polarity-(+1) for one sorted column."""
    w_pos, w_neg = cpos[-1], cneg[-1]
    ks = np.nonzero(xs[1:] > xs[:-1])[0]
    mids = xs[ks] / 2 + xs[ks + 1] / 2
    # keep each threshold strictly below the upper neighbor so x > t splits there
    mids = np.where(mids >= xs[ks + 1], xs[ks], mids)
    thresholds = np.concatenate(([-np.inf], mids, [np.inf]))
    err_plus = np.concatenate(([w_neg], cpos[ks] + (w_neg - cneg[ks]), [w_pos]))
    return thresholds, err_plus


def stump_train(X: np.ndarray, y: np.ndarray, weights: np.ndarray) -> Stump:
    """Exhaustive weighted search for the best single-threshold split."""
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y)
    w = np.asarray(weights, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] < 2:
        raise EmptyMatrixError("stump training needs at least 2 rows")
    if not (X.shape[0] == y.shape[0] == w.shape[0]):
        raise LengthMismatchError("X, y and weights must have equal length")
    if not (w > 0).all():
        raise ValueError("weights must be strictly positive")

    best = None  # (error, feature, threshold, polarity)
    for f in range(X.shape[1]):
        order = np.argsort(X[:, f], kind="stable")
        xs = X[order, f]
        yw = w[order]
        cpos = np.cumsum(np.where(y[order] == 1, yw, 0.0))
        cneg = np.cumsum(np.where(y[order] == -1, yw, 0.0))
        thresholds, err_plus = _feature_candidates(xs, cpos, cneg)
        errs = np.column_stack([err_plus, 1.0 - err_plus]).ravel()
        i = int(np.argmin(errs))  # first minimum: lowest threshold, polarity +1 first
        if best is None or errs[i] < best[0]:
            best = (float(errs[i]), f, float(thresholds[i // 2]), 1 if i % 2 == 0 else -1)

    error, feature, threshold, polarity = best
    return Stump(feature, threshold, polarity, error)


def adaboost_train(
    X: np.ndarray,
    y: np.ndarray,
    rounds: int = 50,
    eps_floor: float = 1e-10,
    round_callback: Callable[[int, Stump, float, np.ndarray], None] | None = None,
) -> BoostModel:
    """Boost stumps for up to `rounds` rounds with exact Eq-style reweighting.

    Stops early on a perfect stump (retained, finite clamped vote) or when
    the best stump cannot beat chance (discarded).  `round_callback`, if
    given, observes (round, stump, alpha, weights-after-update) for every
    retained round.
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y)
    if X.ndim != 2 or X.shape[0] == 0:
        raise EmptyMatrixError("no training rows")
    if X.shape[0] != y.shape[0]:
        raise LengthMismatchError("X and y differ in length")
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    if not 0.0 < eps_floor < 0.5:
        raise ValueError("eps_floor must lie in (0, 0.5)")
    if np.unique(y).size < 2:
        raise SingleClassError("training labels contain a single class")

    m = X.shape[0]
    weights = np.full(m, 1.0 / m)
    stumps: list[Stump] = []
    alphas: list[float] = []
    stop_reason = "completed"

    for t in range(1, rounds + 1):
        stump = stump_train(X, y, weights)
        eps = stump.weighted_error
        if eps >= 0.5:
            if not stumps:
                raise NoProgressError("no stump beats chance on the first round")
            stop_reason = "no_progress"
            break
        eps_hat = min(max(eps, eps_floor), 1.0 - eps_floor)
        alpha = 0.5 * np.log((1.0 - eps_hat) / eps_hat)
        stumps.append(stump)
        alphas.append(float(alpha))
        if eps == 0.0:
            stop_reason = "perfect_fit"
            if round_callback is not None:
                round_callback(t, stump, float(alpha), weights.copy())
            break
        weights = weights * np.exp(-alpha * y * stump.predict(X))
        weights = weights / weights.sum()
        if round_callback is not None:
            round_callback(t, stump, float(alpha), weights.copy())

    return BoostModel(
        stumps=tuple(stumps),
        alphas=tuple(alphas),
        rounds_requested=rounds,
        stop_reason=stop_reason,
        n_features=X.shape[1],
    )


def adaboost_margins(model: BoostModel, X: np.ndarray) -> np.ndarray:
    """Weighted-vote margin sum for every row of X."""
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    if X.shape[1] != model.n_features:
        raise DimensionMismatchError(
            f"model was trained on {model.n_features} features, input has {X.shape[1]}"
        )
    margins = np.zeros(X.shape[0])
    for stump, alpha in zip(model.stumps, model.alphas):
        margins += alpha * stump.predict(X)
    return margins


def adaboost_predict(model: BoostModel, x: np.ndarray) -> tuple[int, float]:
    """(label, margin) for a single feature row; sign(0) counts as +1."""
    margin = float(adaboost_margins(model, np.atleast_2d(x))[0])
    return (1 if margin >= 0.0 else -1), margin


def adaboost_predict_matrix(model: BoostModel, X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    margins = adaboost_margins(model, X)
    labels = np.where(margins >= 0.0, 1, -1)
    return labels, margins
