"""Confusion-matrix counts and the seven derived indicators.

Accuracy, sensitivity, specificity, precision, negative predictive value,
F1 and the Matthews correlation coefficient, all as fractions (MCC in
[-1, 1]).  A rate whose denominator is zero is reported as 0.0 with its
name added to the report's `undefined` set, so reports stay
machine-readable with no NaNs.

`reconstruct_cm` inverts the mapping: it enumerates every integer
(tp, fp, tn, fn) in an instance-count range whose seven indicators land
within a tolerance of given targets.  Interval pruning on tp and tn keeps
the search tractable; the final membership test recomputes all seven
indicators exactly, so pruning can only ever be generous, never lossy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .errors import EmptyInputError, LengthMismatchError

METRIC_KEYS = ("sensitivity", "specificity", "precision", "npv", "accuracy", "f1", "mcc")

DISPLAY_NAMES = {
    "sensitivity": "Sensitivity",
    "specificity": "Specificity",
    "precision": "Precision",
    "npv": "Negative Predictive Value",
    "accuracy": "Accuracy",
    "f1": "F1 Score",
    "mcc": "Matthews Correlation Coefficient",
}

# guards int64 exactness of the MCC denominator product (n^4 < 2^63)
MAX_RECONSTRUCT_N = 50_000
_EXPANSION_LIMIT = 50_000_000


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    fp: int
    tn: int
    fn: int

    def __post_init__(self):
        counts = (self.tp, self.fp, self.tn, self.fn)
        if any(c < 0 for c in counts):
            raise ValueError("confusion counts must be non-negative")
        if sum(counts) < 1:
            raise ValueError("confusion matrix must count at least one instance")

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn


@dataclass(frozen=True)
class MetricsReport:
    accuracy: float
    sensitivity: float
    specificity: float
    precision: float
    npv: float
    f1: float
    mcc: float
    counts: ConfusionMatrix
    undefined: frozenset[str]

    def as_dict(self) -> dict[str, float]:
        return {k: getattr(self, k) for k in METRIC_KEYS}


def confusion(y_true: np.ndarray, y_pred: np.ndarray) -> ConfusionMatrix:
    """Count tp/fp/tn/fn for {+1, -1} label vectors."""
    y_true = np.asarray(y_true)
    y_pred = np.asarray(y_pred)
    if y_true.shape != y_pred.shape:
        raise LengthMismatchError("y_true and y_pred differ in length")
    if y_true.size == 0:
        raise EmptyInputError("cannot build a confusion matrix from no labels")
    if not (np.isin(y_true, (-1, 1)).all() and np.isin(y_pred, (-1, 1)).all()):
        raise ValueError("labels must be +1 or -1")
    pos, pred_pos = y_true == 1, y_pred == 1
    return ConfusionMatrix(
        tp=int(np.sum(pos & pred_pos)),
        fp=int(np.sum(~pos & pred_pos)),
        tn=int(np.sum(~pos & ~pred_pos)),
        fn=int(np.sum(pos & ~pred_pos)),
    )


def compute_metrics(cm: ConfusionMatrix) -> MetricsReport:
    """All seven indicators; zero-denominator rates become 0.0 + flag."""
    tp, fp, tn, fn = cm.tp, cm.fp, cm.tn, cm.fn
    undefined = set()

    def rate(name: str, num: int, den: int) -> float:
        if den == 0:
            undefined.add(name)
            return 0.0
        return num / den

    accuracy = (tp + tn) / cm.total
    sensitivity = rate("sensitivity", tp, tp + fn)
    specificity = rate("specificity", tn, fp + tn)
    precision = rate("precision", tp, tp + fp)
    npv = rate("npv", tn, tn + fn)
    if precision + sensitivity > 0.0:
        f1 = 2.0 * precision * sensitivity / (precision + sensitivity)
    else:
        undefined.add("f1")
        f1 = 0.0
    mcc_den = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn)
    if mcc_den > 0:
        mcc = (tp * tn - fp * fn) / math.sqrt(mcc_den)
    else:
        undefined.add("mcc")
        mcc = 0.0
    return MetricsReport(
        accuracy=accuracy,
        sensitivity=sensitivity,
        specificity=specificity,
        precision=precision,
        npv=npv,
        f1=f1,
        mcc=mcc,
        counts=cm,
        undefined=frozenset(undefined),
    )


def _bounds(target: float, tol: float) -> tuple[float, float]:
    return target - tol, target + tol


def _candidates_for_n(n: int, t: Mapping[str, float], tol: float) -> np.ndarray:
    """Integer (tp, fp, tn, fn) candidates at total n surviving interval pruning."""
    eps = 1e-9
    s_lo, s_hi = _bounds(t["sensitivity"], tol)
    sp_lo, sp_hi = _bounds(t["specificity"], tol)
    p_lo, p_hi = _bounds(t["precision"], tol)
    v_lo, v_hi = _bounds(t["npv"], tol)
    a_lo, a_hi = _bounds(t["accuracy"], tol)
    f_lo, f_hi = _bounds(t["f1"], tol)

    P = np.arange(n + 1, dtype=np.int64)
    Q = n - P
    tp_lo = np.ceil(
        np.maximum(np.maximum(P * max(s_lo, 0.0), n * max(a_lo, 0.0) - Q * min(sp_hi, 1.0)), 0.0)
        - eps
    ).astype(np.int64)
    tp_hi = np.floor(
        np.minimum(np.minimum(P * min(s_hi, 1.0), n * min(a_hi, 1.0) - Q * max(sp_lo, 0.0)), P)
        + eps
    ).astype(np.int64)
    counts = np.maximum(tp_hi - tp_lo + 1, 0)
    if counts.sum() == 0:
        return np.empty((0, 4), dtype=np.int64)

    keep = counts > 0
    reps = counts[keep]
    P = np.repeat(P[keep], reps)
    Q = n - P
    offsets = np.arange(reps.sum()) - np.repeat(np.cumsum(reps) - reps, reps)
    tp = np.repeat(tp_lo[keep], reps) + offsets
    fn = P - tp

    inf = np.inf
    lower = np.maximum(Q * max(sp_lo, 0.0), n * max(a_lo, 0.0) - tp)
    if v_lo > 0.0:
        if v_lo < 1.0:
            lower = np.maximum(lower, fn * (v_lo / (1.0 - v_lo)))
        else:
            lower = np.where(fn > 0, inf, lower)
    if p_lo > 0.0:
        lower = np.maximum(lower, Q - tp * ((1.0 - p_lo) / p_lo))
    if f_lo > 0.0:
        lower = np.maximum(lower, Q - (2.0 * tp * ((1.0 - f_lo) / f_lo) - fn))
    lower = np.maximum(lower, 0.0)

    upper = np.minimum(Q * min(sp_hi, 1.0), n * min(a_hi, 1.0) - tp)
    if v_hi < 1.0:
        upper = np.minimum(upper, fn * (v_hi / (1.0 - v_hi)))
    if p_hi < 1.0:
        upper = np.minimum(upper, Q - tp * ((1.0 - p_hi) / p_hi))
    if f_hi < 1.0:
        upper = np.minimum(upper, Q - np.maximum(2.0 * tp * ((1.0 - f_hi) / f_hi) - fn, 0.0))
    upper = np.minimum(upper, Q)

    tn_lo = np.ceil(np.where(np.isinf(lower), lower, lower - eps)).astype(np.float64)
    tn_hi = np.floor(upper + eps)
    counts2 = np.maximum(tn_hi - tn_lo + 1, 0)
    counts2 = np.where(np.isfinite(counts2), counts2, 0).astype(np.int64)
    total = counts2.sum()
    if total == 0:
        return np.empty((0, 4), dtype=np.int64)
    if total > _EXPANSION_LIMIT:
        raise ValueError("tolerance too loose: candidate expansion exceeds the search limit")

    keep2 = counts2 > 0
    reps2 = counts2[keep2]
    tp = np.repeat(tp[keep2], reps2)
    fn = np.repeat(fn[keep2], reps2)
    Q = np.repeat(Q[keep2], reps2)
    offsets2 = np.arange(total) - np.repeat(np.cumsum(reps2) - reps2, reps2)
    tn = np.repeat(tn_lo[keep2].astype(np.int64), reps2) + offsets2
    fp = Q - tn
    return np.column_stack([tp, fp, tn, fn])


def _matches(cand: np.ndarray, n: int, t: Mapping[str, float], tol: float) -> np.ndarray:
    """Exact seven-indicator membership test on candidate quadruples."""
    tp, fp, tn, fn = (cand[:, i] for i in range(4))
    P, Q = tp + fn, tn + fp

    def rate(num, den):
        return np.where(den > 0, num / np.where(den > 0, den, 1), 0.0)

    acc = (tp + tn) / n
    sens = rate(tp, P)
    spec = rate(tn, Q)
    prec = rate(tp, tp + fp)
    npv = rate(tn, tn + fn)
    ps = prec + sens
    f1 = np.where(ps > 0.0, 2.0 * prec * sens / np.where(ps > 0.0, ps, 1.0), 0.0)
    den = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn)
    mcc = np.where(den > 0, (tp * tn - fp * fn) / np.sqrt(np.where(den > 0, den, 1)), 0.0)

    ok = np.abs(acc - t["accuracy"]) <= tol
    for name, vals in (
        ("sensitivity", sens),
        ("specificity", spec),
        ("precision", prec),
        ("npv", npv),
        ("f1", f1),
        ("mcc", mcc),
    ):
        ok &= np.abs(vals - t[name]) <= tol
    return ok


def reconstruct_cm(
    targets: Mapping[str, float], n_min: int, n_max: int, tol: float
) -> list[ConfusionMatrix]:
    """Every integer confusion matrix whose indicators hit the targets.

    `targets` maps all seven metric keys to fractions (MCC in [-1, 1]).
    The result is sorted by (total, tp, fp, tn, fn) and may be empty;
    existence is the caller's question to answer, not an assumption.
    """
    missing = [k for k in METRIC_KEYS if k not in targets]
    if missing:
        raise ValueError(f"targets missing keys: {missing}")
    if not 1 <= n_min <= n_max:
        raise ValueError("need 1 <= n_min <= n_max")
    if n_max > MAX_RECONSTRUCT_N:
        raise ValueError(f"n_max above {MAX_RECONSTRUCT_N} would overflow exact counting")
    if tol <= 0:
        raise ValueError("tol must be positive")

    found: list[ConfusionMatrix] = []
    for n in range(n_min, n_max + 1):
        cand = _candidates_for_n(n, targets, tol)
        if cand.shape[0] == 0:
            continue
        cand = cand[_matches(cand, n, targets, tol)]
        if cand.shape[0] == 0:
            continue
        order = np.lexsort((cand[:, 3], cand[:, 2], cand[:, 1], cand[:, 0]))
        for tp, fp, tn, fn in cand[order]:
            found.append(ConfusionMatrix(tp=int(tp), fp=int(fp), tn=int(tn), fn=int(fn)))
    return found
