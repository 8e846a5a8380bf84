"""Loading, validation and splitting of labeled waveform windows.

A dataset is an I x J matrix of fast-time radar samples plus one binary
presence label per row.  Labels are held internally as {+1, -1} so the
boosting exponent y * h(x) is well-formed everywhere downstream; the CSV
layer translates the common encodings (1/0, yes/no, +1/-1) on the way in
and out.  Malformed rows are dropped and counted, never fatal, so reports
can disclose data loss.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import (
    EmptyDatasetError,
    FileUnreadableError,
    InconsistentWidthError,
    SingleClassStratifyError,
)
from .rng import Stream

_SPLIT_STREAM = 0x5B11

LABEL_ENCODINGS = ("pm1", "01", "yesno")
_YES = frozenset(("yes", "person yes", "+1", "1"))
_NO = frozenset(("no", "person no", "-1", "0"))


@dataclass
class LabeledDataset:
    """Immutable I x J window matrix with {+1, -1} presence labels."""

    windows: np.ndarray
    labels: np.ndarray
    scenario_tag: str = ""
    dropped_row_count: int = 0

    def __post_init__(self):
        w = np.array(self.windows, dtype=np.float64)
        y = np.array(self.labels, dtype=np.int64)
        if w.ndim != 2 or w.shape[1] < 2:
            raise ValueError("windows must be a 2-D matrix with at least 2 samples per row")
        if w.shape[0] != y.shape[0]:
            raise ValueError("windows and labels differ in length")
        if not np.isfinite(w).all():
            raise ValueError("windows contain non-finite samples")
        if not np.isin(y, (-1, 1)).all():
            raise ValueError("labels must be +1 or -1")
        if self.dropped_row_count < 0:
            raise ValueError("dropped_row_count must be non-negative")
        w.setflags(write=False)
        y.setflags(write=False)
        object.__setattr__(self, "windows", w)
        object.__setattr__(self, "labels", y)

    @property
    def n_windows(self) -> int:
        return self.windows.shape[0]

    @property
    def window_length(self) -> int:
        return self.windows.shape[1]

    def subset(self, indices: np.ndarray) -> "LabeledDataset":
        return LabeledDataset(
            self.windows[indices],
            self.labels[indices],
            scenario_tag=self.scenario_tag,
            dropped_row_count=self.dropped_row_count,
        )


@dataclass(frozen=True)
class SplitSpec:
    """Train/test split request: fraction in (0,1), seed, stratified flag."""

    train_fraction: float = 0.7
    seed: int = 0
    stratified: bool = True

    def __post_init__(self):
        if not 0.0 < self.train_fraction < 1.0:
            raise ValueError("train_fraction must lie strictly between 0 and 1")


def _parse_label(token: str, encoding: str) -> int | None:
    t = token.strip().casefold()
    if encoding == "yesno":
        if t in ("yes", "person yes"):
            return 1
        if t in ("no", "person no"):
            return -1
        return None
    try:
        v = float(t)
    except ValueError:
        return None
    if encoding == "pm1":
        return 1 if v == 1.0 else -1 if v == -1.0 else None
    if encoding == "01":
        return 1 if v == 1.0 else -1 if v == 0.0 else None
    raise ValueError(f"unknown label encoding {encoding!r}")


def _data_lines(path: Path, has_header: bool) -> list[list[str]]:
    try:
        text = path.read_text()
    except OSError as exc:
        raise FileUnreadableError(f"cannot read {path}: {exc}") from exc
    rows = []
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        rows.append(stripped.split(","))
    if has_header and rows:
        rows = rows[1:]
    return rows


def load_csv(
    path: str | Path,
    label_column: str = "first",
    label_encoding: str = "pm1",
    has_header: bool = False,
    scenario_tag: str = "",
) -> LabeledDataset:
    """Load one window per CSV row, dropping and counting malformed rows.

    The window length J is inferred from the first row that parses cleanly.
    Rows with the wrong number of cells, non-finite or unparseable samples,
    or an unrecognized label are dropped and counted.  If more than half of
    the rows disagree with the inferred J the layout itself is presumed
    wrong and InconsistentWidthError is raised instead.
    """
    if label_column not in ("first", "last"):
        raise ValueError("label_column must be 'first' or 'last'")
    path = Path(path)
    rows = _data_lines(path, has_header)

    def split_row(tokens: list[str]) -> tuple[str, list[str]]:
        if label_column == "first":
            return tokens[0], tokens[1:]
        return tokens[-1], tokens[:-1]

    def parse_row(tokens: list[str]) -> tuple[int, np.ndarray] | None:
        if len(tokens) < 3:
            return None
        label_tok, sample_toks = split_row(tokens)
        label = _parse_label(label_tok, label_encoding)
        if label is None:
            return None
        try:
            samples = np.asarray(sample_toks, dtype=np.float64)
        except ValueError:
            return None
        if not np.isfinite(samples).all():
            return None
        return label, samples

    width = None
    for tokens in rows:
        parsed = parse_row(tokens)
        if parsed is not None:
            width = len(tokens)
            break
    if width is None:
        raise EmptyDatasetError(f"{path}: no valid rows")

    disagree = sum(1 for tokens in rows if len(tokens) != width)
    if disagree * 2 > len(rows):
        raise InconsistentWidthError(
            f"{path}: {disagree} of {len(rows)} rows disagree with inferred width {width}"
        )

    windows, labels, dropped = [], [], 0
    for tokens in rows:
        parsed = parse_row(tokens) if len(tokens) == width else None
        if parsed is None:
            dropped += 1
            continue
        labels.append(parsed[0])
        windows.append(parsed[1])
    if not windows:
        raise EmptyDatasetError(f"{path}: no valid rows")
    return LabeledDataset(
        np.vstack(windows),
        np.asarray(labels),
        scenario_tag=scenario_tag,
        dropped_row_count=dropped,
    )


def load_unlabeled_csv(path: str | Path, has_header: bool = False) -> tuple[np.ndarray, int]:
    """Load label-free windows (for prediction); returns (matrix, dropped count)."""
    path = Path(path)
    rows = _data_lines(path, has_header)
    width = None
    parsed_rows, dropped = [], 0
    for tokens in rows:
        try:
            samples = np.asarray(tokens, dtype=np.float64)
        except ValueError:
            dropped += 1
            continue
        if not np.isfinite(samples).all() or len(tokens) < 2:
            dropped += 1
            continue
        if width is None:
            width = len(tokens)
        if len(tokens) != width:
            dropped += 1
            continue
        parsed_rows.append(samples)
    if not parsed_rows:
        raise EmptyDatasetError(f"{path}: no valid rows")
    return np.vstack(parsed_rows), dropped


def save_csv(
    ds: LabeledDataset,
    path: str | Path,
    label_column: str = "first",
    label_encoding: str = "pm1",
    has_header: bool = False,
) -> None:
    """Write a dataset in the CSV layout `load_csv` reads.

    Samples are rendered as shortest round-trip decimals, so a reload with
    the same layout reproduces the matrix bit-exactly.
    """
    if label_column not in ("first", "last"):
        raise ValueError("label_column must be 'first' or 'last'")
    encode = {
        "pm1": {1: "1", -1: "-1"},
        "01": {1: "1", -1: "0"},
        "yesno": {1: "yes", -1: "no"},
    }[label_encoding]
    lines = []
    if has_header:
        names = [f"s{j:03d}" for j in range(ds.window_length)]
        cols = ["label"] + names if label_column == "first" else names + ["label"]
        lines.append(",".join(cols))
    for row, label in zip(ds.windows, ds.labels):
        cells = [repr(float(v)) for v in row]
        tok = encode[int(label)]
        lines.append(",".join([tok] + cells if label_column == "first" else cells + [tok]))
    Path(path).write_text("\n".join(lines) + "\n")


def split_indices(ds: LabeledDataset, spec: SplitSpec) -> tuple[np.ndarray, np.ndarray]:
    """Deterministic (train, test) row indices for a split request.

    Train size is round(train_fraction * I).  Stratified mode keeps each
    class's train share within one row of train_fraction times its count,
    using largest-remainder apportionment over a seeded permutation.
    """
    n = ds.n_windows
    if n == 0:
        raise EmptyDatasetError("cannot split an empty dataset")
    perm = Stream(spec.seed, _SPLIT_STREAM).permutation(n)
    train_total = int(np.floor(spec.train_fraction * n + 0.5))

    if not spec.stratified:
        train = np.sort(perm[:train_total])
    else:
        values = np.unique(ds.labels)
        if values.size < 2:
            raise SingleClassStratifyError("stratified split needs both classes present")
        counts = {int(c): int(np.sum(ds.labels == c)) for c in values}
        targets = {c: spec.train_fraction * counts[c] for c in counts}
        quota = {c: int(np.floor(targets[c])) for c in counts}
        extras = train_total - sum(quota.values())
        by_remainder = sorted(counts, key=lambda c: (-(targets[c] - quota[c]), c))
        for c in by_remainder[:extras]:
            quota[c] = min(quota[c] + 1, counts[c])
        picked = []
        taken = {c: 0 for c in counts}
        for idx in perm:
            c = int(ds.labels[idx])
            if taken[c] < quota[c]:
                taken[c] += 1
                picked.append(idx)
        train = np.sort(np.asarray(picked, dtype=np.int64))

    mask = np.zeros(n, dtype=bool)
    mask[train] = True
    test = np.nonzero(~mask)[0]
    return train, test


def stratified_split(ds: LabeledDataset, spec: SplitSpec) -> tuple[LabeledDataset, LabeledDataset]:
    """Split into (train, test) datasets; a pure function of (ds, spec)."""
    train_idx, test_idx = split_indices(ds, spec)
    return ds.subset(train_idx), ds.subset(test_idx)
