"""Time-indexed data plus the flat CSV formats used by the command line.

Data files have no header: one row per time step, comma-separated
columns, one column per dimension. Label files hold one 0-based integer
time index per line.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "TimeSeries",
    "CsvParseError",
    "read_series_csv",
    "write_series_csv",
    "read_labels",
    "write_labels",
]


class CsvParseError(ValueError):
    """Raised when a data or label file does not parse; says which line."""


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """A (T, d) block of observations with its true change point times."""

    values: np.ndarray
    labels: list[int] = field(default_factory=list)

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        if values.ndim == 1:
            values = values[:, None]
        if values.ndim != 2 or values.shape[0] == 0:
            raise ValueError(f"values must be a nonempty (T, d) block, got shape {values.shape}")
        labels = [int(t) for t in self.labels]
        if labels != sorted(set(labels)):
            raise ValueError("labels must be strictly increasing")
        if labels and not (0 <= labels[0] and labels[-1] < values.shape[0]):
            raise ValueError("labels must lie within [0, T)")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "labels", labels)

    @property
    def length(self) -> int:
        return self.values.shape[0]

    @property
    def dim(self) -> int:
        return self.values.shape[1]


def read_series_csv(path) -> TimeSeries:
    """Parse a headerless CSV of floats into an unlabeled TimeSeries."""
    rows: list[list[float]] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                row = [float(tok) for tok in line.split(",")]
            except ValueError:
                raise CsvParseError(f"{path}: line {lineno}: not a comma-separated float row")
            if rows and len(row) != len(rows[0]):
                raise CsvParseError(
                    f"{path}: line {lineno}: expected {len(rows[0])} columns, got {len(row)}"
                )
            rows.append(row)
    if not rows:
        raise CsvParseError(f"{path}: no data rows")
    return TimeSeries(np.asarray(rows, dtype=float))


def write_series_csv(path, series) -> None:
    """Write the data block of a TimeSeries (or plain array), %.17g cells."""
    values = series.values if isinstance(series, TimeSeries) else np.asarray(series, dtype=float)
    if values.ndim == 1:
        values = values[:, None]
    with open(path, "w", encoding="utf-8") as fh:
        for row in values:
            fh.write(",".join(f"{v:.17g}" for v in row) + "\n")


def read_labels(path) -> list[int]:
    """Parse a label file: one 0-based integer time index per line."""
    out: list[int] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                out.append(int(line))
            except ValueError:
                raise CsvParseError(f"{path}: line {lineno}: not an integer label")
    return out


def write_labels(path, labels) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for t in labels:
            fh.write(f"{int(t)}\n")
