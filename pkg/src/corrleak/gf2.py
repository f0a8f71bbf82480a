"""Dense GF(2) matrix arithmetic: parsing, multiply, rank, column surgery.

Matrices in this domain are tiny (at most ~16x16), so everything is plain
Gaussian elimination with XOR row operations on uint8 arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import UsageError, ValidationError


@dataclass(frozen=True)
class Gf2Matrix:
    """An immutable 0/1 matrix with row-major storage."""

    cells: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.cells, dtype=np.uint8)
        if arr.ndim != 2:
            raise ValidationError(f"matrix must be 2-dimensional, got shape {arr.shape}")
        if not np.all((arr == 0) | (arr == 1)):
            raise ValidationError("matrix entries must be 0 or 1")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "cells", arr)

    @classmethod
    def from_rows(cls, rows: Sequence[str]) -> "Gf2Matrix":
        """Parse rows given as '0'/'1' strings, e.g. "1000101"."""
        if not rows:
            raise ValidationError("matrix needs at least one row")
        width = len(rows[0])
        parsed = []
        for r, text in enumerate(rows):
            if len(text) != width:
                raise ValidationError(f"row {r} has length {len(text)}, expected {width}")
            if any(ch not in "01" for ch in text):
                raise ValidationError(f"row {r} contains characters other than 0/1")
            parsed.append([int(ch) for ch in text])
        return cls(np.array(parsed, dtype=np.uint8))

    @classmethod
    def identity(cls, n: int) -> "Gf2Matrix":
        return cls(np.eye(n, dtype=np.uint8))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Gf2Matrix":
        return cls(np.zeros((rows, cols), dtype=np.uint8))

    @property
    def rows(self) -> int:
        return int(self.cells.shape[0])

    @property
    def cols(self) -> int:
        return int(self.cells.shape[1])

    @property
    def bits(self) -> tuple[int, ...]:
        """Row-major flat view of the entries."""
        return tuple(int(v) for v in self.cells.ravel())

    def transpose(self) -> "Gf2Matrix":
        return Gf2Matrix(self.cells.T)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "Gf2Matrix":
        return Gf2Matrix(self.cells[np.ix_(list(row_idx), list(col_idx))])

    def hstack(self, other: "Gf2Matrix") -> "Gf2Matrix":
        if self.rows != other.rows:
            raise UsageError(f"row counts differ: {self.rows} vs {other.rows}")
        return Gf2Matrix(np.hstack([self.cells, other.cells]))

    def row_strings(self) -> list[str]:
        return ["".join(str(int(v)) for v in row) for row in self.cells]

    def to_json(self) -> dict:
        return {"rows": self.row_strings()}

    @classmethod
    def from_json(cls, data: dict) -> "Gf2Matrix":
        try:
            rows = list(data["rows"])
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"bad Gf2Matrix JSON: {exc}") from exc
        return cls.from_rows(rows)


def rank(m: Gf2Matrix) -> int:
    """GF(2) rank via Gaussian elimination."""
    work = m.cells.copy()
    n_rows, n_cols = work.shape
    pivot_row = 0
    for col in range(n_cols):
        hit = -1
        for r in range(pivot_row, n_rows):
            if work[r, col]:
                hit = r
                break
        if hit < 0:
            continue
        if hit != pivot_row:
            work[[pivot_row, hit]] = work[[hit, pivot_row]]
        for r in range(pivot_row + 1, n_rows):
            if work[r, col]:
                work[r] ^= work[pivot_row]
        pivot_row += 1
        if pivot_row == n_rows:
            break
    return pivot_row


def mat_vec_mul(m: Gf2Matrix, v: Iterable[int]) -> tuple[int, ...]:
    """XOR-accumulated product m @ v over GF(2)."""
    vec = np.asarray(list(v), dtype=np.uint8)
    if vec.ndim != 1 or vec.size != m.cols:
        raise UsageError(f"vector length {vec.size} does not match {m.cols} columns")
    if not np.all((vec == 0) | (vec == 1)):
        raise UsageError("vector entries must be 0 or 1")
    out = (m.cells @ vec.astype(np.int64)) % 2
    return tuple(int(b) for b in out)


def remove_columns(m: Gf2Matrix, positions: Iterable[int]) -> Gf2Matrix:
    """Drop the given columns; the surviving columns keep their order."""
    drop = set(int(p) for p in positions)
    for p in drop:
        if not 0 <= p < m.cols:
            raise UsageError(f"column {p} out of range 0..{m.cols - 1}")
    keep = [c for c in range(m.cols) if c not in drop]
    return Gf2Matrix(m.cells[:, keep].reshape(m.rows, len(keep)))
