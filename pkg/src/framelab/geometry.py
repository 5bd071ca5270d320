"""Index geometry: the distance convention behind localization weights."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np


@dataclass(frozen=True)
class IndexGeometry:
    """Linear distance |k - l| or circular distance on Z_period."""

    kind: str  # "linear" | "circular"
    period: Optional[int] = None

    def __post_init__(self):
        if self.kind == "linear":
            if self.period is not None:
                raise ValueError("linear geometry takes no period")
        elif self.kind == "circular":
            if self.period is None or self.period < 1:
                raise ValueError("circular geometry needs period >= 1")
        else:
            raise ValueError(f"unknown geometry kind {self.kind!r}")

    @classmethod
    def linear(cls) -> "IndexGeometry":
        return cls(kind="linear")

    @classmethod
    def circular(cls, period: int) -> "IndexGeometry":
        return cls(kind="circular", period=period)

    def distance(self, k, l):
        """Pairwise distance; accepts scalars or arrays (broadcasting)."""
        diff = np.abs(np.asarray(k) - np.asarray(l))
        if self.kind == "circular":
            diff = diff % self.period
            diff = np.minimum(diff, self.period - diff)
        return diff

    def distance_matrix(self, row_positions, col_positions) -> np.ndarray:
        rows = np.asarray(row_positions, dtype=int)[:, None]
        cols = np.asarray(col_positions, dtype=int)[None, :]
        return self.distance(rows, cols)
