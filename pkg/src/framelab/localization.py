"""Weighted Schur-algebra norms on Gramians and localization diagnostics.

The norm of a matrix A with index positions on both axes is

    max( sup_k sum_l |a_kl| v_s(d(k,l)),  sup_l sum_k |a_kl| v_s(d(k,l)) )

with weight v_s(x) = (1 + x)^s and d the configured index distance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .errors import DimensionMismatch
from .frames import FrameSystem, canonical_dual, cross_gramian_entries
from .geometry import IndexGeometry


@dataclass(frozen=True)
class SchurWeight:
    """Polynomial weight v_s(x) = (1 + x)^s, s >= 0."""

    s: float = 0.0

    def __post_init__(self):
        if self.s < 0:
            raise ValueError("weight exponent must be >= 0")

    def values(self, distances) -> np.ndarray:
        return (1.0 + np.asarray(distances, dtype=float)) ** self.s


@dataclass(frozen=True)
class GramianMatrix:
    """Dense matrix of inner products, carrying both index position lists."""

    entries: np.ndarray
    row_positions: np.ndarray
    col_positions: np.ndarray

    def __post_init__(self):
        e = np.asarray(self.entries, dtype=complex)
        rp = np.asarray(self.row_positions, dtype=int)
        cp = np.asarray(self.col_positions, dtype=int)
        if e.shape != (rp.shape[0], cp.shape[0]):
            raise DimensionMismatch("entry shape does not match position lists")
        object.__setattr__(self, "entries", e)
        object.__setattr__(self, "row_positions", rp)
        object.__setattr__(self, "col_positions", cp)

    @property
    def shape(self):
        return self.entries.shape


def cross_gramian(g: FrameSystem, f: FrameSystem) -> GramianMatrix:
    """Gramian of g with respect to f: entries <g_n, f_x>."""
    return GramianMatrix(
        entries=cross_gramian_entries(g, f),
        row_positions=g.index_positions,
        col_positions=f.index_positions,
    )


def gramian(f: FrameSystem) -> GramianMatrix:
    return cross_gramian(f, f)


def _coerce(a: Union[GramianMatrix, np.ndarray]) -> GramianMatrix:
    if isinstance(a, GramianMatrix):
        return a
    m = np.asarray(a, dtype=complex)
    return GramianMatrix(
        entries=m,
        row_positions=np.arange(m.shape[0]),
        col_positions=np.arange(m.shape[1]),
    )


def schur_norm(a, w: SchurWeight = SchurWeight(0.0),
               geom: Optional[IndexGeometry] = None) -> float:
    """Weighted max of sup-row-sum and sup-column-sum.

    Plain matrices default to positions 0..n-1 with linear distance.
    """
    g = _coerce(a)
    if geom is None:
        geom = IndexGeometry.linear()
    weights = w.values(geom.distance_matrix(g.row_positions, g.col_positions))
    t = np.abs(g.entries) * weights
    return float(max(t.sum(axis=1).max(), t.sum(axis=0).max()))


def localization_degree(g: FrameSystem, f: FrameSystem,
                        w: SchurWeight = SchurWeight(0.0),
                        geom: Optional[IndexGeometry] = None) -> float:
    """Schur norm of the cross-Gramian of g with respect to f."""
    if g.dim != f.dim:
        raise DimensionMismatch("localization requires matching dimensions")
    if geom is None:
        geom = g.geometry
    return schur_norm(cross_gramian(g, f), w, geom)


@dataclass(frozen=True)
class DualLocalizationReport:
    """Self-localization of a frame and of its canonical dual."""

    s: float
    frame_norm: float
    dual_norm: float
    threshold: float
    both_within: bool


def check_dual_localization(g: FrameSystem, w: SchurWeight,
                            geom: Optional[IndexGeometry] = None,
                            threshold: float = np.inf) -> DualLocalizationReport:
    """Numerically witness self-localization of the canonical dual.

    Reports the Schur norms of the Gramian of g and of its canonical dual,
    and whether both stay within the given threshold.
    """
    if geom is None:
        geom = g.geometry
    pair = canonical_dual(g)
    frame_norm = schur_norm(gramian(g), w, geom)
    dual_norm = schur_norm(gramian(pair.dual), w, geom)
    return DualLocalizationReport(
        s=w.s,
        frame_norm=frame_norm,
        dual_norm=dual_norm,
        threshold=threshold,
        both_within=bool(frame_norm <= threshold and dual_norm <= threshold),
    )


def decay_profile(a, geom: Optional[IndexGeometry] = None):
    """Per-distance maxima of |entries|: list of (distance, max) pairs."""
    g = _coerce(a)
    if geom is None:
        geom = IndexGeometry.linear()
    dist = geom.distance_matrix(g.row_positions, g.col_positions)
    mags = np.abs(g.entries)
    out = []
    for d in np.unique(dist):
        out.append((int(d), float(mags[dist == d].max())))
    return out
