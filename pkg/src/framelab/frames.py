"""Frames in finite dimension: operators, bounds, duals, Gramians.

A FrameSystem is an ordered family of N vectors in C^d together with
integer index positions used by the localization machinery. The inner
product is linear in the first argument and conjugate-linear in the
second.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DimensionMismatch, LengthMismatch, NotAFrame, ShapeMismatch
from .geometry import IndexGeometry
from .linalg import hermitian_eig

NOT_A_FRAME_RTOL = 1e-12


@dataclass(frozen=True)
class FrameSystem:
    """N vectors in C^d, stored as the rows of an (N, d) array."""

    vectors: np.ndarray
    index_positions: np.ndarray
    label: str = ""
    geometry: IndexGeometry = field(default_factory=IndexGeometry.linear)
    provenance: Optional[dict] = None

    def __post_init__(self):
        v = np.asarray(self.vectors, dtype=complex)
        if v.ndim != 2 or v.shape[0] < 1 or v.shape[1] < 1:
            raise ShapeMismatch("vectors must form a nonempty (N, d) array")
        if not np.all(np.isfinite(v)):
            raise ShapeMismatch("frame vectors must be finite")
        pos = np.asarray(self.index_positions, dtype=int)
        if pos.shape != (v.shape[0],):
            raise ShapeMismatch("index_positions must hold one integer per vector")
        if len(set(pos.tolist())) != len(pos):
            raise ShapeMismatch("index_positions must be pairwise distinct")
        v = v.copy()
        pos = pos.copy()
        v.setflags(write=False)
        pos.setflags(write=False)
        object.__setattr__(self, "vectors", v)
        object.__setattr__(self, "index_positions", pos)

    @classmethod
    def from_vectors(cls, vectors, label: str = "", geometry=None,
                     index_positions=None, provenance=None) -> "FrameSystem":
        v = np.atleast_2d(np.asarray(vectors, dtype=complex))
        if index_positions is None:
            index_positions = np.arange(v.shape[0])
        if geometry is None:
            geometry = IndexGeometry.linear()
        return cls(vectors=v, index_positions=np.asarray(index_positions),
                   label=label, geometry=geometry, provenance=provenance)

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    @property
    def size(self) -> int:
        return self.vectors.shape[0]

    def replace_vectors(self, vectors, label: Optional[str] = None) -> "FrameSystem":
        return FrameSystem(
            vectors=np.asarray(vectors, dtype=complex),
            index_positions=self.index_positions,
            label=self.label if label is None else label,
            geometry=self.geometry,
            provenance=self.provenance,
        )


@dataclass(frozen=True)
class FrameBounds:
    """Optimal frame constants: extremal eigenvalues of the frame operator."""

    lower: float
    upper: float

    def __post_init__(self):
        if not (0 < self.lower <= self.upper):
            raise ValueError(f"invalid frame bounds ({self.lower}, {self.upper})")

    @property
    def condition(self) -> float:
        return self.upper / self.lower


@dataclass(frozen=True)
class DualPair:
    """A frame together with a dual reconstructing the identity."""

    frame: FrameSystem
    dual: FrameSystem

    def __post_init__(self):
        f, d = self.frame, self.dual
        if f.dim != d.dim or f.size != d.size:
            raise ShapeMismatch("frame and dual must share dim and size")
        if not np.array_equal(f.index_positions, d.index_positions):
            raise ShapeMismatch("frame and dual must share index positions")


def analysis(f: FrameSystem, vec) -> np.ndarray:
    """Coefficient sequence (<vec, g_n>)_n."""
    v = np.asarray(vec, dtype=complex)
    if v.shape != (f.dim,):
        raise DimensionMismatch(f"expected a vector of length {f.dim}")
    return f.vectors.conj() @ v


def synthesis(f: FrameSystem, coeffs) -> np.ndarray:
    """Weighted sum sum_n c_n g_n."""
    c = np.asarray(coeffs, dtype=complex)
    if c.shape != (f.size,):
        raise LengthMismatch(f"expected {f.size} coefficients")
    return f.vectors.T @ c


def synthesis_matrix(f: FrameSystem) -> np.ndarray:
    """The d x N matrix whose columns are the frame vectors."""
    return f.vectors.T.copy()


def frame_operator(f: FrameSystem) -> np.ndarray:
    """S = sum_n g_n g_n^*, Hermitian positive semidefinite, d x d."""
    v = f.vectors.T
    return v @ v.conj().T


def frame_bounds(f: FrameSystem) -> FrameBounds:
    """Extremal eigenvalues of the frame operator; raises NotAFrame
    when the system is numerically rank-deficient."""
    eig = hermitian_eig(frame_operator(f))
    lo = float(eig.eigenvalues[0])
    hi = float(eig.eigenvalues[-1])
    if hi <= 0 or lo <= NOT_A_FRAME_RTOL * hi:
        raise NotAFrame(
            f"system does not span: eigenvalues in [{lo:.3e}, {hi:.3e}]"
        )
    return FrameBounds(lower=lo, upper=hi)


def _inverse_frame_operator_factors(f: FrameSystem):
    eig = hermitian_eig(frame_operator(f))
    lo = float(eig.eigenvalues[0])
    hi = float(eig.eigenvalues[-1])
    if hi <= 0 or lo <= NOT_A_FRAME_RTOL * hi:
        raise NotAFrame(
            f"system does not span: eigenvalues in [{lo:.3e}, {hi:.3e}]"
        )
    return eig


def canonical_dual(f: FrameSystem) -> DualPair:
    """Pair (F, S^{-1} F)."""
    eig = _inverse_frame_operator_factors(f)
    v = eig.eigenvectors
    s_inv = (v / eig.eigenvalues) @ v.conj().T
    dual_vectors = f.vectors @ s_inv.T
    dual = f.replace_vectors(
        dual_vectors, label=f"{f.label}~" if f.label else "canonical dual"
    )
    return DualPair(frame=f, dual=dual)


def parseval_normalization(f: FrameSystem) -> FrameSystem:
    """S^{-1/2} F: a Parseval frame spanning the same space.

    Its frame operator is the identity, so analysis with it is an isometry;
    it is self-dual, which makes it the safe localization reference for the
    perturbation certificates.
    """
    eig = _inverse_frame_operator_factors(f)
    v = eig.eigenvectors
    s_inv_half = (v / np.sqrt(eig.eigenvalues)) @ v.conj().T
    return f.replace_vectors(
        f.vectors @ s_inv_half.T,
        label=f"{f.label} (parseval)" if f.label else "parseval",
    )


def reconstruct(pair: DualPair, vec):
    """Sum_n <vec, dual_n> frame_n, plus the relative residual."""
    v = np.asarray(vec, dtype=complex)
    if v.shape != (pair.frame.dim,):
        raise DimensionMismatch(f"expected a vector of length {pair.frame.dim}")
    coeffs = analysis(pair.dual, v)
    rec = synthesis(pair.frame, coeffs)
    denom = float(np.linalg.norm(v))
    residual = float(np.linalg.norm(rec - v)) / denom if denom > 0 else 0.0
    return rec, residual


def cross_gramian_entries(g: FrameSystem, f: FrameSystem) -> np.ndarray:
    """N_G x N_F matrix with entries <g_n, f_x>."""
    if g.dim != f.dim:
        raise DimensionMismatch("cross-Gramian requires matching dimensions")
    return g.vectors @ f.vectors.conj().T


def difference_system(e: FrameSystem, f: FrameSystem) -> FrameSystem:
    """Elementwise difference {e_n - f_n}, index positions preserved."""
    if e.dim != f.dim or e.size != f.size:
        raise ShapeMismatch("difference requires matching shapes")
    if not np.array_equal(e.index_positions, f.index_positions):
        raise ShapeMismatch("difference requires matching index positions")
    return e.replace_vectors(e.vectors - f.vectors, label="difference")
