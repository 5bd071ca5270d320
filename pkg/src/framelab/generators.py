"""Reproducible frame families and perturbation injectors.

All randomness flows through the splitmix64 stream in framelab.rng, so a
given (arguments, seed) pair yields a bit-identical system everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .errors import BadLattice, BadShape, JitterOnNonGabor
from .frames import FrameSystem
from .geometry import IndexGeometry
from .rng import SplitMix64


def gen_onb(d: int) -> FrameSystem:
    """Standard orthonormal basis of C^d."""
    if d < 1:
        raise BadShape("dimension must be >= 1")
    return FrameSystem.from_vectors(
        np.eye(d, dtype=complex),
        label=f"onb(d={d})",
        provenance={"generator": "onb", "args": {"d": d}},
    )


def gen_union_onb(d: int, copies: int = 2) -> FrameSystem:
    """Union of `copies` standard bases: a tight frame with A = B = copies."""
    if d < 1 or copies < 1:
        raise BadShape("need d >= 1 and copies >= 1")
    vectors = np.tile(np.eye(d, dtype=complex), (copies, 1))
    return FrameSystem.from_vectors(
        vectors,
        label=f"union_onb(d={d}, copies={copies})",
        provenance={"generator": "union_onb", "args": {"d": d, "copies": copies}},
    )


def gen_harmonic(d: int, n: int) -> FrameSystem:
    """First d coordinates of the N-point Fourier vectors, tight with A = N/d."""
    if n < d or d < 1:
        raise BadShape("harmonic frame needs N >= d >= 1")
    k = np.arange(d)
    rows = np.exp(2j * np.pi * np.outer(np.arange(n), k) / n) / np.sqrt(d)
    return FrameSystem.from_vectors(
        rows,
        label=f"harmonic(d={d}, N={n})",
        geometry=IndexGeometry.circular(n),
        provenance={"generator": "harmonic", "args": {"d": d, "n": n}},
    )


def _modulate_translate(window: np.ndarray, t: float, f: float) -> np.ndarray:
    """pi(t, f) g on Z_d with fractional shifts realized in Fourier domain."""
    d = window.shape[0]
    freqs = np.fft.fftfreq(d, d=1.0 / d)
    shifted = np.fft.ifft(np.fft.fft(window) * np.exp(-2j * np.pi * freqs * t / d))
    return np.exp(2j * np.pi * f * np.arange(d) / d) * shifted


def gen_gabor(d: int, a: int = 1, b: int = 1,
              window: Optional[np.ndarray] = None) -> FrameSystem:
    """Gabor system on the cyclic group Z_d with lattice steps (a, b).

    Elements are modulations by multiples of b of translations by multiples
    of a applied to the window, ordered lexicographically by (time, freq).
    The full lattice a = b = 1 is tight with A = d * ||g||^2.
    """
    if d < 1 or a < 1 or b < 1 or d % a != 0 or d % b != 0:
        raise BadLattice("lattice steps must divide the group order")
    if window is None:
        g = np.exp(-np.pi * ((np.arange(d) - d / 2.0) ** 2) / (d / 4.0))
        g = g / np.linalg.norm(g)
    else:
        g = np.asarray(window, dtype=complex)
        if g.shape != (d,) or not np.any(g):
            raise BadLattice("window must be a nonzero vector of length d")
    n_time = d // a
    n_freq = d // b
    vectors = np.empty((n_time * n_freq, d), dtype=complex)
    idx = 0
    for jt in range(n_time):
        for jf in range(n_freq):
            vectors[idx] = _modulate_translate(g, a * jt, b * jf)
            idx += 1
    period = n_time * n_freq
    return FrameSystem.from_vectors(
        vectors,
        label=f"gabor(d={d}, a={a}, b={b})",
        geometry=IndexGeometry.circular(period),
        provenance={
            "generator": "gabor",
            "args": {"d": d, "a": a, "b": b},
            "window": [[float(z.real), float(z.imag)] for z in g],
        },
    )


def gen_exp_localized(d: int, n: int, decay: float, seed: int = 0) -> FrameSystem:
    """Random localized frame whose Gramian decays under decay^distance.

    Unit-norm periodic Gaussian bumps on Z_d, centered at N equispaced
    (seed-jittered) positions and multiplied by seeded random phases. The
    bump sharpness is chosen so neighboring correlations sit at the decay
    ratio, which pins |<v_n, v_m>| under decay^distance on the circular
    index geometry.
    """
    if not (0 < decay < 1):
        raise BadShape("decay must lie in (0, 1)")
    if n < d or d < 1:
        raise BadShape("need N >= d >= 1")
    rng = SplitMix64(seed)
    sharp = 4.0 * np.log(1.0 / decay) * (n / d) ** 2
    grid = np.arange(d)
    vectors = np.empty((n, d), dtype=complex)
    for i in range(n):
        node = rng.derive(i)
        center = (i + 0.1 * (node.uniform() - 0.5)) * d / n
        wrapped = np.mod(grid - center + d / 2.0, d) - d / 2.0
        bump = np.exp(-(sharp / 2.0) * wrapped**2)
        phase = np.exp(2j * np.pi * node.uniform())
        vectors[i] = phase * bump / np.linalg.norm(bump)
    geom = IndexGeometry.circular(n)
    return FrameSystem.from_vectors(
        vectors,
        label=f"exp_localized(d={d}, N={n}, r={decay})",
        geometry=geom,
        provenance={
            "generator": "exp_localized",
            "args": {"d": d, "n": n, "decay": decay, "seed": seed},
        },
    )


@dataclass(frozen=True)
class PerturbationSpec:
    """Seeded description of how a frame is perturbed."""

    kind: str  # additive_noise | lattice_jitter | quantize | dual_truncate
    magnitude: Union[float, np.ndarray]
    seed: int = 0

    KINDS = ("additive_noise", "lattice_jitter", "quantize", "dual_truncate")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown perturbation kind {self.kind!r}")
        if np.any(np.asarray(self.magnitude) < 0):
            raise ValueError("magnitudes must be >= 0")

    def magnitudes(self, n: int) -> np.ndarray:
        m = np.asarray(self.magnitude, dtype=float)
        if m.ndim == 0:
            return np.full(n, float(m))
        if m.shape != (n,):
            raise ValueError(f"expected {n} per-element magnitudes")
        return m


def _unit_sphere(rng: SplitMix64, d: int) -> np.ndarray:
    while True:
        v = np.array([rng.complex_gaussian() for _ in range(d)])
        norm = np.linalg.norm(v)
        if norm > 1e-12:
            return v / norm


def perturb(f: FrameSystem, spec: PerturbationSpec) -> FrameSystem:
    """Apply a perturbation, returning a system with the same shape."""
    eps = spec.magnitudes(f.size)
    if spec.kind == "additive_noise":
        rng = SplitMix64(spec.seed)
        vectors = f.vectors.copy()
        for i in range(f.size):
            if eps[i] > 0:
                vectors[i] = vectors[i] + eps[i] * _unit_sphere(rng.derive(i), f.dim)
        label = "noisy"
    elif spec.kind == "quantize":
        vectors = f.vectors.copy()
        for i in range(f.size):
            step = eps[i]
            if step > 0:
                vectors[i] = (
                    np.round(vectors[i].real / step) * step
                    + 1j * np.round(vectors[i].imag / step) * step
                )
        label = "quantized"
    elif spec.kind == "dual_truncate":
        vectors = f.vectors.copy()
        for i in range(f.size):
            if eps[i] > 0:
                vectors[i] = np.where(np.abs(vectors[i]) < eps[i], 0.0, vectors[i])
        label = "truncated"
    else:  # lattice_jitter
        prov = f.provenance or {}
        if prov.get("generator") != "gabor":
            raise JitterOnNonGabor("lattice_jitter needs Gabor provenance metadata")
        args = prov["args"]
        d, a, b = args["d"], args["a"], args["b"]
        window = np.array([complex(re, im) for re, im in prov["window"]])
        rng = SplitMix64(spec.seed)
        vectors = np.empty_like(f.vectors)
        idx = 0
        for jt in range(d // a):
            for jf in range(d // b):
                node = rng.derive(idx)
                dt = node.uniform_range(-eps[idx], eps[idx])
                df = node.uniform_range(-eps[idx], eps[idx])
                vectors[idx] = _modulate_translate(window, a * jt + dt, b * jf + df)
                idx += 1
        label = "jittered"
    out = FrameSystem(
        vectors=vectors,
        index_positions=f.index_positions,
        label=f"{f.label} [{label} {spec.kind}]",
        geometry=f.geometry,
        provenance=None if spec.kind == "lattice_jitter" else f.provenance,
    )
    return out
