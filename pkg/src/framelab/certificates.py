"""Perturbation stability certificates.

Each certificate evaluates a checkable hypothesis on a perturbed system E
against a reference frame F (and a localization reference pair (G, G~)),
emits the bounds the corresponding stability theorem predicts, and checks
them against ground-truth spectral computation. A certificate whose
hypothesis holds while E fails the frame test contradicts the theorem and
raises TheoremContradiction instead of reporting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from .errors import Ch2Violated, NotAFrame, ShapeMismatch, TheoremContradiction
from .frames import (
    DualPair,
    FrameBounds,
    FrameSystem,
    canonical_dual,
    difference_system,
    frame_bounds,
    synthesis_matrix,
)
from .geometry import IndexGeometry
from .hp import (
    INF,
    AtomicDecompositionBounds,
    HpSpec,
    atomic_bounds,
    vector_p_norm,
)
from .linalg import spectral_norm
from .localization import GramianMatrix, SchurWeight, cross_gramian, gramian, schur_norm
from .rng import SplitMix64

BRACKETING_RTOL = 1e-9
SAMPLED_CHECK_TOL = 1e-10


@dataclass(frozen=True)
class PerturbationContext:
    """Reference frame F, perturbed system E, localization pair (G, G~)."""

    reference: FrameSystem
    perturbed: FrameSystem
    localization_pair: DualPair
    geometry: Optional[IndexGeometry] = None

    def __post_init__(self):
        f, e = self.reference, self.perturbed
        if f.dim != e.dim or f.size != e.size:
            raise ShapeMismatch("reference and perturbed systems must match in shape")
        if self.localization_pair.frame.dim != f.dim:
            raise ShapeMismatch("localization pair dimension mismatch")
        if self.geometry is None:
            object.__setattr__(self, "geometry", f.geometry)

    @property
    def difference(self) -> FrameSystem:
        return difference_system(self.perturbed, self.reference)


@dataclass
class CertificateReport:
    certificate_id: str
    hypothesis_values: Dict[str, float]
    hypothesis_holds: bool
    predicted_bounds: Optional[FrameBounds] = None
    actual_bounds: Optional[FrameBounds] = None
    predicted_per_p: Optional[Dict[float, Tuple[float, float]]] = None
    actual_per_p: Optional[Dict[float, AtomicDecompositionBounds]] = None
    bracketing_ok: bool = True
    notes: str = ""


def _difference_cross_gramian(ctx: PerturbationContext) -> GramianMatrix:
    """Cross-Gramian of {e_n - f_n} against the localization dual G~."""
    return cross_gramian(ctx.difference, ctx.localization_pair.dual)


def _actual_bounds_or_contradiction(ctx, hypothesis_holds, certificate_id):
    try:
        return frame_bounds(ctx.perturbed)
    except NotAFrame:
        if hypothesis_holds:
            raise TheoremContradiction(
                f"{certificate_id}: hypothesis holds but perturbed system is "
                "not a frame"
            )
        return None


def _bracket(predicted: FrameBounds, actual: FrameBounds, scale: float) -> bool:
    tol = BRACKETING_RTOL * scale
    return (
        predicted.lower <= actual.lower + tol
        and actual.upper <= predicted.upper + tol
    )


def _finish(report: CertificateReport, ctx: PerturbationContext,
            scale: float) -> CertificateReport:
    actual = _actual_bounds_or_contradiction(
        ctx, report.hypothesis_holds, report.certificate_id
    )
    report.actual_bounds = actual
    if report.hypothesis_holds and report.predicted_bounds is not None:
        report.bracketing_ok = _bracket(report.predicted_bounds, actual, scale)
    else:
        report.bracketing_ok = True
        if not report.notes:
            report.notes = "hypothesis does not hold; no bounds predicted"
    return report


def cert_christensen(ctx: PerturbationContext) -> CertificateReport:
    """Quadratic-sum certificate: R = sum ||e_n - f_n||^2 < A.

    The enforced upper bound is B(1 + sqrt(R/B))^2; the printed variant
    B(1 - sqrt(R/B))^2 is recorded alongside but never asserted.
    """
    ab = frame_bounds(ctx.reference)
    d = ctx.difference.vectors
    r = float(np.sum(np.abs(d) ** 2))
    holds = r < ab.lower
    values = {
        "R": r,
        "A": ab.lower,
        "B": ab.upper,
        "upper_plus_form": ab.upper * (1.0 + math.sqrt(r / ab.upper)) ** 2,
        "upper_printed_form": ab.upper * (1.0 - math.sqrt(r / ab.upper)) ** 2,
    }
    report = CertificateReport(
        certificate_id="christensen",
        hypothesis_values=values,
        hypothesis_holds=holds,
        notes="upper bound enforced in the (1 + sqrt(R/B))^2 form",
    )
    if holds:
        report.predicted_bounds = FrameBounds(
            lower=ab.lower * (1.0 - math.sqrt(r / ab.lower)) ** 2,
            upper=values["upper_plus_form"],
        )
    return _finish(report, ctx, ab.upper)


def cert_mixed_norm(ctx: PerturbationContext) -> CertificateReport:
    """Mixed H^1/H^inf certificate: eps = max(sup-row, total-max) < sqrt(A)."""
    ab = frame_bounds(ctx.reference)
    m = np.abs(_difference_cross_gramian(ctx).entries)
    m1 = float(m.sum(axis=1).max())        # sup_n ||e_n - f_n||_{H^1}
    minf = float(m.max(axis=1).sum()) if m.size else 0.0  # sum_n ||.||_{H^inf}
    eps = max(m1, minf)
    holds = eps < math.sqrt(ab.lower)
    report = CertificateReport(
        certificate_id="mixed_norm",
        hypothesis_values={"m1": m1, "minf": minf, "eps": eps,
                           "A": ab.lower, "B": ab.upper},
        hypothesis_holds=holds,
    )
    if holds:
        report.predicted_bounds = FrameBounds(
            lower=ab.lower * (1.0 - eps / math.sqrt(ab.lower)) ** 2,
            upper=ab.upper * (1.0 + eps / math.sqrt(ab.upper)) ** 2,
        )
    return _finish(report, ctx, ab.upper)


def cert_casazza_christensen(ctx: PerturbationContext,
                             lam: Optional[float] = None,
                             mu: Optional[float] = None,
                             seed: int = 0,
                             check_samples: int = 100) -> CertificateReport:
    """(lambda, mu) certificate: lambda + mu / sqrt(A) < 1.

    Auto mode (both constants omitted) uses lambda = 0 and mu = the exact
    spectral norm of the difference synthesis operator. Explicitly supplied
    constants are validated on sampled coefficient sequences and refused
    (Ch2Violated) when a sample refutes the claimed inequality.
    """
    if (lam is None) != (mu is None):
        raise ValueError("supply both lambda and mu, or neither")
    ab = frame_bounds(ctx.reference)
    d_syn = synthesis_matrix(ctx.difference)
    if lam is None:
        lam, mu = 0.0, spectral_norm(d_syn)
        mode = "auto"
    else:
        if lam < 0 or mu < 0:
            raise ValueError("lambda and mu must be >= 0")
        mode = "explicit"
        f_syn = synthesis_matrix(ctx.reference)
        rng = SplitMix64(seed)
        n = ctx.reference.size
        for i in range(check_samples):
            c = np.array([rng.complex_gaussian() for _ in range(n)])
            lhs = float(np.linalg.norm(d_syn @ c))
            rhs = (lam * float(np.linalg.norm(f_syn @ c))
                   + mu * float(np.linalg.norm(c)))
            if lhs > rhs + SAMPLED_CHECK_TOL * max(1.0, rhs):
                raise Ch2Violated(
                    f"sample {i}: ||D_(E-F) c|| = {lhs:.6e} exceeds "
                    f"lambda ||D_F c|| + mu ||c|| = {rhs:.6e}"
                )
    gate = lam + mu / math.sqrt(ab.lower)
    holds = gate < 1.0
    report = CertificateReport(
        certificate_id="casazza_christensen",
        hypothesis_values={"lambda": lam, "mu": mu, "gate": gate,
                           "A": ab.lower, "B": ab.upper},
        hypothesis_holds=holds,
        notes=f"{mode} mode",
    )
    if holds:
        report.predicted_bounds = FrameBounds(
            lower=ab.lower * (1.0 - gate) ** 2,
            upper=ab.upper * (1.0 + lam + mu / math.sqrt(ab.upper)) ** 2,
        )
    return _finish(report, ctx, ab.upper)


def cert_schur_localized(ctx: PerturbationContext,
                         w: SchurWeight = SchurWeight(0.0)) -> CertificateReport:
    """Schur-norm certificate on the difference cross-Gramian.

    The hypothesis and bounds are evaluated at s = 0, which is where the
    stability statement lives; a weight with s > 0 only adds the heavier
    localization degree of the difference to the report.
    """
    ab = frame_bounds(ctx.reference)
    diff_gram = _difference_cross_gramian(ctx)
    eps = schur_norm(diff_gram, SchurWeight(0.0), ctx.geometry)
    gamma = schur_norm(gramian(ctx.localization_pair.frame),
                       SchurWeight(0.0), ctx.geometry)
    factor = math.sqrt(gamma / ab.lower)
    holds = eps * factor < 1.0
    values = {"eps": eps, "gamma": gamma, "A": ab.lower, "B": ab.upper}
    if w.s > 0:
        values[f"eps_s{w.s:g}"] = schur_norm(diff_gram, w, ctx.geometry)
    report = CertificateReport(
        certificate_id="schur_localized",
        hypothesis_values=values,
        hypothesis_holds=holds,
    )
    if holds:
        report.predicted_bounds = FrameBounds(
            lower=ab.lower * (1.0 - factor * eps) ** 2,
            upper=ab.upper * (1.0 + math.sqrt(gamma / ab.upper) * eps) ** 2,
        )
    return _finish(report, ctx, ab.upper)


@dataclass(frozen=True)
class ChainReport:
    """Evaluation of the ordered implications i) => ii) => iii)."""

    eps: float
    q_i: float
    q_ii: float
    q_iii: float
    gamma: float
    i_holds: bool
    ii_holds: bool
    implication_i_ii_ok: bool
    implication_ii_iii_ok: bool
    sampled_iii_ok: bool
    worst_sample_slack: float


def implication_chain(ctx: PerturbationContext, eps: float,
                      seed: int = 0, samples: int = 100) -> ChainReport:
    """Check the implication chain among the three smallness conditions.

    q_i sums per-element H^inf norms of the difference; q_ii is the
    sup-column-sum of the difference cross-Gramian; the iii) bound
    ||sum c_n (e_n - f_n)|| <= sqrt(gamma) * eps * ||c||_2 is sampled on
    random coefficient sequences.
    """
    m = np.abs(_difference_cross_gramian(ctx).entries)
    q_i = float(m.max(axis=1).sum()) if m.size else 0.0
    q_ii = float(m.sum(axis=0).max()) if m.size else 0.0
    gamma = schur_norm(gramian(ctx.localization_pair.frame),
                       SchurWeight(0.0), ctx.geometry)
    d_syn = synthesis_matrix(ctx.difference)
    q_iii = spectral_norm(d_syn) / math.sqrt(gamma)
    i_holds = q_i <= eps
    ii_holds = q_ii <= eps
    bound = math.sqrt(gamma) * eps
    rng = SplitMix64(seed)
    worst = -math.inf
    ok = True
    n = ctx.reference.size
    for _ in range(samples):
        c = np.array([rng.complex_gaussian() for _ in range(n)])
        lhs = float(np.linalg.norm(d_syn @ c))
        slack = lhs - bound * float(np.linalg.norm(c))
        worst = max(worst, slack)
        if slack > SAMPLED_CHECK_TOL * max(1.0, bound):
            ok = False
    return ChainReport(
        eps=eps,
        q_i=q_i,
        q_ii=q_ii,
        q_iii=q_iii,
        gamma=gamma,
        i_holds=i_holds,
        ii_holds=ii_holds,
        implication_i_ii_ok=(not i_holds) or ii_holds,
        implication_ii_iii_ok=(not ii_holds) or ok,
        sampled_iii_ok=ok,
        worst_sample_slack=worst,
    )


def cert_atomic_stability(ctx: PerturbationContext,
                          p_list: Sequence[float] = (1.0, 2.0, INF),
                          samples: int = 200,
                          seed: int = 0) -> CertificateReport:
    """Atomic-decomposition stability across a list of exponents p.

    eps is the s = 0 Schur norm of the difference cross-Gramian against the
    localization dual; reference bounds (A_p, B_p) come from the reference
    frame with its canonical dual, and predicted perturbed bounds are
    A_p/(1 + eps B_p) and B_p/(1 - eps B_p). Actual bounds are measured for
    the dual that realizes them: the reference dual transformed by the
    inverse of T = (synthesis with E) o (analysis with the reference dual),
    which is a dual of E whenever T is invertible. (The canonical dual of E
    is optimal only in the p = 2 sense and may sit outside the predicted
    window for p = 1 or inf.) The intermediate inequality
    ||sum c_n (e_n - f_n)||_Hp <= eps ||c||_p is additionally sampled at
    p in {1, 2, inf}.
    """
    p_list = [float(p) for p in p_list]
    diff_gram = _difference_cross_gramian(ctx)
    eps = schur_norm(diff_gram, SchurWeight(0.0), ctx.geometry)
    g_pair = ctx.localization_pair
    f_pair = canonical_dual(ctx.reference)
    loc_degree = schur_norm(
        cross_gramian(ctx.reference, g_pair.frame), SchurWeight(0.0), ctx.geometry
    )
    reference_bounds: Dict[float, AtomicDecompositionBounds] = {}
    for p in p_list:
        spec = HpSpec(reference=g_pair, p=p)
        reference_bounds[p] = atomic_bounds(
            ctx.reference, f_pair.dual, spec, samples=samples, seed=seed
        )
    b_sup = max(b.upper for b in reference_bounds.values())
    holds = eps < 1.0 / b_sup
    values = {"eps": eps, "B_sup": b_sup, "F_localization_degree": loc_degree}
    for p, b in reference_bounds.items():
        key = "inf" if p == INF else f"{p:g}"
        values[f"A_{key}"] = b.lower
        values[f"B_{key}"] = b.upper
    report = CertificateReport(
        certificate_id="atomic_stability",
        hypothesis_values=values,
        hypothesis_holds=holds,
    )

    try:
        canonical_dual(ctx.perturbed)
    except NotAFrame:
        if holds:
            raise TheoremContradiction(
                "atomic_stability: hypothesis holds but perturbed system is "
                "not a frame"
            )
        report.notes = "perturbed system is not a frame; hypothesis fails"
        return report

    values["gamma_E"] = schur_norm(
        gramian(ctx.perturbed), SchurWeight(0.0), ctx.geometry
    )

    if not holds:
        report.notes = "hypothesis does not hold; no bounds predicted"
        return report

    # Dual of E realizing the predicted bounds: reference dual mapped through
    # T^{-*} where T f = sum_n <f, f~_n> e_n (invertible under the gate).
    t = synthesis_matrix(ctx.perturbed) @ f_pair.dual.vectors.conj()
    dual_e = f_pair.dual.replace_vectors(
        f_pair.dual.vectors @ np.linalg.inv(t).conj()
    )

    predicted: Dict[float, Tuple[float, float]] = {}
    actual: Dict[float, AtomicDecompositionBounds] = {}
    ok = True
    for p in p_list:
        ref = reference_bounds[p]
        lo = ref.lower / (1.0 + eps * ref.upper)
        hi = ref.upper / (1.0 - eps * ref.upper)
        predicted[p] = (lo, hi)
        spec = HpSpec(reference=g_pair, p=p)
        # Same sample set as the reference bounds so the E = F case is exact.
        act = atomic_bounds(ctx.perturbed, dual_e, spec,
                            samples=samples, seed=seed)
        actual[p] = act
        tol = BRACKETING_RTOL * max(ref.upper, 1.0)
        if act.lower < lo - tol:
            ok = False
        if act.upper_method == "exact" and act.upper > hi + tol:
            ok = False

    # Proof's intermediate claim, rigorous via the Schur test.
    mt = diff_gram.entries.T
    rng = SplitMix64(seed + 2)
    n = ctx.reference.size
    intermediate_ok = True
    for _ in range(100):
        c = np.array([rng.complex_gaussian() for _ in range(n)])
        for p in (1.0, 2.0, INF):
            lhs = vector_p_norm(mt @ c, p)
            rhs = eps * vector_p_norm(c, p)
            if lhs > rhs + SAMPLED_CHECK_TOL * max(1.0, rhs):
                intermediate_ok = False
    values["intermediate_bound_ok"] = float(intermediate_ok)

    report.predicted_per_p = predicted
    report.actual_per_p = actual
    report.bracketing_ok = ok and intermediate_ok
    return report


CERTIFICATES = {
    "christensen": cert_christensen,
    "mixed": cert_mixed_norm,
    "cc": cert_casazza_christensen,
    "schur": cert_schur_localized,
    "atomic": cert_atomic_stability,
}
