"""Dense complex Hermitian linear algebra: the oracle layer.

Eigendecomposition is a hand-rolled cyclic Jacobi iteration on the
(symmetrized) Hermitian matrix. numpy is used for array arithmetic only;
tests cross-check the eigensolver against an independent reference.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NoConvergence, NotHermitian, SingularOperator

HERMITIAN_RTOL = 1e-12
MAX_SWEEPS = 64


@dataclass(frozen=True)
class EigenResult:
    """Ascending eigenvalues and a column-orthonormal eigenvector matrix."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise ValueError("expected a 2-d matrix with at least one entry")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    return a


def _offdiag_fro(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def hermitian_eig(m, tol: float = 1e-14) -> EigenResult:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi sweeps.

    The input is symmetrized as (M + M*)/2 before iteration; a relative
    deviation from Hermitian symmetry beyond 1e-12 raises NotHermitian.
    Sweeps stop once the off-diagonal Frobenius mass falls below
    max(tol, 1e-14) * ||M||_F, with a cap of 64 sweeps.
    """
    a = _as_matrix(m)
    n, nc = a.shape
    if n != nc:
        raise NotHermitian("matrix is not square")
    scale = float(np.max(np.abs(a)))
    if scale > 0:
        dev = float(np.max(np.abs(a - a.conj().T)))
        if dev > HERMITIAN_RTOL * scale:
            raise NotHermitian(f"relative Hermitian deviation {dev / scale:.3e}")
    a = 0.5 * (a + a.conj().T)
    fro = float(np.linalg.norm(a))
    threshold = max(tol, 1e-14) * max(fro, np.finfo(float).tiny)
    v = np.eye(n, dtype=complex)

    converged = fro == 0.0 or n == 1
    for _ in range(MAX_SWEEPS):
        if converged or _offdiag_fro(a) <= threshold:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= 1e-300:
                    continue
                phase = apq / mag
                app = a[p, p].real
                aqq = a[q, q].real
                # Rotation angle for the phase-aligned real 2x2 block.
                tau = (aqq - app) / (2.0 * mag)
                if tau >= 0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # Columns of the unitary J restricted to (p, q).
                jp = np.array([c * phase, -s], dtype=complex)
                jq = np.array([s * phase, c], dtype=complex)
                cols = a[:, [p, q]].copy()
                a[:, p] = cols @ jp
                a[:, q] = cols @ jq
                rows = a[[p, q], :].copy()
                a[p, :] = jp.conj() @ rows
                a[q, :] = jq.conj() @ rows
                a[p, q] = 0.0
                a[q, p] = 0.0
                vcols = v[:, [p, q]].copy()
                v[:, p] = vcols @ jp
                v[:, q] = vcols @ jq
    else:
        if _offdiag_fro(a) > threshold:
            raise NoConvergence(f"Jacobi did not converge in {MAX_SWEEPS} sweeps")

    evals = np.diag(a).real.copy()
    order = np.argsort(evals, kind="stable")
    return EigenResult(eigenvalues=evals[order], eigenvectors=v[:, order])


def solve_hpd(m, b) -> np.ndarray:
    """Solve M x = b for Hermitian positive definite M.

    Raises SingularOperator when the smallest eigenvalue is not safely
    positive (min <= 1e-12 * max), which for frame operators signals that
    the system does not span.
    """
    a = _as_matrix(m)
    rhs = np.asarray(b, dtype=complex)
    if rhs.shape[0] != a.shape[0]:
        raise ValueError("right-hand side length does not match matrix size")
    eig = hermitian_eig(a)
    lo = float(eig.eigenvalues[0])
    hi = float(eig.eigenvalues[-1])
    if hi <= 0 or lo <= 1e-12 * hi:
        raise SingularOperator(
            f"matrix is numerically singular (min={lo:.3e}, max={hi:.3e})"
        )
    v = eig.eigenvectors
    return v @ ((v.conj().T @ rhs).T / eig.eigenvalues).T


def spectral_norm(m) -> float:
    """Largest singular value, via the Gram matrix of the smaller side."""
    a = _as_matrix(m)
    if not np.any(a):
        return 0.0
    if a.shape[0] >= a.shape[1]:
        g = a.conj().T @ a
    else:
        g = a @ a.conj().T
    top = float(hermitian_eig(g).eigenvalues[-1])
    return float(np.sqrt(max(top, 0.0)))
