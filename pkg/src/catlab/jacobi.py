"""Cyclic Jacobi eigensolver for small dense Hermitian matrices.

Each pivot (p, q) is annihilated by a complex plane rotation: the pivot's
phase is absorbed first, which reduces the 2x2 block to the real symmetric
case, then the classic stable half-angle formulas apply.  Convergence is
quadratic once the off-diagonal mass is small; for the dimensions used here
(<= 16) a handful of sweeps suffices.
"""

from __future__ import annotations

import math

import numpy as np


def eigh(mat: np.ndarray, tol: float = 1e-12, max_sweeps: int = 64) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecompose a Hermitian matrix.

    Returns ``(w, v)`` with eigenvalues ``w`` sorted ascending and the
    matching eigenvectors as columns of the unitary ``v``.  The input is
    symmetrised before iterating, so tiny Hermiticity dust is tolerated.
    """
    a = np.asarray(mat, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("eigh expects a square matrix")
    n = a.shape[0]
    a = (a + a.conj().T) / 2.0
    v = np.eye(n, dtype=np.complex128)
    if n == 1:
        return np.array([a[0, 0].real]), v

    # absolute threshold; matrices here are unit-trace scaled
    scale = max(1.0, float(np.max(np.abs(a))))
    stop = tol * scale
    for _ in range(max_sweeps):
        off = _max_offdiag(a)
        if off <= stop:
            break
        # rotating pivots well below the current off-diagonal level is wasted work
        skip = min(stop, off * 1e-3)
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) > skip:
                    _rotate(a, v, p, q)
    else:
        raise RuntimeError("jacobi sweep limit exceeded without convergence")

    w = a.diagonal().real.copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def min_eigenvalue(mat: np.ndarray, tol: float = 1e-12) -> float:
    """Smallest eigenvalue of a Hermitian matrix."""
    return float(eigh(mat, tol=tol)[0][0])


def _max_offdiag(a: np.ndarray) -> float:
    off = np.abs(a.copy())
    np.fill_diagonal(off, 0.0)
    return float(off.max())


def _rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    """Apply one unitary plane rotation zeroing a[p, q] (and a[q, p])."""
    apq = a[p, q]
    r = abs(apq)
    if r == 0.0:
        return
    w = apq / r
    alpha = a[p, p].real
    gamma = a[q, q].real
    tau = (gamma - alpha) / (2.0 * r)
    t = (1.0 if tau >= 0.0 else -1.0) / (abs(tau) + math.hypot(1.0, tau))
    c = 1.0 / math.sqrt(1.0 + t * t)
    s = t * c
    rot = np.array([[c, s], [-np.conj(w) * s, np.conj(w) * c]], dtype=np.complex128)
    a[:, [p, q]] = a[:, [p, q]] @ rot
    a[[p, q], :] = rot.conj().T @ a[[p, q], :]
    # pivot is zero by construction; clear the dust so thresholds see it
    a[p, q] = 0.0
    a[q, p] = 0.0
    v[:, [p, q]] = v[:, [p, q]] @ rot
