"""Small dense linear algebra with pinned tolerances.

Everything downstream funnels its matrix work through these wrappers so
the tolerance policy lives in exactly one place.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonHermitian, SingularSystem


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds used across the package.

    herm:     max |H - H^dag| entry accepted as Hermitian
    eig:      eigenvector residual bound |H v - w v|
    psd:      eigenvalue floor accepted as positive semidefinite
    tie:      amplitude gap treated as a tie
    cond:     slack on measurement-weight nonnegativity
    singular: determinant cutoff (relative to norm^3) for 3x3 solves
    """

    herm: float = 1e-12
    eig: float = 1e-10
    psd: float = 1e-9
    tie: float = 1e-9
    cond: float = 1e-10
    singular: float = 1e-13


TOL = Tolerances()


def hermitian_eigen(h):
    """Eigendecomposition of a Hermitian matrix.

    args:    h -- square array-like, Hermitian within TOL.herm
    returns: (w, v) with eigenvalues w ascending and eigenvector columns
             v[:, i] orthonormal, h @ v[:, i] == w[i] * v[:, i]
    raises:  NonHermitian if the symmetry residual is above tolerance
    """
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise NonHermitian(f"expected a square matrix, got shape {h.shape}")
    skew = np.max(np.abs(h - h.conj().T))
    if skew > TOL.herm:
        raise NonHermitian(f"symmetry residual {skew:.3e} exceeds {TOL.herm:.1e}")
    w, v = np.linalg.eigh(h)
    return w, v


def psd_check(h, tol=TOL.psd):
    """True iff every eigenvalue of Hermitian h is >= -tol."""
    w, _ = hermitian_eigen(h)
    return bool(w[0] >= -tol)


def _lu3(m):
    """LU factorization with partial pivoting of a 3x3 real matrix.

    returns: (lu, perm, det) where lu holds L (unit diagonal, below) and U
             (on and above), perm maps factored row -> original row.
    """
    lu = [[float(m[i][j]) for j in range(3)] for i in range(3)]
    perm = [0, 1, 2]
    det = 1.0
    for col in range(3):
        pivot = max(range(col, 3), key=lambda r: abs(lu[r][col]))
        if pivot != col:
            lu[col], lu[pivot] = lu[pivot], lu[col]
            perm[col], perm[pivot] = perm[pivot], perm[col]
            det = -det
        diag = lu[col][col]
        det *= diag
        if diag == 0.0:
            return lu, perm, 0.0
        for row in range(col + 1, 3):
            factor = lu[row][col] / diag
            lu[row][col] = factor
            for k in range(col + 1, 3):
                lu[row][k] -= factor * lu[col][k]
    return lu, perm, det


def _lu3_solve(lu, perm, b):
    y = [float(b[perm[i]]) for i in range(3)]
    for i in range(1, 3):
        for j in range(i):
            y[i] -= lu[i][j] * y[j]
    x = y
    for i in (2, 1, 0):
        for j in range(i + 1, 3):
            x[i] -= lu[i][j] * x[j]
        x[i] /= lu[i][i]
    return x


def solve3(m, b):
    """Solve the real 3x3 system m @ u = b.

    One iterative-refinement step keeps the residual near machine level
    even when m mixes entries of very different magnitude.

    returns: u as a tuple of three floats with
             max |m @ u - b| <= 1e-10 * max(1, max |b|)
    raises:  SingularSystem on an exactly singular matrix or if the
             residual bound cannot be met
    """
    rows = [[float(m[i][j]) for j in range(3)] for i in range(3)]
    rhs = [float(b[i]) for i in range(3)]
    # no a-priori determinant cutoff: any scale-based threshold misjudges
    # matrices whose large entries sit in a column the determinant never
    # touches.  The residual postcondition is the actual contract; a
    # degenerate system either hits a zero pivot or fails it.
    lu, perm, det = _lu3(rows)
    if det == 0.0 or not math.isfinite(det):
        raise SingularSystem(f"exact zero pivot, det {det}")
    x = _lu3_solve(lu, perm, rhs)
    if not all(math.isfinite(v) for v in x):
        raise SingularSystem("overflow while solving; matrix numerically singular")
    resid = [rhs[i] - sum(rows[i][j] * x[j] for j in range(3)) for i in range(3)]
    dx = _lu3_solve(lu, perm, resid)
    x = [x[i] + dx[i] for i in range(3)]
    resid = max(abs(rhs[i] - sum(rows[i][j] * x[j] for j in range(3))) for i in range(3))
    if not resid <= 1e-10 * max(1.0, max(abs(v) for v in rhs)):
        raise SingularSystem(f"refined residual {resid:.3e} still above bound")
    return tuple(x)
