"""Plane geometry behind the optimality decision.

Averaging an operator over the cyclic phase rotation kills its
off-diagonal entries, so every outcome of a symmetrized strategy is
characterized by its normalized diagonal: a point in the probability
simplex, drawn here in the plane of two of its coordinates (the pair
picked out by the joint-amplitude rank permutation).

The extremal Alice outcomes map to three such points: the announce
vector, the exclude vector, and the origin (the defer slot).  A
sequential measurement reaching the global optimum exists iff the
uniform point (1/3, 1/3) lies inside their triangle; the triangle's
curved flank is traced by a one-parameter family of vectors indexed by
a level q <= threshold, recovering the announce vertex as q -> -inf and
the exclude vertex at q = threshold.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .errors import DomainError, ZeroOperator
from .numerics import TOL
from .optimality import filter_level
from .states import CanonicalPair, TAU


class PlanePoint(NamedTuple):
    """Two simplex coordinates of a symmetrized outcome."""

    u: float
    v: float


class Triangle(NamedTuple):
    """Extremal outcome points; degenerate marks a collinear triple."""

    e1: PlanePoint
    e2: PlanePoint
    e3: PlanePoint
    degenerate: bool


_ROT = np.diag([1.0 + 0j, TAU, TAU**2])


def symmetrize(t) -> np.ndarray:
    """Average t over the cyclic phase rotation; the result is diagonal
    up to rounding."""
    t = np.asarray(t, dtype=complex)
    out = np.zeros_like(t)
    for k in range(3):
        rk = np.linalg.matrix_power(_ROT, k)
        out += rk @ t @ rk.conj().T
    return out / 3.0


def diagonal_point(t, perm) -> PlanePoint:
    """Normalized symmetrized diagonal of t, read at the permuted slots.

    raises: ZeroOperator when the trace is numerically zero
    """
    d = np.real(np.diag(symmetrize(t)))
    tr = float(d.sum())
    if abs(tr) < 1e-14:
        raise ZeroOperator("cannot normalize a zero-trace operator")
    d = d / tr
    return PlanePoint(u=float(d[perm[1]]), v=float(d[perm[0]]))


def _offsets(pair: CanonicalPair):
    level = filter_level(pair.kb)
    return level, tuple(v**2 - level for v in pair.y)


def outcome_triangle(pair: CanonicalPair) -> Triangle:
    """Triangle of extremal Alice outcomes (generic regime only).

    raises: DomainError off the generic regime, where Bob's lower
            amplitudes tie and both their offsets vanish
    """
    _, z = _offsets(pair)
    if pair.y[1] - pair.y[2] <= TOL.tie or min(abs(v) for v in z) == 0.0:
        raise DomainError("extremal outcomes undefined: a Bob offset vanishes")
    x, perm = pair.x, pair.perm
    v1 = np.array([1.0 / x[n] for n in range(3)], dtype=complex)
    v2 = np.array([1.0 / (x[n] * z[perm[n]]) for n in range(3)], dtype=complex)
    e1 = diagonal_point(np.outer(v1, v1.conj()), perm)
    e2 = diagonal_point(np.outer(v2, v2.conj()), perm)
    e3 = PlanePoint(0.0, 0.0)
    cross = e1.u * e2.v - e1.v * e2.u
    return Triangle(e1=e1, e2=e2, e3=e3, degenerate=abs(cross) < 1e-10)


def level_vector(pair: CanonicalPair, q: float) -> np.ndarray:
    """Unit vector of the extremal family at level q.

    Components go as 1/(x_n (y_{perm[n]}^2 - q)); at q equal to Bob's
    smallest squared amplitude (within 1e-10) the family degenerates to
    the defer basis slot.
    """
    x, y, perm = pair.x, pair.y, pair.perm
    if abs(q - y[2] ** 2) <= 1e-10:
        vec = np.zeros(3, dtype=complex)
        vec[perm[2]] = 1.0
        return vec
    denom = [y[perm[n]] ** 2 - q for n in range(3)]
    if min(abs(d) for d in denom) < 1e-14:
        raise DomainError(f"level {q} hits a squared amplitude; vector undefined")
    vec = np.array([1.0 / (x[n] * denom[n]) for n in range(3)], dtype=complex)
    return vec / np.linalg.norm(vec)


def level_curve(pair: CanonicalPair, samples: int):
    """Points tracing the curved triangle flank, ascending in q.

    The grid maps t in (0, 1] to q = threshold - (1/t - 1), reaching the
    exclude vertex at t = 1; the defer level q = y_2^2 is spliced in.

    returns: list of (q, PlanePoint), length samples + 1
    """
    samples = int(samples)
    if samples < 2:
        raise DomainError(f"need at least 2 samples, got {samples}")
    level, _ = _offsets(pair)
    qs = [level - (samples / i - 1.0) for i in range(1, samples + 1)]
    q_defer = pair.y[2] ** 2
    lo = sum(1 for q in qs if q < q_defer)
    qs.insert(lo, q_defer)
    points = []
    for q in qs:
        vec = level_vector(pair, q)
        points.append((q, diagonal_point(np.outer(vec, vec.conj()), pair.perm)))
    return points


def in_triangle(point: PlanePoint, tri: Triangle, tol: float) -> bool:
    """Barycentric membership test with slack tol on each coordinate.

    A degenerate (collinear) triangle is tested as the segment from e3
    to e1, with tol as the transverse distance allowance.
    """
    p = np.array([point.u - tri.e3.u, point.v - tri.e3.v])
    if not tri.degenerate:
        m = np.array(
            [
                [tri.e1.u - tri.e3.u, tri.e2.u - tri.e3.u],
                [tri.e1.v - tri.e3.v, tri.e2.v - tri.e3.v],
            ]
        )
        det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
        if abs(det) > 1e-18:
            w1 = (p[0] * m[1, 1] - p[1] * m[0, 1]) / det
            w2 = (m[0, 0] * p[1] - m[1, 0] * p[0]) / det
            return bool(min(w1, w2, 1.0 - w1 - w2) >= -tol)
    e = np.array([tri.e1.u - tri.e3.u, tri.e1.v - tri.e3.v])
    ee = float(e @ e)
    if ee == 0.0:
        return bool(math.hypot(*p) <= tol)
    t = float(p @ e) / ee
    dist = math.hypot(*(p - t * e))
    return bool(dist <= tol and -tol <= t <= 1.0 + tol)


def identity_membership(pair: CanonicalPair) -> bool:
    """True iff the uniform point lies in the extremal-outcome triangle;
    agrees with the inequality verdict away from region boundaries."""
    return in_triangle(PlanePoint(1.0 / 3.0, 1.0 / 3.0), outcome_triangle(pair), 1e-9)


def chord_ratio(pair: CanonicalPair, q: float) -> float:
    """Chord ratio (u_1^2 - u_0^2) / (u_2^2 - u_0^2) of the curve
    parametrization, with u_k = 1/(y_k^2 - q).  At q = threshold the
    offset-reciprocal identity makes it equal its q -> -inf limit."""
    y = pair.y
    u = [1.0 / (y[k] ** 2 - q) for k in range(3)]
    return (u[1] ** 2 - u[0] ** 2) / (u[2] ** 2 - u[0] ** 2)


def chord_ratio_limit(pair: CanonicalPair) -> float:
    """q -> -inf limit of chord_ratio: (y_0^2 - y_1^2) / (y_0^2 - y_2^2)."""
    y = pair.y
    return (y[0] ** 2 - y[1] ** 2) / (y[0] ** 2 - y[2] ** 2)
