"""Decide whether a sequential measurement can reach the global optimum.

For three symmetric product states the best unconstrained unambiguous
measurement succeeds with probability 3 * min_n tjoint_n^2, where

    tjoint_n^2 = sum_k x_k^2 y_{(n-k) mod 3}^2

are the joint-state Fourier weights.  A one-way sequential protocol
(Alice measures, announces, Bob finishes) can sometimes match that
number.  `check_global_optimality` reports whether it can, which closed-
form regime applies, and the diagnostic quantities the decision rests on:

    threshold = (1 - |K_B|) / 3
    offsets_k = y_k^2 - threshold          (z-values; their reciprocals sum to 0)
    c1 = x_2 z_0 - x_1 z_1
    c2 = sum_k x_k^2 (z_{(1-k) mod 3}^-2 - z_{(3-k) mod 3}^-2)

In the generic regime (all Bob gaps strict, Alice's two largest weights
strict) the verdict is c1 >= 0 and c2 >= 0.  If Bob's lower two weights
tie (K_B positive real) or Alice's upper two tie (K_A positive real) the
verdict is always yes.  If either overlap is numerically zero one party
alone discriminates perfectly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NoCanonicalForm
from .numerics import TOL
from .states import (
    CanonicalPair,
    _check_overlap,
    _joint_squares,
    _perm_of,
    amplitudes_from_overlap,
    canonicalize,
)

BRANCHES = ("Orthogonal", "PositiveRealB", "PositiveRealA", "Inequality", "Fails")

_IDX1 = (1, 0, 2)  # (1 - k) mod 3
_IDX3 = (0, 2, 1)  # (3 - k) mod 3, i.e. -k mod 3


@dataclass(frozen=True)
class OptimalityReport:
    """Outcome of the sequential-optimality decision.

    verdict:   True iff some sequential measurement reaches the global optimum
    branch:    which regime decided it, one of BRANCHES
    threshold: (1 - |kb|) / 3
    offsets:   squared Bob amplitudes minus threshold, canonical order
    joint:     joint-state amplitudes tjoint_n, canonical order
    perm:      rank permutation of `joint` (perm[0] = index of the minimum)
    p_global:  globally optimal success probability 3 * min tjoint^2
    c1, c2:    inequality values; may be non-finite on tie branches where
               an offset vanishes (diagnostic only there)
    pair:      canonical pair, or None on the Orthogonal branch
    """

    verdict: bool
    branch: str
    threshold: float
    offsets: tuple[float, float, float]
    joint: tuple[float, float, float]
    perm: tuple[int, int, int]
    p_global: float
    c1: float
    c2: float
    pair: CanonicalPair | None


def filter_level(kb) -> float:
    """Threshold (1 - |kb|)/3: one third of the success probability of the
    optimal unambiguous filter between two states with overlap modulus |kb|."""
    kb = _check_overlap(kb)
    return (1.0 - abs(kb)) / 3.0


def joint_amplitudes(pair: CanonicalPair):
    """Joint-state amplitudes and their rank permutation.

    returns: (tjoint, perm) with tjoint_n = sqrt(sum_k x_k^2 y_{(n-k)%3}^2);
             tjoint[perm[0]] is minimal and perm is an involution
    """
    tj = tuple(math.sqrt(t) for t in _joint_squares(pair.x, pair.y))
    return tj, pair.perm


def global_optimum(pair: CanonicalPair) -> float:
    """Success probability of the best unconstrained unambiguous measurement."""
    return 3.0 * min(_joint_squares(pair.x, pair.y))


def _inv_sq(v: float) -> float:
    return math.inf if v == 0.0 else v**-2


def _conditions(x, y, z):
    c1 = x[2] * z[0] - x[1] * z[1]
    iz = tuple(_inv_sq(v) for v in z)
    c2 = 0.0
    for k in range(3):
        c2 += x[k] ** 2 * (iz[_IDX1[k]] - iz[_IDX3[k]])
    return c1, c2


def check_global_optimality(ka, kb) -> OptimalityReport:
    """Full sequential-optimality decision for an overlap pair.

    raises: DegenerateStates / RankDeficient from state validation
    """
    ka = _check_overlap(ka)
    kb = _check_overlap(kb)

    pair = None
    if abs(ka) >= TOL.tie and abs(kb) >= TOL.tie:
        try:
            pair = canonicalize(ka, kb)
        except NoCanonicalForm:
            pair = None  # kb in the gray zone just above tie; Bob is
            # near-perfect alone, same as the orthogonal case

    if pair is None:
        x = amplitudes_from_overlap(ka)
        y = amplitudes_from_overlap(kb)
        branch = "Orthogonal"
        verdict = True
        perm = _perm_of(x, y)
        level = (1.0 - abs(kb)) / 3.0
    else:
        x, y = pair.x, pair.y
        perm = pair.perm
        level = (1.0 - abs(pair.kb)) / 3.0
        if y[1] - y[2] <= TOL.tie:
            branch, verdict = "PositiveRealB", True
        elif x[1] - x[2] <= TOL.tie:
            branch, verdict = "PositiveRealA", True
        else:
            branch = None

    z = tuple(v**2 - level for v in y)
    c1, c2 = _conditions(x, y, z)
    if pair is not None and branch is None:
        verdict = c1 >= 0.0 and c2 >= 0.0
        branch = "Inequality" if verdict else "Fails"

    tj_sq = _joint_squares(x, y)
    return OptimalityReport(
        verdict=verdict,
        branch=branch,
        threshold=level,
        offsets=z,
        joint=tuple(math.sqrt(t) for t in tj_sq),
        perm=perm,
        p_global=3.0 * min(tj_sq),
        c1=c1,
        c2=c2,
        pair=pair,
    )
