#!/usr/bin/env python3
"""Plane picture behind the verdict.

Alice's extremal conclusive outcomes project to three points spanning a
triangle in the plane of unit-trace diagonal 3x3 matrices.  The relay
strategy reaches the global optimum exactly when the uniform point, the
projection of the identity, lands inside that triangle.  The candidate
filter family traces a curve from the announce vertex to the exclude
vertex; its points stay inside the triangle on both sides of the
boundary, so membership of the uniform point is what flips.
"""

import cmath

from triseq import (
    PlanePoint,
    check_global_optimality,
    chord_ratio,
    chord_ratio_limit,
    identity_membership,
    in_triangle,
    level_curve,
    outcome_triangle,
)

SAMPLES = 9
UNIFORM = PlanePoint(1.0 / 3.0, 1.0 / 3.0)


def survey(ka, kb):
    report = check_global_optimality(ka, kb)
    pair = report.pair
    print(f"verdict {report.verdict}, branch {report.branch}")
    tri = outcome_triangle(pair)
    print(f"triangle  e1 = ({tri.e1.u:+.6f}, {tri.e1.v:+.6f})  announce")
    print(f"          e2 = ({tri.e2.u:+.6f}, {tri.e2.v:+.6f})  exclude")
    print(f"          e3 = ({tri.e3.u:+.6f}, {tri.e3.v:+.6f})  defer")
    print("curve through the candidate filter levels:")
    for q, point in level_curve(pair, SAMPLES):
        mark = ""
        if q == report.threshold:
            mark = " <- exclude vertex, filter at the threshold"
        elif q == pair.y[2] ** 2:
            mark = " <- defer level"
        inside = in_triangle(point, tri, 1e-9)
        print(f"  q {q:+12.6f}  ({point.u:+.6f}, {point.v:+.6f})"
              f"  inside {str(inside):5}{mark}")
    uniform_inside = in_triangle(UNIFORM, tri, 1e-9)
    print(f"uniform point (1/3, 1/3) inside: {uniform_inside}")
    print(f"identity_membership agrees:      {identity_membership(pair)}")
    at_threshold = chord_ratio(pair, report.threshold)
    limit = chord_ratio_limit(pair)
    print(f"chord ratio at the threshold {at_threshold:.12f}")
    print(f"chord ratio limit            {limit:.12f}")
    print("the two coincide because the offset reciprocals sum to zero")


KA = 0.2 * cmath.exp(1j * cmath.pi / 10)

print("inside the region")
print("-" * 60)
survey(KA, 0.3 * cmath.exp(1j * cmath.pi / 7))

print()
print("outside the region")
print("-" * 60)
survey(KA, 0.3 * cmath.exp(1j * cmath.pi / 3.1))
