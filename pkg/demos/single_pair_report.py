#!/usr/bin/env python3
"""Walk through the sequential-optimality decision for one overlap pair.

Prints every intermediate the decision rests on: canonical orientation,
amplitude triples, the filter threshold with its offsets, and the two
inequality values that settle the generic case.
"""

import cmath

from triseq import check_global_optimality

KA = 0.2 * cmath.exp(1j * cmath.pi / 10)
KB = 0.3 * cmath.exp(1j * cmath.pi / 7)


def show(report):
    print(f"verdict   {report.verdict}  (branch {report.branch})")
    if report.pair is None:
        print(f"p_global  {report.p_global:.12f}")
        print("one side is orthogonal; any relay strategy with a plain")
        print("basis measurement on the other side already reaches it")
        return
    pair = report.pair
    print(f"canonical ka {pair.ka:.12g}")
    print(f"canonical kb {pair.kb:.12g}")
    print(f"transform  shifts {pair.record.shift_a},{pair.record.shift_b}"
          f"  conjugated {pair.record.conjugated}")
    print(f"x          ({pair.x[0]:.9f}, {pair.x[1]:.9f}, {pair.x[2]:.9f})")
    print(f"y          ({pair.y[0]:.9f}, {pair.y[1]:.9f}, {pair.y[2]:.9f})")
    print(f"threshold  {report.threshold:.9f}")
    print(f"offsets    ({report.offsets[0]:+.9f}, {report.offsets[1]:+.9f},"
          f" {report.offsets[2]:+.9f})")
    print(f"perm       {pair.perm}   (slot of the smallest joint amplitude first)")
    print(f"p_global   {report.p_global:.12f}")
    if report.branch in ("Inequality", "Fails"):
        print(f"c1         {report.c1:+.9f}")
        print(f"c2         {report.c2:+.9f}")
        print("both must be nonnegative for the relay strategy to keep up")


print("generic complex pair, relay strategy keeps up")
print("-" * 55)
show(check_global_optimality(KA, KB))

print()
print("same moduli, Bob's phase pushed: the first inequality bites")
print("-" * 55)
show(check_global_optimality(KA, 0.3 * cmath.exp(1j * cmath.pi / 3.1)))

print()
print("same moduli, Alice's phase pushed: the second one bites instead")
print("-" * 55)
show(check_global_optimality(0.2 * cmath.exp(1j * cmath.pi / 3.2), KB))

print()
print("Bob's overlap real and positive: decided by the tie branch alone")
print("-" * 55)
show(check_global_optimality(KA, 0.25))
