#!/usr/bin/env python3
"""Simulate outcome counts for a built measurement.

Prepares each of the three joint states in turn, samples the flattened
instrument with a fixed seed, and tabulates counts against the exact
outcome distribution.  Conclusive labels never fire on the wrong state,
so the error rows stay at an exact zero count.
"""

import cmath

import numpy as np

from triseq import (
    build_sequential,
    check_global_optimality,
    flatten,
    joint_states,
    sample_outcomes,
    state_vectors,
    verify_unambiguous,
)

KA = 0.2 * cmath.exp(1j * cmath.pi / 10)
KB = 0.3 * cmath.exp(1j * cmath.pi / 7)
SHOTS = 200_000
SEED = 11

report = check_global_optimality(KA, KB)
seq = build_sequential(report.pair)
flat = flatten(seq)
states = joint_states(state_vectors(report.pair))

success, leak = verify_unambiguous(flat, states)
print(f"p_global {report.p_global:.9f}, built success {success:.9f},"
      f" leak {leak:.1e}")
print(f"{SHOTS} shots per prepared state, seed {SEED}")
print()

conclusive = [i for i, lab in enumerate(flat.labels) if lab in ("0", "1", "2")]
for prepared in range(3):
    probs = [float(np.real(np.vdot(states[prepared], op @ states[prepared])))
             for op in flat.outcomes]
    counts = sample_outcomes(flat, states[prepared], SHOTS, SEED + prepared)
    print(f"prepared state {prepared}")
    for i in np.argsort(probs)[::-1]:
        lab = flat.labels[i]
        freq = counts[i] / SHOTS
        wrong = lab in ("0", "1", "2") and lab != str(prepared)
        note = "  (wrong conclusive label)" if wrong else ""
        print(f"  {lab:14} exact {max(probs[i], 0.0):.6f}  sampled {freq:.6f}"
              f"  count {counts[i]:6d}{note}")
    right = sum(counts[i] for i in conclusive if flat.labels[i] == str(prepared))
    wrong_total = sum(counts[i] for i in conclusive
                      if flat.labels[i] != str(prepared))
    print(f"  correct conclusive {right}, wrong conclusive {wrong_total}")
    print()
