#!/usr/bin/env python3
"""Map the region where the relay strategy stays optimal.

Fixes both overlap moduli and sweeps both phases over a full period,
printing one character per grid cell.  The verdict only depends on the
phases through the canonical orientation, so the map tiles with the
three-fold symmetry of the ensemble.
"""

import cmath
import math

from triseq import check_global_optimality

MOD_A = 0.2
MOD_B = 0.3
COLS = 64
ROWS = 31

# '#' relay optimal, '.' not, 'o' decided on a tie branch
print(f"|ka| = {MOD_A}, |kb| = {MOD_B}; phase_a left to right,"
      f" phase_b top to bottom, both over one third of a turn")
print()
inside = 0
for row in range(ROWS):
    phase_b = 2.0 * math.pi / 3.0 * row / (ROWS - 1)
    line = []
    for col in range(COLS):
        phase_a = 2.0 * math.pi / 3.0 * col / (COLS - 1)
        r = check_global_optimality(MOD_A * cmath.exp(1j * phase_a),
                                    MOD_B * cmath.exp(1j * phase_b))
        if r.verdict:
            inside += 1
        if r.branch not in ("Inequality", "Fails"):
            line.append("o")
        else:
            line.append("#" if r.verdict else ".")
    print("".join(line))

print()
print(f"{inside} of {ROWS * COLS} grid cells keep the relay strategy optimal")
