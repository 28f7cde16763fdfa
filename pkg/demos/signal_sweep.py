#!/usr/bin/env python3
"""Success probability along the equal-split coherent diagonal.

Sweeps the per-party signal strength, printing the global optimum and
whether the relay strategy attains it.  The attainment windows alternate
as the phase winds around.
"""

import numpy as np

from triseq import check_global_optimality, psk_overlap

WIDTH = 44

print("  s     p_global   relay")
prev = None
for s in np.arange(0.05, 4.001, 0.05):
    k = psk_overlap(float(s))
    r = check_global_optimality(k, k)
    bar = "#" * int(round(r.p_global * WIDTH))
    mark = "yes" if r.verdict else "  ."
    flip = "  <- window edge" if prev is not None and r.verdict != prev else ""
    print(f"{s:5.2f}  {r.p_global:.6f}  {mark}  |{bar:<{WIDTH}}|{flip}")
    prev = r.verdict
