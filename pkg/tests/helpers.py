"""Shared test utilities: seeded random overlap draws."""

import numpy as np

from triseq import amplitudes_from_overlap
from triseq.errors import RankDeficient


def random_overlap(rng, lo=0.02, hi=0.95):
    """One overlap with modulus in [lo, hi), uniform phase, redrawn
    deterministically until the states have full rank."""
    while True:
        k = rng.uniform(lo, hi) * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))
        try:
            amplitudes_from_overlap(k)
            return complex(k)
        except RankDeficient:
            continue


def random_pair(rng, lo=0.02, hi=0.95):
    return random_overlap(rng, lo, hi), random_overlap(rng, lo, hi)
