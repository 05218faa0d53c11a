"""Seeded random arc collections for tests, verification and benchmarks."""
from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from .circle import Arc, ArcCollection

GRID_DENOMINATORS = (2, 3, 4, 5, 6, 8, 10, 12)


def random_collection(rng: random.Random, n: int, denominators=GRID_DENOMINATORS) -> ArcCollection:
    """``n`` arcs with endpoints on a coarse rational grid.

    The grid is small on purpose so that endpoints coincide often; about one
    arc in five reuses an endpoint of an earlier arc, and whole-circle and
    point arcs appear occasionally.
    """
    q = rng.choice(denominators)
    arcs: list = []
    for _ in range(n):
        if arcs and rng.random() < 0.2:
            other = rng.choice(arcs)
            start = rng.choice([other.start, other.end])
        else:
            start = Fraction(rng.randrange(2 * q), 2 * q)
        r = rng.random()
        if r < 0.03:
            length = Fraction(1)
        elif r < 0.08:
            length = Fraction(0)
        elif arcs and r < 0.25:
            other = rng.choice(arcs)
            length = (rng.choice([other.start, other.end]) - start) % 1
        else:
            length = Fraction(rng.randrange(1, 2 * q), 2 * q)
        arcs.append(Arc(start, length))
    return ArcCollection(arcs)


def random_scaled(count: int, seed: int, denom: int = 1 << 30):
    """``(starts, lengths, denom)`` integer arrays for large benchmark inputs."""
    if count < 1:
        raise ValueError("count must be positive")
    gen = np.random.default_rng(seed)
    starts = gen.integers(0, denom, size=count, dtype=np.int64)
    lengths = gen.integers(1, denom // 2, size=count, dtype=np.int64)
    return starts, lengths, denom
