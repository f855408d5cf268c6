"""Seeded random instances.

All randomness comes from ``random.Random`` (Mersenne Twister) seeded with
the integer seed, so a seed reproduces an instance on every platform.
Draw order is part of the contract: bar count, then bars, then one
unimodular scramble per vertex from left to right.
"""

from __future__ import annotations

import random
from typing import Optional, Union

from .linalg import IntMatrix
from .persmod import Barcode, PersModule
from .poset import FWD, Interval, ZigzagShape, make_shape

__all__ = ["gen_decomposable", "gen_adversarial", "random_unimodular", "random_shape"]

Seed = Union[int, random.Random]


def _rng(seed: Seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def _unimodular_pair(rng: random.Random, n: int, level: int) -> tuple[IntMatrix, IntMatrix]:
    """A random unimodular matrix and its inverse, built from elementary row moves."""
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    inv = [[int(i == j) for j in range(n)] for i in range(n)]
    if n == 0:
        return IntMatrix.zeros(0, 0), IntMatrix.zeros(0, 0)
    for _ in range(level):
        kind = rng.choice(("add", "swap", "negate")) if n > 1 else "negate"
        if kind == "add":
            i, j = rng.sample(range(n), 2)
            c = rng.choice((-2, -1, 1, 2))
            # u <- E u with E = I + c e_ij; inv <- inv E^-1
            u[i] = [a + c * b for a, b in zip(u[i], u[j])]
            for row in inv:
                row[j] -= c * row[i]
        elif kind == "swap":
            i, j = rng.sample(range(n), 2)
            u[i], u[j] = u[j], u[i]
            for row in inv:
                row[i], row[j] = row[j], row[i]
        else:
            i = rng.randrange(n)
            u[i] = [-a for a in u[i]]
            for row in inv:
                row[i] = -row[i]
    return IntMatrix(n, n, u), IntMatrix(n, n, inv)


def random_unimodular(seed: Seed, n: int, level: int) -> IntMatrix:
    if n < 0 or level < 0:
        raise ValueError("size and level must be non-negative")
    return _unimodular_pair(_rng(seed), n, level)[0]


def random_shape(seed: Seed, n: int) -> ZigzagShape:
    rng = _rng(seed)
    return make_shape(rng.choice((FWD, FWD.flipped())) for _ in range(n - 1))


def gen_decomposable(seed: Seed, shape: ZigzagShape, max_bars: int, max_rank: Optional[int] = None,
                     scramble_level: int = 0) -> tuple[PersModule, Barcode]:
    """Direct sum of random rank-one bars, conjugated by per-vertex unimodular matrices.

    A bar that would push some vertex above ``max_rank`` is redrawn a few
    times and then dropped, so the returned barcode may hold fewer than the
    drawn number of bars.
    """
    if max_bars < 1:
        raise ValueError("max_bars must be at least 1")
    rng = _rng(seed)
    n = shape.n
    pairs = [(lo, hi) for lo in range(1, n + 1) for hi in range(lo, n + 1)]
    count = rng.randint(1, max_bars)
    load = [0] * (n + 1)
    bars: list[Interval] = []
    for _ in range(count):
        for _attempt in range(8):
            lo, hi = rng.choice(pairs)
            if max_rank is None or all(load[x] < max_rank for x in range(lo, hi + 1)):
                bars.append(Interval(lo, hi))
                for x in range(lo, hi + 1):
                    load[x] += 1
                break
    # coordinates at vertex x: the bars through x, in draw order
    index = {x: [b for b, iv in enumerate(bars) if x in iv] for x in shape.vertices}
    ranks = tuple(len(index[x]) for x in shape.vertices)
    scr = [_unimodular_pair(rng, r, scramble_level) for r in ranks]
    edges = []
    for k in range(1, n):
        src, tgt = shape.edge(k)
        rows = [[int(bs == bt) for bs in index[src]] for bt in index[tgt]]
        e = IntMatrix(len(index[tgt]), len(index[src]), rows)
        u_t, _ = scr[tgt - 1]
        _, u_s_inv = scr[src - 1]
        edges.append(u_t @ e @ u_s_inv)
    return PersModule(shape, ranks, tuple(edges)), Barcode.of((iv, 1) for iv in bars)


def gen_adversarial(seed: Seed, shape: ZigzagShape, max_rank: int, entry_bound: int) -> PersModule:
    """Uniform ranks in ``[0, max_rank]`` and uniform entries in ``[-entry_bound, entry_bound]``."""
    if entry_bound < 1:
        raise ValueError("entry_bound must be at least 1")
    rng = _rng(seed)
    ranks = tuple(rng.randint(0, max_rank) for _ in shape.vertices)
    edges = []
    for k in range(1, shape.n):
        src, tgt = shape.edge(k)
        r, c = ranks[tgt - 1], ranks[src - 1]
        edges.append(IntMatrix(r, c, [[rng.randint(-entry_bound, entry_bound) for _ in range(c)]
                                      for _ in range(r)]))
    return PersModule(shape, ranks, tuple(edges))
