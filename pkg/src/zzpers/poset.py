"""Finite zigzag shapes.

A shape on vertices ``1..n`` is given by the orientation of each of its
``n - 1`` edges.  Edge ``k`` (1-based) joins vertex ``k`` and ``k + 1``;
``FWD`` means ``k <= k + 1`` in the partial order, ``BWD`` means
``k + 1 <= k``.  The vertex numbering is the associated total order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "Direction",
    "FWD",
    "BWD",
    "ZigzagShape",
    "Interval",
    "make_shape",
    "parse_shape_spec",
    "leq",
    "segment_sources_sinks",
    "all_shapes",
]


class Direction(enum.Enum):
    FWD = "fwd"
    BWD = "bwd"

    def flipped(self) -> "Direction":
        return Direction.BWD if self is Direction.FWD else Direction.FWD


FWD = Direction.FWD
BWD = Direction.BWD


@dataclass(frozen=True)
class Interval:
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi or self.lo < 1:
            raise ValueError(f"invalid interval [{self.lo}, {self.hi}]")

    def __contains__(self, x: int) -> bool:
        return self.lo <= x <= self.hi

    def __iter__(self):
        return iter(range(self.lo, self.hi + 1))

    def __len__(self) -> int:
        return self.hi - self.lo + 1

    def __str__(self) -> str:
        return f"[{self.lo},{self.hi}]"


@dataclass(frozen=True)
class ZigzagShape:
    orientations: tuple[Direction, ...] = ()

    @property
    def n(self) -> int:
        return len(self.orientations) + 1

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def edge(self, k: int) -> tuple[int, int]:
        """(source, target) of edge ``k`` (1-based)."""
        return (k, k + 1) if self.orientations[k - 1] is FWD else (k + 1, k)

    @property
    def extrema(self) -> tuple[int, ...]:
        """Endpoints plus every vertex where the orientation alternates."""
        n = self.n
        if n == 1:
            return (1,)
        out = [1]
        for v in range(2, n):
            if self.orientations[v - 2] is not self.orientations[v - 1]:
                out.append(v)
        out.append(n)
        return tuple(out)

    @property
    def is_total_order(self) -> bool:
        return len(set(self.orientations)) <= 1

    def full(self) -> Interval:
        return Interval(1, self.n)

    def check_vertex(self, x: int) -> None:
        if not 1 <= x <= self.n:
            raise ValueError(f"vertex {x} outside 1..{self.n}")

    def check_interval(self, iv: Interval) -> None:
        if iv.hi > self.n:
            raise ValueError(f"interval {iv} outside 1..{self.n}")

    def restrict(self, iv: Interval) -> "ZigzagShape":
        self.check_interval(iv)
        return ZigzagShape(self.orientations[iv.lo - 1: iv.hi - 1])

    def reversed(self) -> "ZigzagShape":
        """The same poset read right to left."""
        return ZigzagShape(tuple(d.flipped() for d in reversed(self.orientations)))

    def spec(self) -> str:
        return ",".join(d.value for d in self.orientations)

    def to_json(self) -> dict:
        return {"orientations": [d.value for d in self.orientations]}

    @classmethod
    def from_json(cls, obj: dict) -> "ZigzagShape":
        if not isinstance(obj, dict):
            raise ValueError("shape must be a JSON object")
        if "total_order" in obj:
            n = obj["total_order"]
            if not isinstance(n, int) or n < 1:
                raise ValueError("total_order must be a positive integer")
            return make_shape([FWD] * (n - 1))
        if "orientations" not in obj:
            raise ValueError("shape needs 'orientations' or 'total_order'")
        return make_shape(obj["orientations"])


def _direction(tok) -> Direction:
    if isinstance(tok, Direction):
        return tok
    try:
        return Direction(str(tok).strip().lower())
    except ValueError:
        raise ValueError(f"unknown edge direction {tok!r} (expected 'fwd' or 'bwd')") from None


def make_shape(orientations: Iterable = ()) -> ZigzagShape:
    return ZigzagShape(tuple(_direction(t) for t in orientations))


def parse_shape_spec(spec: str) -> ZigzagShape:
    """``"fwd,bwd,fwd"`` -> A_4 zigzag; the empty string is A_1."""
    spec = spec.strip()
    if not spec:
        return make_shape([])
    return make_shape(spec.split(","))


def leq(shape: ZigzagShape, x: int, y: int) -> bool:
    """Partial order: a monotone run leads from ``x`` to ``y``."""
    shape.check_vertex(x)
    shape.check_vertex(y)
    if x == y:
        return True
    if x < y:
        return all(d is FWD for d in shape.orientations[x - 1: y - 1])
    return all(d is BWD for d in shape.orientations[y - 1: x - 1])


def segment_sources_sinks(shape: ZigzagShape, iv: Interval) -> tuple[list[int], list[int]]:
    """Sources and sinks of the restriction of ``shape`` to ``iv``.

    A single-vertex segment is both a source and a sink.  Vertices in the
    interior of a monotone run are neither.
    """
    shape.check_interval(iv)
    if iv.lo == iv.hi:
        return [iv.lo], [iv.lo]
    sources, sinks = [], []
    for v in iv:
        has_in = has_out = False
        if v > iv.lo:
            d = shape.orientations[v - 2]  # edge (v-1, v)
            has_in |= d is FWD
            has_out |= d is BWD
        if v < iv.hi:
            d = shape.orientations[v - 1]  # edge (v, v+1)
            has_out |= d is FWD
            has_in |= d is BWD
        if not has_in:
            sources.append(v)
        if not has_out:
            sinks.append(v)
    return sources, sinks


def all_shapes(n: int) -> Iterable[ZigzagShape]:
    """Every orientation pattern on ``n`` vertices."""
    from itertools import product

    for ors in product((FWD, BWD), repeat=n - 1):
        yield ZigzagShape(ors)


def is_interval(shape: ZigzagShape, subset: Sequence[int]) -> bool:
    """Convex and connected with respect to the partial order, by brute force."""
    s = set(subset)
    if not s:
        return False
    verts = list(shape.vertices)
    for x in s:
        for z in s:
            for y in verts:
                if leq(shape, x, y) and leq(shape, y, z) and y not in s:
                    return False
    # connectivity through comparable steps inside the subset
    start = next(iter(s))
    seen, stack = {start}, [start]
    while stack:
        a = stack.pop()
        for b in s:
            if b not in seen and (leq(shape, a, b) or leq(shape, b, a)):
                seen.add(b)
                stack.append(b)
    return seen == s
