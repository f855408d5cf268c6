"""Colimits of zigzag segments and the four projective colimit conditions.

The colimit of ``F|[x, y]`` is presented as a cokernel: generators are the
vertex modules at the sinks of the segment, and every interior source
contributes one relation block equating its images in the two neighbouring
sinks.  All four conditions reduce to Smith normal forms of block matrices
built from that presentation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import linalg
from .linalg import CokerInvariants, IntMatrix
from .persmod import PersModule, path_map
from .poset import FWD, Interval, ZigzagShape, segment_sources_sinks

__all__ = [
    "ColimitPresentation",
    "PairReport",
    "PccReport",
    "CONDITIONS",
    "colimit_presentation",
    "check_pair",
    "check_all",
    "interval_colimit_oracle",
    "IntervalColimitAnswer",
]

CONDITIONS = ("C1", "C2", "C3", "C4")


@dataclass(frozen=True)
class ColimitPresentation:
    sinks: tuple[int, ...]
    gen_rank: int
    relations: IntMatrix
    into_from_x: IntMatrix
    into_from_y: IntMatrix


def _governing_sink(shape: ZigzagShape, iv: Interval, v: int) -> int:
    """Follow the only outgoing direction from ``v`` until a sink of ``iv``."""
    _, sinks = segment_sources_sinks(shape, iv)
    if v in sinks:
        return v
    step = 1 if (v < iv.hi and shape.orientations[v - 1] is FWD) else -1
    w = v
    while w not in sinks:
        w += step
    return w


def colimit_presentation(m: PersModule, iv: Interval) -> ColimitPresentation:
    shape = m.shape
    shape.check_interval(iv)
    sources, sinks = segment_sources_sinks(shape, iv)
    offsets, total = {}, 0
    for z in sinks:
        offsets[z] = total
        total += m.rank(z)

    def into(v: int, z: int, sign: int = 1) -> IntMatrix:
        p = path_map(m, v, z)
        if sign < 0:
            p = -p
        top = IntMatrix.zeros(offsets[z], p.cols)
        bot = IntMatrix.zeros(total - offsets[z] - p.rows, p.cols)
        return top.vstack(p, bot)

    rel = IntMatrix.zeros(total, 0)
    for s in sources:
        if s in (iv.lo, iv.hi):
            continue
        left = _governing_sink(shape, iv, s - 1)
        right = _governing_sink(shape, iv, s + 1)
        rel = rel.hstack(into(s, left) + into(s, right, -1))
    x_sink = _governing_sink(shape, iv, iv.lo)
    y_sink = _governing_sink(shape, iv, iv.hi)
    return ColimitPresentation(tuple(sinks), total, rel, into(iv.lo, x_sink), into(iv.hi, y_sink))


@dataclass(frozen=True)
class PairReport:
    x: int
    y: int
    c1: CokerInvariants
    c2: CokerInvariants
    c3: CokerInvariants
    c4: CokerInvariants

    @property
    def conditions(self) -> dict[str, CokerInvariants]:
        return {"C1": self.c1, "C2": self.c2, "C3": self.c3, "C4": self.c4}

    @property
    def ok(self) -> bool:
        return all(c.is_free for c in (self.c1, self.c2, self.c3, self.c4))

    @property
    def first_failure(self) -> Optional[tuple[str, tuple[int, ...]]]:
        for name, c in self.conditions.items():
            if not c.is_free:
                return name, c.torsion_factors
        return None

    def to_json(self) -> dict:
        out: dict = {"x": self.x, "y": self.y}
        for name, c in self.conditions.items():
            out[name] = "pass" if c.is_free else {"fail": {"torsion": list(c.torsion_factors)}}
        return out


@dataclass(frozen=True)
class PccReport:
    pairs: tuple[PairReport, ...]

    @property
    def ok(self) -> bool:
        return all(p.ok for p in self.pairs)

    @property
    def first_failure(self) -> Optional[PairReport]:
        return next((p for p in self.pairs if not p.ok), None)

    def to_json(self) -> dict:
        return {"overall": "pass" if self.ok else "fail",
                "pairs": [p.to_json() for p in self.pairs]}


def check_pair(m: PersModule, x: int, y: int) -> PairReport:
    if x > y:
        raise ValueError(f"pair ({x}, {y}) is not ordered")
    pres = colimit_presentation(m, Interval(x, y))
    rel = pres.relations
    c1 = linalg.cokernel_invariants(rel)
    c2 = linalg.cokernel_invariants(rel.hstack(pres.into_from_x))
    c3 = linalg.cokernel_invariants(rel.hstack(pres.into_from_y))
    c4 = linalg.cokernel_invariants(rel.hstack(pres.into_from_x, pres.into_from_y))
    return PairReport(x, y, c1, c2, c3, c4)


def check_all(m: PersModule, stop_at_first: bool = False) -> PccReport:
    """Every pair ``x <= y`` in lexicographic order."""
    pairs = []
    for x in m.shape.vertices:
        for y in range(x, m.n + 1):
            rep = check_pair(m, x, y)
            pairs.append(rep)
            if stop_at_first and not rep.ok:
                return PccReport(tuple(pairs))
    return PccReport(tuple(pairs))


@dataclass(frozen=True)
class IntervalColimitAnswer:
    colim: CokerInvariants
    coker_x: CokerInvariants
    coker_y: CokerInvariants
    coker_xy: CokerInvariants


def interval_colimit_oracle(shape: ZigzagShape, support: Interval, rank: int,
                            query: Interval) -> IntervalColimitAnswer:
    """Closed-form colimit data for ``F(support, Z^rank)`` restricted to ``query``.

    Inside the query segment the support ``J`` is again a segment.  The
    colimit is ``Z^rank`` exactly when no edge of the query leaves ``J``;
    otherwise every element is identified with zero.  An endpoint map hits
    the whole colimit iff that endpoint lies in ``J``.
    """
    zero = CokerInvariants(0, ())
    lo, hi = max(support.lo, query.lo), min(support.hi, query.hi)
    if lo > hi or rank == 0:
        return IntervalColimitAnswer(zero, zero, zero, zero)
    escapes = False
    if lo > query.lo and shape.orientations[lo - 2] is not FWD:
        escapes = True  # edge lo -> lo-1 leaves J
    if hi < query.hi and shape.orientations[hi - 1] is FWD:
        escapes = True  # edge hi -> hi+1 leaves J
    if escapes:
        return IntervalColimitAnswer(zero, zero, zero, zero)
    full = CokerInvariants(rank, ())
    x_in = lo == query.lo
    y_in = hi == query.hi
    return IntervalColimitAnswer(
        full,
        zero if x_in else full,
        zero if y_in else full,
        zero if (x_in or y_in) else full,
    )
