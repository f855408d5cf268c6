"""Independent certification of claimed interval decompositions."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from .linalg import IntMatrix, det, solve_matrix
from .persmod import Barcode, Decomposition, PersModule, ShapeMismatch
from .poset import Interval

__all__ = ["Failure", "VerifyReport", "verify_decomposition", "barcode_of", "barcodes_equal"]


@dataclass(frozen=True)
class Failure:
    code: str
    vertex: Optional[int] = None
    summand: Optional[int] = None
    edge: Optional[int] = None
    witness: Optional[IntMatrix] = None

    def to_json(self) -> dict:
        out: dict = {"code": self.code}
        for key in ("vertex", "summand", "edge"):
            val = getattr(self, key)
            if val is not None:
                out[key] = val
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


@dataclass(frozen=True)
class VerifyReport:
    failures: tuple[Failure, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.failures

    def codes(self) -> list[str]:
        return [f.code for f in self.failures]

    def to_json(self) -> dict:
        return {"ok": self.ok, "failures": [f.to_json() for f in self.failures]}


def _check_dims(m: PersModule, d: Decomposition) -> None:
    for i, s in enumerate(d.summands):
        if len(s.gens) != m.n:
            raise ShapeMismatch(f"summand {i} has {len(s.gens)} vertices, module has {m.n}")
        for x, g in enumerate(s.gens, start=1):
            if g.rows != m.rank(x):
                raise ShapeMismatch(f"summand {i} at vertex {x}: generators have {g.rows} rows, "
                                    f"vertex rank is {m.rank(x)}")


def verify_decomposition(m: PersModule, d: Decomposition) -> VerifyReport:
    _check_dims(m, d)
    out: list[Failure] = []

    # internal direct sum at every vertex
    for x in m.shape.vertices:
        cat = IntMatrix.zeros(m.rank(x), 0)
        for s in d.summands:
            cat = cat.hstack(s.gens[x - 1])
        if cat.cols != cat.rows:
            out.append(Failure("rank_count", vertex=x, witness=cat))
        elif abs(det(cat)) != 1:
            out.append(Failure("not_direct_sum", vertex=x, witness=cat))

    for i, s in enumerate(d.summands):
        support = s.support
        if not support:
            out.append(Failure("empty_summand", summand=i))
            continue
        if support != list(range(support[0], support[-1] + 1)):
            out.append(Failure("support_gap", summand=i,
                               witness=IntMatrix.from_rows([[g.cols for g in s.gens]])))
        elif len({s.rank_at(x) for x in support}) != 1:
            out.append(Failure("rank_not_constant", summand=i,
                               witness=IntMatrix.from_rows([[g.cols for g in s.gens]])))
        for k in range(1, m.n):
            src, tgt = m.shape.edge(k)
            img = m.edge_matrix(k) @ s.gens[src - 1]
            coords = solve_matrix(s.gens[tgt - 1], img)
            if coords is None:
                out.append(Failure("not_invariant", summand=i, edge=k, witness=img))
                continue
            inside = s.rank_at(src) > 0 and s.rank_at(tgt) > 0
            if inside and (coords.rows != coords.cols or abs(det(coords)) != 1):
                out.append(Failure("not_isomorphism", summand=i, edge=k, witness=coords))
    return VerifyReport(tuple(out))


def barcode_of(d: Decomposition) -> Barcode:
    bars = []
    for s in d.summands:
        sup = s.support
        if sup:
            bars.append((Interval(sup[0], sup[-1]), s.total_rank))
    return Barcode.of(bars)


def barcodes_equal(a: Barcode, b: Barcode) -> bool:
    """Multiset equality after splitting every bar into rank-one bars."""
    return Counter(a.counter()) == Counter(b.counter())
