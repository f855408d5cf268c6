"""Persistence modules over the integers on zigzag shapes.

Each vertex carries a free module ``Z^rank``; each edge carries the integer
matrix of its map, sized ``rank[target] x rank[source]``.  Submodules are
per-vertex generator matrices in the ambient coordinates.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .linalg import (
    IntMatrix,
    cokernel_invariants,
    hnf_cols,
    kernel_basis,
    solve_matrix,
)
from .poset import Interval, ZigzagShape, leq

__all__ = [
    "PersModule",
    "Submodule",
    "Decomposition",
    "Barcode",
    "DimensionMismatch",
    "ShapeMismatch",
    "NotComparable",
    "TorsionVertex",
    "ValidationReport",
    "validate",
    "path_map",
    "restrict",
    "direct_sum",
    "interval_module",
    "zero_module",
    "is_invariant",
    "has_peak",
    "is_injective",
    "is_surjective",
    "submodule_module",
    "embed_submodule",
    "reverse_module",
    "reverse_submodule",
]


class DimensionMismatch(ValueError):
    def __init__(self, edge: int, expected: tuple[int, int], found: tuple[int, int]):
        self.edge, self.expected, self.found = edge, expected, found
        super().__init__(f"edge {edge}: expected a {expected[0]}x{expected[1]} matrix, "
                         f"found {found[0]}x{found[1]}")


class ShapeMismatch(ValueError):
    pass


class NotComparable(ValueError):
    pass


class TorsionVertex(ValueError):
    """A vertex module with torsion; such input can never satisfy the PCC."""

    def __init__(self, vertex: int, torsion: Sequence[int]):
        self.vertex, self.torsion = vertex, tuple(torsion)
        super().__init__(f"vertex {vertex} has torsion {list(self.torsion)}; "
                         "its module is not free, so condition C1 fails at the pair "
                         f"({vertex}, {vertex})")


@dataclass(frozen=True)
class PersModule:
    shape: ZigzagShape
    ranks: tuple[int, ...]
    edges: tuple[IntMatrix, ...]

    @property
    def n(self) -> int:
        return self.shape.n

    def rank(self, x: int) -> int:
        return self.ranks[x - 1]

    def edge_matrix(self, k: int) -> IntMatrix:
        return self.edges[k - 1]

    @property
    def is_zero(self) -> bool:
        return not any(self.ranks)

    def to_json(self) -> dict:
        return {"shape": self.shape.to_json(), "ranks": list(self.ranks),
                "edges": [e.to_json() for e in self.edges]}

    @classmethod
    def from_json(cls, obj: dict) -> "PersModule":
        """Parse module JSON; raises ``ValueError`` naming the offending field.

        An optional ``"vertex_relations"`` list presents each vertex as
        ``Z^rank / col(R)``.  Torsion there raises :class:`TorsionVertex`;
        only trivial (all-zero) relations are otherwise accepted.
        """
        if not isinstance(obj, dict):
            raise ValueError("module must be a JSON object")
        for key in ("shape", "ranks", "edges"):
            if key not in obj:
                raise ValueError(f"module is missing field '{key}'")
        try:
            shape = ZigzagShape.from_json(obj["shape"])
        except ValueError as exc:
            raise ValueError(f"field 'shape': {exc}") from None
        ranks = obj["ranks"]
        if not isinstance(ranks, list) or any(isinstance(r, bool) or not isinstance(r, int) or r < 0
                                              for r in ranks):
            raise ValueError("field 'ranks' must be a list of non-negative integers")
        if len(ranks) != shape.n:
            raise ValueError(f"field 'ranks': expected {shape.n} entries, found {len(ranks)}")
        if not isinstance(obj["edges"], list):
            raise ValueError("field 'edges' must be a list")
        edges = []
        for k, e in enumerate(obj["edges"], start=1):
            try:
                edges.append(IntMatrix.from_json(e))
            except ValueError as exc:
                raise ValueError(f"field 'edges[{k - 1}]': {exc}") from None
        rels = obj.get("vertex_relations")
        if rels is not None:
            if not isinstance(rels, list) or len(rels) != shape.n:
                raise ValueError("field 'vertex_relations' must hold one matrix per vertex")
            for x, r in enumerate(rels, start=1):
                try:
                    rm = IntMatrix.from_json(r)
                except ValueError as exc:
                    raise ValueError(f"field 'vertex_relations[{x - 1}]': {exc}") from None
                if rm.rows != ranks[x - 1]:
                    raise ValueError(f"field 'vertex_relations[{x - 1}]': wrong row count")
                inv = cokernel_invariants(rm)
                if inv.torsion_factors:
                    raise TorsionVertex(x, inv.torsion_factors)
                if not rm.is_zero():
                    raise ValueError(f"field 'vertex_relations[{x - 1}]': nontrivial free "
                                     "presentation; supply the free rank directly")
        m = cls(shape, tuple(ranks), tuple(edges))
        validate(m)
        return m


@dataclass(frozen=True)
class Submodule:
    """Generator matrices per vertex, columns inside ``Z^rank[x]``."""

    gens: tuple[IntMatrix, ...]

    def rank_at(self, x: int) -> int:
        return self.gens[x - 1].cols

    @property
    def support(self) -> list[int]:
        return [x for x, g in enumerate(self.gens, start=1) if g.cols]

    @property
    def total_rank(self) -> int:
        return max((g.cols for g in self.gens), default=0)

    def canonical(self) -> "Submodule":
        return Submodule(tuple(hnf_cols(g) for g in self.gens))

    def to_json(self) -> dict:
        return {"gens": [g.to_json() for g in self.gens]}

    @classmethod
    def from_json(cls, obj: dict) -> "Submodule":
        if not isinstance(obj, dict) or "gens" not in obj:
            raise ValueError("submodule needs field 'gens'")
        return cls(tuple(IntMatrix.from_json(g) for g in obj["gens"]))


@dataclass(frozen=True)
class Barcode:
    """Multiset of ``(interval, rank)`` bars."""

    bars: tuple[tuple[Interval, int], ...] = ()

    @classmethod
    def of(cls, bars: Iterable[tuple[Interval | tuple[int, int], int]]) -> "Barcode":
        out = []
        for iv, r in bars:
            if not isinstance(iv, Interval):
                iv = Interval(*iv)
            if r < 1:
                raise ValueError("bar ranks must be positive")
            out.append((iv, r))
        out.sort(key=lambda b: (b[0].lo, b[0].hi, b[1]))
        return cls(tuple(out))

    def rank_one(self) -> "Barcode":
        return Barcode.of((iv, 1) for iv, r in self.bars for _ in range(r))

    def counter(self) -> Counter:
        return Counter((iv.lo, iv.hi) for iv, _ in self.rank_one().bars)

    def __len__(self) -> int:
        return len(self.bars)

    def to_json(self) -> list:
        return [{"lo": iv.lo, "hi": iv.hi, "rank": r} for iv, r in self.bars]

    @classmethod
    def from_json(cls, obj: list) -> "Barcode":
        return cls.of(((b["lo"], b["hi"]), b.get("rank", 1)) for b in obj)

    def ascii(self, n: int) -> str:
        lines = []
        for iv, r in self.bars:
            row = "".join("#" if x in iv else "." for x in range(1, n + 1))
            lines.append(f"{row}  [{iv.lo},{iv.hi}] x{r}")
        return "\n".join(lines)


@dataclass(frozen=True)
class Decomposition:
    summands: tuple[Submodule, ...] = field(default_factory=tuple)

    def sorted(self) -> "Decomposition":
        def key(s: Submodule):
            sup = s.support
            lo, hi = (sup[0], sup[-1]) if sup else (0, 0)
            return (lo, hi, s.total_rank, tuple(g.data for g in s.gens))

        return Decomposition(tuple(sorted((s.canonical() for s in self.summands), key=key)))

    def to_json(self) -> dict:
        from .verify import barcode_of

        return {"bars": barcode_of(self).to_json(),
                "summands": [s.to_json() for s in self.summands]}

    @classmethod
    def from_json(cls, obj: dict) -> "Decomposition":
        if not isinstance(obj, dict) or "summands" not in obj:
            raise ValueError("decomposition needs field 'summands'")
        return cls(tuple(Submodule.from_json(s) for s in obj["summands"]))


# ---------------------------------------------------------------------

@dataclass(frozen=True)
class ValidationReport:
    ranks: tuple[int, ...]
    edge_shapes: tuple[tuple[int, int], ...]


def validate(m: PersModule) -> ValidationReport:
    shape = m.shape
    if len(m.ranks) != shape.n:
        raise ValueError(f"expected {shape.n} ranks, found {len(m.ranks)}")
    if len(m.edges) != shape.n - 1:
        raise ValueError(f"expected {shape.n - 1} edge matrices, found {len(m.edges)}")
    for k, e in enumerate(m.edges, start=1):
        src, tgt = shape.edge(k)
        want = (m.rank(tgt), m.rank(src))
        if e.shape != want:
            raise DimensionMismatch(k, want, e.shape)
    return ValidationReport(m.ranks, tuple(e.shape for e in m.edges))


def path_map(m: PersModule, x: int, y: int) -> IntMatrix:
    """Composite of the edge maps along the monotone run from ``x`` to ``y``."""
    if not leq(m.shape, x, y):
        raise NotComparable(f"{x} is not <= {y} in the zigzag order")
    out = IntMatrix.identity(m.rank(x))
    if x < y:
        for k in range(x, y):
            out = m.edge_matrix(k) @ out
    elif x > y:
        for k in range(x - 1, y - 1, -1):
            out = m.edge_matrix(k) @ out
    return out


def restrict(m: PersModule, iv: Interval) -> PersModule:
    m.shape.check_interval(iv)
    return PersModule(m.shape.restrict(iv), m.ranks[iv.lo - 1: iv.hi],
                      m.edges[iv.lo - 1: iv.hi - 1])


def _block_diag(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    top = a.hstack(IntMatrix.zeros(a.rows, b.cols))
    bot = IntMatrix.zeros(b.rows, a.cols).hstack(b)
    return top.vstack(bot)


def direct_sum(a: PersModule, b: PersModule) -> PersModule:
    if a.shape != b.shape:
        raise ShapeMismatch("direct sum of modules on different shapes")
    return PersModule(a.shape, tuple(x + y for x, y in zip(a.ranks, b.ranks)),
                      tuple(_block_diag(e, f) for e, f in zip(a.edges, b.edges)))


def zero_module(shape: ZigzagShape) -> PersModule:
    return PersModule(shape, (0,) * shape.n, tuple(IntMatrix.zeros(0, 0) for _ in range(shape.n - 1)))


def interval_module(shape: ZigzagShape, iv: Interval, rank: int = 1) -> PersModule:
    shape.check_interval(iv)
    ranks = tuple(rank if x in iv else 0 for x in shape.vertices)
    edges = []
    for k in range(1, shape.n):
        src, tgt = shape.edge(k)
        if src in iv and tgt in iv:
            edges.append(IntMatrix.identity(rank))
        else:
            edges.append(IntMatrix.zeros(ranks[tgt - 1], ranks[src - 1]))
    return PersModule(shape, ranks, tuple(edges))


def is_invariant(m: PersModule, s: Submodule) -> bool:
    for k in range(1, m.n):
        src, tgt = m.shape.edge(k)
        img = m.edge_matrix(k) @ s.gens[src - 1]
        if solve_matrix(s.gens[tgt - 1], img) is None:
            return False
    return True


def is_injective(a: IntMatrix) -> bool:
    return kernel_basis(a).cols == 0


def is_surjective(a: IntMatrix) -> bool:
    return cokernel_invariants(a).is_zero


def has_peak(m: PersModule, x: int) -> bool:
    """Maps pointing toward ``x`` are injective, maps pointing away are surjective."""
    m.shape.check_vertex(x)
    n = m.n
    for y in range(1, n + 1):
        for z in range(1, n + 1):
            if y == z or not leq(m.shape, y, z):
                continue
            toward = (y < z <= x) or (x <= z < y)
            away = (z < y <= x) or (x <= y < z)
            f = None
            if toward or away:
                f = path_map(m, y, z)
            if toward and not is_injective(f):
                return False
            if away and not is_surjective(f):
                return False
    return True


def submodule_module(m: PersModule, s: Submodule) -> PersModule:
    """The submodule as a module in its own generator coordinates.

    Generators must be bases (independent columns) and ``s`` invariant.
    """
    edges = []
    for k in range(1, m.n):
        src, tgt = m.shape.edge(k)
        img = m.edge_matrix(k) @ s.gens[src - 1]
        coords = solve_matrix(s.gens[tgt - 1], img)
        if coords is None:
            raise ValueError(f"submodule is not invariant along edge {k}")
        edges.append(coords)
    return PersModule(m.shape, tuple(g.cols for g in s.gens), tuple(edges))


def embed_submodule(basis: Submodule, inner: Submodule) -> Submodule:
    """Map a submodule written in ``basis`` coordinates back to ambient ones."""
    return Submodule(tuple(b @ g for b, g in zip(basis.gens, inner.gens)))


def full_submodule(m: PersModule) -> Submodule:
    return Submodule(tuple(IntMatrix.identity(r) for r in m.ranks))


def zero_submodule(m: PersModule) -> Submodule:
    return Submodule(tuple(IntMatrix.zeros(r, 0) for r in m.ranks))


def reverse_module(m: PersModule) -> PersModule:
    """Relabel vertex ``x`` as ``n + 1 - x``; maps are unchanged."""
    return PersModule(m.shape.reversed(), tuple(reversed(m.ranks)), tuple(reversed(m.edges)))


def reverse_submodule(s: Submodule) -> Submodule:
    return Submodule(tuple(reversed(s.gens)))


def pad_submodule(m: PersModule, iv: Interval, inner: Submodule) -> Submodule:
    """Extend a submodule of ``restrict(m, iv)`` by zero outside ``iv``."""
    gens = []
    for x in m.shape.vertices:
        if x in iv:
            gens.append(inner.gens[x - iv.lo])
        else:
            gens.append(IntMatrix.zeros(m.rank(x), 0))
    return Submodule(tuple(gens))


def concat_submodules(m: PersModule, parts: Sequence[Submodule]) -> Submodule:
    gens = []
    for x in m.shape.vertices:
        g = IntMatrix.zeros(m.rank(x), 0)
        for p in parts:
            g = g.hstack(p.gens[x - 1])
        gens.append(g)
    return Submodule(tuple(gens))


def find_noncomparable(m: PersModule) -> Optional[tuple[int, int]]:
    for x in m.shape.vertices:
        for y in m.shape.vertices:
            if not leq(m.shape, x, y) and not leq(m.shape, y, x):
                return (x, y)
    return None
