"""Exact integer matrix algebra.

Everything here works over the integers with Python's arbitrary-precision
``int``; no floating point is ever involved.  Matrices are immutable
:class:`IntMatrix` values.  Submodules of ``Z^n`` are represented by a
matrix whose columns generate them; :func:`hnf_cols` turns any such
generator matrix into a canonical basis so that equality of submodules is
plain matrix equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

__all__ = [
    "IntMatrix",
    "SnfResult",
    "CokerInvariants",
    "NotSurjective",
    "NotFreeQuotient",
    "snf",
    "hnf_cols",
    "kernel_basis",
    "image_basis",
    "cokernel_invariants",
    "solve",
    "solve_matrix",
    "split_surjection",
    "complement",
    "intersect",
    "preimage",
    "det",
    "is_unimodular",
    "rank",
]

_INT64_MIN = -(2**63)
_INT64_MAX = 2**63 - 1


class IntMatrix:
    """Dense immutable matrix of Python integers.

    ``0 x n`` and ``n x 0`` shapes are legal; they stand for maps to or
    from the zero module.
    """

    __slots__ = ("rows", "cols", "data", "_hash")

    def __init__(self, rows: int, cols: int, data: Iterable[Sequence[int]] = ()):
        rows_t = tuple(tuple(int(v) for v in r) for r in data)
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimension")
        if len(rows_t) != rows or any(len(r) != cols for r in rows_t):
            raise ValueError(f"data does not match shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        self.data = rows_t
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cannot infer column count of an empty row list")
            cols = len(rows[0])
        return cls(len(rows), cols, rows)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        return cls(rows, len(columns), [[c[i] for c in columns] for i in range(rows)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, [[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def column(cls, values: Sequence[int]) -> "IntMatrix":
        return cls(len(values), 1, [[v] for v in values])

    # -- basic protocol -----------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and self.data == other.data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.data))
        return self._hash

    def __repr__(self) -> str:
        return f"IntMatrix({self.rows}, {self.cols}, {[list(r) for r in self.data]})"

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.data[i][j]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    def col(self, j: int) -> list[int]:
        return [r[j] for r in self.data]

    def columns(self) -> list[list[int]]:
        return [self.col(j) for j in range(self.cols)]

    def is_zero(self) -> bool:
        return all(v == 0 for r in self.data for v in r)

    # -- arithmetic ---------------------------------------------------
    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        ot = list(zip(*other.data)) if other.rows else [()] * other.cols
        out = [[sum(a * b for a, b in zip(r, c)) for c in ot] for r in self.data]
        return IntMatrix(self.rows, other.cols, out)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols,
                         [[a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)])

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, [[-v for v in r] for r in self.data])

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, [list(c) for c in zip(*self.data)] if self.rows else [[] for _ in range(self.cols)])

    def hstack(self, *others: "IntMatrix") -> "IntMatrix":
        mats = (self,) + others
        if any(m.rows != self.rows for m in mats):
            raise ValueError("hstack needs equal row counts")
        cols = sum(m.cols for m in mats)
        data = [sum((list(m.data[i]) for m in mats), []) for i in range(self.rows)]
        return IntMatrix(self.rows, cols, data)

    def vstack(self, *others: "IntMatrix") -> "IntMatrix":
        mats = (self,) + others
        if any(m.cols != self.cols for m in mats):
            raise ValueError("vstack needs equal column counts")
        data = [r for m in mats for r in m.data]
        return IntMatrix(len(data), self.cols, data)

    def select_columns(self, idx: Sequence[int]) -> "IntMatrix":
        return IntMatrix(self.rows, len(idx), [[r[j] for j in idx] for r in self.data])

    def select_rows(self, idx: Sequence[int]) -> "IntMatrix":
        return IntMatrix(len(idx), self.cols, [self.data[i] for i in idx])

    # -- JSON ---------------------------------------------------------
    def to_json(self) -> dict:
        def enc(v: int):
            return v if _INT64_MIN <= v <= _INT64_MAX else str(v)

        return {"rows": self.rows, "cols": self.cols,
                "data": [[enc(v) for v in r] for r in self.data]}

    @classmethod
    def from_json(cls, obj: dict) -> "IntMatrix":
        try:
            rows, cols, data = obj["rows"], obj["cols"], obj["data"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"matrix object needs rows/cols/data: {exc}") from None
        if not isinstance(rows, int) or not isinstance(cols, int):
            raise ValueError("matrix rows/cols must be integers")
        parsed = []
        for r in data:
            row = []
            for v in r:
                if isinstance(v, bool) or not isinstance(v, (int, str)):
                    raise ValueError(f"matrix entry {v!r} is not an integer")
                row.append(int(v))
            parsed.append(row)
        return cls(rows, cols, parsed)


@dataclass(frozen=True)
class SnfResult:
    """``u @ a @ v == s`` with ``u``, ``v`` unimodular and ``s`` diagonal."""

    u: IntMatrix
    s: IntMatrix
    v: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        return [self.s[i, i] for i in range(min(self.s.rows, self.s.cols))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


@dataclass(frozen=True)
class CokerInvariants:
    """Isomorphism type of a finitely generated abelian group.

    ``Z^free_rank + Z/t_1 + ... + Z/t_k`` with ``t_1 | t_2 | ... | t_k``.
    """

    free_rank: int
    torsion_factors: tuple[int, ...] = ()

    @property
    def is_free(self) -> bool:
        return not self.torsion_factors

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion_factors

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion_factors)}


class NotSurjective(ValueError):
    """Raised by :func:`split_surjection` when the map has a nonzero cokernel."""

    def __init__(self, invariants: CokerInvariants):
        self.invariants = invariants
        super().__init__(f"map is not surjective: cokernel has free rank {invariants.free_rank}"
                         f" and torsion {list(invariants.torsion_factors)}")


class NotFreeQuotient(ValueError):
    """Raised when a quotient that must be free has torsion."""

    def __init__(self, torsion: Sequence[int]):
        self.torsion = tuple(torsion)
        super().__init__(f"quotient is not free: torsion factors {list(self.torsion)}")


# ---------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------

def _snf_work(a: IntMatrix):
    """Return mutable ``(u, s, v, u_inv)`` with ``u a v = s``.

    Pivot: nonzero entry of least absolute value in the active block, ties
    broken by (row, col).  Reduction uses Euclidean division.
    """
    m, n = a.rows, a.cols
    s = [list(r) for r in a.data]
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    u_inv = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]
        for r in u_inv:
            r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        for r in s:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        if q == 0:
            return
        rs, rd = s[src], s[dst]
        for k in range(n):
            rd[k] += q * rs[k]
        us, ud = u[src], u[dst]
        for k in range(m):
            ud[k] += q * us[k]
        for r in u_inv:
            r[src] -= q * r[dst]

    def add_col(dst, src, q):
        if q == 0:
            return
        for r in s:
            r[dst] += q * r[src]
        for r in v:
            r[dst] += q * r[src]

    def negate_row(i):
        s[i] = [-x for x in s[i]]
        u[i] = [-x for x in u[i]]
        for r in u_inv:
            r[i] = -r[i]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = s[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)
        while True:
            p = s[t][t]
            done = True
            for i in range(t + 1, m):
                if s[i][t]:
                    add_row(i, t, -(s[i][t] // p))
                    if s[i][t]:
                        done = False
            for j in range(t + 1, n):
                if s[t][j]:
                    add_col(j, t, -(s[t][j] // p))
                    if s[t][j]:
                        done = False
            if not done:
                # move the smallest leftover in row t / column t to the pivot
                best = None
                for j in range(t, n):
                    x = s[t][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), t, j)
                for i in range(t + 1, m):
                    x = s[i][t]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, t)
                _, pi, pj = best
                if pi != t:
                    swap_rows(t, pi)
                if pj != t:
                    swap_cols(t, pj)
                continue
            # divisibility: pivot must divide the whole trailing block
            bad = None
            for i in range(t + 1, m):
                row = s[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if s[t][t] < 0:
            negate_row(t)
        t += 1
    return u, s, v, u_inv


def snf(a: IntMatrix) -> SnfResult:
    """Smith normal form with transforms: ``u @ a @ v == s``."""
    u, s, v, _ = _snf_work(a)
    return SnfResult(IntMatrix(a.rows, a.rows, u), IntMatrix(a.rows, a.cols, s),
                     IntMatrix(a.cols, a.cols, v))


def _snf_with_inverse(a: IntMatrix):
    u, s, v, u_inv = _snf_work(a)
    return (IntMatrix(a.rows, a.rows, u), IntMatrix(a.rows, a.cols, s),
            IntMatrix(a.cols, a.cols, v), IntMatrix(a.rows, a.rows, u_inv))


def _diag(s: IntMatrix) -> list[int]:
    return [s[i, i] for i in range(min(s.rows, s.cols))]


def rank(a: IntMatrix) -> int:
    return snf(a).rank


# ---------------------------------------------------------------------
# Hermite normal form and submodule calculus
# ---------------------------------------------------------------------

def hnf_cols(a: IntMatrix) -> IntMatrix:
    """Column Hermite normal form with zero columns dropped.

    The result ``h`` has the same column span as ``a``.  Column ``j`` has
    its first nonzero entry (the pivot) in row ``p_j`` with
    ``p_0 < p_1 < ...``, the pivot is positive, and every earlier column
    has its entry in row ``p_j`` reduced into ``[0, pivot)``.  Two
    matrices with the same column span give identical output.
    """
    m = a.rows
    cols = [a.col(j) for j in range(a.cols)]
    cols = [c for c in cols if any(c)]
    out: list[list[int]] = []
    row = 0
    while cols and row < m:
        nz = [c for c in cols if c[row]]
        if not nz:
            row += 1
            continue
        rest = [c for c in cols if not c[row]]
        # Euclid across the nonzero entries of this row
        while len(nz) > 1:
            nz.sort(key=lambda c: abs(c[row]))
            piv = nz[0]
            nxt = [piv]
            for c in nz[1:]:
                q = c[row] // piv[row]
                c = [x - q * y for x, y in zip(c, piv)]
                if c[row]:
                    nxt.append(c)
                elif any(c):
                    rest.append(c)
            nz = nxt
        piv = nz[0]
        if piv[row] < 0:
            piv = [-x for x in piv]
        out.append(piv)
        cols = rest
        row += 1
    # reduce entries of earlier columns in each later pivot row
    pivrows = [next(i for i, x in enumerate(c) if x) for c in out]
    for j in range(len(out)):
        pr, p = pivrows[j], out[j][pivrows[j]]
        for k in range(j):
            q = out[k][pr] // p
            if q:
                out[k] = [x - q * y for x, y in zip(out[k], out[j])]
    return IntMatrix.from_columns(out, m)


def kernel_basis(a: IntMatrix) -> IntMatrix:
    """Basis (canonical form) of ``{x : a x = 0}``."""
    res = snf(a)
    r = res.rank
    k = res.v.select_columns(range(r, a.cols))
    return hnf_cols(k)


def image_basis(a: IntMatrix) -> IntMatrix:
    return hnf_cols(a)


def cokernel_invariants(a: IntMatrix) -> CokerInvariants:
    """Invariants of ``Z^rows / col(a)``."""
    d = snf(a).diagonal
    nonzero = [x for x in d if x]
    return CokerInvariants(a.rows - len(nonzero), tuple(x for x in nonzero if x > 1))


def solve_matrix(a: IntMatrix, b: IntMatrix) -> Optional[IntMatrix]:
    """Integer ``x`` with ``a x == b`` (column by column), or ``None``."""
    if b.rows != a.rows:
        raise ValueError("right-hand side has the wrong number of rows")
    u, s, v, _ = _snf_with_inverse(a)
    d = _diag(s)
    r = sum(1 for x in d if x)
    ub = u @ b
    y = [[0] * b.cols for _ in range(a.cols)]
    for j in range(b.cols):
        for i in range(a.rows):
            val = ub[i, j]
            if i < r:
                if val % d[i]:
                    return None
                y[i][j] = val // d[i]
            elif val:
                return None
    return v @ IntMatrix(a.cols, b.cols, y)


def solve(a: IntMatrix, b: Sequence[int] | IntMatrix) -> Optional[IntMatrix]:
    """Solve ``a x = b`` over the integers for a single right-hand side."""
    if not isinstance(b, IntMatrix):
        b = IntMatrix.column(list(b))
    if b.cols != 1:
        raise ValueError("solve expects a column vector")
    return solve_matrix(a, b)


def split_surjection(phi: IntMatrix) -> IntMatrix:
    """Section ``psi`` of a surjection: ``phi @ psi == identity``."""
    u, s, v, _ = _snf_with_inverse(phi)
    d = _diag(s)
    nonzero = [x for x in d if x]
    inv = CokerInvariants(phi.rows - len(nonzero), tuple(x for x in nonzero if x > 1))
    if not inv.is_zero:
        raise NotSurjective(inv)
    return v.select_columns(range(phi.rows)) @ u


def complement(g: IntMatrix, ambient_rank: int) -> IntMatrix:
    """Columns spanning a direct complement of ``col(g)`` in ``Z^ambient_rank``."""
    if g.rows != ambient_rank:
        raise ValueError("generator matrix does not live in the ambient lattice")
    u, s, v, u_inv = _snf_with_inverse(g)
    d = [x for x in _diag(s) if x]
    torsion = [x for x in d if x > 1]
    if torsion:
        raise NotFreeQuotient(torsion)
    return u_inv.select_columns(range(len(d), ambient_rank))


def complement_within(sub: IntMatrix, basis: IntMatrix) -> IntMatrix:
    """Complement of ``col(sub)`` inside the lattice with basis ``basis``.

    ``col(sub)`` must lie in ``col(basis)`` and ``basis`` must have
    independent columns.
    """
    coords = solve_matrix(basis, sub)
    if coords is None:
        raise ValueError("submodule is not contained in the given lattice")
    return basis @ complement(coords, basis.cols)


def intersect(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if a.rows != b.rows:
        raise ValueError("intersect needs matrices in the same ambient lattice")
    k = kernel_basis(a.hstack(-b))
    return hnf_cols(a @ k.select_rows(range(a.cols)))


def preimage(m: IntMatrix, b: IntMatrix) -> IntMatrix:
    """Basis of ``{x : m x in col(b)}``."""
    if m.rows != b.rows:
        raise ValueError("preimage needs matching target lattices")
    k = kernel_basis(m.hstack(-b))
    return hnf_cols(k.select_rows(range(m.cols)))


def det(a: IntMatrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    if a.rows != a.cols:
        raise ValueError("determinant of a non-square matrix")
    n = a.rows
    if n == 0:
        return 1
    m = [list(r) for r in a.data]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def is_unimodular(a: IntMatrix) -> bool:
    if a.rows != a.cols:
        raise ValueError("unimodularity is defined for square matrices")
    return abs(det(a)) == 1
