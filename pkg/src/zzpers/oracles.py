"""Slow, independent reference computations used to cross-check the engine.

Nothing here shares code with the Smith normal form routine: invariant
factors come from a plain extended-gcd eliminator, colimits are built from
every vertex and every edge, and barcodes over the rationals come from
ranks of limit-to-colimit maps.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from math import gcd
from typing import Sequence

from .persmod import PersModule
from .poset import Interval

__all__ = [
    "naive_invariant_factors",
    "naive_coker",
    "coequalizer_pair",
    "rational_rank",
    "rational_barcode",
]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    if a and b % a == 0:
        return a, 1, 0
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def naive_invariant_factors(rows: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors, by gcd row/column combination and a gcd/lcm fix-up."""
    a = [list(r) for r in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    diag = []
    t = 0
    while t < min(m, n):
        piv = next(((i, j) for j in range(t, n) for i in range(t, m) if a[i][j]), None)
        if piv is None:
            break
        i, j = piv
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            # fold the column below the pivot into the pivot
            for i in range(t + 1, m):
                if a[i][t]:
                    p, q = a[t][t], a[i][t]
                    g, x, y = _xgcd(p, q)
                    pg, qg = p // g, q // g
                    rt = [x * u + y * v for u, v in zip(a[t], a[i])]
                    ri = [-qg * u + pg * v for u, v in zip(a[t], a[i])]
                    a[t], a[i] = rt, ri
            # then the row to the right
            for j in range(t + 1, n):
                if a[t][j]:
                    p, q = a[t][t], a[t][j]
                    g, x, y = _xgcd(p, q)
                    pg, qg = p // g, q // g
                    for row in a:
                        u, v = row[t], row[j]
                        row[t], row[j] = x * u + y * v, -qg * u + pg * v
            if all(a[i][t] == 0 for i in range(t + 1, m)):
                break
        diag.append(abs(a[t][t]))
        t += 1
    # rearrange into a divisibility chain
    changed = True
    while changed:
        changed = False
        for i in range(len(diag)):
            for j in range(i + 1, len(diag)):
                p, q = diag[i], diag[j]
                g = gcd(p, q)
                l = p * q // g
                if (p, q) != (g, l):
                    diag[i], diag[j] = g, l
                    changed = True
    return diag


def naive_coker(rows: Sequence[Sequence[int]], nrows: int) -> tuple[int, tuple[int, ...]]:
    """(free rank, torsion factors) of ``Z^nrows`` modulo the column span."""
    d = naive_invariant_factors(rows) if rows and rows[0] else []
    return nrows - len(d), tuple(x for x in d if x > 1)


def _edge_ends(m: PersModule, k: int) -> tuple[int, int]:
    return m.shape.edge(k)


def coequalizer_pair(m: PersModule, x: int, y: int) -> dict[str, tuple[int, tuple[int, ...]]]:
    """Condition data for ``[x, y]`` from the raw colimit over every vertex.

    The colimit is the sum of all vertex modules modulo ``a - E a`` for
    each edge ``E``; endpoint maps are plain inclusions.
    """
    offs, total = {}, 0
    for v in range(x, y + 1):
        offs[v] = total
        total += m.rank(v)
    cols: list[list[int]] = []
    for k in range(x, y):
        src, tgt = _edge_ends(m, k)
        e = m.edge_matrix(k)
        for c in range(m.rank(src)):
            col = [0] * total
            col[offs[src] + c] += 1
            for r in range(m.rank(tgt)):
                col[offs[tgt] + r] -= e[r, c]
            cols.append(col)

    def incl(v: int) -> list[list[int]]:
        out = []
        for c in range(m.rank(v)):
            col = [0] * total
            col[offs[v] + c] = 1
            out.append(col)
        return out

    def coker(columns: list[list[int]]) -> tuple[int, tuple[int, ...]]:
        if not columns or total == 0:
            return total, ()
        rows = [[col[i] for col in columns] for i in range(total)]
        return naive_coker(rows, total)

    return {
        "C1": coker(cols),
        "C2": coker(cols + incl(x)),
        "C3": coker(cols + incl(y)),
        "C4": coker(cols + incl(x) + incl(y)),
    }


def _rank_q(rows: list[list[Fraction]], ncols: int) -> int:
    a = [r[:] for r in rows]
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][c]
        for i in range(len(a)):
            if i != rank and a[i][c] != 0:
                f = a[i][c] / p
                a[i] = [u - f * v for u, v in zip(a[i], a[rank])]
        rank += 1
    return rank


def _null_space_q(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    a = [r[:] for r in rows]
    pivots = []
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][c]
        a[rank] = [u / p for u in a[rank]]
        for i in range(len(a)):
            if i != rank and a[i][c] != 0:
                f = a[i][c]
                a[i] = [u - f * v for u, v in zip(a[i], a[rank])]
        pivots.append(c)
        rank += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -a[r][f]
        basis.append(vec)
    return basis


def rational_rank(m: PersModule, iv: Interval) -> int:
    """Rank over Q of the map from the limit to the colimit of ``m`` on ``iv``.

    This counts the bars (over Q) that contain the whole of ``iv``.
    """
    offs, total = {}, 0
    for v in iv:
        offs[v] = total
        total += m.rank(v)
    if total == 0:
        return 0
    # limit: families (a_v) with E a_src == a_tgt on every edge
    cond = []
    rel = []
    for k in range(iv.lo, iv.hi):
        src, tgt = _edge_ends(m, k)
        e = m.edge_matrix(k)
        for r in range(m.rank(tgt)):
            row = [Fraction(0)] * total
            for c in range(m.rank(src)):
                row[offs[src] + c] += e[r, c]
            row[offs[tgt] + r] -= 1
            cond.append(row)
        for c in range(m.rank(src)):
            col = [Fraction(0)] * total
            col[offs[src] + c] += 1
            for r in range(m.rank(tgt)):
                col[offs[tgt] + r] -= e[r, c]
            rel.append(col)
    lim = _null_space_q(cond, total) if cond else [
        [Fraction(int(i == j)) for i in range(total)] for j in range(total)]
    if not lim:
        return 0
    # vectors as rows: rank(rel + lim) - rank(rel)
    return _rank_q(rel + lim, total) - _rank_q(rel, total)


def rational_barcode(m: PersModule) -> Counter:
    """Multiplicity of each bar ``(lo, hi)`` over Q, by inclusion-exclusion."""
    n = m.n
    rk = {}
    for lo in range(1, n + 1):
        for hi in range(lo, n + 1):
            rk[lo, hi] = rational_rank(m, Interval(lo, hi))

    def get(lo: int, hi: int) -> int:
        if lo < 1 or hi > n:
            return 0
        return rk[lo, hi]

    out = Counter()
    for (lo, hi), r in rk.items():
        mult = r - get(lo - 1, hi) - get(lo, hi + 1) + get(lo - 1, hi + 1)
        if mult:
            out[lo, hi] = mult
    return out
