"""Interval decomposition of zigzag modules over the integers.

The construction is an induction on the number of vertices.  Splitting at a
vertex ``x`` (``peak_split``) separates the part living strictly left of
``x``, the part living strictly right of it, and a middle part in which
every map points injectively toward ``x`` and surjectively away from it.
Splitting twice, at 2 and at ``n - 1``, leaves a module whose interior maps
are isomorphisms; that module collapses to three vertices, where one of
three explicit recipes finishes the job.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .colimit import PairReport, check_all
from .linalg import (
    IntMatrix,
    NotFreeQuotient,
    complement,
    complement_within,
    hnf_cols,
    intersect,
    kernel_basis,
    preimage,
    solve_matrix,
    split_surjection,
)
from .persmod import (
    Barcode,
    Decomposition,
    PersModule,
    Submodule,
    concat_submodules,
    embed_submodule,
    has_peak,
    is_injective,
    is_surjective,
    pad_submodule,
    path_map,
    restrict,
    reverse_module,
    reverse_submodule,
    submodule_module,
    validate,
)
from .poset import BWD, FWD, Interval, ZigzagShape

__all__ = [
    "DecompOutcome",
    "Part",
    "PeakSplit",
    "PccViolation",
    "PreconditionViolated",
    "DecompositionBug",
    "decompose",
    "decompose_unchecked",
    "peak_split",
    "decompose_a3_case1",
    "decompose_a3_case2",
    "decompose_a3_case3",
    "extend_summand",
    "refine_to_rank_one",
]


class PccViolation(ValueError):
    """The construction needed a free quotient or an exact solve and did not get one."""


class PreconditionViolated(ValueError):
    pass


class DecompositionBug(RuntimeError):
    """A decomposition produced here failed its own verification."""


@dataclass(frozen=True)
class DecompOutcome:
    decomposition: Optional[Decomposition] = None
    refusal: Optional[PairReport] = None

    @property
    def ok(self) -> bool:
        return self.decomposition is not None

    @property
    def barcode(self) -> Barcode:
        from .verify import barcode_of

        if self.decomposition is None:
            raise ValueError("refused modules have no barcode")
        return barcode_of(self.decomposition)


@dataclass(frozen=True)
class Part:
    """A submodule together with the module it induces in its own coordinates."""

    embedding: Submodule
    module: PersModule


@dataclass(frozen=True)
class PeakSplit:
    g: Part
    h: Part
    j: Part


# --- small helpers ----------------------------------------------------

def _complement(g: IntMatrix, ambient: int) -> IntMatrix:
    try:
        return complement(g, ambient)
    except NotFreeQuotient as exc:
        raise PccViolation(f"quotient has torsion {list(exc.torsion)}") from None


def _complement_within(sub: IntMatrix, basis: IntMatrix) -> IntMatrix:
    try:
        return complement_within(sub, basis)
    except NotFreeQuotient as exc:
        raise PccViolation(f"quotient has torsion {list(exc.torsion)}") from None


def _solve(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    x = solve_matrix(a, b)
    if x is None:
        raise PccViolation("expected an integral preimage")
    return x


def _sub(*gens: IntMatrix) -> Submodule:
    return Submodule(tuple(gens))


def _nonzero(subs: list[Submodule]) -> list[Submodule]:
    return [s for s in subs if any(g.cols for g in s.gens)]


def _reverse_all(subs: list[Submodule]) -> list[Submodule]:
    return [reverse_submodule(s) for s in subs]


# --- base cases -------------------------------------------------------

def _single_vertex(m: PersModule) -> list[Submodule]:
    return [_sub(IntMatrix.identity(m.rank(1)))]


def _two_vertices(m: PersModule) -> list[Submodule]:
    if m.shape.orientations[0] is BWD:
        return _reverse_all(_two_vertices(reverse_module(m)))
    a = m.edge_matrix(1)
    r1, r2 = m.ranks
    ker = kernel_basis(a)
    g1 = _complement(ker, r1)
    img = a @ g1
    g2 = _complement(img, r2)
    return _nonzero([
        _sub(ker, IntMatrix.zeros(r2, 0)),
        _sub(g1, img),
        _sub(IntMatrix.zeros(r1, 0), g2),
    ])


def _case1(m: PersModule) -> list[Submodule]:
    """fwd,fwd with an injective first and a surjective second map."""
    a, b = m.edges
    r1, r2, r3 = m.ranks
    ker_b = kernel_basis(b)
    inter = intersect(a, ker_b)
    g = _complement_within(inter, a)
    k = _complement_within(inter, ker_b)
    h = _complement(inter.hstack(g, k), r2)
    z1, z3 = IntMatrix.zeros(r1, 0), IntMatrix.zeros(r3, 0)
    return _nonzero([
        _sub(z1, h, b @ h),
        _sub(_solve(a, g), g, b @ g),
        _sub(_solve(a, inter), inter, z3),
        _sub(z1, k, z3),
    ])


def _case2(m: PersModule) -> list[Submodule]:
    """fwd,bwd: both maps inject into the middle vertex."""
    a, c = m.edges
    r1, r2, r3 = m.ranks
    inter = intersect(a, c)
    g = _complement_within(inter, a)
    k = _complement_within(inter, c)
    h = _complement(inter.hstack(g, k), r2)
    z1, z3 = IntMatrix.zeros(r1, 0), IntMatrix.zeros(r3, 0)
    return _nonzero([
        _sub(z1, h, z3),
        _sub(_solve(a, g), g, z3),
        _sub(_solve(a, inter), inter, _solve(c, inter)),
        _sub(z1, k, _solve(c, k)),
    ])


def _case3(m: PersModule) -> list[Submodule]:
    """bwd,fwd: both maps leave the middle vertex surjectively."""
    a, c = m.edges
    r1, r2, r3 = m.ranks
    ker_a, ker_c = kernel_basis(a), kernel_basis(c)
    inter = intersect(ker_a, ker_c)
    g = _complement_within(inter, ker_a)
    k = _complement_within(inter, ker_c)
    h = _complement(inter.hstack(g, k), r2)
    z1, z3 = IntMatrix.zeros(r1, 0), IntMatrix.zeros(r3, 0)
    return _nonzero([
        _sub(z1, g, c @ g),
        _sub(a @ h, h, c @ h),
        _sub(a @ k, k, z3),
        _sub(z1, inter, z3),
    ])


def _three_vertices(m: PersModule) -> list[Submodule]:
    o = m.shape.orientations
    if o == (FWD, FWD):
        return _case1(m)
    if o == (BWD, BWD):
        return _reverse_all(_case1(reverse_module(m)))
    if o == (FWD, BWD):
        return _case2(m)
    return _case3(m)


def _check_a3(m: PersModule, orientations: tuple) -> None:
    if m.shape.orientations != orientations:
        raise PreconditionViolated(
            f"expected orientation {','.join(d.value for d in orientations)}, "
            f"got {m.shape.spec() or 'a single vertex'}")
    if not has_peak(m, 2):
        raise PreconditionViolated("vertex 2 is not a peak")


def decompose_a3_case1(m: PersModule) -> Decomposition:
    """Three vertices ``1 -> 2 -> 3`` (or the mirror image) with a peak at 2."""
    if m.shape.orientations == (BWD, BWD):
        _check_a3(reverse_module(m), (FWD, FWD))
    else:
        _check_a3(m, (FWD, FWD))
    return Decomposition(tuple(_three_vertices(m)))


def decompose_a3_case2(m: PersModule) -> Decomposition:
    """Three vertices ``1 -> 2 <- 3`` with both maps injective."""
    _check_a3(m, (FWD, BWD))
    return Decomposition(tuple(_case2(m)))


def decompose_a3_case3(m: PersModule) -> Decomposition:
    """Three vertices ``1 <- 2 -> 3`` with both maps surjective."""
    _check_a3(m, (BWD, FWD))
    return Decomposition(tuple(_case3(m)))


# --- the induction ----------------------------------------------------

class _Engine:
    def __init__(self):
        self.memo: dict[PersModule, list[Submodule]] = {}

    def run(self, m: PersModule) -> list[Submodule]:
        hit = self.memo.get(m)
        if hit is not None:
            return hit
        out = self._run(m)
        self.memo[m] = out
        return out

    def _run(self, m: PersModule) -> list[Submodule]:
        if m.is_zero:
            return []
        if m.n > 1 and 0 in m.ranks:
            return self._split_support(m)
        if m.n == 1:
            return _single_vertex(m)
        if m.n == 2:
            return _two_vertices(m)
        if m.n == 3:
            return self._through_peak(m, 2, lambda hm: _three_vertices(hm))
        return self._through_peak(m, 2, self._peak_at_two)

    def _split_support(self, m: PersModule) -> list[Submodule]:
        out = []
        x = 1
        while x <= m.n:
            if m.rank(x) == 0:
                x += 1
                continue
            y = x
            while y < m.n and m.rank(y + 1):
                y += 1
            iv = Interval(x, y)
            out.extend(pad_submodule(m, iv, s) for s in self.run(restrict(m, iv)))
            x = y + 1
        return out

    def split(self, m: PersModule, x: int) -> tuple[Submodule, Submodule, Submodule]:
        n = m.n
        left = self.run(restrict(m, Interval(1, x)))
        right = self.run(restrict(m, Interval(x, n)))
        g_parts = [pad_submodule(m, Interval(1, x), s) for s in left if s.rank_at(x) == 0]
        j_parts = [pad_submodule(m, Interval(x, n), s) for s in right if s.rank_at(1) == 0]
        lh = [s for s in left if s.rank_at(x)]
        rh = [s for s in right if s.rank_at(1)]
        gens = []
        for v in range(1, n + 1):
            if v < x:
                g = IntMatrix.zeros(m.rank(v), 0)
                for s in lh:
                    g = g.hstack(s.gens[v - 1])
            elif v == x:
                g = IntMatrix.identity(m.rank(x))
            else:
                g = IntMatrix.zeros(m.rank(v), 0)
                for s in rh:
                    g = g.hstack(s.gens[v - x])
            gens.append(g)
        return (concat_submodules(m, g_parts), Submodule(tuple(gens)),
                concat_submodules(m, j_parts))

    def _through_peak(self, m: PersModule, x: int, finish) -> list[Submodule]:
        g, h, j = self.split(m, x)
        out = []
        for part in (g, j):
            out.extend(embed_submodule(part, s) for s in self.run(submodule_module(m, part)))
        out.extend(embed_submodule(h, s) for s in finish(submodule_module(m, h)))
        return out

    def _peak_at_two(self, m: PersModule) -> list[Submodule]:
        return self._through_peak(m, m.n - 1, _collapse)


def _collapse(m: PersModule) -> list[Submodule]:
    """Decompose a module with peaks at 2 and ``n - 1`` through three vertices."""
    n = m.n
    o = m.shape.orientations
    transport = {2: IntMatrix.identity(m.rank(2))}
    for k in range(2, n - 1):
        e = m.edge_matrix(k)
        if o[k - 1] is FWD:
            transport[k + 1] = e @ transport[k]
        else:
            transport[k + 1] = _solve(e, transport[k])
        if transport[k + 1].rows != transport[k + 1].cols:
            raise PccViolation(f"interior edge {k} is not an isomorphism")
    last = m.edge_matrix(n - 1)
    if o[n - 2] is FWD:
        e2 = last @ transport[n - 1]
    else:
        e2 = _solve(transport[n - 1], last)
    small = PersModule(ZigzagShape((o[0], o[n - 2])), (m.rank(1), m.rank(2), m.rank(n)),
                       (m.edge_matrix(1), e2))
    out = []
    for s in _three_vertices(small):
        a, b, c = s.gens
        out.append(Submodule((a,) + tuple(transport[k] @ b for k in range(2, n)) + (c,)))
    return out


def peak_split(m: PersModule, x: int) -> PeakSplit:
    """Split ``m`` as G + H + J with H peaked at ``x``; G lives left of ``x``, J right."""
    if not 1 < x < m.n:
        raise PreconditionViolated(f"vertex {x} is not interior to 1..{m.n}")
    g, h, j = _Engine().split(m, x)
    return PeakSplit(*(Part(p, submodule_module(m, p)) for p in (g, h, j)))


def decompose_unchecked(m: PersModule) -> Decomposition:
    """Run the construction without the up-front condition check.

    Inputs that fail the conditions raise :class:`PccViolation` or yield
    a decomposition that fails verification.
    """
    validate(m)
    return Decomposition(tuple(_Engine().run(m)))


def _transport_basis(m: PersModule, s: Submodule) -> list[list[IntMatrix]]:
    sup = s.support
    lo, hi = sup[0], sup[-1]
    basis = {lo: s.gens[lo - 1]}
    for v in range(lo, hi):
        e = m.edge_matrix(v)
        if m.shape.orientations[v - 1] is FWD:
            basis[v + 1] = e @ basis[v]
        else:
            tgt = s.gens[v]
            basis[v + 1] = tgt @ _solve(e @ tgt, basis[v])
    r = s.total_rank
    cols = []
    for j in range(r):
        gens = []
        for x in m.shape.vertices:
            if lo <= x <= hi:
                gens.append(basis[x].select_columns([j]))
            else:
                gens.append(IntMatrix.zeros(m.rank(x), 0))
        cols.append(gens)
    return cols


def refine_to_rank_one(m: PersModule, d: Decomposition) -> Decomposition:
    """Split every constant-rank summand into rank-one summands.

    One basis is chosen at the left end of the support and carried along
    the summand's internal isomorphisms.
    """
    out = []
    for s in d.summands:
        if not s.support:
            continue
        if s.total_rank == 1:
            out.append(s)
            continue
        out.extend(Submodule(tuple(g)) for g in _transport_basis(m, s))
    return Decomposition(tuple(out))


def decompose(m: PersModule, verify: bool = True) -> DecompOutcome:
    """Interval decomposition, or the first failing condition pair."""
    from .verify import verify_decomposition

    validate(m)
    report = check_all(m, stop_at_first=True)
    if not report.ok:
        return DecompOutcome(refusal=report.first_failure)
    raw = decompose_unchecked(m)
    d = refine_to_rank_one(m, raw).sorted()
    if verify:
        rep = verify_decomposition(m, d)
        if not rep.ok:
            raise DecompositionBug(f"self-verification failed: {rep.codes()}")
    return DecompOutcome(decomposition=d)


# --- extending decompositions past monotone runs ----------------------

def _check_extension(m: PersModule, out: list[Submodule], what: str) -> list[Submodule]:
    from .verify import verify_decomposition

    d = Decomposition(tuple(_nonzero(out)))
    if not verify_decomposition(m, d).ok:
        raise PreconditionViolated(f"inner decomposition is not compatible with the {what} of the run")
    return list(d.summands)


def _extend_right(m: PersModule, hi: int, inner: list[Submodule]) -> list[Submodule]:
    """Carry a decomposition of ``restrict(m, [1, hi])`` along the run ``hi..n``.

    Four situations are handled.  Away from the interval: injective maps
    push summands forward and the rest is a complement of the image;
    surjective maps push summands forward, which needs the summands to
    split the kernels.  Toward the interval: surjective maps lift
    summands through a section and the rest is the kernel; injective maps
    pull summands back, which needs the summands to split the images.
    """
    n = m.n
    if hi == n:
        return list(inner)
    run = m.shape.orientations[hi - 1:]
    if len(set(run)) != 1:
        raise PreconditionViolated(f"vertices {hi}..{n} do not form a monotone run")
    edges = [m.edge_matrix(k) for k in range(hi, n)]
    injective = all(is_injective(e) for e in edges)
    surjective = all(is_surjective(e) for e in edges)
    out = []
    if run[0] is FWD and injective:
        for s in inner:
            tail = tuple(path_map(m, hi, x) @ s.gens[hi - 1] for x in range(hi + 1, n + 1))
            out.append(Submodule(tuple(s.gens) + tail))
        try:
            rest_n = complement(path_map(m, hi, n), m.rank(n))
        except NotFreeQuotient as exc:
            raise PreconditionViolated(f"cokernel of the run has torsion {list(exc.torsion)}") from None
        rest = [IntMatrix.zeros(m.rank(x), 0) for x in range(1, hi + 1)]
        rest += [preimage(path_map(m, x, n), rest_n) for x in range(hi + 1, n + 1)]
    elif run[0] is FWD and surjective:
        for s in inner:
            tail = tuple(hnf_cols(path_map(m, hi, x) @ s.gens[hi - 1]) for x in range(hi + 1, n + 1))
            out.append(Submodule(tuple(s.gens) + tail))
        return _check_extension(m, out, "kernels")
    elif run[0] is BWD and surjective:
        p = path_map(m, n, hi)
        psi = split_surjection(p)
        for s in inner:
            lift = psi @ s.gens[hi - 1]
            tail = tuple(path_map(m, n, x) @ lift for x in range(hi + 1, n + 1))
            out.append(Submodule(tuple(s.gens) + tail))
        ker = kernel_basis(p)
        rest = [IntMatrix.zeros(m.rank(x), 0) for x in range(1, hi + 1)]
        rest += [hnf_cols(path_map(m, n, x) @ ker) for x in range(hi + 1, n + 1)]
    elif run[0] is BWD and injective:
        for s in inner:
            tail = tuple(preimage(path_map(m, x, hi), s.gens[hi - 1]) for x in range(hi + 1, n + 1))
            out.append(Submodule(tuple(s.gens) + tail))
        return _check_extension(m, out, "images")
    else:
        raise PreconditionViolated("maps along the run are neither all injective nor all surjective")
    rest_sub = Submodule(tuple(rest))
    inner_rest = _Engine().run(submodule_module(m, rest_sub))
    out.extend(embed_submodule(rest_sub, s) for s in inner_rest)
    return _nonzero(out)


def extend_summand(m: PersModule, iv: Interval, inner: Decomposition) -> Decomposition:
    """Extend a decomposition of ``restrict(m, iv)`` to all of ``m``.

    Outside ``iv`` each side must be a single monotone run whose maps are
    all injective or all surjective.  Summands reaching the boundary of
    ``iv`` are carried along the run; whatever is left over is decomposed
    separately.
    """
    m.shape.check_interval(iv)
    for s in inner.summands:
        if len(s.gens) != len(iv):
            raise PreconditionViolated("inner decomposition does not live on the interval")
    right = restrict(m, Interval(iv.lo, m.n))
    step = _extend_right(right, len(iv), list(inner.summands))
    rev = reverse_module(m)
    rev_inner = _reverse_all(step)
    full = _extend_right(rev, m.n - iv.lo + 1, rev_inner)
    return Decomposition(tuple(_reverse_all(full)))
