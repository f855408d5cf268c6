"""Embedded corpus of golden cases and oracle cross-checks."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from . import linalg as la
from .colimit import check_all, check_pair
from .decompose import decompose
from .generate import gen_adversarial, gen_decomposable, random_shape
from .linalg import IntMatrix
from .oracles import coequalizer_pair, naive_invariant_factors, rational_barcode
from .persmod import PersModule, interval_module
from .poset import Interval, make_shape, parse_shape_spec


@dataclass(frozen=True)
class Case:
    name: str
    run: Callable[[], bool]


def _m(spec: str, ranks, *edges) -> PersModule:
    return PersModule(parse_shape_spec(spec), tuple(ranks),
                      tuple(IntMatrix.from_rows(e, cols=None) if e else IntMatrix.zeros(0, 0)
                            for e in edges))


def _bars(m: PersModule) -> list[tuple[int, int]]:
    out = decompose(m)
    if not out.ok:
        return ["refused"]
    return sorted(out.barcode.counter().elements())


def _snf_case(rows, diag) -> Case:
    def run():
        a = IntMatrix.from_rows(rows)
        res = la.snf(a)
        return (res.u @ a @ res.v == res.s and res.diagonal[:len(diag)] == diag
                and not any(res.diagonal[len(diag):]))
    return Case(f"snf {rows}", run)


def _refusal_case(name: str, m: PersModule, pair, cond: str, torsion) -> Case:
    def run():
        out = decompose(m)
        if out.ok:
            return False
        r = out.refusal
        return (r.x, r.y) == pair and r.first_failure == (cond, tuple(torsion))
    return Case(name, run)


def _bars_case(name: str, m: PersModule, expected) -> Case:
    return Case(name, lambda: _bars(m) == sorted(expected))


def _roundtrip_case(seed: int) -> Case:
    def run():
        rng = random.Random(seed)
        shape = random_shape(rng, rng.randint(2, 7))
        m, bc = gen_decomposable(rng, shape, 6, None, 3)
        out = decompose(m)
        return out.ok and out.barcode.counter() == bc.counter() == rational_barcode(m)
    return Case(f"round trip seed {seed}", run)


def _coequalizer_case(seed: int) -> Case:
    def run():
        rng = random.Random(seed)
        n = rng.randint(1, 4)
        m = gen_adversarial(rng, random_shape(rng, n), 3, 3)
        for x in range(1, n + 1):
            for y in range(x, n + 1):
                got = check_pair(m, x, y).conditions
                want = coequalizer_pair(m, x, y)
                if any((c.free_rank, c.torsion_factors) != want[k] for k, c in got.items()):
                    return False
        return True
    return Case(f"coequalizer seed {seed}", run)


def _naive_snf_case(seed: int) -> Case:
    def run():
        rng = random.Random(seed)
        for _ in range(20):
            r, c = rng.randint(0, 5), rng.randint(0, 5)
            a = IntMatrix(r, c, [[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)])
            if [x for x in la.snf(a).diagonal if x] != naive_invariant_factors(a.tolist()):
                return False
        return True
    return Case(f"snf against naive eliminator seed {seed}", run)


def corpus() -> list[Case]:
    a2 = make_shape(["fwd"])
    cases = [
        _snf_case([[2, 4], [6, 8]], [2, 4]),
        _snf_case([[1, 2], [3, 4]], [1, 2]),
        _snf_case([[2, 0], [0, 3]], [1, 6]),
        _snf_case([[0, 0], [0, 0]], []),
        _snf_case([[4, 6]], [2]),
        Case("coker of [[2]] is Z/2",
             lambda: la.cokernel_invariants(IntMatrix.from_rows([[2]])).torsion_factors == (2,)),
        _refusal_case("A2 edge [[2]] refused", _m("fwd", [1, 1], [[2]]), (1, 2), "C2", [2]),
        _refusal_case("A2 bwd edge [[2]] refused", _m("bwd", [1, 1], [[2]]), (1, 2), "C3", [2]),
        _refusal_case("fwd,bwd with [[1]],[[2]] refused", _m("fwd,bwd", [1, 1, 1], [[1]], [[2]]),
                      (1, 3), "C3", [2]),
        _bars_case("A2 partial identity", _m("fwd", [2, 2], [[1, 0], [0, 0]]),
                   [(1, 2), (1, 1), (2, 2)]),
        _bars_case("three-vertex chain", _m("fwd,fwd", [1, 2, 1], [[1], [0]], [[0, 1]]),
                   [(1, 2), (2, 3)]),
        _bars_case("three-vertex sink", _m("fwd,bwd", [1, 2, 1], [[1], [0]], [[0], [1]]),
                   [(1, 2), (2, 3)]),
        _bars_case("three-vertex source", _m("bwd,fwd", [1, 2, 1], [[1, 0]], [[0, 1]]),
                   [(1, 2), (2, 3)]),
        _bars_case("three-vertex reversed chain", _m("bwd,bwd", [1, 2, 1], [[0, 1]], [[1], [0]]),
                   [(1, 2), (2, 3)]),
        _bars_case("interval module of rank 3", interval_module(a2, Interval(1, 2), 3),
                   [(1, 2)] * 3),
        _bars_case("zero module", interval_module(make_shape(["fwd", "bwd"]), Interval(1, 3), 0), []),
        Case("interval modules pass every condition",
             lambda: all(check_all(interval_module(make_shape(["fwd", "bwd", "bwd"]), Interval(lo, hi))).ok
                         for lo in range(1, 5) for hi in range(lo, 5))),
    ]
    cases += [_roundtrip_case(s) for s in range(1, 5)]
    cases += [_coequalizer_case(s) for s in range(1, 4)]
    cases += [_naive_snf_case(s) for s in range(1, 3)]
    return cases


def run_selfcheck(verbose: bool = False, out=print) -> int:
    """Run the corpus; returns the number of failing cases."""
    cases = corpus()
    failed = []
    for case in cases:
        try:
            ok = bool(case.run())
        except Exception as exc:  # a broken kernel may raise anywhere
            ok = False
            if verbose:
                out(f"  error in {case.name}: {type(exc).__name__}: {exc}")
        if not ok:
            failed.append(case.name)
        if verbose:
            out(f"{'PASS' if ok else 'FAIL'}  {case.name}")
    out(f"selfcheck: {len(cases)} cases, {len(cases) - len(failed)} passed, {len(failed)} failed")
    for name in failed:
        out(f"  failed: {name}")
    return len(failed)
