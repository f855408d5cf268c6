import random

from hypothesis import given, strategies as st

from zzpers.decompose import decompose
from zzpers.generate import gen_decomposable, random_shape, random_unimodular
from zzpers.linalg import IntMatrix
from zzpers.persmod import Barcode, Decomposition, Submodule, interval_module
from zzpers.poset import Interval, make_shape
from zzpers.verify import barcode_of, barcodes_equal, verify_decomposition

from conftest import module


def sample(seed=3):
    m, _ = gen_decomposable(seed, make_shape(["fwd", "bwd", "fwd"]), 6, None, 3)
    return m, decompose(m).decomposition


def test_decompose_output_verifies():
    m, d = sample()
    assert verify_decomposition(m, d).ok


def test_tampered_entry_is_caught():
    m, d = sample()
    s0 = d.summands[0]
    x = s0.support[0]
    g = s0.gens[x - 1].tolist()
    g[0][0] += 1
    tampered = list(s0.gens)
    tampered[x - 1] = IntMatrix.from_rows(g)
    bad = Decomposition((Submodule(tuple(tampered)),) + d.summands[1:])
    rep = verify_decomposition(m, bad)
    assert not rep.ok
    assert any(f.code == "not_direct_sum" and f.vertex == x for f in rep.failures) \
        or any(f.code in ("not_invariant", "not_isomorphism") for f in rep.failures)


def test_direct_sum_failure_names_vertex():
    m = module("fwd", [1, 1], [[1]])
    d = Decomposition((Submodule((IntMatrix.from_rows([[2]]), IntMatrix.from_rows([[2]]))),))
    rep = verify_decomposition(m, d)
    assert [f.code for f in rep.failures] == ["not_direct_sum", "not_direct_sum"]
    assert rep.failures[0].witness == IntMatrix.from_rows([[2]])


def test_support_gap():
    m = module("fwd,fwd", [1, 1, 1], [[0]], [[0]])
    gapped = Submodule((IntMatrix.identity(1), IntMatrix.zeros(1, 0), IntMatrix.identity(1)))
    middle = Submodule((IntMatrix.zeros(1, 0), IntMatrix.identity(1), IntMatrix.zeros(1, 0)))
    rep = verify_decomposition(m, Decomposition((gapped, middle)))
    assert "support_gap" in rep.codes()


def test_non_isomorphism_inside_summand():
    m = module("fwd", [1, 1], [[2]])
    one = Submodule((IntMatrix.identity(1), IntMatrix.identity(1)))
    rep = verify_decomposition(m, Decomposition((one,)))
    assert rep.codes() == ["not_isomorphism"]
    assert rep.failures[0].witness == IntMatrix.from_rows([[2]])


def test_rank_not_constant():
    m = module("fwd", [2, 1], [[1, 0]])
    s = Submodule((IntMatrix.identity(2), IntMatrix.identity(1)))
    assert "rank_not_constant" in verify_decomposition(m, Decomposition((s,))).codes()


def test_barcode_of():
    assert len(barcode_of(Decomposition(()))) == 0
    m = interval_module(make_shape(["fwd"]), Interval(1, 2), 2)
    e = [IntMatrix.from_rows([[1], [0]]), IntMatrix.from_rows([[0], [1]])]
    d = Decomposition((Submodule((e[0], e[0])), Submodule((e[1], e[1]))))
    assert verify_decomposition(m, d).ok
    bc = barcode_of(d)
    assert bc.counter()[(1, 2)] == 2
    assert all(r == 1 for _, r in bc.bars)


def test_barcodes_equal():
    a = Barcode.of([((1, 2), 1), ((2, 3), 1), ((1, 1), 1)])
    b = Barcode.of([((1, 1), 1), ((1, 2), 1), ((2, 3), 1)])
    assert barcodes_equal(a, b)
    assert not barcodes_equal(Barcode.of([((1, 2), 1)]), Barcode.of([((1, 1), 1), ((2, 2), 1)]))
    assert barcodes_equal(Barcode.of([((1, 2), 2)]), Barcode.of([((1, 2), 1), ((1, 2), 1)]))


@given(st.integers(0, 10 ** 6))
def test_rank_accounting_and_rebasing(seed):
    rng = random.Random(seed)
    m, _ = gen_decomposable(rng, random_shape(rng, rng.randint(1, 6)), 6, None, 2)
    d = decompose(m).decomposition
    for x in m.shape.vertices:
        assert sum(s.rank_at(x) for s in d.summands) == m.rank(x)
    # re-presenting each summand's generators by a unimodular change keeps everything valid
    rebased = []
    for s in d.summands:
        rebased.append(Submodule(tuple(g @ random_unimodular(rng, g.cols, 3) for g in s.gens)))
    d2 = Decomposition(tuple(reversed(rebased)))
    assert verify_decomposition(m, d2).ok
    assert barcodes_equal(barcode_of(d), barcode_of(d2))


def test_json_roundtrip():
    m, d = sample(8)
    again = Decomposition.from_json(d.to_json())
    assert again == d
    assert d.to_json()["bars"] == barcode_of(d).to_json()
