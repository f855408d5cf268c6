import pytest
from hypothesis import given, strategies as st

from zzpers import linalg as la
from zzpers.linalg import IntMatrix
from zzpers.oracles import naive_invariant_factors

from conftest import int_matrices, mat


def divides_chain(d):
    nz = [x for x in d if x]
    return all(b % a == 0 for a, b in zip(nz, nz[1:])) and all(x > 0 for x in nz) \
        and all(x == 0 for x in d[len(nz):])


@given(int_matrices())
def test_snf_identity_and_unimodular(a):
    res = la.snf(a)
    assert res.u @ a @ res.v == res.s
    assert la.is_unimodular(res.u) and la.is_unimodular(res.v)
    for i in range(res.s.rows):
        for j in range(res.s.cols):
            if i != j:
                assert res.s[i, j] == 0
    assert divides_chain(res.diagonal)


@given(int_matrices())
def test_snf_matches_naive(a):
    assert [x for x in la.snf(a).diagonal if x] == naive_invariant_factors(a.tolist())


@pytest.mark.parametrize("rows,diag", [
    ([[2, 4], [6, 8]], [2, 4]),
    ([[2, 0], [0, 3]], [1, 6]),
    ([[6]], [6]),
    ([[0, 0, 0]], [0]),
    ([[1, 2, 3], [4, 5, 6], [7, 8, 9]], [1, 3, 0]),
])
def test_snf_golden(rows, diag):
    assert la.snf(mat(rows)).diagonal == diag


def test_snf_empty():
    for shape in [(0, 0), (0, 3), (3, 0)]:
        a = IntMatrix.zeros(*shape)
        res = la.snf(a)
        assert res.rank == 0
        assert res.u.shape == (shape[0], shape[0])
        assert res.v.shape == (shape[1], shape[1])


def test_hnf_cols_canonical():
    assert la.hnf_cols(mat([[2, 4], [6, 8]])) == mat([[2, 0], [2, 4]])
    assert la.hnf_cols(mat([[2, 3]])) == mat([[1]])
    assert la.hnf_cols(mat([[1, 1], [0, 0]])) == mat([[1], [0]])


@given(int_matrices(max_dim=4), st.integers(0, 10 ** 6))
def test_hnf_invariant_under_column_moves(a, seed):
    from zzpers.generate import random_unimodular
    u = random_unimodular(seed, a.cols, 4)
    assert la.hnf_cols(a @ u) == la.hnf_cols(a)


@given(int_matrices())
def test_kernel_basis(a):
    k = la.kernel_basis(a)
    assert (a @ k).is_zero()
    assert k.cols == a.cols - la.rank(a)
    # saturated: the quotient by the kernel is free
    assert la.cokernel_invariants(k).is_free


@given(int_matrices())
def test_image_basis_spans_image(a):
    b = la.image_basis(a)
    assert b.cols == la.rank(a)
    assert la.solve_matrix(b, a) is not None
    assert la.solve_matrix(a, b) is not None


@given(int_matrices())
def test_cokernel_invariants_rank_count(a):
    inv = la.cokernel_invariants(a)
    assert inv.free_rank == a.rows - la.rank(a)
    assert all(t > 1 for t in inv.torsion_factors)


def test_cokernel_golden():
    assert la.cokernel_invariants(mat([[2]])).torsion_factors == (2,)
    inv = la.cokernel_invariants(mat([[2, 0], [0, 0]]))
    assert inv.free_rank == 1 and inv.torsion_factors == (2,)
    assert la.cokernel_invariants(IntMatrix.zeros(3, 0)).free_rank == 3


@given(int_matrices(), st.data())
def test_solve_roundtrip(a, data):
    x = data.draw(int_matrices(rows=a.cols, cols=1, bound=5))
    b = a @ x
    sol = la.solve(a, b)
    assert sol is not None and a @ sol == b


def test_solve_none():
    assert la.solve(mat([[2]]), [3]) is None
    assert la.solve(mat([[1], [1]]), [1, 2]) is None
    assert la.solve(mat([[1, 1], [0, 2]]), [1, 2]) == mat([[0], [1]])


@given(int_matrices(max_dim=4))
def test_split_surjection(a):
    if la.cokernel_invariants(a).is_zero:
        psi = la.split_surjection(a)
        assert a @ psi == IntMatrix.identity(a.rows)
    else:
        with pytest.raises(la.NotSurjective):
            la.split_surjection(a)


def test_split_surjection_golden():
    assert la.split_surjection(mat([[2, 1]])) == mat([[0], [1]])
    with pytest.raises(la.NotSurjective) as err:
        la.split_surjection(mat([[2]]))
    assert err.value.invariants.torsion_factors == (2,)


@given(int_matrices(max_dim=4))
def test_complement(g):
    inv = la.cokernel_invariants(g)
    if inv.is_free:
        c = la.complement(g, g.rows)
        basis = la.image_basis(g).hstack(c)
        assert basis.cols == g.rows and la.is_unimodular(basis)
    else:
        with pytest.raises(la.NotFreeQuotient):
            la.complement(g, g.rows)


def test_complement_golden():
    assert la.complement(mat([[1], [1]]), 2).cols == 1
    with pytest.raises(la.NotFreeQuotient) as err:
        la.complement(mat([[2], [0]]), 2)
    assert err.value.torsion == (2,)


@given(int_matrices(max_dim=3, rows=3), int_matrices(max_dim=3, rows=3))
def test_intersect(a, b):
    i = la.intersect(a, b)
    assert la.solve_matrix(a, i) is not None
    assert la.solve_matrix(b, i) is not None
    ra, rb = la.rank(a), la.rank(b)
    assert la.rank(i) == ra + rb - la.rank(a.hstack(b))


def test_intersect_golden():
    assert la.intersect(mat([[2], [0]]), mat([[1], [0]])) == mat([[2], [0]])
    assert la.intersect(mat([[1], [0]]), mat([[0], [1]])).cols == 0


@given(int_matrices(max_dim=3, rows=3), int_matrices(max_dim=3, rows=3))
def test_preimage(m, b):
    p = la.preimage(m, b)
    assert la.solve_matrix(b, m @ p) is not None
    assert la.solve_matrix(p, la.kernel_basis(m)) is not None


def test_preimage_golden():
    assert la.preimage(mat([[2]]), mat([[4]])) == mat([[2]])


@given(int_matrices(max_dim=4))
def test_det_matches_snf(a):
    if a.rows != a.cols:
        with pytest.raises(ValueError):
            la.det(a)
        return
    d = 1
    for x in la.snf(a).diagonal:
        d *= x
    assert abs(la.det(a)) == d


def test_unimodular():
    assert la.is_unimodular(mat([[1, 3], [1, 4]]))
    assert not la.is_unimodular(mat([[2]]))
    assert la.is_unimodular(IntMatrix.zeros(0, 0))


def test_json_roundtrip_big_entries():
    a = mat([[2 ** 70, -1], [0, -(2 ** 63)]])
    obj = a.to_json()
    assert obj["data"][0][0] == str(2 ** 70)
    assert obj["data"][1][1] == -(2 ** 63)
    assert IntMatrix.from_json(obj) == a


def test_json_rejects_bad_shape():
    with pytest.raises(ValueError):
        IntMatrix.from_json({"rows": 2, "cols": 1, "data": [[1]]})
