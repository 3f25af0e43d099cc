from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dgres.field import GF, QQ, FieldMismatchError, check_same, field_from_string
from dgres.linalg import DimensionError, Matrix, Subspace, kernel_basis, rank, solve

from helpers import random_matrix, rng_for, sym_rank

FIELDS = [QQ, GF(2), GF(3), GF(7)]


def test_field_parsing_and_printing():
    assert field_from_string("Q") == QQ
    assert field_from_string("Fp:5") == GF(5)
    assert QQ.fmt(Fraction(-3, 4)) == "-3/4"
    assert QQ.parse("6/4") == Fraction(3, 2)
    assert GF(3).parse("1/2") == 2
    with pytest.raises(ZeroDivisionError):
        GF(2).parse("1/2")
    with pytest.raises(ValueError):
        field_from_string("Fp:4")
    with pytest.raises(FieldMismatchError):
        check_same(QQ, GF(2))


def test_rank_examples():
    assert rank(Matrix.from_rows([[1, 2], [2, 4]])) == 1
    assert rank(Matrix.from_rows([[1, 1], [1, 1]], GF(2))) == 1
    assert rank(Matrix.from_rows([[1, 0], [0, 1]], GF(2))) == 2
    assert rank(Matrix.zeros(0, 3)) == 0


def test_kernel_of_row():
    ks = kernel_basis(Matrix.from_rows([[1, 1]]))
    assert len(ks) == 1
    a, b = ks[0]
    assert a == -b and a != 0


def test_solve_and_no_solution():
    m = Matrix.from_rows([[1, 2], [3, 4]])
    x = solve(m, [5, 6])
    assert [sum(m.entry(i, j) * x[j] for j in range(2)) for i in range(2)] == [5, 6]
    assert solve(Matrix.from_rows([[1, 1], [1, 1]]), [1, 2]) is None
    with pytest.raises(DimensionError):
        solve(m, [1])


def test_shape_errors():
    with pytest.raises(DimensionError):
        Matrix.from_rows([[1, 2], [3]])
    with pytest.raises(DimensionError):
        Matrix.zeros(2, 3) @ Matrix.zeros(2, 3)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(0, 6), st.integers(0, 6), st.sampled_from(FIELDS))
def test_rank_nullity_and_kernel(seed, r, c, field):
    m = random_matrix(rng_for(seed), r, c, field)
    k = m.kernel()
    assert m.rank() + len(k) == c
    for v in k:
        assert m.apply(v) == {}
    assert m.rank() == sym_rank(m)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from(FIELDS))
def test_solve_consistent_systems(seed, field):
    rng = rng_for(seed)
    m = random_matrix(rng, 4, 5, field)
    x0 = {j: field(rng.randint(-2, 2)) for j in range(5)}
    b = m.apply({j: v for j, v in x0.items() if v})
    x = m.solve(b)
    assert x is not None and m.apply(x) == b


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from(FIELDS))
def test_subspace_coordinates(seed, field):
    rng = rng_for(seed)
    vecs = [random_matrix(rng, 6, 1, field).columns[0] for _ in range(4)]
    sp = Subspace(6, vecs, field)
    p = field.p
    for v in vecs:
        co = sp.coordinates(v)
        assert co is not None
        back = {}
        for i, c in co.items():
            for k, x in sp.basis[i].items():
                y = back.get(k, 0) + c * x
                back[k] = y % p if p else y
        assert {k: x for k, x in back.items() if x} == v
    assert sp.dim + len(sp.complement) == 6


def test_matrix_algebra():
    a = Matrix.from_rows([[1, 2], [0, 1]])
    b = Matrix.from_rows([[1, -2], [0, 1]])
    assert a @ b == Matrix.identity(2)
    assert (a - a).is_zero()
    assert a.transpose().transpose() == a
