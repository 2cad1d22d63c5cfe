"""Exact linear algebra over rationals and number fields."""

from fractions import Fraction

from gpakit.linalg import RATIONAL, Matrix, sparse_nullspace


def test_rref_and_rank():
    m = Matrix.from_rows_rational([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert m.rank() == 2


def test_nullspace_rational():
    m = Matrix.from_rows_rational([[1, 2, 3], [4, 5, 6]])
    basis = m.nullspace()
    assert len(basis) == 1
    v = basis[0]
    for row in m.rows:
        assert sum(a * b for a, b in zip(row, v)) == 0


def test_solve_and_inverse():
    m = Matrix.from_rows_rational([[2, 1], [1, 1]])
    x = m.solve([Fraction(3), Fraction(2)])
    assert x == [Fraction(1), Fraction(1)]
    inv = m.inverse()
    prod = m * inv
    assert prod.rows == Matrix.identity(2, RATIONAL).rows


def test_det_and_charpoly():
    m = Matrix.from_rows_rational([[2, 0], [0, 3]])
    assert m.det() == 6
    cp = m.charpoly()
    # x^2 - 5x + 6
    assert cp == [Fraction(6), Fraction(-5), Fraction(1)]


def test_field_matrix(Qd):
    d = Qd.gen
    m = Matrix.from_rows([[d, Qd.one], [Qd.one, d]], Qd)
    det = m.det()
    assert det == d * d - 1
    inv = m.inverse()
    assert (m * inv).rows[0][0] == Qd.one
    assert (m * inv).rows[0][1] == Qd.zero


def test_sparse_nullspace_matches_dense(Qd):
    d = Qd.gen
    rows_dense = [
        [d, Qd.one, Qd.zero, -d],
        [Qd.zero, d, -Qd.one, Qd.one],
        [d, Qd.one + d, -Qd.one, Qd.one - d],
    ]
    m = Matrix.from_rows(rows_dense, Qd)
    dense_basis = m.nullspace()
    sparse_rows = [
        {j: v for j, v in enumerate(r) if not v.is_zero()} for r in rows_dense
    ]
    sparse_basis = sparse_nullspace(sparse_rows, 4, Qd)
    assert len(sparse_basis) == len(dense_basis)
    for v in sparse_basis:
        for r in rows_dense:
            acc = Qd.zero
            for a, b in zip(r, v):
                acc = acc + a * b
            assert acc.is_zero()


def test_sparse_nullspace_rationals():
    rows = [{0: Fraction(1), 2: Fraction(-1)}, {1: Fraction(2), 2: Fraction(2)}]
    basis = sparse_nullspace(rows, 3, RATIONAL)
    assert len(basis) == 1
    v = basis[0]
    assert v[0] == v[2] and v[1] == -v[2]
