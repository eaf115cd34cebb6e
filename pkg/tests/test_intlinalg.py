"""Exact integer linear algebra."""

from fractions import Fraction

from hypothesis import given, strategies as st

from newton_monodromy.intlinalg import (
    content,
    coords_in_basis,
    det_int,
    hnf_with_transform,
    integer_solve,
    left_kernel,
    primitive,
    rational_rank,
    right_kernel,
    row_hnf,
    saturation,
    solve_rational,
    vec_dot,
    vec_sub,
)

matrix_st = st.lists(
    st.lists(st.integers(-6, 6), min_size=3, max_size=3),
    min_size=1, max_size=4)


def test_content_and_primitive():
    assert content((4, -6, 0)) == 2
    assert content((0, 0)) == 0
    assert primitive((4, -6, 0)) == (2, -3, 0)


def test_det_known():
    assert det_int([[1, 2], [3, 4]]) == -2
    assert det_int([[2, 0, 0], [0, 3, 0], [0, 0, 4]]) == 24


@given(matrix_st)
def test_hnf_preserves_row_span(rows):
    h, u = hnf_with_transform(rows)
    # U * rows == H exactly, with U unimodular over the kept rows
    assert len(h) == len(rows)
    for i, hrow in enumerate(h):
        acc = [0, 0, 0]
        for j, c in enumerate(u[i]):
            acc = [a + c * x for a, x in zip(acc, rows[j])]
        assert tuple(acc) == tuple(hrow)
    assert rational_rank([r for r in h if any(r)]) == rational_rank(rows)


@given(matrix_st)
def test_kernels_annihilate(rows):
    for v in left_kernel(rows):
        assert all(sum(c * row[j] for c, row in zip(v, rows)) == 0
                   for j in range(3))
    for v in right_kernel(rows, 3):
        assert all(vec_dot(row, v) == 0 for row in rows)


@given(matrix_st)
def test_saturation_contains_rows(rows):
    basis = saturation(rows, 3)
    assert len(basis) == rational_rank(rows)
    for r in rows:
        assert coords_in_basis(basis, r) is not None


def test_saturation_divides_index():
    # rows spanning an index-2 sublattice of a rank-1 lattice
    basis = saturation([[2, 4]], 2)
    assert basis == [(1, 2)] or basis == [(-1, -2)]


def test_solve_rational():
    sol = solve_rational([[2, 0], [1, 3]], [1, 2])
    assert sol == (Fraction(1, 2), Fraction(1, 2))
    assert solve_rational([[1, 1], [2, 2]], [1, 3]) is None


@given(matrix_st, st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_integer_solve_round_trip(rows, x):
    b = [sum(r[j] * x[j] for j in range(3)) for r in rows]
    got = integer_solve(rows, b)
    assert got is not None
    back = [sum(r[j] * got[j] for j in range(3)) for r in rows]
    assert back == b


def test_integer_solve_no_solution():
    assert integer_solve([[2, 0]], [1]) is None


def test_row_hnf_idempotent():
    rows = [[3, 1, 4], [1, 5, 9], [2, 6, 5]]
    h = row_hnf(rows)
    assert row_hnf(h) == h
