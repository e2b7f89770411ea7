from fractions import Fraction as F

from hypothesis import given, strategies as st

from stabglue.linalg import (
    column_space_basis,
    columns_contained,
    hstack,
    identity,
    kernel_basis,
    mat,
    mat_mul,
    mat_vec,
    quotient_basis,
    rank,
    rref,
    solve,
    transpose,
    zeros,
)

small = st.integers(min_value=-4, max_value=4)


def rand_matrix(draw, rows, cols):
    return mat(
        [[F(draw.draw(small)) for _ in range(cols)] for _ in range(rows)]
    )


@given(st.data(), st.integers(1, 4), st.integers(1, 4))
def test_kernel_and_rank(data, r, c):
    m = rand_matrix(data, r, c)
    kb = kernel_basis(m, ncols=c)
    assert rank(m) + len(kb) == c
    for v in kb:
        assert all(x == 0 for x in mat_vec(m, v))


@given(st.data(), st.integers(1, 4), st.integers(1, 4))
def test_solve_consistency(data, r, c):
    m = rand_matrix(data, r, c)
    x = tuple(F(data.draw(small)) for _ in range(c))
    b = mat_vec(m, x)
    got = solve(m, b)
    assert got is not None
    assert mat_vec(m, got) == tuple(b)


def test_solve_inconsistent():
    m = mat([[F(1), F(0)], [F(2), F(0)]])
    assert solve(m, (F(1), F(1))) is None


def test_zero_row_matrices_behave():
    a = zeros(0, 3)
    assert mat_mul(a, identity(3)) == ()
    b = zeros(2, 0)
    assert mat_mul(b, a) in (((), ()), ((),) * 2) or rank(mat_mul(b, a)) == 0
    assert column_space_basis(mat([[F(0)], [F(0)]])) == ((), ())


def test_quotient_basis_completes():
    sub = mat([[F(1)], [F(1)], [F(0)]])
    comp = quotient_basis(sub, 3)
    full = hstack(sub, comp)
    assert rank(full) == 3


@given(st.data(), st.integers(1, 3), st.integers(1, 3))
def test_column_space_idempotent(data, r, c):
    m = rand_matrix(data, r, c)
    cs = column_space_basis(m)
    assert columns_contained(m, cs) or all(all(x == 0 for x in row) for row in m)
    assert columns_contained(cs, m)
