"""Exact dense linear algebra over Fraction or Q(sqrt 3) entries.

Matrices are tuples of row tuples.  All eliminations are exact; pivots are
chosen as the first nonzero entry, so results are deterministic.  The
routines are written for the small dimensions this package works at.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import chain

Matrix = tuple  # tuple of row tuples


def mat(rows) -> Matrix:
    return tuple(tuple(r) for r in rows)


def zeros(r: int, c: int, zero=Fraction(0)) -> Matrix:
    return tuple(tuple(zero for _ in range(c)) for _ in range(r))


def identity(n: int, zero=Fraction(0), one=Fraction(1)) -> Matrix:
    return tuple(
        tuple(one if i == j else zero for j in range(n)) for i in range(n)
    )


def shape(m: Matrix) -> tuple[int, int]:
    return (len(m), len(m[0]) if m else 0)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_neg(a: Matrix) -> Matrix:
    return tuple(tuple(-x for x in r) for r in a)


def mat_scale(a: Matrix, s) -> Matrix:
    return tuple(tuple(x * s for x in r) for r in a)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    ra, ca = shape(a)
    rb, cb = shape(b)
    if ca != rb:
        # 0-row matrices lose their width; treat them as the zero map.
        if ra == 0:
            return ()
        if ca == 0 or rb == 0:
            return tuple(() for _ in range(ra)) if cb == 0 else zeros(ra, cb)
        raise ValueError(f"shape mismatch {shape(a)} x {shape(b)}")
    bt = tuple(zip(*b)) if b else ()
    out = []
    for row in a:
        out.append(tuple(sum(x * y for x, y in zip(row, col)) for col in bt))
    return tuple(out)


def mat_vec(a: Matrix, v) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def hstack(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return b
    if not b:
        return a
    return tuple(ra + rb for ra, rb in zip(a, b))


def vstack(a: Matrix, b: Matrix) -> Matrix:
    return tuple(chain(a, b))


def block_diag(blocks, zero=Fraction(0)) -> Matrix:
    rows = sum(shape(b)[0] for b in blocks)
    cols = sum(shape(b)[1] for b in blocks)
    out = [[zero] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        br, bc = shape(b)
        for i in range(br):
            for j in range(bc):
                out[r0 + i][c0 + j] = b[i][j]
        r0 += br
        c0 += bc
    return mat(out)


def rref(a: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot column indices."""
    m = [list(r) for r in a]
    nr, nc = shape(a)
    pivots = []
    pr = 0
    for pc in range(nc):
        pivot_row = None
        for i in range(pr, nr):
            if m[i][pc]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[pr], m[pivot_row] = m[pivot_row], m[pr]
        pv = m[pr][pc]
        m[pr] = [x / pv for x in m[pr]]
        for i in range(nr):
            if i != pr and m[i][pc]:
                f = m[i][pc]
                m[i] = [x - f * y for x, y in zip(m[i], m[pr])]
        pivots.append(pc)
        pr += 1
        if pr == nr:
            break
    return mat(m), pivots


def rank(a: Matrix) -> int:
    if not a or not a[0]:
        return 0
    return len(rref(a)[1])


def kernel_basis(a: Matrix, one=Fraction(1), ncols: int | None = None) -> list[tuple]:
    """Basis vectors (as tuples) of the right kernel of a.

    ``ncols`` must be passed when a has no rows (width is unrecoverable).
    """
    nr, nc = shape(a)
    if nr == 0 and ncols is not None:
        nc = ncols
    if nc == 0:
        return []
    if nr == 0:
        return [tuple(one if j == i else one * 0 for j in range(nc)) for i in range(nc)]
    r, pivots = rref(a)
    zero = one * 0
    free = [j for j in range(nc) if j not in pivots]
    basis = []
    for f in free:
        v = [zero] * nc
        v[f] = one
        for i, p in enumerate(pivots):
            v[p] = -r[i][f]
        basis.append(tuple(v))
    return basis


def solve(a: Matrix, b: tuple):
    """One solution x of a @ x = b, or None if inconsistent."""
    nr, nc = shape(a)
    if nr == 0:
        return tuple()
    aug = hstack(a, tuple((x,) for x in b))
    r, pivots = rref(aug)
    if nc in pivots:
        return None
    zero = a[0][0] * 0 if nc else None
    x = [zero] * nc
    for i, p in enumerate(pivots):
        x[p] = r[i][nc]
    return tuple(x)


def column_space_basis(a: Matrix) -> Matrix:
    """Matrix whose columns are a basis of the column space of a."""
    nr, nc = shape(a)
    if nr == 0 or nc == 0:
        return tuple(() for _ in range(nr))
    _, pivots = rref(a)
    if not pivots:
        return tuple(() for _ in range(nr))
    cols = transpose(a)
    return transpose(tuple(cols[p] for p in pivots))


def column_count(a: Matrix) -> int:
    return shape(a)[1]


def in_column_space(a: Matrix, v) -> bool:
    return solve(a, tuple(v)) is not None


def columns_contained(a: Matrix, b: Matrix) -> bool:
    """True iff every column of a lies in the column space of b."""
    for col in transpose(a):
        if solve(b, col) is None:
            return False
    return True


def column_space_sum(a: Matrix, b: Matrix) -> Matrix:
    return column_space_basis(hstack(a, b))


def column_spaces_equal(a: Matrix, b: Matrix) -> bool:
    return columns_contained(a, b) and columns_contained(b, a)


def column_space_signature(a: Matrix) -> tuple:
    """Canonical signature of the column space (rref of the transpose)."""
    r, _ = rref(transpose(a))
    return tuple(row for row in r if any(row))


def quotient_basis(sub: Matrix, amb_dim: int, one=Fraction(1)) -> Matrix:
    """Columns completing col(sub) to the standard basis of the ambient space.

    Returns a matrix whose columns are standard basis vectors spanning a
    complement of col(sub); deterministic (greedy smallest index first).
    """
    zero = one * 0
    cur = sub
    chosen = []
    for j in range(amb_dim):
        e = tuple(one if i == j else zero for i in range(amb_dim))
        if solve(cur, e) is None:
            chosen.append(e)
            cur = hstack(cur, tuple((x,) for x in e))
    return transpose(tuple(chosen)) if chosen else tuple(() for _ in range(amb_dim))


def coords_in_basis(basis: Matrix, v):
    """Coordinates of v in the columns of basis (must be consistent)."""
    x = solve(basis, tuple(v))
    if x is None:
        raise ValueError("vector not in span of basis")
    return x


def mat_eq(a: Matrix, b: Matrix) -> bool:
    return shape(a) == shape(b) and all(
        x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb)
    )


def is_zero_matrix(a: Matrix) -> bool:
    return all(not x for r in a for x in r)
