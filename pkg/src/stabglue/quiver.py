"""Representations of the linearly oriented A_n quiver (arrows i -> i+1)
over the rationals, with exact interval decomposition.

Intervals are 1-based pairs (a, b) with 1 <= a <= b <= n; the interval
module M[a, b] is one-dimensional on the vertices a..b with identity
arrows inside.  Every finite-dimensional representation splits as a direct
sum of interval modules; ``decompose`` recovers the multiset by the
inclusion-exclusion of composite ranks, and ``splitting_basis`` produces
an explicit compatible basis realizing the splitting (used to transport
subobject constructions through isomorphisms).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .linalg import (
    Matrix,
    column_space_basis,
    coords_in_basis,
    hstack,
    identity,
    kernel_basis,
    mat,
    mat_mul,
    mat_vec,
    quotient_basis,
    rank,
    shape,
    solve,
    transpose,
    zeros,
)

MAX_VERTICES = 8

F0 = Fraction(0)
F1 = Fraction(1)


@dataclass(frozen=True)
class QuiverSpec:
    """Linearly oriented A_n quiver, desk-scale capped."""

    n: int

    def __post_init__(self):
        if not (1 <= self.n <= MAX_VERTICES):
            raise ValueError(f"vertex count must be in 1..{MAX_VERTICES}")

    def intervals(self) -> list[tuple[int, int]]:
        return [(a, b) for a in range(1, self.n + 1) for b in range(a, self.n + 1)]

    def simple(self, v: int) -> tuple[int, int]:
        return (v, v)

    def projective(self, v: int) -> tuple[int, int]:
        return (v, self.n)


@dataclass(frozen=True)
class Rep:
    """Representation: dims per vertex and one rational matrix per arrow.

    maps[i] has shape (dims[i+1], dims[i]) and covers the arrow from
    vertex i+1 to vertex i+2 in 1-based terms.
    """

    n: int
    dims: tuple[int, ...]
    maps: tuple[Matrix, ...]

    def __post_init__(self):
        if len(self.dims) != self.n or len(self.maps) != max(self.n - 1, 0):
            raise ValueError("dims/maps length mismatch")
        for i, m in enumerate(self.maps):
            rows, cols = shape(m)
            if rows != self.dims[i + 1] or (rows and cols != self.dims[i]):
                raise ValueError(
                    f"arrow {i+1}->{i+2} has shape {shape(m)}, "
                    f"expected {(self.dims[i+1], self.dims[i])}"
                )

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0


def zero_rep(n: int) -> Rep:
    return Rep(n, (0,) * n, tuple(zeros(0, 0) for _ in range(n - 1)))


def interval_rep(n: int, a: int, b: int) -> Rep:
    if not (1 <= a <= b <= n):
        raise ValueError(f"bad interval [{a},{b}] for A_{n}")
    dims = tuple(1 if a <= v <= b else 0 for v in range(1, n + 1))
    maps = []
    for i in range(n - 1):
        src, tgt = dims[i], dims[i + 1]
        if src == 1 and tgt == 1:
            maps.append(mat([[F1]]))
        else:
            maps.append(zeros(tgt, src))
    return Rep(n, dims, tuple(maps))


def direct_sum(r1: Rep, r2: Rep) -> Rep:
    if r1.n != r2.n:
        raise ValueError("vertex count mismatch")
    n = r1.n
    dims = tuple(d1 + d2 for d1, d2 in zip(r1.dims, r2.dims))
    maps = []
    for i in range(n - 1):
        a, b = r1.maps[i], r2.maps[i]
        rows = []
        for row in a:
            rows.append(tuple(row) + (F0,) * r2.dims[i])
        for row in b:
            rows.append((F0,) * r1.dims[i] + tuple(row))
        maps.append(mat(rows) if rows else zeros(0, dims[i]))
    return Rep(n, dims, tuple(maps))


def rep_from_intervals(n: int, bars) -> Rep:
    """Canonical model of the direct sum of interval modules.

    ``bars`` is an iterable of (a, b); the basis vector of summand k sits
    at coordinate k among the summands alive at each vertex, in the order
    given (callers should sort for canonical form).
    """

    bars = list(bars)
    out = zero_rep(n)
    for a, b in bars:
        out = direct_sum(out, interval_rep(n, a, b))
    return out


def sort_bars(bars) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(bars))


def composite_map(r: Rep, a: int, b: int) -> Matrix:
    """Matrix of f_{b-1} ... f_a : M_a -> M_b (1-based, a <= b)."""
    if a == b:
        return identity(r.dims[a - 1])
    if any(r.dims[v - 1] == 0 for v in range(a, b + 1)):
        return zeros(r.dims[b - 1], r.dims[a - 1])
    m = r.maps[a - 1]
    for i in range(a, b - 1):
        m = mat_mul(r.maps[i], m)
    return m


def _comp_rank(r: Rep, a: int, b: int) -> int:
    """rank of the composite M_a -> M_b, with out-of-range indices giving 0."""
    if a < 1 or b > r.n or a > b:
        return 0
    return rank(composite_map(r, a, b))


def decompose(r: Rep) -> tuple[tuple[int, int], ...]:
    """Interval multiset of r by the composite-rank inclusion-exclusion."""
    bars = []
    for a in range(1, r.n + 1):
        for b in range(a, r.n + 1):
            mult = (
                _comp_rank(r, a, b)
                - _comp_rank(r, a, b + 1)
                - _comp_rank(r, a - 1, b)
                + _comp_rank(r, a - 1, b + 1)
            )
            if mult < 0:
                raise ArithmeticError(f"negative multiplicity at [{a},{b}]")
            bars.extend([(a, b)] * mult)
    bars = sort_bars(bars)
    total = sum(b - a + 1 for a, b in bars)
    if total != r.total_dim:
        raise ArithmeticError("decomposition does not account for all dimensions")
    return bars


def splitting_basis(r: Rep) -> tuple[tuple[tuple[int, int], ...], list[dict]]:
    """Explicit interval splitting of r.

    Returns (bars, strands) where strands[k] is a dict {vertex: vector}
    for the k-th bar (vectors in the coordinates of r, satisfying
    f_v(u_v) = u_{v+1} inside the bar).  bars is sorted consistently with
    the strand list.
    """

    live: list[dict] = []  # {birth, vecs: {vertex: vector}}
    finished: list[dict] = []
    for v in range(1, r.n + 1):
        dim_v = r.dims[v - 1]
        # propagate live strands through the arrow into vertex v
        if v > 1:
            f = r.maps[v - 2]
            for s in live:
                s["vecs"][v] = mat_vec(f, s["vecs"][v - 1])
        # elder-first reduction: a strand whose vector at v depends on
        # elder strands is retroactively corrected and dies at v-1
        live.sort(key=lambda s: s["birth"])
        reduced: list[dict] = []
        basis_cols: list[tuple] = []
        for s in live:
            vec = s["vecs"][v]
            if basis_cols:
                bmat = transpose(tuple(basis_cols))
                coeffs = solve(bmat, vec)
            else:
                coeffs = None if any(vec) else tuple()
            if coeffs is None:
                reduced.append(s)
                basis_cols.append(vec)
            else:
                for elder, c in zip(reduced, coeffs):
                    if c:
                        for w in range(s["birth"], v):
                            s["vecs"][w] = tuple(
                                x - c * y
                                for x, y in zip(s["vecs"][w], elder["vecs"][w])
                            )
                del s["vecs"][v]
                s["death"] = v - 1
                finished.append(s)
        live = reduced
        # births at v: extend the image basis to all of M_v
        if basis_cols:
            bmat = transpose(tuple(basis_cols))
        else:
            bmat = tuple(() for _ in range(dim_v))
        for j in range(dim_v):
            e = tuple(F1 if i == j else F0 for i in range(dim_v))
            if solve(bmat, e) is None:
                live.append({"birth": v, "vecs": {v: e}})
                bmat = hstack(bmat, tuple((x,) for x in e))
    for s in live:
        s["death"] = r.n
        finished.append(s)
    finished = [s for s in finished if s["death"] >= s["birth"]]
    finished.sort(key=lambda s: (s["birth"], s["death"]))
    bars = tuple((s["birth"], s["death"]) for s in finished)
    strands = [{v: s["vecs"][v] for v in range(s["birth"], s["death"] + 1)} for s in finished]
    return bars, strands


# ---------------------------------------------------------------------------
# subspace machinery: per-vertex column bases closed under the arrows
# ---------------------------------------------------------------------------

SubSpaces = tuple  # tuple of Matrices, one per vertex (columns = basis)


def zero_subspaces(r: Rep) -> SubSpaces:
    return tuple(tuple(() for _ in range(d)) for d in r.dims)


def full_subspaces(r: Rep) -> SubSpaces:
    return tuple(identity(d) for d in r.dims)


def subspaces_dims(s: SubSpaces) -> tuple[int, ...]:
    return tuple(shape(m)[1] for m in s)


def subspaces_closed(r: Rep, s: SubSpaces) -> bool:
    for i in range(r.n - 1):
        for col in transpose(s[i]):
            img = mat_vec(r.maps[i], col)
            if solve(s[i + 1], img) is None:
                return False
    return True


def sub_rep(r: Rep, s: SubSpaces) -> Rep:
    """Representation structure induced on the subspaces (must be closed)."""
    dims = subspaces_dims(s)
    maps = []
    for i in range(r.n - 1):
        cols = []
        for col in transpose(s[i]):
            img = mat_vec(r.maps[i], col)
            cols.append(coords_in_basis(s[i + 1], img))
        maps.append(transpose(tuple(cols)) if cols else zeros(dims[i + 1], 0))
    return Rep(r.n, dims, tuple(maps))


def quotient_rep(r: Rep, s: SubSpaces) -> tuple[Rep, tuple[Matrix, ...]]:
    """Quotient representation and the per-vertex projection matrices."""
    comps = [quotient_basis(s[v], r.dims[v]) for v in range(r.n)]
    dims = tuple(shape(c)[1] for c in comps)
    projs = []
    for v in range(r.n):
        # projection: express e_j in [comp | sub], keep comp coordinates
        full = hstack(comps[v], s[v])
        rows = []
        for j in range(r.dims[v]):
            e = tuple(F1 if i == j else F0 for i in range(r.dims[v]))
            x = coords_in_basis(full, e)
            rows.append(x[: dims[v]])
        projs.append(transpose(tuple(rows)))
    maps = []
    for i in range(r.n - 1):
        if dims[i] == 0:
            maps.append(zeros(dims[i + 1], 0))
            continue
        cols = []
        for col in transpose(comps[i]):
            img = mat_vec(r.maps[i], col)
            cols.append(mat_vec(projs[i + 1], img))
        maps.append(transpose(tuple(cols)))
    return Rep(r.n, dims, tuple(maps)), tuple(projs)


def image_subspaces(fmats: tuple[Matrix, ...], tgt: Rep) -> SubSpaces:
    """Column spaces of a representation morphism, as subspaces of tgt."""
    return tuple(column_space_basis(fmats[v]) for v in range(tgt.n))


def sum_subspaces(r: Rep, *spaces: SubSpaces) -> SubSpaces:
    out = []
    for v in range(r.n):
        acc = tuple(() for _ in range(r.dims[v]))
        for s in spaces:
            acc = hstack(acc, s[v])
        out.append(column_space_basis(acc))
    return tuple(out)


def subspaces_contained(inner: SubSpaces, outer: SubSpaces) -> bool:
    for a, b in zip(inner, outer):
        for col in transpose(a):
            if solve(b, col) is None:
                return False
    return True


def subspaces_signature(s: SubSpaces) -> tuple:
    from .linalg import column_space_signature

    return tuple(column_space_signature(m) for m in s)


def canonical_sub_spaces(r: Rep, bars, cvec) -> SubSpaces:
    """Subspaces of the canonical model rep_from_intervals(n, bars) given by
    keeping, in summand k with bar (a_k, b_k), the vertices c_k..b_k
    (c_k = b_k + 1 keeps nothing)."""

    n = r.n
    out = []
    for v in range(1, n + 1):
        alive = [k for k, (a, b) in enumerate(bars) if a <= v <= b]
        cols = []
        for j, k in enumerate(alive):
            if cvec[k] <= v:
                cols.append(
                    tuple(F1 if i == j else F0 for i in range(len(alive)))
                )
        out.append(transpose(tuple(cols)) if cols else tuple(() for _ in alive))
    return tuple(out)


def hom_rep_basis(src: Rep, tgt: Rep) -> list[tuple[Matrix, ...]]:
    """Basis of intertwiners src -> tgt (per-vertex matrix tuples)."""
    n = src.n
    offsets = []
    total = 0
    for v in range(n):
        offsets.append(total)
        total += tgt.dims[v] * src.dims[v]
    rows = []
    for i in range(n - 1):
        # constraint: phi_{i+1} f_src - f_tgt phi_i = 0, entrywise
        for rr in range(tgt.dims[i + 1]):
            for cc in range(src.dims[i]):
                row = [F0] * total
                for k in range(src.dims[i + 1]):
                    row[offsets[i + 1] + rr * src.dims[i + 1] + k] += src.maps[i][k][cc]
                for k in range(tgt.dims[i]):
                    row[offsets[i] + k * src.dims[i] + cc] -= tgt.maps[i][rr][k]
                rows.append(tuple(row))
    kb = kernel_basis(mat(rows), ncols=total) if total else []
    out = []
    for vec in kb:
        mats = []
        for v in range(n):
            o = offsets[v]
            mats.append(
                mat(
                    [
                        vec[o + rr * src.dims[v] : o + (rr + 1) * src.dims[v]]
                        for rr in range(tgt.dims[v])
                    ]
                )
                if tgt.dims[v]
                else zeros(0, src.dims[v])
            )
        out.append(tuple(mats))
    return out


def bars_dim_vector(n: int, bars) -> tuple[int, ...]:
    dims = [0] * n
    for a, b in bars:
        for v in range(a - 1, b):
            dims[v] += 1
    return tuple(dims)


def bars_counter(bars) -> Counter:
    return Counter(bars)
