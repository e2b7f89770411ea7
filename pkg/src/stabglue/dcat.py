"""Bounded derived category of A_n representations, modeled concretely.

Objects are kept in a shifted-interval normal form (the category is
hereditary, so every complex splits as the sum of its cohomologies).  All
morphism computation happens on complexes of projectives P_a = M[a, n]:
Hom(P_i, P_j) is one-dimensional exactly when j <= i, spanned by the
canonical inclusion, so differentials and chain maps are plain rational
matrices constrained to that support.  Derived Homs in every degree come
out of the cohomology of the Hom complex; cones stay projective; cohomology
of a projective complex is computed vertex-wise and decomposed back into
intervals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .linalg import (
    Matrix,
    column_space_basis,
    coords_in_basis,
    hstack,
    kernel_basis,
    mat,
    mat_mul,
    mat_vec,
    mat_eq,
    quotient_basis,
    rank,
    shape,
    solve,
    transpose,
    zeros,
)
from .quiver import QuiverSpec, Rep, decompose

F0 = Fraction(0)
F1 = Fraction(1)

Piece = tuple[int, int, int]  # (a, b, shift): the summand M[a,b][shift]


def _norm_pieces(pieces) -> tuple[Piece, ...]:
    return tuple(sorted(tuple(p) for p in pieces))


@dataclass(frozen=True)
class DObject:
    """Object of D^b(A_n) in shifted-interval normal form."""

    n: int
    pieces: tuple[Piece, ...]

    def __post_init__(self):
        object.__setattr__(self, "pieces", _norm_pieces(self.pieces))
        for a, b, _ in self.pieces:
            if not (1 <= a <= b <= self.n):
                raise ValueError(f"bad interval [{a},{b}] for A_{self.n}")

    def is_zero(self) -> bool:
        return not self.pieces

    @property
    def total_dim(self) -> int:
        return sum(b - a + 1 for a, b, _ in self.pieces)

    def shift(self, s: int) -> "DObject":
        return DObject(self.n, tuple((a, b, k + s) for a, b, k in self.pieces))

    def shifts_present(self) -> tuple[int, ...]:
        return tuple(sorted({k for _, _, k in self.pieces}))

    def piece_at_shift(self, k: int) -> "DObject":
        return DObject(self.n, tuple(p for p in self.pieces if p[2] == k))

    def module_bars(self) -> tuple[tuple[int, int], ...]:
        """Interval multiset, valid when concentrated in a single shift."""
        return tuple(sorted((a, b) for a, b, _ in self.pieces))

    def plus(self, other: "DObject") -> "DObject":
        if self.n != other.n:
            raise ValueError("vertex count mismatch")
        return DObject(self.n, self.pieces + other.pieces)

    def k0(self) -> tuple[int, ...]:
        v = [0] * self.n
        for a, b, k in self.pieces:
            s = 1 if k % 2 == 0 else -1
            for i in range(a - 1, b):
                v[i] += s
        return tuple(v)

    def __str__(self) -> str:
        if not self.pieces:
            return "0"
        from collections import Counter

        parts = []
        for (a, b, k), mult in sorted(Counter(self.pieces).items()):
            head = f"{mult}*" if mult > 1 else ""
            parts.append(f"{head}I[{a},{b}]@{k}")
        return " + ".join(parts)


def zero_object(n: int) -> DObject:
    return DObject(n, ())


def interval_object(n: int, a: int, b: int, shift: int = 0) -> DObject:
    return DObject(n, ((a, b, shift),))


def parse_dobject(n: int, text: str) -> DObject:
    """Parse the literal syntax printed by DObject.__str__."""
    t = text.strip()
    if t == "0":
        return zero_object(n)
    pieces = []
    for chunk in t.split("+"):
        chunk = chunk.strip()
        mult = 1
        if "*" in chunk:
            ms, chunk = chunk.split("*", 1)
            mult = int(ms)
        if not chunk.startswith("I[") or "@" not in chunk:
            raise ValueError(f"bad object literal piece: {chunk!r}")
        body, shift_s = chunk[2:].split("@")
        ab = body.rstrip("]").split(",")
        a, b = int(ab[0]), int(ab[1])
        pieces.extend([(a, b, int(shift_s))] * mult)
    return DObject(n, tuple(pieces))


# ---------------------------------------------------------------------------
# interval hom/ext tables (projective-resolution closed forms)
# ---------------------------------------------------------------------------


def hom_interval(src: tuple[int, int], tgt: tuple[int, int]) -> int:
    a, b = src
    c, d = tgt
    return 1 if c <= a <= d <= b else 0


def ext_interval(src: tuple[int, int], tgt: tuple[int, int]) -> int:
    a, b = src
    c, d = tgt
    return 1 if a < c <= b + 1 <= d else 0


def hom_dim_table(x: DObject, y: DObject) -> int:
    """Derived Hom dimension from the interval tables (crosscheck route)."""
    total = 0
    for a, b, k in x.pieces:
        for c, d, l in y.pieces:
            if l == k:
                total += hom_interval((a, b), (c, d))
            elif l == k + 1:
                total += ext_interval((a, b), (c, d))
    return total


def euler_form(n: int, dvec: tuple[int, ...], evec: tuple[int, ...]) -> int:
    a = sum(dvec[i] * evec[i] for i in range(n))
    b = sum(dvec[i] * evec[i + 1] for i in range(n - 1))
    return a - b


# ---------------------------------------------------------------------------
# complexes of projectives
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProjComplex:
    """Bounded complex of projectives P_a = M[a, n], a = 1..n.

    ``terms[k]`` lists the labels of the summands in cohomological degree
    k; ``diff[k]`` maps degree k to k+1 and may only have a nonzero entry
    from a summand labeled i into one labeled j when j <= i.
    """

    n: int
    terms: tuple[tuple[int, tuple[int, ...]], ...]  # sorted ((deg, labels), ...)
    diff: tuple[tuple[int, Matrix], ...]

    def term(self, k: int) -> tuple[int, ...]:
        for d, labels in self.terms:
            if d == k:
                return labels
        return ()

    def d(self, k: int) -> Matrix:
        for d, m in self.diff:
            if d == k:
                return m
        return zeros(len(self.term(k + 1)), len(self.term(k)))

    def degrees(self) -> list[int]:
        return sorted(d for d, labels in self.terms if labels)

    def validate(self):
        for k, m in self.diff:
            src, tgt = self.term(k), self.term(k + 1)
            if shape(m)[0] != len(tgt) or (len(tgt) and shape(m)[1] != len(src)):
                raise ValueError(f"differential at degree {k} has wrong shape")
            for i, row in enumerate(m):
                for j, entry in enumerate(row):
                    if entry and tgt[i] > src[j]:
                        raise ValueError("differential violates hom support")
        for k, _ in self.diff:
            if self.term(k) and self.term(k + 1) and self.term(k + 2):
                if rank(mat_mul(self.d(k + 1), self.d(k))) != 0:
                    raise ValueError("d^2 != 0")


def make_proj_complex(n: int, terms: dict, diff: dict) -> ProjComplex:
    terms_t = tuple(sorted((k, tuple(v)) for k, v in terms.items() if v))
    degs = {k for k, _ in terms_t}
    diff_t = tuple(
        sorted((k, m) for k, m in diff.items() if k in degs and (k + 1) in degs)
    )
    p = ProjComplex(n, terms_t, diff_t)
    p.validate()
    return p


def proj_model(x: DObject) -> ProjComplex:
    """Deterministic projective model: each piece M[a,b][k] contributes
    P_{b+1} -> P_a in degrees (-k-1, -k), the map being the canonical
    inclusion (P_{b+1} omitted when b = n)."""

    n = x.n
    terms: dict[int, list[int]] = {}
    # summand registry: (piece index, role) where role 0 = P_a, 1 = P_{b+1}
    pos: dict[tuple[int, int], int] = {}
    for idx, (a, b, k) in enumerate(x.pieces):
        terms.setdefault(-k, []).append(a)
        pos[(idx, 0)] = len(terms[-k]) - 1
        if b < n:
            terms.setdefault(-k - 1, []).append(b + 1)
            pos[(idx, 1)] = len(terms[-k - 1]) - 1
    diff: dict[int, Matrix] = {}
    for deg in list(terms):
        if deg + 1 not in terms:
            continue
        m = [[F0] * len(terms[deg]) for _ in range(len(terms[deg + 1]))]
        for idx, (a, b, k) in enumerate(x.pieces):
            if b < n and -k - 1 == deg:
                m[pos[(idx, 0)]][pos[(idx, 1)]] = F1
        diff[deg] = mat(m)
    return make_proj_complex(n, terms, diff)


def proj_shift(p: ProjComplex, s: int) -> ProjComplex:
    terms = {k - s: list(labels) for k, labels in p.terms}
    sign = F1 if s % 2 == 0 else -F1
    diff = {}
    for k, m in p.diff:
        diff[k - s] = tuple(tuple(sign * x for x in row) for row in m)
    return make_proj_complex(p.n, terms, diff)


@dataclass(frozen=True)
class ChainMap:
    """Chain map between projective complexes (degree-preserving)."""

    src: ProjComplex
    tgt: ProjComplex
    comps: tuple[tuple[int, Matrix], ...]

    def comp(self, k: int) -> Matrix:
        for d, m in self.comps:
            if d == k:
                return m
        return zeros(len(self.tgt.term(k)), len(self.src.term(k)))

    def validate(self):
        degs = {k for k, _ in self.src.terms} | {k for k, _ in self.tgt.terms}
        for k in degs:
            lhs = mat_mul(self.tgt.d(k), self.comp(k))
            rhs = mat_mul(self.comp(k + 1), self.src.d(k))
            if not _same_linear_map(lhs, rhs, len(self.src.term(k)), len(self.tgt.term(k + 1))):
                raise ValueError(f"not a chain map at degree {k}")


def _same_linear_map(a: Matrix, b: Matrix, ncols: int, nrows: int) -> bool:
    def entry(m, i, j):
        if i < len(m) and m[i] and j < len(m[i]):
            return m[i][j]
        return F0

    return all(
        entry(a, i, j) == entry(b, i, j) for i in range(nrows) for j in range(ncols)
    )


def chain_map(src: ProjComplex, tgt: ProjComplex, comps: dict) -> ChainMap:
    cm = ChainMap(src, tgt, tuple(sorted(comps.items())))
    cm.validate()
    return cm


def zero_chain_map(src: ProjComplex, tgt: ProjComplex) -> ChainMap:
    return ChainMap(src, tgt, ())


def identity_chain_map(p: ProjComplex) -> ChainMap:
    comps = {}
    for k, labels in p.terms:
        m = [[F1 if i == j else F0 for j in range(len(labels))] for i in range(len(labels))]
        comps[k] = mat(m)
    return ChainMap(p, p, tuple(sorted(comps.items())))


def cone(f: ChainMap) -> tuple[ProjComplex, ChainMap, ChainMap]:
    """Mapping cone with the canonical maps tgt -> cone and cone -> src[1].

    cone^k = src^{k+1} (+) tgt^k with differential [[-d_src, 0], [f, d_tgt]].
    """
    X, Y = f.src, f.tgt
    degs = sorted({k - 1 for k, _ in X.terms} | {k for k, _ in Y.terms})
    terms = {k: list(X.term(k + 1)) + list(Y.term(k)) for k in degs}
    diff = {}
    for k in degs:
        nx, ny = len(X.term(k + 1)), len(Y.term(k))
        nx1, ny1 = len(X.term(k + 2)), len(Y.term(k + 1))
        rows = []
        dx = X.d(k + 1)
        fy = f.comp(k + 1)
        dy = Y.d(k)
        for i in range(nx1):
            row = [(-dx[i][j] if j < shape(dx)[1] else F0) for j in range(nx)] + [F0] * ny
            rows.append(tuple(row))
        for i in range(ny1):
            row = [
                (fy[i][j] if i < len(fy) and j < (len(fy[i]) if fy else 0) else F0)
                for j in range(nx)
            ]
            row += [(dy[i][j] if j < shape(dy)[1] else F0) for j in range(ny)]
            rows.append(tuple(row))
        diff[k] = mat(rows)
    C = make_proj_complex(X.n, terms, diff)
    # Y -> cone inclusion
    inc = {}
    for k in degs:
        nx, ny = len(X.term(k + 1)), len(Y.term(k))
        if ny == 0 and nx == 0:
            continue
        rows = [[F0] * ny for _ in range(nx)]
        rows += [[F1 if i == j else F0 for j in range(ny)] for i in range(ny)]
        inc[k] = mat(rows)
    iota = chain_map(Y, C, inc)
    # cone -> src[1] projection
    X1 = proj_shift(X, 1)
    pr = {}
    for k in degs:
        nx, ny = len(X.term(k + 1)), len(Y.term(k))
        if nx == 0 and ny == 0:
            continue
        rows = [
            [F1 if i == j else F0 for j in range(nx)] + [F0] * ny for i in range(nx)
        ]
        pr[k] = mat(rows)
    pi = chain_map(C, X1, pr)
    return C, iota, pi


# ---------------------------------------------------------------------------
# hom complexes and derived homs
# ---------------------------------------------------------------------------


@dataclass
class HomComplexData:
    """Total Hom complex between two projective complexes."""

    src: ProjComplex
    tgt: ProjComplex
    basis: dict  # k -> list of (deg, i, j): src.term(deg)[i] -> tgt.term(deg+k)[j]
    diffm: dict  # k -> Matrix from basis[k] to basis[k+1]

    def h_dim(self, k: int) -> int:
        dk = len(self.basis.get(k, []))
        if dk == 0:
            return 0
        rk = rank(self.diffm[k]) if k in self.diffm else 0
        rkm = rank(self.diffm[k - 1]) if (k - 1) in self.diffm else 0
        return dk - rk - rkm


def hom_complex(X: ProjComplex, Y: ProjComplex) -> HomComplexData:
    degs_x = [k for k, labels in X.terms]
    degs_y = [k for k, labels in Y.terms]
    if not degs_x or not degs_y:
        return HomComplexData(X, Y, {}, {})
    kmin = min(degs_y) - max(degs_x) - 1
    kmax = max(degs_y) - min(degs_x) + 1
    basis = {}
    for k in range(kmin, kmax + 1):
        bs = []
        for deg in degs_x:
            sl = X.term(deg)
            tl = Y.term(deg + k)
            for i, si in enumerate(sl):
                for j, tj in enumerate(tl):
                    if tj <= si:
                        bs.append((deg, i, j))
        basis[k] = bs
    diffm = {}
    for k in range(kmin, kmax):
        bs, bt = basis[k], basis[k + 1]
        index_t = {key: idx for idx, key in enumerate(bt)}
        sign = F1 if k % 2 == 0 else -F1
        rows = [[F0] * len(bs) for _ in range(len(bt))]
        for col, (deg, i, j) in enumerate(bs):
            # d_Y o f part: (deg, i, j) composed with d_Y at deg+k
            dy = Y.d(deg + k)
            for j2 in range(len(Y.term(deg + k + 1))):
                c = dy[j2][j] if j2 < len(dy) and j < (len(dy[j2]) if dy else 0) else F0
                if c:
                    key = (deg, i, j2)
                    if key in index_t:
                        rows[index_t[key]][col] += c
            # -(-1)^k f o d_X part: precompose with d_X at deg-1
            dx = X.d(deg - 1)
            for i2 in range(len(X.term(deg - 1))):
                c = dx[i][i2] if i < len(dx) and i2 < (len(dx[i]) if dx else 0) else F0
                if c:
                    key = (deg - 1, i2, j)
                    if key in index_t:
                        rows[index_t[key]][col] -= sign * c
        diffm[k] = mat(rows)
    return HomComplexData(X, Y, basis, diffm)


def hom_dim_proj(X: ProjComplex, Y: ProjComplex, k: int = 0) -> int:
    return hom_complex(X, Y).h_dim(k)


def hom_cocycle_basis(X: ProjComplex, Y: ProjComplex) -> list[ChainMap]:
    """Chain-map representatives of a basis of H^0 of the Hom complex."""
    hc = hom_complex(X, Y)
    bs = hc.basis.get(0, [])
    if not bs:
        return []
    d0 = hc.diffm.get(0)
    cocycles = (
        kernel_basis(d0, ncols=len(bs)) if d0 is not None else kernel_basis(zeros(0, 0), ncols=len(bs))
    )
    dm1 = hc.diffm.get(-1)
    bound = transpose(tuple(mat_vec(dm1, v) for v in _std_basis(len(hc.basis.get(-1, []))))) if dm1 is not None and hc.basis.get(-1) else tuple(() for _ in range(len(bs)))
    # choose cocycles spanning a complement of the boundaries
    chosen = []
    cur = column_space_basis(bound) if bound else tuple(() for _ in range(len(bs)))
    for v in cocycles:
        if solve(cur, v) is None:
            chosen.append(v)
            cur = hstack(cur, tuple((x,) for x in v))
    out = []
    for v in chosen:
        comps: dict[int, list] = {}
        for coeff, (deg, i, j) in zip(v, bs):
            if coeff:
                comps.setdefault(deg, []);
        # build matrices degree-wise
        mats = {}
        for deg, labels in X.terms:
            tl = Y.term(deg)
            m = [[F0] * len(labels) for _ in range(len(tl))]
            mats[deg] = m
        for coeff, (deg, i, j) in zip(v, bs):
            if coeff and deg in mats:
                mats[deg][j][i] = coeff
        out.append(
            chain_map(X, Y, {deg: mat(m) for deg, m in mats.items() if m})
        )
    return out


def _std_basis(k):
    return [tuple(F1 if i == j else F0 for j in range(k)) for i in range(k)]


def compose_chain_maps(g: ChainMap, f: ChainMap) -> ChainMap:
    """g after f."""
    comps = {}
    for k, labels in f.src.terms:
        m = mat_mul(g.comp(k), f.comp(k))
        if shape(m)[0] and labels:
            comps[k] = m
    return ChainMap(f.src, g.tgt, tuple(sorted(comps.items())))


def chain_maps_homotopic(f: ChainMap, g: ChainMap) -> bool:
    """Equality in the homotopy category: f - g null-homotopic (linear solve)."""
    hc = hom_complex(f.src, f.tgt)
    bs = hc.basis.get(0, [])
    vec = []
    for deg, i, j in bs:
        mf = f.comp(deg)
        mg = g.comp(deg)
        xf = mf[j][i] if j < len(mf) and i < (len(mf[j]) if mf else 0) else F0
        xg = mg[j][i] if j < len(mg) and i < (len(mg[j]) if mg else 0) else F0
        vec.append(xf - xg)
    if not bs:
        return True
    dm1 = hc.diffm.get(-1)
    if dm1 is None or not hc.basis.get(-1):
        return all(not x for x in vec)
    return solve(dm1, tuple(vec)) is not None


# ---------------------------------------------------------------------------
# cohomology of projective complexes
# ---------------------------------------------------------------------------


@dataclass
class CohomologyData:
    """Vertex-wise cohomology of a projective complex at one degree."""

    rep: Rep
    bars: tuple[tuple[int, int], ...]
    reps_basis: tuple[Matrix, ...]  # representatives per vertex (columns)
    proj_full: tuple[Matrix, ...]  # full coordinate space -> H coords per vertex


def _vertex_coords(labels: tuple[int, ...], v: int) -> list[int]:
    return [i for i, a in enumerate(labels) if a <= v]


def _restrict(m: Matrix, rows_idx, cols_idx) -> Matrix:
    return mat([[m[i][j] if i < len(m) and j < (len(m[i]) if m else 0) else F0 for j in cols_idx] for i in rows_idx])


def cohomology_at(p: ProjComplex, k: int) -> CohomologyData:
    n = p.n
    reps_basis = []
    projs = []
    dims = []
    for v in range(1, n + 1):
        rows_k = _vertex_coords(p.term(k), v)
        rows_k1 = _vertex_coords(p.term(k + 1), v)
        rows_km = _vertex_coords(p.term(k - 1), v)
        dk = _restrict(p.d(k), rows_k1, rows_k)
        dkm = _restrict(p.d(k - 1), rows_k, rows_km)
        ker = kernel_basis(dk, ncols=len(rows_k))
        kermat = transpose(tuple(ker)) if ker else tuple(() for _ in rows_k)
        img = column_space_basis(dkm) if rows_km else tuple(() for _ in rows_k)
        # representatives: kernel vectors completing the image
        reps = []
        cur = img
        for vvec in ker:
            if solve(cur, vvec) is None:
                reps.append(vvec)
                cur = hstack(cur, tuple((x,) for x in vvec))
        repmat = transpose(tuple(reps)) if reps else tuple(() for _ in rows_k)
        dims.append(len(reps))
        reps_basis.append(repmat)
        # projection: coordinate space at v -> H coords: solve [reps | img | ...]
        full = hstack(repmat, img)
        proj_rows = []
        for j in range(len(rows_k)):
            e = tuple(F1 if i == j else F0 for i in range(len(rows_k)))
            x = solve(full, e)
            if x is None:
                # e not in ker+img span; project through kernel structure:
                # express e in [reps | img | complement of ker]; H-coords of the
                # complement part are zero, so solve in the bigger basis.
                comp = quotient_basis(hstack(repmat, img), len(rows_k))
                x = coords_in_basis(hstack(hstack(repmat, img), comp), e)
            proj_rows.append(x[: len(reps)])
        projs.append(transpose(tuple(proj_rows)) if proj_rows else tuple(() for _ in range(len(reps))))
    # arrow maps between cohomology spaces
    maps = []
    for v in range(1, n):
        rows_v = _vertex_coords(p.term(k), v)
        rows_v1 = _vertex_coords(p.term(k), v + 1)
        incl = mat([[F1 if rows_v1[i] == rows_v[j] else F0 for j in range(len(rows_v))] for i in range(len(rows_v1))])
        cols = []
        for col in transpose(reps_basis[v - 1]):
            w = mat_vec(incl, col)
            cols.append(mat_vec(projs[v], w))
        maps.append(transpose(tuple(cols)) if cols else zeros(dims[v], 0))
    rep = Rep(n, tuple(dims), tuple(maps))
    return CohomologyData(rep, decompose(rep), tuple(reps_basis), tuple(projs))


def cohomology_object(p: ProjComplex) -> DObject:
    degs = p.degrees()
    pieces = []
    if degs:
        for k in range(min(degs), max(degs) + 1):
            data = cohomology_at(p, k)
            pieces.extend((a, b, -k) for a, b in data.bars)
    return DObject(p.n, tuple(pieces))


def induced_map_on_cohomology(f: ChainMap, k: int) -> tuple[CohomologyData, CohomologyData, tuple[Matrix, ...]]:
    """H^k(f) as per-vertex matrices between the cohomology data."""
    hx = cohomology_at(f.src, k)
    hy = cohomology_at(f.tgt, k)
    n = f.src.n
    mats = []
    for v in range(1, n + 1):
        rows_x = _vertex_coords(f.src.term(k), v)
        rows_y = _vertex_coords(f.tgt.term(k), v)
        fv = _restrict(f.comp(k), rows_y, rows_x)
        cols = []
        for col in transpose(hx.reps_basis[v - 1]):
            w = mat_vec(fv, col)
            cols.append(mat_vec(hy.proj_full[v - 1], w))
        mats.append(
            transpose(tuple(cols)) if cols else zeros(hy.rep.dims[v - 1], 0)
        )
    return hx, hy, tuple(mats)


# ---------------------------------------------------------------------------
# public object-level operations
# ---------------------------------------------------------------------------

_MODEL_CACHE: dict[DObject, ProjComplex] = {}


def model(x: DObject) -> ProjComplex:
    if x not in _MODEL_CACHE:
        _MODEL_CACHE[x] = proj_model(x)
    return _MODEL_CACHE[x]


def hom_dim(x: DObject, y: DObject, k: int = 0) -> int:
    """dim Hom_{D^b}(x, y[k]), computed on the Hom complex of models."""
    return hom_dim_proj(model(x), model(y), k)


def hom_basis(x: DObject, y: DObject) -> list[ChainMap]:
    return hom_cocycle_basis(model(x), model(y))


def cone_object(f: ChainMap) -> DObject:
    return cohomology_object(cone(f)[0])


def normalize(p: ProjComplex) -> DObject:
    return cohomology_object(p)


def corpus(n: int, max_dim: int, shifts=(-2, -1, 0, 1, 2)):
    """Deterministic enumeration of all nonzero normal forms with total
    dimension <= max_dim and shifts drawn from the given window."""

    q = QuiverSpec(n)
    letters = [
        (a, b, k) for k in sorted(shifts) for (a, b) in q.intervals()
    ]
    weights = [b - a + 1 for a, b, _ in letters]

    def rec(start: int, budget: int, acc: list):
        if acc:
            yield DObject(n, tuple(acc))
        for i in range(start, len(letters)):
            if weights[i] <= budget:
                acc.append(letters[i])
                yield from rec(i, budget - weights[i], acc)
                acc.pop()

    yield from rec(0, max_dim, [])


def corpus_fingerprint(n: int, max_dim: int, shifts) -> str:
    import hashlib

    key = f"A{n}|dim<={max_dim}|shifts={sorted(shifts)}"
    return hashlib.sha256(key.encode()).hexdigest()[:16]
