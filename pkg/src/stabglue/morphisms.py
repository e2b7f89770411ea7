"""The category of morphisms over D^b(A_n): objects are chain maps
f: x -> y between projective models, identified up to homotopy.

The three functors d0 -| s -| d1 and the two inclusions j_!, j_* are
implemented directly; the two semiorthogonal decompositions are

    SOD0 = < s(C), C_{/0} >  (from d0 -| s):   [fib f -> 0] -> f -> s(y)
    SOD1 = < C_{0/}, s(C) >  (from s -| d1):   s(x) -> f -> [0 -> cof f]

Homs in the morphism category are the degree-zero cohomology of the fiber
of Map(x,z) (+) Map(y,w) -> Map(x,w), computed two ways: as the totalized
two-row complex (primary) and through the long-exact-sequence bound
(crosscheck in the tests).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .dcat import (
    ChainMap,
    DObject,
    HomComplexData,
    chain_map,
    cone,
    hom_basis,
    hom_complex,
    identity_chain_map,
    interval_object,
    model,
    normalize,
    proj_shift,
    zero_chain_map,
    zero_object,
)
from .linalg import Matrix, mat, rank, shape, zeros

F0 = Fraction(0)
F1 = Fraction(1)


class SODSide(Enum):
    """Which semiorthogonal decomposition drives the gluing."""

    SOD0 = 0  # < s(C), C_{/0} >, from d0 -| s
    SOD1 = 1  # < C_{0/}, s(C) >, from s -| d1


@dataclass(frozen=True)
class MorObject:
    """Object [f: x -> y] of the category of morphisms."""

    x: DObject
    y: DObject
    f: ChainMap
    tag: str = "f"

    @property
    def n(self) -> int:
        return self.x.n

    def k0(self) -> tuple[int, ...]:
        return tuple(self.x.k0()) + tuple(self.y.k0())

    def is_zero(self) -> bool:
        return self.x.is_zero() and self.y.is_zero()

    def shift(self, s: int) -> "MorObject":
        fx = proj_shift(self.f.src, s)
        fy = proj_shift(self.f.tgt, s)
        comps = {k - s: m for k, m in self.f.comps}
        return MorObject(
            self.x.shift(s),
            self.y.shift(s),
            ChainMap(fx, fy, tuple(sorted(comps.items()))),
            f"{self.tag}[{s}]",
        )

    def __str__(self) -> str:
        return f"mor({self.x}; {self.y}; f={self.tag})"


def mor_zero_map(x: DObject, y: DObject) -> MorObject:
    return MorObject(x, y, zero_chain_map(model(x), model(y)), "0")


def mor_from_basis(x: DObject, y: DObject, k: int) -> MorObject:
    basis = hom_basis(x, y)
    if not (0 <= k < len(basis)):
        raise IndexError(f"Hom({x}, {y}) has only {len(basis)} basis maps")
    return MorObject(x, y, basis[k], f"basis#{k}")


def mor_all(x: DObject, y: DObject):
    """The corpus maps between two endpoints: 0, the basis maps, id."""
    yield mor_zero_map(x, y)
    for k in range(len(hom_basis(x, y))):
        yield mor_from_basis(x, y, k)
    if x == y:
        yield s_of(x)


def d0(m: MorObject) -> DObject:
    return m.y


def d1(m: MorObject) -> DObject:
    return m.x


def s_of(z: DObject) -> MorObject:
    return MorObject(z, z, identity_chain_map(model(z)), "id")


def j_bang(y: DObject) -> MorObject:
    """Inclusion of C_{/0}: the object [y -> 0]."""
    return MorObject(y, zero_object(y.n), zero_chain_map(model(y), model(zero_object(y.n))), "0")


def j_star(z: DObject) -> MorObject:
    """Inclusion of C_{0/}: the object [0 -> z]."""
    return MorObject(zero_object(z.n), z, zero_chain_map(model(zero_object(z.n)), model(z)), "0")


def cof_object(m: MorObject) -> DObject:
    """cof(f) as a normal form."""
    return normalize(cone(m.f)[0])


def fib_object(m: MorObject) -> DObject:
    return cof_object(m).shift(-1)


def gluing_functor_image(e2: DObject, side: SODSide) -> DObject:
    """The gluing functor acts as the shift [1] for both decompositions."""
    return e2.shift(1)


def gluing_functor_via_definition(e2: DObject, side: SODSide) -> DObject:
    """The gluing functor computed from its definition tau_1^R o i_2 [1]."""
    if side is SODSide.SOD0:
        # i_2 = j_!, tau_1^R = d1 (right adjoint of s)
        return d1(j_bang(e2).shift(1))
    # i_2 = s, tau_1^R = d0 (right adjoint of j_*)
    return d0(s_of(e2).shift(1))


def tau2R_object(m: MorObject, side: SODSide) -> DObject:
    """tau_2^R in the C-identification of the second factor."""
    if side is SODSide.SOD0:
        return fib_object(m)
    return m.x


def tau1L_object(m: MorObject, side: SODSide) -> DObject:
    """tau_1^L in the C-identification of the first factor."""
    if side is SODSide.SOD0:
        return m.y
    return cof_object(m)


def sod_triangle(m: MorObject, side: SODSide) -> tuple[MorObject, MorObject, MorObject]:
    """(i2 tau_2^R m, m, i1 tau_1^L m), with exact K_0 additivity."""
    if side is SODSide.SOD0:
        t2 = j_bang(fib_object(m))
        t1 = s_of(d0(m))
    else:
        t2 = s_of(d1(m))
        t1 = j_star(cof_object(m))
    total = tuple(a + b for a, b in zip(t2.k0(), t1.k0()))
    if total != m.k0():
        raise ArithmeticError("K0 additivity fails in the SOD triangle")
    return t2, m, t1


def tau1R_triangle(m: MorObject, side: SODSide) -> tuple[DObject, DObject, DObject]:
    """The triangle Phi(tau_2^R m)[-1] -> tau_1^R m -> tau_1^L m.

    For SOD0 this is fib f -> x -> y; for SOD1 it is x -> y -> cof f.
    """
    if side is SODSide.SOD0:
        left, mid, right = fib_object(m), m.x, m.y
    else:
        left, mid, right = m.x, m.y, cof_object(m)
    lk = left.k0()
    if tuple(a + b for a, b in zip(lk, right.k0())) != tuple(mid.k0()):
        raise ArithmeticError("K0 additivity fails in the tau_1^R triangle")
    phi_shift = gluing_functor_image(tau2R_object(m, side), side).shift(-1)
    if phi_shift.k0() != lk:
        raise ArithmeticError("Phi(tau_2^R)[-1] class mismatch")
    return left, mid, right


# ---------------------------------------------------------------------------
# Hom in the morphism category
# ---------------------------------------------------------------------------


def _postcompose_matrix(hs: HomComplexData, ht: HomComplexData, g: ChainMap, k: int) -> Matrix:
    """Matrix of u |-> g o u from hs.basis[k] to ht.basis[k].

    hs is Hom(X, Z), ht is Hom(X, W), g: Z -> W.
    """
    bs = hs.basis.get(k, [])
    bt = ht.basis.get(k, [])
    index = {key: i for i, key in enumerate(bt)}
    rows = [[F0] * len(bs) for _ in range(len(bt))]
    for col, (deg, i, j) in enumerate(bs):
        gm = g.comp(deg + k)
        for j2 in range(len(g.tgt.term(deg + k))):
            c = gm[j2][j] if j2 < len(gm) and j < (len(gm[j2]) if gm else 0) else F0
            if c:
                key = (deg, i, j2)
                if key in index:
                    rows[index[key]][col] += c
    return mat(rows)


def _precompose_matrix(hs: HomComplexData, ht: HomComplexData, f: ChainMap, k: int) -> Matrix:
    """Matrix of v |-> v o f from hs.basis[k] to ht.basis[k].

    hs is Hom(Y, W), ht is Hom(X, W), f: X -> Y.
    """
    bs = hs.basis.get(k, [])
    bt = ht.basis.get(k, [])
    index = {key: i for i, key in enumerate(bt)}
    rows = [[F0] * len(bs) for _ in range(len(bt))]
    for col, (deg, i, j) in enumerate(bs):
        fm = f.comp(deg)
        for i2 in range(len(f.src.term(deg))):
            c = fm[i][i2] if i < len(fm) and i2 < (len(fm[i]) if fm else 0) else F0
            if c:
                key = (deg, i2, j)
                if key in index:
                    rows[index[key]][col] += c
    return mat(rows)


@dataclass
class MorHomComplex:
    """Fiber complex of Map(x,z) (+) Map(y,w) -> Map(x,w), totalized."""

    sizes: dict
    diffs: dict

    def h_dim(self, k: int) -> int:
        dk = self.sizes.get(k, 0)
        if dk == 0:
            return 0
        rk = rank(self.diffs[k]) if k in self.diffs else 0
        rkm = rank(self.diffs[k - 1]) if (k - 1) in self.diffs else 0
        return dk - rk - rkm


def mor_hom_complex(m1: MorObject, m2: MorObject) -> MorHomComplex:
    hxz = hom_complex(m1.f.src, m2.f.src)
    hyw = hom_complex(m1.f.tgt, m2.f.tgt)
    hxw = hom_complex(m1.f.src, m2.f.tgt)
    ks: set[int] = set()
    for h in (hxz, hyw):
        ks |= set(h.basis)
    ks |= {k + 1 for k in hxw.basis}
    sizes = {}
    for k in ks:
        sizes[k] = (
            len(hxz.basis.get(k, []))
            + len(hyw.basis.get(k, []))
            + len(hxw.basis.get(k - 1, []))
        )
    diffs = {}
    for k in sorted(ks):
        if sizes.get(k, 0) == 0 or sizes.get(k + 1, 0) == 0:
            continue
        nxz, nyw, nxw = (
            len(hxz.basis.get(k, [])),
            len(hyw.basis.get(k, [])),
            len(hxw.basis.get(k - 1, [])),
        )
        nxz1, nyw1, nxw1 = (
            len(hxz.basis.get(k + 1, [])),
            len(hyw.basis.get(k + 1, [])),
            len(hxw.basis.get(k, [])),
        )
        dxz = hxz.diffm.get(k, zeros(nxz1, nxz))
        dyw = hyw.diffm.get(k, zeros(nyw1, nyw))
        dxw = hxw.diffm.get(k - 1, zeros(nxw1, nxw))
        g_mat = _postcompose_matrix(hxz, hxw, m2.f, k)
        f_mat = _precompose_matrix(hyw, hxw, m1.f, k)
        rows = []
        for i in range(nxz1):
            rows.append(
                tuple(dxz[i][j] if j < (len(dxz[i]) if i < len(dxz) else 0) else F0 for j in range(nxz))
                + (F0,) * (nyw + nxw)
            )
        for i in range(nyw1):
            rows.append(
                (F0,) * nxz
                + tuple(dyw[i][j] if j < (len(dyw[i]) if i < len(dyw) else 0) else F0 for j in range(nyw))
                + (F0,) * nxw
            )
        for i in range(nxw1):
            r = []
            for j in range(nxz):
                r.append(-(g_mat[i][j] if i < len(g_mat) and j < (len(g_mat[i]) if g_mat else 0) else F0))
            for j in range(nyw):
                r.append(f_mat[i][j] if i < len(f_mat) and j < (len(f_mat[i]) if f_mat else 0) else F0)
            for j in range(nxw):
                r.append(-(dxw[i][j] if i < len(dxw) and j < (len(dxw[i]) if dxw else 0) else F0))
            rows.append(tuple(r))
        diffs[k] = mat(rows)
    return MorHomComplex(sizes, diffs)


def mor_hom_dim(m1: MorObject, m2: MorObject, k: int = 0) -> int:
    """dim Hom(m1, m2[k]) in the category of morphisms."""
    return mor_hom_complex(m1, m2).h_dim(k)


def mor_hom_dim_les(m1: MorObject, m2: MorObject) -> int:
    """Independent route: dim ker(delta on H^0) + dim coker(delta on H^-1)
    for delta(u, v) = g o u - v o f, chased through the Hom long exact
    sequence of the canonical decomposition."""
    from .linalg import hstack, mat_mul, transpose

    hxz = hom_complex(m1.f.src, m2.f.src)
    hyw = hom_complex(m1.f.tgt, m2.f.tgt)
    hxw = hom_complex(m1.f.src, m2.f.tgt)

    def cohom_data(hc: HomComplexData, k: int):
        from .linalg import column_space_basis, kernel_basis

        nb = len(hc.basis.get(k, []))
        dk = hc.diffm.get(k)
        ker = kernel_basis(dk, ncols=nb) if dk is not None else [
            tuple(F1 if i == j else F0 for j in range(nb)) for i in range(nb)
        ]
        dm = hc.diffm.get(k - 1)
        if dm is not None and hc.basis.get(k - 1):
            img = column_space_basis(dm)
        else:
            img = tuple(() for _ in range(nb))
        return ker, img

    total = 0
    for k, mode in ((0, "ker"), (-1, "coker")):
        kxz, ixz = cohom_data(hxz, k)
        kyw, iyw = cohom_data(hyw, k)
        kxw, ixw = cohom_data(hxw, k)
        gm = _postcompose_matrix(hxz, hxw, m2.f, k)
        fm = _precompose_matrix(hyw, hxw, m1.f, k)
        # delta of cocycle representatives, as vectors in basis(hxw, k)
        imgs = []
        for v in kxz:
            imgs.append(tuple(sum(gm[i][j] * v[j] for j in range(len(v))) for i in range(len(hxw.basis.get(k, [])))))
        for v in kyw:
            imgs.append(tuple(-sum(fm[i][j] * v[j] for j in range(len(v))) for i in range(len(hxw.basis.get(k, [])))))
        src_dim_h = (len(kxz) - rank(transpose(ixz) if ixz else ())) + (
            len(kyw) - rank(transpose(iyw) if iyw else ())
        )
        h_xw = len(kxw) - (rank(transpose(ixw)) if any(len(r) for r in ixw) else 0)
        # rank of induced map on cohomology: rank([delta(cocycles) | boundaries]) - rank(boundaries)
        cols = transpose(tuple(imgs)) if imgs else tuple(() for _ in range(len(hxw.basis.get(k, []))))
        bmat = ixw
        r_b = rank(bmat) if any(len(r) for r in bmat) else 0
        r_all = rank(hstack(cols, bmat))
        r_induced = r_all - r_b
        if mode == "ker":
            total += src_dim_h - r_induced
        else:
            total += h_xw - r_induced
    return total


# ---------------------------------------------------------------------------
# corpus and literals
# ---------------------------------------------------------------------------


def mor_corpus(n: int, max_dim: int, shifts=(-1, 0, 1)):
    """All morphism objects with both endpoints in the object corpus and
    the map running over 0, a Hom basis, and the identity."""
    from .dcat import corpus

    endpoints = [zero_object(n)] + list(corpus(n, max_dim, shifts))
    for x in endpoints:
        for y in endpoints:
            if x.is_zero() and y.is_zero():
                continue
            yield from mor_all(x, y)


def parse_mor(n: int, text: str) -> MorObject:
    """Parse "mor(x; y; f=basis#k)" with f in {0, id, basis#k}."""
    from .dcat import parse_dobject

    t = text.strip()
    if not (t.startswith("mor(") and t.endswith(")")):
        raise ValueError(f"bad morphism literal: {text!r}")
    xs, ys, fs = (p.strip() for p in t[4:-1].split(";"))
    x = parse_dobject(n, xs)
    y = parse_dobject(n, ys)
    if not fs.startswith("f="):
        raise ValueError("morphism literal needs an f= part")
    fval = fs[2:]
    if fval == "0":
        return mor_zero_map(x, y)
    if fval == "id":
        if x != y:
            raise ValueError("identity needs equal endpoints")
        return s_of(x)
    if fval.startswith("basis#"):
        return mor_from_basis(x, y, int(fval[6:]))
    raise ValueError(f"unknown f spec {fval!r}")
