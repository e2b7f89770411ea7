"""Slope stability on the glued heart and the tilted family member.

The slope datum of a glued-heart object E is the complex value

    M(E) = -Im Z1(t1) + omega Re Z2(t2) - beta Im Z2(t2)
           + i (Im Z1(t1) + Im Z2(t2)),

whose argument lies in (0, pi] away from the Serre kernel B = {M = 0}.
The real slope mu = -Re M / Im M is strictly increasing in arg M, so all
slope comparisons (including the mu = +infinity sentinel at Im M = 0) are
exact argument comparisons of M values.  Tilting at (T~, F~) produces the
heart of the family member Sigma~ with charge Z~ = Z1 + (beta - i omega)
Z2 on tau_2^R.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .geometry import PlanePoint
from .gluing import (
    GluedHeart,
    GluingContext,
    PairObject,
    glue_stability,
    glued_charge,
    pair_from_parts,
    pair_torsion_filtration,
)
from .scalars import QS3, XC, arg_cmp, qs3
from .stability import (
    CentralCharge,
    Phase,
    StabilityCondition,
    StabilityError,
    phase_cmp,
)

F0 = Fraction(0)


@dataclass(frozen=True)
class SlopeValue:
    """Exact slope datum: the complex M value and the derived mu."""

    m: XC
    in_B: bool

    @property
    def mu_infinite(self) -> bool:
        return not self.in_B and self.m.im.sign() == 0

    def mu(self) -> QS3 | None:
        """The real slope, or None for the +infinity sentinel / B members."""
        if self.in_B or self.mu_infinite:
            return None
        return (-self.m.re) / self.m.im

    def mu_float(self) -> float | None:
        x = self.mu()
        return None if x is None else float(x)


def slope_m_value(E: PairObject, p: PlanePoint, ctx: GluingContext) -> XC:
    z1 = ctx.Z(E.d1())
    z2 = ctx.Z(E.d2())
    re = -z1.im + p.omega * z2.re - p.beta * z2.im
    im = z1.im + z2.im
    return XC(re, im)


def slope(E: PairObject, p: PlanePoint, ctx: GluingContext) -> SlopeValue:
    if not p.interior:
        raise StabilityError("slope needs omega > 0")
    m = slope_m_value(E, p, ctx)
    in_b = not m
    if in_b:
        # structural characterization: tau2R = 0 and tau1L torsion
        tv = ctx.torsion_vertices()
        struct = not E.bars2 and all(
            all(v in tv for v in range(a, b + 1)) for a, b in E.bars1
        )
        if not struct and not E.is_zero():
            raise StabilityError(f"M = 0 without the structural B shape on {E}")
    return SlopeValue(m, in_b)


def mu_cmp(a: SlopeValue, b: SlopeValue) -> int:
    """Exact comparison of slopes through arg M (B members are excluded)."""
    if a.in_B or b.in_B:
        raise StabilityError("slope comparison against a Serre-kernel member")
    return arg_cmp(a.m, b.m)


def mu_positive(a: SlopeValue) -> bool:
    """mu > 0, with the +infinity sentinel counting as positive."""
    if a.in_B:
        raise StabilityError("mu of a Serre-kernel member")
    if a.mu_infinite:
        return True
    return a.m.re.sign() < 0


def mu_nonpositive_le_zero(a: SlopeValue) -> bool:
    return not mu_positive(a)


@dataclass
class MuFactor:
    obj: PairObject
    slope_value: SlopeValue


@dataclass
class MuHN:
    factors: list[MuFactor]

    def mu_plus(self) -> SlopeValue:
        return self.factors[0].slope_value

    def mu_minus(self) -> SlopeValue:
        return self.factors[-1].slope_value


def mu_hn(E: PairObject, p: PlanePoint, ctx: GluingContext, heart: GluedHeart | None = None) -> MuHN:
    """Slope HN filtration modulo the Serre subcategory B.

    Factors have strictly decreasing arg M; B parts are absorbed into the
    neighboring factors (the filtration lives in gl / B).
    """
    if heart is None:
        heart = GluedHeart(ctx)
    if not ctx.sigma1().flags()["discrete"] or not ctx.sigma2().flags()["discrete"]:
        raise StabilityError("mu-HN requires discrete factor stabilities")
    sv = slope(E, p, ctx)
    if sv.in_B:
        return MuHN([])
    factors: list[MuFactor] = []
    rest = E
    guard = heart.size(E) + 1
    while True:
        guard -= 1
        if guard < 0:
            raise StabilityError("mu-HN did not terminate")
        sv_rest = slope(rest, p, ctx)
        if sv_rest.in_B:
            break
        best_s, best_q = rest, None
        best_sv = sv_rest
        best_size = heart.size(rest)
        for S, Q in heart.subquotients(rest):
            ss = slope(S, p, ctx)
            qs_ = slope(Q, p, ctx)
            if ss.in_B or qs_.in_B:
                continue  # improper in the quotient category
            c = mu_cmp(ss, best_sv)
            if c > 0 or (c == 0 and heart.size(S) > best_size):
                best_s, best_q, best_sv, best_size = S, Q, ss, heart.size(S)
        factors.append(MuFactor(best_s, best_sv))
        if best_q is None:
            break
        rest = best_q
    for i in range(len(factors) - 1):
        if mu_cmp(factors[i].slope_value, factors[i + 1].slope_value) <= 0:
            raise StabilityError("mu-HN slopes not strictly decreasing")
    return MuHN(factors)


def mu_semistable(E: PairObject, p: PlanePoint, ctx: GluingContext, heart=None) -> bool:
    if heart is None:
        heart = GluedHeart(ctx)
    sv = slope(E, p, ctx)
    if sv.in_B:
        raise StabilityError("semistability of a Serre-kernel member")
    for S, Q in heart.subquotients(E):
        ss = slope(S, p, ctx)
        qs_ = slope(Q, p, ctx)
        if ss.in_B or qs_.in_B:
            continue
        if mu_cmp(ss, sv) > 0:
            return False
    return True


# ---------------------------------------------------------------------------
# the tilting torsion pair
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TiltTag:
    point: PlanePoint
    ctx: GluingContext


def tilt_membership(E: PairObject, tag: TiltTag, heart=None) -> dict:
    """Classify against (T~, F~): torsion-or-positive-slope vs free with
    nonpositive top slope; mixed objects get the two-step filtration."""
    p, ctx = tag.point, tag.ctx
    if heart is None:
        heart = GluedHeart(ctx)
    T, F = pair_torsion_filtration(E, ctx)
    if E.is_zero():
        return {"kind": "zero"}
    if F.is_zero():
        return {"kind": "T"}
    hn_free = mu_hn(F, p, ctx, heart)
    if hn_free.factors and mu_positive(hn_free.mu_minus()):
        return {"kind": "T"}
    if T.is_zero():
        if not mu_positive(mu_hn(E, p, ctx, heart).mu_plus()):
            return {"kind": "F"}
    # mixed: find the canonical T~ over F~ two-step filtration
    for S, Q in heart.subquotients(E):
        ks = tilt_class_simple(S, tag, heart)
        kq = tilt_class_simple(Q, tag, heart)
        if ks == "T" and kq == "F":
            return {"kind": "mixed", "t_part": S, "f_part": Q}
    raise StabilityError(f"no tilting filtration found for {E}")


def tilt_class_simple(E: PairObject, tag: TiltTag, heart=None) -> str:
    p, ctx = tag.point, tag.ctx
    if heart is None:
        heart = GluedHeart(ctx)
    if E.is_zero():
        return "zero"
    T, F = pair_torsion_filtration(E, ctx)
    if F.is_zero():
        return "T"
    if mu_positive(mu_hn(F, p, ctx, heart).mu_minus()):
        return "T"
    if T.is_zero() and not mu_positive(mu_hn(E, p, ctx, heart).mu_plus()):
        return "F"
    return "mixed"


def lemma_mono_check(E: PairObject, tag: TiltTag, heart=None) -> bool | None:
    """For free E with mu^+ < 1 the gluing morphism is a monomorphism.

    mu = 1 is the slope of the pure first-factor objects, whose M value is
    Im Z1 (-1 + i); the exact test is arg M(E) < arg(-1 + i) = 3 pi / 4.
    Returns None when the hypothesis does not apply.
    """
    p, ctx = tag.point, tag.ctx
    if heart is None:
        heart = GluedHeart(ctx)
    T, _ = pair_torsion_filtration(E, ctx)
    if not T.is_zero() or E.is_zero():
        return None
    top = mu_hn(E, p, ctx, heart).mu_plus()
    one = XC(-1, 1)  # arg = 3pi/4, the slope-1 direction
    if not (arg_cmp(top.m, one) < 0):
        return None
    return E.glue_is_mono()


# ---------------------------------------------------------------------------
# the tilted charge and heart
# ---------------------------------------------------------------------------


def z_tilde(p: PlanePoint, ctx: GluingContext) -> CentralCharge:
    """Z~ = Z1(tau1L) + (beta - i omega) Z2(tau2R) on K0(D)."""
    n = ctx.n
    coef = XC(p.beta, -p.omega)
    row = []
    for j in range(2 * n):
        vec = tuple(1 if i == j else 0 for i in range(2 * n))
        row.append(ctx.Z(ctx.t1_class(vec)) + coef * ctx.Z(ctx.t2_class(vec)))
    return CentralCharge(tuple(row))


@dataclass(frozen=True)
class TiltObject:
    """Object T (+) F[1] of the tilted heart (formal two-part sum)."""

    t_part: PairObject
    f_part: PairObject

    @property
    def n(self) -> int:
        return self.t_part.n

    def is_zero(self) -> bool:
        return self.t_part.is_zero() and self.f_part.is_zero()

    @property
    def size(self) -> int:
        return self.t_part.size + self.f_part.size

    def __str__(self) -> str:
        if self.f_part.is_zero():
            return str(self.t_part)
        if self.t_part.is_zero():
            return f"{self.f_part}[1]"
        return f"{self.t_part} (+) {self.f_part}[1]"


class TiltedHeart:
    """Heart of Sigma~ at a point (beta, omega): the tilt of the glued
    heart at (T~, F~).

    Objects are carried as formal sums T (+) F[1].  For the morphism
    category over D^b(k) every heart object has this split shape (the
    relevant extension groups vanish); for larger quivers the corpus is
    restricted to split objects and subobject generation to the pure and
    componentwise candidates.
    """

    def __init__(self, ctx: GluingContext, p: PlanePoint, corpus_dim: int = 2):
        self.ctx = ctx
        self.p = p
        self.tag = TiltTag(p, ctx)
        self.glued = GluedHeart(ctx, corpus_dim)
        self.n = ctx.n
        self.rank = 2 * ctx.n
        self.corpus_dim = corpus_dim

    def zero(self) -> TiltObject:
        z = pair_from_parts(self.n, (), ())
        return TiltObject(z, z)

    def contains(self, E) -> bool:
        return isinstance(E, TiltObject)

    def is_zero(self, E: TiltObject) -> bool:
        return E.is_zero()

    def size(self, E: TiltObject) -> int:
        return E.size

    def k0(self, E: TiltObject) -> tuple[int, ...]:
        kt = self.glued.k0(E.t_part)
        kf = self.glued.k0(E.f_part)
        return tuple(a - b for a, b in zip(kt, kf))

    def describe(self, E: TiltObject) -> str:
        return str(E)

    def lift(self, P: PairObject) -> TiltObject:
        """Wrap a glued-heart object known to lie in T~ or F~[1]-shifted."""
        kind = tilt_class_simple(P, self.tag, self.glued)
        if kind in ("T", "zero"):
            return TiltObject(P, pair_from_parts(self.n, (), ()))
        if kind == "F":
            raise StabilityError("an F~ object lies in the heart only after [1]")
        raise StabilityError(f"{P} is not in T~")

    def object_cohomology(self, m) -> dict:
        """Tilted-heart cohomology windows of a morphism object.

        H^w of the tilt combines the T~ part of the glued window w with
        the F~ part of the glued window w - 1 (shifted)."""
        pairs = self.glued.object_cohomology(m)
        splits = {}
        for w, P in pairs.items():
            tm = tilt_membership(P, self.tag, self.glued)
            if tm["kind"] == "T":
                splits[w] = (P, None)
            elif tm["kind"] == "F":
                splits[w] = (None, P)
            elif tm["kind"] == "mixed":
                splits[w] = (tm["t_part"], tm["f_part"])
        # the T~ part of glued window w stays at tilt window w; the F~ part
        # becomes F[1] placed at tilt window w - 1 (F = (F[1])[-1])
        out = {}
        windows = set()
        for w, (t, f) in splits.items():
            if t is not None and not t.is_zero():
                windows.add(w)
            if f is not None and not f.is_zero():
                windows.add(w - 1)
        zero = pair_from_parts(self.n, (), ())
        for w in sorted(windows):
            t = splits.get(w, (None, None))[0] or zero
            f = splits.get(w + 1, (None, None))[1] or zero
            if t.is_zero() and f.is_zero():
                continue
            out[w] = TiltObject(t, f)
        return out

    def subquotients(self, E: TiltObject):
        """Candidate subobject/quotient pairs in the tilted heart.

        Generated from glued subobjects of the two parts: fresh F-side
        subobjects F'[1] (valid when F/F' stays in F~), pullbacks along
        T-side subobjects in T~, and their combinations (split objects)."""
        zero = pair_from_parts(self.n, (), ())
        T, F = E.t_part, E.f_part
        t_subs = [(T, zero)] if not T.is_zero() else [(zero, zero)]
        for S, Q in self.glued.subquotients(T) if not T.is_zero() else ():
            if tilt_class_simple(S, self.tag, self.glued) in ("T", "zero"):
                t_subs.append((S, Q))
        t_subs.append((zero, T))
        f_subs = [(F, zero)] if not F.is_zero() else [(zero, zero)]
        for S, Q in self.glued.subquotients(F) if not F.is_zero() else ():
            ks = tilt_class_simple(S, self.tag, self.glued)
            kq = tilt_class_simple(Q, self.tag, self.glued)
            if ks in ("F", "zero") and kq in ("F", "zero"):
                f_subs.append((S, Q))
        f_subs.append((zero, F))
        for (ts, tq) in t_subs:
            for (fs, fq) in f_subs:
                sub = TiltObject(ts, fs)
                quot = TiltObject(tq, fq)
                if sub.is_zero() or quot.is_zero():
                    continue
                yield sub, quot

    def indecomposables(self):
        ind = self.glued.indecomposables()
        if ind is None:
            return None
        zero = pair_from_parts(self.n, (), ())
        out = []
        for P in ind:
            kind = tilt_class_simple(P, self.tag, self.glued)
            if kind == "T":
                out.append(TiltObject(P, zero))
            elif kind == "F":
                out.append(TiltObject(zero, P))
            else:
                raise StabilityError("indecomposable neither T~ nor F~")
        return out

    def corpus(self):
        zero = pair_from_parts(self.n, (), ())
        fs = []
        for P in self.glued.corpus():
            tm = tilt_membership(P, self.tag, self.glued)
            if tm["kind"] == "T":
                yield TiltObject(P, zero)
            elif tm["kind"] == "F":
                fs.append(P)
                yield TiltObject(zero, P)
        for P in fs[:6]:
            for Q in list(self.glued.corpus())[:8]:
                tm = tilt_membership(Q, self.tag, self.glued)
                if tm["kind"] == "T":
                    yield TiltObject(Q, P)


def build_sigma_tilde(
    p: PlanePoint,
    ctx: GluingContext,
    corpus_dim: int = 2,
    validate: bool = True,
    allow_nonrational: bool = False,
) -> StabilityCondition:
    """The family member Sigma~ at (beta, omega).

    Requires rational factor stabilities; the point must be rational or
    exact in Q(sqrt 3) (the path endpoint).  At the boundary point (1, 0)
    the construction specializes to the glued stability itself.
    """
    if not ctx.sigma1().flags()["rational"] or not ctx.sigma2().flags()["rational"]:
        if not allow_nonrational:
            raise StabilityError(
                "factor stabilities must be rational (override to proceed "
                "outside the verified hypotheses)"
            )
    if not p.interior:
        if p.beta == qs3(1) and p.omega == qs3(0):
            return glue_stability(ctx, corpus_dim)
        raise StabilityError("boundary points other than (1, 0) are not admitted")
    heart = TiltedHeart(ctx, p, corpus_dim)
    sigma = StabilityCondition(
        heart, z_tilde(p, ctx), f"tilt[{ctx.side.name}]({p.beta},{p.omega})"
    )
    if validate:
        report = validate_sigma_tilde(sigma)
        if not report["ok"]:
            raise StabilityError(f"Sigma~ validation failed: {report}")
    return sigma


def validate_sigma_tilde(sigma: StabilityCondition) -> dict:
    """Heart positivity (with the quantitative witness bound), HN runs on
    the corpus, and the reasonable flag."""
    heart: TiltedHeart = sigma.heart
    ctx, p = heart.ctx, heart.p
    positivity_bad = []
    witness_bound_checked = 0
    for E in heart.corpus():
        if heart.is_zero(E):
            continue
        z = sigma.value(E)
        si = z.im.sign()
        if si < 0 or (si == 0 and z.re.sign() >= 0):
            positivity_bad.append(heart.describe(E))
            continue
        if si == 0 and not E.f_part.is_zero() and E.t_part.is_zero():
            # quantitative bound on the vanishing-imaginary witnesses:
            # -Re Z~(F[1]) >= ((1+beta)^2 + omega^2)/omega * Im Z1(tau1L F)
            f = E.f_part
            im1 = ctx.Z(f.d1()).im
            if im1.sign() > 0:
                witness_bound_checked += 1
                bound = (
                    ((1 + p.beta) * (1 + p.beta) + p.omega * p.omega) / p.omega
                ) * im1
                if ((-z.re) - bound).sign() < 0:
                    positivity_bad.append(f"bound:{heart.describe(E)}")
    hn_failures = []
    count = 0
    for E in heart.corpus():
        if heart.is_zero(E):
            continue
        count += 1
        try:
            sigma.hn_heart(E)
        except StabilityError as exc:
            hn_failures.append(f"{heart.describe(E)}: {exc}")
    flags = sigma.flags()
    return {
        "ok": not positivity_bad and not hn_failures and flags["reasonable"],
        "positivity_failures": positivity_bad,
        "hn_failures": hn_failures,
        "hn_checked": count,
        "witness_bound_checked": witness_bound_checked,
        "flags": flags,
    }


def serre_support_form(ctx: GluingContext):
    """The quadratic form q(v) = Im Z1(t1 v) * Im Z2(t2 v) on K0(D) (x) R,
    as a symmetric matrix over the exact scalars."""
    n2 = 2 * ctx.n
    l1 = []
    l2 = []
    for j in range(n2):
        vec = tuple(1 if i == j else 0 for i in range(n2))
        l1.append(ctx.Z(ctx.t1_class(vec)).im)
        l2.append(ctx.Z(ctx.t2_class(vec)).im)
    half = QS3(Fraction(1, 2))
    return tuple(
        tuple((l1[i] * l2[j] + l1[j] * l2[i]) * half for j in range(n2))
        for i in range(n2)
    )


def theta_constants(p: PlanePoint, eps1: Fraction, eps2: Fraction) -> dict:
    """The explicit angle constants bounding the slope windows."""
    b, w = p.beta, p.omega
    z_bw = XC(b, -w)
    t1 = XC(b + 1 - 2 * qs3(eps1), w)
    t2 = XC(b + 1 - 2 * qs3(eps2), w) * z_bw
    t3 = XC(b - qs3(eps1), w) * z_bw
    from .scalars import arg_float

    th1, th2, th3 = arg_float(t1), arg_float(t2), arg_float(t3)
    th0 = max(th1 - th2, th3 - th2)
    return {
        "theta1": th1,
        "theta2": th2,
        "theta3": th3,
        "theta0": th0,
        "theta0_in_0_pi": 0 < th0 < math.pi,
        "carriers": {"t1": t1, "t2": t2, "t3": t3},
    }
