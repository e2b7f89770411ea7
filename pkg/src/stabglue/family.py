"""The continuous family over the admissible region and the path between
the two induced stability conditions on the category of morphisms.

Continuity is certified as a finite chain of deformation-ball memberships
over a declared list of sample points; the path runs from the boundary
bridge at (1, 0) to the exact Q(sqrt 3) endpoint (-1/2, sqrt3/2), where
the two pullback charges differ exactly by the rotation e^{2 pi i/3}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .geometry import PlanePoint, RegionParams, plane_point, region_membership
from .gluing import (
    GluingContext,
    glue_stability,
    glued_charge,
    pair_from_parts,
)
from .scalars import (
    QS3,
    XC,
    ExactAngle,
    angle_pi,
    arg_cmp,
    iv_from_fraction,
    iv_sin_pi,
    iv_lt,
    qs3,
)
from .stability import (
    CentralCharge,
    StabilityCondition,
    StabilityError,
    ball_membership,
    metric_estimate,
    norm_estimate,
)
from .tilting import TiltObject, TiltedHeart, build_sigma_tilde, z_tilde

_iv = mpmath.iv


# ---------------------------------------------------------------------------
# family samples and suprema
# ---------------------------------------------------------------------------


@dataclass
class FamilySample:
    point: PlanePoint
    sigma: StabilityCondition
    sup_ratio: float
    sup_ratio_sq: QS3 | None
    per_class: dict
    exact: bool


def sup_ratio_estimate(sigma: StabilityCondition, ctx: GluingContext) -> FamilySample:
    """sup |Z~(tau2R E)| / |Z~(E)| over Sigma~-semistable objects, with the
    per-class maxima mirroring the torsion/free/phase-window case split."""
    heart = sigma.heart
    p = heart.p if isinstance(heart, TiltedHeart) else plane_point(1, 0)
    coef2 = XC(p.beta, -p.omega).norm2()
    boundary_dir = XC(-p.beta, p.omega)
    ind = heart.indecomposables()
    exact = ind is not None
    pool = ind if ind is not None else list(heart.corpus())
    per_class: dict = {}
    best = None
    for E in pool:
        if heart.is_zero(E):
            continue
        if not sigma.is_semistable_heart(E):
            continue
        z = sigma.value(E)
        if isinstance(E, TiltObject):
            if not E.f_part.is_zero() and E.t_part.is_zero():
                cls = "F_shift"
            elif E.f_part.is_zero():
                cls = (
                    "T_low"
                    if arg_cmp(z, boundary_dir) <= 0
                    else "T_high"
                )
            else:
                cls = "mixed"
        else:
            cls = "glued"
        d2 = ctx.t2_class(heart.k0(E))
        num = coef2 * ctx.Z(d2).norm2()
        ratio = num / z.norm2()
        rec = per_class.setdefault(cls, {"max_sq": None, "witness": None})
        if rec["max_sq"] is None or ratio > rec["max_sq"]:
            rec["max_sq"], rec["witness"] = ratio, heart.describe(E)
        if best is None or ratio > best:
            best = ratio
    for rec in per_class.values():
        rec["max"] = math.sqrt(float(rec["max_sq"]))
        rec["max_sq"] = str(rec["max_sq"])
    return FamilySample(
        p,
        sigma,
        math.sqrt(float(best)) if best is not None else 0.0,
        best,
        per_class,
        exact,
    )


def glued_sup_ratio(ctx: GluingContext, sigma=None) -> float:
    """sup |Z2(tau2R E)| / |Z1(+)Z2(E)| over glued semistables (Cor 7.2
    bounds it by one; exact on the indecomposable classes)."""
    if sigma is None:
        sigma = glue_stability(ctx)
    heart = sigma.heart
    best = None
    pool = heart.indecomposables() or list(heart.corpus())
    for E in pool:
        if heart.is_zero(E) or not sigma.is_semistable_heart(E):
            continue
        num = ctx.Z(E.d2()).norm2()
        den = sigma.value(E).norm2()
        r = num / den
        if best is None or r > best:
            best = r
    return math.sqrt(float(best)) if best is not None else 0.0


# ---------------------------------------------------------------------------
# torsion window checks
# ---------------------------------------------------------------------------


def torsion_window_check(sigma: StabilityCondition, ctx: GluingContext) -> dict:
    """Semistable heart objects with phase at most arg(-beta + i omega)/pi
    lie in the T~ part; shifted free objects sit strictly above the
    boundary argument."""
    heart: TiltedHeart = sigma.heart
    p = heart.p
    boundary_dir = XC(-p.beta, p.omega)
    failures = []
    checked = 0
    for E in heart.corpus():
        if heart.is_zero(E):
            continue
        if not sigma.is_semistable_heart(E):
            continue
        z = sigma.value(E)
        if arg_cmp(z, boundary_dir) <= 0:
            checked += 1
            if not E.f_part.is_zero():
                failures.append(("window", heart.describe(E)))
    # every F~[1] corpus object has argument strictly above the boundary
    for E in heart.corpus():
        if heart.is_zero(E):
            continue
        if not E.t_part.is_zero() or E.f_part.is_zero():
            continue
        z = sigma.value(E)
        checked += 1
        if not arg_cmp(z, boundary_dir) > 0:
            failures.append(("shifted-free", heart.describe(E)))
    return {"checked": checked, "failures": failures, "ok": not failures}


# ---------------------------------------------------------------------------
# continuity and specialization
# ---------------------------------------------------------------------------


def _mor_metric_corpus(n: int):
    from .morphisms import mor_corpus

    return list(mor_corpus(n, 1, (0,)))


def continuity_check(
    p1: PlanePoint,
    p2: PlanePoint,
    eps: Fraction,
    ctx: GluingContext,
    corpus=None,
    sigma1=None,
    sigma2=None,
) -> dict:
    """Deformation-ball membership between adjacent family members."""
    eps = Fraction(eps)
    if not (0 < eps < Fraction(1, 8)):
        raise StabilityError("eps must lie in (0, 1/8)")
    sig1 = sigma1 or build_sigma_tilde(p1, ctx)
    sig2 = sigma2 or build_sigma_tilde(p2, ctx)
    ne = norm_estimate(sig2.Z.minus(sig1.Z), sig1)
    norm_ok = ne.lt_sin_pi(eps)
    if corpus is None:
        corpus = _mor_metric_corpus(ctx.n)
    me = metric_estimate(sig1, sig2, corpus)
    metric_ok = me.lt(eps)
    window_ok = heart_gap_vanishing(sig1, sig2, corpus)
    return {
        "ok": bool(norm_ok and metric_ok and window_ok),
        "norm_ok": norm_ok,
        "norm_value": ne.value,
        "norm_exact": ne.exact,
        "metric_ok": metric_ok,
        "metric_value": me.value,
        "window_ok": window_ok,
    }


def heart_gap_vanishing(sig1, sig2, corpus) -> bool:
    """Hom(E[p], E') = 0 for p >= 2 between the two tilted hearts, on the
    corpus members lying in the respective hearts."""
    from .morphisms import mor_hom_dim

    h1 = [m for m in corpus if _in_tilted_heart(sig1.heart, m)]
    h2 = [m for m in corpus if _in_tilted_heart(sig2.heart, m)]
    for a in h1[:8]:
        for b in h2[:8]:
            for pshift in (2, 3):
                if mor_hom_dim(a.shift(pshift), b) != 0:
                    return False
    return True


def _in_tilted_heart(heart, m) -> bool:
    try:
        coh = heart.object_cohomology(m)
    except StabilityError:
        return False
    return set(coh) <= {0} and bool(coh)


def chain_connect(
    p1: PlanePoint,
    p2: PlanePoint,
    eps: Fraction,
    ctx: GluingContext,
    corpus=None,
    max_depth: int = 6,
    _cache=None,
) -> dict:
    """Certify that two family members are connected by a finite chain of
    deformation balls, bisecting the segment (rationally) as needed."""
    if corpus is None:
        corpus = _mor_metric_corpus(ctx.n)
    cache = _cache if _cache is not None else {}

    def sigma_at(p: PlanePoint):
        key = (p.beta, p.omega)
        if key not in cache:
            cache[key] = build_sigma_tilde(p, ctx)
        return cache[key]

    def link(a: PlanePoint, b: PlanePoint, depth: int) -> tuple[bool, int]:
        res = continuity_check(a, b, eps, ctx, corpus, sigma_at(a), sigma_at(b))
        if res["ok"]:
            return True, 1
        if depth >= max_depth:
            return False, 1
        mid = plane_point((a.beta + b.beta) / 2, (a.omega + b.omega) / 2)
        ok1, n1 = link(a, mid, depth + 1)
        if not ok1:
            return False, n1
        ok2, n2 = link(mid, b, depth + 1)
        return ok1 and ok2, n1 + n2

    ok, nlinks = link(p1, p2, 0)
    return {"ok": ok, "links": nlinks}


def specialization_check(
    p: PlanePoint, eps: Fraction, ctx: GluingContext, corpus=None
) -> dict:
    """Bridge from Sigma~ at a point near (1, 0) into the deformation ball
    of the glued stability."""
    eps = Fraction(eps)
    dist2 = (p.beta - 1) * (p.beta - 1) + p.omega * p.omega
    hyp = iv_lt(dist2.interval(), iv_sin_pi(eps) ** 2)
    if not hyp:
        return {"ok": False, "hypothesis": False}
    glued = glue_stability(ctx)
    tilted = build_sigma_tilde(p, ctx)
    if corpus is None:
        corpus = _mor_metric_corpus(ctx.n)
    ball = ball_membership(glued, tilted, eps, corpus)
    containment = heart_containment_window(tilted, glued, ctx, eps)
    return {
        "ok": bool(ball["member"] and containment["ok"]),
        "hypothesis": True,
        "ball": ball,
        "containment": containment,
    }


def heart_containment_window(tilted, glued, ctx: GluingContext, eps: Fraction) -> dict:
    """A~ inside the glued slicing window (0, 2 - eps]: T~ parts stay in
    (0, 1], shifted free parts in (1, 1 + theta] with theta the boundary
    argument over pi."""
    heart: TiltedHeart = tilted.heart
    p = heart.p
    btheta = XC(p.beta, p.omega)
    failures = []
    checked = 0
    two_minus = Fraction(2) - eps
    for E in heart.corpus():
        if heart.is_zero(E):
            continue
        checked += 1
        if not E.t_part.is_zero():
            pass  # T~ is inside the glued heart: window (0, 1]
        if not E.f_part.is_zero():
            f = E.f_part
            hn = glued.hn_heart(f)
            top = hn.phi_plus()
            # phase(F) + 1 <= 1 + theta  <=>  arg Z_glue(top factor) <= arg(beta + i omega)
            if arg_cmp(top.z, btheta) > 0:
                failures.append(("theta-window", heart.describe(E)))
            top_iv = top.interval() + iv_from_fraction(Fraction(1))
            if not iv_lt(top_iv, iv_from_fraction(two_minus)):
                failures.append(("two-minus-eps", heart.describe(E)))
    return {"checked": checked, "failures": failures, "ok": not failures}


# ---------------------------------------------------------------------------
# the path
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PathPoint:
    t: Fraction
    point: PlanePoint
    exact: bool
    in_region: bool


PATH_REGION = RegionParams(Fraction(1, 3), Fraction(-1, 2))


def path_point(t: Fraction, denom: int = 1 << 20) -> PathPoint:
    """p(t) = (cos(2 pi t / 3), sin(2 pi t / 3)); exact in Q(sqrt 3) when
    4t is an integer, otherwise a rational surrogate verified inside the
    region by exact arithmetic."""
    t = Fraction(t)
    if not (0 <= t <= 1):
        raise ValueError("t must lie in [0, 1]")
    coeff = Fraction(2, 3) * t
    if (coeff * 6).denominator == 1:
        ang = ExactAngle(coeff)
        pt = PlanePoint(ang.cos(), ang.sin())
        exact = True
    else:
        theta = 2 * math.pi * float(t) / 3
        beta = Fraction(round(math.cos(theta) * denom), denom)
        omega = Fraction(round(math.sin(theta) * denom), denom)
        pt = plane_point(beta, omega)
        exact = False
    if pt.interior:
        rep = region_membership(pt, PATH_REGION)
        inr = rep.in_h_plus and rep.in_h_minus
    else:
        inr = False
    return PathPoint(t, pt, exact, inr)


def path_points(N: int) -> list[PathPoint]:
    if N < 2:
        raise ValueError("need at least two steps")
    return [path_point(Fraction(k, N)) for k in range(N + 1)]


def endpoint_rotation_check(
    ctx0: GluingContext, ctx1: GluingContext, rotation: ExactAngle | None = None
) -> dict:
    """Exact identity at the endpoint: the first pullback charge equals
    e^{2 pi i / 3} times the second, entrywise over Q(sqrt 3)."""
    if ctx0.Z.row != ctx1.Z.row:
        raise StabilityError("contexts must come from the same base stability")
    if rotation is None:
        rotation = angle_pi(Fraction(2, 3))
    endpoint = PlanePoint(QS3(Fraction(-1, 2)), QS3(0, Fraction(1, 2)))
    z0 = z_tilde(endpoint, ctx0)
    z1 = z_tilde(endpoint, ctx1)
    u = rotation.unit()
    mismatches = []
    for j, (a, b) in enumerate(zip(z0.row, z1.row)):
        if a != u * b:
            mismatches.append(j)
    return {"ok": not mismatches, "mismatched_basis_vectors": mismatches}


def rotate_action(sigma: StabilityCondition, angle: ExactAngle):
    """Rotation sub-action: multiply the charge by e^{i theta} and relabel
    the slicing; semistable objects are unchanged."""
    if not angle.has_exact_trig():
        raise StabilityError("rotation angle must be a multiple of pi/6")
    return RotatedStability(sigma, angle)


class RotatedStability:
    """A stability condition rotated by an exact angle: same heart data,
    charge multiplied by the unit, phases shifted by theta/pi."""

    def __init__(self, base: StabilityCondition, angle: ExactAngle):
        self.base = base
        self.angle = angle
        self.Z = base.Z.rotate(angle)
        self.heart = base.heart
        self.label = f"rot[{angle}]({base.label})"

    def phase_offset(self) -> Fraction:
        return self.angle.coeff

    def is_semistable_heart(self, E) -> bool:
        return self.base.is_semistable_heart(E)

    def value(self, E) -> XC:
        return self.angle.unit() * self.base.value(E)


# ---------------------------------------------------------------------------
# heart windows at the endpoint (the two decompositions against each other)
# ---------------------------------------------------------------------------


def tilt_windows(m, tilted_heart: TiltedHeart):
    coh = tilted_heart.object_cohomology(m)
    return tuple(sorted(coh))


def heart_window_check(
    ctx0: GluingContext, ctx1: GluingContext, p: PlanePoint, corpus, corpus_dim: int = 2
) -> dict:
    """Window containments between the two tilted hearts on the corpus:
    the first heart sits inside positions [-1, 0] of the second, with the
    torsion side in [-1, 0] and the shifted free side in [-2, -1]."""
    t0 = TiltedHeart(ctx0, p, corpus_dim)
    t1 = TiltedHeart(ctx1, p, corpus_dim)
    report = {"heart": [], "torsion": [], "free": []}
    for m in corpus:
        try:
            coh0 = t0.object_cohomology(m)
        except StabilityError:
            continue
        if not coh0:
            continue
        w1 = tilt_windows(m, t1)
        if set(coh0) == {0}:
            ok = set(w1) <= {-1, 0}
            report["heart"].append((str(m), w1, ok))
            E0 = coh0[0]
            if E0.f_part.is_zero() and not E0.t_part.is_zero():
                report["torsion"].append((str(m), w1, set(w1) <= {-1, 0}))
        elif set(coh0) == {-1}:
            E0 = coh0[-1]
            if E0.t_part.is_zero():
                # m itself is a first-heart F~ object (m[1] in the heart)
                ok = set(w1) <= {-2, -1}
                report["free"].append((str(m), w1, ok))
    ok = all(r[2] for key in report for r in report[key])
    return {"ok": ok, "counts": {k: len(v) for k, v in report.items()}, "detail": report}


# ---------------------------------------------------------------------------
# path runner
# ---------------------------------------------------------------------------


def run_path_chain(
    ctx0: GluingContext,
    ctx1: GluingContext,
    steps: int = 64,
    eps: Fraction = Fraction(1, 16),
    corpus=None,
) -> dict:
    """Certify the chain from the first pullback stability to the second:
    a specialization bridge at t -> 0, deformation balls along the path,
    and the exact rotation identity at t = 1."""
    eps = Fraction(eps)
    pts = path_points(steps)
    interior = pts[1:]
    region_ok = all(q.in_region for q in interior)
    if corpus is None:
        corpus = _mor_metric_corpus(ctx0.n)
    spec = specialization_check(interior[0].point, eps, ctx0, corpus)
    sigmas = {}
    links = []
    prev = None
    for q in interior:
        sig = build_sigma_tilde(q.point, ctx0)
        sigmas[q.t] = sig
        if prev is not None:
            link = continuity_check(
                prev[0].point, q.point, eps, ctx0, corpus, prev[1], sig
            )
            links.append({"from_t": str(prev[0].t), "to_t": str(q.t), **link})
        prev = (q, sig)
    rot = endpoint_rotation_check(ctx0, ctx1)
    ok = bool(
        region_ok
        and spec["ok"]
        and all(l["ok"] for l in links)
        and rot["ok"]
    )
    return {
        "ok": ok,
        "region_ok": region_ok,
        "specialization": spec,
        "links": links,
        "rotation": rot,
        "steps": steps,
        "eps": str(eps),
    }
