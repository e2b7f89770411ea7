"""Stability conditions as heart-plus-charge data with an exact
Harder-Narasimhan engine.

A heart is any object implementing the small protocol documented in
``ModuleHeart``: exact K_0 classes, a complete enumeration of candidate
subobject/quotient pairs, and a decomposition of arbitrary objects of the
ambient triangulated category into shifted heart cohomologies.  The HN
engine peels maximal destabilizing subobjects by exact phase comparison;
phases are carried as (shift window, exact charge value) pairs so that
ordering is decided in Q(sqrt 3), never in floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .scalars import (
    QS3,
    XC,
    ExactAngle,
    UndecidableComparison,
    arg_cmp,
    arg_float,
    arg_interval,
    iv_from_fraction,
    iv_max,
    iv_sin_pi,
    qs3,
)

import mpmath

_iv = mpmath.iv


class StabilityError(Exception):
    pass


class NotSemistable(StabilityError):
    def __init__(self, obj, destabilizer):
        super().__init__(f"object {obj} destabilized by {destabilizer}")
        self.obj = obj
        self.destabilizer = destabilizer


@dataclass(frozen=True)
class CentralCharge:
    """Exact linear functional K_0 -> C, one XC entry per basis class."""

    row: tuple[XC, ...]

    @property
    def rank(self) -> int:
        return len(self.row)

    def __call__(self, vec) -> XC:
        out = XC(0, 0)
        for c, z in zip(vec, self.row):
            if c:
                out = out + z.scale(c)
        return out

    def minus(self, other: "CentralCharge") -> "CentralCharge":
        return CentralCharge(tuple(a - b for a, b in zip(self.row, other.row)))

    def rotate(self, angle: ExactAngle) -> "CentralCharge":
        u = angle.unit()
        return CentralCharge(tuple(u * z for z in self.row))

    def is_rational(self) -> bool:
        return all(z.re.is_rational and z.im.is_rational for z in self.row)

    def is_discrete(self) -> bool:
        """True when the image of the lattice is a discrete subgroup of C.

        Rational charges are discrete (finitely generated image in Q^2);
        otherwise it suffices that the Q-span of the entry coordinates in
        Q^4 = (Q(sqrt3))^2 has dimension at most 2, making the image a
        finite-rank lattice in R^2 with independent generators.
        """
        if self.is_rational():
            return True
        from .linalg import mat, rank as _rank

        rows = []
        for z in self.row:
            rows.append((z.re.a, z.re.b, z.im.a, z.im.b))
        return _rank(mat(rows)) <= 2

    def serialize(self) -> list[str]:
        return [str(z) for z in self.row]


@dataclass(frozen=True)
class Phase:
    """Exact phase of a semistable object: total phase = window + arg(z)/pi
    with arg(z) in (0, pi]."""

    window: int
    z: XC

    def __float__(self) -> float:
        return self.window + arg_float(self.z) / math.pi

    def interval(self):
        return iv_from_fraction(Fraction(self.window)) + arg_interval(self.z) / _iv.pi


def phase_cmp(p: Phase, q: Phase) -> int:
    if p.window != q.window:
        return 1 if p.window > q.window else -1
    return arg_cmp(p.z, q.z)


def phase_shift(p: Phase, k: int) -> Phase:
    return Phase(p.window + k, p.z)


def upper_half_ok(z: XC) -> bool:
    """0 < arg z <= pi: the central-charge axiom for nonzero heart objects."""
    si = z.im.sign()
    return si > 0 or (si == 0 and z.re.sign() < 0)


@dataclass
class HNFactor:
    obj: object
    k0: tuple[int, ...]
    phase: Phase

    def as_dict(self, heart=None) -> dict:
        return {
            "object": heart.describe(self.obj) if heart else str(self.obj),
            "class": list(self.k0),
            "phase": float(self.phase),
            "charge": str(self.phase.z),
        }


@dataclass
class HNFiltration:
    factors: list[HNFactor]

    @property
    def semistable(self) -> bool:
        return len(self.factors) == 1

    def phi_plus(self) -> Phase:
        return self.factors[0].phase

    def phi_minus(self) -> Phase:
        return self.factors[-1].phase

    def mass_terms(self) -> list[QS3]:
        return [f.phase.z.norm2() for f in self.factors]

    def mass(self) -> float:
        return sum(math.sqrt(float(t)) for t in self.mass_terms())


class StabilityCondition:
    """Heart descriptor plus exact central charge, with an HN engine."""

    def __init__(self, heart, Z: CentralCharge, label: str = "sigma"):
        if Z.rank != heart.rank:
            raise ValueError("charge rank does not match heart K0 rank")
        self.heart = heart
        self.Z = Z
        self.label = label
        self._flags = None

    # -- values and phases -------------------------------------------------

    def value(self, E) -> XC:
        return self.Z(self.heart.k0(E))

    def heart_phase(self, E) -> Phase:
        z = self.value(E)
        if not z:
            raise StabilityError(f"zero charge on heart object {E}")
        return Phase(0, z)

    # -- HN engine ----------------------------------------------------------

    def hn_heart(self, E) -> HNFiltration:
        """HN filtration of a nonzero heart object."""
        heart = self.heart
        if heart.is_zero(E):
            raise StabilityError("HN of the zero object")
        factors: list[HNFactor] = []
        rest = E
        guard = heart.size(E) + 1
        while not heart.is_zero(rest):
            guard -= 1
            if guard < 0:
                raise StabilityError(
                    "HN did not terminate within the subobject bound"
                )
            best_s, best_q = rest, None
            best_phase = self.heart_phase(rest)
            best_size = heart.size(rest)
            for S, Q in heart.subquotients(rest):
                if heart.is_zero(S):
                    continue
                ph = self.heart_phase(S)
                c = phase_cmp(ph, best_phase)
                if c > 0 or (c == 0 and heart.size(S) > best_size):
                    best_s, best_q = S, Q
                    best_phase, best_size = ph, heart.size(S)
            factors.append(HNFactor(best_s, heart.k0(best_s), best_phase))
            if best_q is None:
                rest = heart.zero()
            else:
                rest = best_q
        for i in range(len(factors) - 1):
            if phase_cmp(factors[i].phase, factors[i + 1].phase) <= 0:
                raise StabilityError(
                    f"HN phases not strictly decreasing on {self.heart.describe(E)}"
                )
        total = tuple(map(sum, zip(*(f.k0 for f in factors))))
        if total != tuple(self.heart.k0(E)):
            raise StabilityError("HN factor classes do not sum to the class")
        return HNFiltration(factors)

    def hn(self, E) -> HNFiltration:
        """HN filtration of any object, via heart cohomology windows."""
        if self.heart.contains(E):
            return self.hn_heart(E)
        cohom = self.heart.object_cohomology(E)
        if not cohom:
            raise StabilityError("HN of the zero object")
        factors = []
        for k in sorted(cohom, reverse=True):
            for f in self.hn_heart(cohom[k]).factors:
                factors.append(
                    HNFactor(
                        (f.obj, k),
                        tuple(c if k % 2 == 0 else -c for c in f.k0),
                        phase_shift(f.phase, k),
                    )
                )
        return HNFiltration(factors)

    def is_semistable_heart(self, E) -> bool:
        ph = self.heart_phase(E)
        for S, _ in self.heart.subquotients(E):
            if self.heart.is_zero(S):
                continue
            if phase_cmp(self.heart_phase(S), ph) > 0:
                return False
        return True

    def destabilizer(self, E):
        ph = self.heart_phase(E)
        for S, _ in self.heart.subquotients(E):
            if not self.heart.is_zero(S) and phase_cmp(self.heart_phase(S), ph) > 0:
                return S
        return None

    def phase(self, E) -> Phase:
        """Phase of a semistable object (heart object or single shift)."""
        if self.heart.contains(E):
            d = self.destabilizer(E)
            if d is not None:
                raise NotSemistable(self.heart.describe(E), self.heart.describe(d))
            return self.heart_phase(E)
        cohom = self.heart.object_cohomology(E)
        if len(cohom) != 1:
            raise NotSemistable(str(E), "spread over several cohomological windows")
        ((k, H),) = cohom.items()
        return phase_shift(self.phase(H), k)

    def mass(self, E) -> float:
        return self.hn(E).mass()

    def phi_bounds(self, E) -> tuple[Phase, Phase]:
        f = self.hn(E)
        return f.phi_plus(), f.phi_minus()

    # -- flags ---------------------------------------------------------------

    def semistable_heart_classes(self) -> tuple[list, bool]:
        """(classes of semistable indecomposable heart objects, exact flag).

        When the heart enumerates its indecomposables completely, the list
        is exactly the set of indecomposable semistable classes and every
        semistable class is a nonnegative aligned combination of them, so
        suprema of |U|/|Z| over semistables are attained on the list.
        """
        ind = self.heart.indecomposables()
        exact = ind is not None
        if ind is None:
            ind = [E for E in self.heart.corpus()]
        out = []
        for E in ind:
            if self.is_semistable_heart(E):
                out.append(tuple(self.heart.k0(E)))
        return out, exact

    def flags(self) -> dict:
        if self._flags is None:
            classes, exact = self.semistable_heart_classes()
            min_norm2 = None
            for c in classes:
                n2 = self.Z(c).norm2()
                if min_norm2 is None or n2 < min_norm2:
                    min_norm2 = n2
            self._flags = {
                "rational": self.Z.is_rational(),
                "discrete": self.Z.is_discrete(),
                "reasonable": min_norm2 is None or min_norm2.sign() > 0,
                "semistable_classes_exact": exact,
                "min_charge_norm": math.sqrt(float(min_norm2)) if min_norm2 is not None else None,
            }
        return self._flags

    def validate_heart_positivity(self) -> list:
        """Central-charge axiom on the heart corpus; returns violations."""
        bad = []
        for E in self.heart.corpus():
            if self.heart.is_zero(E):
                continue
            if not upper_half_ok(self.value(E)):
                bad.append(self.heart.describe(E))
        return bad


# ---------------------------------------------------------------------------
# estimates, balls, support
# ---------------------------------------------------------------------------


@dataclass
class NormEstimate:
    sup_ratio_sq: QS3 | None  # exact square of the sup, None for empty set
    exact: bool
    witness: tuple | None

    @property
    def value(self) -> float:
        if self.sup_ratio_sq is None:
            return 0.0
        return math.sqrt(float(self.sup_ratio_sq))

    def lt_sin_pi(self, eps: Fraction) -> bool:
        if self.sup_ratio_sq is None:
            return True
        # exact route when sin(pi eps) lives in Q(sqrt 3)
        if (Fraction(eps) * 6).denominator == 1:
            s = ExactAngle(Fraction(eps)).sin()
            return (self.sup_ratio_sq - s * s).sign() < 0
        from .scalars import iv_lt

        return iv_lt(self.sup_ratio_sq.interval(), iv_sin_pi(eps) ** 2)


def norm_estimate(U: CentralCharge, sigma: StabilityCondition) -> NormEstimate:
    """sup |U(E)| / |Z(E)| over sigma-semistable classes, exact squares."""
    classes, exact = sigma.semistable_heart_classes()
    best = None
    witness = None
    for c in classes:
        zn = sigma.Z(c).norm2()
        un = U(c).norm2()
        if zn.sign() == 0:
            raise StabilityError("semistable class with zero charge")
        ratio = un / zn
        if best is None or ratio > best:
            best, witness = ratio, c
    return NormEstimate(best, exact, witness)


@dataclass
class MetricEstimate:
    interval: object | None  # mpmath interval of the sup, None for empty corpus
    witnesses: list

    @property
    def value(self) -> float:
        return float(mpmath.mpf(self.interval.b)) if self.interval is not None else 0.0

    def lt(self, eps: Fraction) -> bool:
        if self.interval is None:
            return True
        from .scalars import iv_lt

        return iv_lt(self.interval, iv_from_fraction(eps))


def metric_estimate(sigma: StabilityCondition, tau: StabilityCondition, corpus) -> MetricEstimate:
    """max over the corpus of max(|phi^- difference|, |phi^+ difference|).

    A lower bound for the true sup metric; the corpus is recorded by the
    caller. Values are outward-rounded intervals.
    """
    sup = None
    witnesses = []
    for E in corpus:
        ps = sigma.phi_bounds(E)
        pt = tau.phi_bounds(E)
        for a, b in zip(ps, pt):
            d = abs(a.interval() - b.interval())
            sup = d if sup is None else _iv_max2(sup, d)
    return MetricEstimate(sup, witnesses)


def _iv_max2(x, y):
    from .scalars import max_iv

    return max_iv(x, y)


def ball_membership(
    sigma: StabilityCondition,
    tau: StabilityCondition,
    eps: Fraction,
    corpus,
) -> dict:
    """tau in B_eps(sigma): metric < eps and ||W - Z||_sigma < sin(pi eps)."""
    eps = Fraction(eps)
    if not (0 < eps < Fraction(1, 4)):
        raise StabilityError("eps must lie in (0, 1/4)")
    ne = norm_estimate(tau.Z.minus(sigma.Z), sigma)
    me = metric_estimate(sigma, tau, corpus)
    norm_ok = ne.lt_sin_pi(eps)
    metric_ok = me.lt(eps)
    return {
        "member": bool(norm_ok and metric_ok),
        "norm_ok": norm_ok,
        "norm_value": ne.value,
        "norm_exact": ne.exact,
        "metric_ok": metric_ok,
        "metric_value": me.value,
        "sin_pi_eps": float(mpmath.mpf(iv_sin_pi(eps).a)),
    }


def support_check(sigma: StabilityCondition, q_matrix, corpus) -> dict:
    """Support-property check for a symmetric form q on K_0 (x) R.

    Verifies q([E]) >= 0 on semistable corpus objects and negative
    definiteness of q on the exact kernel of Z.
    """
    from .linalg import kernel_basis, mat, mat_vec

    rank_ = sigma.Z.rank
    nonneg_failures = []
    checked = 0
    for E in corpus:
        if sigma.heart.is_zero(E):
            continue
        if not sigma.is_semistable_heart(E):
            continue
        checked += 1
        c = sigma.heart.k0(E)
        val = _qform(q_matrix, c)
        if val.sign() < 0:
            nonneg_failures.append(sigma.heart.describe(E))
    # exact kernel of Z inside K0 (x) R: two linear conditions over the field
    rows = []
    rows.append(tuple(z.re for z in sigma.Z.row))
    rows.append(tuple(z.im for z in sigma.Z.row))
    kb = kernel_basis(mat(rows), one=QS3(1), ncols=rank_)
    neg_definite = True
    minors = []
    if kb:
        gram = []
        for u in kb:
            gram.append(
                tuple(_qform_bilinear(q_matrix, u, v) for v in kb)
            )
        # Sylvester: (-1)^k * leading minor > 0
        for k in range(1, len(kb) + 1):
            sub = [row[:k] for row in gram[:k]]
            d = _det(sub)
            minors.append(d)
            want = 1 if k % 2 == 0 else -1
            if d.sign() != want:
                neg_definite = False
    return {
        "semistable_checked": checked,
        "nonneg_failures": nonneg_failures,
        "kernel_dim": len(kb),
        "kernel_negative_definite": neg_definite,
        "ok": not nonneg_failures and neg_definite,
    }


def _qform(qm, vec) -> QS3:
    out = QS3(0)
    for i, row in enumerate(qm):
        for j, entry in enumerate(row):
            if vec[i] and vec[j]:
                out = out + qs3(entry) * (vec[i] * vec[j])
    return out


def _qform_bilinear(qm, u, v) -> QS3:
    out = QS3(0)
    for i, row in enumerate(qm):
        for j, entry in enumerate(row):
            out = out + qs3(entry) * u[i] * v[j]
    return out


def _det(m) -> QS3:
    n = len(m)
    if n == 0:
        return QS3(1)
    if n == 1:
        return qs3(m[0][0])
    out = QS3(0)
    for j in range(n):
        sub = [row[:j] + row[j + 1 :] for row in m[1:]]
        term = qs3(m[0][j]) * _det(sub)
        out = out + (term if j % 2 == 0 else -term)
    return out


# ---------------------------------------------------------------------------
# the module heart of A_n at a fixed shift
# ---------------------------------------------------------------------------


class ModuleHeart:
    """Heart A[shift] of D^b(A_n): objects are DObjects concentrated at one
    shift; subobjects are enumerated per interval summand (the category is
    serial, so every submodule is parallel to a per-summand standard one).
    """

    def __init__(self, n: int, shift: int = 0, corpus_dim: int = 4):
        from .quiver import QuiverSpec

        self.n = n
        self.spec = QuiverSpec(n)
        self.base_shift = shift
        self.rank = n
        self.corpus_dim = corpus_dim

    def zero(self):
        from .dcat import zero_object

        return zero_object(self.n)

    def contains(self, E) -> bool:
        return all(k == self.base_shift for _, _, k in E.pieces)

    def is_zero(self, E) -> bool:
        return E.is_zero()

    def size(self, E) -> int:
        return E.total_dim

    def k0(self, E):
        return E.k0()

    def describe(self, E) -> str:
        return str(E)

    def object_cohomology(self, E) -> dict:
        from .dcat import DObject

        out = {}
        for k in E.shifts_present():
            piece = E.piece_at_shift(k)
            out[k - self.base_shift] = DObject(
                self.n, tuple((a, b, self.base_shift) for a, b, _ in piece.pieces)
            )
        return out

    def subquotients(self, E):
        """Proper nonzero (sub, quotient) candidates via per-summand cuts."""
        from .dcat import DObject

        bars = [(a, b) for a, b, _ in E.pieces]
        s = self.base_shift
        choices = [range(a, b + 2) for a, b in bars]
        import itertools

        for cvec in itertools.product(*choices):
            sub, quot = [], []
            for (a, b), c in zip(bars, cvec):
                if c <= b:
                    sub.append((c, b, s))
                if c > a:
                    quot.append((a, c - 1, s))
            if not sub or not quot:
                continue
            yield DObject(self.n, tuple(sub)), DObject(self.n, tuple(quot))

    def indecomposables(self):
        from .dcat import interval_object

        return [
            interval_object(self.n, a, b, self.base_shift)
            for (a, b) in self.spec.intervals()
        ]

    def corpus(self):
        from .dcat import corpus

        yield from corpus(self.n, self.corpus_dim, (self.base_shift,))


def module_charge(n: int, values: list[XC]) -> CentralCharge:
    """Charge on K_0(A_n) from the values on the simples S_1..S_n."""
    if len(values) != n:
        raise ValueError("need one value per simple")
    return CentralCharge(tuple(values))
