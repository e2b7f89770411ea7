"""Exact scalar tower: rationals, the real quadratic field Q(sqrt 3), and
exact complex numbers over it.

Everything that decides an inequality in this package runs either through
exact field arithmetic in ``QS3`` / ``XC`` or through outward-rounded
interval arithmetic (``iv_*`` helpers, 128-bit significands).  A comparison
the interval cannot decide raises ``UndecidableComparison`` instead of
guessing.

Angles that the exact layer can represent are rational multiples of pi
whose cosine and sine lie in Q(sqrt 3), i.e. multiples of pi/6.  They are
carried as ``ExactAngle`` (the coefficient of pi as a ``Fraction``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import mpmath

IV_PRECISION = 128

_iv = mpmath.iv
_iv.prec = IV_PRECISION

Rational = Union[int, Fraction]


class UndecidableComparison(Exception):
    """Interval arithmetic could not separate the two sides."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, QS3):
        return x.to_fraction()
    raise TypeError(f"not an exact rational: {x!r}")


class QS3:
    """Element a + b*sqrt(3) of the real quadratic field Q(sqrt 3)."""

    __slots__ = ("a", "b")

    def __init__(self, a, b=0):
        object.__setattr__(self, "a", _frac(a) if not isinstance(a, QS3) else a.a)
        if isinstance(a, QS3):
            if b:
                raise TypeError("cannot combine QS3 with extra sqrt3 part")
            object.__setattr__(self, "b", a.b)
        else:
            object.__setattr__(self, "b", _frac(b))

    def __setattr__(self, *args):
        raise AttributeError("QS3 is immutable")

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def to_fraction(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{self} is not rational")
        return self.a

    def __bool__(self) -> bool:
        return bool(self.a or self.b)

    def __eq__(self, other) -> bool:
        other = qs3(other)
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __neg__(self) -> "QS3":
        return QS3(-self.a, -self.b)

    def __add__(self, other) -> "QS3":
        other = qs3(other)
        return QS3(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other) -> "QS3":
        return self + (-qs3(other))

    def __rsub__(self, other) -> "QS3":
        return qs3(other) + (-self)

    def __mul__(self, other) -> "QS3":
        other = qs3(other)
        return QS3(
            self.a * other.a + 3 * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QS3":
        # (a + b s3)^-1 = (a - b s3)/(a^2 - 3 b^2); the norm is nonzero
        # for nonzero elements since 3 is not a rational square.
        n = self.a * self.a - 3 * self.b * self.b
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt3)")
        return QS3(self.a / n, -self.b / n)

    def __truediv__(self, other) -> "QS3":
        return self * qs3(other).inverse()

    def __rtruediv__(self, other) -> "QS3":
        return qs3(other) * self.inverse()

    def sign(self) -> int:
        """Exact sign of a + b*sqrt(3)."""
        if self.b == 0:
            return (self.a > 0) - (self.a < 0)
        if self.a == 0:
            return 1 if self.b > 0 else -1
        sa = 1 if self.a > 0 else -1
        sb = 1 if self.b > 0 else -1
        if sa == sb:
            return sa
        # opposite signs: compare a^2 against 3 b^2
        d = self.a * self.a - 3 * self.b * self.b
        if d == 0:
            return 0  # unreachable: sqrt 3 irrational
        return sa if d > 0 else sb

    def __lt__(self, other) -> bool:
        return (self - qs3(other)).sign() < 0

    def __le__(self, other) -> bool:
        return (self - qs3(other)).sign() <= 0

    def __gt__(self, other) -> bool:
        return (self - qs3(other)).sign() > 0

    def __ge__(self, other) -> bool:
        return (self - qs3(other)).sign() >= 0

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(3)

    def interval(self):
        ia = _iv.mpf(self.a.numerator) / _iv.mpf(self.a.denominator)
        ib = _iv.mpf(self.b.numerator) / _iv.mpf(self.b.denominator)
        return ia + ib * _iv.sqrt(3)

    def __repr__(self) -> str:
        return f"QS3({self.a}, {self.b})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}√3"
        sgn = "+" if self.b > 0 else "-"
        return f"{self.a}{sgn}{abs(self.b)}√3"


def qs3(x) -> QS3:
    if isinstance(x, QS3):
        return x
    return QS3(_frac(x))


QS3_ZERO = QS3(0)
QS3_ONE = QS3(1)
SQRT3 = QS3(0, 1)
HALF_SQRT3 = QS3(0, Fraction(1, 2))


def parse_qs3(text: str) -> QS3:
    """Parse "a/b", "a/b+c/d??3" (or ASCII "r3") back into a QS3."""
    t = text.strip().replace("√3", "r3").replace(" ", "")
    if "r3" not in t:
        return QS3(Fraction(t))
    head, _, _ = t.partition("r3")
    # split head into rational part and sqrt3 coefficient
    # forms: "c", "cr3" handled above; here head is like "a+c" / "a-c" / "c"
    for i in range(len(head) - 1, 0, -1):
        if head[i] in "+-" and head[i - 1] not in "e+-/":
            a, b = head[:i], head[i:]
            return QS3(Fraction(a), Fraction(b if b not in ("+", "-") else b + "1"))
    b = head
    if b in ("", "+"):
        b = "1"
    elif b == "-":
        b = "-1"
    return QS3(0, Fraction(b))


class XC:
    """Exact complex number with real and imaginary parts in Q(sqrt 3)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", qs3(re))
        object.__setattr__(self, "im", qs3(im))

    def __setattr__(self, *args):
        raise AttributeError("XC is immutable")

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other) -> bool:
        other = xc(other)
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __neg__(self) -> "XC":
        return XC(-self.re, -self.im)

    def __add__(self, other) -> "XC":
        other = xc(other)
        return XC(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other) -> "XC":
        return self + (-xc(other))

    def __rsub__(self, other) -> "XC":
        return xc(other) + (-self)

    def __mul__(self, other) -> "XC":
        other = xc(other)
        return XC(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def conj(self) -> "XC":
        return XC(self.re, -self.im)

    def norm2(self) -> QS3:
        """|z|^2, exact and nonnegative."""
        return self.re * self.re + self.im * self.im

    def __truediv__(self, other) -> "XC":
        other = xc(other)
        n = other.norm2()
        if not n:
            raise ZeroDivisionError("division by exact complex zero")
        w = self * other.conj()
        return XC(w.re / n, w.im / n)

    def scale(self, s) -> "XC":
        s = qs3(s)
        return XC(self.re * s, self.im * s)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __abs__(self) -> float:
        return abs(complex(self))

    def __repr__(self) -> str:
        return f"XC({self.re}, {self.im})"

    def __str__(self) -> str:
        return f"{self.re}{'+' if self.im >= 0 else '-'}{abs_qs3_str(self.im)}i"


def abs_qs3_str(x: QS3) -> str:
    return str(x if x.sign() >= 0 else -x)


def xc(z) -> XC:
    if isinstance(z, XC):
        return z
    if isinstance(z, complex):
        raise TypeError("float complex cannot enter the exact layer")
    return XC(qs3(z), QS3_ZERO)


XC_ZERO = XC(0, 0)
XC_ONE = XC(1, 0)
XC_I = XC(0, 1)


# ---------------------------------------------------------------------------
# exact angles: rational multiples of pi with cos/sin in Q(sqrt 3)
# ---------------------------------------------------------------------------

# cos(k*pi/6), sin(k*pi/6) for k = 0..11
_COS6 = {
    0: QS3(1),
    1: HALF_SQRT3,
    2: QS3(Fraction(1, 2)),
    3: QS3(0),
    4: QS3(Fraction(-1, 2)),
    5: -HALF_SQRT3,
    6: QS3(-1),
}
for _k in range(7, 12):
    _COS6[_k] = _COS6[12 - _k]
_SIN6 = {k: _COS6[(3 - k) % 12] for k in range(12)}


@dataclass(frozen=True)
class ExactAngle:
    """The angle coeff*pi, with coeff a Fraction in (-1, 1]."""

    coeff: Fraction

    def __post_init__(self):
        if not (-1 < self.coeff <= 1):
            raise ValueError("principal angle coefficient must lie in (-1, 1]")

    @property
    def radians(self) -> float:
        return float(self.coeff) * math.pi

    def has_exact_trig(self) -> bool:
        return (self.coeff * 6).denominator == 1

    def cos(self) -> QS3:
        k = self.coeff * 6
        if k.denominator != 1:
            raise ValueError(f"cos({self.coeff}*pi) is not in Q(sqrt3)")
        return _COS6[int(k) % 12]

    def sin(self) -> QS3:
        k = self.coeff * 6
        if k.denominator != 1:
            raise ValueError(f"sin({self.coeff}*pi) is not in Q(sqrt3)")
        return _SIN6[int(k) % 12]

    def unit(self) -> XC:
        return XC(self.cos(), self.sin())

    def __str__(self) -> str:
        return f"{self.coeff}π"


def angle_pi(coeff) -> ExactAngle:
    return ExactAngle(Fraction(coeff))


# ---------------------------------------------------------------------------
# exact argument machinery
# ---------------------------------------------------------------------------


def _arg_bucket(z: XC) -> int:
    """Order bucket of arg z in (-pi, pi]: 0 for (-pi,0), 1 for 0, 2 for (0,pi), 3 for pi."""
    si = z.im.sign()
    if si < 0:
        return 0
    if si > 0:
        return 2
    sr = z.re.sign()
    if sr > 0:
        return 1
    if sr < 0:
        return 3
    raise ZeroDivisionError("argument of exact zero")


def cross(z: XC, w: XC) -> QS3:
    """Im(conj(z) * w) = |z||w| sin(arg w - arg z)."""
    return z.re * w.im - z.im * w.re


def dot(z: XC, w: XC) -> QS3:
    """Re(conj(z) * w) = |z||w| cos(arg w - arg z)."""
    return z.re * w.re + z.im * w.im


def arg_cmp(z: XC, w: XC) -> int:
    """Exact comparison of principal arguments: sign of arg(z) - arg(w)."""
    if not z or not w:
        raise ZeroDivisionError("argument of exact zero")
    bz, bw = _arg_bucket(z), _arg_bucket(w)
    if bz != bw:
        return 1 if bz > bw else -1
    if bz in (1, 3):
        return 0
    s = cross(w, z).sign()  # sin(arg z - arg w), both in the same open half-plane
    return s


def arg_eq(z: XC, w: XC) -> bool:
    return arg_cmp(z, w) == 0


def arg_exact_pi_multiple(z: XC):
    """Return arg(z) as an ExactAngle when it is a multiple of pi/6, else None."""
    if not z:
        raise ZeroDivisionError("argument of exact zero")
    for k in range(-5, 7):
        u = ExactAngle(Fraction(k, 6)).unit()
        if cross(u, z).sign() == 0 and dot(u, z).sign() > 0:
            return ExactAngle(Fraction(k, 6))
    return None


def arg_interval(z: XC):
    """Outward-rounded interval containing arg z, in (-pi, pi]."""
    if not z:
        raise ZeroDivisionError("argument of exact zero")
    re, im = z.re.interval(), z.im.interval()
    return _iv.atan2(im, re)


def arg_float(z: XC) -> float:
    return math.atan2(float(z.im), float(z.re))


def arg_diff_in_0_theta(z1: XC, z2: XC, theta: ExactAngle) -> bool:
    """Decide 0 <= arg z1 - arg z2 <= theta exactly (theta in (0, pi))."""
    if not (0 < theta.coeff < 1):
        raise ValueError("theta must lie in (0, pi)")
    if arg_cmp(z1, z2) < 0:
        return False
    # difference d of principal arguments lies in [0, 2pi); need d <= theta < pi
    s = cross(z2, z1).sign()  # sin d up to positive factor
    c = dot(z2, z1)  # cos d times |z1||z2|
    if s < 0:
        return False  # d in (pi, 2pi)
    if s == 0:
        return c.sign() > 0  # d = 0 (d = pi is excluded since theta < pi)
    # d in (0, pi): d <= theta iff cos d >= cos theta
    ct = theta.cos()
    # compare c / (|z1||z2|) >= ct  <=>  c >= ct * sqrt(n1 n2)
    n = z1.norm2() * z2.norm2()
    return _cmp_lin_sqrt(c, ct, n) >= 0


def _cmp_lin_sqrt(lhs: QS3, coef: QS3, rad: QS3) -> int:
    """Exact sign of lhs - coef*sqrt(rad), rad >= 0."""
    if rad.sign() < 0:
        raise ValueError("negative radicand")
    sl, sc = lhs.sign(), coef.sign()
    if not rad or sc == 0:
        return sl
    rhs_sign = sc
    if sl != rhs_sign:
        if sl > rhs_sign:
            return 1
        if sl < rhs_sign:
            return -1
    # same sign: square both sides
    d = lhs * lhs - coef * coef * rad
    s = d.sign()
    if sl >= 0:
        return s
    return -s


def cmp_sqrt(x: QS3, y: QS3) -> int:
    """Exact sign of sqrt(x) - sqrt(y) for x, y >= 0."""
    if x.sign() < 0 or y.sign() < 0:
        raise ValueError("negative radicand")
    return (x - y).sign()


# ---------------------------------------------------------------------------
# interval-backed comparisons against transcendental right-hand sides
# ---------------------------------------------------------------------------


def iv_from_fraction(q: Fraction):
    return _iv.mpf(q.numerator) / _iv.mpf(q.denominator)


def iv_from_qs3(x: QS3):
    return x.interval()


def iv_sin_pi(coeff: Fraction):
    return _iv.sin(_iv.pi * iv_from_fraction(coeff))


def iv_lt(a, b) -> bool:
    """Certified a < b for intervals/exact values; raises if undecided."""
    ia = a.interval() if isinstance(a, QS3) else a
    ib = b.interval() if isinstance(b, QS3) else b
    if ia < ib:
        return True
    if ia >= ib:
        return False
    raise UndecidableComparison(f"cannot separate {ia} and {ib}")


def max_iv(x, y):
    lo = x.a if x.a > y.a else y.a
    hi = x.b if x.b > y.b else y.b
    return _iv.mpf([mpmath.mpf(lo), mpmath.mpf(hi)])


def iv_max(values):
    out = None
    for v in values:
        out = v if out is None else max_iv(out, v)
    return out


def iv_abs(x):
    return abs(x)


def iv_sqrt(x):
    return _iv.sqrt(x)
