import math
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from stabglue.scalars import (
    QS3,
    XC,
    UndecidableComparison,
    angle_pi,
    arg_cmp,
    arg_diff_in_0_theta,
    arg_exact_pi_multiple,
    arg_interval,
    cross,
    dot,
    iv_from_fraction,
    iv_lt,
    iv_sin_pi,
    parse_qs3,
    qs3,
)

fracs = st.fractions(min_value=-50, max_value=50, max_denominator=20)


@given(fracs, fracs, fracs, fracs)
def test_qs3_field_axioms(a, b, c, d):
    x = QS3(a, b)
    y = QS3(c, d)
    assert (x + y) - y == x
    assert x * y == y * x
    if y:
        assert (x / y) * y == x


@given(fracs, fracs)
def test_qs3_sign_matches_float(a, b):
    x = QS3(a, b)
    f = float(a) + float(b) * math.sqrt(3)
    if abs(f) > 1e-9:
        assert x.sign() == (1 if f > 0 else -1)


def test_sqrt3_ordering():
    assert QS3(0, 1) > QS3(F(17, 10))
    assert QS3(0, 1) < QS3(F(18, 10))
    assert QS3(-2, 1).sign() == -1
    assert QS3(-1, 1).sign() == 1


def test_exact_angles():
    a = angle_pi(F(1, 3))
    assert a.cos() == QS3(F(1, 2))
    assert a.sin() == QS3(0, F(1, 2))
    assert angle_pi(F(1, 2)).unit() == XC(0, 1)
    assert angle_pi(1).unit() == XC(-1, 0)
    with pytest.raises(ValueError):
        angle_pi(F(1, 4)).cos()


def test_arg_exact_detection():
    z = XC(F(-1, 2), QS3(0, F(1, 2)))  # e^{2 pi i/3}
    assert arg_exact_pi_multiple(z).coeff == F(2, 3)
    assert arg_exact_pi_multiple(XC(1, 1)) is None
    assert arg_exact_pi_multiple(XC(-3, 0)).coeff == 1


def test_arg_cmp_total_order():
    pts = [XC(1, 0), XC(1, 1), XC(0, 1), XC(-1, 1), XC(-1, 0), XC(-1, -1), XC(0, -1), XC(1, -1)]
    args = [math.atan2(float(z.im), float(z.re)) for z in pts]
    for i, zi in enumerate(pts):
        for j, zj in enumerate(pts):
            want = (args[i] > args[j]) - (args[i] < args[j])
            assert arg_cmp(zi, zj) == want, (zi, zj)


def test_arg_diff_window():
    th = angle_pi(F(1, 2))
    assert arg_diff_in_0_theta(XC(0, 1), XC(1, 0), th)
    assert arg_diff_in_0_theta(XC(1, 1), XC(1, 0), th)
    assert not arg_diff_in_0_theta(XC(1, 0), XC(0, 1), th)  # negative difference
    assert not arg_diff_in_0_theta(XC(-1, 1), XC(1, 0), angle_pi(F(1, 2)))  # 3pi/4 > pi/2
    # equality at the edge: arg difference of e^{i pi/3} and e^{i pi/6} is pi/6
    z1 = XC(1, QS3(0, 1))  # arg = pi/3
    z2 = XC(QS3(0, 1), 1)  # arg = pi/6
    assert arg_diff_in_0_theta(z1, z2, angle_pi(F(1, 6)))
    assert not arg_diff_in_0_theta(z1, XC(1, 0), angle_pi(F(1, 6)))


def test_rotation_equivariance_of_args():
    # arg(z * e^{i pi/3 k}) - arg(z) = k pi/3 mod 2 pi, exactly
    z = XC(F(1, 2), QS3(0, F(3, 2)))
    for k in range(-5, 6):
        coeff = F(k, 3) % 2
        if coeff > 1:
            coeff -= 2
        u = angle_pi(coeff)
        w = u.unit() * z
        d = cross(z, w)  # |z||w| sin(delta)
        c = dot(z, w)
        assert d * d + c * c == (z.norm2() * w.norm2())
        want_sin = u.sin()
        # sin(delta) = want: cross = |z||w| sin => cross^2 = n^2 sin^2 and sign matches
        assert (d * d) == z.norm2() * w.norm2() * want_sin * want_sin
        assert d.sign() == want_sin.sign()


def test_intervals_and_comparisons():
    assert iv_lt(QS3(F(19, 100)), iv_sin_pi(F(1, 16)))
    assert not iv_lt(iv_sin_pi(F(1, 16)), QS3(F(19, 100)))
    with pytest.raises(UndecidableComparison):
        iv_lt(iv_sin_pi(F(1, 16)), iv_sin_pi(F(1, 16)))
    z = XC(F(-1, 2), QS3(0, F(1, 2)))
    ivv = arg_interval(z)
    assert ivv.delta < 1e-30
    assert float(ivv.a) <= 2 * math.pi / 3 <= float(ivv.b)


def test_parse_roundtrip():
    for x in [QS3(F(1, 2), F(1, 2)), QS3(F(-3, 4)), QS3(0, F(-2, 7)), QS3(5)]:
        assert parse_qs3(str(x)) == x
    assert parse_qs3("1/2+1/2r3") == QS3(F(1, 2), F(1, 2))
