import itertools
import math
from fractions import Fraction as F

import pytest

from stabglue.family import (
    PATH_REGION,
    continuity_check,
    endpoint_rotation_check,
    glued_sup_ratio,
    heart_window_check,
    path_point,
    path_points,
    rotate_action,
    specialization_check,
    sup_ratio_estimate,
    torsion_window_check,
)
from stabglue.geometry import plane_point, region_membership
from stabglue.gluing import standard_context
from stabglue.morphisms import SODSide, mor_corpus, s_of, j_star, j_bang
from stabglue.scalars import QS3, XC, angle_pi
from stabglue.stability import StabilityError, module_charge
from stabglue.tilting import TiltTag, TiltedHeart, build_sigma_tilde, tilt_class_simple

Z_I = module_charge(1, [XC(0, 1)])
CTX0 = standard_context(SODSide.SOD0, 1, Z_I)
CTX1 = standard_context(SODSide.SOD1, 1, Z_I)


def test_path_points_exactness_and_region():
    pts = path_points(8)
    assert pts[0].point.beta == QS3(1) and pts[0].point.omega == QS3(0)
    assert not pts[0].in_region  # boundary
    endpoint = pts[-1].point
    assert endpoint.beta == QS3(F(-1, 2))
    assert endpoint.omega == QS3(0, F(1, 2))
    mid = pts[4].point
    assert mid.beta == QS3(F(1, 2)) and mid.omega == QS3(0, F(1, 2))
    for q in pts[1:]:
        assert q.in_region, str(q.t)
    # exactness exactly at quarter multiples
    assert [q.exact for q in pts] == [
        True, False, True, False, True, False, True, False, True
    ]


def test_path_region_values_are_exact_spec_numbers():
    vals = __import__("stabglue.geometry", fromlist=["region_values"]).region_values(
        path_point(F(1)).point, PATH_REGION
    )
    assert str(vals["h_plus_1"]) == "1/3"
    assert str(vals["h_plus_2"]) == "1/3"
    assert str(vals["h_minus_1"]) == "1"
    assert str(vals["h_minus_2"]) == "1"


def test_endpoint_rotation_identity():
    rep = endpoint_rotation_check(CTX0, CTX1)
    assert rep["ok"]
    wrong = endpoint_rotation_check(CTX0, CTX1, angle_pi(F(1, 3)))
    assert not wrong["ok"]
    assert wrong["mismatched_basis_vectors"]


def test_endpoint_rotation_linearity_in_charge():
    Z2 = module_charge(1, [XC(-1, 1)])
    a = standard_context(SODSide.SOD0, 1, Z2)
    b = standard_context(SODSide.SOD1, 1, Z2)
    assert endpoint_rotation_check(a, b)["ok"]


def test_rotate_action_closes_the_path():
    # rotating the second pullback charge at the endpoint by 2 pi/3 gives
    # the first pullback charge
    from stabglue.tilting import z_tilde

    endpoint = plane_point(F(-1, 2), QS3(0, F(1, 2)))
    sig1 = build_sigma_tilde(endpoint, CTX1, corpus_dim=2)
    rot = rotate_action(sig1, angle_pi(F(2, 3)))
    z0 = z_tilde(endpoint, CTX0)
    assert rot.Z.row == z0.row
    assert rot.phase_offset() == F(2, 3)
    with pytest.raises(StabilityError):
        rotate_action(sig1, angle_pi(F(1, 4)))


def test_sup_ratio_at_specialization_point():
    assert glued_sup_ratio(CTX0) <= 1.0 + 1e-12
    assert glued_sup_ratio(CTX1) <= 1.0 + 1e-12


def test_sup_ratio_interior_monotone_in_corpus():
    p = plane_point(F(1, 2), F(1, 2))
    sig = build_sigma_tilde(p, CTX0, corpus_dim=2)
    sample = sup_ratio_estimate(sig, CTX0)
    assert sample.exact
    assert sample.sup_ratio > 0
    assert set(sample.per_class) <= {"T_low", "T_high", "F_shift", "mixed", "glued"}
    # s-type objects contribute ratio 0 through tau2R = 0
    heart = sig.heart
    from stabglue.gluing import pair_from_parts
    from stabglue.tilting import TiltObject

    st = TiltObject(pair_from_parts(1, ((1, 1),), ()), pair_from_parts(1, (), ()))
    d2 = CTX0.t2_class(heart.k0(st))
    assert all(c == 0 for c in d2)


def test_torsion_window():
    for beta, omega in ((F(1, 2), F(1, 2)), (F(0), F(3, 4))):
        p = plane_point(beta, omega)
        sig = build_sigma_tilde(p, CTX0, corpus_dim=2)
        rep = torsion_window_check(sig, CTX0)
        assert rep["ok"], rep


def test_continuity_adjacent_and_distant():
    p1 = path_point(F(20, 64)).point
    p2 = path_point(F(21, 64)).point
    link = continuity_check(p1, p2, F(1, 16), CTX0)
    assert link["ok"], link
    far = continuity_check(
        plane_point(F(9, 10), F(1, 10)), plane_point(F(-2, 5), F(9, 10)), F(1, 16), CTX0
    )
    assert not far["ok"]
    # p1 = p2: always inside the ball
    same = continuity_check(p1, p1, F(1, 16), CTX0)
    assert same["ok"] and same["norm_value"] == 0.0


def test_specialization_examples():
    rep = specialization_check(plane_point(F(1), F(1, 100)), F(1, 10), CTX0)
    assert rep["ok"], rep
    # hypothesis violation: |beta - 1 + i omega| too large
    rep2 = specialization_check(plane_point(F(1, 2), F(1, 2)), F(1, 10), CTX0)
    assert not rep2["hypothesis"]


def test_tilt_classification_stable_under_approximation():
    """Near a non-rational admissible point, the tilt classification of
    every corpus object is constant across rational approximants."""
    t = F(1, 3)  # p(1/3): angle 2 pi/9, not a pi/6 multiple
    approx1 = path_point(t, denom=1 << 12).point
    approx2 = path_point(t, denom=1 << 20).point
    from stabglue.gluing import GluedHeart

    heart = GluedHeart(CTX0, 2)
    tag1, tag2 = TiltTag(approx1, CTX0), TiltTag(approx2, CTX0)
    for E in heart.corpus():
        assert tilt_class_simple(E, tag1, heart) == tilt_class_simple(E, tag2, heart)


def test_heart_windows():
    corpus = list(itertools.islice(mor_corpus(1, 2, (-1, 0, 1)), 150))
    p = path_point(F(1, 2)).point
    rep = heart_window_check(CTX0, CTX1, p, corpus)
    assert rep["ok"], rep["detail"]
    assert rep["counts"]["heart"] > 0
    # at beta = 0 the first free class is nonempty, so the [-2, -1]
    # refinement is exercised
    p34 = path_point(F(3, 4)).point
    rep34 = heart_window_check(CTX0, CTX1, p34, corpus)
    assert rep34["ok"], rep34["detail"]
    assert rep34["counts"]["free"] > 0
    # s(z) with z in the heart: window position 0 in both hearts
    t0 = TiltedHeart(CTX0, p, 2)
    t1 = TiltedHeart(CTX1, p, 2)
    from stabglue.dcat import interval_object

    K = interval_object(1, 1, 1)
    assert set(t0.object_cohomology(s_of(K))) == {0}
    assert set(t1.object_cohomology(s_of(K))) == {0}


def test_window_examples_jstar_jbang():
    p = path_point(F(1, 2)).point  # beta = 1/2 > 0
    t1 = TiltedHeart(CTX1, p, 2)
    from stabglue.dcat import interval_object

    K = interval_object(1, 1, 1)
    # j_star(k) is the d0*-side gluing object; its d1*-windows stay in [-1, 0]
    w = tuple(sorted(t1.object_cohomology(j_star(K))))
    assert set(w) <= {-1, 0}
