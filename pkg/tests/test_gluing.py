import itertools
from fractions import Fraction as F

import pytest

from stabglue.dcat import interval_object
from stabglue.gluing import (
    GluedHeart,
    GluingContext,
    PairObject,
    check_conditions,
    cor72_ratio_le_one,
    glue_stability,
    glued_charge,
    glued_heart_membership,
    glued_phase_equality_check,
    glued_torsion_membership,
    mass_additivity_check,
    mor_to_pair,
    mor_to_pairs,
    pair_direct_sum,
    pair_from_parts,
    prop_truncation_semistable,
    standard_context,
)
from stabglue.linalg import mat
from stabglue.morphisms import SODSide, j_bang, j_star, mor_corpus, mor_hom_dim, s_of
from stabglue.scalars import XC
from stabglue.stability import StabilityError, module_charge

K = interval_object(1, 1, 1)
Z_I = module_charge(1, [XC(0, 1)])
CTX0 = standard_context(SODSide.SOD0, 1, Z_I)
CTX1 = standard_context(SODSide.SOD1, 1, Z_I)
ONE = ((1, 1),)


def pair_Ia():
    return pair_from_parts(1, ONE, ())


def pair_Ib():
    return pair_from_parts(1, (), ONE)


def pair_Ic():
    return PairObject(1, ONE, ONE, (mat([[F(1)]]),))


def test_conditions_standard():
    for ctx in (CTX0, CTX1):
        rep = check_conditions(ctx)
        assert rep["all"], rep


def test_conditions_broken_m5():
    # sigma2 = sigma (unshifted) on SOD0: M3 and M5 fail with a witness
    broken = GluingContext(SODSide.SOD0, 1, Z_I, 0, Z_I, 0, Z_I)
    rep = check_conditions(broken)
    assert not rep["M3"]["ok"]
    assert not rep["M5"]["ok"]
    assert rep["M5"]["witness"] is not None


def test_m4_with_torsion_charge():
    # a charge with a real direction on a 2-vertex base keeps M4 checkable
    Z = module_charge(2, [XC(-1, 0), XC(0, 1)])  # S1 torsion
    ctx = standard_context(SODSide.SOD0, 2, Z)
    rep = check_conditions(ctx)
    assert rep["M4"]["ok"]


def test_heart_membership_examples():
    assert glued_heart_membership(s_of(K), CTX0)
    assert glued_heart_membership(j_star(K), CTX0)
    assert not glued_heart_membership(j_bang(K), CTX0)
    assert glued_heart_membership(j_bang(K.shift(-1)), CTX0)
    # SOD1: s(z) and j_bang(x) are in the heart; j_star(z) is not
    assert glued_heart_membership(s_of(K), CTX1)
    assert glued_heart_membership(j_bang(K), CTX1)
    assert not glued_heart_membership(j_star(K), CTX1)
    assert glued_heart_membership(j_star(K.shift(1)), CTX1)


def test_mor_to_pair_shapes():
    p = mor_to_pair(j_star(K), CTX0)
    assert p.bars1 == ONE and p.bars2 == ONE and p.glue_is_mono()
    ps = mor_to_pair(s_of(K), CTX0)
    assert ps.bars1 == ONE and ps.bars2 == ()
    pb = mor_to_pair(j_bang(K.shift(-1)), CTX0)
    assert pb.bars1 == () and pb.bars2 == ONE
    # SOD1 shapes
    assert mor_to_pair(s_of(K), CTX1).bars1 == ()
    assert mor_to_pair(j_bang(K), CTX1).glue_is_mono()
    assert mor_to_pair(j_star(K.shift(1)), CTX1).bars2 == ()


def test_glued_charge_examples():
    gz = glued_charge(CTX0)
    assert str(gz(j_star(K).k0())) == "0+2i"
    assert str(gz(j_bang(K.shift(-1)).k0())) == "0+1i"
    assert str(gz(s_of(K).k0())) == "0+1i"
    gz1 = glued_charge(CTX1)
    assert str(gz1(j_bang(K).k0())) == "0+2i"


def test_k0_dictionaries():
    h0, h1 = GluedHeart(CTX0), GluedHeart(CTX1)
    assert h0.k0(pair_Ia()) == (1, 1)  # s(k)
    assert h0.k0(pair_Ib()) == (-1, 0)  # j_bang(k[-1])
    assert h0.k0(pair_Ic()) == (0, 1)  # j_star(k)
    assert h1.k0(pair_Ia()) == (0, -1)  # j_star(k[1])
    assert h1.k0(pair_Ib()) == (1, 1)  # s(k)
    assert h1.k0(pair_Ic()) == (1, 0)  # j_bang(k)


def test_glue_stability_and_flags():
    for ctx in (CTX0, CTX1):
        sig = glue_stability(ctx, corpus_dim=2)
        f = sig.flags()
        assert f["rational"] and f["reasonable"] and f["semistable_classes_exact"]


def test_prop71_and_cor72_on_corpus():
    for ctx in (CTX0, CTX1):
        sig = glue_stability(ctx, corpus_dim=2)
        heart = sig.heart
        n_checked = 0
        for E in heart.corpus():
            if heart.is_zero(E) or not sig.is_semistable_heart(E):
                continue
            n_checked += 1
            tr = prop_truncation_semistable(E, ctx)
            assert tr["t1_semistable"] and tr["t2_semistable"], str(E)
            pe = glued_phase_equality_check(E, ctx)
            assert pe["vacuous"] or pe["equal"], str(E)
            assert mass_additivity_check(E, ctx), str(E)
            assert cor72_ratio_le_one(E, ctx), str(E)
        assert n_checked >= 10


def test_non_semistable_sum_reported_first():
    # a direct sum violating the phase equality is caught as non-semistable
    Z = module_charge(1, [XC(-1, 2)])
    ctx = standard_context(SODSide.SOD0, 1, Z)
    sig = glue_stability(ctx, corpus_dim=2, validate=False)
    mix = pair_direct_sum(pair_Ia(), pair_Ib())
    z1 = ctx.Z(mix.d1())
    z2 = ctx.Z(mix.d2())
    from stabglue.scalars import arg_eq

    if not arg_eq(z1, z2):
        assert not sig.is_semistable_heart(mix)


def test_torsion_pair_membership():
    # with a torsion direction: Z(S1) = -1 (real), n = 2 base
    Z = module_charge(2, [XC(-1, 0), XC(0, 1)])
    ctx = standard_context(SODSide.SOD0, 2, Z)
    s1bars = ((1, 1),)
    tor = pair_from_parts(2, s1bars, ())  # t1 = S1, torsion; t2 = 0
    res = glued_torsion_membership(tor, ctx)
    assert res["kind"] == "torsion"
    s2bars = ((2, 2),)
    fr = pair_from_parts(2, s2bars, ())
    assert glued_torsion_membership(fr, ctx)["kind"] == "free"
    mixed = pair_from_parts(2, tuple(sorted(s1bars + s2bars)), ())
    rep = glued_torsion_membership(mixed, ctx)
    assert rep["kind"] == "mixed"
    assert rep["torsion_part"].bars1 == s1bars
    assert rep["free_part"].bars1 == s2bars
    # torsion pair axiom on the corpus: Hom(T, F) = 0 via slope reasoning
    # is checked in the tilting tests; here: filtration reassembles classes
    h = GluedHeart(ctx)
    kt = h.k0(rep["torsion_part"])
    kf = h.k0(rep["free_part"])
    assert tuple(a + b for a, b in zip(kt, kf)) == h.k0(mixed)


def test_glued_hn_against_subobject_sweep():
    Z = module_charge(1, [XC(-1, 2)])
    ctx = standard_context(SODSide.SOD0, 1, Z)
    sig = glue_stability(ctx, corpus_dim=2, validate=False)
    heart = sig.heart
    for E in heart.corpus():
        if heart.is_zero(E):
            continue
        f = sig.hn_heart(E)
        # every reported factor passes a fresh semistability sweep
        for fac in f.factors:
            assert sig.is_semistable_heart(fac.obj), (str(E), str(fac.obj))


def test_window0_cohomology_of_heart_members():
    for ctx in (CTX0, CTX1):
        for m in itertools.islice(mor_corpus(1, 2, (-1, 0, 1)), 120):
            if glued_heart_membership(m, ctx):
                pairs = mor_to_pairs(m, ctx)
                assert set(pairs) <= {0}, (str(m), ctx.side)
