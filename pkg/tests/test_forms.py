"""Pullback ratios of the canonical forms and the derived indices."""

import pytest

from enricert.cover import family, k3_cover
from enricert.errors import (
    NonConstantRatioError,
    NotRootOfUnityError,
    PreconditionError,
)
from enricert.field import Cyclo, ONE, SQRT_M1, ZETA8
from enricert.forms import (
    FormRatio,
    bitwoform_pullback_ratio,
    index_of,
    k3_twoform_ratio,
)
from enricert.maps import (
    BirMap,
    ENRIQUES_VARS,
    compose,
    deck_flip,
    family_automorphism,
    k3_lift,
)

I = SQRT_M1


def test_builtin_ratios_and_indices():
    r1 = bitwoform_pullback_ratio(family(1), family_automorphism(1))
    assert r1 == -ONE and index_of(r1) == 2
    r2 = bitwoform_pullback_ratio(family(2), family_automorphism(2))
    assert r2 == -I and index_of(r2) == 4
    r3 = bitwoform_pullback_ratio(family(3), family_automorphism(3))
    assert r3 == -ONE and index_of(r3) == 2


def test_identity_is_semi_symplectic():
    r = bitwoform_pullback_ratio(family(1), BirMap.identity())
    assert r == ONE and index_of(r) == 1


def test_deck_sign_dies_in_the_bitwoform():
    # w -> -w over the identity on the base rescales the form by (-1)^2 = 1
    flip = BirMap.from_strings(ENRIQUES_VARS, label="flip", w="-w", y="y", z="z")
    r = bitwoform_pullback_ratio(family(1), flip)
    assert r == ONE and index_of(r) == 1


def test_ratio_is_multiplicative_along_powers():
    fam = family(2)
    sigma = family_automorphism(2)
    current = sigma
    for k in range(1, 9):
        ratio = bitwoform_pullback_ratio(fam, current)
        assert ratio == (-I) ** k
        current = compose(sigma, current, fam)


def test_k3_lift_ratios():
    cov1 = k3_cover(family(1))
    r = k3_twoform_ratio(cov1, k3_lift(1))
    assert r == -I and index_of(r) == 4
    r_flip = k3_twoform_ratio(cov1, compose(k3_lift(1), deck_flip(), cov1))
    assert r_flip == I and index_of(r_flip) == 4

    cov2 = k3_cover(family(2))
    r = k3_twoform_ratio(cov2, k3_lift(2))
    assert r == -(ZETA8 ** 3) and index_of(r) == 8
    r_flip = k3_twoform_ratio(cov2, compose(k3_lift(2), deck_flip(), cov2))
    assert r_flip == ZETA8 ** 3 and index_of(r_flip) == 8


def test_both_lift_ratios_square_to_the_order4_value():
    cov2 = k3_cover(family(2))
    for lift in (k3_lift(2), compose(k3_lift(2), deck_flip(), cov2)):
        square = compose(lift, lift, cov2)
        assert k3_twoform_ratio(cov2, square) == -I


def test_deck_flip_negates_the_twoform():
    for k in (1, 2, 3):
        r = k3_twoform_ratio(k3_cover(family(k)), deck_flip())
        assert r == -ONE and index_of(r) == 2


def test_bitwoform_requires_enriques_family():
    with pytest.raises(PreconditionError):
        bitwoform_pullback_ratio(k3_cover(family(1)), k3_lift(1))


def test_twoform_requires_cover_family():
    with pytest.raises(PreconditionError):
        k3_twoform_ratio(family(1), family_automorphism(1))


def test_ratio_requires_equation_invariance():
    bad = BirMap.from_strings(
        ENRIQUES_VARS, label="bad", w="w/(y^2*z^3)", y="1/y", z="1/z"
    )
    with pytest.raises(PreconditionError, match="does not preserve"):
        bitwoform_pullback_ratio(family(1), bad)


def test_ratio_on_wrong_family_is_rejected_not_computed():
    # the order-8 map does not preserve family 1, so no ratio exists
    with pytest.raises(PreconditionError):
        bitwoform_pullback_ratio(family(1), family_automorphism(2))


def test_index_of_non_root_of_unity():
    with pytest.raises(NotRootOfUnityError):
        index_of(FormRatio(Cyclo.coerce(2)))


def test_index_of_nonconstant_ratio():
    with pytest.raises(NonConstantRatioError):
        index_of(FormRatio(ONE, constant=False))


def test_formratio_equality():
    assert FormRatio(-ONE) == FormRatio(-ONE)
    assert FormRatio(-ONE) == -ONE
    assert FormRatio(-ONE) != FormRatio(ONE)
    assert FormRatio(ONE, constant=False) != ONE
