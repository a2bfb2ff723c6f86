"""Series assembly: the three routes, conjugation, and substitution."""

from fractions import Fraction

import pytest

from bchnest.series import (
    ad_power,
    bch_term,
    bch_term_dynkin,
    log_product_words,
    substitute,
    symmetric_bch_term,
)
from bchnest.terms import LieExpr, expand_lie

F = Fraction

# Low grades admit hand computation; these are classical closed forms.
PHI_FIXTURES = {
    1: {(0,): F(1), (1,): F(1)},
    2: {(0, 1): F(1, 2)},
    3: {(0, 0, 1): F(1, 12), (1, 0, 1): F(-1, 12)},
    4: {(0, 1, 0, 1): F(-1, 24)},
}


def test_low_grade_closed_forms():
    for m, expected in PHI_FIXTURES.items():
        assert bch_term(m, 2).terms == expected


def test_dynkin_route_low_grades():
    for m in (1, 2, 3):
        assert bch_term_dynkin(m).terms == PHI_FIXTURES[m]
    # At grade 4 the block sum lands on a different representation of the
    # same element: -1/48 [Y,[X,[X,Y]]] - 1/48 [X,[Y,[X,Y]]].
    assert bch_term_dynkin(4).terms == {
        (1, 0, 0, 1): F(-1, 48),
        (0, 1, 0, 1): F(-1, 48),
    }
    assert expand_lie(bch_term_dynkin(4)) == expand_lie(bch_term(4, 2))


def test_grade_three_word_polynomial():
    # All six length-3 words of log(exp X exp Y), coefficients +-1/12, -1/6.
    assert log_product_words(3, 2).terms == {
        (0, 0, 1): F(1, 12),
        (0, 1, 0): F(-1, 6),
        (0, 1, 1): F(1, 12),
        (1, 0, 0): F(1, 12),
        (1, 0, 1): F(-1, 6),
        (1, 1, 0): F(1, 12),
    }


def test_three_routes_agree_up_to_grade_six():
    for m in range(1, 7):
        phi = expand_lie(bch_term(m, 2))
        assert phi == expand_lie(bch_term_dynkin(m))
        assert phi == log_product_words(m, 2)


def test_three_variable_assembly():
    assert bch_term(1, 3).terms == {(0,): F(1), (1,): F(1), (2,): F(1)}
    assert bch_term(2, 3).terms == {
        (0, 1): F(1, 2),
        (0, 2): F(1, 2),
        (1, 2): F(1, 2),
    }
    for m in (2, 3, 4):
        assert expand_lie(bch_term(m, 3)) == log_product_words(m, 3)


def test_grade_validation():
    with pytest.raises(ValueError):
        bch_term(0, 2)
    with pytest.raises(ValueError):
        bch_term(3, 1)
    with pytest.raises(ValueError):
        log_product_words(0, 2)


def test_ad_power_prefixes_leaves():
    e = LieExpr({(0, 1): F(1)})
    assert ad_power(0, e, 2).terms == {(0, 0, 0, 1): F(1)}
    assert ad_power(1, e, 1).terms == {(1, 0, 1): F(1)}
    assert ad_power(0, e, 0) is e


def test_ad_power_on_degenerate_leaves():
    # [X, X] collapses, [X, Y] forms a fresh innermost pair.
    ones = LieExpr({(0,): F(1), (1,): F(1)})
    assert ad_power(0, ones, 1).terms == {(0, 1): F(1)}
    assert ad_power(1, ones, 1).terms == {(0, 1): F(-1)}


def test_substitute_scales_per_leaf():
    e = LieExpr({(0, 1): F(2)})
    out = substitute(e, {0: (0, F(1, 2)), 1: (1, 3)})
    assert out.terms == {(0, 1): F(3)}


def test_substitute_collapses_merged_generators():
    # Sending both letters to X kills every bracket.
    e = LieExpr({(0, 1): F(1), (0, 0, 1): F(5)})
    assert not substitute(e, {0: (0, 1), 1: (0, 1)})


def test_substitute_validates_mapping():
    e = LieExpr({(0, 1): F(1)})
    with pytest.raises(ValueError):
        substitute(e, {0: (0, 1)})
    with pytest.raises(ValueError):
        substitute(e, {0: (0, 0), 1: (1, 1)})


def test_symmetric_grade_three():
    # Psi_3 = -1/24 [X,[X,Y]] - 1/12 [Y,[X,Y]], the classical leading error
    # of the symmetric splitting.
    assert symmetric_bch_term(3).terms == {
        (0, 0, 1): F(-1, 24),
        (1, 0, 1): F(-1, 12),
    }


def test_symmetric_even_grades_vanish():
    for m in (2, 4, 6):
        assert not symmetric_bch_term(m)


def test_symmetric_matches_three_variable_route():
    # log(exp(X/2) exp(Y) exp(X/2)) via the substitution X1 -> X/2,
    # X2 -> Y, X3 -> X/2 into the three-variable series.
    for m in (1, 2, 3, 4, 5):
        direct = symmetric_bch_term(m)
        routed = substitute(
            bch_term(m, 3), {0: (0, F(1, 2)), 1: (1, 1), 2: (0, F(1, 2))}
        )
        assert expand_lie(direct) == expand_lie(routed)


def test_symmetric_provider_changes_shape_not_element():
    # Supplying an equivalent but differently written grade-4 input must
    # change only the representation, never the element.
    alt4 = LieExpr({(1, 0, 0, 1): F(-1, 24)})
    assert expand_lie(alt4) == expand_lie(bch_term(4, 2))

    def provider(g):
        return alt4 if g == 4 else bch_term(g, 2)

    direct = symmetric_bch_term(5)
    routed = symmetric_bch_term(5, phi=provider)
    assert routed.terms != direct.terms
    assert expand_lie(routed) == expand_lie(direct)
