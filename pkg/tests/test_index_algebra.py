"""Tests for the harmonic product, coproduct, antipodes and x,y lift."""

from hypothesis import given

from conftest import indices
from index_algebra import (
    IndexCombination,
    antipode_law_residual,
    antipode_S,
    antipode_tilde,
    coassociativity_sides,
    comultiply,
    counit,
    counit_sides,
    harmonic_product,
    lift,
    poly_lift_xy,
    poly_lift_xy_star,
    star,
    star_expand,
    symbol,
    telescoping_sum,
    tensor_product,
    unit,
)
from index_core import EMPTY, reverse
from poly_scalar import A, X, Y


def test_product_of_two_and_three():
    assert str(harmonic_product(symbol((2,)), symbol((3,)))) == "[2,3]+[3,2]+[5]"


def test_square_of_one():
    assert harmonic_product(symbol((1,)), symbol((1,))) == symbol((1, 1), 2) + symbol((2,))
    assert str(harmonic_product(symbol((1,)), symbol((1,)))) == "2[1,1]+[2]"


def test_unit():
    u = symbol((2, 1), A)
    assert harmonic_product(unit(), u) == u
    assert unit().is_one()


@given(indices(max_weight=4), indices(max_weight=4))
def test_commutative(k, l):
    assert harmonic_product(symbol(k), symbol(l)) == harmonic_product(symbol(l), symbol(k))


@given(indices(max_weight=3), indices(max_weight=3), indices(max_weight=3))
def test_associative(k, l, m):
    left = harmonic_product(harmonic_product(symbol(k), symbol(l)), symbol(m))
    right = harmonic_product(symbol(k), harmonic_product(symbol(l), symbol(m)))
    assert left == right


def test_star_expansion():
    assert star_expand((1, 2)) == symbol((1, 2)) + symbol((3,))
    assert len(star_expand((1, 1, 1, 1))) == 8
    assert star_expand(EMPTY) == unit()


def test_star_is_linear():
    u = symbol((1, 1), X) + symbol((2,), 3)
    assert star(u) == star_expand((1, 1)).scale(X) + symbol((2,), 3)


@given(indices(max_weight=5))
def test_coassociative(k):
    left, right = coassociativity_sides(symbol(k))
    assert left == right


@given(indices(max_weight=5))
def test_counit_laws(k):
    u = symbol(k)
    left, right = counit_sides(u)
    assert left == u
    assert right == u


def test_counit():
    assert counit(unit()) == 1
    assert counit(symbol((2,))).is_zero()


@given(indices(max_weight=3), indices(max_weight=3))
def test_coproduct_is_multiplicative(k, l):
    product = harmonic_product(symbol(k), symbol(l))
    assert comultiply(product) == tensor_product(comultiply(symbol(k)), comultiply(symbol(l)))


@given(indices(max_weight=5))
def test_antipode_law(k):
    assert antipode_law_residual(symbol(k), "left").is_zero()
    assert antipode_law_residual(symbol(k), "right").is_zero()


@given(indices(max_weight=5))
def test_tilde_is_an_involution(k):
    assert antipode_tilde(antipode_tilde(symbol(k))) == symbol(k)


@given(indices(max_weight=3), indices(max_weight=3))
def test_antipodes_are_homomorphisms(k, l):
    product = harmonic_product(symbol(k), symbol(l))
    assert antipode_S(product) == harmonic_product(antipode_S(symbol(k)), antipode_S(symbol(l)))
    assert antipode_tilde(product) == harmonic_product(antipode_tilde(symbol(k)), antipode_tilde(symbol(l)))


def test_antipode_values():
    assert antipode_S(symbol((1, 2))) == star_expand((2, 1))
    assert antipode_tilde(symbol((1, 2))) == star_expand((1, 2))
    assert antipode_S(symbol((3,))) == -symbol((3,))


@given(indices(max_weight=6, min_weight=1))
def test_telescoping_vanishes(k):
    assert telescoping_sum(k).is_zero()


def test_telescoping_empty():
    assert telescoping_sum(EMPTY) == unit()


def test_lift_specializes_to_index():
    for k in [(2,), (1, 2), (2, 1, 3)]:
        assert poly_lift_xy(k).substitute(x=1, y=0) == symbol(k)
        assert poly_lift_xy_star(k).substitute(x=1, y=0) == star_expand(k)


def test_lift_single():
    assert poly_lift_xy((2,)) == symbol((2,), X ** 2 + Y ** 2)


def test_lift_reverses_tail():
    assert poly_lift_xy((1, 2)).substitute(x=0, y=1) == symbol(reverse((1, 2)))


def test_lift_is_linear():
    u = symbol((2,)) + symbol((1, 2), 2)
    assert lift(u) == poly_lift_xy((2,)) + poly_lift_xy((1, 2)).scale(2)


def test_rendering_and_json():
    u = symbol((1, 2), 1 + A) - symbol((3,))
    assert str(u) == "(1 + A)[1,2]-[3]"
    assert IndexCombination.from_json(u.to_json()) == u
    assert str(IndexCombination()) == "0"


def test_specialize():
    u = symbol((2,), X) + symbol((3,), Y - X)
    assert u.specialize({"x": 1, "y": 1}) == {(2,): 1}


@given(indices(max_weight=6))
def test_antipode_is_an_involution(k):
    assert antipode_S(antipode_S(symbol(k))) == symbol(k)


@given(indices(max_weight=3), indices(max_weight=3))
def test_lift_is_multiplicative(k, l):
    assert lift(harmonic_product(symbol(k), symbol(l))) == harmonic_product(poly_lift_xy(k), poly_lift_xy(l))


@given(indices(max_weight=6))
def test_tilde_on_lift_is_signed_star_lift(k):
    assert antipode_tilde(poly_lift_xy(k)) == poly_lift_xy_star(k).scale((-1) ** len(k))


def test_tilde_on_lift_small_case():
    # S̃ z_{x,y}(2) = -z^★_{x,y}(2)
    assert antipode_tilde(poly_lift_xy((2,))) == poly_lift_xy_star((2,)).scale(-1)
