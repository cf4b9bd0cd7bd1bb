"""Tests for partial fractions, local normal forms and Teichmuller lifts"""

import pytest
from hypothesis import given, settings, strategies as st

from kato_milne.exceptions import KatoMilneError, PlaceNotClassified
from kato_milne.forms import LogForm, dlog_expand
from kato_milne.groundfield import TowerDesc
from kato_milne.localfields import (
    W1Class, local_normal_form, partial_fractions, residue, step1_rewrite, teichmuller_lift,
    to_global, to_local,
)
from kato_milne.parser import parse_class
from kato_milne.place import FinitePlace, InfinitePlace
from kato_milne.polyring import Poly
from kato_milne.sampling import inseparable_places, random_place, random_w1class


##  *****
##  Partial fractions
##  *****

@pytest.mark.unit
def test_simple_pole(make_place, t, x):
    """Test that t1/p has the single digit t1 at p^-1."""
    place = make_place("x^2+t1")
    expansion = partial_fractions(t / (x ** 2 + t), place)
    assert expansion.order == -1
    assert expansion.digit(-1) == Poly.constant(place.tower, 2, t)
    assert expansion.tail == 0


@pytest.mark.unit
def test_order_zero_with_tail(make_place, t, x):
    """Test that x^2 = t1 + p keeps p as the tail."""
    place = make_place("x^2+t1")
    expansion = partial_fractions(x ** 2, place)
    assert expansion.digit(0) == Poly.constant(place.tower, 2, t)
    assert expansion.tail == x ** 2 + t
    assert expansion.recombine() == x ** 2


@pytest.mark.unit
def test_expansion_over_f2():
    """Test 1/(x(x+1)) at the place x over F_2."""
    tower = TowerDesc(0)
    x = tower.gen(1)
    place = FinitePlace(Poly.variable(tower, 1))
    c = 1 / (x * (x + 1))
    expansion = partial_fractions(c, place)
    assert expansion.order == -1
    assert expansion.digit(-1) == 1
    assert expansion.digit(0) == 1
    assert expansion.tail == x / (x + 1)
    assert expansion.recombine() == c


@pytest.mark.unit
def test_expansion_at_inf(tower, x):
    """Test that the polynomial part gives the digits at inf."""
    expansion = partial_fractions(x ** 2 + 1 / x, InfinitePlace(tower))
    assert expansion.digits == {-2: Poly.constant(tower, 2, 1)}
    assert expansion.tail == 1 / x


@pytest.mark.unit
def test_partial_fractions_needs_a_place(tower, x):
    """Test that an unclassified place is rejected."""
    with pytest.raises(PlaceNotClassified):
        partial_fractions(x, None)


##  *****
##  Local and global bases
##  *****

@pytest.mark.unit
def test_to_local_at_p(make_place, top_field, t, x):
    """Test that dlog(x + t1) is dlog pi at the place x + t1."""
    place = make_place("x+t1")
    local = to_local(dlog_expand(top_field, x + t), place)
    assert local == LogForm.term(local.field, 1, (place.label_pi,))
    assert to_global(local, place) == dlog_expand(top_field, x + t)


##  *****
##  Rewriting
##  *****

@pytest.mark.unit
def test_step1_halves_even_poles(make_place, tower, x):
    """Test x/p^2 dlog t1 at p = x^2 + x + 1."""
    place = make_place("x^2+x+1")
    result = step1_rewrite(Poly.from_element(tower, x, 2), 2, (1,), place)
    assert result.u == {(0, (1,), ()): Poly.from_element(tower, x + 1, 2)}
    assert result.v == {}
    assert result.polynomial_terms == {}
    assert 'wp' in [witness.kind for witness in result.witnesses]


@pytest.mark.unit
def test_step1_order_zero_and_positive(make_place, tower, t):
    """Test that order zero is kept and positive valuation is dropped."""
    place = make_place("x+t1")
    f = Poly.constant(tower, 2, t)
    assert step1_rewrite(f, 0, (1,), place).polynomial_terms == {(1,): f}
    dropped = step1_rewrite(f, -1, (1,), place)
    assert dropped.u == {} and dropped.v == {} and dropped.polynomial_terms == {}
    assert [witness.kind for witness in dropped.witnesses] == ['hensel']


@pytest.mark.unit
def test_normal_form_of_residue_term(make_place, tower, t):
    """Test that a dlog t1 ^ dlog p has phi_prime = a dlog t1 at p."""
    place = make_place("x+t1")
    w = local_normal_form(parse_class("(t1) dlog(t1) ^ dlog(x+t1)", tower), place)
    assert w.u == {} and w.v == {}
    assert w.phi_prime == LogForm.term(place.residue_field(), Poly.constant(tower, 2, t), (1,))


@pytest.mark.unit
def test_normal_form_of_simple_pole(make_place, tower):
    """Test that (t1/p) dlog t1 has a u entry at r = 0 and phi_prime = 0."""
    place = make_place("x+t1")
    w = local_normal_form(parse_class("(t1/(x+t1)) dlog(t1)", tower), place)
    assert [key[0] for key in w.u] == [0]
    assert not w.phi_prime
    assert w.audit(parse_class("(t1/(x+t1)) dlog(t1)", tower).representative)


@pytest.mark.unit
def test_exact_form_is_trivial_at_inf(tower):
    """Test that x dlog t1 ^ dlog x = d(x dlog t1) has the zero normal form at inf."""
    w = local_normal_form(parse_class("(x) dlog(t1) ^ dlog(x)", tower), InfinitePlace(tower))
    assert w.is_trivial()
    assert 'd' in w.witness_counts()


@pytest.mark.unit
def test_odd_pole_at_inf(tower, t):
    """Test that t1^2 x dlog t1 has an entry at inf and phi_prime = 0."""
    w = local_normal_form(parse_class("(t1^2*x) dlog(t1)", tower), InfinitePlace(tower))
    assert w.u or w.v
    assert not w.phi_prime


@pytest.mark.unit
def test_phi_prime_at_inf(tower, ground_field):
    """Test that the residue of dlog t1 ^ dlog x at inf is dlog t1."""
    w = residue(parse_class("dlog(t1) ^ dlog(x)", tower), InfinitePlace(tower))
    assert w.phi_prime == LogForm.term(ground_field, tower.one, (1,))
    assert w.to_json()["phi_prime"] == "(1) dlog(t1)"


@pytest.mark.unit
def test_residue_vanishes_elsewhere(make_place, tower):
    """Test that a dlog t1 ^ dlog p has no residue at another place."""
    w = local_normal_form(parse_class("(t1) dlog(t1) ^ dlog(x+t1)", tower), make_place("x+1"))
    assert w.is_trivial()


@pytest.mark.unit
def test_degree_zero_normal_form(make_place, tower):
    """Test that degree 0 classes have no phi_prime."""
    w = local_normal_form(parse_class("1/(x+t1)", tower), make_place("x+t1"))
    assert w.m == 0
    assert w.phi_prime is None
    assert w.u == {(0, (), ()): Poly.constant(tower, 2, 1)}


@pytest.mark.unit
def test_normal_forms_add(make_place, tower):
    """Test that W1Class addition is entrywise."""
    place = make_place("x+t1")
    one = Poly.constant(tower, 2, 1)
    a = W1Class(place, 1, u={(0, (1,), ()): one})
    b = W1Class(place, 1, u={(0, (1,), ()): one})
    assert (a + b).is_trivial()
    with pytest.raises(KatoMilneError, match="different places"):
        a + W1Class(InfinitePlace(tower), 1)


@pytest.mark.unit
@settings(max_examples=20, deadline=None)
@given(st.randoms(use_true_random=False))
def test_normal_form_is_reproduced(rng):
    """Test that the normal form of a representative is the normal form itself."""
    tower = TowerDesc(1)
    place = rng.choice(inseparable_places(tower)
                       + [random_place(rng, tower, max_degree=2, inseparable=0), InfinitePlace(tower)])
    w = random_w1class(rng, place, 1)
    again = local_normal_form(w.representative(), place)
    assert again == w
    assert again.audit(w.representative())


##  *****
##  Teichmuller lifts
##  *****

@pytest.mark.unit
def test_lift_of_basis_elements(make_place, tower, t, x):
    """Test that t1 and the class of x lift to themselves."""
    place = make_place("x^2+t1")
    xp = Poly.variable(tower, 2)
    assert teichmuller_lift(xp, place, 3) == xp
    separable = make_place("x^2+x+1")
    assert teichmuller_lift(Poly.constant(tower, 2, t), separable, 3) == Poly.constant(tower, 2, t)


@pytest.mark.unit
def test_lift_at_depth_one(make_place, tower, x):
    """Test the lift of the class of x at p = x^2 + x + 1 to depth 1."""
    place = make_place("x^2+x+1")
    lift = teichmuller_lift(Poly.variable(tower, 2), place, 1)
    assert lift == Poly.from_element(tower, x ** 2 + 1, 2)
    assert lift % place.poly == Poly.variable(tower, 2)


@pytest.mark.unit
def test_lift_rejects_negative_depth(make_place, tower):
    """Test that the depth must be non-negative."""
    with pytest.raises(KatoMilneError, match="Invalid depth"):
        teichmuller_lift(Poly.variable(tower, 2), make_place("x+t1"), -1)
