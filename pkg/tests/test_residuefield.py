"""Tests for residue fields of finite places"""

import pytest
from hypothesis import given, settings, strategies as st

from kato_milne.exceptions import KatoMilneError, PlaceNotClassified
from kato_milne.groundfield import TowerDesc
from kato_milne.place import InfinitePlace
from kato_milne.polyring import Poly
from kato_milne.residuefield import ResidueField, residue_field_decompose, residue_field_recompose
from kato_milne.sampling import inseparable_places, random_digit, random_place


@pytest.mark.unit
def test_decompose_separable(make_place, tower, x):
    """Test that x = (x+1)^2 + p at p = x^2 + x + 1."""
    place = make_place("x^2+x+1")
    parts, k = residue_field_decompose(Poly.from_element(tower, x, 2), place)
    assert parts == {(): Poly.from_element(tower, x + 1, 2)}
    assert k == 1


@pytest.mark.unit
def test_decompose_inseparable(make_place, tower, t, x):
    """Test that t1 is the square of the class of x at p = x^2 + t1."""
    place = make_place("x^2+t1")
    parts, k = residue_field_decompose(Poly.constant(tower, 2, t), place)
    assert parts == {(): Poly.variable(tower, 2)}
    assert k == 1


@pytest.mark.unit
def test_decompose_zero(make_place, tower):
    """Test that zero decomposes to nothing."""
    parts, k = residue_field_decompose(Poly(tower, 2), make_place("x+t1"))
    assert parts == {}
    assert k.is_zero()


@pytest.mark.unit
def test_decompose_at_inf(tower, t):
    """Test that digits at inf decompose in the ground field."""
    parts, k = residue_field_decompose(Poly.constant(tower, 2, t ** 2 + t), InfinitePlace(tower))
    assert parts == {(): Poly.constant(tower, 2, t), (1,): Poly.constant(tower, 2, 1)}
    assert k.is_zero()


@pytest.mark.unit
def test_decompose_rejects_large_digits(make_place, tower, x):
    """Test that digits must be reduced modulo p."""
    with pytest.raises(KatoMilneError, match="Digit of degree 2"):
        residue_field_decompose(Poly.from_element(tower, x ** 2, 2), make_place("x^2+t1"))


@pytest.mark.unit
def test_decompose_needs_a_place(tower):
    """Test that an unclassified place is rejected."""
    with pytest.raises(PlaceNotClassified):
        residue_field_decompose(Poly(tower, 2), "x+t1")


@pytest.mark.unit
@settings(max_examples=15, deadline=None)
@given(st.randoms(use_true_random=False))
def test_decompose_recompose(rng):
    """Test that f = sum t^J f_J^2 + p k holds exactly."""
    tower = TowerDesc(1)
    place = rng.choice(inseparable_places(tower) + [random_place(rng, tower, max_degree=3, inseparable=0)])
    f = random_digit(rng, place)
    parts, k = residue_field_decompose(f, place)
    assert residue_field_recompose(parts, place) == f
    total = place.poly * k
    for J, part in parts.items():
        total = total + place.basis_lift(J) * part.square()
    assert total == f


@pytest.mark.unit
def test_residue_field_arithmetic(make_place, tower, t, x):
    """Test multiplication, inversion and the basis of F(x^2 + t1)."""
    place = make_place("x^2+t1")
    field = place.residue_field()
    assert isinstance(field, ResidueField)
    assert field.labels == (2,)
    xbar = field.basis_element(2)
    assert field.mul(xbar, xbar) == Poly.constant(tower, 2, t)
    assert field.mul(xbar, field.inv(xbar)) == 1
    assert field.describe() == "F(x^2 + t1)"


@pytest.mark.unit
def test_residue_field_differential(make_place, tower):
    """Test that d of the class of x is the class of x times dlog x."""
    place = make_place("x^2+t1")
    field = place.residue_field()
    xbar = field.basis_element(2)
    assert field.differential(xbar) == {2: xbar}
    assert field.differential(field.one()) == {}


@pytest.mark.unit
def test_residue_field_trace(make_place, tower):
    """Test the trace down to the ground field."""
    field = make_place("x^2+x+1").residue_field()
    assert field.trace(field.one()) == 0
    assert field.trace(Poly.variable(tower, 2)) == 1


@pytest.mark.unit
def test_no_residue_field_object_at_inf(tower):
    """Test that the residue field at inf is the ground field, not a ResidueField."""
    with pytest.raises(PlaceNotClassified):
        ResidueField(InfinitePlace(tower))
    assert InfinitePlace(tower).residue_field().describe() == "F_2(t1)"
