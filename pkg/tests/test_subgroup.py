"""Tests for the generator families and their registry"""

import pytest

from kato_milne.exceptions import ConstraintViolation
from kato_milne.parser import parse_class
from kato_milne.place import InfinitePlace
from kato_milne.polyring import Poly
from kato_milne.subgroup import (
    SubgroupKind, SubgroupRegistry, SubgroupSpec, SubgroupSprime, subgroup_generator,
)


##  *****
##  Mocks
##  *****


class IncompleteKind(SubgroupKind):
    """Family missing build"""

    name = 'incomplete'

    def validate(self, spec, params):
        pass


##  *****
##  Tests
##  *****


@pytest.fixture
def generate(tower):
    """Build a generator of a family at an optional place"""
    def build(kind, params, place=None, r=None, d=None):
        return subgroup_generator(SubgroupSpec(kind, tower, place=place, r=r, d=d), params)
    return build


@pytest.mark.unit
def test_cannot_instantiate_abstract_kind():
    """Test that SubgroupKind cannot be instantiated directly"""
    with pytest.raises(TypeError, match="Cannot instantiate abstract class SubgroupKind"):
        SubgroupKind()


@pytest.mark.unit
def test_cannot_instantiate_incomplete_kind():
    """Test that families must implement build"""
    with pytest.raises(TypeError):
        IncompleteKind()


@pytest.mark.unit
def test_registry_cannot_be_instantiated():
    """Test that SubgroupRegistry is a pure factory"""
    with pytest.raises(TypeError, match="Cannot instantiate SubgroupRegistry"):
        SubgroupRegistry()


@pytest.mark.unit
def test_registry_kinds():
    """Test the supported kinds and the factory"""
    assert SubgroupRegistry.kinds() == ['L0', 'Ld', 'Sp', 'Sp_tilde', 'Sprime_pr', 'S0_pr', 'Up', 'Up0']
    assert isinstance(SubgroupRegistry.create('Sprime_pr'), SubgroupSprime)
    assert not SubgroupRegistry.validate('Sq')
    with pytest.raises(KeyError, match="Unsupported subgroup kind"):
        SubgroupRegistry.create('Sq')


@pytest.mark.unit
def test_unknown_kind_is_a_constraint_violation(generate):
    """Test that subgroup_generator rejects unknown kinds"""
    with pytest.raises(ConstraintViolation, match="Unknown subgroup kind: Sq"):
        generate('Sq', {})


@pytest.mark.unit
def test_spec_repr(tower, make_place):
    """Test that the spec shows its parameters"""
    spec = SubgroupSpec('Sprime_pr', tower, place=make_place("x+t1"), r=2)
    assert spec.level == 2
    assert repr(spec) == "SubgroupSpec(Sprime_pr, place=t1 + x, r=2, d=None)"


##  *****
##  Polynomial families
##  *****

@pytest.mark.unit
def test_l0_generator(generate, tower, t, x):
    """Test x dlog(t1 + 1) ^ dlog x."""
    phi = generate('L0', {'h': x, 'constants': [t + 1], 'last': 'x'})
    assert phi.representative == parse_class("(x) dlog(t1+1) ^ dlog(x)", tower).representative


@pytest.mark.unit
def test_l0_constraints(generate, t, x):
    """Test the clauses of L_0."""
    with pytest.raises(ConstraintViolation, match="Subgroup 'L0': h must lie in xF"):
        generate('L0', {'h': t, 'constants': [], 'last': 'x'})
    with pytest.raises(ConstraintViolation, match="f_m is required"):
        generate('L0', {'h': 1, 'constants': [t]})
    with pytest.raises(ConstraintViolation, match="c_1 must not involve x"):
        generate('L0', {'h': 1, 'constants': [x], 'last': t})


@pytest.mark.unit
def test_ld_generator(generate, tower, t, x):
    """Test (1/(x + t1)) dlog t1 in L_d."""
    phi = generate('Ld', {'h': 1, 'u': x + t, 'e': 1, 'args': [t]}, d=2)
    assert phi.representative == parse_class("(1/(x+t1)) dlog(t1)", tower).representative


@pytest.mark.unit
def test_ld_constraints(generate, t, x):
    """Test the clauses of L_d."""
    with pytest.raises(ConstraintViolation, match="d >= 1 is required"):
        generate('Ld', {'h': 1})
    with pytest.raises(ConstraintViolation, match="u must be monic"):
        generate('Ld', {'h': 1, 'u': t * x}, d=2)
    with pytest.raises(ConstraintViolation, match="f_1 has degree 3 > 2"):
        generate('Ld', {'h': 1, 'args': [x ** 3]}, d=2)
    with pytest.raises(ConstraintViolation, match="f_1 must be nonzero"):
        generate('Ld', {'h': 1, 'args': [0]}, d=2)


##  *****
##  Pole families
##  *****

@pytest.mark.unit
def test_sp_generator(generate, make_place, tower, t):
    """Test (t1/(x + t1)) dlog t1 and x dlog t1 at inf."""
    phi = generate('Sp', {'h': t, 'e': 1, 'labels': (1,)}, place=make_place("x+t1"))
    assert phi.representative == parse_class("(t1/(x+t1)) dlog(t1)", tower).representative
    phi = generate('Sp', {'h': 1, 'labels': (1,)}, place=InfinitePlace(tower))
    assert phi.representative == parse_class("(x) dlog(t1)", tower).representative


@pytest.mark.unit
def test_sp_constraints(generate, make_place, x):
    """Test the clauses of S_p."""
    place = make_place("x+t1")
    with pytest.raises(ConstraintViolation, match="a place is required"):
        generate('Sp', {'h': 1})
    with pytest.raises(ConstraintViolation, match="not in the 2-basis"):
        generate('Sp', {'h': 1, 'e': 1, 'labels': (2,)}, place=place)
    with pytest.raises(ConstraintViolation, match="e >= 0"):
        generate('Sp', {'h': 1, 'e': -1}, place=place)
    with pytest.raises(ConstraintViolation, match="not a polynomial in x"):
        generate('Sp', {'h': 1 / x, 'e': 1}, place=place)


@pytest.mark.unit
def test_sp_tilde(generate, make_place, tower):
    """Test that the tilde family allows dlog x at an inseparable place only."""
    phi = generate('Sp_tilde', {'h': 1, 'e': 1, 'labels': (2,)}, place=make_place("x^2+t1"))
    assert phi.representative == parse_class("(1/(x^2+t1)) dlog(x)", tower).representative
    with pytest.raises(ConstraintViolation, match="p must be inseparable"):
        generate('Sp_tilde', {'h': 1, 'e': 1}, place=make_place("x+t1"))


##  *****
##  Ramified families
##  *****

@pytest.mark.unit
def test_sprime_generator(generate, make_place, tower):
    """Test reduce(t1 * 1^2) / p dlog t1 at p = x + t1."""
    phi = generate('Sprime_pr', {'s': 1, 'labels': (1,), 'J': (1,)}, place=make_place("x+t1"), r=1)
    assert phi.representative == parse_class("(t1/(x+t1)) dlog(t1)", tower).representative


@pytest.mark.unit
def test_sprime_even_r_with_dlog_p(generate, make_place, tower):
    """Test t1 / p^2 dlog p, which needs J = {t1} outside I = {}."""
    place = make_place("x+1")
    phi = generate('Sprime_pr', {'s': 1, 'labels': (), 'J': (1,), 'with_dlog_p': True}, place=place, r=2)
    assert phi.representative == parse_class("(t1/(x+1)^2) dlog(x+1)", tower).representative


@pytest.mark.unit
def test_sprime_at_inf(generate, tower):
    """Test t1 c^2 x^2 dlog x at inf with c = 1."""
    phi = generate('Sprime_pr', {'s': 1, 'labels': (), 'J': (1,), 'with_dlog_p': True},
                   place=InfinitePlace(tower), r=2)
    assert phi.representative == parse_class("(t1*x^2) dlog(1/x)", tower).representative


@pytest.mark.unit
def test_sprime_constraints(generate, make_place, x):
    """Test the clauses of S'_(p,r)."""
    place = make_place("x+t1")
    with pytest.raises(ConstraintViolation, match="r >= 1 is required"):
        generate('Sprime_pr', {'s': 1}, place=place)
    with pytest.raises(ConstraintViolation, match="r odd generators carry no dlog p"):
        generate('Sprime_pr', {'s': 1, 'with_dlog_p': True}, place=place, r=1)
    with pytest.raises(ConstraintViolation, match="J \\+ I > I fails"):
        generate('Sprime_pr', {'s': 1, 'labels': (1,), 'J': (1,)}, place=place, r=2)
    with pytest.raises(ConstraintViolation, match="s must have degree < 1"):
        generate('Sprime_pr', {'s': x, 'J': (1,)}, place=place, r=1)
    with pytest.raises(ConstraintViolation, match="c must be a constant"):
        generate('Sprime_pr', {'s': x, 'J': (1,)}, place=InfinitePlace(place.tower), r=1)


@pytest.mark.unit
def test_s0_generator(generate, make_place, tower):
    """Test the class of x / p^2 at p = x^2 + t1."""
    place = make_place("x^2+t1")
    phi = generate('S0_pr', {'s': 1, 'labels': (), 'J': (2,)}, place=place, r=2)
    assert phi.representative == parse_class("x/(x^2+t1)^2", tower).representative
    with pytest.raises(ConstraintViolation, match="I_x = 0 is required"):
        generate('S0_pr', {'s': 1, 'labels': (2,), 'J': ()}, place=place, r=1)
    with pytest.raises(ConstraintViolation, match="p must be inseparable"):
        generate('S0_pr', {'s': 1}, place=make_place("x+t1"), r=1)


@pytest.mark.unit
def test_up_sums_generators(generate, make_place, tower):
    """Test that U_p sums S'_(p,r) generators of equal degree."""
    place = make_place("x+t1")
    terms = [
        {'r': 1, 's': 1, 'labels': (1,), 'J': (1,)},
        {'r': 3, 's': 1, 'labels': (1,), 'J': ()},
    ]
    phi = generate('Up', {'terms': terms}, place=place)
    expected = parse_class("(t1/(x+t1) + 1/(x+t1)^3) dlog(t1)", tower)
    assert phi.representative == expected.representative


@pytest.mark.unit
def test_up_constraints(generate, make_place):
    """Test that U_p needs terms of a single degree."""
    place = make_place("x+t1")
    with pytest.raises(ConstraintViolation, match="at least one term"):
        generate('Up', {'terms': []}, place=place)
    terms = [{'r': 1, 's': 1, 'labels': (1,)}, {'r': 1, 's': 1, 'labels': ()}]
    with pytest.raises(ConstraintViolation, match="same degree"):
        generate('Up', {'terms': terms}, place=place)
    with pytest.raises(ConstraintViolation, match="Subgroup 'S0_pr': p must be inseparable"):
        generate('Up0', {'terms': [{'r': 1, 's': 1}]}, place=place)
