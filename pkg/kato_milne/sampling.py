"""
Seeded random samplers for elements, polynomials, places, forms, normal
forms and subgroup generators.

Every sampler takes a random.Random instance, so a seed reproduces a run.
"""

import random

from .cohomology import CohomClass
from .exceptions import ConstraintViolation
from .forms import LogForm, TowerField
from .localfields import W1Class
from .place import FinitePlace, InfinitePlace
from .polyring import Poly, classify_place
from .subgroup import SubgroupSpec, subgroup_generator

__all__ = [
    'make_rng', 'random_ground', 'random_poly', 'random_digit', 'random_place',
    'inseparable_places', 'random_form', 'random_w1class', 'random_generator',
    'random_class',
]

# Attempts before a sampler gives up on a constraint
MAX_ATTEMPTS = 200


def make_rng(seed):
    return random.Random(seed)


def random_ground(rng, tower, level, degree=2, fraction=False, nonzero=False):
    """
    Random element of the tower field at the given level

    Args:
        rng (random.Random): source of randomness
        tower (TowerDesc): the tower
        level (int): largest label used
        degree (int): largest exponent per variable
        fraction (bool): divide by a random nonzero polynomial
        nonzero (bool): never return zero

    Returns:
        FracElement: the element
    """
    labels = tower.labels(level)
    while True:
        value = tower.zero
        for _ in range(rng.randint(1, 3)):
            term = tower.one
            for label in labels:
                term = term * tower.gen(label) ** rng.randint(0, degree)
            value = value + term
        if fraction and labels:
            denominator = random_ground(rng, tower, level, degree, nonzero=True)
            value = value / denominator
        if value or not nonzero:
            return value


def random_poly(rng, tower, var, degree, coeff_degree=1, monic=False):
    """Random polynomial in the variable var of degree <= degree, with
    polynomial coefficients of the ground field"""
    coeffs = {}
    for exponent in range(degree + 1):
        if rng.random() < 0.6:
            coeffs[exponent] = random_ground(rng, tower, var - 1, coeff_degree)
    if monic:
        coeffs[degree] = tower.one
    return Poly(tower, var, coeffs)


def random_digit(rng, place, coeff_degree=1):
    """Random digit: a polynomial of degree < deg p, a constant at inf"""
    if place.is_infinite:
        return Poly.constant(place.tower, place.level,
                             random_ground(rng, place.tower, place.level - 1, coeff_degree))
    return random_poly(rng, place.tower, place.level, place.degree - 1, coeff_degree)


def inseparable_places(tower, level=None):
    """A few inseparable places of degree 2: x^2 + c with c a non-square"""
    level = tower.top if level is None else level
    if level < 2:
        return []
    x = Poly.variable(tower, level)
    places = []
    for c in (tower.gen(1), tower.gen(1) + 1, tower.gen(1) ** 3):
        places.append(FinitePlace(x.square() + Poly.constant(tower, level, c)))
    return places


def random_place(rng, tower, level=None, max_degree=3, bound=8, max_candidates=200000,
                 inseparable=0.2, coeff_degree=1):
    """
    Random finite place of degree <= max_degree, certified irreducible

    Args:
        inseparable (float): probability of returning an inseparable place of degree 2

    Returns:
        FinitePlace: the place
    """
    level = tower.top if level is None else level
    special = inseparable_places(tower, level)
    if special and max_degree >= 2 and rng.random() < inseparable:
        return rng.choice(special)
    for _ in range(MAX_ATTEMPTS):
        d = rng.randint(1, max_degree)
        p = random_poly(rng, tower, level, d, coeff_degree, monic=True)
        place = classify_place(p, bound, max_candidates)
        if isinstance(place, FinitePlace):
            return place
    return FinitePlace(Poly.variable(tower, level))


def _subset(rng, labels, size):
    labels = list(labels)
    if size > len(labels):
        return None
    return tuple(sorted(rng.sample(labels, size)))


def random_form(rng, field, degree, terms=2, coeff_degree=2, fraction=True):
    """
    Random form of the given degree over a tower field

    Returns:
        LogForm: the form, zero when the basis is too small
    """
    result = LogForm.zero(field, degree)
    if degree > len(field.labels):
        return result
    for _ in range(terms):
        labels = _subset(rng, field.labels, degree)
        coef = random_ground(rng, field.tower, field.level, coeff_degree,
                             fraction=fraction and rng.random() < 0.5)
        result = result + LogForm.term(field, coef, labels)
    return result


def random_w1class(rng, place, m, entries=2, max_r=2, coeff_degree=1):
    """
    Random normal form at a place, with u and v tables and phi_prime

    u keys are (r >= 0, L, J) with L a residue index set of size m;
    v keys are (r >= 1, I, J) with I a local index set of size m, J nonempty
    and max(J) not in I.

    Returns:
        W1Class: the normal form
    """
    residue_labels = place.residue_labels
    local_labels = place.local_labels
    u, v = {}, {}
    for _ in range(entries):
        L = _subset(rng, residue_labels, m)
        if L is not None and rng.random() < 0.5:
            J = _subset(rng, residue_labels, rng.randint(0, len(residue_labels)))
            value = random_digit(rng, place, coeff_degree)
            if value:
                u[(rng.randint(0, max_r - 1), L, J)] = value
            continue
        I = _subset(rng, local_labels, m)
        candidates = [label for label in residue_labels if I is not None and label not in I]
        if not candidates:
            continue
        top = rng.choice(candidates)
        lower = [label for label in residue_labels if label < top]
        J = tuple(sorted(set(_subset(rng, lower, rng.randint(0, len(lower)))) | {top}))
        value = random_digit(rng, place, coeff_degree)
        if value:
            v[(rng.randint(1, max_r), I, J)] = value
    phi_prime = None
    if m >= 1:
        residue = place.residue_field()
        phi_prime = LogForm.zero(residue, m - 1)
        labels = _subset(rng, residue_labels, m - 1)
        if labels is not None:
            value = random_digit(rng, place, coeff_degree)
            coef = value.coeff(0) if place.is_infinite else value
            phi_prime = phi_prime + LogForm.term(residue, coef, labels)
    return W1Class(place, m, u, v, phi_prime)


def _constants(rng, tower, level, count):
    return [random_ground(rng, tower, level - 1, 1, nonzero=True)
            for _ in range(count)]


def _params_L0(rng, spec, m):
    tower, level = spec.tower, spec.level
    h = random_poly(rng, tower, level, 2)
    if m == 0:
        return {'h': h}
    if rng.random() < 0.5 or level < 2:
        last = 'x'
        h = h + Poly.constant(tower, level, h.coeff(0))
    else:
        last = random_ground(rng, tower, level - 1, 1, nonzero=True)
    return {'h': h, 'constants': _constants(rng, tower, level, m - 1), 'last': last}


def _params_Ld(rng, spec, m):
    tower, level, d = spec.tower, spec.level, spec.d
    args = []
    while len(args) < m:
        f = random_poly(rng, tower, level, rng.randint(0, d))
        if f:
            args.append(f)
    u = random_poly(rng, tower, level, rng.randint(0, d), monic=True)
    return {'h': random_poly(rng, tower, level, 2), 'u': u, 'e': rng.randint(0, 2), 'args': args}


def _params_Sp(rng, spec, m, allowed):
    labels = _subset(rng, allowed, m)
    if labels is None:
        return None
    return {'h': random_poly(rng, spec.tower, spec.level, 2), 'e': rng.randint(0, 2), 'labels': labels}


def _params_Sprime(rng, spec, m, allowed):
    place = spec.place
    r = spec.r
    if r % 2:
        labels = _subset(rng, allowed, m)
        if labels is None:
            return None
        J = _subset(rng, allowed, rng.randint(0, len(allowed)))
        with_dlog_p = False
    else:
        with_dlog_p = m >= 1 and rng.random() < 0.5
        labels = _subset(rng, allowed, m - 1 if with_dlog_p else m)
        if labels is None:
            return None
        candidates = [label for label in allowed if label not in labels]
        if not candidates:
            return None
        top = rng.choice(candidates)
        lower = [label for label in allowed if label < top]
        J = tuple(sorted(set(_subset(rng, lower, rng.randint(0, len(lower)))) | {top}))
    if place.is_infinite:
        s = random_ground(rng, spec.tower, spec.level - 1, 1)
    else:
        s = random_digit(rng, place)
    return {'s': s, 'labels': labels, 'J': J, 'with_dlog_p': with_dlog_p}


def random_generator(rng, tower, m, place=None, d=3):
    """
    Random generator of H^(m+1)(F(x)) from one of the subgroup families

    Args:
        rng (random.Random): source of randomness
        tower (TowerDesc): the tower, F(x) is its top level
        m (int): form degree
        place (Place): place for the families with poles, None for L0 and Ld
        d (int): degree bound of the Ld family

    Returns:
        CohomClass: the generator, None when no family fits the data
    """
    level = tower.top
    if place is None:
        kind = rng.choice(['L0', 'Ld'])
        spec = SubgroupSpec(kind, tower, level, d=d)
        params = _params_L0(rng, spec, m) if kind == 'L0' else _params_Ld(rng, spec, m)
    else:
        kinds = ['Sp', 'Sprime_pr']
        if not place.is_infinite and not place.is_separable:
            kinds += ['Sp_tilde', 'S0_pr']
        kind = rng.choice(kinds)
        r = rng.randint(1, 3) if kind in ('Sprime_pr', 'S0_pr') else None
        spec = SubgroupSpec(kind, tower, level, place=place, r=r)
        if kind == 'Sp':
            params = _params_Sp(rng, spec, m, tower.labels(level - 1))
        elif kind == 'Sp_tilde':
            params = _params_Sp(rng, spec, m, place.residue_labels)
        else:
            allowed = tower.labels(level - 1) if place.is_infinite else place.residue_labels
            if kind == 'S0_pr':
                allowed = tuple(label for label in allowed if label != place.label_x)
            params = _params_Sprime(rng, spec, m, allowed)
    if params is None:
        return None
    try:
        return subgroup_generator(spec, params)
    except ConstraintViolation:
        return None


def random_class(rng, tower, m, places=(), generators=3, d=3):
    """
    Random class of degree m over F(x): a sum of generators over the given
    places and of polynomial type

    Returns:
        CohomClass: the class
    """
    field = TowerField(tower, tower.top)
    total = CohomClass.zero(field, m)
    choices = [None] + list(places) + [InfinitePlace(tower)]
    for _ in range(MAX_ATTEMPTS):
        if generators <= 0:
            break
        generator = random_generator(rng, tower, m, rng.choice(choices), d)
        if generator is None or generator.m != m:
            continue
        total = total + generator
        generators -= 1
    return total
