"""
Nonsingular quadratic forms in characteristic 2: the bridge to cohomology
classes, simplification in the Witt group, the Scharlau transfer computed
from Gram data, and a bounded comparison of Witt classes
"""

import itertools
from typing import Any, NamedTuple

from .cohomology import NONZERO, UNKNOWN, ZERO, is_zero
from .exceptions import FieldMismatch, KatoMilneError, NonLogarithmicTerm, SingularTransfer
from .forms import LogForm, TowerField, dlog_wedge, dlog_expand
from .polyring import Poly, t_p_functional

__all__ = [
    'EQUAL', 'NOT_EQUAL', 'INCONCLUSIVE',
    'Pfister', 'QuadForm', 'BilForm', 'WittVerdict',
    'kato_iso', 'witt_simplify', 'scharlau_transfer_gram',
    'witt_equal_bounded', 'frobenius_reciprocity',
]

# Verdicts of witt_equal_bounded
EQUAL = "EQUAL"
NOT_EQUAL = "NOT_EQUAL"
INCONCLUSIVE = "INCONCLUSIVE"

# Default budget of the isotropy search
MAX_ISOTROPY_CANDIDATES = 20000


class Pfister(NamedTuple):
    """Presentation <<slots; entry]]"""
    slots: tuple
    entry: Any


class WittVerdict(NamedTuple):
    verdict: str
    witness: Any

    def to_json(self):
        return {"verdict": self.verdict, "witness": self.witness}


class BilForm:
    """Diagonal bilinear form <a_1, ..., a_n>_b over a FormField"""

    def __init__(self, field, entries, slots=None):
        entries = [field.normalize(a) for a in entries]
        if not all(entries):
            raise KatoMilneError("Diagonal entries of a bilinear form must be nonzero")
        self.field = field
        self.entries = entries
        # set for Pfister forms <<a_1, ..., a_m>>_b
        self.slots = None if slots is None else tuple(slots)

    @classmethod
    def pfister(cls, field, slots):
        """<<a_1, ..., a_m>>_b = <1, a_1>_b x ... x <1, a_m>_b"""
        entries = [field.one()]
        for a in slots:
            entries = entries + [field.mul(a, c) for c in entries]
        return cls(field, entries, slots)

    @property
    def dimension(self):
        return len(self.entries)

    def tensor(self, q):
        """The quadratic form b x q"""
        if q.field != self.field:
            raise FieldMismatch("Bilinear and quadratic forms over different fields")
        result = QuadForm.hyperbolic(self.field)
        for c in self.entries:
            result = result + q.scale(c)
        if self.slots is not None and q.pfister is not None:
            result.pfister = [
                Pfister(self.slots + presentation.slots, presentation.entry)
                for presentation in q.pfister
            ]
        return result

    def text(self):
        if self.slots is not None:
            return "<<" + ", ".join(self.field.format(a) for a in self.slots) + ">>_b"
        return "<" + ", ".join(self.field.format(a) for a in self.entries) + ">_b"

    def __repr__(self):
        return f"BilForm({self.text()})"


class QuadForm:
    """Orthogonal sum of binary blocks [a, b] = aX^2 + XY + bY^2 over a FormField.

    pfister, when not None, lists Pfister presentations whose expansions add
    up to the blocks; an empty list with no blocks is the hyperbolic class.
    """

    def __init__(self, field, blocks=(), pfister=None):
        self.field = field
        self.blocks = [(field.normalize(a), field.normalize(b)) for a, b in blocks]
        self.pfister = None if pfister is None else list(pfister)

    @classmethod
    def hyperbolic(cls, field):
        return cls(field, [], [])

    @classmethod
    def binary(cls, field, a, b):
        return cls(field, [(a, b)])

    @classmethod
    def pfister_form(cls, field, slots, entry):
        """<<a_1, ..., a_m; b]] = <<a_1, ..., a_m>>_b x [1, b]"""
        slots = tuple(field.normalize(a) for a in slots)
        blocks = [
            (c, field.mul(entry, field.inv(c)))
            for c in BilForm.pfister(field, slots).entries
        ]
        return cls(field, blocks, [Pfister(slots, field.normalize(entry))])

    @property
    def dimension(self):
        return 2 * len(self.blocks)

    def __add__(self, other):
        if not isinstance(other, QuadForm) or other.field != self.field:
            raise FieldMismatch("Quadratic forms over different fields")
        pfister = None
        if self.pfister is not None and other.pfister is not None:
            pfister = self.pfister + other.pfister
        return QuadForm(self.field, self.blocks + other.blocks, pfister)

    def scale(self, c):
        """<c> x q: [a, b] becomes [ca, b/c]"""
        field = self.field
        inverse = field.inv(c)
        return QuadForm(field, [(field.mul(c, a), field.mul(b, inverse)) for a, b in self.blocks])

    def arf(self):
        """Sum of a*b over the blocks; its class modulo wp is the Arf invariant"""
        field = self.field
        total = field.zero()
        for a, b in self.blocks:
            total = field.add(total, field.mul(a, b))
        return total

    def text(self):
        field = self.field
        if self.pfister is not None and self.pfister:
            return " + ".join(
                "<<" + ", ".join(field.format(a) for a in slots) + f"; {field.format(entry)}]]"
                for slots, entry in self.pfister
            )
        if not self.blocks:
            return "0"
        return " + ".join(f"[{field.format(a)}, {field.format(b)}]" for a, b in self.blocks)

    def __repr__(self):
        return f"QuadForm({self.text()})"


def kato_iso(obj, inverse=False, degree=None):
    """
    Termwise correspondence c dlog a_1 ^ ... ^ dlog a_m <-> <<a_1, ..., a_m; c]]

    Args:
        obj: a LogForm or CohomClass, or a QuadForm when inverse is set
        inverse (bool): map a quadratic form back to a form
        degree (int): with inverse, the degree of the result; degree 0 reads
            the Arf invariant and needs no Pfister presentation

    Returns:
        QuadForm or LogForm

    Raises:
        NonLogarithmicTerm: on a form that is neither a sum of basis terms
            nor a quadratic form with a Pfister presentation
    """
    if not inverse:
        form = getattr(obj, 'representative', obj)
        if not isinstance(form, LogForm):
            raise NonLogarithmicTerm(f"Not a logarithmic form: {obj!r}")
        field = form.field
        result = QuadForm.hyperbolic(field)
        for labels, coef in form.items():
            slots = [field.basis_element(label) for label in labels]
            result = result + QuadForm.pfister_form(field, slots, coef)
        return result

    q = obj
    field = q.field
    if q.pfister is None:
        if degree == 0:
            return LogForm.term(field, q.arf())
        raise NonLogarithmicTerm("Quadratic form without a Pfister presentation")
    if not q.pfister:
        return LogForm.zero(field, degree or 0)
    sizes = {len(slots) for slots, _entry in q.pfister}
    if len(sizes) != 1 or (degree is not None and sizes != {degree}):
        raise NonLogarithmicTerm("Pfister presentations of different folds")
    result = LogForm.zero(field, sizes.pop())
    for slots, entry in q.pfister:
        if not entry or not all(slots):
            continue
        result = result + dlog_wedge(field, slots, entry)
    return result


def _is_square(field, a):
    try:
        return set(field.frobenius_decompose(a)) <= {()}
    except KatoMilneError:
        return False


def _in_wp_image(field, c, bound, max_candidates):
    """True when the degree 0 class of c is decided to vanish"""
    if not c:
        return True
    try:
        return is_zero(LogForm.term(field, c), bound, max_candidates).verdict == ZERO
    except KatoMilneError:
        return False


def _simplify(q, chain, bound, max_candidates):
    field = q.field
    if q.pfister is not None:
        merged = {}
        for slots, entry in q.pfister:
            if not entry:
                chain.append("drop <<...; 0]]")
                continue
            if any(not a or _is_square(field, a) for a in slots):
                chain.append("drop Pfister form with a square slot")
                continue
            key = tuple(slots)
            if key in merged:
                chain.append("merge Pfister forms with equal slots")
                merged[key] = field.add(merged[key], entry)
            else:
                merged[key] = entry
        kept = [Pfister(slots, entry) for slots, entry in merged.items() if entry]
        if not kept:
            return QuadForm.hyperbolic(field)
        if len(kept) < len(q.pfister):
            q = QuadForm.hyperbolic(field)
            for slots, entry in kept:
                q = q + QuadForm.pfister_form(field, slots, entry)

    blocks = {}
    order = []
    changed = False
    for a, b in q.blocks:
        if not a or not b:
            chain.append("drop hyperbolic block")
            changed = True
            continue
        if a in blocks:
            chain.append("merge blocks with equal first entry")
            blocks[a] = field.add(blocks[a], b)
            changed = True
        else:
            blocks[a] = b
            order.append(a)
    result = []
    for a in order:
        b = blocks[a]
        if not b:
            chain.append("drop hyperbolic block")
            changed = True
            continue
        if _in_wp_image(field, field.mul(a, b), bound, max_candidates):
            chain.append("drop block with Arf invariant in the wp image")
            changed = True
            continue
        result.append((a, b))
    if not changed:
        return q
    return QuadForm(field, result)


def witt_simplify(q, bound=8, max_candidates=200000):
    """
    Apply the Witt relations until nothing changes

    Pfister forms with equal slots are merged and forms with a zero entry or
    a square slot dropped. Binary blocks with equal first entry are merged,
    [a, 0], [0, b] and blocks with a*b in the wp image are dropped.

    Args:
        q (QuadForm): the form
        bound (int): factor search bound for the wp image test

    Returns:
        QuadForm: a Witt equivalent form
    """
    chain = []
    while True:
        size = len(chain)
        q = _simplify(q, chain, bound, max_candidates)
        if len(chain) == size:
            return q


class _QuadSpace:
    """F^n with Q(v) = sum over i <= j of coef[(i, j)] v_i v_j"""

    def __init__(self, field, size, coef):
        self.field = field
        self.size = size
        self.coef = {key: value for key, value in coef.items() if value}

    @classmethod
    def from_blocks(cls, field, blocks):
        coef = {}
        for k, (a, b) in enumerate(blocks):
            coef[(2 * k, 2 * k)] = a
            coef[(2 * k, 2 * k + 1)] = field.one()
            coef[(2 * k + 1, 2 * k + 1)] = b
        return cls(field, 2 * len(blocks), coef)

    def unit(self, i):
        field = self.field
        return [field.one() if k == i else field.zero() for k in range(self.size)]

    def value(self, v):
        field = self.field
        total = field.zero()
        for (i, j), c in self.coef.items():
            if v[i] and v[j]:
                total = field.add(total, field.mul(c, field.mul(v[i], v[j])))
        return total

    def polar(self, u, v):
        field = self.field
        total = field.zero()
        for (i, j), c in self.coef.items():
            if i == j:
                continue
            cross = field.add(field.mul(u[i], v[j]), field.mul(u[j], v[i]))
            if cross:
                total = field.add(total, field.mul(c, cross))
        return total

    def _combine(self, v, *terms):
        field = self.field
        result = list(v)
        for scalar, w in terms:
            if not scalar:
                continue
            result = [field.add(x, field.mul(scalar, y)) for x, y in zip(result, w)]
        return result

    def reduce(self, first=None):
        """
        Split into binary blocks along a symplectic basis of the polar form

        Args:
            first (list): optional vector used as the first basis vector

        Returns:
            list: blocks [Q(e), Q(f)]

        Raises:
            SingularTransfer: if the polar form is degenerate
        """
        field = self.field
        basis = [self.unit(i) for i in range(self.size)]
        if first is not None:
            pivot = next(i for i, value in enumerate(first) if value)
            basis = [list(first)] + [v for i, v in enumerate(basis) if i != pivot]
        blocks = []
        while basis:
            e = basis.pop(0)
            partner = None
            for index, w in enumerate(basis):
                pairing = self.polar(e, w)
                if pairing:
                    partner = index
                    break
            if partner is None:
                raise SingularTransfer("Degenerate polar form")
            w = basis.pop(partner)
            f = [field.mul(value, field.inv(pairing)) for value in w]
            blocks.append((self.value(e), self.value(f)))
            basis = [
                self._combine(v, (self.polar(v, f), e), (self.polar(v, e), f))
                for v in basis
            ]
        return blocks


def scharlau_transfer_gram(q, place):
    """
    Transfer of a form over F(p) to F along the functional t_p

    Each block [a, b] on F(p)^2 is viewed as a quadratic space of dimension
    2d over F with the basis 1, x, ..., x^(d-1) in each coordinate and the
    values pushed through t_p, then split into binary blocks.

    Args:
        q (QuadForm): form over the residue field of place
        place (FinitePlace): the place p

    Returns:
        QuadForm: form over F of dimension 2d times the number of blocks

    Raises:
        SingularTransfer: if the transferred polar form is degenerate
    """
    if place.is_infinite:
        raise KatoMilneError("The transfer at inf is the identity")
    residue = place.residue_field()
    if q.field != residue:
        raise FieldMismatch(f"Form is not over {residue.describe()}")
    tower, d = place.tower, place.degree
    ground = TowerField(tower, place.level - 1)
    x = Poly.variable(tower, place.level)

    def tp(value):
        return t_p_functional(value % place.poly, place)

    blocks = []
    for a, b in q.blocks:
        coef = {}
        for i in range(d):
            coef[(i, i)] = tp(a * x ** (2 * i))
            coef[(d + i, d + i)] = tp(b * x ** (2 * i))
            for j in range(d):
                coef[(i, d + j)] = tp(x ** (i + j))
        blocks.extend(_QuadSpace(ground, 2 * d, coef).reduce())
    return QuadForm(ground, blocks)


def _element_degree(a):
    if isinstance(a, Poly):
        return max((_element_degree(c) for c in a.coeffs().values()), default=0) + max(a.degree, 0)
    degrees = [sum(monom) for monom in a.numer.keys()] + [sum(monom) for monom in a.denom.keys()]
    return max(degrees, default=0)


def _candidates(field, search_degree):
    """0, 1 and the monomials in the 2-basis up to search_degree"""
    values = [field.zero(), field.one()]
    seen = set()
    basis = [field.basis_element(label) for label in field.labels]
    for degree in range(1, search_degree + 1):
        for combo in itertools.combinations_with_replacement(range(len(basis)), degree):
            value = field.one()
            for index in combo:
                value = field.mul(value, basis[index])
            if value not in seen:
                seen.add(value)
                values.append(value)
    return values


def _split_isotropic(q, search_degree, max_candidates, chain):
    """Remove hyperbolic planes found by a bounded isotropy search"""
    field = q.field
    blocks = list(q.blocks)
    values = _candidates(field, search_degree)
    while blocks:
        space = _QuadSpace.from_blocks(field, blocks)
        found = None
        for count, v in enumerate(itertools.product(values, repeat=space.size)):
            if count >= max_candidates:
                break
            if any(v) and not space.value(list(v)):
                found = list(v)
                break
        if found is None:
            break
        chain.append("split a hyperbolic plane")
        blocks = [(a, b) for a, b in space.reduce(first=found)[1:]]
    return QuadForm(field, blocks)


def witt_equal_bounded(q1, q2, bound=None, degree=None, max_candidates=MAX_ISOTROPY_CANDIDATES):
    """
    Compare two forms in the Witt group, or in a graded piece of it

    The difference is simplified first. NOT_EQUAL is only returned on an
    invariant mismatch: the Arf class e1, then the class e2 = sum a*b dlog a
    of a difference in I^2. A difference in I^3 is hyperbolic below
    dimension 8 and over fields whose 2-basis has at most one element.
    Otherwise hyperbolic planes are split off by a bounded isotropy search.

    Args:
        q1 (QuadForm): first form
        q2 (QuadForm): second form over the same field
        bound (int): coefficient degree of the isotropy search; by default
            twice the largest input degree plus 2
        degree (int): 1 or 2 to compare in I^degree / I^(degree+1)
        max_candidates (int): budget of the isotropy search

    Returns:
        WittVerdict: EQUAL with the chain of steps, NOT_EQUAL with the
        invariant, or INCONCLUSIVE
    """
    if q1.field != q2.field:
        raise FieldMismatch("Quadratic forms over different fields")
    if degree not in (None, 1, 2):
        raise KatoMilneError(f"Unsupported graded degree: {degree}")
    field = q1.field
    if bound is None:
        entries = [value for a, b in q1.blocks + q2.blocks for value in (a, b) if value]
        bound = 2 * max((_element_degree(value) for value in entries), default=0) + 2
    factor_bound = max(bound, 8)
    chain = []
    diff = q1 + q2
    while True:
        size = len(chain)
        diff = _simplify(diff, chain, factor_bound, 200000)
        if len(chain) == size:
            break
    if not diff.blocks:
        return WittVerdict(EQUAL, {"chain": chain})

    e1 = is_zero(LogForm.term(field, diff.arf()), factor_bound)
    if e1.verdict == NONZERO:
        return WittVerdict(NOT_EQUAL, {"invariant": "e1", "class": field.format(diff.arf()),
                                       "inner": e1.witness})
    if e1.verdict == UNKNOWN:
        return WittVerdict(INCONCLUSIVE, {"invariant": "e1", "chain": chain})
    chain.append("e1 = 0")
    if degree == 1 or not field.labels:
        return WittVerdict(EQUAL, {"chain": chain})

    e2 = LogForm.zero(field, 1)
    for a, b in diff.blocks:
        if a and b:
            e2 = e2 + dlog_expand(field, a).scale(field.mul(a, b))
    v2 = is_zero(e2, factor_bound)
    if v2.verdict == NONZERO:
        return WittVerdict(NOT_EQUAL, {"invariant": "e2", "class": e2.text(), "inner": v2.witness})
    if v2.verdict == UNKNOWN:
        return WittVerdict(INCONCLUSIVE, {"invariant": "e2", "chain": chain})
    chain.append("e2 = 0")
    if degree == 2:
        return WittVerdict(EQUAL, {"chain": chain})
    if len(field.labels) <= 1:
        chain.append("I^3 = 0 over a field with a 2-basis of one element")
        return WittVerdict(EQUAL, {"chain": chain})
    if diff.dimension < 8:
        chain.append(f"form in I^3 of dimension {diff.dimension} < 8")
        return WittVerdict(EQUAL, {"chain": chain})
    rest = _split_isotropic(diff, bound, max_candidates, chain)
    if rest.dimension < 8:
        chain.append(f"form in I^3 of dimension {rest.dimension} < 8")
        return WittVerdict(EQUAL, {"chain": chain})
    return WittVerdict(INCONCLUSIVE, {"dimension": rest.dimension, "chain": chain})


def frobenius_reciprocity(b, q, place, bound=None):
    """
    Compare t_p'(<b> x q) with <b> x t_p'(q) for b in F*

    Args:
        b (FracElement): nonzero element of the ground field
        q (QuadForm): form over the residue field of place
        place (FinitePlace): the place

    Returns:
        WittVerdict: the comparison
    """
    residue = place.residue_field()
    ground = TowerField(place.tower, place.level - 1)
    left = scharlau_transfer_gram(BilForm(residue, [residue.lift(b)]).tensor(q), place)
    right = BilForm(ground, [b]).tensor(scharlau_transfer_gram(q, place))
    return witt_equal_bounded(left, right, bound)
