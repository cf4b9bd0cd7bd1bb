"""
Completions of F(x) at its places: partial fractions, the rewriting engine
producing unique local normal forms, residue maps and Teichmuller lifts
"""

from typing import NamedTuple

from .exceptions import KatoMilneError, PlaceNotClassified, UnsupportedDegree
from .forms import LocalField, LogForm, TowerField, dlog_expand
from .place import Place
from .polyring import Poly, invert_mod
from .residuefield import residue_field_decompose, residue_field_recompose

__all__ = [
    'LaurentExpansion', 'Witness', 'W1Class', 'Step1Result',
    'partial_fractions', 'residue_field_decompose', 'residue_field_recompose',
    'step1_rewrite', 'local_normal_form', 'residue', 'teichmuller_lift',
    'to_local', 'to_global',
]


class Witness(NamedTuple):
    """A form discarded by a rewriting step.
    kind is 'wp' (an Artin-Schreier image), 'd' (an exact form), 'hensel'
    (positive valuation) or 'residual' (coming from the residue field)."""
    kind: str
    form: LogForm


class LaurentExpansion:
    """c = sum over l of digits[l] * uniformizer^l + tail.
    Digits have degree < deg p; the tail is an exact element of F(x) with
    positive valuation."""

    def __init__(self, place, digits, tail):
        self.place = place
        self.digits = {l: c for l, c in digits.items() if c}
        self.tail = tail

    @property
    def order(self):
        """Lowest exponent with a nonzero digit, None if there is none"""
        return min(self.digits) if self.digits else None

    def digit(self, l):
        return self.digits.get(l, self.place.zero_digit())

    def recombine(self):
        total = self.tail
        for l, c in self.digits.items():
            total += c.to_element() * self.place.power(l)
        return total

    def __repr__(self):
        parts = ", ".join(f"{l}: {c}" for l, c in sorted(self.digits.items()))
        return f"LaurentExpansion({self.place.text()}, {{{parts}}})"


def partial_fractions(c, place):
    """
    Exact expansion of c at a place down to order 0

    At a finite place p with c = N/(p^L W), p not dividing W, the digits are
    the base-p digits of A = N * W^-1 mod p^(L+1). At inf they are the
    coefficients of the polynomial part of N/D.

    Args:
        c (FracElement): element of F(x)
        place (Place): the place

    Returns:
        LaurentExpansion: digits for exponents -L..0 and the tail
    """
    if not isinstance(place, Place):
        raise PlaceNotClassified(f"Not a classified place: {place!r}")
    tower = place.tower
    if not c:
        return LaurentExpansion(place, {}, tower.zero)
    numer, denom = Poly.split_fraction(tower, c, place.level)
    if place.is_infinite:
        quotient, remainder = divmod(numer, denom)
        digits = {
            -k: Poly.constant(tower, place.level, value)
            for k, value in quotient.coeffs().items()
        }
        return LaurentExpansion(place, digits, remainder.to_element() / denom.to_element())
    p = place.poly
    order = 0
    rest = denom
    while True:
        quotient, remainder = divmod(rest, p)
        if remainder:
            break
        rest = quotient
        order += 1
    modulus = p ** (order + 1)
    A = (numer * invert_mod(rest, modulus)) % modulus
    digits = {}
    for exponent in range(-order, 1):
        A, digit = divmod(A, p)
        digits[exponent] = digit
    expansion = LaurentExpansion(place, digits, tower.zero)
    expansion.tail = c - expansion.recombine()
    return expansion


def to_local(form, place):
    """Rewrite a form over F(x) in the local 2-basis of place"""
    local = LocalField(place)
    if form.field == local:
        return form
    result = LogForm.zero(local, form.degree)
    for labels, coef in form.items():
        piece = LogForm.term(local, coef)
        for label in labels:
            piece = piece.wedge(LogForm(local, 1, {
                (key,): value for key, value in place.dlog_map(label).items()
            }))
        result = result + piece
    return result


def to_global(form, place):
    """Rewrite a local form over F(x) in the global basis t_1, ..., x"""
    tower = place.tower
    glob = TowerField(tower, place.level)
    if form.field == glob:
        return form
    result = LogForm.zero(glob, form.degree)
    for labels, coef in form.items():
        piece = LogForm.term(glob, coef)
        for label in labels:
            if label == place.label_pi:
                piece = piece.wedge(dlog_expand(glob, place.uniformizer))
            else:
                piece = piece.wedge(LogForm.term(glob, tower.one, (label,)))
        result = result + piece
    return result


class W1Class:
    """Normal form of a class in the ramified part of the cohomology of a
    completion: u-entries, v-entries and phi_prime.

    u maps (r, L, J) to u_(r,L,J), with L free of the uniformizer and J a
    residue index set; the term is reduce(t^J u^2) / p^(2r+1) dlog t_L.
    v maps (r, I, J) to v_(r,I,J), J nonempty with max(J) not in I; the term
    is reduce(t^J v^2) / p^(2r) dlog t_I. phi_prime is a form of degree m-1
    over the residue field, None when m = 0.
    """

    def __init__(self, place, m, u=None, v=None, phi_prime=None, witnesses=None):
        self.place = place
        self.m = m
        self.u = {key: value for key, value in (u or {}).items() if value}
        self.v = {key: value for key, value in (v or {}).items() if value}
        if phi_prime is None and m >= 1:
            phi_prime = LogForm.zero(place.residue_field(), m - 1)
        self.phi_prime = phi_prime
        self.witnesses = list(witnesses or [])

    @property
    def local_field(self):
        return LocalField(self.place)

    def is_trivial(self):
        """Structurally zero; phi_prime is compared as a form"""
        return not self.u and not self.v and not self.phi_prime

    def _entry_term(self, J, value, exponent, labels):
        place = self.place
        h2, _h1 = place.reduce(place.basis_lift(J) * value.square())
        return LogForm.term(self.local_field, h2.to_element() * place.power(-exponent), labels)

    def representative(self):
        """Local form with the given normal form"""
        local = self.local_field
        result = LogForm.zero(local, self.m)
        for (r, L, J), value in sorted(self.u.items()):
            result = result + self._entry_term(J, value, 2 * r + 1, L)
        for (r, I, J), value in sorted(self.v.items()):
            result = result + self._entry_term(J, value, 2 * r, I)
        if self.phi_prime is not None:
            pi = self.place.label_pi
            for labels, coef in self.phi_prime.items():
                result = result + LogForm.term(
                    local, self.place.residue_lift(coef), labels + (pi,))
        return result

    def representative_global(self):
        return to_global(self.representative(), self.place)

    def audit(self, form):
        """True if form equals the representative plus all witness forms exactly"""
        total = self.representative()
        for witness in self.witnesses:
            total = total + witness.form
        return to_local(form, self.place) == total

    def witness_counts(self):
        counts = {}
        for witness in self.witnesses:
            counts[witness.kind] = counts.get(witness.kind, 0) + 1
        return counts

    def __add__(self, other):
        if self.place != other.place or self.m != other.m:
            raise KatoMilneError("Normal forms at different places or degrees")
        u = dict(self.u)
        for key, value in other.u.items():
            u[key] = u[key] + value if key in u else value
        v = dict(self.v)
        for key, value in other.v.items():
            v[key] = v[key] + value if key in v else value
        phi_prime = None
        if self.phi_prime is not None:
            phi_prime = self.phi_prime + other.phi_prime
        return W1Class(self.place, self.m, u, v, phi_prime,
                       self.witnesses + other.witnesses)

    def __eq__(self, other):
        if not isinstance(other, W1Class):
            return NotImplemented
        return (self.place == other.place and self.m == other.m
                and self.u == other.u and self.v == other.v
                and self.phi_prime == other.phi_prime)

    def __hash__(self):
        return hash((self.place, self.m, frozenset(self.u.items()), frozenset(self.v.items())))

    def __repr__(self):
        return (f"W1Class({self.place.text()}, m={self.m}, u={len(self.u)}, "
                f"v={len(self.v)}, phi_prime={self.phi_prime!r})")

    def to_json(self):
        local = self.local_field
        tower = self.place.tower

        def names(labels):
            return [local.label_name(label) for label in labels]

        def entries(table):
            return [
                {"r": r, "I": names(I), "J": names(J), "coef": tower.format(value.to_element())}
                for (r, I, J), value in sorted(table.items())
            ]

        return {
            "place": self.place.text(),
            "m": self.m,
            "u": entries(self.u),
            "v": entries(self.v),
            "phi_prime": None if self.phi_prime is None else self.phi_prime.text(),
        }


class Step1Result(NamedTuple):
    """Outcome of rewriting a single term f / p^l dlog t_I"""
    u: dict
    v: dict
    polynomial_terms: dict
    witnesses: list


class _Rewriter:
    """Worklist of pole terms digit / p^l dlog t_S keyed by (l, S).
    Every move is an exact identity of local forms; the discarded pieces are
    recorded as witnesses."""

    def __init__(self, place):
        self.place = place
        self.local = LocalField(place)
        self.pending = {}
        self.u = {}
        self.v = {}
        self.order_zero = {}
        self.witnesses = []

    def push(self, l, labels, digit):
        if not digit:
            return
        table = self.order_zero if l == 0 else self.pending
        key = labels if l == 0 else (l, labels)
        table[key] = table[key] + digit if key in table else digit

    def run(self):
        while self.pending:
            top = max(l for l, _labels in self.pending)
            batch = sorted(key for key in self.pending if key[0] == top)
            for key in batch:
                digit = self.pending.pop(key)
                if digit:
                    self._process(key[0], key[1], digit)
        return self

    def _element(self, digit, exponent):
        return digit.to_element() * self.place.power(-exponent)

    def _process(self, l, labels, f):
        place = self.place
        parts, k = residue_field_decompose(f, place)
        self.push(l - 1, labels, k)
        pi = place.label_pi
        for J, part in parts.items():
            if l % 2 == 0:
                e = l // 2
                if not J:
                    b = self._element(part, e)
                    self.witnesses.append(Witness('wp', LogForm.term(self.local, b, labels).artin_schreier()))
                    self.push(e, labels, part)
                elif max(J) not in labels:
                    self._record(self.v, e, labels, J, part, l)
                else:
                    for target in self._shift(J, part, l, labels, max(J)):
                        self._record(self.v, e, target, J, part, l)
            else:
                e = (l - 1) // 2
                if pi not in labels:
                    self._record(self.u, e, labels, J, part, l)
                else:
                    for target in self._shift(J + (pi,), part, l, labels, pi):
                        self._record(self.u, e, target, J, part, l)

    def _record(self, table, r, labels, J, value, l):
        key = (r, labels, J)
        table[key] = table[key] + value if key in table else value
        _h2, h1 = self.place.reduce(self.place.basis_lift(J) * value.square())
        self.push(l - 1, labels, h1)

    def _shift(self, K, part, l, labels, pivot):
        """a dlog t_S with a = t^K c^2 and pivot in K and S equals
        d(a dlog t_(S - pivot)) plus the terms with pivot replaced by k in K - S"""
        monomial = self.local.monomial(K)
        if self.place.label_pi in K:
            # t^K already carries one power of the uniformizer
            a = monomial * self._element(part, (l + 1) // 2) ** 2
        else:
            a = monomial * self._element(part, l // 2) ** 2
        rest = tuple(label for label in labels if label != pivot)
        self.witnesses.append(Witness('d', LogForm.term(self.local, a, rest).exterior_d()))
        return [tuple(sorted(rest + (k,))) for k in K if k not in labels]

    def tables(self):
        clean = lambda table: {key: value for key, value in table.items() if value}
        return clean(self.u), clean(self.v)


def step1_rewrite(f, l, labels, place):
    """
    Rewrite f / p^l dlog t_I into normal form entries plus polynomial terms

    Args:
        f (Poly): digit, deg f < deg p
        l (int): pole order
        labels (tuple): local index set I
        place (Place): the place

    Returns:
        Step1Result: u and v entries, the polynomial terms {I: f_I} and the
        witnesses of every move
    """
    labels = tuple(sorted(labels))
    if l == 0:
        return Step1Result({}, {}, {labels: f} if f else {}, [])
    if l < 0:
        term = LogForm.term(LocalField(place), f.to_element() * place.power(-l), labels)
        return Step1Result({}, {}, {}, [Witness('hensel', term)] if f else [])
    rewriter = _Rewriter(place)
    rewriter.push(l, labels, f)
    rewriter.run()
    u, v = rewriter.tables()
    polynomial_terms = {key: value for key, value in rewriter.order_zero.items() if value}
    return Step1Result(u, v, polynomial_terms, rewriter.witnesses)


def local_normal_form(phi, place):
    """
    Unique normal form of the image of phi in the ramified part of the
    cohomology of the completion at place

    Every coefficient is expanded by partial fractions; the positive valuation
    tail is dropped (Hensel), pole terms go through the rewriting engine and
    order zero terms give phi_prime when they carry dlog of the uniformizer.

    Args:
        phi (LogForm or CohomClass): form over F(x) or over the local field
        place (Place): the place

    Returns:
        W1Class: the normal form, with witnesses

    Raises:
        UnsupportedDegree: if the degree is negative
    """
    form = getattr(phi, 'representative', phi)
    if form.degree < 0:
        raise UnsupportedDegree(f"Negative degree: {form.degree}")
    local_form = to_local(form, place)
    local = local_form.field
    rewriter = _Rewriter(place)
    for labels, coef in local_form.items():
        expansion = partial_fractions(coef, place)
        if expansion.tail:
            rewriter.witnesses.append(Witness('hensel', LogForm.term(local, expansion.tail, labels)))
        for l, digit in expansion.digits.items():
            rewriter.push(-l, labels, digit)
    rewriter.run()
    u, v = rewriter.tables()
    pi = place.label_pi
    phi_prime = None
    if form.degree >= 1:
        phi_prime = LogForm.zero(place.residue_field(), form.degree - 1)
    for labels, digit in sorted(rewriter.order_zero.items()):
        if not digit:
            continue
        if pi in labels:
            rest = tuple(label for label in labels if label != pi)
            value = place.residue_value(digit)
            phi_prime = phi_prime + LogForm.term(place.residue_field(), value, rest)
            lifted = place.residue_lift(value)
            excess = digit.to_element() - lifted
            if excess:
                rewriter.witnesses.append(Witness('hensel', LogForm.term(local, excess, labels)))
        else:
            rewriter.witnesses.append(Witness('residual', LogForm.term(local, digit.to_element(), labels)))
    return W1Class(place, form.degree, u, v, phi_prime, rewriter.witnesses)


def residue(phi, place):
    """The residue of a global class at place, as a normal form"""
    return local_normal_form(phi, place)


def teichmuller_lift(u, place, depth=4):
    """
    Lift of a residue class congruent to its Teichmuller representative
    modulo p^(2^depth)

    u is expanded in the 2-basis of the residue field, the basis elements are
    lifted to themselves (the class of x to x) and the coordinates are lifted
    recursively and squared.

    Args:
        u (Poly): digit polynomial representing the residue class
        place (Place): a finite place
        depth (int): N >= 0

    Returns:
        Poly: the lift, reduced modulo p^(2^depth)
    """
    if depth < 0:
        raise KatoMilneError(f"Invalid depth: {depth}")
    if place.is_infinite:
        return u
    if depth == 0:
        return u % place.poly
    modulus = place.poly ** (2 ** depth)
    parts, _k = residue_field_decompose(u % place.poly, place)
    total = place.zero_digit()
    for J, part in parts.items():
        lifted = teichmuller_lift(part, place, depth - 1)
        total = total + place.basis_lift(J) * lifted.square()
    return total % modulus
