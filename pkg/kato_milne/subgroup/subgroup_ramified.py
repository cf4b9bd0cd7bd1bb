"""
Families spanning the ramified part at a place: S'_(p,r), S^0_(p,r) and
their sums U_p, U_p^0
"""

from .subgroup_kind import SubgroupKind
from ..forms import LogForm


class SubgroupSprime(SubgroupKind):
    """reduce(t^J s^2) / p^r dlog t_I, and for r even also
    reduce(t^J s^2) / p^r dlog t_I ^ dlog p, with J + I > I.
    At inf the shape is t^J c^2 x^r dlog t_I (^ dlog x) with c constant.

    params: s, labels, J, with_dlog_p
    """

    name = 'Sprime_pr'

    def allowed_labels(self, spec):
        if spec.place.is_infinite:
            return spec.tower.labels(spec.level - 1)
        return spec.place.residue_labels

    def validate(self, spec, params):
        self.require_place(spec, finite=False)
        r = spec.r
        if r is None or r < 1:
            self.fail("r >= 1 is required")
        allowed = self.allowed_labels(spec)
        labels = self.require_labels(params.get('labels', ()), allowed)
        J = self.require_labels(params.get('J', ()), allowed, what="J")
        with_dlog_p = params.get('with_dlog_p', False)
        s = params.get('s', 0)
        if spec.place.is_infinite:
            s = spec.tower.element(s) if isinstance(s, int) else s
            if s and spec.tower.level_of(s) >= spec.level:
                self.fail("c must be a constant")
        elif self.poly(spec, s).degree >= spec.place.degree:
            self.fail(f"s must have degree < {spec.place.degree}")
        if r % 2:
            if with_dlog_p:
                self.fail("r odd generators carry no dlog p")
        else:
            if not J or max(J) in labels:
                self.fail(f"J + I > I fails for J = {list(J)}, I = {list(labels)}")

    def build(self, spec, params):
        place = spec.place
        J = tuple(sorted(params.get('J', ())))
        if place.is_infinite:
            c = params.get('s', 0)
            c = spec.tower.element(c) if isinstance(c, int) else c
            coefficient = spec.tower.monomial(J) * c ** 2 * spec.tower.gen(spec.level) ** spec.r
        else:
            s = self.poly(spec, params.get('s', 0))
            h2, _h1 = place.reduce(place.basis_lift(J) * s.square())
            coefficient = h2.to_element() / place.uniformizer ** spec.r
        return self.basis_form(spec, coefficient, params.get('labels', ()),
                               params.get('with_dlog_p', False))


class SubgroupS0(SubgroupSprime):
    """The S'_(p,r) generators of an inseparable p whose index sets avoid x"""

    name = 'S0_pr'

    def validate(self, spec, params):
        self.require_place(spec)
        if spec.place.is_separable:
            self.fail("p must be inseparable")
        super().validate(spec, params)
        if spec.place.label_x in params.get('labels', ()):
            self.fail("I_x = 0 is required")


class SubgroupUp(SubgroupKind):
    """Finite sums of S'_(p,r) generators over r >= 1.

    params: terms, a list of dicts with key r and the S'_(p,r) params
    """

    name = 'Up'
    member = SubgroupSprime

    def _member_spec(self, spec, r):
        return type(spec)(self.member.name, spec.tower, spec.level, spec.place, r, spec.d)

    def validate(self, spec, params):
        terms = params.get('terms', [])
        if not terms:
            self.fail("at least one term is required")
        degrees = set()
        member = self.member()
        for term in terms:
            member.validate(self._member_spec(spec, term.get('r')), term)
            degree = len(term.get('labels', ())) + (1 if term.get('with_dlog_p') else 0)
            degrees.add(degree)
        if len(degrees) > 1:
            self.fail("all terms must have the same degree")

    def build(self, spec, params):
        member = self.member()
        result = None
        for term in params['terms']:
            form = member.build(self._member_spec(spec, term['r']), term)
            result = form if result is None else result + form
        return result if result is not None else LogForm.zero(self.field(spec), 0)


class SubgroupUp0(SubgroupUp):
    """Finite sums of S^0_(p,r) generators"""

    name = 'Up0'
    member = SubgroupS0
