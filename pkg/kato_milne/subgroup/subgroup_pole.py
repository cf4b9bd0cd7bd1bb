"""
Families with poles at one place: S_p, the tilde variant for inseparable p,
and the S_(1/x) family at inf
"""

from .subgroup_kind import SubgroupKind


class SubgroupSp(SubgroupKind):
    """(h / p^e) dlog t_I with I in the basis of F; x h dlog t_I at inf.

    params: h, e, labels
    """

    name = 'Sp'

    def allowed_labels(self, spec):
        return spec.tower.labels(spec.level - 1)

    def validate(self, spec, params):
        self.require_place(spec, finite=False)
        self.require_labels(params.get('labels', ()), self.allowed_labels(spec))
        if params.get('e', 0) < 0:
            self.fail("e >= 0 is required")

    def build(self, spec, params):
        h = self.poly(spec, params.get('h', 0)).to_element()
        place = spec.place
        if place.is_infinite:
            coefficient = spec.tower.gen(spec.level) * h
        else:
            coefficient = h / place.uniformizer ** params.get('e', 0)
        return self.basis_form(spec, coefficient, params.get('labels', ()))


class SubgroupSpTilde(SubgroupSp):
    """(h / p^e) dlog t_I with I in the residue basis of an inseparable p"""

    name = 'Sp_tilde'

    def allowed_labels(self, spec):
        return spec.place.residue_labels

    def validate(self, spec, params):
        self.require_place(spec)
        if spec.place.is_separable:
            self.fail("p must be inseparable")
        super().validate(spec, params)
