"""
Families generated by polynomial coefficients: L_0 and L_d
"""

from .subgroup_kind import SubgroupKind
from ..forms import dlog_wedge


class SubgroupL0(SubgroupKind):
    """h dlog c_1 ^ ... ^ dlog c_(m-1) ^ dlog f_m with c_i constants,
    f_m a constant or x, h in F[x] (h in xF[x] when f_m = x).

    params: h, constants (list of c_i), last (a constant, 'x' or None for m = 0)
    """

    name = 'L0'

    def validate(self, spec, params):
        h = self.poly(spec, params.get('h', 0))
        constants = list(params.get('constants', []))
        last = params.get('last')
        for i, c in enumerate(constants, start=1):
            self.require_ground(spec, c, f"c_{i}")
        if last is None:
            if constants:
                self.fail("f_m is required when constants are given")
        elif isinstance(last, str) and last == 'x':
            if h.coeff(0):
                self.fail("h must lie in xF[x] when f_m = x")
        else:
            self.require_ground(spec, last, "f_m")

    def build(self, spec, params):
        h = self.poly(spec, params.get('h', 0))
        arguments = list(params.get('constants', []))
        last = params.get('last')
        if isinstance(last, str) and last == 'x':
            arguments.append(spec.tower.gen(spec.level))
        elif last is not None:
            arguments.append(last)
        return dlog_wedge(self.field(spec), arguments, h.to_element())


class SubgroupLd(SubgroupKind):
    """(h / u^e) dlog f_1 ^ ... ^ dlog f_m with f_i nonzero of degree <= d.
    u is a monic polynomial of degree <= d.

    params: h, u, e, args (list of f_i)
    """

    name = 'Ld'

    def validate(self, spec, params):
        d = spec.d
        if d is None or d < 1:
            self.fail("d >= 1 is required")
        u = self.poly(spec, params.get('u', 1))
        if not u.is_monic() or u.degree > d:
            self.fail(f"u must be monic of degree <= {d}")
        if params.get('e', 0) < 0:
            self.fail("e >= 0 is required")
        for i, f in enumerate(params.get('args', []), start=1):
            f = self.poly(spec, f)
            if not f:
                self.fail(f"f_{i} must be nonzero")
            if f.degree > d:
                self.fail(f"f_{i} has degree {f.degree} > {d}")

    def build(self, spec, params):
        h = self.poly(spec, params.get('h', 0)).to_element()
        u = self.poly(spec, params.get('u', 1)).to_element()
        arguments = [self.poly(spec, f).to_element() for f in params.get('args', [])]
        return dlog_wedge(self.field(spec), arguments, h / u ** params.get('e', 0))
