"""
Acceptance suites run by `kmc.py selftest` and by the slow tests.

Each suite takes a seed and a case count and returns a report
{suite, seed, cases, failures, details}; details lists at most
MAX_DETAILS failing cases.
"""

from .cohomology import UNKNOWN, ZERO, CohomClass, include, is_zero, retraction, support
from .exceptions import KatoMilneError
from .forms import LogForm, TowerField
from .groundfield import TowerDesc
from .localfields import local_normal_form, teichmuller_lift
from .place import InfinitePlace
from .polyring import Poly
from .residuefield import residue_field_decompose
from .sampling import (
    inseparable_places, make_rng, random_class, random_digit, random_form, random_ground,
    random_place, random_w1class,
)
from .transfers import (
    CLOSED_FORM_KINDS, reciprocity_sum, s_p_star, transfer_closed_form, transfer_input,
)
from .witt_oracle import EQUAL, NOT_EQUAL, scharlau_transfer_gram, witt_equal_bounded

__all__ = ['SUITES', 'DEFAULT_CASES', 'run_suite']

# Failing cases kept in a report
MAX_DETAILS = 10

# Samples drawn per requested case before a suite gives up on undecided ones
MAX_DRAWS = 5

# Share of closed form cases that must be decided EQUAL
MIN_EQUAL_RATIO = 0.8

# Case counts of the full acceptance runs
DEFAULT_CASES = {
    'reciprocity': 200,
    'gamma': 50,
    'closed_forms': 30,
    'roundtrip': 100,
    'exactness': 50,
    'welldefined': 100,
    'teichmuller': 5,
}


class _Report:
    """Accumulates cases and failures of a suite"""

    def __init__(self, suite, seed):
        self.suite = suite
        self.seed = seed
        self.cases = 0
        self.failures = 0
        self.details = []
        self.extra = {}

    def case(self, ok, detail=None):
        self.cases += 1
        if not ok:
            self.failures += 1
            if len(self.details) < MAX_DETAILS:
                self.details.append(detail)

    def shortfall(self, cases, detail):
        """Count the cases still missing from a run of `cases` as one failure each"""
        missing = cases - self.cases
        if missing > 0:
            self.cases += missing
            self.failures += missing
            if len(self.details) < MAX_DETAILS:
                self.details.append(dict(detail, missing=missing))

    def count(self, key, amount=1):
        self.extra[key] = self.extra.get(key, 0) + amount

    def to_json(self):
        report = {
            "suite": self.suite,
            "seed": self.seed,
            "cases": self.cases,
            "failures": self.failures,
            "details": self.details,
        }
        report.update(self.extra)
        return report


def _places(rng, tower, options, count=2):
    return [random_place(rng, tower, max_degree=3, bound=options['bound'],
                         max_candidates=options['max_candidates']) for _ in range(count)]


def suite_reciprocity(rng, tower, cases, options, report):
    """The transferred residues of random classes of degree 2 and 3 sum to zero"""
    special = inseparable_places(tower)[:1]
    for _ in range(cases):
        m = rng.choice([1, 2])
        phi = random_class(rng, tower, m, places=special + _places(rng, tower, options))
        result = reciprocity_sum(phi, options['bound'], options['max_candidates'])
        verdict = result.verdict.verdict
        if verdict == UNKNOWN:
            report.count("unknown")
        report.case(verdict == ZERO, {"class": phi.text(), "terms": result.terms,
                                      "witness": result.verdict.witness})


def suite_gamma(rng, tower, cases, options, report):
    """gamma_i is the x^(d-1) coefficient of x^(d+i-1) mod p, and the
    generating function of gamma inverts the reversed polynomial"""
    terms = 21
    for _ in range(cases):
        place = random_place(rng, tower, max_degree=5, bound=options['bound'],
                             max_candidates=options['max_candidates'], inseparable=0.1)
        d = place.degree
        x = Poly.variable(tower, place.level)
        ok = True
        for i in range(terms):
            remainder = (x ** (d + i - 1)) % place.poly
            if remainder.coeff(d - 1) != place.gamma(i):
                ok = False
                break
        for n in range(1, terms):
            total = place.gamma(n)
            for k in range(1, min(n, d) + 1):
                total = total + place.coefficient(k) * place.gamma(n - k)
            if total:
                ok = False
                break
        report.case(ok, {"place": place.text()})


def suite_closed_forms(rng, tower, cases, options, report):
    """Gram transfers agree with the closed forms in the Witt group"""
    special = inseparable_places(tower)
    for kind in CLOSED_FORM_KINDS:
        for _ in range(cases):
            if kind == 'insep_const':
                place = rng.choice(special)
                i = 0
            else:
                place = random_place(rng, tower, max_degree=3, bound=options['bound'],
                                     max_candidates=options['max_candidates'])
                while kind == 'x_pfister' and place.degree == 1 and not place.coefficient(1):
                    place = random_place(rng, tower, max_degree=3, bound=options['bound'],
                                         max_candidates=options['max_candidates'])
                i = rng.randint(1 if kind == 'x_pfister' else 0, 4)
            a = random_ground(rng, tower, place.level - 1, 1, nonzero=True)
            closed = transfer_closed_form(kind, a, i, place)
            gram = scharlau_transfer_gram(transfer_input(kind, a, i, place), place)
            result = witt_equal_bounded(gram, closed)
            if result.verdict == EQUAL:
                report.count(f"{kind}_equal")
            report.case(result.verdict != NOT_EQUAL, {
                "kind": kind, "place": place.text(), "a": tower.format(a), "i": i,
                "witness": result.witness,
            })
        if cases:
            equal = report.extra.get(f"{kind}_equal", 0)
            report.case(equal >= MIN_EQUAL_RATIO * cases, {
                "kind": kind, "check": "equal_ratio", "equal": equal, "cases": cases,
            })


def suite_roundtrip(rng, tower, cases, options, report):
    """Normal forms are reproduced from their representatives, and a single
    entry perturbation is detected"""
    special = inseparable_places(tower)
    for _ in range(cases):
        choices = special + _places(rng, tower, options, 1) + [InfinitePlace(tower)]
        place = rng.choice(choices)
        m = rng.choice([1, 2]) if len(place.local_labels) >= 2 else 1
        w = random_w1class(rng, place, m)
        again = local_normal_form(w.representative(), place)
        perturbed = _perturb(rng, w)
        moved = local_normal_form(perturbed.representative(), place)
        report.case(again == w and moved != w, {"place": place.text(), "normal_form": w.to_json()})


def _perturb(rng, w):
    """A normal form differing from w in exactly one entry"""
    place = w.place
    value = Poly.constant(place.tower, place.level, 1)
    u, v = dict(w.u), dict(w.v)
    phi_prime = w.phi_prime
    if u and rng.random() < 0.5:
        key = rng.choice(sorted(u))
        u[key] = u[key] + value
    elif v:
        key = rng.choice(sorted(v))
        v[key] = v[key] + value
    else:
        labels = tuple(sorted(place.residue_labels))[:w.m]
        if len(labels) == w.m:
            key = (0, labels, ())
            u[key] = u[key] + value if key in u else value
        else:
            residue = place.residue_field()
            coef = place.tower.gen(1)
            phi_prime = phi_prime + LogForm.term(residue, coef, tuple(sorted(place.residue_labels))[:w.m - 1])
    return type(w)(place, w.m, u, v, phi_prime)


def suite_exactness(rng, tower, cases, options, report):
    """Inclusion, injectivity, surjectivity of the transfers and descent of
    classes without residues"""
    bound, budget = options['bound'], options['max_candidates']
    ground = TowerField(tower, tower.top - 1)
    top = TowerField(tower, tower.top)
    inf = InfinitePlace(tower)
    for _ in range(cases):
        m = rng.choice([0, 1]) if ground.labels else 0
        psi = CohomClass(random_form(rng, ground, m))
        lifted = include(psi)

        places = support(lifted, bound, budget) or [inf]
        unramified = all(local_normal_form(lifted, place).is_trivial() for place in places)
        report.case(unramified, {"check": "inclusion", "class": psi.text()})

        inner = is_zero(psi, bound, budget)
        outer = is_zero(lifted, bound, budget)
        if UNKNOWN in (inner.verdict, outer.verdict):
            report.count("undecided")
        else:
            report.case(inner.verdict == outer.verdict, {"check": "injectivity", "class": psi.text()})

        image = s_p_star(local_normal_form(lifted.wedge(LogForm.term(top, top.one(), (tower.top,))), inf))
        report.case(_same_class(image, psi, bound, budget), {"check": "surjectivity", "class": psi.text()})

        noise = _exact_noise(rng, top, m)
        descended = retraction(lifted + CohomClass(noise))
        report.case(_same_class(descended, psi, bound, budget), {"check": "descent", "class": psi.text()})


def _exact_noise(rng, field, m):
    """wp(omega) + d(eta) for random omega and eta"""
    noise = random_form(rng, field, m).artin_schreier()
    if m >= 1:
        noise = noise + random_form(rng, field, m - 1).exterior_d()
    return noise


def _same_class(a, b, bound, budget):
    """True when the difference is shown to be zero"""
    return is_zero(a + b, bound, budget).verdict == ZERO


def suite_welldefined(rng, tower, cases, options, report):
    """Residues do not change when wp(omega) + d(eta) is added"""
    bound, budget = options['bound'], options['max_candidates']
    top = TowerField(tower, tower.top)
    special = inseparable_places(tower)[:1]
    draws = 0
    while report.cases < cases and draws < MAX_DRAWS * cases:
        draws += 1
        m = rng.choice([1, 2])
        phi = random_class(rng, tower, m, places=special + _places(rng, tower, options, 1), generators=2)
        moved = phi + CohomClass(_exact_noise(rng, top, m))
        places = support(phi, bound, budget)
        others = support(moved, bound, budget)
        if places is None or others is None:
            report.count("undecided")
            continue
        ok = True
        for place in {place.key(): place for place in places + others}.values():
            w1 = local_normal_form(phi, place)
            w2 = local_normal_form(moved, place)
            if w1.u != w2.u or w1.v != w2.v:
                ok = False
            elif w1.phi_prime is not None:
                difference = CohomClass(w1.phi_prime + w2.phi_prime)
                ok = ok and is_zero(difference, bound, budget).verdict == ZERO
        ok = ok and reciprocity_sum(moved, bound, budget).verdict.verdict == ZERO
        report.case(ok, {"class": phi.text(), "perturbed": moved.text()})
    report.shortfall(cases, {"check": "decided", "draws": draws})


def _alternative_lift(rng, u, place, depth):
    """Teichmuller lift with a random representative chosen at depth 0"""
    if depth == 0:
        return u % place.poly + place.poly * random_digit(rng, place)
    parts, _k = residue_field_decompose(u % place.poly, place)
    total = place.zero_digit()
    for J, part in parts.items():
        total = total + place.basis_lift(J) * _alternative_lift(rng, part, place, depth - 1).square()
    return total


def suite_teichmuller(rng, tower, cases, options, report):
    """Lifts do not depend on the choices made and are multiplicative
    modulo p^(2^N)"""
    depth = min(3, options['teich_depth'])
    special = inseparable_places(tower)[:1]
    for index in range(cases):
        if index < len(special):
            place = special[index]
        else:
            place = random_place(rng, tower, max_degree=2, bound=options['bound'],
                                 max_candidates=options['max_candidates'], inseparable=0)
        for N in range(depth + 1):
            modulus = place.poly ** (2 ** N)
            u, w = random_digit(rng, place), random_digit(rng, place)
            lift = teichmuller_lift(u, place, N)
            other = _alternative_lift(rng, u, place, N)
            report.case(not ((lift + other) % modulus), {
                "check": "choice", "place": place.text(), "N": N})
            product = (lift * teichmuller_lift(w, place, N)) % modulus
            target = teichmuller_lift(place.residue_mul(u, w), place, N)
            report.case(not ((product + target) % modulus), {
                "check": "multiplicativity", "place": place.text(), "N": N})


SUITES = {
    'reciprocity': suite_reciprocity,
    'gamma': suite_gamma,
    'closed_forms': suite_closed_forms,
    'roundtrip': suite_roundtrip,
    'exactness': suite_exactness,
    'welldefined': suite_welldefined,
    'teichmuller': suite_teichmuller,
}


def run_suite(name, seed=0, cases=None, tower=None, bound=8, max_candidates=200000, teich_depth=4):
    """
    Run an acceptance suite

    Args:
        name (str): suite name, a key of SUITES
        seed (int): seed of the samplers
        cases (int): case count, DEFAULT_CASES by default
        tower (TowerDesc): tower with at least one ground variable; TowerDesc(1) by default
        bound (int): factor search bound
        max_candidates (int): factor search budget
        teich_depth (int): largest Teichmuller depth checked, capped at 3

    Returns:
        dict: the report {suite, seed, cases, failures, details, ...}

    Raises:
        KatoMilneError: on an unknown suite or a tower without ground variables
    """
    if name not in SUITES:
        raise KatoMilneError(f"Unknown suite: {name}. Available: {', '.join(SUITES)}")
    tower = TowerDesc(1) if tower is None else tower
    if tower.K < 1:
        raise KatoMilneError("Self tests need a tower with at least one ground variable")
    cases = DEFAULT_CASES[name] if cases is None else cases
    options = {'bound': bound, 'max_candidates': max_candidates, 'teich_depth': teich_depth}
    report = _Report(name, seed)
    SUITES[name](make_rng(seed), tower, cases, options, report)
    return report.to_json()
