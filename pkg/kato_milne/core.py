"""
Main KatoMilne application class
"""

import sys
import yaml

from .cohomology import UNKNOWN, is_zero, support
from .exceptions import ConfigurationError, DegreeZero, KatoMilneError
from .groundfield import TowerDesc
from .localfields import local_normal_form
from .parser import format_element, parse_class, parse_element, parse_place
from .place import FinitePlace
from .polyring import INCONCLUSIVE, REDUCIBLE, Poly, classify_place, gamma_seq, specialization_check
from .selftest import SUITES, run_suite
from .settings import Setting
from .transfers import admissible_transfers, reciprocity_sum, s_p_star


# Exit codes of run_command
EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNDECIDED = 2

COMMANDS = ('residue', 'normalform', 'transfer', 'reciprocity', 'iszero', 'gamma', 'classify', 'selftest')


class Session:
    """Settings of one invocation. Attributes are frozen after construction."""

    __slots__ = ('tower', 'seed', 'bound', 'teich_depth', 'max_candidates', 'json', 'verbosity',
                 '_frozen')

    def __init__(self, tower, seed, bound, teich_depth, max_candidates, json=False, verbosity=0):
        self.tower = tower
        self.seed = seed
        self.bound = bound
        self.teich_depth = teich_depth
        self.max_candidates = max_candidates
        self.json = json
        self.verbosity = verbosity
        self._frozen = True

    def __setattr__(self, name, value):
        if getattr(self, '_frozen', False):
            raise AttributeError(f"Session is immutable, cannot set '{name}'")
        object.__setattr__(self, name, value)

    def __repr__(self):
        return (f"Session(tower={self.tower.K}, seed={self.seed}, bound={self.bound}, "
                f"teich_depth={self.teich_depth}, max_candidates={self.max_candidates})")

    def log(self, level, message):
        """Print a diagnostic to stderr when the verbosity is at least level"""
        if self.verbosity >= level:
            print(message, file=sys.stderr)


class CommandResult:
    """JSON report of a command and its exit code"""

    def __init__(self, report, exit_code):
        self.report = report
        self.exit_code = exit_code

    def __repr__(self):
        return f"CommandResult({self.exit_code}, {self.report})"


class KatoMilne:
    """Main kato-milne application"""

    # Settings used when neither the configuration file nor the command line set them
    defaults = {
        'tower': 1,
        'seed': 0,
        'bound': 8,
        'teich_depth': 4,
        'max_candidates': 200000,
        'json': False,
        'verbosity': 0,
    }

    # Settings validated by a Setting rule
    numeric_settings = ['tower', 'seed', 'bound', 'teich_depth', 'max_candidates', 'verbosity']

    def __init__(self, verbosity_level=0, config_file='config.yaml', overrides=None):
        self.verbosity_level = verbosity_level
        self.config_file = config_file
        self.overrides = {key: value for key, value in (overrides or {}).items() if value is not None}
        self.config = None

    def load_config(self, required=False):
        """
        Load and validate configuration.
        A missing file means defaults, unless required is set.

        Raises:
            ConfigurationError: on invalid YAML or invalid settings
        """
        try:
            with open(self.config_file, 'r') as f:
                loaded = yaml.safe_load(f)
        except FileNotFoundError:
            if required:
                raise ConfigurationError(f"Configuration file not found: {self.config_file}")
            loaded = None
        except yaml.YAMLError as e:
            raise ConfigurationError(f"Invalid YAML in configuration file: {e}")

        if loaded is None:
            loaded = {}
        self.config = self._validate_config(loaded)
        return self.config

    def _validate_config(self, loaded):
        """Merge defaults, file and overrides, and validate each setting"""
        if not isinstance(loaded, dict):
            raise ConfigurationError("Configuration must be a dictionary")

        unknown = [key for key in loaded if key not in self.defaults]
        if unknown:
            print(f"Warning: Unknown configuration keys ignored: {', '.join(sorted(map(str, unknown)))}",
                  file=sys.stderr)

        config = dict(self.defaults)
        config.update({key: value for key, value in loaded.items() if key in self.defaults})
        config.update(self.overrides)
        if self.verbosity_level:
            config['verbosity'] = self.verbosity_level

        for setting in self.numeric_settings:
            config[setting] = Setting(setting).setget(config[setting])
        if not isinstance(config['json'], bool):
            raise ConfigurationError("Setting 'json': expected true or false")
        return config

    def session(self):
        """Build the immutable session from the validated configuration"""
        if self.config is None:
            self.load_config()
        config = self.config
        return Session(
            TowerDesc(config['tower']),
            config['seed'],
            config['bound'],
            config['teich_depth'],
            config['max_candidates'],
            config['json'],
            config['verbosity'],
        )

    def run(self, command, args):
        """Load the configuration and run a command"""
        return run_command(self.session(), command, args)


def _exit_code(verdict):
    if verdict in (UNKNOWN, INCONCLUSIVE):
        return EXIT_UNDECIDED
    return EXIT_OK


def _index(session, args):
    """The admissible index of an inseparable place, given by variable name"""
    name = args.get('index')
    if name is None:
        return None
    tower = session.tower
    if name not in tower.names[:-1]:
        raise KatoMilneError(f"Unknown ground variable: {name}")
    return tower.names.index(name) + 1


def _place(session, args):
    tower = session.tower
    return parse_place(args['place'], tower, tower.top, session.bound, session.max_candidates,
                       inseparable_index=_index(session, args), assume=args.get('assume', False))


def _residue(session, args, audit=False):
    phi = parse_class(args['class'], session.tower)
    place = _place(session, args)
    w = local_normal_form(phi, place)
    report = {"place": place.text(), "normal_form": w.to_json(), "trivial": w.is_trivial()}
    if getattr(place, "assumed", False):
        report["assumed"] = True
    if audit:
        report["witnesses"] = w.witness_counts()
        report["audit"] = w.audit(phi.representative)
    session.log(2, f"{place.text()}: {len(w.u)} u entries, {len(w.v)} v entries, "
                   f"witnesses {w.witness_counts()}")
    return report, EXIT_OK


def _command_residue(session, args):
    return _residue(session, args)


def _command_normalform(session, args):
    return _residue(session, args, audit=True)


def _command_transfer(session, args):
    phi = parse_class(args['class'], session.tower)
    place = _place(session, args)
    if args.get('all_indices'):
        results = admissible_transfers(phi, place)
        return {"place": place.text(),
                "transfers": {str(index): value.text() for index, value in results.items()}}, EXIT_OK
    w = local_normal_form(phi, place)
    if w.m == 0:
        raise DegreeZero("Transfers of degree 0 classes are not defined")
    image = s_p_star(w)
    report = {"place": place.text(), "transfer": image.text()}
    if args.get('decide'):
        verdict = is_zero(image, session.bound, session.max_candidates)
        report.update(verdict.to_json())
        return report, _exit_code(verdict.verdict)
    return report, EXIT_OK


def _command_reciprocity(session, args):
    phi = parse_class(args['class'], session.tower)
    result = reciprocity_sum(phi, session.bound, session.max_candidates)
    session.log(1, f"Places visited: {', '.join(result.visited)}")
    for place, term in result.terms.items():
        session.log(1, f"  {place}: {term}")
    if session.verbosity >= 2:
        for place in support(phi, session.bound, session.max_candidates) or []:
            w = local_normal_form(phi, place)
            session.log(2, f"  {place.text()}: {len(w.u)} u entries, {len(w.v)} v entries, "
                           f"witnesses {w.witness_counts()}")
    return result.to_json(), _exit_code(result.verdict.verdict)


def _command_iszero(session, args):
    phi = parse_class(args['class'], session.tower)
    verdict = is_zero(phi, session.bound, session.max_candidates)
    session.log(1, f"Verdict: {verdict.verdict}")
    return verdict.to_json(), _exit_code(verdict.verdict)


def _command_gamma(session, args):
    place = _place(session, args)
    if not isinstance(place, FinitePlace):
        raise KatoMilneError("gamma needs a finite place")
    count = Setting('count').setget(10 if args.get('count') is None else args['count'])
    values = gamma_seq(place, count)
    return {"place": place.text(),
            "gamma": [format_element(value, session.tower) for value in values]}, EXIT_OK


def _command_classify(session, args):
    tower = session.tower
    poly = Poly.from_element(tower, parse_element(args['poly'], tower, tower.top), tower.top)
    classified = classify_place(poly, session.bound, session.max_candidates, _index(session, args))
    report = {"poly": format_element(poly.to_element(), tower), "degree": poly.degree}
    if isinstance(classified, FinitePlace):
        report.update(_place_report(classified))
        report["verdict"] = "PLACE"
        return report, EXIT_OK
    report["searched"] = classified.searched
    if classified.verdict == REDUCIBLE:
        report["verdict"] = REDUCIBLE
        report["factor"] = format_element(classified.factor.to_element(), tower)
        return report, EXIT_OK
    certificate = specialization_check(poly)
    if certificate is not None:
        report["verdict"] = "PLACE"
        report["specialization"] = {tower.name(label): value for label, value in certificate.items()}
        return report, EXIT_OK
    report["verdict"] = INCONCLUSIVE
    return report, EXIT_UNDECIDED


def _place_report(place):
    tower = place.tower
    report = {
        "separable": place.is_separable,
        "p_c": format_element(place.constant_term, tower),
        "searched": place.searched,
    }
    if not place.is_separable:
        report["index"] = tower.name(place.inseparable_index)
        report["admissible"] = [tower.name(index) for index in place.admissible_indices]
    return report


def _command_selftest(session, args):
    suite = args.get('suite')
    names = list(SUITES) if suite in (None, 'all') else [suite]
    count = args.get('count')
    if count is not None:
        count = Setting('count').setget(count)
    reports = []
    for name in names:
        session.log(1, f"Running suite '{name}'")
        report = run_suite(name, session.seed, count, session.tower,
                           session.bound, session.max_candidates, session.teich_depth)
        session.log(1, f"  {report['cases']} cases, {report['failures']} failures")
        reports.append(report)
    failed = any(report['failures'] for report in reports)
    result = reports[0] if len(reports) == 1 else {"suites": reports}
    return result, EXIT_ERROR if failed else EXIT_OK


_COMMANDS = {
    'residue': _command_residue,
    'normalform': _command_normalform,
    'transfer': _command_transfer,
    'reciprocity': _command_reciprocity,
    'iszero': _command_iszero,
    'gamma': _command_gamma,
    'classify': _command_classify,
    'selftest': _command_selftest,
}


def run_command(session, command, args):
    """
    Run a command and build its JSON report

    Args:
        session (Session): settings of the invocation
        command (str): one of COMMANDS
        args (dict): command arguments: class, place, poly, count, suite, index

    Returns:
        CommandResult: the report, with the seed echoed and an `error` field
        on failure, and the exit code: 0 on success and decisive verdicts,
        2 on UNKNOWN or INCONCLUSIVE, 1 on errors
    """
    handler = _COMMANDS.get(command)
    if handler is None:
        report = {"command": command, "seed": session.seed,
                  "error": f"Unknown command: {command}. Available: {', '.join(COMMANDS)}"}
        return CommandResult(report, EXIT_ERROR)
    try:
        body, exit_code = handler(session, args)
    except KatoMilneError as e:
        report = {"command": command, "seed": session.seed, "error": str(e),
                  "error_type": type(e).__name__}
        position = getattr(e, 'position', None)
        if position is not None:
            report["position"] = position
        return CommandResult(report, EXIT_ERROR)
    report = {"command": command, "seed": session.seed}
    report.update(body)
    return CommandResult(report, exit_code)


def format_report(report, indent=""):
    """Plain text rendering of a report, one key per line"""
    lines = []
    for key, value in report.items():
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.append(format_report(value, indent + "  "))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{indent}{key}:")
            for item in value:
                lines.append(format_report(item, indent + "  - "))
        else:
            lines.append(f"{indent}{key}: {value}")
    return "\n".join(line for line in lines if line)

