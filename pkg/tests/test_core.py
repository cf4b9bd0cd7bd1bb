"""Tests for KatoMilne, Session, run_command and the kmc.py entry point"""

import io
import json
import pytest
from unittest.mock import patch

import kmc
from kato_milne import KatoMilne, Session, TowerDesc, format_report, run_command
from kato_milne.core import EXIT_ERROR, EXIT_OK, EXIT_UNDECIDED
from kato_milne.exceptions import ConfigurationError


##  *****
##  Mocks
##  *****


def write_config(tmp_path, text):
    """Write a configuration file and return its path"""
    path = tmp_path / "config.yaml"
    path.write_text(text)
    return str(path)


##  *****
##  Session
##  *****


@pytest.mark.unit
def test_session_is_immutable(session):
    """Test that session attributes cannot be changed"""
    with pytest.raises(AttributeError, match="Session is immutable"):
        session.seed = 3
    assert session.seed == 0


@pytest.mark.unit
def test_session_repr(session):
    """Test the session repr"""
    assert repr(session) == "Session(tower=1, seed=0, bound=8, teich_depth=4, max_candidates=200000)"


@pytest.mark.unit
def test_session_log(capsys, tower):
    """Test that diagnostics go to stderr only above the verbosity"""
    quiet = Session(tower, 0, 8, 4, 200000, verbosity=0)
    quiet.log(1, "hidden")
    loud = Session(tower, 0, 8, 4, 200000, verbosity=2)
    loud.log(1, "shown")
    captured = capsys.readouterr()
    assert "hidden" not in captured.err
    assert "shown" in captured.err
    assert captured.out == ""


##  *****
##  Configuration
##  *****


@pytest.mark.unit
@pytest.mark.dependency()
def test_missing_config_uses_defaults(tmp_path):
    """Test that a missing optional file means defaults"""
    app = KatoMilne(config_file=str(tmp_path / "missing.yaml"))
    assert app.load_config() == KatoMilne.defaults
    session = app.session()
    assert session.tower is TowerDesc(1)
    assert session.json is False


@pytest.mark.unit
def test_missing_required_config(tmp_path):
    """Test that a missing required file is an error"""
    app = KatoMilne(config_file=str(tmp_path / "missing.yaml"))
    with pytest.raises(ConfigurationError, match="Configuration file not found"):
        app.load_config(required=True)


@pytest.mark.unit
def test_config_values(tmp_path):
    """Test that file values replace the defaults"""
    app = KatoMilne(config_file=write_config(tmp_path, "tower: 2\nseed: 5\nbound: '12'\n"))
    config = app.load_config()
    assert config['tower'] == 2
    assert config['seed'] == 5
    assert config['bound'] == 12
    assert app.session().tower.K == 2


@pytest.mark.unit
def test_invalid_yaml(tmp_path):
    """Test that malformed YAML is reported"""
    app = KatoMilne(config_file=write_config(tmp_path, "tower: [1,\n"))
    with pytest.raises(ConfigurationError, match="Invalid YAML in configuration file"):
        app.load_config()


@pytest.mark.unit
def test_config_must_be_a_dictionary(tmp_path):
    """Test that a YAML list is rejected"""
    app = KatoMilne(config_file=write_config(tmp_path, "- 1\n- 2\n"))
    with pytest.raises(ConfigurationError, match="Configuration must be a dictionary"):
        app.load_config()


@pytest.mark.unit
def test_unknown_keys_warning(tmp_path, capsys):
    """Test that unknown keys are ignored with a warning"""
    app = KatoMilne(config_file=write_config(tmp_path, "colour: red\nseed: 1\n"))
    config = app.load_config()
    assert 'colour' not in config
    assert "Warning: Unknown configuration keys ignored: colour" in capsys.readouterr().err


@pytest.mark.unit
def test_overrides_take_precedence(tmp_path):
    """Test that command line values win and None means unset"""
    app = KatoMilne(config_file=write_config(tmp_path, "seed: 5\nbound: 3\n"),
                    overrides={'seed': 9, 'bound': None})
    config = app.load_config()
    assert config['seed'] == 9
    assert config['bound'] == 3


@pytest.mark.unit
def test_verbosity_level(tmp_path):
    """Test that -v counts replace the configured verbosity"""
    app = KatoMilne(verbosity_level=2, config_file=write_config(tmp_path, "verbosity: 1\n"))
    assert app.session().verbosity == 2


@pytest.mark.unit
def test_invalid_settings(tmp_path):
    """Test that settings are validated"""
    app = KatoMilne(config_file=write_config(tmp_path, "json: 1\n"))
    with pytest.raises(ConfigurationError, match="Setting 'json': expected true or false"):
        app.load_config()
    app = KatoMilne(config_file=write_config(tmp_path, "tower: 5\n"))
    with pytest.raises(ConfigurationError, match="Setting 'tower': value 5 is too high. Max: 4"):
        app.load_config()
    app = KatoMilne(config_file=write_config(tmp_path, "bound: x\n"))
    with pytest.raises(ConfigurationError, match="invalid integer"):
        app.load_config()


@pytest.mark.unit
def test_run_loads_the_configuration(tmp_path, mocker):
    """Test that KatoMilne.run passes the configured session to run_command"""
    run = mocker.patch('kato_milne.core.run_command', return_value="result")
    app = KatoMilne(config_file=write_config(tmp_path, "seed: 4\n"))
    assert app.run('iszero', {'class': "1"}) == "result"
    session, command, args = run.call_args.args
    assert session.seed == 4
    assert command == 'iszero'
    assert args == {'class': "1"}


##  *****
##  Commands
##  *****


@pytest.mark.unit
def test_unknown_command(session):
    """Test that an unknown command is an error report"""
    result = run_command(session, 'integrate', {})
    assert result.exit_code == EXIT_ERROR
    assert result.report["error"].startswith("Unknown command: integrate. Available: residue")
    assert result.report["seed"] == 0


@pytest.mark.unit
def test_iszero_command(session):
    """Test the zero test of dlog t1"""
    result = run_command(session, 'iszero', {'class': "dlog(t1)"})
    assert result.exit_code == EXIT_OK
    assert result.report["command"] == "iszero"
    assert result.report["verdict"] == "NONZERO"


@pytest.mark.unit
def test_parse_error_report(session):
    """Test that syntax errors carry their type and position"""
    result = run_command(session, 'iszero', {'class': "x $"})
    assert result.exit_code == EXIT_ERROR
    assert result.report["error_type"] == "ExpressionSyntaxError"
    assert result.report["position"] == 2


@pytest.mark.unit
def test_residue_and_normalform(session):
    """Test the residue report and the audited normal form"""
    args = {'class': "dlog(t1) ^ dlog(x+t1)", 'place': "x+t1"}
    result = run_command(session, 'residue', args)
    assert result.exit_code == EXIT_OK
    assert result.report["place"] == "t1 + x"
    assert result.report["trivial"] is False
    assert "audit" not in result.report
    result = run_command(session, 'normalform', args)
    assert result.report["audit"] is True
    assert isinstance(result.report["witnesses"], dict)


@pytest.mark.unit
def test_transfer_command(session):
    """Test the transfer at x + t1 with and without a decision"""
    args = {'class': "dlog(t1) ^ dlog(x+t1)", 'place': "x+t1"}
    result = run_command(session, 'transfer', args)
    assert result.report["transfer"] == "(1) dlog(t1)"
    assert "verdict" not in result.report
    result = run_command(session, 'transfer', dict(args, decide=True))
    assert result.report["verdict"] == "NONZERO"
    assert result.exit_code == EXIT_OK


@pytest.mark.unit
def test_transfer_all_indices(session):
    """Test the transfers at an inseparable place keyed by index"""
    args = {'class': "dlog(x) ^ dlog(x^2+t1)", 'place': "x^2+t1", 'all_indices': True}
    result = run_command(session, 'transfer', args)
    assert result.report["transfers"] == {"1": "(1) dlog(t1)"}


@pytest.mark.unit
def test_transfer_of_degree_zero(session):
    """Test that degree 0 classes have no transfer"""
    result = run_command(session, 'transfer', {'class': "1/(x+t1)", 'place': "x+t1"})
    assert result.exit_code == EXIT_ERROR
    assert result.report["error_type"] == "DegreeZero"


@pytest.mark.unit
def test_reciprocity_command(session):
    """Test that the reciprocity sum of dlog t1 ^ dlog(x + t1) vanishes"""
    result = run_command(session, 'reciprocity', {'class': "dlog(t1) ^ dlog(x+t1)"})
    assert result.exit_code == EXIT_OK
    assert result.report["verdict"] == "ZERO"


@pytest.mark.unit
def test_gamma_command(session):
    """Test gamma of x^2 + t1"""
    result = run_command(session, 'gamma', {'place': "x^2+t1", 'count': 4})
    assert result.report["gamma"] == ["1", "0", "t1", "0", "t1^2"]
    result = run_command(session, 'gamma', {'place': "inf"})
    assert result.report["error"] == "gamma needs a finite place"
    result = run_command(session, 'gamma', {'place': "x", 'count': 500})
    assert "too high. Max: 200" in result.report["error"]


@pytest.mark.unit
def test_classify_command(session):
    """Test places, reducible polynomials and index names"""
    result = run_command(session, 'classify', {'poly': "x^2+t1"})
    assert result.report["verdict"] == "PLACE"
    assert result.report["separable"] is False
    assert result.report["index"] == "t1"
    assert result.report["admissible"] == ["t1"]
    assert result.report["degree"] == 2
    result = run_command(session, 'classify', {'poly': "x^2+t1^2"})
    assert result.report["verdict"] == "REDUCIBLE"
    assert result.report["factor"] == "t1 + x"
    result = run_command(session, 'classify', {'poly': "x^2+t1", 'index': "t7"})
    assert result.report["error"] == "Unknown ground variable: t7"


@pytest.mark.unit
def test_classify_with_small_budget(tower):
    """Test the specialization certificate and the undecided verdict"""
    session = Session(tower, seed=0, bound=8, teich_depth=4, max_candidates=1)
    result = run_command(session, 'classify', {'poly': "x^2+x+t1"})
    assert result.report["verdict"] == "PLACE"
    assert result.report["specialization"] == {"t1": 1}
    result = run_command(session, 'classify', {'poly': "x^2+t1"})
    assert result.report["verdict"] == "INCONCLUSIVE"
    assert result.exit_code == EXIT_UNDECIDED


@pytest.mark.unit
def test_assumed_place(tower):
    """Test that assume accepts an undecided place and says so"""
    session = Session(tower, seed=0, bound=8, teich_depth=4, max_candidates=1)
    args = {'class': "dlog(x) ^ dlog(x^2+t1)", 'place': "x^2+t1"}
    assert run_command(session, 'residue', args).report["error_type"] == "PlaceNotClassified"
    result = run_command(session, 'residue', dict(args, assume=True))
    assert result.report["assumed"] is True


@pytest.mark.unit
def test_selftest_unknown_suite(session):
    """Test that an unknown suite is an error report"""
    result = run_command(session, 'selftest', {'suite': "everything"})
    assert result.exit_code == EXIT_ERROR
    assert result.report["error"].startswith("Unknown suite: everything")


@pytest.mark.slow
def test_selftest_command(session):
    """Test a short gamma suite through run_command"""
    result = run_command(session, 'selftest', {'suite': "gamma", 'count': 2})
    assert result.exit_code == EXIT_OK
    assert result.report["suite"] == "gamma"
    assert result.report["cases"] == 2


##  *****
##  Reports
##  *****


@pytest.mark.unit
def test_format_report():
    """Test the plain text rendering of nested reports"""
    report = {"a": 1, "b": {"c": 2}, "d": [{"e": 3}], "f": [1, 2]}
    assert format_report(report) == "a: 1\nb:\n  c: 2\nd:\n  - e: 3\nf: [1, 2]"


##  *****
##  Entry point
##  *****


@pytest.mark.integration
@pytest.mark.dependency(depends=["test_missing_config_uses_defaults"])
def test_main_plain_text(tmp_path, capsys):
    """Test that kmc.py prints the report and returns the exit code"""
    argv = ['kmc.py', '--config', str(tmp_path / "missing.yaml"), 'iszero', 'dlog(t1)']
    with patch('sys.argv', argv):
        assert kmc.main() == 0
    assert "verdict: NONZERO" in capsys.readouterr().out


@pytest.mark.integration
@pytest.mark.dependency(depends=["test_missing_config_uses_defaults"])
def test_main_json(tmp_path, capsys):
    """Test the --json output"""
    argv = ['kmc.py', '--config', str(tmp_path / "missing.yaml"), '--json', 'iszero', 'dlog(t1)']
    with patch('sys.argv', argv):
        assert kmc.main() == 0
    report = json.loads(capsys.readouterr().out)
    assert report["verdict"] == "NONZERO"
    assert report["seed"] == 0


@pytest.mark.integration
@pytest.mark.dependency(depends=["test_missing_config_uses_defaults"])
def test_main_reads_stdin(tmp_path, capsys):
    """Test that the class text is read from stdin when omitted"""
    argv = ['kmc.py', '--config', str(tmp_path / "missing.yaml"), 'iszero']
    with patch('sys.argv', argv), patch('sys.stdin', io.StringIO("t1^2+t1\n")):
        assert kmc.main() == 0
    assert "verdict: ZERO" in capsys.readouterr().out


@pytest.mark.integration
def test_main_errors(tmp_path, capsys):
    """Test configuration errors, empty stdin and command errors"""
    argv = ['kmc.py', '--config', write_config(tmp_path, "tower: 9\n"), 'iszero', 'dlog(t1)']
    with patch('sys.argv', argv):
        assert kmc.main() == 1
    assert "Error: Setting 'tower'" in capsys.readouterr().err

    argv = ['kmc.py', '--config', str(tmp_path / "missing.yaml"), 'iszero']
    with patch('sys.argv', argv), patch('sys.stdin', io.StringIO("")):
        assert kmc.main() == 1
    assert "No class text" in capsys.readouterr().err

    argv = ['kmc.py', '--config', str(tmp_path / "missing.yaml"), 'iszero', 'x $']
    with patch('sys.argv', argv):
        assert kmc.main() == 1
    assert "Hint: The position counts characters from 0." in capsys.readouterr().err
