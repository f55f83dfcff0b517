from click.testing import CliRunner

from awn.cli import EXIT_DIFFERENT, EXIT_OK, EXIT_USAGE, cli, run


def invoke(*args):
    return CliRunner().invoke(cli, list(args))


def test_eq_syntactic():
    result = invoke('--n', '3', 'eq', 'C[1..2]', 'C[1..2]')
    assert result.exit_code == EXIT_OK
    assert result.output.startswith('ProvedZero (syntactic)')


def test_eq_detects_different_elements():
    result = invoke('--n', '3', '--degree-bound', '4', 'eq', 'C[1;3]', 'C[3;1]')
    assert result.exit_code == EXIT_DIFFERENT
    assert result.output.startswith('ProvedNonzero (nonzero)')


def test_apply_structural():
    result = invoke('--n', '4', 'apply', 'r2', 'C[3..4]')
    assert result.exit_code == EXIT_OK
    assert result.output.strip() == 'C[2;4]'


def test_apply_rank_error():
    assert invoke('--n', '3', 'apply', 'r3', 'C[1..2]').exit_code == EXIT_USAGE


def test_nf_echo():
    result = invoke('--n', '3', 'nf', '--echo', 'C[1..2]*C[2..3]')
    assert result.exit_code == EXIT_OK
    assert result.output.strip() == 'C[1..2]*C[2..3]'


def test_nf_uses_rules():
    result = invoke('--n', '3', '--degree-bound', '4', 'nf', 'C[1..2]*C[2..3]')
    assert result.exit_code == EXIT_OK
    assert 'C[2..3]*C[1..2]' in result.output


def test_parse_error_exit_code():
    result = invoke('--n', '3', 'nf', 'C[1..2')
    assert result.exit_code == EXIT_USAGE
    assert 'Fehler' in result.output


def test_relations_describe():
    result = invoke('--n', '3', 'relations', '--family', 'three-adjacent', '--describe')
    assert result.exit_code == EXIT_OK
    lines = result.output.strip().splitlines()
    assert len(lines) == 2
    assert all(line.startswith('relaw3') for line in lines)


def test_relations_unknown_family():
    assert invoke('--n', '3', 'relations', '--family', 'nope').exit_code == EXIT_USAGE


def test_casimir_set():
    result = invoke('--n', '4', 'casimir', '--set', '1,2,4')
    assert result.exit_code == EXIT_OK
    assert 'C[' in result.output


def test_casimir_basis_listing():
    result = invoke('--n', '4', 'casimir')
    assert result.exit_code == EXIT_OK
    assert len(result.output.strip().splitlines()) == 5
    assert result.output.startswith('w{1,2,3} = ')


def test_phi_specialized():
    result = invoke('--n', '2', '--eval-q', '2', 'phi', 'C[1..2]')
    assert result.exit_code == EXIT_OK
    assert len(result.output.strip().splitlines()) == 4


def test_racah_single_letter():
    result = invoke('--n', '3', 'racah', 'C[1..2]')
    assert result.exit_code == EXIT_OK
    assert result.output.strip() == 'h^0 : 1'


def test_racah_needs_expression():
    assert invoke('--n', '3', 'racah').exit_code == EXIT_USAGE


def test_bad_config_exit_code():
    assert run(['--n', '1', 'nf', 'C[1]']) == EXIT_USAGE
    assert run(['--n', '2', '--spins', '1/2', 'phi', 'C[1..2]']) == EXIT_USAGE
    assert run(['--unknown-flag']) == EXIT_USAGE


def test_bad_env_config(monkeypatch):
    monkeypatch.setenv('AW_SPINS', '1/3')
    assert run(['nf', 'C[1]']) == EXIT_USAGE


def test_run_returns_exit_code():
    assert run(['--n', '4', 'apply', 'r2', 'C[3..4]']) == EXIT_OK
