import subprocess
import sys
from pathlib import Path

import wallcross
from wallcross import cli
from wallcross.cli import EXIT_CHECK_FAILED, EXIT_INPUT, EXIT_OK, main
from wallcross.errors import ParameterSearchError
from wallcross.quiver import nakajima, dynkin_a


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out.splitlines()


def test_dec_enum(capsys):
    code, lines = run(capsys, "dec-enum", "--alpha0", "3", "--beta0", "1", "--j", "2")
    assert code == EXIT_OK
    assert lines[-1] == "# 6 data"
    assert "({2},{1})\t2" in lines


def test_identity_checks(capsys):
    code, lines = run(capsys, "identity-check", "proper-subset", "--d", "4", "--beta0", "1", "--gamma", "handsaw")
    assert (code, lines) == (EXIT_OK, ["0"])
    code, lines = run(capsys, "identity-check", "s-vanishing", "--d", "1,1", "--n", "3")
    assert (code, lines) == (EXIT_OK, ["0"])
    code, lines = run(capsys, "identity-check", "binomial-question", "--alpha0", "2", "--i", "1", "--gamma", "symbolic")
    assert code == EXIT_OK
    assert lines[-1] == "equal\ttrue"


def test_identity_check_missing_argument(capsys):
    code, _ = run(capsys, "identity-check", "s-vanishing", "--d", "1,1")
    assert code == EXIT_INPUT


def test_validate(tmp_path, capsys):
    path = tmp_path / "a2.json"
    nakajima(dynkin_a(2), [1, 1]).dump(path)
    assert run(capsys, "validate", str(path)) == (EXIT_OK, ["ok"])
    assert run(capsys, "validate", "builtin:single-vertex:2") == (EXIT_OK, ["ok"])
    assert run(capsys, "validate", str(tmp_path / "missing.json"))[0] == EXIT_INPUT
    broken = tmp_path / "broken.json"
    broken.write_text("{", encoding="utf-8")
    assert run(capsys, "validate", str(broken))[0] == EXIT_INPUT


def test_validate_reports_invalid_quiver(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"vertices": ["0", "inf"], "framing": "inf", "arrows": [{"id": "a", "from": "0", "to": "7"}]}')
    code, lines = run(capsys, "validate", str(path))
    assert code == EXIT_CHECK_FAILED
    assert lines == ["arrow 'a' references unknown vertex '7'"]


def test_walls(capsys):
    code, lines = run(capsys, "walls", "builtin:nakajima:A2:1,1", "--alpha", "1,1", "--zeta", "1,-1")
    assert code == EXIT_OK
    assert lines == ["1=0,2=1", "1=1,2=0", "1=1,2=1", "# on-wall 1=1,2=1"]


def test_localize(capsys):
    assert run(capsys, "localize", "--model", "grassmannian:1,2", "--integrand", "T") == (EXIT_OK, ["2"])
    assert run(capsys, "localize", "--model", "grassmannian:1,2", "--integrand", "T", "--no-twist") == (EXIT_OK, ["2"])
    assert run(capsys, "localize", "--model", "sphere", "--integrand", "T")[0] == EXIT_INPUT


def test_wc_coeffs(capsys):
    code, lines = run(capsys, "wc-coeffs", "builtin:single-vertex:2", "--alpha", "1", "--beta", "1")
    assert code == EXIT_OK
    assert lines == ["({1})\t1\t-2*g1", "# k\tcoefficient", "# 1\t-2*g1"]


def test_wc_coeffs_missing_gamma_table(tmp_path, capsys):
    table = tmp_path / "gamma.tsv"
    table.write_text("1\t1\n", encoding="utf-8")
    code, _ = run(capsys, "wc-coeffs", "builtin:single-vertex:1", "--alpha", "2", "--beta", "1", "--gamma", f"table:{table}")
    assert code == EXIT_INPUT


def test_gamma_check(capsys):
    code, lines = run(capsys, "gamma-check", "--d", "4")
    assert code == EXIT_OK
    assert lines == ["1\t0", "2\t0", "3\t0", "4\t0"]


def test_params_find_and_check(capsys):
    code, lines = run(capsys, "params-find", "builtin:single-vertex:1", "--alpha", "2", "--wall", "1", "--ell", "1")
    assert code == EXIT_OK
    assert lines[-1] == "D 30"
    assert "eta 17,1" in lines

    base = ["params-check", "builtin:single-vertex:1", "--alpha", "2", "--wall", "1", "--ell", "1",
            "--zeta-plus", "5/2", "--zeta-minus=-5/2"]
    code, lines = run(capsys, *base, "--eta", "17,1")
    assert code == EXIT_OK
    code, lines = run(capsys, *base, "--eta", "5,1")
    assert code == EXIT_CHECK_FAILED
    assert "cond_c\tFAIL" in lines
    assert "two_stability\tok" in lines


def test_experiments(capsys):
    code, lines = run(capsys, "experiment", "adjoint", "--r", "2", "--alpha0", "1")
    assert code == EXIT_OK
    assert lines[-1] == "equal\ttrue"
    code, lines = run(capsys, "experiment", "one-arrow", "--alpha0", "2", "--gamma", "symbolic")
    assert code == EXIT_OK
    assert lines[:2] == ["0\t1", "1\tg1"]


def test_parser_errors(capsys):
    assert main(["frobnicate"]) == EXIT_INPUT
    assert main(["--help"]) == EXIT_OK
    assert main(["experiment", "adjoint", "--alpha0", "1"]) == EXIT_INPUT


def test_package_imports_and_module_entry_point():
    assert wallcross.RationalFunction.constant(1) != wallcross.RationalFunction.constant(0)
    result = subprocess.run(
        [sys.executable, "-m", "wallcross", "--help"],
        cwd=Path(__file__).resolve().parents[1],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    assert "wc-coeffs" in result.stdout


def test_params_check_reports_failed_zeta_bar_search(monkeypatch, capsys):
    def give_up(wall, alpha):
        raise ParameterSearchError(f"No generic point found on the wall {wall}", "zeta_bar")

    monkeypatch.setattr(cli, "default_zeta_bar", give_up)
    code, lines = run(capsys, "params-check", "builtin:single-vertex:1", "--alpha", "2", "--wall", "1",
                      "--ell", "1", "--zeta-plus", "5/2", "--zeta-minus=-5/2", "--eta", "17,1")
    assert code == EXIT_CHECK_FAILED
    assert lines == ["search failed: No generic point found on the wall (0=1) (predicate zeta_bar)"]
