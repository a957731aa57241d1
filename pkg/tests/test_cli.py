import json
import subprocess
import sys

import pytest

from clonoids import cli
from clonoids.suites import VerificationReport, run_verification


MAJ_TEXT = "carrier 2\nop maj 3 00010111\n"
MEET_TEXT = "carrier 2\nop meet 2 0001\n"
FAMILY_TEXT = (
    "fn f2 source 2 target 2 arity 2 table 0110\n"
    "fn f3 source 2 target 2 arity 3 table 01101000\n"
)
PAIR_TEXT = "pair n 2 source 2 target 2\nP 10 01\nQ 00 01 10\n"


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in (
        ("maj.alg", MAJ_TEXT),
        ("meet.alg", MEET_TEXT),
        ("family.fn", FAMILY_TEXT),
        ("pair.pairs", PAIR_TEXT),
    ):
        p = tmp_path / name
        p.write_text(text)
        paths[name] = str(p)
    return paths


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_classify_text(files, capsys):
    code, out, _ = run_cli(capsys, "classify", files["maj.alg"])
    assert code == 0
    assert "verdict: finite" in out
    assert "witness_majority: 00010111" in out


def test_classify_json(files, capsys):
    code, out, _ = run_cli(capsys, "--format", "json", "classify", files["meet.alg"])
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"] == "continuum"
    assert payload["containing_maximal_clone"] == "meet-01"


def test_pol_lists_nine_functions(files, capsys):
    code, out, _ = run_cli(capsys, "pol", "--pairs", files["pair.pairs"], "--arity", "2")
    assert code == 0
    assert len(out.strip().splitlines()) == 9


def test_generate_and_member(files, capsys):
    code, out, _ = run_cli(
        capsys,
        "generate",
        "--generators", files["family.fn"],
        "--algebra", files["maj.alg"],
        "--arity", "2",
    )
    assert code == 0
    assert "table 0110" in out

    fn_path = files["family.fn"].replace("family.fn", "probe.fn")
    with open(fn_path, "w") as handle:
        handle.write("fn f2 source 2 target 2 arity 2 table 0110\n")
    code, out, _ = run_cli(
        capsys,
        "member",
        "--function", fn_path,
        "--generators", files["family.fn"],
        "--algebra", files["maj.alg"],
    )
    assert code == 0
    assert out.strip() == "true"


def test_blocker_output(files, capsys):
    code, out, _ = run_cli(capsys, "blocker", files["meet.alg"])
    assert code == 0
    assert out.strip() == "V 0"


def test_terms_command(files, capsys):
    code, out, _ = run_cli(capsys, "terms", files["maj.alg"], "--kind", "majority")
    assert code == 0
    assert "00010111" in out
    code, out, _ = run_cli(capsys, "terms", files["meet.alg"], "--kind", "malcev")
    assert code == 0
    assert out.strip() == ""


def test_verify_pass_exit_code(capsys):
    code, out, _ = run_cli(capsys, "verify", "lemma-4.1", "--max", "3")
    assert code == 0
    assert "overall PASS (9/9)" in out


def test_verify_failure_exit_code(files, capsys, monkeypatch):
    failing = VerificationReport(
        "lemma-4.1", (), (), overall=False, seed=None
    )
    monkeypatch.setattr(cli, "run_verification", lambda *a, **k: failing)
    code, _, _ = run_cli(capsys, "verify", "lemma-4.1")
    assert code == 1


def test_input_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.alg"
    bad.write_text("carrier 2\nop bad 2 0002\n")
    code, _, err = run_cli(capsys, "classify", str(bad))
    assert code == 2
    assert "input error" in err


def test_budget_exit_code(files, capsys):
    code, _, err = run_cli(
        capsys,
        "--budget", "4",
        "generate",
        "--generators", files["family.fn"],
        "--algebra", files["meet.alg"],
        "--arity", "3",
    )
    assert code == 3
    assert "budget exceeded" in err


def test_missing_file_is_input_error(capsys):
    code, _, err = run_cli(capsys, "classify", "/nonexistent/file.alg")
    assert code == 2


def test_verify_reports_are_byte_identical(capsys):
    first = run_cli(capsys, "--seed", "5", "verify", "thm-2.1", "--families", "3")
    second = run_cli(capsys, "--seed", "5", "verify", "thm-2.1", "--families", "3")
    assert first == second


def test_seed_appears_in_report(capsys):
    code, out, _ = run_cli(capsys, "--seed", "7", "verify", "thm-2.1", "--families", "2")
    assert code == 0
    assert "seed: 7" in out


def test_console_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "clonoids.cli", "blocker", files["meet.alg"]],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "V 0"


def test_unknown_suite_is_input_error():
    with pytest.raises(Exception):
        run_verification("no-such-suite")
