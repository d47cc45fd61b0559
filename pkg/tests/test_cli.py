"""Tests for the alfa command line."""
import json
import os
import sys
from pathlib import Path

from click.testing import CliRunner

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.cli import cli

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def invoke(*args: str):
    return CliRunner().invoke(cli, list(args))


def test_translate_and_embed():
    result = invoke("translate", "{p => q}")
    assert result.exit_code == 0
    assert result.output.strip() == "p -> q"

    result = invoke("embed", "p v q")
    assert result.exit_code == 0
    assert result.output.strip() == "{p | q}"


def test_bad_input_is_a_usage_error():
    result = invoke("translate", "a (b")
    assert result.exit_code == 2
    assert "error:" in result.output

    assert invoke("fuzz", "ALFA_Z").exit_code == 2


def test_oracle_reports_countermodel():
    result = invoke("oracle", "ipc", "~~p -> p")
    assert result.exit_code == 0
    assert result.output.startswith("INVALID: ~~p -> p")
    assert "countermodel with 2 world(s)" in result.output

    result = invoke("oracle", "cpc", "~~p -> p", "--json")
    assert result.exit_code == 0
    assert json.loads(result.output)["valid"] is True


def test_check_corpus_script():
    result = invoke("check", str(CORPUS / "alfao.gpf"), "--certify")
    assert result.exit_code == 0, result.output
    assert "mp [ALFAO] ACCEPT certified" in result.output
    assert "7 theorem(s) checked" in result.output


def test_check_rejection_exits_with_one(tmp_path):
    script = tmp_path / "bad.gpf"
    script.write_text("system ALFA_IO\ntheorem t\nfrom: ((a))\n  step R6 => a\nqed\n", encoding="utf-8")
    result = invoke("check", str(script))
    assert result.exit_code == 1
    assert "REJECT at step 1" in result.output


def test_check_empty_file(tmp_path):
    script = tmp_path / "empty.gpf"
    script.write_text("% nothing yet\n", encoding="utf-8")
    result = invoke("check", str(script))
    assert result.exit_code == 0
    assert "0 theorem(s) checked" in result.output


def test_fuzz_single_iteration():
    result = invoke("fuzz", "ALFAO", "--iterations", "1", "--second-degree", "0")
    assert result.exit_code == 0, result.output
    assert "0 failure(s)" in result.output


def test_fuzz_planted_rule_fails():
    result = invoke("fuzz", "ALFA_IO", "--iterations", "10", "--second-degree", "0", "--add-rule", "R6")
    assert result.exit_code == 1
    assert "COUNTEREXAMPLE R6" in result.output


def test_search_found_and_not_found():
    found = invoke("search", "ALFA_IO", "a", "((a))", "--steps", "3", "--size", "6", "--branch", "16", "--no-corpus")
    assert found.exit_code == 0, found.output
    assert "theorem found" in found.output

    missing = invoke("search", "ALFA_IO", "((p))", "p", "--steps", "3", "--size", "6", "--branch", "16",
                     "--no-corpus")
    assert missing.exit_code == 1
    assert "NOT FOUND" in missing.output


def test_enumerate_prints_one_graph_per_line():
    result = invoke("enumerate", "p q", "--rule", "R2")
    assert result.exit_code == 0
    assert set(result.output.splitlines()) == {"", "p", "q", "p q"}


def test_lemmas_lists_dependencies():
    result = invoke("lemmas", str(CORPUS / "alfa_io.gpf"))
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0] == "i_c: -"
    assert "e_bot: i_c" in lines


def test_nd_compile():
    result = invoke("nd-compile", str(CORPUS / "nd" / "proofs.ndp"))
    assert result.exit_code == 0
    assert result.output.startswith("system ALFA_I")
    assert "theorem nd_1" in result.output

    print("\n[PASS] natural deduction corpus compiled from the command line")
