"""Tests for proof scripts and the derivation checker."""
import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.exceptions import KernelError, ParseError
from src.models.lemma import LemmaDb
from src.models.proof import LemmaStep, RuleStep, SystemId
from src.services.checker import DerivationChecker, check
from src.services.lemmas import register_lemma
from src.syntax.proofs import parse_proof, print_proof

CORPUS = Path(__file__).resolve().parent.parent / "corpus"

MP = """
system ALFAO
theorem mp
from: a (a (b))
  step R5 => a ((b))
  step R2 => ((b))
  step R6 => b
qed
"""


def only(text: str):
    script = parse_proof(text)
    assert len(script) == 1
    return script.theorems[0]


def test_modus_ponens_script_is_accepted():
    derivation = only(MP)
    assert derivation.system == SystemId.ALFAO
    assert derivation.step_count() == 3
    verdict = check(derivation)
    assert verdict.accepted
    assert verdict.source == "((b) a) a"
    assert verdict.target == "b"
    print("\n[PASS] modus ponens checks in ALFAO")


def test_empty_theorem_has_no_steps():
    derivation = only("system ALFAO theorem t from: qed")
    assert derivation.step_count() == 0
    assert check(derivation).accepted


def test_rule_outside_the_system_is_rejected():
    derivation = only("system ALFA_IO\ntheorem t\nfrom: ((a))\n  step R6 => a\nqed\n")
    verdict = check(derivation)
    assert not verdict.accepted
    assert verdict.step_index == 1
    assert "rule not in system" in verdict.reason


def test_unreachable_result_is_rejected():
    verdict = check(only("system ALFAO theorem t from: a b step R2 => a step R2 => c qed"))
    assert not verdict.accepted
    assert verdict.step_index == 2
    assert "not reachable" in verdict.reason


def test_existential_step_needs_a_witness():
    verdict = check(only("system ALFAO theorem t from: (p) step R3 => (p q) qed"))
    assert not verdict.accepted
    assert "witness" in verdict.reason
    assert check(only("system ALFAO theorem t from: (p) step R3 witness q => (p q) qed")).accepted


def test_unknown_rule_is_rejected():
    verdict = check(only("system ALFAO theorem t from: a step R99 => a qed"))
    assert not verdict.accepted
    assert "unknown rule" in verdict.reason


def test_subproofs_may_only_cite_earlier_subproofs():
    script = """
system ALFAO
theorem t
from: a
  have h1: a |- a a {
    step R0 [h2, h2] => a a
  }
  have h2: a |- a {
    step R2 => a
  }
  step R0 [h2, h2] => a a
qed
"""
    verdict = check(only(script))
    assert not verdict.accepted
    assert verdict.location == "have h1, step 1"
    assert "unknown subproof" in verdict.reason

    reordered = """
system ALFAO
theorem t
from: a
  have h2: a |- a {
    step R2 => a
  }
  have h1: a |- a a {
    step R0 [h2, h2] => a a
  }
  step R0 [h2, h2] => a a
qed
"""
    assert check(only(reordered)).accepted


def test_subproof_must_reach_its_declared_target():
    script = """
system ALFAO
theorem t
from: a b
  have h1: a b |- a {
    step R2 => b
  }
  step R2 => a
qed
"""
    verdict = check(only(script))
    assert not verdict.accepted
    assert verdict.location == "have h1, step 1"
    assert "does not match declared target" in verdict.reason


def test_r0_premises_must_start_from_the_current_graph():
    script = """
system ALFAO
theorem t
from: a b
  have h1: a |- a {
    step R2 => a
  }
  step R0 [h1, h1] => a a
qed
"""
    verdict = check(only(script))
    assert not verdict.accepted
    assert "R0 does not conclude" in verdict.reason


def test_context_rule_defaults_to_the_rest_of_the_sheet():
    script = """
system ALFAO
theorem t
from: r ((p))
  have h1: ((p)) |- p {
    step R6 => p
  }
  step CTX [h1] => p r
qed
"""
    assert check(only(script)).accepted


def test_optional_deduction_rule():
    script = """
system ALFA_I
theorem t
from:
  have h1: p |- p {
    step R2 => p
  }
  step R8ID [h1] => {p => p}
qed
"""
    derivation = only(script)
    verdict = check(derivation)
    assert not verdict.accepted
    assert "rule not in system" in verdict.reason
    assert check(derivation, include_optional=True).accepted


def test_lemma_steps():
    db = register_lemma("mp", only(MP), LemmaDb())
    by_match = only("system ALFAO theorem t from: p (p (q)) lemma mp => q qed")
    assert DerivationChecker(db).check(by_match).accepted

    by_substitution = only("system ALFAO theorem t from: ((q)) lemma mp [a := ; b := q] => q qed")
    step = by_substitution.steps[0]
    assert isinstance(step, LemmaStep)
    assert step.sigma["a"].key == ""
    assert DerivationChecker(db).check(by_substitution).accepted

    wrong = only("system ALFAO theorem t from: ((q)) lemma mp [a := p; b := q] => q qed")
    assert "does not match" in DerivationChecker(db).check(wrong).reason

    elsewhere = only("system ALFA_IO theorem t from: p {p => q} lemma mp => q qed")
    assert "is not available" in DerivationChecker(db).check(elsewhere).reason

    assert "unknown lemma" in check(by_match).reason


def test_sequent_of_raises_on_rejection():
    with pytest.raises(KernelError):
        DerivationChecker().sequent_of(only("system ALFAO theorem t from: a step R2 => b qed"))


def test_step_options_in_any_order():
    a = only("system ALFAO theorem t from: a have h: a |- a { step R2 => a } step R8 split a [h] => ((a)) qed")
    b = only("system ALFAO theorem t from: a have h: a |- a { step R2 => a } step R8 [h] split a => ((a)) qed")
    assert a == b
    step = a.steps[0]
    assert isinstance(step, RuleStep)
    assert step.premises == ("h",)


@pytest.mark.parametrize(
    "text",
    [
        "system ALFAO theorem t from: a step => a qed",
        "system ALFAO theorem t from: a",
        "theorem t from: a qed",
        "system ALFAO theorem t from: (a qed",
    ],
)
def test_script_parse_errors(text):
    with pytest.raises(ParseError):
        parse_proof(text)


def test_unknown_system_and_duplicate_labels():
    with pytest.raises(KernelError):
        parse_proof("system ALFA_Z theorem t from: qed")
    with pytest.raises(ParseError):
        parse_proof("system ALFAO theorem t from: a have h: a |- a { } have h: a |- a { } qed")


def test_corpus_scripts_print_and_reparse():
    for path in sorted(CORPUS.glob("*.gpf")):
        script = parse_proof(path.read_text(encoding="utf-8"))
        assert parse_proof(print_proof(script)) == script, path.name
