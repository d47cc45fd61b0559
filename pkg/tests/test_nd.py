"""Tests for natural deduction checking and compilation into ALFA_I."""
import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.exceptions import NDProofError, ParseError
from src.models.natural_deduction import NDRule
from src.models.proof import RuleStep, SystemId
from src.services.checker import DerivationChecker
from src.services.natural_deduction import check_nd, compile_nd, endpoints_equivalent, judgment_of
from src.syntax.formulas import parse_formula, print_formula
from src.syntax.natural_deduction import parse_nd, parse_nd_file, print_nd

ND_PROOFS = Path(__file__).resolve().parent.parent / "corpus" / "nd" / "proofs.ndp"


def corpus_proofs():
    return parse_nd_file(ND_PROOFS.read_text(encoding="utf-8"))


def test_corpus_covers_every_rule():
    proofs = corpus_proofs()
    assert len(proofs) >= 10
    used = set().union(*(proof.rules_used() for proof in proofs))
    assert used == set(NDRule)


def test_corpus_proofs_check_compile_and_agree():
    """Every proof checks, compiles to an accepted ALFA_I derivation and keeps its meaning."""
    for index, proof in enumerate(corpus_proofs(), start=1):
        verdict = check_nd(proof)
        assert verdict.accepted, f"proof {index}: {verdict.reason}"
        derivation = compile_nd(proof, name=f"nd_{index}")
        assert derivation.system == SystemId.ALFA_I
        assert DerivationChecker().check(derivation).accepted
        assert endpoints_equivalent(proof, derivation), f"proof {index}"
    print("\n[PASS] natural deduction corpus compiles")


def test_judgment_lists_open_hypotheses_by_label():
    proof = parse_nd("IMP_E(q) { HYP(p) [x] {} HYP(p -> q) [y] {} }")
    judgment = judgment_of(proof)
    assert [label for label, _ in judgment.hypotheses] == ["x", "y"]
    assert print_formula(judgment.as_formula()) == "p & (p -> q) -> q"


def test_closed_proof_has_empty_context():
    judgment = judgment_of(parse_nd("IMP_I(p -> q -> p) [x] { IMP_I(q -> p) [y] { HYP(p) [x] {} } }"))
    assert judgment.hypotheses == ()
    assert judgment.conclusion == parse_formula("p -> q -> p")


@pytest.mark.parametrize(
    "text, message",
    [
        ("HYP(p) {}", "missing label"),
        ("AND_E_L(p) [x] { HYP(p & q) [x] {} }", "unexpected label"),
        ("AND_I(p & q) { HYP(p) [x] {} }", "expects 2 premise(s)"),
        ("AND_I(q & p) { HYP(p) [x] {} HYP(q) [y] {} }", "not the conjunction"),
        ("IMP_I(q -> p) [x] { HYP(p) [x] {} }", "discharges"),
        ("IMP_I(p -> p -> p) [x] { IMP_I(p -> p) [x] { HYP(p) [x] {} } }", "already discharged"),
        ("AND_I(p & q) { HYP(p) [x] {} HYP(q) [x] {} }", "two different hypotheses"),
        ("BOT_E(q) { HYP(p) [x] {} }", "not F"),
        ("IMP_E(q) { HYP(p -> q) [y] {} HYP(p) [x] {} }", "second premise"),
        ("OR_E(r) [c] { HYP(p) [a] {} HYP(r) [b] {} HYP(r) [b] {} }", "not a disjunction"),
    ],
)
def test_malformed_proofs_are_rejected(text, message):
    verdict = check_nd(parse_nd(text))
    assert not verdict.accepted
    assert message in verdict.reason


def test_compiling_a_malformed_proof_raises():
    with pytest.raises(NDProofError):
        compile_nd(parse_nd("HYP(p) {}"))


def test_closed_implication_with_optional_deduction_rule():
    derivation = compile_nd(parse_nd("IMP_I(p -> p) [x] { HYP(p) [x] {} }"), use_r8id=True)
    last = derivation.steps[-1]
    assert isinstance(last, RuleStep) and last.rule == "R8ID"
    assert derivation.final.key == "{p => p}"
    assert DerivationChecker(include_optional=True).check(derivation).accepted

    plain = compile_nd(parse_nd("IMP_I(p -> p) [x] { HYP(p) [x] {} }"))
    assert plain.steps[-1].rule == "R8I"


def test_print_and_reparse():
    for proof in corpus_proofs():
        assert parse_nd(print_nd(proof)) == proof


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_nd("FOO(p) {}")
    with pytest.raises(ParseError):
        parse_nd("HYP(p) [x] {")
    with pytest.raises(NDProofError):
        parse_nd("HYP(p) [x] {} HYP(q) [y] {}")
