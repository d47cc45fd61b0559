"""Tests for bounded proof search and consequence enumeration."""
import os
import sys

import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.exceptions import KernelError
from src.models.lemma import LemmaDb
from src.models.proof import LemmaStep, SystemId
from src.services.checker import DerivationChecker
from src.services.corpus import corpus_db
from src.services.search import SearchBudget, default_pool, enumerate_consequences, prove, search_report
from src.syntax.graphs import parse_graph
from src.syntax.proofs import parse_proof

SMALL = SearchBudget(max_steps=3, max_graph_size=6, max_branch=16)


def test_modus_ponens_is_found_in_alfao():
    derivation = prove(
        SystemId.ALFAO, LemmaDb(), parse_graph("p (p (q))"), parse_graph("q"), SearchBudget(max_steps=4)
    )
    assert derivation is not None
    assert derivation.final == parse_graph("q")
    assert derivation.step_count() <= 4
    assert DerivationChecker().check(derivation).accepted
    print(f"\n[PASS] modus ponens found in {derivation.step_count()} steps")


def test_double_cut_introduction_is_found_in_alfa_io():
    derivation = prove(SystemId.ALFA_IO, LemmaDb(), parse_graph("a"), parse_graph("((a))"), SMALL)
    assert derivation is not None
    assert derivation.step_count() <= 3


def test_identity_needs_no_steps():
    derivation = prove(SystemId.ALFA_I, LemmaDb(), parse_graph("p (q)"), parse_graph("(q) p"), SMALL)
    assert derivation is not None
    assert derivation.step_count() == 0


def test_intuitionistically_invalid_goal_is_not_found():
    assert prove(SystemId.ALFA_IO, LemmaDb(), parse_graph("((p))"), parse_graph("p"), SMALL) is None


def test_classical_double_cut_elimination_uses_corpus_lemma():
    derivation = prove(SystemId.ALFA_IO_CLASSIC, corpus_db(), parse_graph("((p))"), parse_graph("p"), SMALL)
    assert derivation is not None
    assert any(isinstance(step, LemmaStep) for step in derivation.steps)


def test_search_report_found():
    report = search_report(SystemId.ALFA_IO, LemmaDb(), parse_graph("a"), parse_graph("((a))"), SMALL)
    assert report.found
    assert report.semantically_valid
    assert report.note is None
    found = parse_proof(report.script).theorems[0]
    assert found.name == "found"
    assert DerivationChecker().check(found).accepted


def test_search_report_not_found():
    report = search_report(SystemId.ALFA_IO, LemmaDb(), parse_graph("((p))"), parse_graph("p"), SMALL)
    assert not report.found
    assert not report.semantically_valid
    assert report.note == "semantically invalid in IPC"


def test_budget_validation_and_settings():
    with pytest.raises(KernelError):
        SearchBudget(max_steps=0)
    budget = SearchBudget.from_settings(max_steps=2, max_branch=None)
    assert budget.max_steps == 2
    assert budget.max_branch == 32
    assert budget.max_graph_size == 10


def test_default_pool_is_smallest_first():
    pool = default_pool(parse_graph("(p q)"))
    assert pool[0] == parse_graph("")
    assert parse_graph("p q") in pool
    assert parse_graph("(p q)") in pool


def test_enumerate_single_erasure():
    found = enumerate_consequences(
        SystemId.ALFAO, LemmaDb(), parse_graph("p q"), SearchBudget(max_steps=1), rules=["R2"]
    )
    assert found == {parse_graph(text) for text in ("p q", "p", "q", "")}


def test_enumerate_reaches_double_cut_form_of_disjunction():
    found = enumerate_consequences(SystemId.ALFA_IO, LemmaDb(), parse_graph("{p | q}"), SearchBudget(max_steps=2))
    assert parse_graph("((p) (q))") in found
    assert parse_graph("{(p) => q}") in found
