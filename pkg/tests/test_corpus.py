"""Tests for the derivation corpus: every theorem checks, certifies and expands."""
import os
import sys
from pathlib import Path

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.models.proof import Logic, SystemId
from src.services.corpus import CONJECTURES, CORPUS, CorpusRunner, corpus_db, run_corpus

CORPUS_DIR = Path(__file__).resolve().parent.parent / "corpus"


def test_corpus_is_fully_accepted():
    """Each corpus row is accepted, certified by the oracle and re-checks lemma-free."""
    report = run_corpus(CORPUS_DIR, conjectures=False)

    assert len(report.rows) == len(CORPUS) == 26
    for row in report.rows:
        assert row.verdict == "accept", f"{row.id}: {row.reason}"
        assert row.certified, row.id
        assert row.expanded, row.id
    assert report.nd_rows
    assert all(row.accepted and row.compiled and row.equivalent for row in report.nd_rows)
    assert report.ok

    print(f"\n[PASS] {len(report.rows)} corpus derivations, {len(report.nd_rows)} ND proofs")


def test_rows_follow_registration_order_and_systems():
    report = CorpusRunner(CORPUS_DIR).run(nd=False, conjectures=False)
    assert [row.id for row in report.rows] == [entry.id for entry in CORPUS]
    systems = {row.id: row.system for row in report.rows}
    assert systems["mp"] == SystemId.ALFAO.value
    assert systems["i_c"] == SystemId.ALFA_IO.value
    assert systems["r6"] == SystemId.ALFA_IO_CLASSIC.value
    assert report.nd_rows == []


def test_uncertain_transcriptions_are_flagged():
    report = CorpusRunner(CORPUS_DIR).run(nd=False, conjectures=False)
    flagged = {row.id for row in report.rows if row.uncertain}
    assert flagged == {"r5_prime", "e_p_inverse"}


def test_corpus_db_holds_every_theorem():
    db = corpus_db(CORPUS_DIR)
    for entry in CORPUS:
        assert entry.id in db, entry.id
    assert db.get("r6").derivation.system == SystemId.ALFA_IO_CLASSIC


def test_conjectures_are_classically_sound():
    rows = CorpusRunner(CORPUS_DIR).run(nd=False, conjectures=True).conjectures
    assert [row.name for row in rows] == [name for name, _, _ in CONJECTURES]
    for row in rows:
        assert row.sound, row.name
        assert row.system == "ALFAO"
        assert (row.steps is not None) == row.found


def test_every_entry_names_its_locus_and_quote():
    """Each derived rule carries where it is stated and the sentence stating it."""
    assert len({entry.id for entry in CORPUS}) == len(CORPUS)
    for entry in CORPUS:
        assert entry.locus.strip(), entry.id
        assert entry.quote.strip(), entry.id
        assert entry.locus.split(":")[0].split()[0] in {system.value for system in SystemId}, entry.id

    report = CorpusRunner(CORPUS_DIR).run(nd=False, conjectures=False)
    assert [row.quote for row in report.rows] == [entry.quote for entry in CORPUS]
    logics = {row.id: row.logic for row in report.rows}
    assert logics["mp"] == logics["r6"] == Logic.CLASSICAL.value
    assert logics["ctx"] == logics["i_c"] == Logic.IPC.value
