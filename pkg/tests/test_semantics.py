"""Tests for the classical and intuitionistic oracles and Kripke countermodels."""
import os
import sys
from random import Random

import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.exceptions import KernelError
from src.models.formula import And, Imp, Or, neg
from src.models.kripke import InvalidModelError, KripkeModel
from src.models.proof import Logic, Sequent
from src.services.semantics import (
    classical_valid,
    eval_kripke,
    ipc_entails,
    ipc_valid,
    kripke_countermodel,
    oracle_report,
    parse_logic,
    rooted_orders,
    sequent_sound,
)
from src.services.fuzz import FormulaSampler
from src.syntax.formulas import parse_formula, print_formula
from src.syntax.graphs import parse_graph

# Classically valid, intuitionistically invalid, each refuted by a model of at most three worlds.
SEPARATION = [
    "~~p -> p",
    "p & ~(p & ~q) -> q",
    "~(~p & ~q) -> p v q",
    "~(p & ~q) -> (p -> q)",
]

IPC_VALID = [
    "p -> p",
    "p -> q -> p",
    "p & q -> q & p",
    "(p -> q) -> ~q -> ~p",
    "~(p v q) -> ~p & ~q",
    "~p v ~q -> ~(p & q)",
    "~~(p v ~p)",
    "~~~p -> ~p",
    "(p v q -> r) -> (p -> r) & (q -> r)",
]

IPC_INVALID = [
    "p v ~p",
    "~~p -> p",
    "(~q -> ~p) -> p -> q",
    "((p -> q) -> p) -> p",
    "(p -> q) v (q -> p)",
    "~p v ~~p",
    "~(p & q) -> ~p v ~q",
]


@pytest.mark.parametrize("text", SEPARATION)
def test_separation_suite(text):
    f = parse_formula(text)
    assert classical_valid(f)
    assert not ipc_valid(f)
    model = kripke_countermodel(f, max_worlds=3)
    assert model is not None
    assert model.size <= 3
    assert not eval_kripke(model, 0, f)


@pytest.mark.parametrize("text", IPC_VALID)
def test_ipc_valid_formulas_have_no_small_countermodel(text):
    f = parse_formula(text)
    assert ipc_valid(f)
    assert classical_valid(f)
    assert kripke_countermodel(f, max_worlds=3) is None


@pytest.mark.parametrize("text", IPC_INVALID)
def test_g4ip_agrees_with_kripke_on_invalid_formulas(text):
    f = parse_formula(text)
    assert not ipc_valid(f)
    assert kripke_countermodel(f, max_worlds=3) is not None


def test_glivenko_double_negation():
    """A formula is classically valid iff its double negation is IPC-valid."""
    for text in SEPARATION + IPC_VALID + ["p", "p -> q", "p v q -> p"]:
        f = parse_formula(text)
        assert classical_valid(f) == ipc_valid(neg(neg(f))), text


def test_classical_falsity():
    assert not classical_valid(parse_formula("p -> q"))
    assert classical_valid(parse_formula("T"))
    assert not classical_valid(parse_formula("F"))


def test_ipc_entails():
    p, q = parse_formula("p"), parse_formula("q")
    assert ipc_entails(frozenset({p, parse_formula("p -> q")}), q)
    assert not ipc_entails(frozenset({parse_formula("~~p")}), p)


def test_rooted_orders_up_to_isomorphism():
    assert [len(rooted_orders(n)) for n in (1, 2, 3, 4)] == [1, 1, 2, 5]


def test_double_negation_countermodel_has_two_worlds():
    model = kripke_countermodel(parse_formula("~~p -> p"))
    assert model.size == 2
    assert model.order_pairs() == [(0, 1)]
    assert model.valuation[0] == frozenset()
    assert model.valuation[1] == frozenset({"p"})


def test_kripke_model_validation():
    with pytest.raises(InvalidModelError):
        KripkeModel((frozenset({0, 1}), frozenset({1})), (frozenset({"p"}), frozenset()))
    with pytest.raises(InvalidModelError):
        KripkeModel((frozenset({0}), frozenset({1})), (frozenset(), frozenset()))
    with pytest.raises(InvalidModelError):
        KripkeModel((), ())
    model = KripkeModel((frozenset({0, 1}), frozenset({1})), (frozenset(), frozenset({"p"})))
    with pytest.raises(KernelError):
        eval_kripke(model, 2, parse_formula("p"))


def test_render_lists_order_and_forced_atoms():
    model = kripke_countermodel(parse_formula("~~p -> p"))
    text = model.render()
    assert "order: 0 <= 1" in text
    assert "world 1 forces: p" in text
    assert "world 0 forces: -" in text


def test_oracle_report():
    report = oracle_report(Logic.IPC, parse_formula("~~p -> p"))
    assert report.logic == "ipc"
    assert not report.valid
    assert report.countermodel.worlds == [0, 1]
    assert report.formula == "~~p -> p"

    assert oracle_report(Logic.CLASSICAL, parse_formula("~~p -> p")).valid
    assert oracle_report(Logic.IPC, parse_formula("~(p & q) -> p -> ~q")).valid


def test_parse_logic():
    assert parse_logic("CPC") == Logic.CLASSICAL
    assert parse_logic("intuitionistic") == Logic.IPC
    with pytest.raises(KernelError):
        parse_logic("modal")


def test_sequent_soundness_reads_graphs_as_formulas():
    double_cut = Sequent(parse_graph("((p))"), parse_graph("p"))
    assert sequent_sound(Logic.CLASSICAL, double_cut)
    assert not sequent_sound(Logic.IPC, double_cut)
    assert sequent_sound(Logic.IPC, Sequent(parse_graph("p"), parse_graph("((p))")))


def _formula_family(rounds: int):
    """Every formula over p, q and F with at most `rounds` nested connectives, And/Or taken up to order."""
    family = {parse_formula(text) for text in ("p", "q", "F")}
    for _ in range(rounds):
        ordered = sorted(family, key=print_formula)
        grown = set(family)
        for i, a in enumerate(ordered):
            for b in ordered[i:]:
                grown.add(And(a, b))
                grown.add(Or(a, b))
            for b in ordered:
                grown.add(Imp(a, b))
        family = grown
    return sorted(family, key=print_formula)


def _assert_oracles_agree(f, trials):
    model = kripke_countermodel(f, max_worlds=6, trials=trials)
    assert (model is None) == ipc_valid(f), print_formula(f)
    if model is None:
        assert classical_valid(f), print_formula(f)
    else:
        assert not eval_kripke(model, 0, f)


@pytest.mark.slow
def test_g4ip_and_kripke_agree_on_every_small_formula():
    family = _formula_family(2)
    assert len(family) > 1000
    for f in family:
        _assert_oracles_agree(f, trials=100)


@pytest.mark.slow
def test_g4ip_and_kripke_agree_on_random_formulas():
    sampler = FormulaSampler(Random(4), max_atoms=2, max_depth=3)
    for _ in range(300):
        _assert_oracles_agree(sampler.formula(), trials=200)


def test_glivenko_on_random_formulas():
    sampler = FormulaSampler(Random(6), max_atoms=2, max_depth=3)
    for _ in range(200):
        f = sampler.formula()
        assert classical_valid(f) == ipc_valid(neg(neg(f))), print_formula(f)
