"""Tests for formulas, the graph translation and the embedding."""
import os
import sys
from random import Random

import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.exceptions import ParseError
from src.models.formula import BOT, TOP, And, Imp, Or, Var, depth, embed, iff, neg, translate, variables
from src.models.graph import juxtapose
from src.services.fuzz import FormulaSampler, GraphSampler
from src.services.semantics import ipc_valid
from src.syntax.formulas import parse_formula, print_formula
from src.syntax.common import RESERVED_NAMES
from src.syntax.graphs import parse_graph, print_graph


@pytest.mark.parametrize(
    "graph, formula",
    [
        ("", "T"),
        ("#", "~T"),
        ("{p => q}", "p -> q"),
        ("(p)", "~p"),
        ("a (b)", "~b & a"),
        ("{p | q}", "p v q"),
        ("{p => ()}", "p -> ~T"),
    ],
)
def test_translate(graph, formula):
    assert print_formula(translate(parse_graph(graph))) == formula


@pytest.mark.parametrize(
    "formula, graph",
    [
        ("p v q", "{p | q}"),
        ("p & q -> r", "{p q => r}"),
        ("~p", "{p => ()}"),
        ("T", ""),
        ("F", "()"),
        ("p -> q -> r", "{p => {q => r}}"),
    ],
)
def test_embed(formula, graph):
    assert print_graph(embed(parse_formula(formula))) == graph


def test_precedence_and_associativity():
    assert parse_formula("p -> q -> r") == Imp(Var("p"), Imp(Var("q"), Var("r")))
    assert parse_formula("p & q v r") == Or(And(Var("p"), Var("q")), Var("r"))
    assert parse_formula("~p & q") == And(neg(Var("p")), Var("q"))
    assert parse_formula("p & q & r") == And(And(Var("p"), Var("q")), Var("r"))


def test_v_is_reserved_for_disjunction():
    assert parse_formula("p v q") == Or(Var("p"), Var("q"))
    with pytest.raises(ParseError):
        parse_formula("v")


def test_print_uses_minimal_parentheses():
    for text in ["(p -> q) -> r", "p -> q -> r", "~(p v q)", "~~p", "p v q & r", "(p v q) & r"]:
        assert print_formula(parse_formula(text)) == text


def test_negation_is_implication_to_falsum():
    assert parse_formula("~p") == Imp(Var("p"), BOT)
    assert print_formula(Imp(Var("p"), BOT)) == "~p"


@pytest.mark.parametrize("text", ["p ->", "(p", "p & & q", "P"])
def test_formula_parse_errors(text):
    with pytest.raises(ParseError):
        parse_formula(text)


def test_translate_embed_is_ipc_equivalent():
    """Embedding then translating back gives an IPC-equivalent formula."""
    for text in ["p", "T", "F", "p & (q v ~r)", "(p -> q) -> ~~p", "p v q v r", "~(p & q) -> r"]:
        f = parse_formula(text)
        assert ipc_valid(iff(f, translate(embed(f)))), text


def test_embed_translate_round_trip_on_graphs():
    for text in ["a (b)", "{a => (b)}", "((a)) {a | b}", "{ => a}"]:
        g = parse_graph(text)
        assert ipc_valid(iff(translate(g), translate(embed(translate(g)))))


def test_variables_and_depth():
    f = parse_formula("(p -> q) & ~r")
    assert variables(f) == {"p", "q", "r"}
    assert depth(f) == 2
    assert variables(TOP) == set()


@pytest.mark.parametrize("name", RESERVED_NAMES)
def test_reserved_names_are_not_atoms(name):
    """Keywords never parse as atoms, so every translated graph prints a parsable formula."""
    with pytest.raises(ParseError):
        parse_graph(name)
    with pytest.raises(ParseError):
        parse_formula(name)
    longer = parse_graph(f"{name}1 ({name}_x)")
    assert print_formula(translate(longer)) == f"~{name}_x & {name}1"
    assert parse_formula(print_formula(translate(longer))) == translate(longer)


def test_translated_graphs_reparse():
    sampler = GraphSampler(Random(11), max_atoms=3, max_depth=4, max_items=3)
    for _ in range(1000):
        f = translate(sampler.graph())
        assert parse_formula(print_formula(f)) == f


def test_random_formulas_round_trip():
    sampler = FormulaSampler(Random(5), max_atoms=3, max_depth=4)
    for _ in range(1000):
        f = sampler.formula()
        assert parse_formula(print_formula(f)) == f, print_formula(f)


def test_random_formulas_embed_then_translate_equivalently():
    sampler = FormulaSampler(Random(8), max_atoms=2, max_depth=3)
    for _ in range(200):
        f = sampler.formula()
        assert ipc_valid(iff(f, translate(embed(f)))), print_formula(f)


def test_juxtaposition_reads_as_conjunction():
    sampler = GraphSampler(Random(21), max_atoms=2, max_depth=3, max_items=2)
    for _ in range(200):
        a, b = sampler.graph(), sampler.graph()
        together = translate(juxtapose(a, b))
        assert ipc_valid(iff(together, And(translate(a), translate(b)))), print_graph(juxtapose(a, b))
