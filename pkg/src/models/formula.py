"""Intuitionistic propositional formulas, the graph translation and its embedding."""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Mapping, Set, Union

from src.models.graph import (
    EMPTY,
    FALSUM,
    Atom,
    Cut,
    Disj,
    Graph,
    Item,
    Scroll,
    juxtapose,
    sheet,
)


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"


Formula = Union[Var, Top, Bot, And, Or, Imp]

TOP = Top()
BOT = Bot()


def neg(f: Formula) -> Formula:
    """Negation is defined notation: ~A is A -> F."""
    return Imp(f, BOT)


def iff(a: Formula, b: Formula) -> Formula:
    return And(Imp(a, b), Imp(b, a))


def conj(*formulas: Formula) -> Formula:
    if not formulas:
        return TOP
    return reduce(And, formulas)


def is_negation(f: Formula) -> bool:
    return isinstance(f, Imp) and isinstance(f.right, Bot)


def variables(f: Formula) -> Set[str]:
    match f:
        case Var(name):
            return {name}
        case And(left, right) | Or(left, right) | Imp(left, right):
            return variables(left) | variables(right)
        case _:
            return set()


def depth(f: Formula) -> int:
    match f:
        case And(left, right) | Or(left, right) | Imp(left, right):
            return 1 + max(depth(left), depth(right))
        case _:
            return 0


def substitute_formula(f: Formula, sigma: Mapping[str, Formula]) -> Formula:
    match f:
        case Var(name):
            return sigma.get(name, f)
        case And(left, right):
            return And(substitute_formula(left, sigma), substitute_formula(right, sigma))
        case Or(left, right):
            return Or(substitute_formula(left, sigma), substitute_formula(right, sigma))
        case Imp(left, right):
            return Imp(substitute_formula(left, sigma), substitute_formula(right, sigma))
        case _:
            return f


def translate(g: Graph) -> Formula:
    """Graph to formula: blank is T, juxtaposition a left-nested conjunction in canonical order."""
    if not g.items:
        return TOP
    return reduce(And, (translate_item(item) for item in g.items))


def translate_item(item: Item) -> Formula:
    if isinstance(item, Atom):
        return Var(item.name)
    if isinstance(item, Cut):
        return Imp(translate(item.body), BOT)
    if isinstance(item, Scroll):
        return Imp(translate(item.antecedent), translate(item.consequent))
    return Or(translate(item.left), translate(item.right))


def embed(f: Formula) -> Graph:
    """Right inverse of translate up to IPC equivalence."""
    match f:
        case Var(name):
            return sheet(Atom(name))
        case Top():
            return EMPTY
        case Bot():
            return FALSUM
        case And(left, right):
            return juxtapose(embed(left), embed(right))
        case Or(left, right):
            return sheet(Disj(embed(left), embed(right)))
        case Imp(left, right):
            return sheet(Scroll(embed(left), embed(right)))
    raise TypeError(f"not a formula: {f!r}")
