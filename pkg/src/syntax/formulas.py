"""Formula notation: T, F, ~ (tightest), &, v, -> (loosest, right-associative)."""
from lark import Lark, Transformer
from lark.exceptions import LarkError

from src.models.formula import (
    BOT,
    TOP,
    And,
    Bot,
    Formula,
    Imp,
    Or,
    Top,
    Var,
    is_negation,
)
from src.syntax.common import ATOM_PATTERN, COMMENTS, to_parse_error

FORMULA_RULES = r"""
?implication: disjunction
            | disjunction "->" implication  -> imp
?disjunction: conjunction
            | disjunction "v" conjunction   -> or_
?conjunction: unary
            | conjunction "&" unary         -> and_
?unary: "~" unary                           -> not_
      | atomic
?atomic: VAR                                -> var
       | "T"                                -> top
       | "F"                                -> bot
       | "(" implication ")"

VAR: """ + ATOM_PATTERN + "\n"

FORMULA_GRAMMAR = "start: implication\n" + FORMULA_RULES + COMMENTS


class FormulaBuilder(Transformer):
    def start(self, children):
        return children[0]

    def imp(self, children):
        return Imp(children[0], children[1])

    def or_(self, children):
        return Or(children[0], children[1])

    def and_(self, children):
        return And(children[0], children[1])

    def not_(self, children):
        return Imp(children[0], BOT)

    def var(self, children):
        return Var(str(children[0]))

    def top(self, _children):
        return TOP

    def bot(self, _children):
        return BOT


_parser = Lark(FORMULA_GRAMMAR, parser="lalr", transformer=FormulaBuilder())


def parse_formula(text: str) -> Formula:
    try:
        return _parser.parse(text)
    except LarkError as e:
        raise to_parse_error(e, "formula") from e


_IMP, _OR, _AND, _ATOMIC = 1, 2, 3, 4


def _level(f: Formula) -> int:
    if isinstance(f, Imp):
        return _ATOMIC if is_negation(f) else _IMP
    if isinstance(f, Or):
        return _OR
    if isinstance(f, And):
        return _AND
    return _ATOMIC


def _show(f: Formula, minimum: int) -> str:
    text = print_formula(f)
    return f"({text})" if _level(f) < minimum else text


def print_formula(f: Formula) -> str:
    """Print with minimal parentheses; A -> F is re-sugared as ~A."""
    match f:
        case Var(name):
            return name
        case Top():
            return "T"
        case Bot():
            return "F"
        case Imp(left, Bot()):
            return "~" + _show(left, _ATOMIC)
        case Imp(left, right):
            return f"{_show(left, _OR)} -> {_show(right, _IMP)}"
        case Or(left, right):
            return f"{_show(left, _OR)} v {_show(right, _AND)}"
        case And(left, right):
            return f"{_show(left, _AND)} & {_show(right, _ATOMIC)}"
    raise TypeError(f"not a formula: {f!r}")
