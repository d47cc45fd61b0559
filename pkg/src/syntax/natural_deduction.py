"""Bracketed notation for natural deduction proofs (.ndp).

    node := TAG "(" formula ")" ("[" label "]")? "{" node* "}"

For example, p -> p is proved by

    IMP_I(p -> p) [x] { HYP(p) [x] {} }
"""
from typing import List

from lark import Lark, Transformer
from lark.exceptions import LarkError

from src.exceptions import NDProofError
from src.models.natural_deduction import NDProof, NDRule
from src.syntax.common import COMMENTS, to_parse_error
from src.syntax.formulas import FORMULA_RULES, FormulaBuilder, print_formula

ND_GRAMMAR = r"""
start: node*
node: TAG "(" implication ")" label? "{" node* "}"
label: "[" NAME "]"

TAG: "HYP" | "AND_I" | "AND_E_L" | "AND_E_R" | "OR_I_L" | "OR_I_R" | "BOT_E" | "IMP_E" | "IMP_I" | "OR_E"
NAME: /[a-z][a-z0-9_]*/
""" + FORMULA_RULES + COMMENTS


class NDBuilder(FormulaBuilder):
    def start(self, children):
        return list(children)

    def node(self, children):
        tag, conclusion, rest = children[0], children[1], children[2:]
        label = None
        if rest and isinstance(rest[0], str):
            label, rest = rest[0], rest[1:]
        try:
            rule = NDRule(str(tag))
        except ValueError:
            raise NDProofError(f"unknown natural deduction rule {tag!r}") from None
        return NDProof(rule=rule, conclusion=conclusion, children=tuple(rest), label=label)

    def label(self, children):
        return str(children[0])


_parser = Lark(ND_GRAMMAR, parser="lalr", transformer=NDBuilder())


def parse_nd_file(text: str) -> List[NDProof]:
    try:
        return _parser.parse(text)
    except LarkError as e:
        raise to_parse_error(e, "natural deduction proof") from e


def parse_nd(text: str) -> NDProof:
    proofs = parse_nd_file(text)
    if len(proofs) != 1:
        raise NDProofError(f"expected exactly one proof, found {len(proofs)}")
    return proofs[0]


def print_nd(proof: NDProof, indent: str = "") -> str:
    head = f"{indent}{proof.rule.value}({print_formula(proof.conclusion)})"
    if proof.label is not None:
        head += f" [{proof.label}]"
    if not proof.children:
        return head + " {}"
    lines = [head + " {"]
    lines.extend(print_nd(child, indent + "  ") for child in proof.children)
    lines.append(indent + "}")
    return "\n".join(lines)
