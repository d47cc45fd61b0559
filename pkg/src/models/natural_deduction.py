"""Natural deduction proof trees for intuitionistic propositional logic."""
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Optional, Tuple

from src.models.formula import Formula, Imp, conj


class NDRule(str, Enum):
    HYP = "HYP"
    AND_I = "AND_I"
    AND_E_L = "AND_E_L"
    AND_E_R = "AND_E_R"
    OR_I_L = "OR_I_L"
    OR_I_R = "OR_I_R"
    BOT_E = "BOT_E"
    IMP_E = "IMP_E"
    IMP_I = "IMP_I"
    OR_E = "OR_E"


ARITY = {
    NDRule.HYP: 0,
    NDRule.AND_I: 2,
    NDRule.AND_E_L: 1,
    NDRule.AND_E_R: 1,
    NDRule.OR_I_L: 1,
    NDRule.OR_I_R: 1,
    NDRule.BOT_E: 1,
    NDRule.IMP_E: 2,
    NDRule.IMP_I: 1,
    NDRule.OR_E: 3,
}

LABELLED = (NDRule.HYP, NDRule.IMP_I, NDRule.OR_E)


@dataclass(frozen=True)
class NDProof:
    """One node of a proof tree.

    HYP carries the label of its hypothesis; IMP_I and OR_E carry the label
    they discharge. IMP_E children are ordered [A, A -> B]; OR_E children are
    [A v B, C from A, C from B].
    """

    rule: NDRule
    conclusion: Formula
    children: Tuple["NDProof", ...] = ()
    label: Optional[str] = None

    def walk(self) -> Iterator["NDProof"]:
        yield self
        for child in self.children:
            yield from child.walk()

    def rules_used(self) -> set:
        return {node.rule for node in self.walk()}


@dataclass(frozen=True)
class NDJudgment:
    """Open hypotheses (label, formula), ordered by label, and the conclusion."""

    hypotheses: Tuple[Tuple[str, Formula], ...]
    conclusion: Formula

    @property
    def context(self) -> Tuple[Formula, ...]:
        return tuple(formula for _, formula in self.hypotheses)

    def as_formula(self) -> Formula:
        return Imp(conj(*self.context), self.conclusion)


@dataclass(frozen=True)
class NDVerdict:
    accepted: bool
    judgment: Optional[NDJudgment] = None
    reason: Optional[str] = None
