"""Proof objects: sequents, steps, derivations and scripts."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, Iterator, Optional, Tuple, Union

from src.exceptions import UnknownSystemError
from src.models.graph import Graph


class SystemId(str, Enum):
    ALFAO = "ALFAO"
    ALFA_I = "ALFA_I"
    ALFA_IO = "ALFA_IO"
    ALFA_IO_CLASSIC = "ALFA_IO_CLASSIC"

    @classmethod
    def parse(cls, text: str) -> "SystemId":
        try:
            return cls(text.strip().upper())
        except ValueError:
            known = ", ".join(member.value for member in cls)
            raise UnknownSystemError(f"unknown system {text!r} (known: {known})") from None


class Logic(str, Enum):
    CLASSICAL = "CLASSICAL"
    IPC = "IPC"


SYSTEM_LOGIC: Dict[SystemId, Logic] = {
    SystemId.ALFAO: Logic.CLASSICAL,
    SystemId.ALFA_I: Logic.IPC,
    SystemId.ALFA_IO: Logic.IPC,
    SystemId.ALFA_IO_CLASSIC: Logic.CLASSICAL,
}


@dataclass(frozen=True)
class Sequent:
    """source ⊢ target, both whole sheets."""

    source: Graph
    target: Graph

    def __str__(self) -> str:
        return f"{self.source.key} |- {self.target.key}"


@dataclass(frozen=True)
class RuleStep:
    """One application of a basic rule; second-degree rules cite subproofs in premises."""

    rule: str
    result: Graph
    witness: Optional[Graph] = None
    split: Optional[Graph] = None
    premises: Tuple[str, ...] = ()


@dataclass(frozen=True)
class LemmaStep:
    """Use of a registered lemma under a substitution of its schematic atoms."""

    lemma: str
    result: Graph
    substitution: Tuple[Tuple[str, Graph], ...] = ()

    @property
    def sigma(self) -> Dict[str, Graph]:
        return dict(self.substitution)


Step = Union[RuleStep, LemmaStep]


@dataclass(frozen=True)
class Derivation:
    """A chain initial ⊢ ... ⊢ final, with named subproofs for second-degree premises.

    Subproofs are ordered: each one may cite the subproofs declared before it
    and those of every enclosing derivation.
    """

    system: SystemId
    initial: Graph
    steps: Tuple[Step, ...] = ()
    subproofs: Tuple[Tuple[str, "Derivation"], ...] = ()
    name: Optional[str] = None
    variables: Tuple[str, ...] = ()
    goal: Optional[Graph] = None

    @property
    def final(self) -> Graph:
        return self.steps[-1].result if self.steps else self.initial

    @property
    def sequent(self) -> Sequent:
        return Sequent(self.initial, self.final)

    def subproof(self, name: str) -> Optional["Derivation"]:
        for label, derivation in self.subproofs:
            if label == name:
                return derivation
        return None

    def walk(self) -> Iterator["Derivation"]:
        yield self
        for _, sub in self.subproofs:
            yield from sub.walk()

    def step_count(self) -> int:
        return len(self.steps) + sum(sub.step_count() for _, sub in self.subproofs)

    def lemma_names(self) -> Tuple[str, ...]:
        names = []
        for derivation in self.walk():
            for step in derivation.steps:
                if isinstance(step, LemmaStep) and step.lemma not in names:
                    names.append(step.lemma)
        return tuple(names)

    def renamed(self, name: str) -> "Derivation":
        return replace(self, name=name)


@dataclass(frozen=True)
class ProofScript:
    """A parsed .gpf file: theorems in declaration order, each tagged with its system."""

    theorems: Tuple[Derivation, ...] = field(default_factory=tuple)

    def __iter__(self) -> Iterator[Derivation]:
        return iter(self.theorems)

    def __len__(self) -> int:
        return len(self.theorems)
