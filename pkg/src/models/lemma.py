"""Schematic lemmas: checked derivations promoted to reusable rules."""
from dataclasses import dataclass
from typing import Iterator, Optional, Tuple

from src.models.graph import atoms
from src.models.proof import Derivation, Sequent, SystemId


@dataclass(frozen=True)
class LemmaEntry:
    name: str
    system: SystemId
    variables: Tuple[str, ...]
    derivation: Derivation

    @property
    def sequent(self) -> Sequent:
        return self.derivation.sequent

    @property
    def dependencies(self) -> Tuple[str, ...]:
        return self.derivation.lemma_names()

    @classmethod
    def from_derivation(cls, name: str, derivation: Derivation) -> "LemmaEntry":
        variables = derivation.variables
        if not variables:
            sequent = derivation.sequent
            variables = tuple(sorted(atoms(sequent.source) | atoms(sequent.target)))
        return cls(name=name, system=derivation.system, variables=variables, derivation=derivation.renamed(name))


@dataclass(frozen=True)
class LemmaDb:
    """Immutable, ordered: registration returns a new value."""

    entries: Tuple[LemmaEntry, ...] = ()

    def get(self, name: str) -> Optional[LemmaEntry]:
        for entry in self.entries:
            if entry.name == name:
                return entry
        return None

    def __contains__(self, name: str) -> bool:
        return self.get(name) is not None

    def __iter__(self) -> Iterator[LemmaEntry]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(entry.name for entry in self.entries)

    def with_entry(self, entry: LemmaEntry) -> "LemmaDb":
        return LemmaDb(self.entries + (entry,))
