"""Lemma database operations: registration, persistence and lemma elimination."""
from dataclasses import replace
from itertools import count
from pathlib import Path
from typing import Dict, Iterator, Tuple, Union

from src.exceptions import KernelError, LemmaDbError
from src.models.graph import Graph, substitute
from src.models.lemma import LemmaDb, LemmaEntry
from src.models.proof import Derivation, LemmaStep, RuleStep, Step
from src.services.checker import DerivationChecker
from src.services.matching import match_sequent
from src.syntax.proofs import parse_proof, print_proof


def register_lemma(name: str, derivation: Derivation, db: LemmaDb) -> LemmaDb:
    """Check derivation against db and return a new db that also holds it as a lemma."""
    if name in db:
        raise LemmaDbError(f"lemma {name!r} is already registered")
    verdict = DerivationChecker(db).check(derivation)
    if not verdict.accepted:
        raise LemmaDbError(f"lemma {name!r} does not check at {verdict.location}: {verdict.reason}")
    return db.with_entry(LemmaEntry.from_derivation(name, derivation))


def dump_db(db: LemmaDb) -> str:
    return print_proof([replace(entry.derivation, name=entry.name, variables=entry.variables) for entry in db])


def save_db(db: LemmaDb, path: Union[str, Path]) -> None:
    Path(path).write_text(dump_db(db), encoding="utf-8")


def load_text(text: str) -> LemmaDb:
    db = LemmaDb()
    if not text.strip():
        return db
    for derivation in parse_proof(text):
        try:
            db = register_lemma(derivation.name, derivation, db)
        except LemmaDbError as e:
            raise LemmaDbError(f"lemma database is corrupt: {e}") from None
    return db


def load_db(path: Union[str, Path]) -> LemmaDb:
    """Read a lemma file and re-check every entry in order."""
    return load_text(Path(path).read_text(encoding="utf-8"))


# -- lemma elimination ------------------------------------------------------


def _map_step(step: Step, sigma: Dict[str, Graph], rename: Dict[str, str]) -> Step:
    if isinstance(step, LemmaStep):
        return LemmaStep(
            lemma=step.lemma,
            result=substitute(step.result, sigma),
            substitution=tuple((var, substitute(g, sigma)) for var, g in step.substitution),
        )
    return RuleStep(
        rule=step.rule,
        result=substitute(step.result, sigma),
        witness=None if step.witness is None else substitute(step.witness, sigma),
        split=None if step.split is None else substitute(step.split, sigma),
        premises=tuple(rename.get(label, label) for label in step.premises),
    )


def _labels(derivation: Derivation) -> Iterator[str]:
    for label, sub in derivation.subproofs:
        yield label
        yield from _labels(sub)


def instantiate(derivation: Derivation, sigma: Dict[str, Graph], prefix: str = "") -> Derivation:
    """Substitute sigma through every graph of derivation and prefix every subproof label."""
    rename = {label: f"{prefix}{label}" for label in _labels(derivation)}
    return _instantiate(derivation, sigma, rename)


def _instantiate(derivation: Derivation, sigma: Dict[str, Graph], rename: Dict[str, str]) -> Derivation:
    return replace(
        derivation,
        initial=substitute(derivation.initial, sigma),
        steps=tuple(_map_step(step, sigma, rename) for step in derivation.steps),
        subproofs=tuple((rename[label], _instantiate(sub, sigma, rename)) for label, sub in derivation.subproofs),
        goal=None if derivation.goal is None else substitute(derivation.goal, sigma),
    )


class LemmaExpander:
    """Inlines lemma uses so that only basic rules remain."""

    def __init__(self, db: LemmaDb):
        self.db = db
        self._expanded: Dict[str, Derivation] = {}
        self._counter = count(1)

    def lemma_body(self, name: str) -> Derivation:
        if name not in self._expanded:
            entry = self.db.get(name)
            if entry is None:
                raise LemmaDbError(f"unknown lemma {name!r}")
            self._expanded[name] = self.expand(entry.derivation)
        return self._expanded[name]

    def _sigma(self, step: LemmaStep, current: Graph) -> Dict[str, Graph]:
        entry = self.db.get(step.lemma)
        if entry is None:
            raise LemmaDbError(f"unknown lemma {step.lemma!r}")
        if step.substitution:
            return step.sigma
        sequent = entry.sequent
        found = next(
            match_sequent(sequent.source, sequent.target, current, step.result, frozenset(entry.variables)), None
        )
        if found is None:
            raise KernelError(f"lemma {step.lemma} does not match {current.key!r} |- {step.result.key!r}")
        return found

    def expand(self, derivation: Derivation) -> Derivation:
        subproofs = [(label, self.expand(sub)) for label, sub in derivation.subproofs]
        steps = []
        current = derivation.initial
        for step in derivation.steps:
            if isinstance(step, LemmaStep):
                body = self.lemma_body(step.lemma)
                inlined = instantiate(body, self._sigma(step, current), f"{step.lemma}_{next(self._counter)}_")
                subproofs.extend(inlined.subproofs)
                steps.extend(inlined.steps)
            else:
                steps.append(step)
            current = step.result
        return replace(derivation, steps=tuple(steps), subproofs=tuple(subproofs))


def expand(derivation: Derivation, db: LemmaDb) -> Derivation:
    """A lemma-free derivation with the same endpoints."""
    return LemmaExpander(db).expand(derivation)


def lemma_free(derivation: Derivation) -> bool:
    return not derivation.lemma_names()


def dependency_order(db: LemmaDb) -> Tuple[Tuple[str, Tuple[str, ...]], ...]:
    return tuple((entry.name, entry.dependencies) for entry in db)
