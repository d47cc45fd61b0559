"""The derivation checker: the only component that decides whether a proof is accepted."""
from typing import Dict, List, Optional

from src.exceptions import KernelError
from src.models.graph import Graph, contains, difference, substitute
from src.models.lemma import LemmaDb
from src.models.proof import Derivation, LemmaStep, Sequent, Step, SystemId
from src.models.schemas import CheckVerdict
from src.services.matching import match_sequent
from src.services.rules import (
    CATALOG,
    SystemRegistry,
    conclude_second_degree,
    lemma_compatible,
    registry,
)


class StepRejected(Exception):
    def __init__(self, index: Optional[int], reason: str, path: Optional[List[str]] = None):
        super().__init__(reason)
        self.index = index
        self.reason = reason
        self.path = path or []

    def within(self, label: str) -> "StepRejected":
        return StepRejected(self.index, self.reason, [label] + self.path)

    @property
    def location(self) -> str:
        parts = list(self.path)
        if self.index is not None:
            parts.append(f"step {self.index}")
        return ", ".join(parts)


class DerivationChecker:
    """Checks derivations against a system registry and a lemma database."""

    def __init__(self, db: Optional[LemmaDb] = None, include_optional: bool = False):
        self.db = db or LemmaDb()
        self.include_optional = include_optional

    def check(self, derivation: Derivation, rules: Optional[SystemRegistry] = None) -> CheckVerdict:
        rules = rules or registry(derivation.system)
        verdict = CheckVerdict(
            theorem=derivation.name,
            system=derivation.system.value,
            accepted=True,
            source=derivation.initial.key,
            target=derivation.final.key,
        )
        try:
            self._run(derivation, rules, {})
        except StepRejected as rejected:
            return verdict.model_copy(
                update={
                    "accepted": False,
                    "step_index": rejected.index,
                    "location": rejected.location,
                    "reason": rejected.reason,
                }
            )
        return verdict

    def sequent_of(self, derivation: Derivation) -> Sequent:
        """Check and return the proved sequent, raising KernelError on rejection."""
        verdict = self.check(derivation)
        if not verdict.accepted:
            raise KernelError(f"derivation rejected at {verdict.location}: {verdict.reason}")
        return derivation.sequent

    def _run(self, derivation: Derivation, rules: SystemRegistry, scope: Dict[str, Sequent]) -> Sequent:
        local = dict(scope)
        for label, sub in derivation.subproofs:
            try:
                local[label] = self._run(sub, rules, local)
            except StepRejected as rejected:
                raise rejected.within(f"have {label}") from None
        current = derivation.initial
        for index, step in enumerate(derivation.steps, start=1):
            current = self._apply(step, current, rules, local, index, derivation.system)
        if derivation.goal is not None and current != derivation.goal:
            raise StepRejected(
                len(derivation.steps) or None,
                f"final graph {current.key!r} does not match declared target {derivation.goal.key!r}",
            )
        return Sequent(derivation.initial, current)

    def _apply(
        self,
        step: Step,
        current: Graph,
        rules: SystemRegistry,
        local: Dict[str, Sequent],
        index: int,
        system: SystemId,
    ) -> Graph:
        if isinstance(step, LemmaStep):
            self._check_lemma(step, current, rules, index, rules.system or system)
            return step.result
        schema = CATALOG.get(step.rule)
        if schema is None:
            raise StepRejected(index, f"unknown rule {step.rule}")
        if not rules.allows(step.rule, self.include_optional):
            raise StepRejected(index, f"rule not in system: {step.rule} is not a rule of {rules.id}")
        if schema.degree == 1:
            if schema.existential and step.witness is None:
                raise StepRejected(index, f"{step.rule} needs a witness graph")
            if not schema.admits(current, step.result, step.witness):
                raise StepRejected(index, f"{step.result.key!r} is not reachable from {current.key!r} by {step.rule}")
            return step.result
        premises = []
        for label in step.premises:
            if label not in local:
                raise StepRejected(index, f"unknown subproof {label!r}")
            premises.append(local[label])
        split = step.split
        context = step.witness
        if step.rule in ("R8", "R8I") and split is None:
            split = current
        if step.rule == "CTX" and context is None and premises:
            if not contains(current, premises[0].source):
                raise StepRejected(index, f"CTX premise source {premises[0].source.key!r} is not part of {current.key!r}")
            context = difference(current, premises[0].source)
        try:
            conclusions = conclude_second_degree(schema, premises, split=split, context=context)
        except KernelError as e:
            raise StepRejected(index, str(e)) from None
        if Sequent(current, step.result) not in conclusions:
            claimed = Sequent(current, step.result)
            raise StepRejected(index, f"{step.rule} does not conclude {claimed}")
        return step.result

    def _check_lemma(
        self, step: LemmaStep, current: Graph, rules: SystemRegistry, index: int, system: SystemId
    ) -> None:
        entry = self.db.get(step.lemma)
        if entry is None:
            raise StepRejected(index, f"unknown lemma {step.lemma}")
        if not lemma_compatible(entry.system, system):
            raise StepRejected(index, f"lemma {step.lemma} of {entry.system.value} is not available in {rules.id}")
        sigma = step.sigma
        unknown = set(sigma) - set(entry.variables)
        if unknown:
            raise StepRejected(index, f"lemma {step.lemma} has no schematic atom {sorted(unknown)[0]!r}")
        sequent = entry.sequent
        if step.substitution:
            if substitute(sequent.source, sigma) != current or substitute(sequent.target, sigma) != step.result:
                raise StepRejected(index, f"lemma {step.lemma} under the given substitution does not match")
            return
        free = frozenset(entry.variables)
        if next(match_sequent(sequent.source, sequent.target, current, step.result, free), None) is None:
            raise StepRejected(index, f"lemma {step.lemma} does not match {current.key!r} |- {step.result.key!r}")


def check(derivation: Derivation, db: Optional[LemmaDb] = None, include_optional: bool = False) -> CheckVerdict:
    return DerivationChecker(db, include_optional).check(derivation)
