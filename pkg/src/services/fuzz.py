"""Randomized soundness and substitutivity checks for the rule registries."""
from random import Random
from typing import Dict, List, Optional, Tuple

from src.config import get_settings
from src.exceptions import KernelError
from src.models.formula import BOT, TOP, And, Formula, Imp, Or, Var
from src.models.graph import (
    EMPTY,
    Atom,
    Cut,
    Disj,
    Graph,
    Item,
    Scroll,
    atoms,
    juxtapose,
    measure,
    sheet,
    sub_multisets,
    subgraphs,
    substitute,
    without_item,
)
from src.models.proof import SYSTEM_LOGIC, Logic, Sequent, SystemId
from src.models.schemas import Counterexample, FuzzReport
from src.observability.tracing import trace_operation
from src.services.rules import RuleSchema, SystemRegistry, conclude_second_degree, registry
from src.services.semantics import sequent_formula, sequent_sound
from src.syntax.formulas import print_formula

ATOM_NAMES = ("p", "q", "r")


class GraphSampler:
    """Random canonical graphs over a few atoms with bounded nesting."""

    def __init__(self, rng: Random, max_atoms: int = 3, max_depth: int = 3, max_items: int = 2):
        self.rng = rng
        self.names = ATOM_NAMES[:max_atoms]
        self.max_depth = max_depth
        self.max_items = max_items

    def graph(self, depth: Optional[int] = None) -> Graph:
        depth = self.max_depth if depth is None else depth
        count = self.rng.randint(0 if depth < self.max_depth else 1, self.max_items)
        return Graph(tuple(self.item(depth) for _ in range(count)))

    def item(self, depth: int) -> Item:
        if depth <= 1:
            return Atom(self.rng.choice(self.names))
        kind = self.rng.choices(("atom", "cut", "scroll", "disj"), weights=(4, 3, 2, 1))[0]
        if kind == "atom":
            return Atom(self.rng.choice(self.names))
        if kind == "cut":
            return Cut(self.graph(depth - 1))
        if kind == "scroll":
            return Scroll(self.graph(depth - 1), self.graph(depth - 1))
        return Disj(self.graph(depth - 1), self.graph(depth - 1))

    def substitution(self, g: Graph) -> Dict[str, Graph]:
        return {name: self.graph(2) for name in sorted(atoms(g)) if self.rng.random() < 0.7}


class FormulaSampler:
    """Random formulas over a few variables; depth counts connectives above the leaves."""

    def __init__(self, rng: Random, max_atoms: int = 2, max_depth: int = 3, constants: bool = True):
        self.rng = rng
        self.leaves: Tuple[Formula, ...] = tuple(Var(name) for name in ATOM_NAMES[:max_atoms])
        if constants:
            self.leaves += (TOP, BOT)
        self.max_depth = max_depth

    def formula(self, depth: Optional[int] = None) -> Formula:
        depth = self.max_depth if depth is None else depth
        if depth == 0 or self.rng.random() < 0.25:
            return self.rng.choice(self.leaves)
        connective = self.rng.choice((And, Or, Imp, Imp))
        return connective(self.formula(depth - 1), self.formula(depth - 1))


def _witness(rng: Random, rule: RuleSchema, source: Graph) -> Optional[Graph]:
    if not rule.existential:
        return None
    pool = sorted(subgraphs(source), key=lambda g: g.key) or [EMPTY]
    return rng.choice(pool)


def _unsound(rule: RuleSchema, source: Graph, witness: Optional[Graph], logic: Logic) -> Optional[Graph]:
    for result in sorted(rule.apply(source, witness), key=lambda g: g.key):
        if not sequent_sound(logic, Sequent(source, result)):
            return result
    return None


def _shrink_candidates(source: Graph) -> List[Tuple[Graph, Dict[str, Graph]]]:
    candidates = [(without_item(source, index), {}) for index in range(len(source))]
    names = sorted(atoms(source))
    for name in names:
        candidates.append((substitute(source, {name: EMPTY}), {name: EMPTY}))
        for other in names:
            if other < name:
                candidates.append((substitute(source, {name: sheet(Atom(other))}), {name: sheet(Atom(other))}))
    return candidates


def shrink(
    rule: RuleSchema, source: Graph, witness: Optional[Graph], logic: Logic
) -> Tuple[Graph, Optional[Graph], Graph]:
    """Greedily minimize an unsound instance while it stays unsound."""
    result = _unsound(rule, source, witness, logic)
    improved = True
    while improved:
        improved = False
        for candidate, sigma in _shrink_candidates(source):
            smaller = (measure(candidate), len(atoms(candidate))) < (measure(source), len(atoms(source)))
            if not smaller:
                continue
            moved = None if witness is None else substitute(witness, sigma)
            found = _unsound(rule, candidate, moved, logic)
            if found is not None:
                source, witness, result = candidate, moved, found
                improved = True
                break
    return source, witness, result


class RuleFuzzer:
    """Soundness and substitutivity of every rule of a registry under its system's logic."""

    def __init__(
        self,
        system: SystemId,
        seed: int = 0,
        iterations: Optional[int] = None,
        rules: Optional[SystemRegistry] = None,
        second_degree_iterations: Optional[int] = None,
    ):
        settings = get_settings()
        self.system = system
        self.rules = rules or registry(system)
        self.logic = SYSTEM_LOGIC[system]
        self.seed = seed
        self.iterations = settings.fuzz_iterations if iterations is None else iterations
        if self.iterations < 0 or (second_degree_iterations or 0) < 0:
            raise KernelError("iteration counts must be non-negative")
        self.second_degree_iterations = (
            second_degree_iterations if second_degree_iterations is not None else self.iterations
        )
        self.rng = Random(seed)
        self.sampler = GraphSampler(self.rng, settings.fuzz_max_atoms, settings.fuzz_max_depth)

    def _source(self, rule: RuleSchema, index: int) -> Graph:
        if index < len(rule.smallest):
            return rule.smallest[index]
        return rule.sample(self.rng, self.sampler.graph)

    def _counterexample(
        self, rule: RuleSchema, kind: str, source: Graph, target: Graph, detail: Optional[str]
    ) -> Counterexample:
        return Counterexample(
            rule=rule.name,
            kind=kind,
            source=source.key,
            target=target.key,
            formula=print_formula(sequent_formula(Sequent(source, target))),
            detail=detail,
        )

    def fuzz_rule(self, rule: RuleSchema, report: FuzzReport) -> None:
        found_unsound = found_unsubstitutive = False
        for index in range(self.iterations):
            source = self._source(rule, index)
            witness = _witness(self.rng, rule, source)
            report.instances_per_rule[rule.name] = report.instances_per_rule.get(rule.name, 0) + 1
            if index < len(rule.smallest):
                report.smallest_instances += 1
            if not found_unsound and _unsound(rule, source, witness, self.logic) is not None:
                small, small_witness, result = shrink(rule, source, witness, self.logic)
                detail = f"witness {small_witness.key!r}" if small_witness is not None else None
                report.counterexamples.append(self._counterexample(rule, "soundness", small, result, detail))
                found_unsound = True
            if found_unsubstitutive:
                continue
            sigma = self.sampler.substitution(source)
            moved_source = substitute(source, sigma)
            moved_witness = None if witness is None else substitute(witness, sigma)
            expected = rule.apply(moved_source, moved_witness)
            for result in sorted(rule.apply(source, witness), key=lambda g: g.key):
                if substitute(result, sigma) not in expected:
                    shown = ", ".join(f"{name} := {g.key}" for name, g in sigma.items())
                    report.counterexamples.append(
                        self._counterexample(rule, "substitutivity", source, result, f"[{shown}]")
                    )
                    found_unsubstitutive = True
                    break

    def _premise(self, source: Graph) -> Sequent:
        """A random sound sequent from source: one rule step, or an erasure."""
        if self.rng.random() < 0.5:
            rule = self.rng.choice(self.rules.first_degree)
            results = sorted(rule.apply(source, _witness(self.rng, rule, source)), key=lambda g: g.key)
            if results:
                return Sequent(source, self.rng.choice(results))
        return Sequent(source, self.rng.choice(sorted(sub_multisets(source), key=lambda g: g.key)))

    def _second_degree_case(self, name: str) -> Tuple[List[Sequent], Optional[Graph], Optional[Graph]]:
        graph = self.sampler.graph
        if name == "R0":
            source = graph()
            return [self._premise(source), self._premise(source)], None, None
        if name in ("R8", "R8I"):
            kept, moved = graph(), graph()
            return [self._premise(juxtapose(kept, moved))], kept, None
        if name == "R8ID":
            return [self._premise(graph())], None, None
        if name == "E_OR":
            target = graph()
            return [
                Sequent(juxtapose(target, graph()), target),
                Sequent(juxtapose(target, graph()), target),
            ], None, None
        return [self._premise(graph())], None, graph()

    def fuzz_second_degree(self, name: str, report: FuzzReport) -> None:
        schema = next(
            rule for rule in self.rules.basic_rules + self.rules.optional_rules + self.rules.admissible_rules
            if rule.name == name
        )
        for _ in range(self.second_degree_iterations):
            premises, split, context = self._second_degree_case(name)
            if not all(sequent_sound(self.logic, premise) for premise in premises):
                continue
            report.second_degree_instances[name] = report.second_degree_instances.get(name, 0) + 1
            for conclusion in conclude_second_degree(schema, premises, split=split, context=context):
                if not sequent_sound(self.logic, conclusion):
                    report.counterexamples.append(
                        Counterexample(
                            rule=name,
                            kind="soundness",
                            source=conclusion.source.key,
                            target=conclusion.target.key,
                            formula=print_formula(sequent_formula(conclusion)),
                            detail="; ".join(str(premise) for premise in premises),
                        )
                    )
                    return

    def run(self, second_degree: bool = True) -> FuzzReport:
        report = FuzzReport(system=self.rules.id, seed=self.seed, iterations=self.iterations)
        for rule in self.rules.first_degree:
            self.fuzz_rule(rule, report)
        if second_degree and self.second_degree_iterations:
            names = [
                rule.name
                for rule in self.rules.basic_rules + self.rules.optional_rules + self.rules.admissible_rules
                if rule.degree == 2
            ]
            for name in names:
                self.fuzz_second_degree(name, report)
        return report


@trace_operation("fuzz")
def fuzz(
    system: SystemId,
    iterations: Optional[int] = None,
    seed: int = 0,
    rules: Optional[SystemRegistry] = None,
    second_degree_iterations: Optional[int] = None,
) -> FuzzReport:
    return RuleFuzzer(system, seed, iterations, rules, second_degree_iterations).run()
