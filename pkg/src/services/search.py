"""Bounded proof search over the rule engine.

Forward moves are first-degree rules, lemma applications, and a few
second-degree shapes that can be generated from the current sheet alone
(R0 with an identity premise, CTX around one item, R8/R8I with an empty
moved part). Goals that are scrolls, cuts, disjunction sources or
multisets are also decomposed backwards. Every result is re-checked by the
derivation checker before it is returned.
"""
import sys
from collections import deque
from dataclasses import dataclass, field, replace
from itertools import count, product
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from src.config import get_settings
from src.exceptions import KernelError, SoundnessViolation
from src.models.graph import (
    EMPTY,
    Cut,
    Disj,
    Graph,
    Scroll,
    atoms,
    difference,
    distinct_positions,
    juxtapose,
    sheet,
    single,
    size,
    splits,
    sub_multisets,
    subgraphs,
    substitute,
    without_item,
)
from src.models.lemma import LemmaDb
from src.models.proof import SYSTEM_LOGIC, Derivation, LemmaStep, Logic, RuleStep, Sequent, Step, SystemId
from src.models.schemas import SearchReport
from src.observability.tracing import trace_operation
from src.services.checker import DerivationChecker
from src.services.matching import match
from src.services.rules import SystemRegistry, lemma_compatible, registry
from src.services.semantics import sequent_sound
from src.syntax.proofs import print_proof


@dataclass(frozen=True)
class SearchBudget:
    max_steps: int = 6
    max_graph_size: int = 10
    max_branch: int = 32
    witness_pool: Tuple[Graph, ...] = ()

    def __post_init__(self) -> None:
        if min(self.max_steps, self.max_graph_size, self.max_branch) < 1:
            raise KernelError("search budget fields must be positive")

    @classmethod
    def from_settings(cls, **overrides) -> "SearchBudget":
        settings = get_settings()
        values = {
            "max_steps": settings.search_max_steps,
            "max_graph_size": settings.search_max_graph_size,
            "max_branch": settings.search_max_branch,
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)


def default_pool(*graphs: Graph) -> Tuple[Graph, ...]:
    """Subgraphs of the graphs in play, smallest first."""
    found: Set[Graph] = set()
    for g in graphs:
        found |= subgraphs(g)
    return tuple(sorted(found, key=lambda g: (size(g), g.key)))


@dataclass(frozen=True)
class _Move:
    """One forward move; premises of step are filled with fresh labels for premise_proofs."""

    result: Graph
    cost: int
    step: Step
    premise_proofs: Tuple[Derivation, ...] = ()


@dataclass
class _Proof:
    steps: List[Step] = field(default_factory=list)
    subproofs: List[Tuple[str, Derivation]] = field(default_factory=list)
    cost: int = 0


class MoveGenerator:
    """Enumerates forward moves from a sheet within one system."""

    def __init__(
        self,
        system: SystemId,
        db: LemmaDb,
        pool: Sequence[Graph],
        rules: Optional[SystemRegistry] = None,
        rule_names: Optional[Iterable[str]] = None,
        use_lemmas: bool = True,
    ):
        self.system = system
        self.rules = rules or registry(system)
        self.pool = tuple(pool)
        allowed = set(rule_names) if rule_names is not None else None
        self.first_degree = [
            rule for rule in self.rules.first_degree if allowed is None or rule.name in allowed
        ]
        self.lemmas = (
            [entry for entry in db if lemma_compatible(entry.system, system)]
            if use_lemmas and allowed is None
            else []
        )
        self._simple: Dict[Graph, List[_Move]] = {}

    def simple_moves(self, g: Graph) -> List[_Move]:
        """First-degree and lemma moves, one per distinct result."""
        if g in self._simple:
            return self._simple[g]
        moves: Dict[Graph, _Move] = {}
        for rule in self.first_degree:
            witnesses = self.pool if rule.existential else (None,)
            for witness in witnesses:
                for h in sorted(rule.apply(g, witness), key=lambda h: h.key):
                    if h != g and h not in moves:
                        moves[h] = _Move(h, 1, RuleStep(rule.name, h, witness=witness))
        for entry in self.lemmas:
            variables = frozenset(entry.variables)
            target = entry.sequent.target
            for env in match(entry.sequent.source, g, variables):
                free = [v for v in entry.variables if v not in env and v in atoms(target)]
                for choice in product(self.pool, repeat=len(free)):
                    sigma = {**env, **dict(zip(free, choice))}
                    h = substitute(target, sigma)
                    if h == g or h in moves:
                        continue
                    binding = tuple((v, sigma[v]) for v in entry.variables if v in sigma)
                    moves[h] = _Move(h, 1, LemmaStep(entry.name, h, binding))
        self._simple[g] = list(moves.values())
        return self._simple[g]

    def compound_moves(self, g: Graph) -> List[_Move]:
        moves: List[_Move] = []
        simple = self.simple_moves(g)
        if self.rules.allows("R0"):
            identity = Derivation(self.system, g, goal=g)
            for move in simple:
                one_step = Derivation(self.system, g, (move.step,), goal=move.result)
                result = juxtapose(g, move.result)
                moves.append(_Move(result, 2, RuleStep("R0", result), (identity, one_step)))
        if len(g) > 1:
            for index, item in distinct_positions(g):
                part, rest = sheet(item), without_item(g, index)
                for move in self.simple_moves(part):
                    inner = Derivation(self.system, part, (move.step,), goal=move.result)
                    result = juxtapose(rest, move.result)
                    moves.append(_Move(result, 2, RuleStep("CTX", result), (inner,)))
        for name in ("R8I", "R8"):
            if not self.rules.allows(name) or len(g) > 4:
                continue
            for kept in sub_multisets(g):
                steps = (RuleStep("R2", kept),) if kept != g else ()
                premise = Derivation(self.system, g, steps, goal=kept)
                if name == "R8I":
                    result = sheet(Scroll(EMPTY, kept))
                else:
                    result = sheet(Cut(sheet(Cut(kept))))
                moves.append(_Move(result, 1 + len(steps), RuleStep(name, result), (premise,)))
        return moves

    def moves(self, g: Graph, max_size: int, max_branch: int) -> List[_Move]:
        candidates = [
            move for move in self.simple_moves(g) + self.compound_moves(g) if size(move.result) <= max_size
        ]
        candidates.sort(key=lambda move: (move.cost, size(move.result), move.result.key))
        return candidates[:max_branch]


class ProofSearch:
    """Iterative deepening on total step count, with a failure memo per (sheet, goal)."""

    def __init__(self, system: SystemId, db: LemmaDb, budget: SearchBudget, rules: Optional[SystemRegistry] = None):
        self.system = system
        self.db = db
        self.budget = budget
        self.rules = rules or registry(system)
        self._failed: Dict[Tuple[Graph, Graph], int] = {}
        self._labels = count(1)
        self._generator: Optional[MoveGenerator] = None

    def _fresh(self) -> str:
        return f"s{next(self._labels)}"

    def _derivation(self, source: Graph, goal: Graph, proof: _Proof) -> Derivation:
        return Derivation(
            system=self.system,
            initial=source,
            steps=tuple(proof.steps),
            subproofs=tuple(proof.subproofs),
            goal=goal,
        )

    def _commit(self, move: _Move) -> Tuple[Step, List[Tuple[str, Derivation]]]:
        labelled = [(self._fresh(), premise) for premise in move.premise_proofs]
        step = move.step
        if labelled:
            step = replace(step, premises=tuple(label for label, _ in labelled))
        return step, labelled

    def _allows(self, name: str) -> bool:
        return self.rules.allows(name)

    def _decompose(self, g: Graph, goal: Graph, depth: int) -> Optional[_Proof]:
        item = single(goal)
        if isinstance(item, Scroll) and self._allows("R8I"):
            sub = self._prove(juxtapose(g, item.antecedent), item.consequent, depth - 1)
            if sub is not None:
                return self._close("R8I", goal, [(juxtapose(g, item.antecedent), item.consequent, sub)])
        if isinstance(item, Cut) and self._allows("R8"):
            for index, inner in distinct_positions(item.body):
                if not isinstance(inner, Cut):
                    continue
                moved = without_item(item.body, index)
                sub = self._prove(juxtapose(g, moved), inner.body, depth - 1)
                if sub is not None:
                    return self._close("R8", goal, [(juxtapose(g, moved), inner.body, sub)])
        source = single(g)
        if isinstance(source, Disj) and self._allows("E_OR"):
            left = self._prove(source.left, goal, depth - 1)
            if left is not None:
                right = self._prove(source.right, goal, depth - 1 - left.cost)
                if right is not None:
                    return self._close("E_OR", goal, [(source.left, goal, left), (source.right, goal, right)])
        if len(goal) > 1 and self._allows("R0"):
            for first_part, second_part in splits(goal):
                if not first_part or not second_part or first_part.key > second_part.key:
                    continue
                first = self._prove(g, first_part, depth - 1)
                if first is None:
                    continue
                second = self._prove(g, second_part, depth - 1 - first.cost)
                if second is not None:
                    return self._close("R0", goal, [(g, first_part, first), (g, second_part, second)])
        common = _common(g, goal)
        if common:
            part, wanted = difference(g, common), difference(goal, common)
            sub = self._prove(part, wanted, depth - 1)
            if sub is not None:
                return self._close("CTX", goal, [(part, wanted, sub)])
        return None

    def _close(self, rule: str, goal: Graph, premises: List[Tuple[Graph, Graph, _Proof]]) -> _Proof:
        proof = _Proof(cost=1)
        labels = []
        for source, target, sub in premises:
            label = self._fresh()
            proof.subproofs.append((label, self._derivation(source, target, sub)))
            proof.cost += sub.cost
            labels.append(label)
        proof.steps.append(RuleStep(rule, goal, premises=tuple(labels)))
        return proof

    def _prove(self, g: Graph, goal: Graph, depth: int) -> Optional[_Proof]:
        if g == goal:
            return _Proof()
        if depth <= 0:
            return None
        key = (g, goal)
        if self._failed.get(key, -1) >= depth:
            return None
        found = self._decompose(g, goal, depth)
        if found is not None:
            return found
        for move in self._generator.moves(g, self.budget.max_graph_size, self.budget.max_branch):
            if move.cost > depth:
                continue
            rest = self._prove(move.result, goal, depth - move.cost)
            if rest is None:
                continue
            step, labelled = self._commit(move)
            return _Proof(
                steps=[step] + rest.steps,
                subproofs=labelled + rest.subproofs,
                cost=move.cost + rest.cost,
            )
        self._failed[key] = depth
        return None

    def run(self, source: Graph, target: Graph) -> Optional[Derivation]:
        pool = self.budget.witness_pool or default_pool(source, target)
        self._generator = MoveGenerator(self.system, self.db, pool, rules=self.rules)
        checker = DerivationChecker(self.db)
        for depth in range(self.budget.max_steps + 1):
            proof = self._prove(source, target, depth)
            if proof is None:
                continue
            derivation = Derivation(
                system=self.system,
                initial=source,
                steps=tuple(proof.steps),
                subproofs=tuple(proof.subproofs),
                name="found",
            )
            verdict = checker.check(derivation, self.rules)
            if verdict.accepted:
                return derivation
            print(f"[WARNING] search produced a rejected derivation: {verdict.reason}", file=sys.stderr)
            return None
        return None


def _common(g: Graph, h: Graph) -> Graph:
    items = []
    remaining = list(h.items)
    for item in g.items:
        if item in remaining:
            remaining.remove(item)
            items.append(item)
    return Graph(tuple(items))


@trace_operation("search")
def prove(
    system: SystemId, db: LemmaDb, source: Graph, target: Graph, budget: Optional[SearchBudget] = None
) -> Optional[Derivation]:
    """A checked derivation of source |- target within budget, or None if the budget is exhausted."""
    return ProofSearch(system, db, budget or SearchBudget()).run(source, target)


def enumerate_consequences(
    system: SystemId,
    db: LemmaDb,
    source: Graph,
    budget: Optional[SearchBudget] = None,
    rules: Optional[Iterable[str]] = None,
) -> FrozenSet[Graph]:
    """Every sheet reachable from source in at most budget.max_steps forward moves.

    Each consequence is certified against source under the system's logic.
    """
    budget = budget or SearchBudget()
    pool = budget.witness_pool or default_pool(source)
    generator = MoveGenerator(system, db, pool, rule_names=rules)
    logic = SYSTEM_LOGIC[system]
    seen: Set[Graph] = {source}
    frontier = deque([(source, 0)])
    while frontier:
        g, steps = frontier.popleft()
        if steps >= budget.max_steps:
            continue
        for move in generator.simple_moves(g):
            h = move.result
            if h in seen or size(h) > budget.max_graph_size:
                continue
            if not sequent_sound(logic, Sequent(source, h)):
                raise SoundnessViolation(f"{source.key!r} |- {h.key!r} reached by {move.step} is not sound")
            seen.add(h)
            frontier.append((h, steps + 1))
    return frozenset(seen)


def search_report(
    system: SystemId, db: LemmaDb, source: Graph, target: Graph, budget: Optional[SearchBudget] = None
) -> SearchReport:
    """Run prove and certify the goal with the oracle of the system's logic."""
    logic = SYSTEM_LOGIC[system]
    derivation = prove(system, db, source, target, budget)
    report = SearchReport(
        system=system.value,
        source=source.key,
        target=target.key,
        found=derivation is not None,
        semantically_valid=sequent_sound(logic, Sequent(source, target)),
    )
    if derivation is not None:
        return report.model_copy(
            update={"steps": derivation.step_count(), "script": print_proof([derivation.renamed("found")])}
        )
    if not report.semantically_valid:
        name = "CPC" if logic == Logic.CLASSICAL else "IPC"
        return report.model_copy(update={"note": f"semantically invalid in {name}"})
    return report.model_copy(update={"note": "budget exhausted"})
