"""Rule schemas of the four systems and their registries.

First-degree schemas rewrite a whole sheet; second-degree schemas combine
verified sequents. Nothing here applies a rule below the sheet: deep
rewriting goes through CTX and lemmas.
"""
from dataclasses import dataclass, field
from random import Random
from typing import Callable, Dict, FrozenSet, Iterable, Optional, Sequence, Set, Tuple

from src.exceptions import SideConditionError, UnknownRuleError, UnknownSystemError, WitnessRequiredError
from src.models.graph import (
    EMPTY,
    FALSUM,
    Cut,
    Disj,
    Graph,
    Scroll,
    atom_sheet,
    contains,
    difference,
    distinct_positions,
    juxtapose,
    sheet,
    single,
    splits,
    sub_multisets,
    without_item,
)
from src.models.proof import Sequent, SystemId

Apply = Callable[[Graph, Optional[Graph]], Set[Graph]]
Admits = Callable[[Graph, Graph, Optional[Graph]], bool]
Sampler = Callable[[Random, Callable[[], Graph]], Graph]


@dataclass(frozen=True)
class RuleSchema:
    name: str
    degree: int
    summary: str
    existential: bool = False
    apply: Optional[Apply] = field(default=None, compare=False, repr=False)
    admits_fn: Optional[Admits] = field(default=None, compare=False, repr=False)
    sample: Optional[Sampler] = field(default=None, compare=False, repr=False)
    smallest: Tuple[Graph, ...] = field(default=(), compare=False, repr=False)

    def admits(self, g: Graph, h: Graph, witness: Optional[Graph] = None) -> bool:
        if self.admits_fn is not None:
            return self.admits_fn(g, h, witness)
        return h in apply_first_degree(self, g, witness)


# -- first degree ---------------------------------------------------------


def _erase(g: Graph, _w: Optional[Graph]) -> Set[Graph]:
    return set(sub_multisets(g))


def _insert_in_cut(g: Graph, w: Optional[Graph]) -> Set[Graph]:
    item = single(g)
    if not isinstance(item, Cut):
        return set()
    return {sheet(Cut(juxtapose(item.body, w)))}


def _iterate(g: Graph, _w: Optional[Graph]) -> Set[Graph]:
    item = single(g)
    if not isinstance(item, Cut):
        return set()
    results = set()
    for index, inner in distinct_positions(item.body):
        if not isinstance(inner, Cut):
            continue
        rest = without_item(item.body, index)
        for copied in sub_multisets(rest):
            results.add(sheet(Cut(juxtapose(rest, sheet(Cut(juxtapose(inner.body, copied)))))))
    return results


def _deiterate(g: Graph, _w: Optional[Graph]) -> Set[Graph]:
    results = set()
    for index, item in distinct_positions(g):
        if not isinstance(item, Cut):
            continue
        context = without_item(g, index)
        if contains(item.body, context):
            results.add(juxtapose(context, sheet(Cut(difference(item.body, context)))))
    return results


def _double_cut_elim(g: Graph, _w: Optional[Graph]) -> Set[Graph]:
    results = set()
    for index, item in distinct_positions(g):
        inner = single(item.body) if isinstance(item, Cut) else None
        if isinstance(inner, Cut):
            results.add(juxtapose(without_item(g, index), inner.body))
    return results


def _double_cut_insert(g: Graph, _w: Optional[Graph]) -> Set[Graph]:
    item = single(g)
    if not isinstance(item, Cut):
        return set()
    return {
        sheet(Cut(juxtapose(kept, sheet(Cut(sheet(Cut(wrapped)))))))
        for kept, wrapped in splits(item.body)
    }


def _or_intro(g: Graph, w: Optional[Graph]) -> Set[Graph]:
    return {sheet(Disj(g, w))}


def _neg_intro(g: Graph, _w: Optional[Graph]) -> Set[Graph]:
    item = single(g)
    if not isinstance(item, Cut):
        return set()
    return {sheet(Scroll(item.body, FALSUM))}


def _neg_elim(g: Graph, _w: Optional[Graph]) -> Set[Graph]:
    item = single(g)
    if isinstance(item, Scroll) and item.consequent == FALSUM:
        return {sheet(Cut(item.antecedent))}
    return set()


def _modus_ponens(g: Graph, _w: Optional[Graph]) -> Set[Graph]:
    results = set()
    for index, item in distinct_positions(g):
        if isinstance(item, Scroll) and without_item(g, index) == item.antecedent:
            results.add(item.consequent)
    return results


def _falsum_elim(g: Graph, w: Optional[Graph]) -> Set[Graph]:
    return {w} if g == FALSUM else set()


def _scroll_from_cut(g: Graph, _w: Optional[Graph]) -> Set[Graph]:
    item = single(g)
    if not isinstance(item, Cut):
        return set()
    return {sheet(Scroll(kept, sheet(Cut(moved)))) for kept, moved in splits(item.body)}


def _close_scroll(g: Graph, _w: Optional[Graph]) -> Set[Graph]:
    item = single(g)
    if not isinstance(item, Scroll):
        return set()
    return {sheet(Cut(juxtapose(item.antecedent, sheet(Cut(item.consequent)))))}


def _scroll_from_disj(g: Graph, _w: Optional[Graph]) -> Set[Graph]:
    item = single(g)
    if not isinstance(item, Disj):
        return set()
    return {
        sheet(Scroll(sheet(Cut(item.left)), item.right)),
        sheet(Scroll(sheet(Cut(item.right)), item.left)),
    }


def _disj_from_cuts(g: Graph, _w: Optional[Graph]) -> Set[Graph]:
    item = single(g)
    if not isinstance(item, Cut) or len(item.body) != 2:
        return set()
    first, second = item.body.items
    if isinstance(first, Cut) and isinstance(second, Cut):
        return {sheet(Disj(first.body, second.body))}
    return set()


def _admits_erase(g: Graph, h: Graph, _w: Optional[Graph]) -> bool:
    return contains(g, h)


# -- samplers: random source graphs shaped so the schema matches ----------


def _any(rng: Random, draw: Callable[[], Graph]) -> Graph:
    return draw()


def _one_cut(rng: Random, draw: Callable[[], Graph]) -> Graph:
    return sheet(Cut(draw()))


def _iterate_shape(rng: Random, draw: Callable[[], Graph]) -> Graph:
    return sheet(Cut(juxtapose(draw(), draw(), sheet(Cut(draw())))))


def _deiterate_shape(rng: Random, draw: Callable[[], Graph]) -> Graph:
    context = draw()
    return juxtapose(context, sheet(Cut(juxtapose(context, draw()))))


def _double_cut_shape(rng: Random, draw: Callable[[], Graph]) -> Graph:
    return juxtapose(draw(), sheet(Cut(sheet(Cut(draw())))))


def _neg_scroll_shape(rng: Random, draw: Callable[[], Graph]) -> Graph:
    return sheet(Scroll(draw(), FALSUM))


def _modus_ponens_shape(rng: Random, draw: Callable[[], Graph]) -> Graph:
    antecedent = draw()
    return juxtapose(antecedent, sheet(Scroll(antecedent, draw())))


def _falsum_shape(rng: Random, draw: Callable[[], Graph]) -> Graph:
    return FALSUM


def _scroll_shape(rng: Random, draw: Callable[[], Graph]) -> Graph:
    return sheet(Scroll(draw(), draw()))


def _disj_shape(rng: Random, draw: Callable[[], Graph]) -> Graph:
    return sheet(Disj(draw(), draw()))


def _two_cuts_shape(rng: Random, draw: Callable[[], Graph]) -> Graph:
    return sheet(Cut(sheet(Cut(draw()), Cut(draw()))))


def _p(*names: str) -> Graph:
    return atom_sheet(*names)


def _c(*graphs: Graph) -> Graph:
    return sheet(Cut(juxtapose(*graphs)))


P, Q = _p("p"), _p("q")

FIRST_DEGREE: Tuple[RuleSchema, ...] = (
    RuleSchema("R2", 1, "erase: A B |- A", apply=_erase, admits_fn=_admits_erase, sample=_any,
               smallest=(_p("p", "q"),)),
    RuleSchema("R3", 1, "insert in cut: (A) |- (A B)", existential=True, apply=_insert_in_cut,
               sample=_one_cut, smallest=(_c(P),)),
    RuleSchema("R4", 1, "iterate: (B C (A)) |- (B C (A B))", apply=_iterate, sample=_iterate_shape,
               smallest=(_c(P, _c(Q)),)),
    RuleSchema("R5", 1, "deiterate: A (A B) |- A (B)", apply=_deiterate, sample=_deiterate_shape,
               smallest=(juxtapose(P, _c(P, Q)),)),
    RuleSchema("R6", 1, "double-cut elimination: A ((B)) |- A B", apply=_double_cut_elim,
               sample=_double_cut_shape, smallest=(_c(_c(P)),)),
    RuleSchema("R7", 1, "double cut in cut: (A B) |- (A ((B)))", apply=_double_cut_insert,
               sample=_one_cut, smallest=(_c(P, Q),)),
    RuleSchema("I_OR", 1, "A |- {A | B}", existential=True, apply=_or_intro, sample=_any, smallest=(P,)),
    RuleSchema("I_NEG", 1, "(A) |- {A => ()}", apply=_neg_intro, sample=_one_cut, smallest=(_c(P),)),
    RuleSchema("E_NEG", 1, "{A => ()} |- (A)", apply=_neg_elim, sample=_neg_scroll_shape,
               smallest=(sheet(Scroll(P, FALSUM)),)),
    RuleSchema("MPI", 1, "A {A => B} |- B", apply=_modus_ponens, sample=_modus_ponens_shape,
               smallest=(juxtapose(P, sheet(Scroll(P, Q))),)),
    RuleSchema("E_BOT", 1, "() |- A", existential=True, apply=_falsum_elim, sample=_falsum_shape,
               smallest=(FALSUM,)),
    RuleSchema("I_P2", 1, "(A B) |- {A => (B)}", apply=_scroll_from_cut, sample=_one_cut,
               smallest=(_c(P, Q),)),
    RuleSchema("E_P", 1, "{A => B} |- (A (B))", apply=_close_scroll, sample=_scroll_shape,
               smallest=(sheet(Scroll(P, Q)),)),
    RuleSchema("I_P3", 1, "{A | B} |- {(A) => B}", apply=_scroll_from_disj, sample=_disj_shape,
               smallest=(sheet(Disj(P, Q)),)),
    RuleSchema("I_ORP", 1, "((A) (B)) |- {A | B}", apply=_disj_from_cuts, sample=_two_cuts_shape,
               smallest=(_c(_c(P), _c(Q)),)),
)

SECOND_DEGREE: Tuple[RuleSchema, ...] = (
    RuleSchema("R0", 2, "A |- B and A |- C give A |- B C"),
    RuleSchema("R8", 2, "A B |- C gives A |- (B (C))"),
    RuleSchema("R8I", 2, "A B |- C gives A |- {B => C}"),
    RuleSchema("R8ID", 2, "A |- B gives |- {A => B}"),
    RuleSchema("E_OR", 2, "A |- C and B |- C give {A | B} |- C"),
    RuleSchema("CTX", 2, "B |- C gives A B |- A C"),
)

CATALOG: Dict[str, RuleSchema] = {rule.name: rule for rule in FIRST_DEGREE + SECOND_DEGREE}


def get_rule(name: str) -> RuleSchema:
    try:
        return CATALOG[name]
    except KeyError:
        raise UnknownRuleError(f"unknown rule {name!r}") from None


def apply_first_degree(
    rule: RuleSchema,
    g: Graph,
    witness: Optional[Graph] = None,
    pool: Optional[Iterable[Graph]] = None,
) -> Set[Graph]:
    """Every sheet reachable from g by one application of rule."""
    if rule.degree != 1 or rule.apply is None:
        raise SideConditionError(f"{rule.name} is not a first-degree rule")
    if not rule.existential:
        return rule.apply(g, None)
    if witness is not None:
        return rule.apply(g, witness)
    if pool is None:
        raise WitnessRequiredError(f"{rule.name} needs a witness graph")
    results: Set[Graph] = set()
    for candidate in pool:
        results |= rule.apply(g, candidate)
    return results


def _arity(rule: RuleSchema, premises: Sequence[Sequent], expected: int) -> None:
    if len(premises) != expected:
        raise SideConditionError(f"{rule.name} takes {expected} premise(s), got {len(premises)}")


def conclude_second_degree(
    rule: RuleSchema,
    premises: Sequence[Sequent],
    split: Optional[Graph] = None,
    context: Optional[Graph] = None,
) -> Set[Sequent]:
    """Every sequent the schema concludes from verified premises.

    For R8 and R8I, split pins the part A that stays on the sheet; without it
    one conclusion is produced per split of the premise source. For CTX,
    context is the graph added on both sides.
    """
    name = rule.name
    if rule.degree != 2:
        raise SideConditionError(f"{name} is not a second-degree rule")
    if name == "R0":
        _arity(rule, premises, 2)
        first, second = premises
        if first.source != second.source:
            raise SideConditionError("R0 needs premises with equal sources")
        return {Sequent(first.source, juxtapose(first.target, second.target))}
    if name in ("R8", "R8I"):
        _arity(rule, premises, 1)
        (premise,) = premises
        if split is not None:
            if not contains(premise.source, split):
                raise SideConditionError(f"{name} split is not part of the premise source")
            choices = [(split, difference(premise.source, split))]
        else:
            choices = splits(premise.source)
        conclusions = set()
        for kept, moved in choices:
            if name == "R8":
                target = sheet(Cut(juxtapose(moved, sheet(Cut(premise.target)))))
            else:
                target = sheet(Scroll(moved, premise.target))
            conclusions.add(Sequent(kept, target))
        return conclusions
    if name == "R8ID":
        _arity(rule, premises, 1)
        (premise,) = premises
        return {Sequent(EMPTY, sheet(Scroll(premise.source, premise.target)))}
    if name == "E_OR":
        _arity(rule, premises, 2)
        first, second = premises
        if first.target != second.target:
            raise SideConditionError("E_OR needs premises with equal targets")
        return {Sequent(sheet(Disj(first.source, second.source)), first.target)}
    if name == "CTX":
        _arity(rule, premises, 1)
        return {ctx_lift(premises[0], context if context is not None else EMPTY)}
    raise UnknownRuleError(f"unknown second-degree rule {name!r}")


def ctx_lift(s: Sequent, context: Graph) -> Sequent:
    return Sequent(juxtapose(context, s.source), juxtapose(context, s.target))


# -- registries -------------------------------------------------------------


@dataclass(frozen=True)
class SystemRegistry:
    id: str
    basic_rules: Tuple[RuleSchema, ...]
    optional_rules: Tuple[RuleSchema, ...] = ()
    admissible_rules: Tuple[RuleSchema, ...] = (CATALOG["CTX"],)
    axiom: Graph = EMPTY
    system: Optional[SystemId] = None

    @property
    def rule_names(self) -> FrozenSet[str]:
        return frozenset(rule.name for rule in self.basic_rules)

    @property
    def first_degree(self) -> Tuple[RuleSchema, ...]:
        return tuple(rule for rule in self.basic_rules if rule.degree == 1)

    def allows(self, name: str, include_optional: bool = False) -> bool:
        pool = self.basic_rules + self.admissible_rules
        if include_optional:
            pool += self.optional_rules
        return any(rule.name == name for rule in pool)

    def with_rules(self, *names: str, registry_id: Optional[str] = None) -> "SystemRegistry":
        """A modified registry, used for experiments and planted-defect tests."""
        extra = tuple(get_rule(name) for name in names if name not in self.rule_names)
        return SystemRegistry(
            id=registry_id or f"{self.id}+{'+'.join(names)}",
            basic_rules=self.basic_rules + extra,
            optional_rules=self.optional_rules,
            admissible_rules=self.admissible_rules,
            system=self.system,
        )


def _rules(*names: str) -> Tuple[RuleSchema, ...]:
    return tuple(CATALOG[name] for name in names)


_ALFA_IO_RULES = ("R0", "R2", "MPI", "I_OR", "R8I", "E_OR", "I_P3", "I_P2", "E_P")

REGISTRIES: Dict[SystemId, SystemRegistry] = {
    SystemId.ALFAO: SystemRegistry(
        "ALFAO", _rules("R0", "R2", "R3", "R4", "R5", "R6", "R7", "R8"), system=SystemId.ALFAO
    ),
    SystemId.ALFA_I: SystemRegistry(
        "ALFA_I",
        _rules("R0", "R2", "I_OR", "I_NEG", "E_NEG", "MPI", "E_BOT", "R8I", "E_OR"),
        optional_rules=_rules("R8ID"),
        system=SystemId.ALFA_I,
    ),
    SystemId.ALFA_IO: SystemRegistry("ALFA_IO", _rules(*_ALFA_IO_RULES), system=SystemId.ALFA_IO),
    SystemId.ALFA_IO_CLASSIC: SystemRegistry(
        "ALFA_IO_CLASSIC", _rules(*_ALFA_IO_RULES, "I_ORP"), system=SystemId.ALFA_IO_CLASSIC
    ),
}


def registry(system_id) -> SystemRegistry:
    if not isinstance(system_id, SystemId):
        system_id = SystemId.parse(str(system_id))
    try:
        return REGISTRIES[system_id]
    except KeyError:
        raise UnknownSystemError(f"unknown system {system_id!r}") from None


def lemma_compatible(lemma_system: SystemId, system: SystemId) -> bool:
    """A lemma may be reused wherever every basic rule of its own system is available."""
    return lemma_system == system or registry(lemma_system).rule_names <= registry(system).rule_names
