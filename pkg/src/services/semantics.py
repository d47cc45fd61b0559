"""Semantic oracles.

Classical validity is decided by truth tables. Intuitionistic validity is
decided by a contraction-free sequent calculus (G4ip): left implications are
split by the shape of their antecedent, so no rule copies its principal
formula and proof search terminates. Finite Kripke models give independent
evidence of invalidity.
"""
from functools import lru_cache
from itertools import permutations, product
from random import Random
from typing import Dict, FrozenSet, Iterator, List, Optional, Tuple

from src.config import get_settings
from src.exceptions import KernelError
from src.models.formula import BOT, And, Bot, Formula, Imp, Or, Top, Var, translate, variables
from src.models.kripke import KripkeModel
from src.models.proof import Logic, Sequent
from src.models.schemas import OracleReport
from src.syntax.formulas import print_formula

EXHAUSTIVE_WORLDS = 4


def parse_logic(text: str) -> Logic:
    key = text.strip().lower()
    if key in ("cpc", "classical"):
        return Logic.CLASSICAL
    if key in ("ipc", "intuitionistic"):
        return Logic.IPC
    raise KernelError(f"unknown logic {text!r} (expected cpc or ipc)")


# -- classical --------------------------------------------------------------


def evaluate(f: Formula, valuation: Dict[str, bool]) -> bool:
    match f:
        case Var(name):
            return valuation[name]
        case Top():
            return True
        case Bot():
            return False
        case And(left, right):
            return evaluate(left, valuation) and evaluate(right, valuation)
        case Or(left, right):
            return evaluate(left, valuation) or evaluate(right, valuation)
        case Imp(left, right):
            return not evaluate(left, valuation) or evaluate(right, valuation)
    raise TypeError(f"not a formula: {f!r}")


def assignments(f: Formula) -> Iterator[Dict[str, bool]]:
    names = sorted(variables(f))
    for values in product((True, False), repeat=len(names)):
        yield dict(zip(names, values))


def classical_valid(f: Formula) -> bool:
    return all(evaluate(f, valuation) for valuation in assignments(f))


# -- intuitionistic ---------------------------------------------------------


def ipc_valid(f: Formula) -> bool:
    return _derivable(frozenset(), f)


def ipc_entails(context: FrozenSet[Formula], goal: Formula) -> bool:
    return _derivable(frozenset(context), goal)


def _left_invertible(context: FrozenSet[Formula]) -> Optional[Tuple[FrozenSet[Formula], ...]]:
    """Apply the first invertible left rule found; None when none applies.

    The result lists the contexts of the premises, all to be proved with the
    same goal.
    """
    for f in context:
        rest = context - {f}
        match f:
            case Top():
                return (rest,)
            case And(left, right):
                return (rest | {left, right},)
            case Or(left, right):
                return (rest | {left}, rest | {right})
            case Imp(Bot(), _):
                return (rest,)
            case Imp(Top(), body):
                return (rest | {body},)
            case Imp(Var() as atom, body) if atom in context:
                return (rest | {body},)
            case Imp(And(c, d), body):
                return (rest | {Imp(c, Imp(d, body))},)
            case Imp(Or(c, d), body):
                return (rest | {Imp(c, body), Imp(d, body)},)
    return None


@lru_cache(maxsize=1 << 16)
def _derivable(context: FrozenSet[Formula], goal: Formula) -> bool:
    if BOT in context or isinstance(goal, Top):
        return True
    if isinstance(goal, Var) and goal in context:
        return True
    premises = _left_invertible(context)
    if premises is not None:
        return all(_derivable(premise, goal) for premise in premises)
    match goal:
        case And(left, right):
            return _derivable(context, left) and _derivable(context, right)
        case Imp(left, right):
            return _derivable(context | {left}, right)
        case Or(left, right):
            if _derivable(context, left) or _derivable(context, right):
                return True
    for f in context:
        if isinstance(f, Imp) and isinstance(f.left, Imp):
            c, d, body = f.left.left, f.left.right, f.right
            rest = context - {f}
            if _derivable(rest | {Imp(d, body)}, Imp(c, d)) and _derivable(rest | {body}, goal):
                return True
    return False


# -- Kripke semantics -------------------------------------------------------


def forcing_set(model: KripkeModel, f: Formula) -> FrozenSet[int]:
    """The worlds of model that force f."""
    worlds = frozenset(model.worlds)
    match f:
        case Var(name):
            return frozenset(w for w in worlds if name in model.valuation[w])
        case Top():
            return worlds
        case Bot():
            return frozenset()
        case And(left, right):
            return forcing_set(model, left) & forcing_set(model, right)
        case Or(left, right):
            return forcing_set(model, left) | forcing_set(model, right)
        case Imp(left, right):
            antecedent = forcing_set(model, left)
            consequent = forcing_set(model, right)
            return frozenset(w for w in worlds if model.above[w] & antecedent <= consequent)
    raise TypeError(f"not a formula: {f!r}")


def eval_kripke(model: KripkeModel, world: int, f: Formula) -> bool:
    if world not in model.worlds:
        raise KernelError(f"world {world} is not in the model")
    return world in forcing_set(model, f)


def _closure(n: int, edges: Dict[int, set]) -> Optional[Tuple[FrozenSet[int], ...]]:
    """Reflexive-transitive closure of edges (w, v) meaning w <= v; None if it is not antisymmetric."""
    above = [{w} | edges.get(w, set()) for w in range(n)]
    changed = True
    while changed:
        changed = False
        for w in range(n):
            extra = set().union(*(above[v] for v in above[w])) - above[w]
            if extra:
                above[w] |= extra
                changed = True
    for w in range(n):
        for v in above[w]:
            if v != w and w in above[v]:
                return None
    return tuple(frozenset(ups) for ups in above)


def _canonical_order(above: Tuple[FrozenSet[int], ...]) -> Tuple[Tuple[int, int], ...]:
    n = len(above)
    best = None
    for perm in permutations(range(1, n)):
        relabel = (0,) + perm
        pairs = tuple(sorted((relabel[w], relabel[v]) for w in range(n) for v in above[w]))
        if best is None or pairs < best:
            best = pairs
    return best


@lru_cache(maxsize=None)
def rooted_orders(n: int) -> Tuple[Tuple[FrozenSet[int], ...], ...]:
    """Rooted partial orders on n worlds, one per isomorphism class."""
    if n == 1:
        return ((frozenset({0}),),)
    candidates = [(w, v) for w in range(1, n) for v in range(1, n) if w != v]
    seen = set()
    orders = []
    for chosen in product((False, True), repeat=len(candidates)):
        edges: Dict[int, set] = {0: set(range(1, n))}
        for (w, v), take in zip(candidates, chosen):
            if take:
                edges.setdefault(w, set()).add(v)
        above = _closure(n, edges)
        if above is None:
            continue
        # only transitively closed choices, so each order is produced once
        closed = {(w, v) for w in range(1, n) for v in above[w] if v != w}
        if closed != {pair for pair, take in zip(candidates, chosen) if take}:
            continue
        key = _canonical_order(above)
        if key not in seen:
            seen.add(key)
            orders.append(above)
    return tuple(orders)


def up_sets(above: Tuple[FrozenSet[int], ...]) -> List[FrozenSet[int]]:
    n = len(above)
    found = []
    for mask in range(1 << n):
        members = frozenset(w for w in range(n) if mask >> w & 1)
        if all(above[w] <= members for w in members):
            found.append(members)
    return found


def _valuations(
    above: Tuple[FrozenSet[int], ...], names: List[str]
) -> Iterator[Tuple[FrozenSet[str], ...]]:
    options = up_sets(above)
    for choice in product(options, repeat=len(names)):
        yield tuple(
            frozenset(name for name, members in zip(names, choice) if w in members) for w in range(len(above))
        )


def _random_order(n: int, rng: Random) -> Tuple[FrozenSet[int], ...]:
    edges: Dict[int, set] = {0: set(range(1, n))}
    for v in range(2, n):
        for w in range(1, v):
            if rng.random() < 0.4:
                edges.setdefault(w, set()).add(v)
    return _closure(n, edges)


def _random_valuation(above: Tuple[FrozenSet[int], ...], names: List[str], rng: Random) -> Tuple[FrozenSet[str], ...]:
    choice = []
    for _ in names:
        seeds = [w for w in range(len(above)) if rng.random() < 0.35]
        choice.append(frozenset().union(*(above[w] for w in seeds)) if seeds else frozenset())
    return tuple(
        frozenset(name for name, members in zip(names, choice) if w in members) for w in range(len(above))
    )


def kripke_countermodel(
    f: Formula, max_worlds: int = 6, trials: int = 2000, seed: int = 0
) -> Optional[KripkeModel]:
    """Smallest model found whose root does not force f.

    Orders of up to four worlds are enumerated exhaustively up to
    isomorphism; larger ones are sampled.
    """
    if max_worlds < 1:
        raise KernelError("max_worlds must be at least 1")
    names = sorted(variables(f))
    for n in range(1, min(max_worlds, EXHAUSTIVE_WORLDS) + 1):
        for above in rooted_orders(n):
            for valuation in _valuations(above, names):
                model = KripkeModel(above, valuation)
                if 0 not in forcing_set(model, f):
                    return model
    rng = Random(seed)
    for n in range(EXHAUSTIVE_WORLDS + 1, max_worlds + 1):
        for _ in range(trials):
            above = _random_order(n, rng)
            model = KripkeModel(above, _random_valuation(above, names, rng))
            if 0 not in forcing_set(model, f):
                return model
    return None


# -- bridge to the rule engine ----------------------------------------------


def sequent_formula(s: Sequent) -> Formula:
    return Imp(translate(s.source), translate(s.target))


def valid(logic: Logic, f: Formula) -> bool:
    return classical_valid(f) if logic == Logic.CLASSICAL else ipc_valid(f)


def sequent_sound(logic: Logic, s: Sequent) -> bool:
    return valid(logic, sequent_formula(s))


def oracle_report(logic: Logic, f: Formula, max_worlds: Optional[int] = None) -> OracleReport:
    """Validity of f, with a Kripke countermodel when an IPC formula is invalid."""
    settings = get_settings()
    holds = valid(logic, f)
    report = OracleReport(
        logic="cpc" if logic == Logic.CLASSICAL else "ipc",
        formula=print_formula(f),
        valid=holds,
    )
    if holds or logic == Logic.CLASSICAL:
        return report
    worlds = max_worlds or settings.kripke_max_worlds
    model = kripke_countermodel(f, worlds, settings.kripke_trials)
    if model is None:
        return report.model_copy(update={"note": f"no countermodel found within {worlds} worlds"})
    return report.model_copy(update={"countermodel": model.to_schema()})
