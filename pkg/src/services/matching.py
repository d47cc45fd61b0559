"""Multiset pattern matching of schematic graphs.

A schematic atom stands for a whole sub-multiset of the area it occurs in,
so the sheet "a (a b)" matches "p q (p q r)" with a := p q, b := r.
"""
from typing import Dict, FrozenSet, Iterator, List, Tuple

from src.models.graph import Atom, Cut, Disj, Graph, Item, Scroll, contains, difference, splits

Binding = Dict[str, Graph]


def match(pattern: Graph, g: Graph, variables: FrozenSet[str], env: Binding = None) -> Iterator[Binding]:
    """Yield every binding of the schematic atoms that turns pattern into g."""
    seen = set()
    for found in _match_graph(pattern, g, variables, dict(env or {})):
        key = tuple(sorted((name, value.key) for name, value in found.items()))
        if key not in seen:
            seen.add(key)
            yield found


def match_sequent(
    source: Graph, target: Graph, g: Graph, h: Graph, variables: FrozenSet[str], env: Binding = None
) -> Iterator[Binding]:
    for bound in match(source, g, variables, env):
        yield from match(target, h, variables, bound)


def _match_graph(pattern: Graph, g: Graph, variables: FrozenSet[str], env: Binding) -> Iterator[Binding]:
    fixed: List[Item] = []
    slots: List[str] = []
    for item in pattern.items:
        if isinstance(item, Atom) and item.name in variables:
            slots.append(item.name)
        else:
            fixed.append(item)
    for bound, remaining in _match_items(fixed, list(g.items), variables, env):
        yield from _fill_slots(slots, Graph(tuple(remaining)), bound)


def _match_items(
    fixed: List[Item], available: List[Item], variables: FrozenSet[str], env: Binding
) -> Iterator[Tuple[Binding, List[Item]]]:
    if not fixed:
        yield env, available
        return
    head, tail = fixed[0], fixed[1:]
    tried = set()
    for index, candidate in enumerate(available):
        if candidate.key in tried:
            continue
        tried.add(candidate.key)
        rest = available[:index] + available[index + 1:]
        for bound in _match_item(head, candidate, variables, env):
            yield from _match_items(tail, rest, variables, bound)


def _match_item(pattern: Item, item: Item, variables: FrozenSet[str], env: Binding) -> Iterator[Binding]:
    if isinstance(pattern, Atom):
        if isinstance(item, Atom) and item.name == pattern.name:
            yield env
    elif isinstance(pattern, Cut):
        if isinstance(item, Cut):
            yield from _match_graph(pattern.body, item.body, variables, env)
    elif isinstance(pattern, Scroll):
        if isinstance(item, Scroll):
            for bound in _match_graph(pattern.antecedent, item.antecedent, variables, env):
                yield from _match_graph(pattern.consequent, item.consequent, variables, bound)
    elif isinstance(item, Disj):
        for left, right in ((item.left, item.right), (item.right, item.left)):
            for bound in _match_graph(pattern.left, left, variables, env):
                yield from _match_graph(pattern.right, right, variables, bound)


def _fill_slots(slots: List[str], remaining: Graph, env: Binding) -> Iterator[Binding]:
    if not slots:
        if not remaining.items:
            yield env
        return
    name, tail = slots[0], slots[1:]
    if name in env:
        if contains(remaining, env[name]):
            yield from _fill_slots(tail, difference(remaining, env[name]), env)
        return
    if not tail:
        yield {**env, name: remaining}
        return
    for sub, rest in splits(remaining):
        yield from _fill_slots(tail, rest, {**env, name: sub})
