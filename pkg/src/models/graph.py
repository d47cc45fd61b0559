"""Canonical data model for well-done graphs.

A graph is a sheet: a finite multiset of items. Every value is built in
canonical form, so structural equality is canonical equality.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, Iterable, Iterator, List, Mapping, Set, Tuple, Union


def _item_key(item: "Item") -> str:
    return item.key


@dataclass(frozen=True, eq=False)
class Graph:
    """A sheet of assertion: items kept sorted by their canonical encoding."""

    items: Tuple["Item", ...] = ()
    key: str = field(init=False, repr=False)

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.items, key=_item_key))
        object.__setattr__(self, "items", ordered)
        object.__setattr__(self, "key", " ".join(item.key for item in ordered))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.key == other.key

    def __hash__(self) -> int:
        return hash(("graph", self.key))

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self) -> Iterator["Item"]:
        return iter(self.items)

    def __bool__(self) -> bool:
        return bool(self.items)

    def __repr__(self) -> str:
        return f"Graph({self.key!r})"

    @classmethod
    def of(cls, *items: "Item") -> "Graph":
        return cls(tuple(items))


@dataclass(frozen=True, eq=False)
class Atom:
    name: str
    key: str = field(init=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "key", self.name)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Atom) and self.key == other.key

    def __hash__(self) -> int:
        return hash(("atom", self.key))


@dataclass(frozen=True, eq=False)
class Cut:
    body: Graph
    key: str = field(init=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "key", f"({self.body.key})")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Cut) and self.key == other.key

    def __hash__(self) -> int:
        return hash(("cut", self.key))


@dataclass(frozen=True, eq=False)
class Scroll:
    """Ordered: the antecedent sits in the outer area, the consequent in the dotted curve."""

    antecedent: Graph
    consequent: Graph
    key: str = field(init=False, repr=False)

    def __post_init__(self) -> None:
        left = f"{self.antecedent.key} " if self.antecedent else ""
        right = f" {self.consequent.key}" if self.consequent else ""
        object.__setattr__(self, "key", "{" + left + "=>" + right + "}")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Scroll) and self.key == other.key

    def __hash__(self) -> int:
        return hash(("scroll", self.key))


@dataclass(frozen=True, eq=False)
class Disj:
    """Unordered pair of disjuncts, stored with the smaller encoding first."""

    left: Graph
    right: Graph
    key: str = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.right.key < self.left.key:
            left, right = self.right, self.left
            object.__setattr__(self, "left", left)
            object.__setattr__(self, "right", right)
        left = f"{self.left.key} " if self.left else ""
        right = f" {self.right.key}" if self.right else ""
        object.__setattr__(self, "key", "{" + left + "|" + right + "}")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Disj) and self.key == other.key

    def __hash__(self) -> int:
        return hash(("disj", self.key))


Item = Union[Atom, Cut, Scroll, Disj]

EMPTY = Graph()
FALSUM = Graph.of(Cut(EMPTY))


def sheet(*items: Item) -> Graph:
    return Graph(tuple(items))


def atom_sheet(*names: str) -> Graph:
    return Graph(tuple(Atom(name) for name in names))


def juxtapose(*graphs: Graph) -> Graph:
    items: List[Item] = []
    for graph in graphs:
        items.extend(graph.items)
    return Graph(tuple(items))


def canonicalize(g: Graph) -> Graph:
    """Rebuild g bottom-up; construction already sorts, so this is idempotent."""
    return Graph(tuple(_canonical_item(item) for item in g.items))


def _canonical_item(item: Item) -> Item:
    if isinstance(item, Atom):
        return Atom(item.name)
    if isinstance(item, Cut):
        return Cut(canonicalize(item.body))
    if isinstance(item, Scroll):
        return Scroll(canonicalize(item.antecedent), canonicalize(item.consequent))
    return Disj(canonicalize(item.left), canonicalize(item.right))


def equal(a: Graph, b: Graph) -> bool:
    return canonicalize(a).key == canonicalize(b).key


def substitute(g: Graph, sigma: Mapping[str, Graph]) -> Graph:
    """Simultaneously replace each atom in sigma's domain by its graph."""
    if not sigma:
        return g
    items: List[Item] = []
    for item in g.items:
        if isinstance(item, Atom):
            if item.name in sigma:
                items.extend(sigma[item.name].items)
            else:
                items.append(item)
        elif isinstance(item, Cut):
            items.append(Cut(substitute(item.body, sigma)))
        elif isinstance(item, Scroll):
            items.append(Scroll(substitute(item.antecedent, sigma), substitute(item.consequent, sigma)))
        else:
            items.append(Disj(substitute(item.left, sigma), substitute(item.right, sigma)))
    return Graph(tuple(items))


def multiplicities(g: Graph) -> Dict[str, Tuple[Item, int]]:
    counts: Dict[str, Tuple[Item, int]] = {}
    for item in g.items:
        seen = counts.get(item.key)
        counts[item.key] = (item, seen[1] + 1 if seen else 1)
    return counts


def splits(g: Graph) -> List[Tuple[Graph, Graph]]:
    """Every (sub, rest) pair with sub ⊎ rest = g, one per distinct sub-multiset."""
    groups = list(multiplicities(g).values())
    pairs: List[Tuple[Graph, Graph]] = []
    for taken in product(*(range(count + 1) for _, count in groups)):
        sub: List[Item] = []
        rest: List[Item] = []
        for (item, count), k in zip(groups, taken):
            sub.extend([item] * k)
            rest.extend([item] * (count - k))
        pairs.append((Graph(tuple(sub)), Graph(tuple(rest))))
    return pairs


def sub_multisets(g: Graph) -> List[Graph]:
    return [sub for sub, _ in splits(g)]


def contains(g: Graph, part: Graph) -> bool:
    """True when part is a sub-multiset of g's top-level items."""
    have = Counter(item.key for item in g.items)
    need = Counter(item.key for item in part.items)
    return all(have[key] >= count for key, count in need.items())


def difference(g: Graph, part: Graph) -> Graph:
    """g minus part, as multisets. Caller guarantees contains(g, part)."""
    remove = Counter(item.key for item in part.items)
    kept: List[Item] = []
    for item in g.items:
        if remove[item.key] > 0:
            remove[item.key] -= 1
        else:
            kept.append(item)
    return Graph(tuple(kept))


def without_item(g: Graph, index: int) -> Graph:
    return Graph(g.items[:index] + g.items[index + 1:])


def distinct_positions(g: Graph) -> Iterator[Tuple[int, Item]]:
    """Yield one position per distinct item; duplicates give identical rewrites."""
    seen: Set[str] = set()
    for index, item in enumerate(g.items):
        if item.key not in seen:
            seen.add(item.key)
            yield index, item


def single(g: Graph) -> Union[Item, None]:
    return g.items[0] if len(g.items) == 1 else None


def measure(g: Graph) -> Tuple[int, int]:
    """(size, depth): items counted at every depth, and maximum nesting."""
    size = 0
    depth = 0
    for item in g.items:
        item_size, item_depth = _measure_item(item)
        size += item_size
        depth = max(depth, item_depth)
    return size, depth


def _measure_item(item: Item) -> Tuple[int, int]:
    if isinstance(item, Atom):
        return 1, 1
    if isinstance(item, Cut):
        size, depth = measure(item.body)
        return size + 1, depth + 1
    if isinstance(item, Scroll):
        bodies = (item.antecedent, item.consequent)
    else:
        bodies = (item.left, item.right)
    sizes, depths = zip(*(measure(body) for body in bodies))
    return sum(sizes) + 1, max(depths) + 1


def size(g: Graph) -> int:
    return measure(g)[0]


def atoms(g: Graph) -> Set[str]:
    names: Set[str] = set()
    for item in g.items:
        if isinstance(item, Atom):
            names.add(item.name)
        elif isinstance(item, Cut):
            names |= atoms(item.body)
        elif isinstance(item, Scroll):
            names |= atoms(item.antecedent) | atoms(item.consequent)
        else:
            names |= atoms(item.left) | atoms(item.right)
    return names


def subgraphs(g: Graph) -> Set[Graph]:
    """Every sub-multiset of every area of g, including the nested ones."""
    found: Set[Graph] = set(sub_multisets(g))
    for item in g.items:
        if isinstance(item, Cut):
            found |= subgraphs(item.body)
        elif isinstance(item, Scroll):
            found |= subgraphs(item.antecedent) | subgraphs(item.consequent)
        elif isinstance(item, Disj):
            found |= subgraphs(item.left) | subgraphs(item.right)
    return found
