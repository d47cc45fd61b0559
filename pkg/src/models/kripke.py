"""Finite Kripke models for intuitionistic propositional logic."""
from dataclasses import dataclass
from typing import FrozenSet, List, Tuple

from src.exceptions import KernelError
from src.models.schemas import KripkeModelOut


class InvalidModelError(KernelError):
    pass


@dataclass(frozen=True)
class KripkeModel:
    """Worlds 0..n-1 with 0 as the root.

    above[w] lists every v with w <= v (w included); valuation[w] is the set
    of atoms forced at w.
    """

    above: Tuple[FrozenSet[int], ...]
    valuation: Tuple[FrozenSet[str], ...]

    def __post_init__(self) -> None:
        n = len(self.above)
        if n == 0 or len(self.valuation) != n:
            raise InvalidModelError("a model needs at least one world and a valuation for each")
        for w, ups in enumerate(self.above):
            if w not in ups:
                raise InvalidModelError(f"order is not reflexive at world {w}")
            if w not in self.above[0]:
                raise InvalidModelError(f"world {w} is not above the root")
            for v in ups:
                if not self.above[v] <= ups:
                    raise InvalidModelError(f"order is not transitive through {w} <= {v}")
                if v != w and w in self.above[v]:
                    raise InvalidModelError(f"order is not antisymmetric on {w}, {v}")
                if not self.valuation[w] <= self.valuation[v]:
                    raise InvalidModelError(f"valuation is not persistent from {w} to {v}")

    @property
    def size(self) -> int:
        return len(self.above)

    @property
    def worlds(self) -> range:
        return range(len(self.above))

    def order_pairs(self) -> List[Tuple[int, int]]:
        return [(w, v) for w in self.worlds for v in sorted(self.above[w]) if v != w]

    def to_schema(self) -> KripkeModelOut:
        return KripkeModelOut(
            worlds=list(self.worlds),
            order=self.order_pairs(),
            forced={w: sorted(self.valuation[w]) for w in self.worlds},
        )

    def render(self) -> str:
        lines = [f"worlds: {' '.join(str(w) for w in self.worlds)}"]
        pairs = self.order_pairs()
        lines.append("order: " + (", ".join(f"{w} <= {v}" for w, v in pairs) if pairs else "(discrete)"))
        for w in self.worlds:
            forced = " ".join(sorted(self.valuation[w])) or "-"
            lines.append(f"  world {w} forces: {forced}")
        return "\n".join(lines)
