"""Tops, bottoms and two-fold roles of elements under 2-uniform tolerances."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .lattice import Lattice
from .tolerance import BinaryRelation, _blocks, require_two_uniform


@dataclass(frozen=True)
class ElementRole:
    element: int
    lower_neighbour: Optional[int]
    upper_neighbour: Optional[int]

    @property
    def is_top(self) -> bool:
        return self.lower_neighbour is not None

    @property
    def is_bottom(self) -> bool:
        return self.upper_neighbour is not None


class Fold(enum.Enum):
    NONE = "none"
    SPLIT = "split"
    ADHERENT = "adherent"

    def __bool__(self):
        return self is not Fold.NONE


@dataclass(frozen=True)
class TwoFoldRole:
    element: int
    top: Fold
    bottom: Fold


@dataclass(frozen=True, order=True)
class Violation:
    condition: str  # "A1" or "A2"
    u: int
    v: int
    via: str  # "T" or "S"

    def __str__(self):
        return f"{self.condition}-violation u={self.u} v={self.v} via={self.via}"


def classify(L: Lattice, R: BinaryRelation) -> list[ElementRole]:
    """Lower and upper ``R``-neighbour of every element."""
    require_two_uniform(L, R)
    return list(_classify(L, R))


@lru_cache(maxsize=65536)
def _classify(L: Lattice, R: BinaryRelation) -> tuple[ElementRole, ...]:
    lower = [None] * L.n
    upper = [None] * L.n
    for block in _blocks(R):
        x, y = block.elements
        if L.covers(y, x):
            x, y = y, x
        if not L.covers(x, y):
            raise AssertionError(f"block {block} of a 2-uniform tolerance is not a cover pair")
        if lower[y] is not None or upper[x] is not None:
            raise AssertionError(f"element with two {'lower' if lower[y] is not None else 'upper'} neighbours")
        lower[y] = x
        upper[x] = y
    roles = tuple(ElementRole(u, lower[u], upper[u]) for u in range(L.n))
    for r in roles:
        if not (r.is_top or r.is_bottom):
            raise AssertionError(f"element {r.element} is neither a top nor a bottom")
    return roles


def _fold(a: Optional[int], b: Optional[int]) -> Fold:
    if a is None or b is None:
        return Fold.NONE
    return Fold.ADHERENT if a == b else Fold.SPLIT


def two_fold_roles(L: Lattice, T: BinaryRelation, S: BinaryRelation) -> list[TwoFoldRole]:
    """Split/adherent two-fold top and bottom status of each element for the pair ``(T, S)``."""
    rt, rs = classify(L, T), classify(L, S)
    return [TwoFoldRole(u,
                        _fold(rt[u].lower_neighbour, rs[u].lower_neighbour),
                        _fold(rt[u].upper_neighbour, rs[u].upper_neighbour))
            for u in range(L.n)]


def amicability_violations(L: Lattice, T: BinaryRelation, S: BinaryRelation) -> list[Violation]:
    """Every failure of the upward (A1) and downward (A2) propagation rules."""
    roles = two_fold_roles(L, T, S)
    out = []
    for u in range(L.n):
        if roles[u].top:
            for v in L.upper_covers[u]:
                via = "T" if (u, v) in T else "S" if (u, v) in S else None
                if via and not roles[v].top:
                    out.append(Violation("A1", u, v, via))
        if roles[u].bottom:
            for v in L.lower_covers[u]:
                via = "T" if (v, u) in T else "S" if (v, u) in S else None
                if via and not roles[v].bottom:
                    out.append(Violation("A2", u, v, via))
    return sorted(out)


def is_amicable(L: Lattice, T: BinaryRelation, S: BinaryRelation) -> bool:
    return not amicability_violations(L, T, S)
