"""Reflexive symmetric relations on a lattice: tolerances, blocks, products."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .lattice import Lattice, _bits, product_coordinates


class RelationError(ValueError):
    pass


class SizeMismatch(RelationError):
    pass


class NotATolerance(RelationError):
    pass


class NotTwoUniform(RelationError):
    pass


@dataclass(frozen=True)
class RelationImage:
    """A relation with no symmetry or reflexivity guarantee (e.g. a product)."""

    n: int
    rows: tuple[int, ...]

    def __contains__(self, pair) -> bool:
        x, y = pair
        return bool(self.rows[x] >> y & 1)

    def pairs(self) -> list[tuple[int, int]]:
        return [(x, y) for x in range(self.n) for y in _bits(self.rows[x])]

    def transpose(self) -> RelationImage:
        cols = [0] * self.n
        for x in range(self.n):
            for y in _bits(self.rows[x]):
                cols[y] |= 1 << x
        return RelationImage(self.n, tuple(cols))

    def __sub__(self, other: RelationImage) -> RelationImage:
        return RelationImage(self.n, tuple(a & ~b for a, b in zip(self.rows, other.rows)))


@dataclass(frozen=True)
class BinaryRelation(RelationImage):
    """Reflexive symmetric relation stored as bitmask rows."""

    def __post_init__(self):
        if len(self.rows) != self.n:
            raise RelationError("row count does not match n")
        for x in range(self.n):
            if not self.rows[x] >> x & 1:
                raise RelationError(f"not reflexive at {x}")
            for y in _bits(self.rows[x]):
                if y >= self.n:
                    raise RelationError(f"pair ({x},{y}) out of range")
                if not self.rows[y] >> x & 1:
                    raise RelationError(f"not symmetric at ({x},{y})")

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> BinaryRelation:
        """Diagonal plus the symmetric closure of ``pairs``."""
        rows = [1 << x for x in range(n)]
        for x, y in pairs:
            if not (0 <= x < n and 0 <= y < n):
                raise RelationError(f"pair ({x},{y}) out of range for n={n}")
            rows[x] |= 1 << y
            rows[y] |= 1 << x
        return cls(n, tuple(rows))

    @classmethod
    def diagonal(cls, n: int) -> BinaryRelation:
        return cls(n, tuple(1 << x for x in range(n)))

    @classmethod
    def full(cls, n: int) -> BinaryRelation:
        return cls(n, tuple([(1 << n) - 1] * n))

    def edges(self) -> list[tuple[int, int]]:
        """Off-diagonal pairs ``(x, y)`` with ``x < y``."""
        return [(x, y) for x in range(self.n) for y in _bits(self.rows[x]) if x < y]

    def __str__(self):
        return " ".join(f"{x}{y}" if self.n <= 10 else f"{x}-{y}" for x, y in self.edges()) or "(diagonal)"


@dataclass(frozen=True)
class Block:
    elements: tuple[int, ...]

    def __len__(self):
        return len(self.elements)

    def __str__(self):
        return "{" + ",".join(map(str, self.elements)) + "}"


def _check_size(L: Lattice | None, *rels: RelationImage) -> None:
    sizes = {r.n for r in rels}
    if L is not None:
        sizes.add(L.n)
    if len(sizes) != 1:
        raise SizeMismatch(f"relation sizes disagree: {sorted(sizes)}")


def compatibility_failure(L: Lattice, rel: BinaryRelation) -> tuple | None:
    """First ``((a,b), (c,d), op, missing)`` showing ``rel`` is not compatible."""
    _check_size(L, rel)
    pairs = rel.pairs()
    for (a, b), (c, d) in itertools.product(pairs, repeat=2):
        m = (L.meet(a, c), L.meet(b, d))
        if m not in rel:
            return (a, b), (c, d), "meet", m
        j = (L.join(a, c), L.join(b, d))
        if j not in rel:
            return (a, b), (c, d), "join", j
    return None


def is_tolerance(L: Lattice, rel: BinaryRelation) -> bool:
    # reflexivity and symmetry are enforced by BinaryRelation itself
    return compatibility_failure(L, rel) is None


def is_transitive(rel: RelationImage) -> bool:
    return all(rel.rows[y] & ~rel.rows[x] == 0
               for x in range(rel.n) for y in _bits(rel.rows[x]))


def is_congruence(L: Lattice, rel: BinaryRelation) -> bool:
    return is_tolerance(L, rel) and is_transitive(rel)


def require_tolerance(L: Lattice, rel: BinaryRelation) -> None:
    failure = compatibility_failure(L, rel)
    if failure is not None:
        p, q, op, missing = failure
        raise NotATolerance(f"pairs {p} and {q} force {missing} under {op}, which is missing")


def maximal_cliques(n: int, adjacency: Sequence[int]) -> list[tuple[int, ...]]:
    """Bron-Kerbosch with Tomita pivoting on bitmask adjacency (no self loops)."""
    found = []

    def expand(r, p, x):
        if not p and not x:
            found.append(tuple(sorted(r)))
            return
        pivot = max(_bits(p | x), key=lambda v: bin(p & adjacency[v]).count("1"))
        for v in _bits(p & ~adjacency[pivot]):
            expand(r + [v], p & adjacency[v], x & adjacency[v])
            p &= ~(1 << v)
            x |= 1 << v

    expand([], (1 << n) - 1, 0)
    return sorted(found)


def blocks(L: Lattice, T: BinaryRelation) -> list[Block]:
    """Blocks of a tolerance: the maximal subsets ``X`` with ``X x X`` inside ``T``."""
    require_tolerance(L, T)
    return _blocks(T)


@lru_cache(maxsize=4096)
def _blocks(T: BinaryRelation) -> list[Block]:
    adjacency = [T.rows[x] & ~(1 << x) for x in range(T.n)]
    return [Block(c) for c in maximal_cliques(T.n, adjacency)]


def edge_blocks(T: BinaryRelation) -> list[Block]:
    """Blocks of a relation already known to be 2-uniform: one per edge."""
    return [Block(e) for e in T.edges()]


def is_convex_sublattice(L: Lattice, elements: Iterable[int]) -> bool:
    elems = set(elements)
    for x, y in itertools.product(elems, repeat=2):
        if L.meet(x, y) not in elems or L.join(x, y) not in elems:
            return False
        if not elems.issuperset(L.elements_between(x, y)):
            return False
    return True


def is_two_uniform(L: Lattice, T: BinaryRelation) -> bool:
    return all(len(B) == 2 for B in blocks(L, T))


def require_two_uniform(L: Lattice, T: BinaryRelation) -> None:
    if not _two_uniform_cached(L, T):
        raise NotTwoUniform(f"relation {T} is not a 2-uniform tolerance")


@lru_cache(maxsize=65536)
def _two_uniform_cached(L: Lattice, T: BinaryRelation) -> bool:
    return is_tolerance(L, T) and is_two_uniform(L, T)


def compose(T: RelationImage, S: RelationImage) -> RelationImage:
    """Relational product: ``(x, z)`` iff some ``y`` has ``(x, y)`` in T and ``(y, z)`` in S."""
    _check_size(None, T, S)
    rows = []
    for x in range(T.n):
        acc = 0
        for y in _bits(T.rows[x]):
            acc |= S.rows[y]
        rows.append(acc)
    return RelationImage(T.n, tuple(rows))


def permutes(T: RelationImage, S: RelationImage) -> bool:
    return compose(T, S).rows == compose(S, T).rows


def enumerate_two_uniform(L: Lattice) -> list[BinaryRelation]:
    """All 2-uniform tolerances of ``L``.

    Off-diagonal pairs of a 2-uniform tolerance are cover pairs, and each
    element has at most one lower and one upper partner, so the search runs
    over such matchings of the Hasse diagram only.
    """
    edges = list(L.cover_pairs)
    n = L.n
    everyone = (1 << n) - 1
    found = []

    def search(i, lower_used, upper_used, chosen):
        if i == len(edges):
            touched = lower_used | upper_used
            if touched != everyone:
                return
            T = BinaryRelation.from_pairs(n, chosen)
            if is_tolerance(L, T) and is_two_uniform(L, T):
                found.append(T)
            return
        x, y = edges[i]
        search(i + 1, lower_used, upper_used, chosen)
        # x gains an upper partner, y a lower partner
        if not (lower_used >> x & 1) and not (upper_used >> y & 1):
            chosen.append((x, y))
            search(i + 1, lower_used | 1 << x, upper_used | 1 << y, chosen)
            chosen.pop()

    search(0, 0, 0, [])
    return sorted(found, key=lambda T: T.edges())


def kernel(L: Lattice, f: Callable[[int], object]) -> BinaryRelation:
    """Relation identifying elements with equal image under ``f``."""
    image = [f(x) for x in range(L.n)]
    return BinaryRelation.from_pairs(
        L.n, [(x, y) for x in range(L.n) for y in range(x + 1, L.n) if image[x] == image[y]])


def projection_kernel(L: Lattice, sizes: Sequence[int], keep: int | Sequence[int]) -> BinaryRelation:
    """Kernel of the projection of a :func:`~permtol.lattice.product_of` lattice onto ``keep``."""
    axes = (keep,) if isinstance(keep, int) else tuple(keep)
    return kernel(L, lambda x: tuple(product_coordinates(sizes, x)[i] for i in axes))


def factor_kernel(L: Lattice, sizes: Sequence[int], axis: int) -> BinaryRelation:
    """Congruence collapsing coordinate ``axis``: the projection onto all other factors.

    Its classes are the fibres along ``axis``, so with a two-element factor
    there it is a 2-uniform congruence.
    """
    return projection_kernel(L, sizes, [i for i in range(len(sizes)) if i != axis])


# -- file format ------------------------------------------------------------------

def parse_relation(text: str, n: int) -> BinaryRelation:
    """Parse ``i j`` lines; symmetry and the diagonal are implied."""
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2:
            raise RelationError(f"line {lineno}: expected a pair 'i j'")
        try:
            x, y = int(fields[0]), int(fields[1])
        except ValueError:
            raise RelationError(f"line {lineno}: expected integers, got {line!r}") from None
        if not (0 <= x < n and 0 <= y < n):
            raise RelationError(f"line {lineno}: pair ({x},{y}) out of range for n={n}")
        pairs.append((x, y))
    return BinaryRelation.from_pairs(n, pairs)


def format_relation(T: BinaryRelation) -> str:
    return "".join(f"{x} {y}\n" for x, y in T.edges())
