"""Finite lattices given by their cover relation.

Elements are the integers ``0 .. n-1``.  Order relations are kept as bitmask
rows: bit ``y`` of ``up[x]`` is set iff ``x <= y``.
"""
from __future__ import annotations

import itertools
from functools import cached_property
from typing import Iterable, Sequence


class LatticeError(ValueError):
    pass


class NotAPoset(LatticeError):
    pass


class NotALattice(LatticeError):
    pass


class NotTransitiveReduction(LatticeError):
    pass


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _closure(n: int, covers: Sequence[tuple[int, int]]) -> list[int]:
    """Up-set masks of the reflexive-transitive closure; raises on cycles."""
    succ = [0] * n
    for x, y in covers:
        succ[x] |= 1 << y
    indeg = [0] * n
    for _, y in covers:
        indeg[y] += 1
    order = [x for x in range(n) if indeg[x] == 0]
    for x in order:
        for y in _bits(succ[x]):
            indeg[y] -= 1
            if indeg[y] == 0:
                order.append(y)
    if len(order) != n:
        raise NotAPoset("cover relation contains a cycle")
    up = [1 << x for x in range(n)]
    for x in reversed(order):
        for y in _bits(succ[x]):
            up[x] |= up[y]
    return up


def _transpose(rows: Sequence[int], n: int) -> list[int]:
    cols = [0] * n
    for x in range(n):
        for y in _bits(rows[x]):
            cols[y] |= 1 << x
    return cols


class Lattice:
    """An immutable finite lattice.

    Construct with :func:`from_covers` (or the generators below) rather than
    directly; the constructor trusts its arguments.
    """

    __slots__ = ("n", "cover_pairs", "up", "down", "meet_table", "join_table",
                 "bottom", "top", "__dict__")

    def __init__(self, n, cover_pairs, up, down, meet_table, join_table):
        self.n = n
        self.cover_pairs = cover_pairs
        self.up = up
        self.down = down
        self.meet_table = meet_table
        self.join_table = join_table
        self.bottom = next(x for x in range(n) if up[x] == (1 << n) - 1)
        self.top = next(x for x in range(n) if down[x] == (1 << n) - 1)

    def __repr__(self):
        return f"Lattice(n={self.n}, covers={list(self.cover_pairs)})"

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.n == other.n and self.cover_pairs == other.cover_pairs

    def __hash__(self):
        return hash((self.n, self.cover_pairs))

    def __len__(self):
        return self.n

    def meet(self, x: int, y: int) -> int:
        return self.meet_table[x][y]

    def join(self, x: int, y: int) -> int:
        return self.join_table[x][y]

    def leq(self, x: int, y: int) -> bool:
        return bool(self.up[x] >> y & 1)

    def covers(self, x: int, y: int) -> bool:
        """True iff ``x`` is covered by ``y`` (``x < y`` with nothing between)."""
        return bool(self.upper_cover_mask[x] >> y & 1)

    @cached_property
    def upper_cover_mask(self) -> tuple[int, ...]:
        rows = [0] * self.n
        for x, y in self.cover_pairs:
            rows[x] |= 1 << y
        return tuple(rows)

    @cached_property
    def lower_cover_mask(self) -> tuple[int, ...]:
        return tuple(_transpose(self.upper_cover_mask, self.n))

    @cached_property
    def upper_covers(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(_bits(m)) for m in self.upper_cover_mask)

    @cached_property
    def lower_covers(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(_bits(m)) for m in self.lower_cover_mask)

    @cached_property
    def rank(self) -> tuple[int, ...]:
        """Length of the longest chain from the bottom to each element."""
        rank = [0] * self.n
        for x in self.linear_extension:
            for y in self.upper_covers[x]:
                rank[y] = max(rank[y], rank[x] + 1)
        return tuple(rank)

    @cached_property
    def height(self) -> int:
        return self.rank[self.top]

    @cached_property
    def linear_extension(self) -> tuple[int, ...]:
        return tuple(sorted(range(self.n), key=lambda x: bin(self.down[x]).count("1")))

    def elements_between(self, x: int, y: int) -> list[int]:
        """The interval ``[x, y]`` (empty unless ``x <= y``)."""
        return _bits(self.up[x] & self.down[y])

    def leq_matrix(self) -> list[list[bool]]:
        return [[self.leq(x, y) for y in range(self.n)] for x in range(self.n)]


def from_covers(n: int, covers: Iterable[tuple[int, int]]) -> Lattice:
    """Build and validate a lattice from its Hasse diagram."""
    if n < 1:
        raise LatticeError("a lattice needs at least one element")
    pairs = [(int(x), int(y)) for x, y in covers]
    for x, y in pairs:
        if not (0 <= x < n and 0 <= y < n):
            raise LatticeError(f"cover ({x},{y}) out of range for n={n}")
        if x == y:
            raise LatticeError(f"self-cover ({x},{x})")
    if len(set(pairs)) != len(pairs):
        raise LatticeError("duplicate cover pairs")
    up = _closure(n, pairs)
    down = _transpose(up, n)
    for x, y in pairs:
        between = up[x] & down[y] & ~(1 << x) & ~(1 << y)
        if between:
            z = _bits(between)[0]
            raise NotTransitiveReduction(f"cover ({x},{y}) is implied via {z}")

    meet_table = [[0] * n for _ in range(n)]
    join_table = [[0] * n for _ in range(n)]
    down_index = {m: x for x, m in enumerate(down)}
    up_index = {m: x for x, m in enumerate(up)}
    for x in range(n):
        for y in range(x, n):
            lower = down[x] & down[y]
            upper = up[x] & up[y]
            if lower not in down_index:
                raise NotALattice(f"elements {x},{y} have no meet")
            if upper not in up_index:
                raise NotALattice(f"elements {x},{y} have no join")
            meet_table[x][y] = meet_table[y][x] = down_index[lower]
            join_table[x][y] = join_table[y][x] = up_index[upper]
    return Lattice(
        n,
        tuple(sorted(pairs)),
        tuple(up),
        tuple(down),
        tuple(map(tuple, meet_table)),
        tuple(map(tuple, join_table)),
    )


def from_leq(n: int, leq: Sequence[Sequence[bool]]) -> Lattice:
    """Build a lattice from a full order matrix by taking its transitive reduction."""
    covers = []
    for x in range(n):
        for y in range(n):
            if x != y and leq[x][y] and not any(
                    z not in (x, y) and leq[x][z] and leq[z][y] for z in range(n)):
                covers.append((x, y))
    return from_covers(n, covers)


def dual(L: Lattice) -> Lattice:
    """Order dual on the same element indices."""
    return Lattice(
        L.n,
        tuple(sorted((y, x) for x, y in L.cover_pairs)),
        L.down,
        L.up,
        L.join_table,
        L.meet_table,
    )


def relabel(L: Lattice, perm: Sequence[int]) -> Lattice:
    """Image of ``L`` under the bijection ``x -> perm[x]``."""
    return from_covers(L.n, [(perm[x], perm[y]) for x, y in L.cover_pairs])


# -- generators ---------------------------------------------------------------

def chain(k: int) -> Lattice:
    if k < 1:
        raise LatticeError("chain length must be positive")
    return from_covers(k, [(i, i + 1) for i in range(k - 1)])


def product(L1: Lattice, L2: Lattice) -> Lattice:
    """Direct product; element ``(i, j)`` gets index ``i * L2.n + j``."""
    return product_of([L1, L2])


def product_of(factors: Sequence[Lattice]) -> Lattice:
    """Direct product of several lattices with row-major (mixed radix) indices."""
    if not factors:
        raise LatticeError("empty product")
    sizes = [F.n for F in factors]
    tuples = list(itertools.product(*(range(s) for s in sizes)))
    index = {t: i for i, t in enumerate(tuples)}
    covers = []
    for t in tuples:
        for axis, F in enumerate(factors):
            for y in F.upper_covers[t[axis]]:
                covers.append((index[t], index[t[:axis] + (y,) + t[axis + 1:]]))
    return from_covers(len(tuples), covers)


def product_coordinates(sizes: Sequence[int], x: int) -> tuple[int, ...]:
    coords = []
    for s in reversed(sizes):
        x, r = divmod(x, s)
        coords.append(r)
    return tuple(reversed(coords))


def glued_chain_sum(lengths: Sequence[int]) -> Lattice:
    """Chains of the given lengths glued along a common bottom and common top.

    Index 0 is the bottom, the last index the top, and the inner elements of
    each chain are numbered consecutively in between.
    """
    if not lengths:
        raise LatticeError("need at least one chain")
    if any(k < 3 for k in lengths):
        raise LatticeError("glued chains must have at least 3 elements")
    n = sum(k - 2 for k in lengths) + 2
    top = n - 1
    covers = []
    nxt = 1
    for k in lengths:
        inner = list(range(nxt, nxt + k - 2))
        nxt += k - 2
        path = [0] + inner + [top]
        covers.extend(zip(path, path[1:]))
    return from_covers(n, covers)


# -- isomorphism ----------------------------------------------------------------

def _refined_colours(n: int, up: Sequence[int], down: Sequence[int],
                     ucov: Sequence[int], lcov: Sequence[int]) -> list[int]:
    """Isomorphism-invariant colouring, refined until stable."""
    def depth(rows_cov, order):
        d = [0] * n
        for x in order:
            for y in _bits(rows_cov[x]):
                d[y] = max(d[y], d[x] + 1)
        return d

    order = sorted(range(n), key=lambda x: bin(down[x]).count("1"))
    rank = depth(ucov, order)
    corank = depth(lcov, list(reversed(order)))
    keys = [(rank[x], corank[x], bin(down[x]).count("1"), bin(up[x]).count("1"),
             bin(lcov[x]).count("1"), bin(ucov[x]).count("1")) for x in range(n)]
    palette = sorted(set(keys))
    colour = [palette.index(k) for k in keys]
    while True:
        keys = [(colour[x],
                 tuple(sorted(colour[y] for y in _bits(lcov[x]))),
                 tuple(sorted(colour[y] for y in _bits(ucov[x]))),
                 tuple(sorted(colour[y] for y in _bits(down[x])))) for x in range(n)]
        palette = sorted(set(keys))
        new = [palette.index(k) for k in keys]
        if len(palette) == len(set(colour)):
            return new
        colour = new


def _canonical_order(n: int, up: Sequence[int], ucov: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Return (code, order): the minimal leq-matrix code over colour-respecting orders."""
    down = _transpose(up, n)
    lcov = _transpose(ucov, n)
    colour = _refined_colours(n, up, down, ucov, lcov)
    cells = [[x for x in range(n) if colour[x] == c] for c in sorted(set(colour))]
    best = None
    best_order = None
    for parts in itertools.product(*(itertools.permutations(c) for c in cells)):
        order = [x for part in parts for x in part]
        pos = [0] * n
        for i, x in enumerate(order):
            pos[x] = i
        code = 0
        for x in order:
            row = 0
            for y in _bits(up[x]):
                row |= 1 << (n - 1 - pos[y])
            code = (code << n) | row
        if best is None or code < best:
            best, best_order = code, tuple(order)
    return best, best_order


def _encode(n: int, code: int) -> bytes:
    return bytes([n]) + code.to_bytes((n * n + 7) // 8, "big")


def canonical_form(L: Lattice) -> bytes:
    """Byte string equal for two lattices iff they are isomorphic."""
    code, _ = _canonical_order(L.n, L.up, L.upper_cover_mask)
    return _encode(L.n, code)


def canonical_hex(L: Lattice) -> str:
    return canonical_form(L).hex()


def canonical_relabel(L: Lattice) -> Lattice:
    """Isomorphic copy of ``L`` whose indices follow the canonical order."""
    _, order = _canonical_order(L.n, L.up, L.upper_cover_mask)
    perm = [0] * L.n
    for i, x in enumerate(order):
        perm[x] = i
    return relabel(L, perm)


def find_isomorphism(L1: Lattice, L2: Lattice) -> list[int] | None:
    """Backtracking search for a cover-preserving bijection ``L1 -> L2``."""
    n = L1.n
    if n != L2.n or len(L1.cover_pairs) != len(L2.cover_pairs):
        return None
    deg1 = [(len(L1.lower_covers[x]), len(L1.upper_covers[x]), L1.rank[x]) for x in range(n)]
    deg2 = [(len(L2.lower_covers[x]), len(L2.upper_covers[x]), L2.rank[x]) for x in range(n)]
    if sorted(deg1) != sorted(deg2):
        return None
    order = list(L1.linear_extension)
    image = [-1] * n
    used = [False] * n

    def extend(i):
        if i == n:
            return True
        x = order[i]
        for y in range(n):
            if used[y] or deg1[x] != deg2[y]:
                continue
            # lower covers of x are already placed (linear extension order)
            if any(not L2.covers(image[z], y) for z in L1.lower_covers[x]):
                continue
            if any(L2.covers(image[z], y) for z in order[:i] if z not in L1.lower_covers[x]):
                continue
            image[x] = y
            used[y] = True
            if extend(i + 1):
                return True
            used[y] = False
            image[x] = -1
        return False

    return list(image) if extend(0) else None


def is_isomorphic(L1: Lattice, L2: Lattice) -> bool:
    return find_isomorphism(L1, L2) is not None


# -- enumeration ----------------------------------------------------------------

MAX_ENUMERATION_SIZE = 8


def _antichains(n: int, up: Sequence[int], down: Sequence[int]):
    for mask in range(1, 1 << n):
        elems = _bits(mask)
        if all(not (up[x] >> y & 1) and not (down[x] >> y & 1)
               for x, y in itertools.combinations(elems, 2)):
            yield elems


def _grow(posets):
    """Extend each bottomed poset by one new maximal element over an antichain."""
    seen = {}
    for n, covers in posets:
        up = _closure(n, covers)
        down = _transpose(up, n)
        for antichain in _antichains(n, up, down):
            new_covers = covers + tuple((x, n) for x in antichain)
            new_up = _closure(n + 1, new_covers)
            ucov = [0] * (n + 1)
            for x, y in new_covers:
                ucov[x] |= 1 << y
            code, _ = _canonical_order(n + 1, new_up, ucov)
            seen.setdefault(code, (n + 1, new_covers))
    return [seen[k] for k in sorted(seen)]


def enumerate_lattices(n: int, ceiling: int = MAX_ENUMERATION_SIZE) -> list[Lattice]:
    """One representative per isomorphism class of ``n``-element lattices.

    Representatives are canonically relabelled and sorted by canonical form, so
    the result is deterministic.
    """
    if not 1 <= n <= ceiling:
        raise LatticeError(f"n must lie in [1, {ceiling}]")
    if n == 1:
        return [chain(1)]
    posets = [(1, ())]
    for _ in range(n - 2):
        posets = _grow(posets)
    found = {}
    for m, covers in posets:
        up = _closure(m, covers)
        maximal = [x for x in range(m) if up[x] == 1 << x]
        try:
            L = from_covers(n, list(covers) + [(x, m) for x in maximal])
        except NotALattice:
            continue
        L = canonical_relabel(L)
        found.setdefault(canonical_form(L), L)
    return [found[k] for k in sorted(found)]


# -- file format ------------------------------------------------------------------

def parse_lattice(text: str) -> Lattice:
    """Parse the ``n`` / ``i j`` cover-list text format."""
    n = None
    covers = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        try:
            values = [int(f) for f in fields]
        except ValueError:
            raise LatticeError(f"line {lineno}: expected integers, got {line!r}") from None
        if n is None:
            if len(values) != 1:
                raise LatticeError(f"line {lineno}: expected element count")
            n = values[0]
        elif len(values) != 2:
            raise LatticeError(f"line {lineno}: expected a pair 'i j'")
        else:
            covers.append((values[0], values[1]))
    if n is None:
        raise LatticeError("missing element count")
    return from_covers(n, covers)


def format_lattice(L: Lattice) -> str:
    lines = [str(L.n)] + [f"{x} {y}" for x, y in L.cover_pairs]
    return "\n".join(lines) + "\n"
