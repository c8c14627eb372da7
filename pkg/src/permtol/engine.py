"""Constructive permutability witnesses and catalog-wide verification."""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .amicability import Fold, classify, is_amicable, two_fold_roles
from .lattice import Lattice, canonical_hex, dual, enumerate_lattices, MAX_ENUMERATION_SIZE
from .tolerance import (
    BinaryRelation,
    _blocks,
    compose,
    enumerate_two_uniform,
    is_congruence,
    permutes,
    require_two_uniform,
)


class WitnessError(Exception):
    pass


class NotAmicable(WitnessError):
    pass


class NotInProduct(WitnessError):
    pass


@dataclass
class WitnessTrace:
    """How ``d`` with ``(a, d)`` in S and ``(d, b)`` in T was obtained.

    ``case`` is one of ``trivial``, ``meet`` (a < u > b, d = a meet b),
    ``join`` (a > u < b, d = a join b), ``climb`` (a < u < b) and
    ``dual-climb`` (a > u > b, solved in the dual lattice).
    """

    a: int
    b: int
    u: Optional[int]
    case: str
    result_d: int
    chain: list[int] = field(default_factory=list)
    end_kind: Optional[Fold] = None
    start_kind: Optional[Fold] = None

    @property
    def n(self) -> Optional[int]:
        return len(self.chain) - 1 if self.chain else None

    def lines(self) -> list[str]:
        out = [f"a={self.a} b={self.b} u={self.u} case={self.case}"]
        if self.chain:
            out.append("chain=" + " ".join(map(str, self.chain)) + f" n={self.n}")
            out.append(f"top-kind={self.end_kind.value} bottom-kind={self.start_kind.value}")
        out.append(f"d={self.result_d}")
        return out


def brute_force_witnesses(L: Lattice, T: BinaryRelation, S: BinaryRelation,
                          a: int, b: int) -> set[int]:
    """All ``d`` with ``(a, d)`` in S and ``(d, b)`` in T, by direct scan."""
    return {d for d in range(L.n) if (a, d) in S and (d, b) in T}


def middle_elements(L: Lattice, T: BinaryRelation, S: BinaryRelation, a: int, b: int) -> list[int]:
    """The ``u`` with ``(a, u)`` in T and ``(u, b)`` in S."""
    return [u for u in range(L.n) if (a, u) in T and (u, b) in S]


def construct_witness(L: Lattice, T: BinaryRelation, S: BinaryRelation, a: int, b: int,
                      u: Optional[int] = None) -> WitnessTrace:
    """Turn ``(a, b)`` in T∘S into a witness for S∘T, following the case analysis.

    Every step whose correctness depends on ``T`` and ``S`` being amicable is
    checked at runtime; a failed check raises :class:`NotAmicable`.
    """
    require_two_uniform(L, T)
    require_two_uniform(L, S)
    if (a, b) in T:
        return WitnessTrace(a, b, None, "trivial", a)
    if (a, b) in S:
        return WitnessTrace(a, b, None, "trivial", b)
    candidates = middle_elements(L, T, S, a, b)
    if not candidates:
        raise NotInProduct(f"({a},{b}) is not in T∘S")
    if u is None:
        u = candidates[0]
    elif u not in candidates:
        raise NotInProduct(f"{u} does not link ({a},{b}) through T then S")

    if L.covers(a, u) and L.covers(b, u):
        d = L.meet(a, b)
        _check_neighbour(L, S, lower=d, upper=a)
        _check_neighbour(L, T, lower=d, upper=b)
        return WitnessTrace(a, b, u, "meet", d)
    if L.covers(u, a) and L.covers(u, b):
        d = L.join(a, b)
        _check_neighbour(L, S, lower=a, upper=d)
        _check_neighbour(L, T, lower=b, upper=d)
        return WitnessTrace(a, b, u, "join", d)
    if L.covers(a, u) and L.covers(u, b):
        return _climb(L, T, S, a, u, b, "climb")
    if L.covers(u, a) and L.covers(b, u):
        return _climb(dual(L), T, S, a, u, b, "dual-climb")
    raise AssertionError(f"({a},{u}) and ({u},{b}) are not both cover pairs")


def _check_neighbour(L, R, lower, upper):
    if not (L.covers(lower, upper) and (lower, upper) in R):
        raise NotAmicable(f"expected {{{lower},{upper}}} to be a block")


def _climb(L, T, S, a, u, b, case) -> WitnessTrace:
    rt, rs = classify(L, T), classify(L, S)
    roles = two_fold_roles(L, T, S)
    xs = [a, u, b]
    # even positions step through T, odd ones through S
    while True:
        i = len(xs) - 1
        step = (rt if i % 2 == 0 else rs)[xs[i]].upper_neighbour
        if step is None:
            break
        xs.append(step)
        if len(xs) - 1 > L.height:
            raise NotAmicable("chain climbed above the height of the lattice")
    n = len(xs) - 1
    top = xs[n]
    end_kind = roles[top].top
    if not end_kind:
        raise NotAmicable(f"chain end {top} is not a two-fold top")

    if end_kind is Fold.ADHERENT:
        below = xs[n - 1]
        if roles[below].bottom is not Fold.ADHERENT:
            raise NotAmicable(f"{below} is not an adherent two-fold bottom")
        if not _two_fold_bottom_by_a2(L, T, S, roles, upper=below, lower=xs[n - 2]):
            raise NotAmicable(f"{xs[n - 2]} is not a two-fold bottom")
    else:
        via_t = n % 2 == 0
        c = (rt if via_t else rs)[top].lower_neighbour
        meet = L.meet(xs[n - 1], c)
        if meet != xs[n - 2]:
            raise NotAmicable(f"meet of {xs[n - 1]} and {c} is {meet}, not {xs[n - 2]}")
        if not roles[meet].bottom:
            raise NotAmicable(f"{meet} is not a two-fold bottom")

    for i in range(n - 2, 0, -1):
        if not _two_fold_bottom_by_a2(L, T, S, roles, upper=xs[i], lower=xs[i - 1]):
            raise NotAmicable(f"{xs[i - 1]} is not a two-fold bottom")

    start_kind = roles[a].bottom
    if start_kind is Fold.SPLIT:
        d = rs[a].upper_neighbour
        if L.join(u, d) != b:
            raise NotAmicable(f"join of {u} and {d} is not {b}")
        result = d
    else:
        if not roles[u].top:
            raise NotAmicable(f"{u} is not a two-fold top")
        if not roles[b].top:
            raise NotAmicable(f"{b} is not a two-fold top")
        e = rt[b].lower_neighbour
        if e != u:
            raise NotAmicable(f"lower T-neighbour of {b} is {e}, not {u}")
        result = u
    return WitnessTrace(a, b, u, case, result, xs, end_kind, start_kind)


def _two_fold_bottom_by_a2(L, T, S, roles, upper, lower) -> bool:
    """Apply the downward rule to the cover ``lower < upper``."""
    if not roles[upper].bottom:
        return False
    if not L.covers(lower, upper) or not ((lower, upper) in T or (lower, upper) in S):
        return False
    return bool(roles[lower].bottom)


# -- verification harnesses -----------------------------------------------------------

@dataclass
class VerificationReport:
    lattice: str
    n: int
    tolerances: int = 0
    pairs: int = 0
    amicable: int = 0
    permuting: int = 0
    congruence_pairs: int = 0
    witnesses: int = 0
    violations: list[str] = field(default_factory=list)
    lemma_failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations and not self.lemma_failures

    def merge(self, other: VerificationReport) -> VerificationReport:
        return VerificationReport(
            self.lattice, self.n,
            max(self.tolerances, other.tolerances),
            self.pairs + other.pairs,
            self.amicable + other.amicable,
            self.permuting + other.permuting,
            self.congruence_pairs + other.congruence_pairs,
            self.witnesses + other.witnesses,
            self.violations + other.violations,
            self.lemma_failures + other.lemma_failures,
        )


def _check_witnesses(L, T, S, all_u, tag, report):
    product = compose(T, S)
    for a, b in product.pairs():
        options = brute_force_witnesses(L, T, S, a, b)
        us = middle_elements(L, T, S, a, b) if all_u else [None]
        for u in us:
            try:
                trace = construct_witness(L, T, S, a, b, u=u)
            except WitnessError as exc:
                report.violations.append(f"{tag} witness ({a},{b}) u={u}: {exc}")
                continue
            d = trace.result_d
            report.witnesses += 1
            if (a, d) not in S or (d, b) not in T or d not in options:
                report.violations.append(f"{tag} witness ({a},{b}) u={u}: bad d={d}")


def verify_theorem_on(L: Lattice, all_u: bool = False,
                      tolerances: Optional[list[BinaryRelation]] = None) -> VerificationReport:
    """Check permutes ⇔ amicable for every ordered pair of 2-uniform tolerances of ``L``."""
    tols = enumerate_two_uniform(L) if tolerances is None else tolerances
    report = VerificationReport(canonical_hex(L), L.n, tolerances=len(tols))
    L_dual = dual(L)
    for T, S in itertools.product(tols, repeat=2):
        report.pairs += 1
        am = is_amicable(L, T, S)
        pm = permutes(T, S)
        report.amicable += am
        report.permuting += pm
        tag = f"T=[{T}] S=[{S}]"
        if am != pm:
            report.violations.append(f"{tag}: amicable={am} permutes={pm}")
        if am != is_amicable(L, S, T):
            report.violations.append(f"{tag}: amicability not symmetric")
        if am != is_amicable(L_dual, T, S):
            report.violations.append(f"{tag}: amicability not invariant under duality")
        if am:
            _check_witnesses(L, T, S, all_u, tag, report)
    return report


def verify_lemmas_on(L: Lattice, tolerances: Optional[list[BinaryRelation]] = None) -> VerificationReport:
    """Check the neighbour lemmas, split/adherent propagation and the congruence corollary."""
    tols = enumerate_two_uniform(L) if tolerances is None else tolerances
    report = VerificationReport(canonical_hex(L), L.n, tolerances=len(tols))
    fail = report.lemma_failures.append

    # neighbours recomputed straight from the blocks, not via classify()
    neighbours = {}
    for R in tols:
        lower = [[] for _ in range(L.n)]
        upper = [[] for _ in range(L.n)]
        for (x, y) in R.edges():
            if not (L.covers(x, y) or L.covers(y, x)):
                fail(f"L1(ii) R=[{R}] pair ({x},{y}) is not a cover")
        for block in _blocks(R):
            if len(block) != 2:
                continue
            x, y = sorted(block.elements, key=lambda e: L.rank[e])
            if L.covers(x, y):
                lower[y].append(x)
                upper[x].append(y)
        for z in range(L.n):
            if len(lower[z]) > 1:
                fail(f"L1(i) R=[{R}] element {z} has lower neighbours {lower[z]}")
            if len(upper[z]) > 1:
                fail(f"L1(i)* R=[{R}] element {z} has upper neighbours {upper[z]}")
        neighbours[R] = ([l[0] if l else None for l in lower], [h[0] if h else None for h in upper])

    for T, S in itertools.product(tols, repeat=2):
        (tl, tu), (sl, su) = neighbours[T], neighbours[S]
        for u in range(L.n):
            a, b = tl[u], sl[u]
            if a is not None and b is not None and a != b:
                m = L.meet(a, b)
                if sl[a] != m or tl[b] != m:
                    fail(f"L1(iii) T=[{T}] S=[{S}] u={u}: meet {m} of {a},{b}")
            a, b = tu[u], su[u]
            if a is not None and b is not None and a != b:
                j = L.join(a, b)
                if su[a] != j or tu[b] != j:
                    fail(f"L1(iii)* T=[{T}] S=[{S}] u={u}: join {j} of {a},{b}")

        if not permutes(T, S):
            continue
        roles = two_fold_roles(L, T, S)
        for u in range(L.n):
            if roles[u].top:
                for v in L.upper_covers[u]:
                    if ((u, v) in T or (u, v) in S) and roles[v].top is not roles[u].top:
                        part = "L2(i)" if roles[u].top is Fold.SPLIT else "L2(ii)"
                        fail(f"{part} T=[{T}] S=[{S}] u={u} v={v}")
            if roles[u].bottom:
                for v in L.lower_covers[u]:
                    if ((v, u) in T or (v, u) in S) and roles[v].bottom is not roles[u].bottom:
                        part = "L2(iii)" if roles[u].bottom is Fold.SPLIT else "L2(iv)"
                        fail(f"{part} T=[{T}] S=[{S}] u={u} v={v}")

    congruences = [R for R in tols if is_congruence(L, R)]
    for T, S in itertools.product(congruences, repeat=2):
        report.congruence_pairs += 1
        if not permutes(T, S):
            report.violations.append(f"corollary T=[{T}] S=[{S}]: congruences do not permute")
    return report


def verify_lattice(L: Lattice, all_u: bool = False) -> VerificationReport:
    tols = enumerate_two_uniform(L)
    return verify_theorem_on(L, all_u, tols).merge(verify_lemmas_on(L, tols))


@dataclass
class CatalogRow:
    n: int
    lattices: int
    pairs: int
    amicable: int
    permuting: int
    congruence_pairs: int
    witnesses: int
    violations: list[str]

    def line(self) -> str:
        return (f"n={self.n} lattices={self.lattices} pairs={self.pairs} "
                f"amicable={self.amicable} permuting={self.permuting} "
                f"violations={len(self.violations)}")


@dataclass
class CatalogReport:
    rows: list[CatalogRow]

    @property
    def ok(self) -> bool:
        return all(not r.violations for r in self.rows)

    def lines(self) -> list[str]:
        out = [r.line() for r in self.rows]
        for r in self.rows:
            out.extend(f"  {v}" for v in r.violations)
        return out

    def text(self) -> str:
        return "\n".join(self.lines()) + "\n"


def _verify_for_pool(args):
    L, all_u = args
    return verify_lattice(L, all_u)


def run_catalog(max_n: int, min_n: int = 2, all_u: bool = False, workers: int = 1,
                ceiling: int = MAX_ENUMERATION_SIZE) -> CatalogReport:
    """Verify every lattice with ``min_n <= n <= max_n`` elements, up to isomorphism."""
    if not 2 <= max_n <= ceiling:
        raise ValueError(f"max_n must lie in [2, {ceiling}]")
    rows = []
    for n in range(min_n, max_n + 1):
        lattices = enumerate_lattices(n, ceiling)
        jobs = [(L, all_u) for L in lattices]
        if workers > 1:
            with ProcessPoolExecutor(workers) as pool:
                reports = list(pool.map(_verify_for_pool, jobs))
        else:
            reports = [_verify_for_pool(j) for j in jobs]
        violations = [f"lattice {r.lattice}: {v}" for r in reports
                      for v in r.violations + r.lemma_failures]
        rows.append(CatalogRow(
            n, len(lattices),
            sum(r.pairs for r in reports),
            sum(r.amicable for r in reports),
            sum(r.permuting for r in reports),
            sum(r.congruence_pairs for r in reports),
            sum(r.witnesses for r in reports),
            violations,
        ))
    return CatalogReport(rows)
