"""Exit criteria, one test per criterion.

Each test records a one-line verdict in ``RESULTS``; ``conftest.py`` prints
them at the end of the session.  Run directly with
``pytest tests/test_acceptance.py`` (add ``PERMTOL_N8=1`` to include n = 8).
"""
import itertools
import os
import random
import time

from permtol.amicability import amicability_violations, is_amicable
from permtol.engine import (
    brute_force_witnesses,
    construct_witness,
    middle_elements,
    run_catalog,
    verify_lemmas_on,
)
from permtol.lattice import (
    canonical_form,
    chain,
    dual,
    enumerate_lattices,
    from_leq,
    glued_chain_sum,
    product_of,
    relabel,
)
from permtol.tolerance import (
    BinaryRelation,
    compose,
    enumerate_two_uniform,
    factor_kernel,
    is_congruence,
    is_two_uniform,
    permutes,
    projection_kernel,
)

from helpers import catalog
from oracles import all_two_uniform_unrestricted, lattice_orders_up_to_iso, naive_compose, pair_set

RESULTS: dict[str, str] = {}

THEOREM_MAX_N = 8 if os.environ.get("PERMTOL_N8") else 7
THEOREM_TIME_LIMIT = 300.0
EXAMPLE_TIME_LIMIT = 1.0


def record(key, ok, detail):
    RESULTS[key] = f"{key} {'PASS' if ok else 'FAIL'}: {detail}"
    return ok


def test_ac1_theorem_equivalence():
    start = time.perf_counter()
    report = run_catalog(THEOREM_MAX_N)
    elapsed = time.perf_counter() - start
    counts = {row.n: row.lattices for row in report.rows}
    ok = report.ok and elapsed <= THEOREM_TIME_LIMIT and counts[7] == 53
    ok = ok and all(row.amicable == row.permuting for row in report.rows)
    pairs = sum(row.pairs for row in report.rows)
    assert record("AC1", ok, f"n<={THEOREM_MAX_N}, {sum(counts.values())} lattices, {pairs} ordered pairs, "
                             f"permutes<=>amicable everywhere, {elapsed:.1f}s (limit {THEOREM_TIME_LIMIT:.0f}s)"), \
        report.text()


def test_ac2_congruences_permute():
    tested = 0
    failures = []
    for L in catalog(THEOREM_MAX_N, 2):
        congruences = [R for R in enumerate_two_uniform(L) if is_congruence(L, R)]
        for T, S in itertools.product(congruences, repeat=2):
            tested += 1
            if not permutes(T, S):
                failures.append((L, T, S))
    assert record("AC2", not failures and tested > 0,
                  f"{tested} ordered pairs of 2-uniform congruences, {len(failures)} non-permuting"), failures


def test_ac3_witness_soundness_and_completeness():
    checked = 0
    failures = []
    for L in catalog(6, 2):
        tols = enumerate_two_uniform(L)
        for T, S in itertools.product(tols, repeat=2):
            if not is_amicable(L, T, S):
                continue
            ts = compose(T, S)
            for a, b in itertools.product(range(L.n), repeat=2):
                us = middle_elements(L, T, S, a, b)
                if (a, b) not in ts:
                    if us:
                        failures.append(("middle element outside product", a, b))
                    continue
                for u in [None] + us:
                    d = construct_witness(L, T, S, a, b, u=u).result_d
                    checked += 1
                    if not ((a, d) in S and (d, b) in T and d in brute_force_witnesses(L, T, S, a, b)):
                        failures.append((L, T, S, a, b, u, d))
    all_u = run_catalog(6, all_u=True)
    ok = not failures and all_u.ok and checked > 0
    assert record("AC3", ok, f"{checked} witnesses (default and every middle element) on n<=6, "
                             f"{len(failures)} failures; --all-u catalog run ok={all_u.ok}"), failures


def test_ac4_lemma_suites():
    failures = []
    lattices = catalog(6, 2)
    for L in lattices:
        failures.extend(verify_lemmas_on(L).lemma_failures)
    assert record("AC4", not failures,
                  f"neighbour lemmas and split/adherent propagation over {len(lattices)} lattices, "
                  f"{len(failures)} failures"), failures


def test_ac5_counterexample_on_c4():
    L = chain(4)
    T = BinaryRelation.from_pairs(4, [(0, 1), (2, 3)])
    S = BinaryRelation.from_pairs(4, [(0, 1), (1, 2), (2, 3)])
    violations = [str(v) for v in amicability_violations(L, T, S)]
    naive_ts = naive_compose(4, pair_set(T), pair_set(S))
    naive_st = naive_compose(4, pair_set(S), pair_set(T))
    ok = (is_two_uniform(L, T) and is_two_uniform(L, S)
          and "A1-violation u=1 v=2 via=S" in violations
          and not is_amicable(L, T, S) and not permutes(T, S)
          and (0, 2) in naive_ts and (0, 2) not in naive_st
          and (0, 2) in compose(T, S) and (0, 2) not in compose(S, T))
    assert record("AC5", ok, f"C4 pair: violations {violations}; (0,2) in TS but not ST")


def test_ac6_product_example():
    start = time.perf_counter()
    K = glued_chain_sum([3, 4, 5])
    L = product_of([chain(2), chain(2), K])
    sizes = [2, 2, K.n]
    alpha = factor_kernel(L, sizes, 0)
    beta = factor_kernel(L, sizes, 1)
    # the kernel onto the first coordinate alone has 16-element classes
    coarse = projection_kernel(L, sizes, 0)
    ok = (L.n == 32 and K.n == 8 and not is_two_uniform(L, coarse)
          and is_congruence(L, alpha) and is_congruence(L, beta)
          and is_two_uniform(L, alpha) and is_two_uniform(L, beta)
          and permutes(alpha, beta) and is_amicable(L, alpha, beta))
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < EXAMPLE_TIME_LIMIT
    assert record("AC6", ok, f"C2xC2xK with |K|=8, |L|={L.n}: kernels collapsing the first and second "
                             f"C2 factor are 2-uniform congruences and permute, {elapsed * 1000:.0f}ms")


def test_ac7_enumeration_oracles():
    tol_mismatch = []
    small = catalog(5, 1)
    for L in small:
        found = {frozenset(T.edges()) for T in enumerate_two_uniform(L)}
        if found != all_two_uniform_unrestricted(L):
            tol_mismatch.append(L)
    oracle_counts = []
    count_mismatch = []
    for n in range(2, 8):
        oracle = lattice_orders_up_to_iso(n)
        ours = enumerate_lattices(n)
        oracle_counts.append(len(oracle))
        if len(ours) != len(oracle) or (
                {canonical_form(L) for L in ours} != {canonical_form(from_leq(n, q)) for q in oracle}):
            count_mismatch.append(n)
    ok = not tol_mismatch and not count_mismatch and oracle_counts == [1, 1, 2, 5, 15, 53]
    assert record("AC7", ok, f"2-uniform search = unrestricted scan on {len(small)} lattices (n<=5); "
                             f"lattice counts n=2..7 {oracle_counts} agree with the labelled-poset oracle")


def test_ac8_invariance_properties():
    rnd = random.Random(20191)
    failures = []
    for L in catalog(6, 2):
        D = dual(L)
        if dual(D) != L or dual(D).meet_table != L.meet_table:
            failures.append(("dual involution", L))
        tols = enumerate_two_uniform(L)
        perm = list(range(L.n))
        rnd.shuffle(perm)
        M = relabel(L, perm)
        move = {T: BinaryRelation.from_pairs(L.n, [(perm[x], perm[y]) for x, y in T.edges()]) for T in tols}
        if set(move.values()) != set(enumerate_two_uniform(M)):
            failures.append(("tolerances not transported", L))
        for T, S in itertools.product(tols, repeat=2):
            am, pm = is_amicable(L, T, S), permutes(T, S)
            if am != is_amicable(L, S, T):
                failures.append(("amicability symmetry", L, T, S))
            if pm != permutes(S, T):
                failures.append(("permutes symmetry", L, T, S))
            if am != is_amicable(D, T, S) or pm != permutes(T, S):
                failures.append(("duality", L, T, S))
            if am != is_amicable(M, move[T], move[S]) or pm != permutes(move[T], move[S]):
                failures.append(("isomorphism invariance", L, T, S))
    assert record("AC8", not failures, f"duality, symmetry and relabelling invariance on n<=6, "
                                       f"{len(failures)} failures"), failures[:5]

