"""Acceptance criteria, one test each; every test prints a PASS/FAIL line."""

import csv
import io
import itertools
import random
import statistics
import time

import pytest
import sympy

from hamres.cli import main
from hamres.groebner import buchberger, groebner, is_trivial, reduce_basis
from hamres.hamgraph import HammingGraph, brute_force_is_resolving, one_hot
from hamres.polycore import Polynomial, remainder, s_polynomial
from hamres.resolver import (
    GroebnerResolver,
    build_system,
    check_resolving_enumeration,
    check_resolving_groebner,
    check_resolving_hypercube,
    closed_form_block_basis,
    constraint_blocks,
    structured_basis,
    sum_of_squares,
)
from hamres.setops import RandomSource, generate_resolving, reduce_generative, reduce_top_down

from conftest import random_polys, sympy_reduced_basis

H32 = HammingGraph(3, 2)
WORKED = [(1, 0, 0), (1, 0, 1), (0, 0, 1)]


def report(capsys, n, ok, detail=""):
    with capsys.disabled():
        print(f"\ncriterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def random_subsets(g, count, seed, max_size=None):
    rng = random.Random(seed)
    verts = list(g.vertices())
    top = min(max_size or len(verts), len(verts))
    for _ in range(count):
        yield rng.sample(verts, rng.randint(1, top))


def lemma_block(a):
    """The closed-form block basis written out from its definition, in z1..za."""
    z = [Polynomial.variable(j, a) for j in range(a)]
    out = {sum(z, Polynomial.zero(a))}
    out |= {z[j] ** 3 - z[j] for j in range(1, a)}
    out |= {z[i] ** 2 * z[j] + z[i] * z[j] ** 2 for i, j in itertools.combinations(range(1, a), 2)}
    out |= {z[i] * z[j] * z[l] for i, j, l in itertools.combinations(range(1, a), 3)}
    return out


def admissible_vectors(k, a):
    options = [(0,) * a]
    for p, q in itertools.permutations(range(a), 2):
        block = [0] * a
        block[p], block[q] = 1, -1
        options.append(tuple(block))
    return {tuple(x for b in blocks for x in b) for blocks in itertools.product(options, repeat=k)}


def evaluate(p, point):
    total = 0
    for m, c in p.terms.items():
        term = c
        for x, e in zip(point, m):
            if e:
                term *= x**e
        total += term
    return total


def inclusion_minimal(g, r):
    return all(not brute_force_is_resolving(g, [u for u in r if u != v]).resolving for v in r)


# -- 1 -------------------------------------------------------------------------------------------

def test_criterion_01_worked_example(capsys):
    t0 = time.perf_counter()
    sys = build_system(H32, WORKED)
    R, piv = sys.rref
    ok = sys.A == [[0, 1, 1, 0, 1, 0], [0, 1, 1, 0, 0, 1], [1, 0, 1, 0, 0, 1]]
    ok &= R == [[1, 0, 1, 0, 0, 1], [0, 1, 1, 0, 0, 1], [0, 0, 0, 0, 1, -1]]
    gens = sys.linear_polys() + sys.P
    for f in sys.f_polys:
        ok &= is_trivial(groebner(gens + [f], "lex"))
        # independent oracle
        ok &= sympy_reduced_basis(gens + [f], "lex") == {Polynomial.constant(1, 6)}
    elapsed = time.perf_counter() - t0
    report(capsys, 1, ok and elapsed < 5, f"matrices and three bases {{1}} in {elapsed:.2f} s")


# -- 2 -------------------------------------------------------------------------------------------

def test_criterion_02_three_oracles(capsys):
    t0 = time.perf_counter()
    cases = [(H32, list(c)) for size in range(1, 9) for c in itertools.combinations(H32.vertices(), size)]
    for (k, a), seed in zip([(4, 2), (2, 3), (3, 3)], (42, 23, 33)):
        g = HammingGraph(k, a)
        cases += [(g, c) for c in random_subsets(g, 500, seed)]
    mismatches = 0
    for g, cand in cases:
        sys = build_system(g, cand)
        truth = brute_force_is_resolving(g, cand).resolving
        mismatches += check_resolving_groebner(sys).resolving != truth
        mismatches += check_resolving_enumeration(sys).resolving != truth
    elapsed = time.perf_counter() - t0
    report(
        capsys, 2, mismatches == 0 and len(cases) == 1755 and elapsed < 600,
        f"{len(cases)} sets, {mismatches} mismatches, {elapsed:.1f} s",
    )


# -- 3 -------------------------------------------------------------------------------------------

def test_criterion_03_metric_dimension_facts(capsys):
    g4 = HammingGraph(4, 2)
    four = [g4.parse_vertex(s) for s in ["0000", "0001", "0010", "0100"]]
    ok = brute_force_is_resolving(g4, four).resolving
    triples = list(itertools.combinations(g4.vertices(), 3))
    ok &= len(triples) == 560
    ok &= not any(brute_force_is_resolving(g4, t).resolving for t in triples)
    g7 = HammingGraph(7, 2)
    six = [g7.parse_vertex(s) for s in
           ["0000000", "0000001", "0000010", "0001100", "0010100", "0100100"]]
    ok &= brute_force_is_resolving(g7, six).resolving and inclusion_minimal(g7, six)
    ok &= check_resolving_groebner(build_system(g7, six)).resolving
    report(capsys, 3, ok, "beta(H42)=4, H72 six-set resolving and inclusion-minimal")


# -- 4 -------------------------------------------------------------------------------------------

def test_criterion_04_block_closed_form(capsys):
    t0 = time.perf_counter()
    ok = True
    for a in (2, 3, 4, 5):
        block = constraint_blocks(HammingGraph(1, a))[0]
        got = set(reduce_basis(buchberger(block, "lex")).polys)
        ok &= got == lemma_block(a) == set(closed_form_block_basis(a))
    elapsed = time.perf_counter() - t0
    report(capsys, 4, ok and elapsed < 120, f"a=2..5 in {elapsed:.1f} s")


# -- 5 -------------------------------------------------------------------------------------------

def test_criterion_05_block_union(capsys):
    ok = True
    for k, a in [(2, 2), (3, 2), (2, 3), (2, 4)]:
        g = HammingGraph(k, a)
        n = g.n_variables
        union = set()
        for b in range(k):
            mapping = [b * a + j for j in range(a)]
            union |= {p.substitute_variables(mapping, n) for p in lemma_block(a)}
        full = reduce_basis(buchberger(build_system(g, [next(g.vertices())]).P, "lex"))
        ok &= set(full.polys) == union == set(structured_basis(g).polys)
    report(capsys, 5, ok, "(2,2) (3,2) (2,3) (2,4)")


# -- 6 -------------------------------------------------------------------------------------------

def test_criterion_06_shifted_reductions(capsys):
    G = structured_basis(H32)
    f = sum_of_squares(6)
    r = G.reduce(f)
    polys = list(G.polys)
    ok = all(remainder(f - 2 * i, polys, "lex") == r - 2 * i for i in (1, 2, 3))
    report(capsys, 6, ok, "i=1,2,3")


# -- 7 -------------------------------------------------------------------------------------------

def test_criterion_07_hypercube(capsys):
    mismatches = total = 0
    for k in range(3, 8):
        g = HammingGraph(k, 2)
        for cand in random_subsets(g, 200, seed=100 + k, max_size=2 * k):
            truth = brute_force_is_resolving(g, cand).resolving
            mismatches += check_resolving_hypercube(g, cand).resolving != truth
            mismatches += check_resolving_hypercube(g, cand, route="groebner").resolving != truth
            mismatches += check_resolving_groebner(build_system(g, cand)).resolving != truth
            total += 1
    report(capsys, 7, mismatches == 0, f"{total} sets over H_3,2..H_7,2, {mismatches} mismatches")


# -- 8 -------------------------------------------------------------------------------------------

def test_criterion_08_variety(capsys):
    pairs = [(k, a) for a in range(2, 10) for k in range(1, 10) if a * k <= 9]
    ok = True
    for k, a in pairs:
        g = HammingGraph(k, a)
        P = build_system(g, [next(g.vertices())]).P
        roots = {z for z in itertools.product((-1, 0, 1), repeat=k * a)
                 if all(evaluate(p, z) == 0 for p in P)}
        ok &= roots == admissible_vectors(k, a)
    report(capsys, 8, ok, f"{len(pairs)} graphs with a*k <= 9")


# -- 9 -------------------------------------------------------------------------------------------

def test_criterion_09_buchberger_properties(capsys):
    rng = random.Random(9)
    ok = True
    for _ in range(50):
        nvars = rng.randint(1, 4)
        gens = random_polys(rng, nvars, rng.randint(1, 5), max_deg=3, max_terms=3)
        order = rng.choice(["lex", "grlex", "grevlex"])
        G = reduce_basis(buchberger(gens, order))
        polys = list(G.polys)
        ok &= all(not remainder(s_polynomial(p, q, order), polys, order)
                  for p, q in itertools.combinations(polys, 2))
        ok &= all(not remainder(p, polys, order) for p in gens)
        shuffled = gens[:]
        rng.shuffle(shuffled)
        ok &= groebner(shuffled, order) == G
    report(capsys, 9, ok, "50 generator sets")


# -- 10 ------------------------------------------------------------------------------------------

def test_criterion_10_set_algorithms(capsys):
    ok = True
    for g in (H32, HammingGraph(4, 2), HammingGraph(3, 3)):
        full = list(g.vertices())
        for seed in range(20):
            top = reduce_top_down(g, full, RandomSource(seed))
            gen = reduce_generative(g, full, RandomSource(seed))
            new = generate_resolving(g, RandomSource(seed))
            ok &= all(brute_force_is_resolving(g, r).resolving for r in (top, gen, new))
            ok &= inclusion_minimal(g, top)
            ok &= len(new) <= g.a * g.k
            ok &= top == reduce_top_down(g, full, RandomSource(seed))
            ok &= gen == reduce_generative(g, full, RandomSource(seed))
            ok &= new == generate_resolving(g, RandomSource(seed))
    report(capsys, 10, ok, "20 seeds on H_3,2 H_4,2 H_3,3")


# -- 11 ------------------------------------------------------------------------------------------

H83_SET = ["21220100", "20200110", "01120212", "21121121", "20212000",
           "20120212", "11001220", "12111102", "22120121", "01200001"]


def test_criterion_11a_h83_check(capsys):
    g = HammingGraph(8, 3)
    r = [g.parse_vertex(s) for s in H83_SET]
    assert brute_force_is_resolving(g, r).resolving
    t0 = time.perf_counter()
    verdict = GroebnerResolver(g, fast_accept=False, fast_reject=False).check(r)
    elapsed = time.perf_counter() - t0
    report(capsys, "11a", verdict.resolving and elapsed < 120, f"H_8,3 set checked in {elapsed:.2f} s")


def test_criterion_11b_bench_h62(capsys):
    out = io.StringIO()
    code = main(["bench", "--k", "6", "--a", "2", "--trials", "50",
                 "--method", "groebner,bruteforce"], out=out)
    assert code == 0
    times = {"groebner": [], "bruteforce": []}
    for row in csv.DictReader(io.StringIO(out.getvalue())):
        if row["verdict"] == "resolving":
            times[row["method"]].append(int(row["wall_us"]))
    med = {m: statistics.median(v) for m, v in times.items()}
    report(
        capsys, "11b", med["groebner"] < med["bruteforce"],
        f"H_6,2 resolving medians: groebner {med['groebner']:.0f} us, bruteforce {med['bruteforce']:.0f} us",
    )
