import itertools
import random

import numpy as np
import pytest

from hamres.exactmath import RationalMatrix, rank
from hamres.groebner import GroebnerBudgetExceeded, buchberger, groebner, is_trivial, reduce_basis
from hamres.hamgraph import HammingGraph, brute_force_is_resolving, distance_vector, one_hot
from hamres.polycore import Polynomial, parse_polynomial, remainder
from hamres.resolver import (
    GroebnerResolver,
    build_system,
    check_resolving_enumeration,
    check_resolving_groebner,
    check_resolving_hypercube,
    closed_form_block_basis,
    constraint_basis,
    constraint_blocks,
    hypercube_matrix,
    is_admissible,
    max_rank,
    single_block_witness,
    structured_basis,
    sum_of_squares,
)
from hamres.verdict import EnumerationBudgetExceeded

from conftest import all_subsets

H32 = HammingGraph(3, 2)
WORKED = [(1, 0, 0), (1, 0, 1), (0, 0, 1)]


def random_subsets(g, count, seed, max_size=None):
    rng = random.Random(seed)
    verts = list(g.vertices())
    top = min(max_size or len(verts), len(verts))
    for _ in range(count):
        yield rng.sample(verts, rng.randint(1, top))


def admissible_vectors(k, a):
    """All admissible vectors, generated block by block from the definition."""
    block_options = [(0,) * a]
    for p, q in itertools.permutations(range(a), 2):
        block = [0] * a
        block[p], block[q] = 1, -1
        block_options.append(tuple(block))
    for blocks in itertools.product(block_options, repeat=k):
        yield tuple(x for b in blocks for x in b)


def evaluate(p, point):
    total = 0
    for m, c in p.terms.items():
        term = c
        for x, e in zip(point, m):
            term *= x**e
        total += term
    return total


def check_witness(g, verdict, candidate):
    if verdict.witness is None:
        return
    w = verdict.witness
    if len(w) == 2 and isinstance(w[0], tuple):
        assert distance_vector(w[0], candidate) == distance_vector(w[1], candidate)
        assert w[0] != w[1]
        return
    assert is_admissible(w, g.a) and any(w)
    A = np.array([one_hot(v, g.a).vector for v in candidate])
    assert not (A @ np.array(w)).any()


# -- system construction --------------------------------------------------------------------------

def test_worked_example_matrices():
    sys = build_system(H32, WORKED)
    assert sys.A == [[0, 1, 1, 0, 1, 0], [0, 1, 1, 0, 0, 1], [1, 0, 1, 0, 0, 1]]
    R, piv = sys.rref
    assert R == [[1, 0, 1, 0, 0, 1], [0, 1, 1, 0, 0, 1], [0, 0, 0, 0, 1, -1]]
    assert piv == [0, 1, 4]
    assert sys.rank == 3


def test_constraint_family_of_h32():
    sys = build_system(H32, WORKED)
    P = sys.P
    assert len(P) == 12
    z = [Polynomial.variable(j, 6) for j in range(6)]
    cubics = [v * (v - 1) * (v + 1) for v in z]
    sums = [z[0] + z[1], z[2] + z[3], z[4] + z[5]]
    quartics = []
    for b in range(3):
        s = z[2 * b] ** 2 + z[2 * b + 1] ** 2
        quartics.append(s * (2 - s))
    assert set(P) == set(cubics + sums + quartics)


def test_blocks_use_their_own_variables():
    g = HammingGraph(3, 4)
    for b, block in enumerate(constraint_blocks(g)):
        for p in block:
            for m in p.terms:
                assert all(e == 0 for j, e in enumerate(m) if not 4 * b <= j < 4 * b + 4)


def test_shifted_polynomials():
    sys = build_system(H32, WORKED)
    assert sys.f_polys[0] == parse_polynomial(" + ".join(f"z{j}^2" for j in range(1, 7)) + " - 2", 6)
    for i, f in enumerate(sys.f_polys, 1):
        assert f.constant_term() == -2 * i
        assert f - f.constant_term() == sum_of_squares(6)


def test_build_system_errors():
    with pytest.raises(ValueError):
        build_system(H32, [])
    with pytest.raises(ValueError):
        build_system(H32, [(0, 0, 2)])
    with pytest.warns(UserWarning):
        sys = build_system(H32, WORKED + [WORKED[0]])
    assert sys.candidate == tuple(WORKED)


def test_rows_follow_input_order():
    sys = build_system(H32, WORKED[::-1])
    assert [tuple(int(x) for x in r) for r in sys.A.rows] == [one_hot(v, 2).vector for v in WORKED[::-1]]


def test_dump():
    text = build_system(H32, WORKED).dump()
    assert text.startswith("# H_{3,2}\n# candidate\n100\n101\n001\n# A\n")
    assert "z1^2 + z2^2 + z3^2 + z4^2 + z5^2 + z6^2 - 6" in text


def test_max_rank_is_attained_by_the_full_vertex_set():
    for k, a in [(1, 2), (2, 2), (3, 2), (2, 3), (2, 4), (3, 3)]:
        g = HammingGraph(k, a)
        A = RationalMatrix([one_hot(v, a).vector for v in g.vertices()], cols=g.n_variables)
        assert rank(A) == max_rank(g)


# -- the constraint family ----------------------------------------------------------------------

@pytest.mark.parametrize("k,a", [(1, 2), (2, 2), (3, 2), (1, 3), (2, 3), (1, 4)])
def test_variety_is_the_admissible_set(k, a):
    g = HammingGraph(k, a)
    P = build_system(g, [next(g.vertices())]).P
    expected = set(admissible_vectors(k, a))
    roots = {z for z in itertools.product((-1, 0, 1), repeat=k * a) if all(evaluate(p, z) == 0 for p in P)}
    assert roots == expected
    assert all(is_admissible(z, a) for z in expected)


@pytest.mark.parametrize("k,a", [(3, 2), (2, 3), (2, 4)])
def test_sum_of_squares_takes_even_values(k, a):
    values = {sum(x * x for x in z) for z in admissible_vectors(k, a) if any(z)}
    assert values == {2 * i for i in range(1, k + 1)}


def test_redundancy_identities():
    z1, z2 = Polynomial.variable(0, 2), Polynomial.variable(1, 2)
    lin = [z1 + z2]
    cub = lambda v: v * (v - 1) * (v + 1)
    assert remainder(cub(z1) + cub(z2), lin, "lex").is_zero()
    s = z1**2 + z2**2
    assert remainder(s * (2 - s) + 4 * z2 * cub(z2), lin, "lex").is_zero()


def test_is_admissible():
    assert is_admissible((1, -1, 0, 0), 2)
    assert is_admissible((0, 0, 0), 3)
    assert not is_admissible((1, 1, 0, 0), 2)
    assert not is_admissible((1, 0, 0), 3)
    assert not is_admissible((2, -2), 2)
    assert not is_admissible((1, -1, 0), 2)


# -- structured basis -------------------------------------------------------------------------------

def lemma_block(a):
    """The closed form written out from the lemma, independently of the package."""
    z = [Polynomial.variable(j, a) for j in range(a)]
    out = [sum(z, Polynomial.zero(a))]
    out += [z[j] ** 3 - z[j] for j in range(1, a)]
    out += [z[i] * z[j] * (z[i] + z[j]) for i in range(1, a) for j in range(i + 1, a)]
    out += [z[i] * z[j] * z[l] for i in range(1, a) for j in range(i + 1, a) for l in range(j + 1, a)]
    return set(out)


def test_block_basis_examples():
    P = lambda t, n: parse_polynomial(t, n)
    assert set(closed_form_block_basis(2)) == {P("z1 + z2", 2), P("z2^3 - z2", 2)}
    assert set(closed_form_block_basis(3)) == {
        P("z1 + z2 + z3", 3),
        P("z2^3 - z2", 3),
        P("z3^3 - z3", 3),
        P("z2^2*z3 + z2*z3^2", 3),
    }


@pytest.mark.parametrize("a", [2, 3, 4])
def test_lemma_block_matches_buchberger(a):
    block = constraint_blocks(HammingGraph(1, a))[0]
    assert set(reduce_basis(buchberger(block, "lex")).polys) == lemma_block(a)
    assert set(closed_form_block_basis(a)) == lemma_block(a)


@pytest.mark.parametrize("k,a", [(2, 2), (3, 2), (2, 3)])
def test_structured_basis_matches_buchberger(k, a):
    g = HammingGraph(k, a)
    full = reduce_basis(buchberger(build_system(g, [next(g.vertices())]).P, "lex"))
    sb = structured_basis(g)
    assert set(sb.polys) == set(full.polys)
    assert sb.satisfies_criterion()


@pytest.mark.parametrize("order", ["grlex", "grevlex"])
@pytest.mark.parametrize("a", [2, 3, 4, 5, 6])
def test_lemma_block_is_reduced_for_graded_orders(order, a):
    block = constraint_blocks(HammingGraph(1, a))[0]
    assert set(groebner(block, order).polys) == lemma_block(a)


def test_structured_basis_needs_lex():
    with pytest.raises(ValueError):
        structured_basis(H32, "grevlex")


@pytest.mark.parametrize("order", ["grlex", "grevlex"])
def test_block_assembled_basis_for_graded_orders(order):
    g = HammingGraph(2, 3)
    P = build_system(g, [(0, 0)]).P
    assert constraint_basis(g, order, None) == groebner(P, order)


def test_shifted_reduction_corollary():
    G = structured_basis(H32)
    f = sum_of_squares(6)
    r = G.reduce(f)
    for i in (1, 2, 3):
        assert G.reduce(f - 2 * i) == r - 2 * i


# -- verdicts: examples -----------------------------------------------------------------------------

def test_worked_example_all_shifts_trivial():
    sys = build_system(H32, WORKED)
    gens = sys.P + sys.linear_polys()
    for f in sys.f_polys:
        assert is_trivial(groebner(gens + [f], "grevlex"))
    assert check_resolving_groebner(sys, fast_accept=False).resolving
    assert check_resolving_groebner(sys).resolving


def test_groebner_examples():
    g22 = HammingGraph(2, 2)
    assert check_resolving_groebner(build_system(g22, list(g22.vertices()))).resolving
    assert not check_resolving_groebner(build_system(H32, [(0, 0, 0)])).resolving
    assert not brute_force_is_resolving(H32, [(0, 0, 0)]).resolving


def test_enumeration_examples():
    assert len(list(admissible_vectors(3, 2))) == 27
    assert check_resolving_enumeration(build_system(H32, WORKED)).resolving
    g22 = HammingGraph(2, 2)
    v = check_resolving_enumeration(build_system(g22, [(0, 0)]))
    assert not v.resolving
    check_witness(g22, v, [(0, 0)])
    x_minus_y = tuple(a - b for a, b in zip(one_hot((1, 0), 2).vector, one_hot((0, 1), 2).vector))
    assert v.witness in (x_minus_y, tuple(-c for c in x_minus_y))


def test_enumeration_budget():
    with pytest.raises(EnumerationBudgetExceeded):
        check_resolving_enumeration(build_system(HammingGraph(6, 3), [(0,) * 6]), budget=100)


def test_hypercube_examples():
    assert hypercube_matrix(WORKED) == [(1, -1, -1), (1, -1, 1), (-1, -1, 1)]
    for route in ("enumeration", "groebner"):
        assert check_resolving_hypercube(H32, WORKED, route=route).resolving
        assert check_resolving_hypercube(HammingGraph(1, 2), [(0,)], route=route).resolving
        assert not check_resolving_hypercube(H32, [(0, 0, 0)], route=route).resolving
    with pytest.raises(ValueError):
        check_resolving_hypercube(HammingGraph(2, 3), [(0, 0)])
    with pytest.raises(ValueError):
        check_resolving_hypercube(H32, WORKED, route="magic")


def test_hypercube_witness_is_admissible():
    v = check_resolving_hypercube(H32, [(0, 0, 0)], route="enumeration")
    check_witness(H32, v, [(0, 0, 0)])


def test_single_block_witness():
    g = HammingGraph(2, 3)
    rows = [one_hot((0, 1), 3).vector]
    w = single_block_witness(g, rows)
    assert w is not None and is_admissible(w, 3)
    assert not (np.array(rows) @ np.array(w)).any()
    rows = [one_hot(v, 3).vector for v in [(0, 1), (1, 2)]]
    assert single_block_witness(g, rows) is None


@pytest.mark.parametrize("k,a", [(2, 3), (3, 2), (2, 4)])
def test_single_block_witness_is_exact(k, a):
    g = HammingGraph(k, a)
    one_block = [z for z in admissible_vectors(k, a) if sum(map(abs, z)) == 2]
    for cand in random_subsets(g, 60, seed=k * 10 + a, max_size=4):
        A = np.array([one_hot(v, a).vector for v in cand])
        exists = any(not (A @ np.array(z)).any() for z in one_block)
        assert (single_block_witness(g, A.tolist()) is not None) == exists


def test_modulus_must_be_large_enough():
    with pytest.raises(ValueError):
        GroebnerResolver(HammingGraph(3, 3), modulus=7)


def _needs_algebra(g, seed):
    """A non-resolving set that survives both shortcuts."""
    for cand in random_subsets(g, 500, seed, max_size=g.k * (g.a - 1)):
        rows = [one_hot(v, g.a).vector for v in cand]
        if single_block_witness(g, rows) is None and not brute_force_is_resolving(g, cand).resolving:
            if rank(RationalMatrix(rows)) < max_rank(g):
                return cand
    raise AssertionError("no candidate found")


def test_groebner_budget_is_reported():
    g = HammingGraph(3, 3)
    cand = _needs_algebra(g, 1)
    with pytest.raises(GroebnerBudgetExceeded):
        GroebnerResolver(g, budget=0).check(cand)


# -- verdicts: agreement ------------------------------------------------------------------------

@pytest.mark.parametrize("k,a", [(1, 2), (2, 2), (1, 3), (1, 4)])
def test_three_way_agreement_on_all_subsets(k, a):
    g = HammingGraph(k, a)
    for cand in all_subsets(list(g.vertices())):
        sys = build_system(g, cand)
        truth = brute_force_is_resolving(g, cand)
        gv = check_resolving_groebner(sys)
        ev = check_resolving_enumeration(sys)
        assert gv.resolving == ev.resolving == truth.resolving
        check_witness(g, gv, cand)
        check_witness(g, ev, cand)
        check_witness(g, truth, cand)


@pytest.mark.parametrize("k,a", [(4, 2), (2, 3), (3, 3), (2, 4)])
def test_three_way_agreement_on_random_subsets(k, a):
    g = HammingGraph(k, a)
    for cand in random_subsets(g, 60, seed=k + 7 * a, max_size=2 * k * a):
        sys = build_system(g, cand)
        truth = brute_force_is_resolving(g, cand).resolving
        assert check_resolving_groebner(sys).resolving == truth
        assert check_resolving_enumeration(sys).resolving == truth


@pytest.mark.parametrize("order", ["lex", "grlex"])
def test_orderings_agree(order):
    g = HammingGraph(2, 3)
    for cand in random_subsets(g, 40, seed=3, max_size=4):
        sys = build_system(g, cand)
        assert (
            check_resolving_groebner(sys, order, fast_accept=False, fast_reject=False).resolving
            == check_resolving_groebner(sys, "grevlex", fast_accept=False, fast_reject=False).resolving
        )


def test_rational_and_prime_field_agree():
    g = HammingGraph(3, 3)
    rational = GroebnerResolver(g, modulus=None, fast_accept=False, fast_reject=False)
    modular = GroebnerResolver(g, fast_accept=False, fast_reject=False)
    for cand in random_subsets(g, 25, seed=5, max_size=6):
        assert rational.check(cand).resolving == modular.check(cand).resolving


def test_shortcuts_do_not_change_verdicts():
    g = HammingGraph(2, 4)
    plain = GroebnerResolver(g, fast_accept=False, fast_reject=False)
    quick = GroebnerResolver(g)
    pre = GroebnerResolver(g, precompute=True)
    for cand in random_subsets(g, 40, seed=9, max_size=8):
        expected = brute_force_is_resolving(g, cand).resolving
        assert plain.check(cand).resolving == quick.check(cand).resolving == expected
        assert pre.check(cand).resolving == expected


def test_hypercube_agrees_with_groebner_and_brute_force():
    g = HammingGraph(5, 2)
    for cand in random_subsets(g, 200, seed=52, max_size=8):
        truth = brute_force_is_resolving(g, cand).resolving
        assert check_resolving_hypercube(g, cand).resolving == truth
        assert check_resolving_groebner(build_system(g, cand)).resolving == truth


def test_hypercube_routes_agree():
    g = HammingGraph(4, 2)
    for cand in random_subsets(g, 60, seed=42, max_size=6):
        assert (
            check_resolving_hypercube(g, cand, route="groebner").resolving
            == check_resolving_hypercube(g, cand, route="enumeration").resolving
            == check_resolving_hypercube(g, cand, route="groebner", modulus=None).resolving
        )
