"""Resolvability of vertex sets in Hamming graphs through an algebraic system.

A set ``R`` fails to resolve ``H_{k,a}`` exactly when two distinct vertices
``x, y`` have ``A (X - Y) = 0``, where the rows of ``A`` are the vectorised
one-hot encodings of ``R``.  Differences ``X - Y`` are the *admissible*
vectors: split into ``k`` blocks of length ``a``, every block is zero or holds
a single ``+1`` and a single ``-1``.  The admissible vectors are the common
roots of a fixed polynomial family ``P`` (per block: ``z(z-1)(z+1)`` for
every variable, the block sum, and ``s(2 - s)`` with ``s`` the block's sum of
squares).  The zero vector is excluded by adding ``sum(z_j^2) - 2i`` for one
``i`` in ``1..k`` at a time, and each resulting system is tested for a root by
checking whether its reduced Gröbner basis is ``{1}``.

Variables are indexed block-major: 0-based index ``b*a + s`` is symbol ``s``
at position ``b`` (displayed ``z{b*a+s+1}``).

Verdicts are computed over the prime field of order ``VERDICT_MODULUS`` by
default.  This is exact, not heuristic: every generator has integer
coefficients and ``P`` contains ``z(z-1)(z+1)``, so any root over the
algebraic closure of that field has coordinates in ``{-1, 0, 1}``; at such
points every generator takes an integer value far smaller than the modulus,
so a root modulo the prime is a root over the rationals and conversely.  The
rational computation (``modulus=None``) gives the same verdicts but suffers
from coefficient growth when the candidate leaves few admissible vectors.
"""

from __future__ import annotations

import functools
import itertools
import logging
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .exactmath import RationalMatrix, independent_rows, rref
from .groebner import (
    DEFAULT_STEP_BUDGET,
    GroebnerBasis,
    extend_basis,
    is_trivial,
    shifted_reductions,
    to_modular,
)
from .hamgraph import HammingGraph, one_hot
from .polycore import LEX, Ordering, Polynomial, get_ordering
from .verdict import EnumerationBudgetExceeded, ResolvabilityVerdict

__all__ = [
    "DEFAULT_ENUM_BUDGET",
    "VERDICT_MODULUS",
    "ResolvabilitySystem",
    "build_system",
    "constraint_blocks",
    "sum_of_squares",
    "closed_form_block_basis",
    "structured_basis",
    "constraint_basis",
    "max_rank",
    "single_block_witness",
    "is_admissible",
    "GroebnerResolver",
    "check_resolving_groebner",
    "check_resolving_enumeration",
    "hypercube_matrix",
    "check_resolving_hypercube",
]

logger = logging.getLogger(__name__)

DEFAULT_ENUM_BUDGET = 10**7
VERDICT_MODULUS = 2**31 - 1
# Graphs with at most this many variables get their shifted bases precomputed.
PRECOMPUTE_MAX_VARIABLES = 12


def _var(j: int, n: int) -> Polynomial:
    return Polynomial.variable(j, n)


def _cubic(j: int, n: int) -> Polynomial:
    z = _var(j, n)
    return z * (z - 1) * (z + 1)


def constraint_blocks(g: HammingGraph) -> list[list[Polynomial]]:
    """The polynomial family ``P`` split by block.

    Block ``b`` lists the ``a`` cubics, then the block sum, then the quartic
    ``s(2 - s)``.
    """
    return [list(b) for b in _blocks(g)]


@functools.lru_cache(maxsize=64)
def _blocks(g: HammingGraph) -> tuple:
    n = g.n_variables
    blocks = []
    for b in range(g.k):
        idx = range(b * g.a, (b + 1) * g.a)
        cubics = [_cubic(j, n) for j in idx]
        linear = sum((_var(j, n) for j in idx), Polynomial.zero(n))
        squares = sum((_var(j, n) ** 2 for j in idx), Polynomial.zero(n))
        blocks.append(tuple(cubics + [linear, squares * (2 - squares)]))
    return tuple(blocks)


@functools.lru_cache(maxsize=64)
def _shifted_squares(g: HammingGraph) -> tuple:
    f = sum_of_squares(g.n_variables)
    return tuple(f - 2 * i for i in range(1, g.k + 1))


def sum_of_squares(nvars: int) -> Polynomial:
    return Polynomial({tuple(2 * (i == j) for i in range(nvars)): 1 for j in range(nvars)}, nvars)


def max_rank(g: HammingGraph) -> int:
    """Largest possible rank of a one-hot matrix of ``H_{k,a}``.

    Every row sums to 1 on each block, so differences of block indicator
    vectors always lie in the kernel.
    """
    return g.k * (g.a - 1) + 1


@dataclass(frozen=True)
class ResolvabilitySystem:
    graph: HammingGraph
    candidate: tuple
    A: RationalMatrix
    P_blocks: tuple
    f_polys: tuple
    _rref: tuple = field(default=None, repr=False, compare=False)

    @property
    def P(self) -> list[Polynomial]:
        return [p for block in self.P_blocks for p in block]

    @property
    def rref(self) -> tuple[RationalMatrix, list[int]]:
        if self._rref is None:
            object.__setattr__(self, "_rref", rref(self.A))
        return self._rref

    @property
    def rank(self) -> int:
        return len(self.rref[1])

    def linear_polys(self) -> list[Polynomial]:
        """Linear polynomials of the nonzero rows of ``rref(A)``."""
        return _rows_to_linear(self.rref[0].rows[: self.rank], self.graph.n_variables)

    def dump(self) -> str:
        g = self.graph
        lines = [f"# H_{{{g.k},{g.a}}}", "# candidate"]
        lines += [g.format_vertex(v) for v in self.candidate]
        lines += ["# A", str(self.A), "# rref(A)", str(self.rref[0]), "# P"]
        lines += [p.format(LEX) for p in self.P]
        lines += ["# f"]
        lines += [p.format(LEX) for p in self.f_polys]
        return "\n".join(lines) + "\n"


def _rows_to_linear(rows: Iterable[Sequence], n: int) -> list[Polynomial]:
    out = []
    for row in rows:
        terms = {tuple(int(i == j) for i in range(n)): c for j, c in enumerate(row) if c}
        if terms:
            out.append(Polynomial(terms, n))
    return out


def _int_rows_to_linear(rows: Iterable[Sequence], n: int, modulus: int) -> list[Polynomial]:
    """Linear polynomials of integer rows, with coefficients already reduced mod ``modulus``."""
    units = _unit_monomials(n)
    out = []
    for row in rows:
        terms = {units[j]: int(c) % modulus for j, c in enumerate(row) if c}
        if terms:
            out.append(Polynomial._raw(terms, n))
    return out


def _rref_mod(rows: Sequence[Sequence], n: int, modulus: int) -> list[list[int]]:
    """Nonzero rows of the reduced row echelon form over the prime field."""
    work = [[int(x) % modulus for x in row] for row in rows]
    out: list[list[int]] = []
    for col in range(n):
        piv = next((r for r in work if r[col]), None)
        if piv is None:
            continue
        work.remove(piv)
        inv = pow(piv[col], -1, modulus)
        piv = [x * inv % modulus for x in piv]
        for group in (work, out):
            for r in group:
                c = r[col]
                if c:
                    for j in range(col, n):
                        r[j] = (r[j] - c * piv[j]) % modulus
        out.append(piv)
    return out


@functools.lru_cache(maxsize=64)
def _unit_monomials(n: int) -> tuple:
    return tuple(tuple(int(i == j) for i in range(n)) for j in range(n))


def _one_hot_rows(g: HammingGraph, candidate: Sequence[tuple]) -> list[tuple]:
    return [one_hot(v, g.a).vector for v in candidate]


def _dedupe(g: HammingGraph, r: Iterable[Sequence[int]]) -> tuple:
    seen = []
    for v in r:
        v = g.validate_vertex(v)
        if v in seen:
            warnings.warn(f"duplicate vertex {g.format_vertex(v)} dropped", stacklevel=3)
            continue
        seen.append(v)
    if not seen:
        raise ValueError("candidate set is empty")
    return tuple(seen)


def build_system(g: HammingGraph, r: Iterable[Sequence[int]]) -> ResolvabilitySystem:
    """Assemble ``A``, the constraint blocks and the shifted sum-of-squares polynomials."""
    candidate = _dedupe(g, r)
    A = RationalMatrix(_one_hot_rows(g, candidate), cols=g.n_variables)
    return ResolvabilitySystem(g, candidate, A, _blocks(g), _shifted_squares(g))


# -- structured basis of P -------------------------------------------------------


def closed_form_block_basis(a: int, offset: int = 0, nvars: int | None = None) -> list[Polynomial]:
    """Reduced lex basis of one block of ``P`` in variables ``offset .. offset+a-1``.

    The block sum, the cubics of every variable but the first, ``zi*zj*(zi+zj)``
    over pairs and ``zi*zj*zl`` over triples that avoid the first variable.
    """
    n = nvars if nvars is not None else offset + a
    z = [_var(offset + j, n) for j in range(a)]
    out = [sum(z, Polynomial.zero(n))]
    rest = z[1:]
    out += [v * (v - 1) * (v + 1) for v in rest]
    out += [x * y * (x + y) for x, y in itertools.combinations(rest, 2)]
    out += [x * y * w for x, y, w in itertools.combinations(rest, 3)]
    return out


def structured_basis(g: HammingGraph, order: str | Ordering = "lex") -> GroebnerBasis:
    """Reduced lex basis of ``P`` as the union of renamed closed-form blocks."""
    if get_ordering(order).name != "lex":
        raise ValueError("the closed-form basis is stated for the lex ordering only")
    n = g.n_variables
    polys = []
    for b in range(g.k):
        polys += closed_form_block_basis(g.a, offset=b * g.a, nvars=n)
    return GroebnerBasis(polys, LEX, reduced=True)


@functools.lru_cache(maxsize=None)
def _block_basis(a: int, order_name: str, modulus: int | None) -> tuple:
    # The closed form is also the reduced basis for grlex and grevlex: its
    # leading monomials agree under all three orders, so each graded initial
    # ideal contains the lex one, and both leave the same finite number of
    # standard monomials (the 1 + a(a-1) roots).
    closed = closed_form_block_basis(a)
    if modulus is not None:
        closed = [to_modular(p, modulus) for p in closed]
    return tuple(closed)


@functools.lru_cache(maxsize=64)
def constraint_basis(
    g: HammingGraph, order: str | Ordering = "grevlex", modulus: int | None = None
) -> GroebnerBasis:
    """Reduced basis of ``P`` for any ordering, assembled block by block.

    Blocks use disjoint variables, so the union of the renamed block bases is
    the reduced basis of the whole family.
    """
    order = get_ordering(order)
    if order.name == "lex" and modulus is None:
        return structured_basis(g)
    n = g.n_variables
    polys = []
    for b in range(g.k):
        mapping = [b * g.a + j for j in range(g.a)]
        polys += [
            p.substitute_variables(mapping, n) for p in _block_basis(g.a, order.name, modulus)
        ]
    return GroebnerBasis(polys, order, reduced=True, modulus=modulus)


def single_block_witness(g: HammingGraph, rows: Sequence[Sequence]) -> tuple | None:
    """An admissible vector supported on one block and annihilated by ``A``, if any.

    Columns ``p`` and ``q`` of a block agree on every one-hot row exactly when
    no row uses symbol ``p`` or ``q`` at that position, so such a vector exists
    iff some position leaves two symbols unused.  This is the whole content
    of the shift ``i = 1``, decided without any algebra.
    """
    a = g.a
    for b in range(g.k):
        unused = [s for s in range(a) if not any(row[b * a + s] for row in rows)]
        if len(unused) >= 2:
            z = [0] * g.n_variables
            z[b * a + unused[0]] = 1
            z[b * a + unused[1]] = -1
            return tuple(z)
    return None


def _check_modulus(g: HammingGraph, modulus: int | None) -> None:
    if modulus is None:
        return
    # largest |value| of a generator at a point of {-1,0,1}^n
    bound = max(g.a * g.a, g.n_variables + 2 * g.k)
    if modulus <= bound:
        raise ValueError(f"modulus {modulus} must exceed {bound} for H_{{{g.k},{g.a}}}")


# -- Gröbner route ----------------------------------------------------------------


class GroebnerResolver:
    """Resolvability checks for one graph and ordering, sharing precomputed bases.

    Holds the reduced basis of ``P``, assembled block by block, and the
    normal forms ``r - 2i`` of the shifted polynomials modulo it.  A check
    adds the linear rows of the candidate first and then handles every shift
    through one further normal form (see :meth:`bases`).  With
    ``precompute=True`` the bases of ``P + {sum(z_j^2) - 2i}`` are instead
    computed once up front and extended by the rows of each candidate.
    """

    def __init__(
        self,
        graph: HammingGraph,
        ordering: str | Ordering = "grevlex",
        budget: int = DEFAULT_STEP_BUDGET,
        fast_accept: bool = True,
        precompute: bool = False,
        modulus: int | None = VERDICT_MODULUS,
        fast_reject: bool = True,
    ):
        _check_modulus(graph, modulus)
        self.graph = graph
        self.order = get_ordering(ordering)
        self.budget = budget
        self.fast_accept = fast_accept
        self.fast_reject = fast_reject
        self.modulus = modulus
        self.base = constraint_basis(graph, self.order, modulus)
        f = sum_of_squares(graph.n_variables)
        self.shifted = shifted_reductions(self.base, f, [2 * i for i in range(1, graph.k + 1)])
        self._shift_bases = None
        if precompute:
            self._shift_bases = [extend_basis(self.base, [s], budget) for s in self.shifted]

    def shift_basis(self, i: int) -> GroebnerBasis:
        """Reduced basis of ``P + {sum(z_j^2) - 2i}`` (``i`` is 1-based)."""
        if self._shift_bases is None:
            self._shift_bases = [None] * self.graph.k
        if self._shift_bases[i - 1] is None:
            self._shift_bases[i - 1] = extend_basis(self.base, [self.shifted[i - 1]], self.budget)
        return self._shift_bases[i - 1]

    def bases(self, linear: Sequence[Polynomial]) -> Iterable[GroebnerBasis]:
        """Reduced bases of the ``k`` shifted systems with ``linear`` appended, lazily.

        Without precomputed shift bases the linear rows go in first: ``G_L``
        is the basis of ``P`` plus ``linear``, ``r_L`` the normal form of
        ``sum(z_j^2)`` modulo ``G_L``, and shift ``i`` extends ``G_L`` by
        ``r_L - 2i`` alone.  A nonzero constant there settles the shift at
        once; a zero one leaves ``G_L``, which is never ``{1}`` because
        the zero vector is a root.
        """
        if self._shift_bases is not None:
            for i in range(1, self.graph.k + 1):
                yield extend_basis(self.shift_basis(i), linear, self.budget)
            return
        g_lin = extend_basis(self.base, linear, self.budget)
        f = sum_of_squares(self.graph.n_variables)
        shifts = [2 * i for i in range(1, self.graph.k + 1)]
        for h in shifted_reductions(g_lin, f, shifts):
            if h.is_zero():
                yield g_lin
            elif h.is_constant():
                yield GroebnerBasis(
                    [Polynomial.constant(1, h.nvars)], self.order, reduced=True, modulus=self.modulus
                )
            else:
                yield extend_basis(g_lin, [h], self.budget)

    def check_rows(self, rows: Sequence[Sequence]) -> ResolvabilityVerdict:
        n = self.graph.n_variables
        if self.modulus is None:
            reduced, pivots = rref(RationalMatrix(rows, cols=n))
            echelon = reduced.rows[: len(pivots)]
        else:
            # row operations over the prime field keep the ideal of the integer
            # rows; a full rank there implies a full rational rank
            echelon = _rref_mod(rows, n, self.modulus)
        if self.fast_accept and len(echelon) == max_rank(self.graph):
            return ResolvabilityVerdict(True, "groebner")
        if self.fast_reject:
            w = single_block_witness(self.graph, rows)
            if w is not None:
                return ResolvabilityVerdict(False, "groebner", w)
        if self.modulus is None:
            linear = _rows_to_linear(echelon, n)
        else:
            linear = _int_rows_to_linear(echelon, n, self.modulus)
        for i, basis in enumerate(self.bases(linear), 1):
            if not is_trivial(basis):
                logger.debug("shift %d leaves a nontrivial basis of %d elements", i, len(basis))
                return ResolvabilityVerdict(False, "groebner")
        return ResolvabilityVerdict(True, "groebner")

    def check(self, candidate: Iterable[Sequence[int]]) -> ResolvabilityVerdict:
        cand = _dedupe(self.graph, candidate)
        return self.check_rows(_one_hot_rows(self.graph, cand))


@functools.lru_cache(maxsize=32)
def _resolver(graph, order_name, budget, fast_accept, modulus, fast_reject):
    return GroebnerResolver(
        graph,
        order_name,
        budget,
        fast_accept,
        modulus=modulus,
        fast_reject=fast_reject,
    )


def check_resolving_groebner(
    sys: ResolvabilitySystem,
    ordering: str | Ordering = "grevlex",
    budget: int = DEFAULT_STEP_BUDGET,
    fast_accept: bool = True,
    modulus: int | None = VERDICT_MODULUS,
    fast_reject: bool = True,
) -> ResolvabilityVerdict:
    """Decide resolvability by testing the ``k`` shifted systems for roots.

    Stops at the first shift whose reduced basis is not ``{1}``.  Raises
    :class:`~hamres.groebner.GroebnerBudgetExceeded` instead of guessing when
    the step budget runs out.  ``fast_accept`` skips the algebra when the rank
    of ``A`` is maximal; ``fast_reject`` first looks for a witness supported on
    a single block.
    """
    resolver = _resolver(
        sys.graph, get_ordering(ordering).name, budget, fast_accept, modulus, fast_reject
    )
    return resolver.check_rows(_one_hot_rows(sys.graph, sys.candidate))


# -- enumeration route ------------------------------------------------------------


def is_admissible(z: Sequence[int], a: int) -> bool:
    if len(z) % a:
        return False
    for b in range(0, len(z), a):
        block = z[b : b + a]
        if any(x not in (-1, 0, 1) for x in block):
            return False
        nz = [x for x in block if x]
        if nz and sorted(nz) != [-1, 1]:
            return False
    return True


def _mitm_kernel_search(columns: list[list[tuple]], budget: int, label: str):
    """Find a choice of one option per group with zero total and not all trivial.

    ``columns[b]`` lists ``(vector, option)`` pairs for group ``b``; option 0 of
    every group must be the zero vector.  The groups are split in two halves,
    the left sums are tabulated and every right sum is matched against them.
    Returns the chosen option indices or ``None``.
    """
    k = len(columns)
    h = k // 2
    left, right = columns[:h], columns[h:]
    work = 1
    for c in left:
        work *= len(c)
    work_r = 1
    for c in right:
        work_r *= len(c)
    if work + work_r > budget:
        raise EnumerationBudgetExceeded(f"{label}: {work + work_r} partial vectors exceed {budget}")
    dim = len(columns[0][0][0])
    zero = (0,) * dim

    def sums(groups):
        if not groups:
            yield zero, ()
            return
        for choice in itertools.product(*(range(len(c)) for c in groups)):
            acc = [0] * dim
            for c, o in zip(groups, choice):
                vec = c[o][0]
                for t in range(dim):
                    acc[t] += vec[t]
            yield tuple(acc), choice

    table: dict = {}
    nonzero_null = None
    for s, choice in sums(left):
        table.setdefault(s, choice)
        if nonzero_null is None and s == zero and any(choice):
            nonzero_null = choice
    for s, choice in sums(right):
        target = tuple(-x for x in s)
        if any(choice):
            hit = table.get(target)
            if hit is not None:
                return hit + choice
        elif nonzero_null is not None:
            return nonzero_null + choice
    return None


def check_resolving_enumeration(
    sys: ResolvabilitySystem, budget: int = DEFAULT_ENUM_BUDGET
) -> ResolvabilityVerdict:
    """Search the admissible vectors for a nonzero one in the kernel of ``A``.

    Meet-in-the-middle over blocks: each block is zero or one of the
    ``a(a-1)`` signed pairs.  The witness, if any, is the admissible vector.
    """
    g = sys.graph
    rows = [[int(x) for x in row] for row in sys.A.rows]
    n = len(rows)
    columns = []
    for b in range(g.k):
        opts = [((0,) * n, None)]
        for p, q in itertools.permutations(range(g.a), 2):
            cp, cq = b * g.a + p, b * g.a + q
            opts.append((tuple(row[cp] - row[cq] for row in rows), (p, q)))
        columns.append(opts)
    found = _mitm_kernel_search(columns, budget, "admissible enumeration")
    if found is None:
        return ResolvabilityVerdict(True, "enumeration")
    z = [0] * g.n_variables
    for b, o in enumerate(found):
        pair = columns[b][o][1]
        if pair is not None:
            z[b * g.a + pair[0]] = 1
            z[b * g.a + pair[1]] = -1
    return ResolvabilityVerdict(False, "enumeration", tuple(z))


# -- hypercube route ----------------------------------------------------------------


def hypercube_matrix(r: Sequence[Sequence[int]]) -> list[tuple]:
    """Rows ``v - flip(v)``: +1 where the symbol is 1, -1 where it is 0."""
    return [tuple(2 * s - 1 for s in v) for v in r]


@functools.lru_cache(maxsize=32)
def _cube_basis(k: int, order_name: str, modulus: int | None) -> GroebnerBasis:
    polys = [_cubic(j, k) for j in range(k)]
    if modulus is not None:
        polys = [to_modular(p, modulus) for p in polys]
    return GroebnerBasis(polys, order_name, reduced=True, modulus=modulus)


def check_resolving_hypercube(
    g: HammingGraph,
    r: Iterable[Sequence[int]],
    enum_budget: int = DEFAULT_ENUM_BUDGET,
    groebner_budget: int = DEFAULT_STEP_BUDGET,
    ordering: str | Ordering = "grevlex",
    route: str = "auto",
    modulus: int | None = VERDICT_MODULUS,
) -> ResolvabilityVerdict:
    """Binary alphabet: ``R`` resolves iff ``Bz = 0`` has no nonzero ``z`` in ``{-1,0,1}^k``.

    ``route`` is ``"enumeration"``, ``"groebner"`` or ``"auto"`` (enumerate when
    ``3^k`` fits the enumeration budget).  A witness ``w`` from the
    enumeration is reported as the admissible vector with blocks ``(-w_j, w_j)``.
    """
    if g.a != 2:
        raise ValueError("the hypercube path needs a = 2")
    cand = _dedupe(g, r)
    B = hypercube_matrix(cand)
    k = g.k
    if route == "auto":
        route = "enumeration" if 3**k <= enum_budget else "groebner"
    if route == "enumeration":
        columns = []
        for j in range(k):
            col = tuple(row[j] for row in B)
            columns.append([((0,) * len(B), 0), (col, 1), (tuple(-x for x in col), -1)])
        found = _mitm_kernel_search(columns, enum_budget, "hypercube enumeration")
        if found is None:
            return ResolvabilityVerdict(True, "hypercube")
        w = [columns[j][o][1] for j, o in enumerate(found)]
        z = tuple(x for wj in w for x in (-wj, wj))
        return ResolvabilityVerdict(False, "hypercube", z)
    if route != "groebner":
        raise ValueError(f"unknown route {route!r}")
    order = get_ordering(ordering)
    if modulus is not None and modulus <= 2 * k:
        raise ValueError(f"modulus {modulus} must exceed {2 * k}")
    base = _cube_basis(k, order.name, modulus)
    Bm = RationalMatrix(B, cols=k)
    reduced, pivots = rref(Bm)
    if len(pivots) == k:
        return ResolvabilityVerdict(True, "hypercube")
    if modulus is None:
        linear = _rows_to_linear(reduced.rows[: len(pivots)], k)
    else:
        linear = _rows_to_linear(Bm.select_rows(independent_rows(Bm.rows)).rows, k)
    squares = sum_of_squares(k)
    for i in range(1, k + 1):
        basis = extend_basis(base, linear + [squares - i], groebner_budget)
        if not is_trivial(basis):
            return ResolvabilityVerdict(False, "hypercube")
    return ResolvabilityVerdict(True, "hypercube")
