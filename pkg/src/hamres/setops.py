"""Shrinking and generating resolving sets.

* :func:`reduce_top_down` drops vertices one at a time from a resolving set
  while it stays resolving.
* :func:`reduce_generative` grows a subset of a resolving set vertex by vertex
  until it resolves, extending Gröbner bases incrementally.
* :func:`generate_resolving` samples fresh vertices, keeping only those that
  raise the rank of the one-hot matrix, until the set resolves.

Resolvability checks try the rank test first (a one-hot matrix of rank
``k(a-1)+1`` always resolves), then look for a kernel witness inside a single
block, then use the binary shortcut when ``a == 2`` and the general Gröbner
route otherwise.
"""

from __future__ import annotations

import logging
from typing import Iterable, Sequence

import numpy as np

from .exactmath import Rational, independent_rows, to_rational
from .groebner import DEFAULT_STEP_BUDGET, extend_basis, is_trivial, shifted_reductions
from .hamgraph import HammingGraph, one_hot
from .polycore import Polynomial, get_ordering
from .resolver import (
    DEFAULT_ENUM_BUDGET,
    PRECOMPUTE_MAX_VARIABLES,
    VERDICT_MODULUS,
    GroebnerResolver,
    _cube_basis,
    _dedupe,
    check_resolving_hypercube,
    hypercube_matrix,
    max_rank,
    single_block_witness,
    sum_of_squares,
)
from .verdict import NotResolvingError

__all__ = [
    "RandomSource",
    "IncrementalChecker",
    "reduce_top_down",
    "reduce_generative",
    "generate_resolving",
]

logger = logging.getLogger(__name__)

class RandomSource:
    """Seeded randomness for shuffles and vertex draws.

    A 64-bit seed is split into two 32-bit words that seed numpy's Mersenne
    Twister ``RandomState``, whose streams are fixed across platforms and
    releases.
    """

    def __init__(self, seed: int = 0):
        seed = int(seed)
        if not 0 <= seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
        self.seed = seed
        self.state = np.random.RandomState([seed & 0xFFFFFFFF, seed >> 32])

    def shuffled(self, items: Sequence) -> list:
        order = self.state.permutation(len(items))
        return [items[i] for i in order]

    def vertex(self, g: HammingGraph) -> tuple:
        return g.random_vertex(self.state)

    def integers(self, high: int) -> int:
        return int(self.state.randint(0, high))

    def __repr__(self) -> str:
        return f"RandomSource(seed={self.seed})"


def _as_source(rng) -> RandomSource:
    if isinstance(rng, RandomSource):
        return rng
    if rng is None:
        return RandomSource(0)
    return RandomSource(rng)


class _RankTracker:
    """Incremental row echelon form for the rank test."""

    def __init__(self):
        self.basis: list[tuple[int, list]] = []

    def residual(self, row: Sequence) -> list:
        v = [to_rational(x) for x in row]
        for col, b in self.basis:
            c = v[col]
            if c != 0:
                for j, x in enumerate(b):
                    if x != 0:
                        v[j] -= c * x
        return v

    def increases(self, row: Sequence) -> bool:
        return any(x != 0 for x in self.residual(row))

    def add(self, row: Sequence) -> bool:
        v = self.residual(row)
        col = next((j for j, x in enumerate(v) if x != 0), None)
        if col is None:
            return False
        inv = Rational(1) / v[col]
        self.basis.append((col, [x * inv for x in v]))
        return True

    @property
    def rank(self) -> int:
        return len(self.basis)


class IncrementalChecker:
    """Resolvability of a growing vertex set, with one basis extended row by row.

    For ``a == 2`` (and ``binary=True``) the smaller system in ``k`` variables
    is used: ``z_j^3 - z_j``, the rows ``2v - 1`` and ``sum(z_j^2) - i``.
    Otherwise the full system in ``a*k`` variables with one-hot rows is used.
    The basis of the constraints plus the rows seen so far only receives the
    rows added since the previous check.  Each check then reduces
    ``sum(z_j^2)`` to ``r`` once and settles shift ``c`` through ``r - c``.
    """

    def __init__(
        self,
        g: HammingGraph,
        ordering: str = "grevlex",
        budget: int = DEFAULT_STEP_BUDGET,
        binary: bool = True,
        modulus: int | None = VERDICT_MODULUS,
    ):
        self.graph = g
        self.order = get_ordering(ordering)
        self.budget = budget
        self.modulus = modulus
        self.binary = binary and g.a == 2
        self.vertices: list[tuple] = []
        self.rows: list[tuple] = []
        self.one_hot_rows: list[tuple] = []
        self.ranks = _RankTracker()
        if self.binary:
            self.nvars = g.k
            self._basis = _cube_basis(g.k, self.order.name, modulus)
            self._shifts = list(range(1, g.k + 1))
        else:
            self.nvars = g.n_variables
            self._basis = GroebnerResolver(g, self.order, budget, modulus=modulus).base
            self._shifts = [2 * i for i in range(1, g.k + 1)]
        self._squares = sum_of_squares(self.nvars)
        self._applied = 0

    def _row(self, v: tuple) -> tuple:
        if self.binary:
            return hypercube_matrix([v])[0]
        return one_hot(v, self.graph.a).vector

    def would_increase_rank(self, v: Sequence[int]) -> bool:
        return self.ranks.increases(one_hot(v, self.graph.a).vector)

    def add(self, v: Sequence[int]) -> None:
        v = self.graph.validate_vertex(v)
        self.vertices.append(v)
        self.rows.append(self._row(v))
        self.one_hot_rows.append(one_hot(v, self.graph.a).vector)
        self.ranks.add(self.one_hot_rows[-1])

    @property
    def rank(self) -> int:
        return self.ranks.rank

    def _linear(self, rows: Iterable[Sequence]) -> list[Polynomial]:
        n = self.nvars
        out = []
        for row in rows:
            terms = {tuple(int(i == j) for i in range(n)): c for j, c in enumerate(row) if c}
            if terms:
                out.append(Polynomial(terms, n))
        return out

    def resolving(self) -> bool:
        if not self.vertices:
            return False
        if self.rank == max_rank(self.graph):
            return True
        if single_block_witness(self.graph, self.one_hot_rows) is not None:
            return False
        new_rows = self.rows[self._applied :]
        if new_rows:
            self._basis = extend_basis(self._basis, self._linear(new_rows), self.budget)
            self._applied = len(self.rows)
        for h in shifted_reductions(self._basis, self._squares, self._shifts):
            if h.is_zero():
                return False
            if h.is_constant():
                continue
            if not is_trivial(extend_basis(self._basis, [h], self.budget)):
                return False
        return True


class _Checker:
    """One-shot checks in the order used by the set algorithms."""

    def __init__(self, g: HammingGraph, ordering: str, budget: int, enum_budget: int):
        self.graph = g
        self.ordering = ordering
        self.budget = budget
        self.enum_budget = enum_budget
        self._resolver = None

    def __call__(self, vertices: Sequence[tuple]) -> bool:
        g = self.graph
        rows = [one_hot(v, g.a).vector for v in vertices]
        if len(independent_rows(rows)) == max_rank(g):
            return True
        if single_block_witness(g, rows) is not None:
            return False
        if g.a == 2:
            return check_resolving_hypercube(
                g, vertices, self.enum_budget, self.budget, self.ordering
            ).resolving
        if self._resolver is None:
            self._resolver = GroebnerResolver(
                g,
                self.ordering,
                self.budget,
                fast_accept=False,
                precompute=g.n_variables <= PRECOMPUTE_MAX_VARIABLES,
            )
        return self._resolver.check_rows(rows).resolving


def reduce_top_down(
    g: HammingGraph,
    r: Iterable[Sequence[int]],
    rng=None,
    ordering: str = "grevlex",
    budget: int = DEFAULT_STEP_BUDGET,
    enum_budget: int = DEFAULT_ENUM_BUDGET,
) -> list[tuple]:
    """An inclusion-minimal resolving subset of ``r``.

    Vertices whose one-hot rows depend linearly on earlier ones (in shuffled
    order) are dropped first; they never change the kernel.  The rest are
    visited in shuffled order and removed whenever the remainder still
    resolves.  A single pass suffices: a vertex that could not be removed stays
    necessary once the set only shrinks.  The result keeps the input order.
    """
    rng = _as_source(rng)
    cand = list(_dedupe(g, r))
    check = _Checker(g, ordering, budget, enum_budget)
    if not check(cand):
        raise NotResolvingError("the input set does not resolve the graph")
    shuffled = rng.shuffled(cand)
    keep_idx = independent_rows([one_hot(v, g.a).vector for v in shuffled])
    current = [shuffled[i] for i in keep_idx]
    logger.debug("rank pre-pass kept %d of %d vertices", len(current), len(cand))
    for v in list(current):
        trial = [u for u in current if u != v]
        if trial and check(trial):
            current = trial
    kept = set(current)
    return [v for v in cand if v in kept]


def reduce_generative(
    g: HammingGraph,
    r: Iterable[Sequence[int]],
    rng=None,
    ordering: str = "grevlex",
    budget: int = DEFAULT_STEP_BUDGET,
) -> list[tuple]:
    """The shortest resolving prefix of a shuffled ``r``.

    Raises :class:`NotResolvingError` when every vertex has been added and the
    set still does not resolve.
    """
    rng = _as_source(rng)
    cand = list(_dedupe(g, r))
    checker = IncrementalChecker(g, ordering, budget)
    for v in rng.shuffled(cand):
        checker.add(v)
        if checker.resolving():
            return list(checker.vertices)
    raise NotResolvingError("the input set does not resolve the graph")


def generate_resolving(
    g: HammingGraph,
    rng=None,
    ordering: str = "grevlex",
    budget: int = DEFAULT_STEP_BUDGET,
) -> list[tuple]:
    """A resolving set built from random vertices that each raise the rank.

    Vertices are drawn uniformly among those not drawn before.  The rank can
    rise at most ``k(a-1)+1`` times and a set of that rank always resolves, so
    the output has at most ``k(a-1)+1 <= a*k`` vertices.
    """
    rng = _as_source(rng)
    checker = IncrementalChecker(g, ordering, budget)
    visited: set = set()
    total = g.n_vertices
    while True:
        if len(visited) == total:  # pragma: no cover - the rank argument forbids it
            raise RuntimeError("every vertex visited without reaching a resolving set")
        v = rng.vertex(g)
        if v in visited:
            continue
        visited.add(v)
        if not checker.would_increase_rank(v):
            continue
        checker.add(v)
        if checker.resolving():
            return list(checker.vertices)
