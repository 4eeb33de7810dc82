"""Hamming graphs, one-hot encodings and the brute-force resolvability oracle.

Vertices are tuples of integer symbols in ``range(a)``.  Text form: a string
of digits when ``a <= 10`` (``"0120"``), comma-separated integers otherwise
(``"3,17,0"``).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from .verdict import EnumerationBudgetExceeded, ResolvabilityVerdict

__all__ = [
    "HammingGraph",
    "OneHot",
    "hamming_distance",
    "one_hot",
    "distance_vector",
    "brute_force_is_resolving",
    "metric_dimension_exhaustive",
    "embed",
    "read_vertex_file",
    "parse_vertex_list",
]

Vertex = tuple


@dataclass(frozen=True)
class HammingGraph:
    """The graph ``H_{k,a}`` on all length-``k`` words over ``a`` symbols."""

    k: int
    a: int

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise ValueError(f"k must be a positive integer, got {self.k!r}")
        if int(self.a) != self.a or self.a < 2:
            raise ValueError(f"a must be an integer >= 2, got {self.a!r}")

    @property
    def n_vertices(self) -> int:
        return self.a**self.k

    @property
    def n_variables(self) -> int:
        """Length of a vectorised one-hot encoding."""
        return self.a * self.k

    def vertices(self) -> Iterator[Vertex]:
        """All vertices in lexicographic order."""
        return itertools.product(range(self.a), repeat=self.k)

    def __contains__(self, v) -> bool:
        try:
            self.validate_vertex(v)
        except (ValueError, TypeError):
            return False
        return True

    def validate_vertex(self, v: Sequence[int]) -> Vertex:
        v = tuple(int(s) for s in v)
        if len(v) != self.k:
            raise ValueError(f"vertex {v} has length {len(v)}, expected {self.k}")
        if any(not 0 <= s < self.a for s in v):
            raise ValueError(f"vertex {v} has a symbol outside 0..{self.a - 1}")
        return v

    def parse_vertex(self, text: str) -> Vertex:
        text = text.strip()
        if self.a <= 10:
            if not text.isdigit():
                raise ValueError(f"malformed vertex {text!r}")
            return self.validate_vertex(int(ch) for ch in text)
        try:
            symbols = [int(tok) for tok in text.split(",")]
        except ValueError:
            raise ValueError(f"malformed vertex {text!r}") from None
        return self.validate_vertex(symbols)

    def format_vertex(self, v: Sequence[int]) -> str:
        if self.a <= 10:
            return "".join(str(s) for s in v)
        return ",".join(str(s) for s in v)

    def random_vertex(self, rng: np.random.RandomState) -> Vertex:
        return tuple(int(s) for s in rng.randint(0, self.a, size=self.k))


@dataclass(frozen=True)
class OneHot:
    """``matrix[i][j] == 1`` iff symbol ``i`` sits at position ``j``.

    ``vector`` is the column-wise vectorisation: position 0's ``a`` slots
    first, symbol index varying fastest.
    """

    matrix: tuple
    vector: tuple

    def decode(self) -> Vertex:
        a = len(self.matrix)
        k = len(self.matrix[0])
        return tuple(next(i for i in range(a) if self.matrix[i][j]) for j in range(k))


def hamming_distance(x: Sequence[int], y: Sequence[int]) -> int:
    if len(x) != len(y):
        raise ValueError("vertices of different lengths")
    return sum(1 for s, t in zip(x, y) if s != t)


def one_hot(v: Sequence[int], a: int) -> OneHot:
    k = len(v)
    if any(not 0 <= s < a for s in v):
        raise ValueError(f"vertex {tuple(v)} has a symbol outside 0..{a - 1}")
    matrix = tuple(tuple(int(v[j] == i) for j in range(k)) for i in range(a))
    vector = tuple(int(v[j] == i) for j in range(k) for i in range(a))
    return OneHot(matrix, vector)


def distance_vector(v: Sequence[int], refs: Sequence[Sequence[int]]) -> tuple:
    return tuple(hamming_distance(v, r) for r in refs)


def _check_subset(g: HammingGraph, r: Iterable) -> list[Vertex]:
    return [g.validate_vertex(v) for v in r]


def brute_force_is_resolving(g: HammingGraph, r: Iterable[Sequence[int]]) -> ResolvabilityVerdict:
    """Compare the distance vectors of every pair of vertices.

    Quadratic in the number of vertices.  When the set does not resolve, the
    witness is the lexicographically smallest pair ``(x, y)``, ``x < y``, with
    equal distance vectors.
    """
    refs = _check_subset(g, r)
    verts = list(g.vertices())
    vecs = [distance_vector(v, refs) for v in verts]
    n = len(vecs)
    for i in range(n):
        vi = vecs[i]
        for j in range(i + 1, n):
            if vecs[j] == vi:
                return ResolvabilityVerdict(False, "bruteforce", (verts[i], verts[j]))
    return ResolvabilityVerdict(True, "bruteforce")


def metric_dimension_exhaustive(
    g: HammingGraph, max_size: int, budget: int = 10**6
) -> tuple[int, tuple] | None:
    """Smallest resolving set size up to ``max_size``, with a witness set.

    Returns ``None`` if no subset of size ``<= max_size`` resolves.  Raises
    :class:`EnumerationBudgetExceeded` if the subsets to examine outnumber
    ``budget``.
    """
    n = g.n_vertices
    total = sum(math.comb(n, s) for s in range(1, min(max_size, n) + 1))
    if total > budget:
        raise EnumerationBudgetExceeded(
            f"{total} subsets of H_{{{g.k},{g.a}}} exceed the budget of {budget}"
        )
    verts = list(g.vertices())
    for size in range(1, min(max_size, n) + 1):
        for subset in itertools.combinations(verts, size):
            if brute_force_is_resolving(g, subset).resolving:
                return size, subset
    return None


def embed(
    g: HammingGraph, r: Sequence[Sequence[int]], inputs: Iterable[Sequence[int]]
) -> list[tuple]:
    """Distance vectors of ``inputs`` with respect to the reference list ``r``."""
    refs = _check_subset(g, r)
    return [distance_vector(g.validate_vertex(v), refs) for v in inputs]


def parse_vertex_list(g: HammingGraph, text: str) -> list[Vertex]:
    """Parse a list of vertices: comma separated for ``a <= 10``, ``;`` otherwise."""
    sep = "," if g.a <= 10 else ";"
    items = [t for t in (s.strip() for s in text.split(sep)) if t]
    if not items:
        raise ValueError("empty vertex list")
    return [g.parse_vertex(t) for t in items]


def read_vertex_file(path: str | Path, g: HammingGraph) -> list[Vertex]:
    """One vertex per line; ``#`` starts a comment, blank lines are skipped."""
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                out.append(g.parse_vertex(line))
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
    return out
