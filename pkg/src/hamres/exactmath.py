"""Exact rational scalars and small dense matrices over the rationals."""

from __future__ import annotations

from typing import Iterable, Sequence

try:
    from gmpy2 import mpq as Rational
except ImportError:  # pragma: no cover
    from fractions import Fraction as Rational

__all__ = ["Rational", "RationalMatrix", "rref", "rank", "independent_rows", "to_rational"]


def to_rational(x) -> Rational:
    """Coerce an int, Fraction, mpq or ``"p/q"`` string to a canonical rational."""
    if isinstance(x, str):
        x = x.strip()
        if "/" in x:
            num, den = x.split("/")
            return Rational(int(num), int(den))
        return Rational(int(x))
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact coefficients")
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return Rational(int(x.numerator), int(x.denominator))
    return Rational(x)


class RationalMatrix:
    """Immutable row-major matrix of rationals."""

    __slots__ = ("_rows", "shape")

    def __init__(self, rows: Iterable[Iterable] = (), cols: int | None = None):
        data = tuple(tuple(to_rational(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise ValueError("ragged rows")
            if cols is not None and cols != width:
                raise ValueError(f"expected {cols} columns, got {width}")
        else:
            width = cols or 0
        self._rows = data
        self.shape = (len(data), width)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @property
    def rows(self) -> tuple:
        return self._rows

    def row(self, i: int) -> tuple:
        return self._rows[i]

    def __getitem__(self, idx):
        i, j = idx
        return self._rows[i][j]

    def __len__(self) -> int:
        return self.shape[0]

    def __iter__(self):
        return iter(self._rows)

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalMatrix):
            return self.shape == other.shape and self._rows == other._rows
        try:
            other = RationalMatrix(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.shape, self._rows))

    def transpose(self) -> "RationalMatrix":
        n, m = self.shape
        return RationalMatrix([[self._rows[i][j] for i in range(n)] for j in range(m)], cols=n)

    def select_rows(self, indices: Sequence[int]) -> "RationalMatrix":
        return RationalMatrix([self._rows[i] for i in indices], cols=self.shape[1])

    def matvec(self, v: Sequence) -> tuple:
        if len(v) != self.shape[1]:
            raise ValueError("dimension mismatch")
        return tuple(sum((a * b for a, b in zip(row, v)), Rational(0)) for row in self._rows)

    def tolist(self) -> list:
        return [list(r) for r in self._rows]

    def __repr__(self) -> str:
        return f"RationalMatrix({[[str(x) for x in r] for r in self._rows]})"

    def __str__(self) -> str:
        cells = [[str(x) for x in r] for r in self._rows]
        if not cells:
            return ""
        width = max(len(c) for r in cells for c in r)
        return "\n".join(" ".join(c.rjust(width) for c in r) for r in cells)


def rref(m: RationalMatrix) -> tuple[RationalMatrix, list[int]]:
    """Reduced row echelon form and the pivot column indices.

    Pivots are taken as the first nonzero entry in column order; the zero rows
    of the result are kept at the bottom so the shape is preserved.
    """
    n, ncols = m.shape
    work = [list(r) for r in m.rows]
    pivots: list[int] = []
    prow = 0
    for col in range(ncols):
        if prow == n:
            break
        src = next((i for i in range(prow, n) if work[i][col] != 0), None)
        if src is None:
            continue
        work[prow], work[src] = work[src], work[prow]
        pivot_row = work[prow]
        inv = 1 / pivot_row[col]
        for j in range(col, ncols):
            pivot_row[j] *= inv
        for i in range(n):
            if i == prow:
                continue
            factor = work[i][col]
            if factor != 0:
                row = work[i]
                for j in range(col, ncols):
                    if pivot_row[j] != 0:
                        row[j] -= factor * pivot_row[j]
        pivots.append(col)
        prow += 1
    return RationalMatrix(work, cols=ncols), pivots


def rank(m: RationalMatrix) -> int:
    return len(rref(m)[1])


def independent_rows(rows: Sequence[Sequence]) -> list[int]:
    """Indices of a maximal linearly independent subset, chosen greedily in order.

    A row is kept iff it is not in the span of the rows kept before it.
    """
    basis: list[tuple[int, list]] = []  # (pivot column, row normalized at pivot)
    keep = []
    for idx, row in enumerate(rows):
        v = [to_rational(x) for x in row]
        for col, b in basis:
            c = v[col]
            if c != 0:
                for j in range(len(v)):
                    if b[j] != 0:
                        v[j] -= c * b[j]
        col = next((j for j, x in enumerate(v) if x != 0), None)
        if col is None:
            continue
        inv = 1 / v[col]
        basis.append((col, [x * inv for x in v]))
        keep.append(idx)
    return keep
