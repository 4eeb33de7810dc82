"""Input checks shared by the estimator layer and the command line."""

from __future__ import annotations

import numbers
from typing import Sequence

import numpy as np

from .hamgraph import HammingGraph
from .setops import RandomSource

__all__ = ["check_random_state", "check_alphabet", "check_kmers", "check_graph"]


def check_random_state(seed) -> RandomSource:
    """Turn ``None``, a 64-bit integer or a :class:`RandomSource` into a source.

    ``None`` means seed 0 so that runs are reproducible by default.
    """
    if seed is None:
        return RandomSource(0)
    if isinstance(seed, RandomSource):
        return seed
    if isinstance(seed, numbers.Integral) and not isinstance(seed, bool):
        return RandomSource(int(seed))
    raise ValueError(f"{seed!r} cannot be used to seed a RandomSource")


def check_alphabet(alphabet) -> tuple[int, dict | None]:
    """Alphabet size and symbol table.

    An integer ``a`` means symbols ``0..a-1``; a string or sequence lists the
    symbols in order (``"ACGT"`` maps ``A`` to 0).  The table is ``None`` for
    integer alphabets.
    """
    if isinstance(alphabet, numbers.Integral) and not isinstance(alphabet, bool):
        a = int(alphabet)
        if a < 2:
            raise ValueError(f"alphabet size must be >= 2, got {a}")
        return a, None
    try:
        symbols = list(alphabet)
    except TypeError:
        raise TypeError(f"alphabet must be a size or a sequence of symbols, got {alphabet!r}") from None
    if len(symbols) < 2:
        raise ValueError("an alphabet needs at least two symbols")
    if len(set(symbols)) != len(symbols):
        raise ValueError(f"alphabet has repeated symbols: {alphabet!r}")
    return len(symbols), {s: i for i, s in enumerate(symbols)}


def check_kmers(X, alphabet, k: int | None = None) -> np.ndarray:
    """Encode words as an integer array of shape ``(n_samples, k)``.

    Words are strings (one character per position, symbols from ``alphabet``)
    or integer sequences.  All words must share one length, equal to ``k``
    when given.
    """
    a, table = check_alphabet(alphabet)
    if isinstance(X, str):
        raise ValueError("expected a sequence of words, got a single string")
    if isinstance(X, np.ndarray) and X.dtype.kind in "iu":
        arr = np.array(X, dtype=np.int64, copy=True)
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-d array of symbols, got shape {arr.shape}")
    else:
        rows = [_encode_word(w, table) for w in X]
        if not rows:
            raise ValueError("no words given")
        lengths = {len(r) for r in rows}
        if len(lengths) != 1:
            raise ValueError(f"words have different lengths: {sorted(lengths)}")
        arr = np.array(rows, dtype=np.int64)
    if arr.shape[0] == 0:
        raise ValueError("no words given")
    if arr.shape[1] == 0:
        raise ValueError("words must have at least one position")
    if k is not None and arr.shape[1] != k:
        raise ValueError(f"expected words of length {k}, got {arr.shape[1]}")
    if arr.min() < 0 or arr.max() >= a:
        raise ValueError(f"symbols must lie in 0..{a - 1}")
    return arr


def _encode_word(w, table: dict | None) -> list[int]:
    if isinstance(w, str):
        if table is None:
            try:
                return [int(ch) for ch in w]
            except ValueError:
                raise ValueError(f"word {w!r} is not made of digit symbols") from None
        try:
            return [table[ch] for ch in w]
        except KeyError as exc:
            raise ValueError(f"symbol {exc.args[0]!r} in {w!r} is not in the alphabet") from None
    if table is not None:
        return [table[s] if s in table else _as_int(s) for s in w]
    return [_as_int(s) for s in w]


def _as_int(s) -> int:
    if isinstance(s, numbers.Integral) and not isinstance(s, bool):
        return int(s)
    raise ValueError(f"symbol {s!r} is not an integer")


def check_graph(k, a) -> HammingGraph:
    """Validate ``k`` and ``a`` and build the graph."""
    for name, v in (("k", k), ("a", a)):
        if not isinstance(v, numbers.Integral) or isinstance(v, bool):
            raise ValueError(f"{name} must be an integer, got {v!r}")
    return HammingGraph(int(k), int(a))


def as_vertices(arr: np.ndarray) -> list[tuple]:
    return [tuple(int(x) for x in row) for row in arr]


def unique_vertices(vertices: Sequence[tuple]) -> list[tuple]:
    return list(dict.fromkeys(vertices))
