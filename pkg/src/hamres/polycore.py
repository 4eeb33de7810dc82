"""Sparse multivariate polynomials over the rationals.

Monomials are plain tuples of non-negative exponents, one slot per variable.
Variable ``j`` (0-based) is displayed as ``z{j+1}``.  A :class:`Polynomial`
does not carry a monomial ordering; every operation that needs one (leading
terms, division, S-polynomials, printing) takes it as an argument.
"""

from __future__ import annotations

import heapq
import re
from operator import add, neg, sub
from typing import Iterable, Mapping, Sequence

from .exactmath import Rational, to_rational

__all__ = [
    "Ordering",
    "LEX",
    "GRLEX",
    "GREVLEX",
    "get_ordering",
    "compare",
    "monomial_mul",
    "monomial_div",
    "monomial_divides",
    "lcm_monomial",
    "Polynomial",
    "poly_add",
    "poly_mul",
    "poly_scale",
    "leading",
    "reduce",
    "remainder",
    "s_polynomial",
    "parse_polynomial",
]

MAX_EXPONENT = 2**31 - 1
_KEY_CACHE_LIMIT = 1 << 20
_ZERO = Rational(0)
_ONE = Rational(1)


class Ordering:
    """A monomial ordering.

    ``sort_key(m)`` maps a monomial to a key whose *ascending* order is the
    *descending* monomial order, so ``min(terms, key=order.sort_key)`` is the
    leading monomial and ``sorted(..., key=order.sort_key)`` lists terms from
    the leading one down.
    """

    __slots__ = ("name", "_keyfunc", "_cache", "ascending_key")

    def __init__(self, name: str, keyfunc, ascending_key):
        self.name = name
        self._keyfunc = keyfunc
        self._cache: dict = {}
        # ascending order of this key is the ascending monomial order
        self.ascending_key = ascending_key

    def sort_key(self, m: tuple):
        try:
            return self._cache[m]
        except KeyError:
            if len(self._cache) > _KEY_CACHE_LIMIT:
                self._cache.clear()
            k = self._cache[m] = self._keyfunc(m)
            return k

    def compare(self, m1: tuple, m2: tuple) -> int:
        """-1, 0 or 1 as ``m1`` is less than, equal to or greater than ``m2``."""
        if len(m1) != len(m2):
            raise ValueError("monomials live in different variable spaces")
        if m1 == m2:
            return 0
        return 1 if self.sort_key(m1) < self.sort_key(m2) else -1

    def __repr__(self) -> str:
        return f"Ordering({self.name!r})"

    def __reduce__(self):
        return (get_ordering, (self.name,))


def _lex_key(m):
    return tuple(map(neg, m))


def _grlex_key(m):
    return (-sum(m), tuple(map(neg, m)))


def _grevlex_key(m):
    return (-sum(m), m[::-1])


LEX = Ordering("lex", _lex_key, tuple)
GRLEX = Ordering("grlex", _grlex_key, lambda m: (sum(m), m))
GREVLEX = Ordering("grevlex", _grevlex_key, lambda m: (sum(m), tuple(map(neg, m[::-1]))))
_ORDERINGS = {o.name: o for o in (LEX, GRLEX, GREVLEX)}


def get_ordering(order: str | Ordering) -> Ordering:
    if isinstance(order, Ordering):
        return order
    try:
        return _ORDERINGS[order]
    except KeyError:
        raise ValueError(f"unknown ordering {order!r}; choose from {sorted(_ORDERINGS)}") from None


def compare(m1: tuple, m2: tuple, order: str | Ordering) -> int:
    return get_ordering(order).compare(m1, m2)


def monomial_mul(a: tuple, b: tuple) -> tuple:
    return tuple(map(add, a, b))


def monomial_div(a: tuple, b: tuple) -> tuple:
    """``a / b``; caller guarantees ``b`` divides ``a``."""
    return tuple(map(sub, a, b))


def monomial_divides(b: tuple, a: tuple) -> bool:
    """True if ``b`` divides ``a``."""
    return all(x <= y for x, y in zip(b, a))


def lcm_monomial(a: tuple, b: tuple) -> tuple:
    if len(a) != len(b):
        raise ValueError("monomials live in different variable spaces")
    return tuple(map(max, a, b))


def _check_space(p: "Polynomial", q: "Polynomial") -> None:
    if p.nvars != q.nvars:
        raise ValueError(f"variable space mismatch: {p.nvars} vs {q.nvars} variables")


class Polynomial:
    """Immutable polynomial: a mapping from exponent tuples to nonzero rationals."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, terms: Mapping | Iterable = (), nvars: int | None = None):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict = {}
        for m, c in items:
            m = tuple(int(e) for e in m)
            if any(e < 0 for e in m):
                raise ValueError(f"negative exponent in {m}")
            if nvars is None:
                nvars = len(m)
            elif len(m) != nvars:
                raise ValueError(f"monomial {m} does not have {nvars} variables")
            c = clean.get(m, _ZERO) + to_rational(c)
            if c:
                clean[m] = c
            else:
                clean.pop(m, None)
        if nvars is None or nvars < 1:
            raise ValueError("a polynomial needs at least one variable")
        self.nvars = nvars
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, nvars: int) -> "Polynomial":
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._raw({}, nvars)

    @classmethod
    def constant(cls, c, nvars: int) -> "Polynomial":
        c = to_rational(c)
        return cls._raw({(0,) * nvars: c} if c else {}, nvars)

    @classmethod
    def one(cls, nvars: int) -> "Polynomial":
        return cls.constant(1, nvars)

    @classmethod
    def variable(cls, j: int, nvars: int) -> "Polynomial":
        """The variable with 0-based index ``j``."""
        if not 0 <= j < nvars:
            raise IndexError(f"variable index {j} out of range for {nvars} variables")
        m = [0] * nvars
        m[j] = 1
        return cls._raw({tuple(m): _ONE}, nvars)

    @classmethod
    def parse(cls, text: str, nvars: int | None = None) -> "Polynomial":
        return parse_polynomial(text, nvars)

    # -- queries ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_term(self) -> Rational:
        return self.terms.get((0,) * self.nvars, _ZERO)

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def variables(self) -> set[int]:
        return {j for m in self.terms for j, e in enumerate(m) if e}

    def coefficient(self, m: Sequence[int]) -> Rational:
        return self.terms.get(tuple(m), _ZERO)

    def leading(self, order: str | Ordering = "lex") -> tuple[tuple, Rational]:
        """``(LM, LC)``; the leading term is ``LC * LM``."""
        if not self.terms:
            raise ValueError("the zero polynomial has no leading term")
        m = min(self.terms, key=get_ordering(order).sort_key)
        return m, self.terms[m]

    def leading_monomial(self, order: str | Ordering = "lex") -> tuple:
        return self.leading(order)[0]

    def leading_coefficient(self, order: str | Ordering = "lex") -> Rational:
        return self.leading(order)[1]

    def sorted_terms(self, order: str | Ordering = "lex") -> list[tuple[tuple, Rational]]:
        key = get_ordering(order).sort_key
        return [(m, self.terms[m]) for m in sorted(self.terms, key=key)]

    def monic(self, order: str | Ordering = "lex") -> "Polynomial":
        if not self.terms:
            return self
        lc = self.leading(order)[1]
        if lc == 1:
            return self
        inv = 1 / lc
        return Polynomial._raw({m: c * inv for m, c in self.terms.items()}, self.nvars)

    def evaluate(self, point: Sequence):
        """Value at ``point``.  Exact for integer or rational input."""
        if len(point) != self.nvars:
            raise ValueError("point has the wrong number of coordinates")
        total = _ZERO
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v *= x**e
            total += v
        return total

    def evaluate_many(self, points):
        """Vectorised evaluation over the rows of an integer ``numpy`` array.

        Requires integer coefficients; returns an int64 array.
        """
        import numpy as np

        points = np.asarray(points, dtype=np.int64)
        out = np.zeros(points.shape[0], dtype=np.int64)
        for m, c in self.terms.items():
            if getattr(c, "denominator", 1) != 1:
                raise ValueError("evaluate_many needs integer coefficients")
            col = np.full(points.shape[0], int(c), dtype=np.int64)
            for j, e in enumerate(m):
                if e:
                    col *= points[:, j] ** e
            out += col
        return out

    # -- ring operations ----------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            _check_space(self, other)
            return other
        return Polynomial.constant(other, self.nvars)

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        res = dict(self.terms)
        for m, c in other.terms.items():
            v = res.get(m, _ZERO) + c
            if v:
                res[m] = v
            else:
                res.pop(m, None)
        return Polynomial._raw(res, self.nvars)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw({m: -c for m, c in self.terms.items()}, self.nvars)

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def scale(self, c) -> "Polynomial":
        c = to_rational(c)
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw({m: v * c for m, v in self.terms.items()}, self.nvars)

    def mul_term(self, mono: tuple, c) -> "Polynomial":
        """``self * c * z^mono``."""
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw(
            {monomial_mul(m, mono): v * c for m, v in self.terms.items()}, self.nvars
        )

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        _check_space(self, other)
        res: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = monomial_mul(m1, m2)
                v = res.get(m, _ZERO) + c1 * c2
                if v:
                    res[m] = v
                else:
                    res.pop(m, None)
        if res and max(max(m) for m in res) > MAX_EXPONENT:
            raise OverflowError("exponent exceeds machine width")
        return Polynomial._raw(res, self.nvars)

    def __rmul__(self, other) -> "Polynomial":
        return self.scale(other)

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power")
        out = Polynomial.one(self.nvars)
        for _ in range(n):
            out = out * self
        return out

    def substitute_variables(self, mapping: Sequence[int], nvars: int) -> "Polynomial":
        """Rename variable ``j`` to ``mapping[j]`` in a space of ``nvars`` variables."""
        res = {}
        for m, c in self.terms.items():
            new = [0] * nvars
            for j, e in enumerate(m):
                if e:
                    new[mapping[j]] += e
            res[tuple(new)] = c
        return Polynomial._raw(res, nvars)

    # -- identity -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Rational)) or hasattr(other, "denominator"):
            return self.is_constant() and self.constant_term() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def format(self, order: str | Ordering = "lex") -> str:
        return format_polynomial(self, order)

    def __str__(self) -> str:
        return format_polynomial(self, LEX)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self, LEX)!r}, nvars={self.nvars})"


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    _check_space(p, q)
    return p + q


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    _check_space(p, q)
    return p * q


def poly_scale(p: Polynomial, c) -> Polynomial:
    return p.scale(c)


def leading(p: Polynomial, order: str | Ordering) -> tuple[tuple, Rational, Polynomial]:
    """``(LM, LC, LT)`` of a nonzero polynomial, LT as a one-term polynomial."""
    lm, lc = p.leading(order)
    return lm, lc, Polynomial._raw({lm: lc}, p.nvars)


# -- division -----------------------------------------------------------------


def _prepare_divisors(divisors: Sequence[Polynomial], order: Ordering):
    prepared = []
    for p in divisors:
        if not p.terms:
            raise ZeroDivisionError("zero polynomial in divisor list")
        lm, lc = p.leading(order)
        support = tuple((j, e) for j, e in enumerate(lm) if e)
        tail = [(m, c) for m, c in p.terms.items() if m != lm]
        prepared.append((lm, lc, support, tail, support_mask(lm)))
    return prepared


_MASKS: dict = {}


def support_mask(m: tuple) -> int:
    """Bit ``j`` is set iff variable ``j`` occurs in ``m``."""
    try:
        return _MASKS[m]
    except KeyError:
        if len(_MASKS) > _KEY_CACHE_LIMIT:
            _MASKS.clear()
        mask = 0
        for j, e in enumerate(m):
            if e:
                mask |= 1 << j
        _MASKS[m] = mask
        return mask


def _divide(f: Polynomial, prepared, order: Ordering, track: bool, modulus: int | None = None):
    """Multivariate division on raw term dicts.

    With ``modulus`` set, coefficients are integers reduced modulo that prime.
    """
    key = order.sort_key
    g = dict(f.terms)
    heap = [(key(m), m) for m in g]
    heapq.heapify(heap)
    rem: dict = {}
    quots = [dict() for _ in prepared] if track else None
    while heap:
        _, m = heapq.heappop(heap)
        c = g.pop(m, None)
        if c is None:
            continue
        mm = support_mask(m)
        for idx, (lm, lc, support, tail, dmask) in enumerate(prepared):
            if dmask & mm == dmask and all(m[j] >= e for j, e in support):
                if modulus is None:
                    q = c / lc
                else:
                    q = c if lc == 1 else c * pow(lc, -1, modulus) % modulus
                shift = tuple(map(sub, m, lm))
                if track:
                    old_q = quots[idx].get(shift, 0)
                    quots[idx][shift] = old_q + q if modulus is None else (old_q + q) % modulus
                for tm, tc in tail:
                    nm = tuple(map(add, tm, shift))
                    old = g.get(nm)
                    if old is None:
                        v = -q * tc if modulus is None else -q * tc % modulus
                        if v:
                            g[nm] = v
                            heapq.heappush(heap, (key(nm), nm))
                    else:
                        v = old - q * tc if modulus is None else (old - q * tc) % modulus
                        if v:
                            g[nm] = v
                        else:
                            del g[nm]
                break
        else:
            rem[m] = c
    return quots, rem


def reduce(
    f: Polynomial, divisors: Sequence[Polynomial], order: str | Ordering
) -> tuple[list[Polynomial], Polynomial]:
    """Multivariate division of ``f`` by an ordered list of divisors.

    At each step the divisor with the lowest index whose leading monomial
    divides the current leading monomial is used.  Returns ``(quotients,
    remainder)`` with ``f == sum(q*p) + remainder`` exactly and no monomial of
    the remainder divisible by any divisor's leading monomial.
    """
    order = get_ordering(order)
    for p in divisors:
        _check_space(f, p)
    prepared = _prepare_divisors(divisors, order)
    quots, rem = _divide(f, prepared, order, track=True)
    n = f.nvars
    return [Polynomial._raw(q, n) for q in quots], Polynomial._raw(rem, n)


def remainder(f: Polynomial, divisors: Sequence[Polynomial], order: str | Ordering) -> Polynomial:
    """Remainder of :func:`reduce` without building the quotients."""
    order = get_ordering(order)
    _, rem = _divide(f, _prepare_divisors(divisors, order), order, track=False)
    return Polynomial._raw(rem, f.nvars)


def s_polynomial(p1: Polynomial, p2: Polynomial, order: str | Ordering) -> Polynomial:
    """``(z^c/LT(p1))*p1 - (z^c/LT(p2))*p2`` with ``z^c = lcm(LM(p1), LM(p2))``."""
    _check_space(p1, p2)
    order = get_ordering(order)
    lm1, lc1 = p1.leading(order)
    lm2, lc2 = p2.leading(order)
    c = lcm_monomial(lm1, lm2)
    left = p1.mul_term(monomial_div(c, lm1), 1 / lc1)
    right = p2.mul_term(monomial_div(c, lm2), 1 / lc2)
    return left - right


# -- text form ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|z(\d+)|(\^)|(\*)|([+-]))")


def _format_monomial(m: tuple) -> str:
    return "*".join(f"z{j + 1}" + (f"^{e}" if e > 1 else "") for j, e in enumerate(m) if e)


def format_polynomial(p: Polynomial, order: str | Ordering = "lex") -> str:
    """Canonical text: terms descending under ``order``, reduced fractions."""
    if not p.terms:
        return "0"
    parts = []
    for i, (m, c) in enumerate(p.sorted_terms(order)):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = _format_monomial(m)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if i == 0:
            parts.append(("-" if sign == "-" else "") + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


def parse_polynomial(text: str, nvars: int | None = None) -> Polynomial:
    """Parse the textual grammar, e.g. ``"z1^3 - z1"`` or ``"2/3*z1*z2^2 + 5"``.

    ``*`` between factors is optional.  When ``nvars`` is omitted the variable
    space is sized by the largest variable index used (at least one variable).
    """
    tokens = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        mt = _TOKEN.match(stripped, pos)
        if not mt or mt.end() == pos:
            raise ValueError(f"cannot parse polynomial {text!r} at position {pos}")
        tokens.append(mt.groups())
        pos = mt.end()
    if not tokens:
        raise ValueError("empty polynomial text")

    terms: list[tuple[dict, Rational]] = []
    i = 0
    n = len(tokens)
    while i < n:
        sign = 1
        while i < n and tokens[i][4]:
            if tokens[i][4] == "-":
                sign = -sign
            i += 1
        coeff = Rational(sign)
        powers: dict[int, int] = {}
        factors = 0
        while i < n and not tokens[i][4]:
            num, var, caret, star = tokens[i][:4]
            if star:
                if factors == 0:
                    raise ValueError(f"dangling '*' in {text!r}")
                i += 1
                continue
            if caret:
                raise ValueError(f"'^' without a variable in {text!r}")
            if num is not None:
                coeff *= to_rational(num)
                i += 1
            else:
                idx = int(var)
                if idx < 1:
                    raise ValueError("variables are numbered from z1")
                exp = 1
                i += 1
                if i < n and tokens[i][2]:
                    if i + 1 >= n or tokens[i + 1][0] is None or "/" in tokens[i + 1][0]:
                        raise ValueError(f"bad exponent in {text!r}")
                    exp = int(tokens[i + 1][0])
                    if exp > MAX_EXPONENT:
                        raise OverflowError("exponent exceeds machine width")
                    i += 2
                powers[idx - 1] = powers.get(idx - 1, 0) + exp
            factors += 1
        if factors == 0:
            raise ValueError(f"empty term in {text!r}")
        terms.append((powers, coeff))

    width = max((j + 1 for powers, _ in terms for j in powers), default=1)
    if nvars is None:
        nvars = width
    elif width > nvars:
        raise ValueError(f"{text!r} uses z{width} but the space has {nvars} variables")
    out = []
    for powers, c in terms:
        m = [0] * nvars
        for j, e in powers.items():
            m[j] = e
        out.append((tuple(m), c))
    return Polynomial(out, nvars)
