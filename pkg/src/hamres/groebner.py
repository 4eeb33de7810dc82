"""Buchberger's algorithm, basis reduction and incremental extension.

The pair queue uses the normal selection strategy (the pair whose lcm is
smallest in the monomial ordering goes first) together with Buchberger's two
classical criteria: pairs with coprime leading monomials are skipped, and so
is any pair whose lcm is divisible by a third leading monomial whose own pairs
with both members have already been treated.

Every routine works over the rationals by default.  Passing a prime
``modulus`` runs the same computation over the field with that many elements;
polynomials then carry integer coefficients in ``range(modulus)``.
"""

from __future__ import annotations

import heapq
import itertools
import logging
from typing import Iterable, Sequence

from .exactmath import Rational, to_rational
from .polycore import (
    Ordering,
    Polynomial,
    _divide,
    _prepare_divisors,
    get_ordering,
    lcm_monomial,
    monomial_div,
    s_polynomial,
)
from .verdict import BudgetExceeded

__all__ = [
    "DEFAULT_STEP_BUDGET",
    "GroebnerBudgetExceeded",
    "GroebnerBasis",
    "buchberger",
    "reduce_basis",
    "groebner",
    "extend_basis",
    "is_trivial",
    "shifted_reductions",
    "interreduce",
    "to_modular",
]

logger = logging.getLogger(__name__)

DEFAULT_STEP_BUDGET = 10**6


class GroebnerBudgetExceeded(BudgetExceeded):
    """Raised when a computation needs more S-pair reductions than allowed."""


def _is_modular(p: Polynomial) -> bool:
    return all(isinstance(c, int) for c in p.terms.values())


def to_modular(p: Polynomial, modulus: int) -> Polynomial:
    """Image of a rational polynomial modulo a prime.

    Raises ``ZeroDivisionError`` if a denominator is divisible by ``modulus``.
    """
    out = {}
    for m, c in p.terms.items():
        v = _mod_scalar(c, modulus)
        if v:
            out[m] = v
    return Polynomial._raw(out, p.nvars)


def _mod_scalar(c, modulus: int) -> int:
    if type(c) is int:
        return c % modulus
    c = to_rational(c)
    num, den = int(c.numerator), int(c.denominator)
    if den % modulus == 0:
        raise ZeroDivisionError(f"denominator {den} vanishes modulo {modulus}")
    return num * pow(den, -1, modulus) % modulus


def _coerce(polys: Iterable[Polynomial], modulus: int | None) -> list[Polynomial]:
    polys = [p for p in polys if p]
    if modulus is None:
        return polys
    return [q for q in (to_modular(p, modulus) for p in polys) if q]


def _one(nvars: int, modulus: int | None) -> Polynomial:
    return Polynomial._raw({(0,) * nvars: Rational(1) if modulus is None else 1}, nvars)


def _monic(p: Polynomial, order: Ordering, modulus: int | None) -> Polynomial:
    if modulus is None:
        return p.monic(order)
    lc = p.leading(order)[1]
    if lc == 1:
        return p
    inv = pow(lc, -1, modulus)
    return Polynomial._raw({m: c * inv % modulus for m, c in p.terms.items()}, p.nvars)


def _spoly(p1: Polynomial, p2: Polynomial, order: Ordering, modulus: int | None) -> Polynomial:
    if modulus is None:
        return s_polynomial(p1, p2, order)
    lm1, lc1 = p1.leading(order)
    lm2, lc2 = p2.leading(order)
    lcm = lcm_monomial(lm1, lm2)
    out: dict = {}
    for p, lm, lc, sign in ((p1, lm1, lc1, 1), (p2, lm2, lc2, -1)):
        shift = monomial_div(lcm, lm)
        f = sign * pow(lc, -1, modulus)
        for m, c in p.terms.items():
            nm = tuple(a + b for a, b in zip(m, shift))
            v = (out.get(nm, 0) + f * c) % modulus
            if v:
                out[nm] = v
            else:
                out.pop(nm, None)
    return Polynomial._raw(out, p1.nvars)


def _remainder(f: Polynomial, prepared, order: Ordering, modulus: int | None) -> Polynomial:
    _, rem = _divide(f, prepared, order, track=False, modulus=modulus)
    return Polynomial._raw(rem, f.nvars)


class GroebnerBasis:
    """A Gröbner basis together with its ordering and coefficient field.

    Elements are stored sorted by leading monomial, largest first.  Two bases
    compare equal when they hold the same set of polynomials for the same
    ordering and field.
    """

    __slots__ = ("polys", "order", "reduced", "modulus", "_seed")

    def __init__(
        self,
        polys: Iterable[Polynomial],
        order: str | Ordering,
        reduced: bool = False,
        modulus: int | None = None,
    ):
        self.order = get_ordering(order)
        polys = [p for p in polys if p]
        if not polys:
            raise ValueError("a Gröbner basis needs at least one nonzero polynomial")
        key = self.order.sort_key
        self.polys = tuple(sorted(polys, key=lambda p: key(p.leading(self.order)[0])))
        self.reduced = reduced
        self.modulus = modulus
        self._seed = None

    @property
    def nvars(self) -> int:
        return self.polys[0].nvars

    def __iter__(self):
        return iter(self.polys)

    def __len__(self) -> int:
        return len(self.polys)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return (
            self.order.name == other.order.name
            and self.modulus == other.modulus
            and set(self.polys) == set(other.polys)
        )

    def __hash__(self) -> int:
        return hash((self.order.name, self.modulus, frozenset(self.polys)))

    def __repr__(self) -> str:
        body = ", ".join(p.format(self.order) for p in self.polys)
        extra = "" if self.modulus is None else f", modulus={self.modulus}"
        return f"GroebnerBasis([{body}], order={self.order.name!r}, reduced={self.reduced}{extra})"

    @property
    def is_trivial(self) -> bool:
        """True when the basis is ``{1}`` (up to a nonzero constant if unreduced)."""
        return any(p.is_constant() for p in self.polys)

    def leading_monomials(self) -> list[tuple]:
        return [p.leading(self.order)[0] for p in self.polys]

    def reduce(self, f: Polynomial) -> Polynomial:
        """Normal form of ``f``; independent of element order for a Gröbner basis."""
        if self.modulus is not None and not _is_modular(f):
            f = to_modular(f, self.modulus)
        return _remainder(f, _prepare_divisors(self.polys, self.order), self.order, self.modulus)

    def contains(self, f: Polynomial) -> bool:
        """Ideal membership test."""
        return not self.reduce(f)

    def satisfies_criterion(self, pairs: Iterable[tuple[int, int]] | None = None) -> bool:
        """Check that S-polynomials of the given pairs (default: all) reduce to zero."""
        if pairs is None:
            pairs = itertools.combinations(range(len(self.polys)), 2)
        prepared = _prepare_divisors(self.polys, self.order)
        for i, j in pairs:
            s = _spoly(self.polys[i], self.polys[j], self.order, self.modulus)
            if s and _remainder(s, prepared, self.order, self.modulus):
                return False
        return True

    def dump(self) -> str:
        """One polynomial per line, leading monomials descending."""
        return "\n".join(p.format(self.order) for p in self.polys) + "\n"


def interreduce(
    polys: Sequence[Polynomial], order: str | Ordering, modulus: int | None = None
) -> list[Polynomial]:
    """Reduce every polynomial by all the others until nothing changes.

    Zero results are dropped and survivors are made monic.  The ideal is
    unchanged; the result need not be a Gröbner basis.
    """
    order = get_ordering(order)
    work = [_monic(p, order, modulus) for p in polys if p]
    changed = True
    while changed:
        changed = False
        for idx in range(len(work)):
            p = work[idx]
            if p is None:
                continue
            others = [q for k, q in enumerate(work) if k != idx and q is not None]
            if not others:
                break
            r = _remainder(p, _prepare_divisors(others, order), order, modulus)
            if r != p:
                changed = True
                work[idx] = _monic(r, order, modulus) if r else None
        work = [p for p in work if p is not None]
    return work


class _Engine:
    """Mutable state of one Buchberger completion.

    Elements whose leading monomial is divisible by a newer one stop acting as
    reducers but keep their queued pairs; pairs with elements added after that
    are never formed.  Active elements are kept tail-reduced against each
    other, which shortens later reductions and curbs rational coefficient
    growth.
    """

    def __init__(self, order: Ordering, budget: int, nvars: int, modulus: int | None):
        self.order = order
        self.nvars = nvars
        self.budget = budget
        self.modulus = modulus
        self.steps = 0
        self.basis: list[Polynomial] = []
        self.lms: list[tuple] = []
        self.supports: list[tuple] = []
        self.prepared: list = []
        self.active: list[int] = []
        # pairs already accounted for: reduced, skipped, or coprime; pairs
        # among the first ``n_seed`` elements come from a Gröbner basis
        self.done: set[tuple[int, int]] = set()
        self.n_seed = 0
        self.heap: list = []
        self.trivial = False

    def seed(self, g: GroebnerBasis) -> None:
        """Add the elements of a Gröbner basis without pairing them.

        The per-element data is cached on ``g`` since the same basis is
        typically extended many times.
        """
        if g._seed is None or g._seed[0] is not self.order:
            fresh = _Engine(self.order, self.budget, self.nvars, self.modulus)
            for p in g.polys:
                fresh._append(_monic(p, self.order, self.modulus), make_pairs=False)
            g._seed = (
                self.order,
                tuple(fresh.basis),
                tuple(fresh.lms),
                tuple(fresh.supports),
                tuple(fresh.prepared),
            )
        _, basis, lms, supports, prepared = g._seed
        self.basis = list(basis)
        self.lms = list(lms)
        self.supports = list(supports)
        self.prepared = list(prepared)
        self.active = list(range(len(basis)))
        self.n_seed = len(basis)

    def _append(self, p: Polynomial, make_pairs: bool = True) -> int:
        order = self.order
        idx = len(self.basis)
        lm = p.leading(order)[0]
        self.basis.append(p)
        self.lms.append(lm)
        self.supports.append(tuple(j for j, e in enumerate(lm) if e))
        self.prepared.append(_prepare_divisors([p], order)[0])
        if make_pairs:
            key = order.ascending_key
            for i in self.active:
                other = self.lms[i]
                if not any(lm[j] and other[j] for j in self.supports[i]):
                    self.done.add((i, idx))  # coprime leading monomials
                    continue
                lcm = lcm_monomial(other, lm)
                heapq.heappush(self.heap, (key(lcm), i, idx, lcm))
        self.active.append(idx)
        return idx

    def _reducers(self) -> list:
        return [self.prepared[i] for i in self.active]

    def _insert(self, h: Polynomial) -> None:
        order = self.order
        lm_h = h.leading(order)[0]
        sup_h = tuple((j, e) for j, e in enumerate(lm_h) if e)
        idx = self._append(h)
        self.active = [
            i for i in self.active
            if i == idx or not all(self.lms[i][j] >= e for j, e in sup_h)
        ]
        for i in self.active:
            if i == idx:
                continue
            p = self.basis[i]
            if not any(all(m[j] >= e for j, e in sup_h) for m in p.terms):
                continue
            lm = self.lms[i]
            tail = Polynomial._raw({m: c for m, c in p.terms.items() if m != lm}, p.nvars)
            _, rem = _divide(tail, self._reducers(), order, track=False, modulus=self.modulus)
            rem[lm] = p.terms[lm]
            q = Polynomial._raw(rem, p.nvars)
            self.basis[i] = q
            self.prepared[i] = _prepare_divisors([q], order)[0]

    def add(self, f: Polynomial) -> None:
        """Reduce ``f`` by the current basis and insert the remainder if nonzero."""
        if self.trivial or not f:
            return
        r = _remainder(f, self._reducers(), self.order, self.modulus) if self.active else f
        if not r:
            return
        if r.is_constant():
            self.trivial = True
            return
        self._insert(_monic(r, self.order, self.modulus))

    def _chain_skip(self, i: int, j: int, lcm: tuple) -> bool:
        done, n_seed = self.done, self.n_seed
        for l in self.active:
            if l == i or l == j:
                continue
            if all(lcm[t] >= self.lms[l][t] for t in self.supports[l]):
                a, b = (l, i) if l < i else (i, l)
                c, d = (l, j) if l < j else (j, l)
                if (b < n_seed or (a, b) in done) and (d < n_seed or (c, d) in done):
                    return True
        return False

    def run(self) -> None:
        while self.heap and not self.trivial:
            _, i, j, lcm = heapq.heappop(self.heap)
            self.done.add((i, j))
            if self._chain_skip(i, j, lcm):
                continue
            self.steps += 1
            if self.steps > self.budget:
                raise GroebnerBudgetExceeded(
                    f"more than {self.budget} S-pair reductions needed"
                )
            self.add(_spoly(self.basis[i], self.basis[j], self.order, self.modulus))
        logger.debug("buchberger: %d reductions, %d elements", self.steps, len(self.active))

    def result(self) -> list[Polynomial]:
        if self.trivial:
            return [_one(self.nvars, self.modulus)]
        return [self.basis[i] for i in self.active]


def buchberger(
    generators: Iterable[Polynomial],
    order: str | Ordering = "grevlex",
    budget: int = DEFAULT_STEP_BUDGET,
    pre_interreduce: bool = True,
    modulus: int | None = None,
) -> GroebnerBasis:
    """A (not necessarily reduced) Gröbner basis of the ideal of ``generators``.

    Zero generators are dropped.  Raises :class:`GroebnerBudgetExceeded` if more
    than ``budget`` S-pairs have to be reduced.
    """
    order = get_ordering(order)
    gens = [g for g in generators if g]
    if not gens:
        raise ValueError("buchberger needs at least one nonzero generator")
    nvars = gens[0].nvars
    if any(g.nvars != nvars for g in gens):
        raise ValueError("generators live in different variable spaces")
    gens = _coerce(gens, modulus)
    if not gens:
        raise ValueError("every generator vanishes modulo the prime")
    if any(g.is_constant() for g in gens):
        return GroebnerBasis([_one(nvars, modulus)], order, reduced=True, modulus=modulus)
    if pre_interreduce:
        gens = interreduce(gens, order, modulus)
    engine = _Engine(order, budget, nvars, modulus)
    for g in gens:
        engine.add(g)
    engine.run()
    return GroebnerBasis(engine.result(), order, reduced=engine.trivial, modulus=modulus)


def reduce_basis(g: GroebnerBasis) -> GroebnerBasis:
    """The unique reduced Gröbner basis of the same ideal.

    Every element is made monic, then each element in turn is replaced by its
    remainder modulo the others, or dropped if that remainder is zero.
    """
    order, modulus = g.order, g.modulus
    if g.reduced:
        return g
    if g.is_trivial:
        return GroebnerBasis([_one(g.nvars, modulus)], order, reduced=True, modulus=modulus)
    work = [_monic(p, order, modulus) for p in g.polys]
    prepared = _prepare_divisors(work, order)
    idx = 0
    while idx < len(work):
        others = prepared[:idx] + prepared[idx + 1 :]
        if not others:
            break
        r = _remainder(work[idx], others, order, modulus)
        if r:
            if r is not work[idx] and r != work[idx]:
                work[idx] = _monic(r, order, modulus)
                prepared[idx] = _prepare_divisors([work[idx]], order)[0]
            idx += 1
        else:
            del work[idx]
            del prepared[idx]
    return GroebnerBasis(work, order, reduced=True, modulus=modulus)


def groebner(
    generators: Iterable[Polynomial],
    order: str | Ordering = "grevlex",
    budget: int = DEFAULT_STEP_BUDGET,
    modulus: int | None = None,
) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by ``generators``."""
    return reduce_basis(buchberger(generators, order, budget, modulus=modulus))


def extend_basis(
    g: GroebnerBasis,
    new_polys: Iterable[Polynomial],
    budget: int = DEFAULT_STEP_BUDGET,
) -> GroebnerBasis:
    """Reduced Gröbner basis of ``g`` plus ``new_polys``.

    ``g`` must already be a Gröbner basis, so only S-pairs that involve a new
    element are ever queued.  Rational inputs are mapped into the field of
    ``g`` when it is a prime field.
    """
    order, modulus, nvars = g.order, g.modulus, g.nvars
    new = list(new_polys)
    if any(p.nvars != nvars for p in new):
        raise ValueError("new polynomials live in a different variable space")
    new = _coerce(new, modulus)
    if g.is_trivial or not new:
        return reduce_basis(g)
    engine = _Engine(order, budget, nvars, modulus)
    engine.seed(g)
    for p in new:
        engine.add(p)
    engine.run()
    return reduce_basis(
        GroebnerBasis(engine.result(), order, reduced=engine.trivial, modulus=modulus)
    )


def is_trivial(g: GroebnerBasis) -> bool:
    """Weak Nullstellensatz test: the system has no common root iff the reduced basis is {1}."""
    if not g.reduced:
        raise ValueError("triviality is only decided on reduced bases")
    return len(g.polys) == 1 and g.polys[0].is_constant()


def shifted_reductions(
    g: GroebnerBasis, f: Polynomial, shifts: Sequence
) -> list[Polynomial]:
    """Normal forms of ``f - c`` for every constant ``c`` in ``shifts``.

    Uses a single reduction of ``f``: modulo a reduced basis other than {1}
    constants are irreducible, so ``f - c`` reduces to ``r - c``.
    """
    if not g.reduced:
        raise ValueError("shifted reductions need a reduced basis")
    if is_trivial(g):
        raise ValueError("shifted reductions are undefined modulo the unit ideal")
    if f.constant_term() != 0:
        raise ValueError("f must not have a constant term")
    r = g.reduce(f)
    if g.modulus is None:
        return [r - c for c in shifts]
    zero = (0,) * r.nvars
    out = []
    for c in shifts:
        terms = dict(r.terms)
        v = (terms.get(zero, 0) - _mod_scalar(c, g.modulus)) % g.modulus
        if v:
            terms[zero] = v
        else:
            terms.pop(zero, None)
        out.append(Polynomial._raw(terms, r.nvars))
    return out
