import itertools
import random

import pytest
import sympy
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from hamres.exactmath import Rational
from hamres.polycore import Polynomial

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def monomials(nvars, max_exp=3):
    return st.tuples(*[st.integers(0, max_exp) for _ in range(nvars)])


def polynomials(nvars, max_terms=4, max_exp=3, coeff=5):
    """Small polynomials with integer coefficients in ``nvars`` variables."""
    term = st.tuples(monomials(nvars, max_exp), st.integers(-coeff, coeff).filter(bool))
    return st.lists(term, min_size=1, max_size=max_terms).map(
        lambda ts: Polynomial(ts, nvars)
    ).filter(lambda p: not p.is_zero())


def random_polys(rng, nvars, count, max_deg=3, max_terms=4, coeff=3):
    out = []
    while len(out) < count:
        terms = []
        for _ in range(rng.randint(1, max_terms)):
            deg = rng.randint(0, max_deg)
            m = [0] * nvars
            for _ in range(deg):
                m[rng.randrange(nvars)] += 1
            terms.append((tuple(m), rng.choice([c for c in range(-coeff, coeff + 1) if c])))
        p = Polynomial(terms, nvars)
        if p:
            out.append(p)
    return out


# -- sympy oracle -------------------------------------------------------------------

def sympy_symbols(nvars):
    return sympy.symbols(" ".join(f"z{j + 1}" for j in range(nvars)))


def to_sympy(p, syms):
    return sum(
        (sympy.Rational(int(c.numerator), int(c.denominator))
         * sympy.Mul(*[s**e for s, e in zip(syms, m)])
         for m, c in p.terms.items()),
        sympy.Integer(0),
    )


def from_sympy(expr, syms):
    poly = sympy.Poly(expr, *syms)
    terms = {m: Rational(int(c.p), int(c.q)) for m, c in poly.terms()}
    return Polynomial(terms, len(syms))


SYMPY_ORDER = {"lex": "lex", "grlex": "grlex", "grevlex": "grevlex"}


def sympy_reduced_basis(polys, order):
    nvars = polys[0].nvars
    syms = sympy_symbols(nvars)
    syms = syms if isinstance(syms, tuple) else (syms,)
    G = sympy.groebner([to_sympy(p, syms) for p in polys], *syms, order=SYMPY_ORDER[order], domain=sympy.QQ)
    return {from_sympy(g, syms) for g in G.exprs}


@pytest.fixture
def rng():
    return random.Random(20240613)


def all_subsets(items):
    for size in range(1, len(items) + 1):
        yield from itertools.combinations(items, size)
