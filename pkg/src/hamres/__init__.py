"""Resolving sets of Hamming graphs decided through Gröbner bases.

The core modules are usable on their own:

* :mod:`hamres.exactmath` exact rationals, matrices and row reduction
* :mod:`hamres.polycore` sparse polynomials and monomial orderings
* :mod:`hamres.groebner` Buchberger's algorithm and reduced bases
* :mod:`hamres.hamgraph` Hamming graphs, one-hot encodings, brute-force oracle
* :mod:`hamres.resolver` the algebraic resolvability test and its fast paths
* :mod:`hamres.setops` reducing and generating resolving sets

:class:`ResolvingSetEmbedder` wraps them as a scikit-learn transformer.
"""

from .estimator import ResolvingSetEmbedder
from .exactmath import Rational, RationalMatrix, rank, rref
from .groebner import GroebnerBasis, GroebnerBudgetExceeded, buchberger, groebner, reduce_basis
from .hamgraph import (
    HammingGraph,
    brute_force_is_resolving,
    embed,
    hamming_distance,
    metric_dimension_exhaustive,
    one_hot,
)
from .polycore import Polynomial, parse_polynomial
from .resolver import (
    build_system,
    check_resolving_enumeration,
    check_resolving_groebner,
    check_resolving_hypercube,
)
from .setops import RandomSource, generate_resolving, reduce_generative, reduce_top_down
from .verdict import (
    BudgetExceeded,
    EnumerationBudgetExceeded,
    NotResolvingError,
    ResolvabilityVerdict,
)

__version__ = "0.1.0"

__all__ = [
    "ResolvingSetEmbedder",
    "Rational",
    "RationalMatrix",
    "rank",
    "rref",
    "GroebnerBasis",
    "GroebnerBudgetExceeded",
    "buchberger",
    "groebner",
    "reduce_basis",
    "HammingGraph",
    "brute_force_is_resolving",
    "embed",
    "hamming_distance",
    "metric_dimension_exhaustive",
    "one_hot",
    "Polynomial",
    "parse_polynomial",
    "build_system",
    "check_resolving_enumeration",
    "check_resolving_groebner",
    "check_resolving_hypercube",
    "RandomSource",
    "generate_resolving",
    "reduce_generative",
    "reduce_top_down",
    "BudgetExceeded",
    "EnumerationBudgetExceeded",
    "NotResolvingError",
    "ResolvabilityVerdict",
]
