"""Scikit-learn style embedding of fixed-length words by distances to a resolving set."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .groebner import DEFAULT_STEP_BUDGET
from .hamgraph import brute_force_is_resolving
from .setops import generate_resolving, reduce_generative, reduce_top_down
from .validation import (
    as_vertices,
    check_alphabet,
    check_graph,
    check_kmers,
    check_random_state,
    unique_vertices,
)

__all__ = ["ResolvingSetEmbedder"]

STRATEGIES = ("generate", "topdown", "generative")


class ResolvingSetEmbedder(TransformerMixin, BaseEstimator):
    """Map words of length ``k`` to their Hamming distances from a resolving set.

    Because the reference set resolves ``H_{k,a}``, distinct words always get
    distinct vectors.

    Parameters
    ----------
    alphabet : int or sequence, default=4
        Alphabet size, or the symbols in order (e.g. ``"ACGT"``).
    strategy : {"generate", "topdown", "generative"}, default="generate"
        ``"generate"`` samples a fresh resolving set for the whole graph.  The
        two reduction strategies shrink the set of distinct training words,
        which must already resolve the graph.
    ordering : {"lex", "grlex", "grevlex"}, default="grevlex"
        Monomial ordering for the Gröbner checks.
    budget : int
        Step budget for each Gröbner computation.
    random_state : int, RandomSource or None, default=None
        Seed for shuffles and vertex draws; ``None`` means seed 0.

    Attributes
    ----------
    graph_ : HammingGraph
    resolving_set_ : list of tuple
    n_features_in_ : int
        Word length ``k``.
    """

    def __init__(
        self,
        alphabet=4,
        strategy="generate",
        ordering="grevlex",
        budget=DEFAULT_STEP_BUDGET,
        random_state=None,
    ):
        self.alphabet = alphabet
        self.strategy = strategy
        self.ordering = ordering
        self.budget = budget
        self.random_state = random_state

    def fit(self, X, y=None):
        if self.strategy not in STRATEGIES:
            raise ValueError(f"strategy must be one of {STRATEGIES}, got {self.strategy!r}")
        a, _ = check_alphabet(self.alphabet)
        arr = check_kmers(X, self.alphabet)
        g = check_graph(arr.shape[1], a)
        rng = check_random_state(self.random_state)
        if self.strategy == "generate":
            r = generate_resolving(g, rng, self.ordering, self.budget)
        else:
            cand = unique_vertices(as_vertices(arr))
            reducer = reduce_top_down if self.strategy == "topdown" else reduce_generative
            r = reducer(g, cand, rng, self.ordering, self.budget)
        self.graph_ = g
        self.resolving_set_ = list(r)
        self.n_features_in_ = g.k
        return self

    def transform(self, X):
        check_is_fitted(self, "resolving_set_")
        arr = check_kmers(X, self.alphabet, self.n_features_in_)
        refs = np.array(self.resolving_set_, dtype=np.int64)
        return (arr[:, None, :] != refs[None, :, :]).sum(axis=2)

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "resolving_set_")
        return np.array([f"d{i}" for i in range(1, len(self.resolving_set_) + 1)], dtype=object)

    def verify(self) -> bool:
        """Re-check the fitted reference set with the brute-force oracle."""
        check_is_fitted(self, "resolving_set_")
        return brute_force_is_resolving(self.graph_, self.resolving_set_).resolving
