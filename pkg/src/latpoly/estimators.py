"""scikit-learn style wrappers, so polytope collections drop into pipelines.

Nothing is learned: ``fit`` only validates input and records shapes.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .classify import catalog_entries, classify
from .ehrhart import delta_from_counts
from .io import polytope_from_dict
from .polytope import LatticePolytope

OUT_OF_SCOPE = "volume exceeds 4"


def check_polytope(P) -> LatticePolytope:
    """Accept a polytope, a polytope-file dict, or a 2-d integer array of vertices."""
    if isinstance(P, LatticePolytope):
        return P
    if isinstance(P, dict):
        return polytope_from_dict(P)
    arr = np.asarray(P)
    if arr.ndim != 2 or not np.issubdtype(arr.dtype, np.integer):
        raise ValueError("expected a 2-d integer array of vertices")
    return LatticePolytope([tuple(int(x) for x in row) for row in arr], arr.shape[1])


def check_polytopes(X) -> list:
    return [check_polytope(P) for P in X]


class DeltaVectorizer(TransformerMixin, BaseEstimator):
    """Map each polytope to its delta-vector, zero-padded to a common length."""

    def __init__(self, width=None):
        self.width = width

    def fit(self, X, y=None):
        Ps = check_polytopes(X)
        self.n_features_out_ = self.width if self.width is not None else \
            1 + max((P.ambient_dim for P in Ps), default=0)
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_out_")
        out = np.zeros((len(X), self.n_features_out_), dtype=np.int64)
        for row, P in enumerate(check_polytopes(X)):
            entries = delta_from_counts(P).entries
            if len(entries) > self.n_features_out_:
                raise ValueError(f"delta-vector of length {len(entries)} does not fit width {self.n_features_out_}")
            out[row, :len(entries)] = entries
        return out


class CatalogClassifier(ClassifierMixin, BaseEstimator):
    """Predict the catalog label of each polytope; the fit step just lists the labels."""

    def __init__(self, budget=10**6, dmax=9, kmax=4):
        self.budget = budget
        self.dmax = dmax
        self.kmax = kmax

    def fit(self, X=None, y=None):
        labels = {e.label() for e in catalog_entries(self.dmax, self.kmax)}
        self.classes_ = np.array(sorted(labels | {"Δ1", OUT_OF_SCOPE}), dtype=object)
        return self

    def predict(self, X):
        check_is_fitted(self, "classes_")
        return np.array([self._label(P) for P in check_polytopes(X)], dtype=object)

    def _label(self, P: LatticePolytope) -> str:
        res = classify(P, budget=self.budget)
        return res.entry.label() if res.in_scope else OUT_OF_SCOPE

    def predict_pyramids(self, X):
        """Number of pyramid layers stripped before the match (-1 when out of scope)."""
        out = []
        for P in check_polytopes(X):
            res = classify(P, budget=self.budget)
            out.append(res.entry.pyramids if res.in_scope else -1)
        return np.array(out, dtype=np.int64)
