import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline

from latpoly.catalog import make_simplex, make_table2
from latpoly.estimators import OUT_OF_SCOPE, CatalogClassifier, DeltaVectorizer, check_polytope
from latpoly.polytope import LatticePolytope


def test_check_polytope_accepts_arrays_and_dicts():
    P = check_polytope(np.array([[0, 0], [1, 0], [0, 1]]))
    assert P == LatticePolytope([(0, 0), (1, 0), (0, 1)], 2)
    assert check_polytope({"dim": 1, "vertices": [[0], [2]]}).vertices == ((0,), (2,))
    with pytest.raises(ValueError):
        check_polytope(np.array([[0.5, 0.0]]))


def test_vectorizer():
    X = [make_table2("P2"), make_simplex("Δ2", 2), np.array([[0], [3]])]
    vec = DeltaVectorizer().fit(X)
    out = vec.transform(X)
    assert out.tolist() == [[1, 1, 0, 0], [1, 0, 1, 0], [1, 2, 0, 0]]
    with pytest.raises(NotFittedError):
        DeltaVectorizer().transform(X)
    assert clone(vec).get_params() == {"width": None}


def test_classifier():
    X = [make_table2("Q4_9"), make_simplex("Δ3", 1, 2), np.array([[0, 0], [2, 0], [0, 2], [2, 2]])]
    clf = CatalogClassifier().fit()
    assert clf.predict(X).tolist() == ["Q4_9", "Δ3 (i1=1,i2=2)", OUT_OF_SCOPE]
    assert clf.predict_pyramids(X).tolist() == [0, 0, -1]
    assert "B4 (k=3)" in clf.classes_


def test_in_pipeline():
    pipe = make_pipeline(DeltaVectorizer(width=5))
    assert pipe.fit_transform([make_table2("Q4_2")]).tolist() == [[1, 2, 1, 0, 0]]
