from __future__ import annotations

import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from vekua.coeffs import random_fourier_data
from vekua.dual import GroupSpec
from vekua.estimator import VekuaOperator
from vekua.solve import make_admissible


def _batch(est, n=3, exact=True):
    op = est.operator_
    return [
        make_admissible(op, random_fourier_data(op.group, 4, 2, seed=s, exact=exact, entry_density=0.5))
        for s in range(n)
    ]


def test_params_and_clone():
    est = VekuaOperator(torus_coeffs=(1,), su2_coeffs=(1,), q=[0, "1/2√5"], p=1)
    params = est.get_params()
    assert params["q"] == [0, "1/2√5"] and params["xi_max"] == 50
    twin = clone(est)
    assert twin.get_params() == params
    assert not hasattr(twin, "operator_")


def test_not_fitted():
    with pytest.raises(NotFittedError):
        VekuaOperator().transform([])


def test_transform_round_trip_exact():
    est = VekuaOperator(torus_coeffs=(1,), su2_coeffs=(1,), q=[0, "1/2√5"], p=1).fit()
    X = _batch(est)
    U = est.transform(X)
    back = est.inverse_transform(U)
    assert all(b.same_as(f) for b, f in zip(back, X))
    assert est.score(X) == 0.0


def test_float_mode_score():
    est = VekuaOperator(torus_coeffs=(1,), q=[6, 0], p=[3, 4], mode="float").fit()
    X = _batch(est, exact=False)
    assert -1e-13 < est.score(X) <= 0.0


def test_fit_with_classification():
    est = VekuaOperator(su2_coeffs=(1,), torus_coeffs=(), q=[0, 5], p=4, classify=True, xi_max=20)
    est.fit()
    assert est.gh_verdict_.answer == "No"
    assert est.gs_verdict_.condition_id == "su2"


def test_fit_validates_inputs():
    with pytest.raises(ValueError):
        VekuaOperator(p=0).fit()
    est = VekuaOperator(torus_coeffs=(1,)).fit()
    wrong = random_fourier_data(GroupSpec(0, 1), 3, 2, seed=0)
    with pytest.raises(ValueError):
        est.transform([wrong])
    with pytest.raises((TypeError, ValueError)):
        est.transform([1, 2])
