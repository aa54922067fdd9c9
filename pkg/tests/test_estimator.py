import math
from fractions import Fraction as F

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.utils.estimator_checks import parametrize_with_checks

from kled import DomainError, ExtendedLogisticDensity, KledDensity, KledModel


@parametrize_with_checks([KledDensity()])
def test_sklearn_compatible(estimator, check):
    check(estimator)


def test_fit_matches_closed_form():
    est = KledDensity(beta=0).fit([[1.0], [3.0]])
    assert est.theta_[0] == pytest.approx(-0.5)
    assert est.mean_[0] == pytest.approx(2.0)
    assert est.n_features_in_ == 1


def test_columns_are_independent():
    rng = np.random.default_rng(3)
    X = rng.gamma(2.0, 1.0, size=(50, 3))
    est = KledDensity(beta=0, sigma2=0.5).fit(X)
    for j in range(3):
        single = KledDensity(beta=0, sigma2=0.5).fit(X[:, [j]])
        assert est.theta_[j] == pytest.approx(single.theta_[0])
    total = sum(KledDensity(beta=0, sigma2=0.5).fit(X[:, [j]]).score_samples(X[:, [j]])
                for j in range(3))
    np.testing.assert_allclose(est.score_samples(X), total)


def test_score_samples_is_negative_scaled_divergence():
    X = np.array([[0.5], [1.5], [4.0]])
    est = KledDensity(beta=-1, sigma2=2.0).fit(X)
    model = KledModel(-1, 2.0)
    expected = model.log_density_unnormalized(X[:, 0], est.theta_[0])
    np.testing.assert_allclose(est.score_samples(X), expected)
    assert est.score(X) == pytest.approx(float(np.sum(expected)))


def test_boundary_fit_scores():
    est = KledDensity(beta=F(1, 2)).fit(np.zeros((4, 1)))
    assert est.theta_[0] == -math.inf
    assert est.boundary_[0]
    np.testing.assert_array_equal(est.score_samples([[0.0], [1.0]]), [0.0, -math.inf])


def test_rejects_out_of_support():
    with pytest.raises(DomainError):
        KledDensity(beta=0).fit([[1.0], [-1.0]])


def test_not_fitted():
    with pytest.raises(NotFittedError):
        KledDensity().score_samples([[1.0]])


def test_clone_and_params():
    est = KledDensity(beta="16/9", sigma2=3.0)
    twin = clone(est)
    assert twin.get_params() == est.get_params()
    twin.set_params(sigma2=1.0)
    assert est.sigma2 == 3.0


def test_logistic_bernoulli_fit():
    X = np.array([[0], [1], [1], [1]])
    est = ExtendedLogisticDensity().fit(X)
    assert est.theta_[0] == pytest.approx(math.log(3))
    expected = X[:, 0] * math.log(3) - math.log(1 + 3)
    np.testing.assert_allclose(est.score_samples(X), expected)


def test_logistic_poisson_fit():
    X = np.array([[0], [2], [4]])
    est = ExtendedLogisticDensity(alpha=2, beta=1, c=1.0).fit(X)
    assert est.theta_[0] == pytest.approx(math.log(2))


def test_logistic_bridge_fit_matches_mean():
    from kled import LogisticParams, loss_grad
    X = np.array([[0.2], [0.9], [0.4]])
    est = ExtendedLogisticDensity(alpha=F(11, 10), beta=F(7, 10)).fit(X)
    p = LogisticParams(F(11, 10), F(7, 10), 1.0)
    assert loss_grad(est.theta_[0], p) == pytest.approx(X.mean(), rel=1e-9)


def test_logistic_support_check():
    with pytest.raises(DomainError):
        ExtendedLogisticDensity().fit([[0.5]])
