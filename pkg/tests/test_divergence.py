import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.integrate import quad

from kled import (DomainError, beta_divergence, bregman, bregman_beta, bregman_tweedie, canonical,
                  extended_argmin, fisher_information, legendre_pair, quasi_domain,
                  quasi_likelihood, variance_function)
from kled.divergence import beta_divergence_domain


def _defining_integral(b, u, beta):
    """int_u^b (b - x) x^{beta-2} dx, the power-variance form of the beta-divergence."""
    val, _ = quad(lambda x: (b - x) * x ** (beta - 2), u, b, epsabs=1e-14, epsrel=1e-13)
    return val


def test_bregman_zero_on_diagonal():
    for beta in (F(-1), F(0), F(1, 2), F(1), F(2)):
        pair = legendre_pair(beta)
        assert bregman(pair, 1.3, 1.3) == pytest.approx(0.0, abs=1e-14)


def test_canonical_gaussian():
    pair = legendre_pair(2)
    b = np.linspace(-3, 3, 7)
    np.testing.assert_allclose(canonical(pair, b, 0.5), 0.5 * (b - 0.5) ** 2, atol=1e-14)


def test_canonical_zero_at_gradient():
    pair = legendre_pair(0)
    b = np.linspace(0.2, 5, 9)
    np.testing.assert_allclose(canonical(pair, b, pair.grad_phi(b)), 0.0, atol=1e-12)


def test_bregman_beta_examples():
    assert bregman_beta(2.0, 0.0, 2) == pytest.approx(2.0)
    b = np.linspace(0.1, 3, 7)
    t = np.linspace(0.2, 2, 7)
    np.testing.assert_allclose(bregman_tweedie(t, b, F(3, 2)), bregman_beta(b, t, F(3, 2)))


def test_psi_side_symmetry_three_halves():
    pair = legendre_pair(F(3, 2), strict=False)
    b, t = np.meshgrid(np.linspace(0.1, 3, 9), np.linspace(0.1, 3, 9))
    np.testing.assert_allclose(canonical(pair, b, t, "psi"), canonical(pair, t, b, "phi"),
                               atol=1e-12)


@pytest.mark.parametrize("beta, exact", [
    (0, lambda b, u: b / u - np.log(b / u) - 1),
    (1, lambda b, u: b * np.log(b / u) - b + u),
    (2, lambda b, u: 0.5 * (b - u) ** 2),
])
def test_beta_divergence_special_cases(beta, exact):
    b = np.linspace(0.1, 5, 100)
    u = np.linspace(4.0, 0.3, 100)
    np.testing.assert_allclose(beta_divergence(b, u, beta), exact(b, u), rtol=1e-12, atol=1e-12)


def test_beta_divergence_examples():
    assert beta_divergence(1.7, 1.7, F(1, 2)) == pytest.approx(0.0, abs=1e-15)
    assert beta_divergence(2.0, 1.0, 1) == pytest.approx(2 * math.log(2) - 1)


@pytest.mark.parametrize("beta", [F(-1), F(0), F(1, 2), F(1), F(3, 2), F(2), F(5, 2)])
@pytest.mark.parametrize("b, u", [(0.5, 2.0), (3.0, 1.2), (1.0, 0.25)])
def test_beta_divergence_against_integral(beta, b, u):
    assert beta_divergence(b, u, beta) == pytest.approx(_defining_integral(b, u, float(beta)),
                                                        rel=1e-8, abs=1e-12)


def test_beta_divergence_domain_above_two():
    assert beta_divergence_domain(F(8, 3)).labels() == ("R", "R")
    assert beta_divergence(-1.0, 2.0, F(8, 3)) > 0


def test_quasi_examples():
    assert quasi_likelihood(1.4, 1.4, F(1, 2)) == pytest.approx(0.0, abs=1e-15)
    assert quasi_likelihood(3.0, 1.0, 2) == pytest.approx(-2.0)
    with pytest.raises(DomainError):
        quasi_likelihood(3.0, 1.0, 3)


@pytest.mark.parametrize("beta, labels", [
    (F(3, 2), ("R+", "R+")), (F(2), ("R", "R")), (F(1), ("R+", "R++")), (F(1, 2), ("R+", "R++")),
    (F(-1), ("R++", "R++")), (F(-1, 2), ("R++", "R++")),
])
def test_quasi_domain(beta, labels):
    assert quasi_domain(beta).labels() == labels


def test_quasi_domain_absent_above_two():
    assert quasi_domain(3) is None


@pytest.mark.parametrize("beta", [F(-1), F(0), F(1, 2), F(1), F(3, 2), F(2)])
@pytest.mark.parametrize("sigma2", [0.5, 2.0])
def test_quasi_is_scaled_negative_beta_divergence(beta, sigma2):
    b = np.linspace(0.2, 4, 15)
    mu = np.linspace(3, 0.3, 15)
    np.testing.assert_allclose(quasi_likelihood(b, mu, beta, sigma2),
                               -beta_divergence(b, mu, beta) / sigma2, rtol=1e-12, atol=1e-12)


def test_extended_argmin_examples():
    assert extended_argmin(legendre_pair(0), 2.0) == pytest.approx(-0.5)
    assert extended_argmin(legendre_pair(F(1, 2)), 0.0) == -math.inf
    assert extended_argmin(legendre_pair(2), 1.7) == pytest.approx(1.7)


def test_fisher_information_examples():
    assert fisher_information(2, 1.0, 3.0) == pytest.approx(1.0)
    assert fisher_information(1, 1.0, 4.0) == pytest.approx(0.25)
    assert fisher_information(0, 2.0, 2.0) == pytest.approx(1 / 8)


def test_variance_function():
    assert variance_function(3.0, 0) == pytest.approx(9.0)
    assert variance_function(3.0, 2) == pytest.approx(1.0)


@given(b=st.floats(0.01, 50), u=st.floats(0.01, 50),
       beta=st.sampled_from([F(-1), F(0), F(1, 3), F(1), F(3, 2), F(2)]))
def test_beta_divergence_nonnegative(b, u, beta):
    assert beta_divergence(b, u, beta) >= -1e-9 * max(1.0, b, u) ** 2


@given(x=st.floats(0.05, 20), y=st.floats(0.05, 20))
def test_bregman_duality_gamma(x, y):
    pair = legendre_pair(0)
    lhs = bregman(pair, x, y)
    rhs = bregman(pair, pair.grad_phi(y), pair.grad_phi(x), "psi")
    assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-12)
