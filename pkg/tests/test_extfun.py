import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, strategies as st

from kled import DomainError, domain_exp, domain_log, exp_ext, exp_ext_raw, log_ext, log_ext_raw
from kled.extfun import shift_constant


def test_exp_examples():
    assert exp_ext(0.0, 1) == 1.0
    x = np.linspace(-3, 3, 13)
    np.testing.assert_allclose(exp_ext(x, 2), x)
    neg = -np.linspace(0.1, 5, 20)
    np.testing.assert_allclose(exp_ext(neg, 0), -1 / neg)


def test_log_examples():
    assert log_ext(1.0, 1) == 0.0
    x = np.linspace(-3, 3, 13)
    np.testing.assert_allclose(log_ext(x, 2), x)
    assert log_ext(4.0, 0) == pytest.approx(-0.25)


def test_raw_examples():
    assert exp_ext_raw(0.0, 1, 3.0) == pytest.approx(3.0)
    # The raw form is the shifted plain form.
    assert exp_ext_raw(0.5, F(1, 2)) == pytest.approx((1 - 0.25) ** -2)
    assert exp_ext_raw(1.0, F(4, 3), 2.0) == pytest.approx((2 ** (1 / 3) + 1 / 3) ** 3)


def test_raw_at_threshold_is_a_pole():
    # (c^{-1/2} - x/2)^{-2} blows up as x reaches c_{3/2} = 2.
    t = shift_constant(F(1, 2))
    assert t == pytest.approx(2.0)
    assert exp_ext_raw(t, F(1, 2), extended=True) == math.inf
    assert exp_ext_raw(t - 1e-6, F(1, 2)) > 1e11
    with pytest.raises(DomainError):
        exp_ext_raw(t, F(1, 2))


@pytest.mark.parametrize("beta, branch, dexp, dlog", [
    (1, "pos", "R", "R++"), (2, "pos", "R", "R"), (F(4, 3), "pos", "R", "R"),
    (F(3, 2), "pos", "R+", "R+"), (F(1, 2), "pos", "R--", "R++"), (F(-1), "pos", "R--", "R++"),
    (F(2, 3), "neg", "R++", "R--"),
])
def test_domains(beta, branch, dexp, dlog):
    assert domain_exp(beta, branch).label == dexp
    assert domain_log(beta, branch).label == dlog


def test_outside_domain_raises():
    with pytest.raises(DomainError):
        exp_ext(1.0, 0)
    with pytest.raises(DomainError):
        log_ext(-1.0, F(1, 2))


def test_boundary_limits_when_extended():
    assert exp_ext(0.0, 0, extended=True) == math.inf
    assert log_ext(0.0, F(1, 2), extended=True) == -math.inf
    assert log_ext(0.0, 1, extended=True) == -math.inf


BETAS = [F(-2), F(-1), F(0), F(1, 2), F(1, 3), F(2, 3), F(1), F(4, 3), F(16, 9), F(2), F(8, 3)]


@pytest.mark.parametrize("beta", BETAS)
@given(u=st.floats(0.05, 20))
def test_mutual_inverses(beta, u):
    dom = domain_log(beta)
    x = u if dom.contains(u) else -u
    assert exp_ext(log_ext(x, beta), beta) == pytest.approx(x, rel=1e-10)


@pytest.mark.parametrize("beta", [F(0), F(1, 2), F(1), F(4, 3), F(2)])
@pytest.mark.parametrize("c", [0.5, 1.0, 3.0])
def test_raw_inverses(beta, c):
    x = np.linspace(0.2, 4, 9)
    np.testing.assert_allclose(exp_ext_raw(log_ext_raw(x, beta, c), beta, c), x, rtol=1e-10)
    assert log_ext_raw(c, beta, c) == pytest.approx(0.0, abs=1e-12)


@given(x=st.floats(0.05, 10), y=st.floats(0.05, 10))
def test_exp_ext_is_increasing_for_gamma(x, y):
    # exp_{2} maps R-- to R++, increasingly.
    a, b = sorted((-x, -y))
    assert exp_ext(a, 0) <= exp_ext(b, 0)
