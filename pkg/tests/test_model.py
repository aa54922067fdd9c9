import math
import threading
from fractions import Fraction as F

import mpmath
import numpy as np
import pytest
from scipy.special import gammaln

from kled import (DomainError, KledModel, cumulant_domain, cumulant_order, curve_extended_normal,
                  density_levy, kled_classification, legendre_pair)
from kled.verify import interior_grid

INF = math.inf


@pytest.mark.parametrize("beta, K", [
    (F(-1), INF), (F(0), INF), (F(1, 2), INF), (F(1), INF), (F(2), INF),
    (F(4, 3), 4), (F(16, 9), 2), (F(8, 3), 1), (F(6, 5), 6), (F(10, 9), 10),
])
def test_cumulant_order(beta, K):
    assert cumulant_order(beta) == K


@pytest.mark.parametrize("beta", [F(3, 2), F(17, 10), F(5, 4)])
def test_cumulant_order_rejects_non_re(beta):
    with pytest.raises(DomainError):
        cumulant_order(beta)


def test_mean_and_variance_examples():
    m = KledModel(1)
    assert m.mean(0.0) == pytest.approx(1.0)
    assert m.variance(0.0) == pytest.approx(1.0)
    g = KledModel(2, sigma2=2.5)
    assert g.mean(0.7) == pytest.approx(0.7)
    assert g.variance(0.7) == pytest.approx(2.5)
    ig = KledModel(-1, sigma2=3.0)
    assert ig.mean(-0.5) == pytest.approx(1.0)
    assert ig.variance(-0.5) == pytest.approx(3.0)


def test_kth_cumulant_examples():
    assert KledModel(0).kth_cumulant(-1.0, 3) == pytest.approx(2.0)
    t = np.linspace(-2, 2, 5)
    np.testing.assert_allclose(KledModel(2).kth_cumulant(t, 2), 1.0)
    assert KledModel(F(1, 2)).kth_cumulant(-1.0, 1) == pytest.approx(legendre_pair(F(1, 2)).grad_psi(-1.0))


def _mp_psi(beta):
    pair = legendre_pair(beta)
    b = mpmath.mpf(beta.numerator) / beta.denominator
    if beta == 1:
        return mpmath.exp
    if beta == 0:
        return lambda t: -mpmath.log(-t)
    def _closed(t):
        # Psi(t) = ((beta-1) t)^{beta/(beta-1)} / beta, with an even numerator keeping the sign.
        base = (b - 1) * t
        p = beta / (beta - 1)
        mag = mpmath.power(abs(base), mpmath.mpf(p.numerator) / p.denominator)
        if base < 0 and p.numerator % 2 == 1:
            mag = -mag
        return mag / b

    return _closed


MP_CASES = [(beta, k) for beta in (F(-1), F(0), F(1, 2), F(1), F(4, 3), F(2), F(16, 9), F(2, 3))
            for k in range(1, 5) if k <= cumulant_order(beta)]


@pytest.mark.parametrize("beta, k", MP_CASES)
def test_kth_cumulant_against_mpmath_derivatives(beta, k):
    model = KledModel(beta)
    psi = _mp_psi(beta)
    for t in interior_grid(model.canonical_domain, 6):
        if beta > 1 and abs(t) < 0.3:
            continue
        exact = float(mpmath.diff(psi, mpmath.mpf(t), k))
        got = float(model.kth_cumulant(t, k))
        assert got == pytest.approx(exact, rel=1e-9, abs=1e-12)


@pytest.mark.parametrize("beta", [F(-1), F(0), F(1, 2), F(1), F(4, 3), F(2)])
def test_kth_cumulant_against_nested_differences(beta):
    model = KledModel(beta)
    pair = model.pair
    steps = {2: 1e-4, 3: 1e-3, 4: 2e-3}
    dom = model.canonical_domain
    if math.isfinite(dom.upper):
        t = dom.upper - np.linspace(1.0, 3.0, 6)
    else:
        t = np.linspace(-2.0, 2.0, 6)
    if beta > 1:
        t = t[np.abs(t) > 0.5]
    for k, h in steps.items():
        f = pair.psi
        for _ in range(k):
            f = (lambda g: lambda s: (np.asarray(g(s + h)) - np.asarray(g(s - h))) / (2 * h))(f)
        np.testing.assert_allclose(f(t), model.kth_cumulant(t, k), rtol=1e-4, atol=1e-5)


@pytest.mark.parametrize("beta", [F(-1), F(0), F(1, 2), F(1), F(4, 3), F(2)])
def test_power_variance_identity(beta):
    model = KledModel(beta, sigma2=1.7)
    t = interior_grid(model.canonical_domain)
    if beta > 1:
        t = t[t > 0]
    mu = model.mean(t)
    np.testing.assert_allclose(model.variance(t), 1.7 * mu ** float(2 - beta), rtol=1e-10)


def test_power_variance_three_halves_on_half_line():
    pair = legendre_pair(F(3, 2), strict=False)
    t = np.linspace(0.2, 3, 9)
    np.testing.assert_allclose(pair.hess_psi(t), pair.grad_psi(t) ** 0.5, rtol=1e-10)


def test_truncated_moments_terminate():
    model = KledModel(F(4, 3))
    t = np.linspace(-2, 2, 7)
    np.testing.assert_allclose(model.kth_cumulant(t, 4), 2 / 9)
    for m in (5, 6, 7):
        np.testing.assert_allclose(model.kth_cumulant(t, m), 0.0)


def test_order_above_K_raises():
    with pytest.raises(DomainError):
        KledModel(F(16, 9)).kth_cumulant(1.0, 3)


def test_degenerate_at():
    assert KledModel(F(4, 3)).degenerate_at(0.0)
    assert not KledModel(F(4, 3)).degenerate_at(1.0)
    assert not KledModel(2).degenerate_at(0.0)
    assert not KledModel(2).degenerate_at(3.0)


def test_reparameterize_additive():
    theta1, psi1 = KledModel(2, sigma2=1.0).reparameterize_additive(0.8)
    assert theta1 == 0.8 and psi1.value(0.8) == pytest.approx(0.32)
    theta1, psi1 = KledModel(0, sigma2=2.0).reparameterize_additive(-1.0)
    assert theta1 == pytest.approx(-0.5)
    # psi_1(t) = psi(sigma2 t) / sigma2
    assert psi1.value(-0.5) == pytest.approx(-math.log(1.0) / 2.0)


def test_log_density_examples():
    b = np.linspace(-3, 3, 13)
    np.testing.assert_allclose(KledModel(2, 3.0).log_density_unnormalized(b, 0.5),
                               -(b - 0.5) ** 2 / 6, atol=1e-14)
    m = KledModel(0)
    assert m.log_density_unnormalized(2.0, m.pair.grad_phi(2.0)) == pytest.approx(0.0, abs=1e-14)
    b = np.linspace(0.2, 4, 7)
    np.testing.assert_allclose(KledModel(-1, 2.0).log_density_unnormalized(b, 0.0), -1 / (4 * b))


def test_log_density_support_checks():
    with pytest.raises(DomainError):
        KledModel(0).log_density_unnormalized(-1.0, -1.0)
    with pytest.raises(DomainError):
        KledModel(1).log_density_unnormalized(1.5, 0.0)


@pytest.mark.parametrize("sigma2", [0.5, 1.0, 3.0])
def test_normalize_gaussian(sigma2):
    exact = math.sqrt(2 * math.pi * sigma2) * math.exp(0.3**2 / (2 * sigma2))
    assert KledModel(2, sigma2).normalize(0.3) == pytest.approx(exact, rel=1e-8)
    assert KledModel(2, sigma2).normalize(0.0) == pytest.approx(math.sqrt(2 * math.pi * sigma2), rel=1e-8)


def test_normalize_poisson_series():
    z = KledModel(1).normalize(0.0, lambda k: -gammaln(k + 1))
    assert z == pytest.approx(math.e, rel=1e-10)


@pytest.mark.parametrize("theta", [-1.0, -0.3, -4.0])
def test_normalize_gamma(theta):
    s2 = 0.5
    z = KledModel(0, s2).normalize(theta, lambda b: (1 / s2 - 1) * np.log(b))
    assert z == pytest.approx(math.gamma(1 / s2) * (-theta / s2) ** (-1 / s2), rel=1e-8)


def test_normalize_levy_diverges_and_density_integrates():
    assert KledModel(-1).normalize(0.0) == math.inf
    from scipy.integrate import quad
    total = quad(lambda b: density_levy(b, 1.0), 0, np.inf, limit=400)[0]
    assert total == pytest.approx(1.0, rel=1e-6)


def test_density_levy_examples():
    assert density_levy(1.0, 1.0) == pytest.approx((2 * math.pi) ** -0.5 * math.exp(-0.5))
    assert density_levy(1e-8, 1.0) == pytest.approx(0.0, abs=1e-100)
    ratio = density_levy(1e6, 1.0) / density_levy(4e6, 1.0)
    assert ratio == pytest.approx(4 ** 1.5, rel=1e-5)


def test_normalizer_cache_is_thread_safe():
    model = KledModel(2, 2.0)
    out = []

    def work():
        out.append(model.normalize(0.0))

    threads = [threading.Thread(target=work) for _ in range(8)]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    assert len(set(out)) == 1


def test_mle_examples():
    assert KledModel(2).mle_theta([1, 2, 3]) == pytest.approx(2.0)
    assert KledModel(1).mle_theta([math.e]) == pytest.approx(1.0)
    assert KledModel(F(1, 2)).mle_theta([0, 0, 0]) == -math.inf
    assert KledModel(1).mle_theta([0, 0]) == -math.inf


def test_fit_result_fields():
    res = KledModel(0, 2.0).fit([1.0, 3.0])
    assert res.theta == pytest.approx(-0.5)
    assert res.mean == pytest.approx(2.0)
    assert res.variance == pytest.approx(2.0 * 4.0)
    assert not res.boundary
    assert KledModel(F(1, 2)).fit([0.0]).boundary


def test_fit_rejects_out_of_support():
    with pytest.raises(DomainError):
        KledModel(0).fit([1.0, -2.0])


@pytest.mark.parametrize("b", [0.0, 2.0])
@pytest.mark.parametrize("beta", [F(2), F(16, 9), F(10, 9), F(8, 3), F(10, 3)])
def test_curve_extended_normal_peaks_at_b(b, beta):
    mu = np.linspace(-4, 6, 201)
    curve = curve_extended_normal(b, beta, 3.0, mu)
    assert curve.shape == (201, 2)
    i = int(np.argmin(np.abs(mu - b)))
    assert curve[i, 1] == pytest.approx(1.0)
    assert np.all(curve[:, 1] <= 1.0 + 1e-15)
    assert np.all(np.diff(curve[: i + 1, 1]) >= -1e-15)
    assert np.all(np.diff(curve[i:, 1]) <= 1e-15)


def test_curve_normal_closed_form():
    mu = np.linspace(-5, 5, 41)
    curve = curve_extended_normal(2.0, 2, 3.0, mu)
    np.testing.assert_allclose(curve[:, 1], np.exp(-(2.0 - mu) ** 2 / 6), rtol=1e-12)


@pytest.mark.parametrize("beta, row", [
    (1, ("Poisson", "Z+", "R+", "R", "R", "R", "R", "R")),
    (0, ("Gamma", "R++", "R++", "R--", "R--", "R--", "R--", "R--")),
    (-1, ("Inverse Gaussian", "R++", "R++", "R-", "R--", "R--", "R--", "R-")),
    (F(1, 2), ("Compound Poisson-Gamma", "R+", "R+", "R--", "R--", "R--", "R--", "R--")),
])
def test_kled_classification(beta, row):
    assert kled_classification(beta).as_tuple() == row


def test_kled_classification_missing_rows():
    row = kled_classification(F(3, 2))
    assert not row.exists
    assert kled_classification(2).name == "Gaussian"


def test_cumulant_domain_labels():
    assert {d.label for d in cumulant_domain(F(8, 3), 2)} == {"R++", "R--"}
    assert cumulant_domain(F(3, 2), 3) == ()
    assert {d.label for d in cumulant_domain(F(-1), 3)} == {"R--"}
