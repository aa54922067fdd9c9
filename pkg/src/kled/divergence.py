"""Bregman, canonical, beta and quasi-likelihood divergences.

Every function here is elementwise in its array arguments; a separable
vector divergence is the ``.sum()`` of the returned array.  A second argument
sitting on a finite boundary point of the admissible region (where the
generating gradient blows up) yields ``+inf``, or ``0`` when both arguments
coincide, so that boundary estimates can be detected downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._util import as_float_array, unwrap
from .domains import NEG, NONNEG, POS, REALS, Branch, DomainInterval
from .exceptions import DomainError
from .extfun import exp_ext, log_ext
from .legendre import LegendrePair, conjugate_value, legendre_pair
from .rational import ExponentClass, as_exponent, classify_exponent, signed_power


def _edge_mask(y, dom: DomainInterval, what: str):
    """Split ``y`` into interior points and closure-boundary points."""
    inner = dom.interior.contains(y)
    edge = ~inner & dom.closure.contains(y)
    if not np.all(inner | edge):
        raise DomainError(f"{what}: second argument outside {dom.closure.label}")
    return inner, edge


def _fill(x, y, inner, edge, fn):
    out = np.empty(np.broadcast(x, y).shape)
    xb, yb = np.broadcast_arrays(x, y)
    inner, edge = np.broadcast_arrays(inner, edge)
    if np.any(inner):
        out[inner] = fn(xb[inner], yb[inner])
    out[edge] = np.where(xb[edge] == yb[edge], 0.0, math.inf)
    return unwrap(out)


def bregman(pair: LegendrePair, x, y, side: str = "phi"):
    """Bregman divergence ``D_f(x|y) = f(x) - f(y) - (x - y) f'(y)``.

    ``f`` is ``pair.phi`` (``side="phi"``) or ``pair.psi`` (``side="psi"``).
    ``x`` must lie in ``dom f``; ``y`` in its closure.
    """
    f = pair.function(side)
    grad = pair.gradient(side)
    dom = pair.domain(side)
    x = as_float_array(x)
    y = as_float_array(y)
    if not dom.contains_all(x):
        raise DomainError(f"bregman: first argument outside {dom.label}")
    inner, edge = _edge_mask(y, dom, "bregman")

    def fn(a, b):
        return as_float_array(f(a)) - as_float_array(f(b)) - (a - b) * as_float_array(grad(b))

    return _fill(x, y, inner, edge, fn)


def canonical(pair: LegendrePair, x, theta, side: str = "phi"):
    """Canonical divergence ``d_f(x; theta) = f(x) + f*(theta) - x theta``.

    The exact conjugate is used, so ``d_f(x; f'(x)) == 0``.  ``theta`` must lie
    in the domain of the conjugate (the partner function's domain).
    """
    f = pair.function(side)
    x = as_float_array(x)
    theta = as_float_array(theta)
    fx = as_float_array(f(x))
    fs = as_float_array(conjugate_value(pair, side, theta))
    with np.errstate(invalid="ignore"):
        out = fx + fs - x * theta
    return unwrap(np.maximum(out, 0.0) if np.all(np.isfinite(out)) else out)


def bregman_beta(b, theta, beta, branch=None):
    """``Phi(b) + Psi(theta) - b theta`` with the constant-free ``Phi`` and ``Psi``.

    Exponents above 1 outside ``R_e`` are accepted on the positive half-line,
    where the power formulas still make sense.
    """
    pair = legendre_pair(beta, branch, strict=False)
    b = as_float_array(b)
    theta = as_float_array(theta)
    return unwrap(as_float_array(pair.phi(b)) + as_float_array(pair.psi(theta)) - b * theta)


def bregman_tweedie(theta, b, beta, branch=None):
    """``Psi(theta) + Phi(b) - theta b``; the same quantity seen from the ``Psi`` side."""
    pair = legendre_pair(beta, branch, strict=False)
    b = as_float_array(b)
    theta = as_float_array(theta)
    return unwrap(as_float_array(pair.psi(theta)) + as_float_array(pair.phi(b)) - theta * b)


@dataclass(frozen=True)
class QuasiDomain:
    """Left and right admissible regions ``(Omega_L, Omega_R)``."""

    left: DomainInterval
    right: DomainInterval

    def contains(self, b, mu):
        return self.left.contains(b) & self.right.contains(mu)

    def labels(self) -> tuple[str, str]:
        return self.left.label, self.right.label


def quasi_domain(beta, branch=None) -> QuasiDomain | None:
    """Domain of the quasi-likelihood with variance ``mu ** (2 - beta)``.

    Returns ``None`` for ``beta > 2``, where no admissible region exists.
    The negative branch exists for ``beta < 1`` in ``R_e``.
    """
    beta = as_exponent(beta)
    branch = Branch.coerce(branch)
    even = classify_exponent(beta) is ExponentClass.EVEN
    if beta > 2:
        return None
    if beta > 1:
        return QuasiDomain(REALS, REALS) if even else QuasiDomain(NONNEG, NONNEG)
    if branch is Branch.NEGATIVE:
        if not (even and beta < 1):
            raise DomainError(f"beta={beta} has no negative-region quasi domain")
        if beta > 0:
            return QuasiDomain(DomainInterval(-math.inf, 0.0, False, True), NEG)
        return QuasiDomain(NEG, NEG)
    if beta > 0:
        return QuasiDomain(NONNEG, POS)
    return QuasiDomain(POS, POS)


def beta_divergence_domain(beta, branch=None) -> QuasiDomain:
    """Nonnegativity region of the beta-divergence.

    Coincides with :func:`quasi_domain` for ``beta <= 2``.  Beyond that the
    integrand weight ``x ** (beta - 2)`` stays nonnegative on ``R`` for ``R_e``
    exponents and on ``R+`` otherwise.
    """
    beta = as_exponent(beta)
    if beta > 2:
        if classify_exponent(beta) is ExponentClass.EVEN:
            return QuasiDomain(REALS, REALS)
        return QuasiDomain(NONNEG, NONNEG)
    return quasi_domain(beta, branch)


def _beta_closed_form(b, u, beta: Fraction):
    if beta == 0:
        r = b / u
        return r - np.log(r) - 1.0
    if beta == 1:
        with np.errstate(divide="ignore", invalid="ignore"):
            blog = np.where(b > 0, b * np.log(np.where(b > 0, b, 1.0) / u), 0.0)
        return blog - b + u
    bf = float(beta)
    pb = as_float_array(signed_power(b, beta))
    pu = as_float_array(signed_power(u, beta))
    gu = as_float_array(signed_power(u, beta - 1))
    return pb / (bf * (bf - 1)) - b * gu / (bf - 1) + pu / bf


def beta_divergence(b, u, beta, branch=None):
    """Beta-divergence ``D_beta(b|u) = int_u^b x**(beta-2) (b - x) dx``.

    Closed forms: Itakura-Saito at ``beta == 0``, generalized Kullback-Leibler
    at ``beta == 1`` and ``(b**beta)/(beta(beta-1)) - b u**(beta-1)/(beta-1)
    + u**beta/beta`` otherwise.
    """
    beta = as_exponent(beta)
    dom = beta_divergence_domain(beta, branch)
    b = as_float_array(b)
    u = as_float_array(u)
    if not dom.left.contains_all(b):
        raise DomainError(f"beta_divergence: b outside {dom.left.label}")
    inner = dom.right.contains(u)
    edge = ~inner & dom.right.closure.contains(u)
    if not np.all(inner | edge):
        raise DomainError(f"beta_divergence: u outside {dom.right.label}")
    out = _fill(b, u, inner, edge, lambda x, y: _beta_closed_form(x, y, beta))
    return unwrap(np.maximum(out, 0.0))


def _quasi_closed(b, mu, beta: Fraction):
    """``int_mu^b (b - x) / V(x) dx`` with ``V(x) = x**(2-beta)``, via antiderivatives.

    ``L1`` integrates ``x**(beta-2)`` (the link ``ln_{2-beta}``) and ``L2``
    integrates ``x**(beta-1)``.
    """
    with np.errstate(divide="ignore", invalid="ignore"):
        if beta == 1:
            def l1(x):
                return np.log(x)
        else:
            def l1(x):
                return as_float_array(signed_power(x, beta - 1)) / float(beta - 1)
        if beta == 0:
            def l2(x):
                return np.log(np.abs(x))
        else:
            def l2(x):
                return as_float_array(signed_power(x, beta)) / float(beta)
        # b * L1(b) -> 0 as b -> 0 whenever zero is admissible on the left.
        b_l1 = np.where(b == 0, 0.0, b * l1(np.where(b == 0, 1.0, b)))
        return (b_l1 - b * l1(mu)) - (l2(b) - l2(mu))


def quasi_likelihood(b, mu, beta, sigma2: float = 1.0, branch=None):
    """Quasi-likelihood ``Q(b; mu) = -int_mu^b (b - x) / (sigma2 V(x)) dx`` with ``V(x) = x**(2-beta)``.

    Computed from the mean-variance relation; it coincides with
    ``-beta_divergence(b, mu) / sigma2`` and is therefore never positive.
    """
    if sigma2 <= 0:
        raise DomainError("sigma2 must be positive")
    beta = as_exponent(beta)
    dom = quasi_domain(beta, branch)
    if dom is None:
        raise DomainError(f"no quasi-likelihood domain for beta={beta} > 2")
    b = as_float_array(b)
    mu = as_float_array(mu)
    if not dom.left.contains_all(b):
        raise DomainError(f"quasi_likelihood: b outside {dom.left.label}")
    inner = dom.right.contains(mu)
    edge = ~inner & dom.right.closure.contains(mu)
    if not np.all(inner | edge):
        raise DomainError(f"quasi_likelihood: mu outside {dom.right.label}")
    d = _fill(b, mu, inner, edge, lambda x, y: _quasi_closed(x, y, beta))
    return unwrap(-np.maximum(as_float_array(d), 0.0) / sigma2)


def extended_argmin(pair: LegendrePair, b_avg, side: str = "phi"):
    """Minimizer over ``theta`` of the mean canonical divergence.

    Equals ``f'(b_avg)`` on the interior of ``dom f`` and the one-sided
    gradient limit (``+inf`` or ``-inf``) on its boundary.
    """
    dom = pair.domain(side)
    b_avg = as_float_array(b_avg)
    if not dom.contains_all(b_avg):
        raise DomainError(f"extended_argmin: {b_avg} outside {dom.label}")
    if side == "phi":
        return log_ext(b_avg, pair.beta, pair.branch, extended=True)
    return exp_ext(b_avg, pair.beta, pair.branch, extended=True)


def variance_function(mu, beta):
    """Power variance ``V(mu) = mu ** (2 - beta)`` with signed powers."""
    beta = as_exponent(beta)
    return signed_power(mu, 2 - beta)


def fisher_information(beta, sigma2: float, mu):
    """``1 / (sigma2 V(mu))``; raises where the variance is not positive."""
    if sigma2 <= 0:
        raise DomainError("sigma2 must be positive")
    v = as_float_array(variance_function(mu, beta))
    if np.any(~(v > 0)) or np.any(~np.isfinite(v)):
        raise DomainError("variance function is not positive and finite at mu")
    return unwrap(1.0 / (sigma2 * v))
