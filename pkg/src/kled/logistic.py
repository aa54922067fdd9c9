"""Convex extended logistic loss and the densities it generates.

The loss is

    f_{alpha,beta,c}(theta) = ln_{2-alpha,c}(c + exp_{2-beta,c}(theta))

with raw (``c``-explicit) extended functions.  It reduces to the logistic
loss ``ln(1 + e**theta)`` for ``alpha = beta = 1, c = 1`` and to ``e**theta``
for ``alpha = 2, beta = 1, c = 1``.  In between (``beta < alpha <= 2`` with
``beta < 1``) it interpolates between the Bernoulli and Poisson cumulants on
the half-line ``(-inf, c_{2-beta})``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import optimize

from ._util import as_float_array, unwrap
from .domains import REALS, DomainInterval, below
from .exceptions import DomainError, InvalidParams
from .extfun import exp_ext, log_ext, shift_constant
from .rational import as_exponent


class LogisticCase(enum.Enum):
    BERNOULLI = "bernoulli"
    POISSON = "poisson"
    BRIDGE = "bridge"
    INVALID = "invalid"


@dataclass(frozen=True)
class LogisticParams:
    """Parameters ``(alpha, beta, c)`` of the extended logistic loss.

    Requires ``beta <= alpha <= 2`` and ``c > 0``.
    """

    alpha: Fraction
    beta: Fraction
    c: float = 1.0

    def __post_init__(self):
        alpha = as_exponent(self.alpha)
        beta = as_exponent(self.beta)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "c", float(self.c))
        if not (self.c > 0 and math.isfinite(self.c)):
            raise InvalidParams("c must be positive and finite")
        if not beta <= alpha <= 2:
            raise InvalidParams(f"need beta <= alpha <= 2, got alpha={alpha}, beta={beta}")

    @property
    def threshold(self) -> float:
        """Upper end ``c_{2-beta} = c**(beta-1) / (1-beta)`` of the domain (``inf`` if ``beta == 1``)."""
        if self.beta == 1:
            return math.inf
        return shift_constant(self.beta, self.c)


def legendre_class(params: LogisticParams) -> tuple[LogisticCase, DomainInterval | None]:
    """Case of the loss and its domain; ``(INVALID, None)`` when not of Legendre type."""
    a, b = params.alpha, params.beta
    if a == 1 and b == 1:
        return LogisticCase.BERNOULLI, REALS
    if a == 2 and b == 1:
        return LogisticCase.POISSON, REALS
    if b < a <= 2 and b < 1:
        return LogisticCase.BRIDGE, below(params.threshold)
    return LogisticCase.INVALID, None


def _valid(params: LogisticParams) -> tuple[LogisticCase, DomainInterval]:
    case, dom = legendre_class(params)
    if case is LogisticCase.INVALID:
        raise InvalidParams(
            f"(alpha={params.alpha}, beta={params.beta}) does not give a Legendre-type loss")
    return case, dom


def _exp_raw(theta: np.ndarray, params: LogisticParams) -> np.ndarray:
    b, c = params.beta, params.c
    if b == 1:
        return c * np.exp(theta)
    bf = float(b)
    return np.power(c ** (bf - 1) + (bf - 1) * theta, 1.0 / (bf - 1))


def _prepare(theta, params):
    _, dom = _valid(params)
    theta = as_float_array(theta)
    if not dom.contains_all(theta):
        raise DomainError(f"theta outside {dom.label}")
    with np.errstate(over="ignore"):
        return theta, _exp_raw(theta, params)


def loss(theta, params: LogisticParams):
    """``f_{alpha,beta,c}(theta)``."""
    theta, e = _prepare(theta, params)
    a, c = params.alpha, params.c
    if a == 1:
        if params.beta == 1:
            # log(c + c e^t) - log c, evaluated without overflow.
            return unwrap(np.logaddexp(0.0, theta))
        return unwrap(np.log1p(e / c))
    if a == 2:
        return unwrap(e)  # (c + E) - c, without the cancellation
    af = float(a)
    return unwrap((np.power(c + e, af - 1) - c ** (af - 1)) / (af - 1))


def loss_grad(theta, params: LogisticParams):
    """Mean ``mu = E**(2-beta) / (c + E)**(2-alpha)`` with ``E = exp_{2-beta,c}(theta)``."""
    theta, e = _prepare(theta, params)
    a, b, c = float(params.alpha), float(params.beta), params.c
    if params.alpha == 1 and params.beta == 1:
        return unwrap(0.5 * (1.0 + np.tanh(0.5 * theta)))
    return unwrap(np.power(e, 2 - b) / np.power(c + e, 2 - a))


def loss_hess(theta, params: LogisticParams):
    """``E**(3-2 beta) (c+E)**(alpha-3) [(alpha-beta) E + (2-beta) c]``, strictly positive."""
    theta, e = _prepare(theta, params)
    a, b, c = float(params.alpha), float(params.beta), params.c
    if params.alpha == 1 and params.beta == 1:
        s = 0.5 * (1.0 + np.tanh(0.5 * theta))
        return unwrap(s * (1.0 - s))
    return unwrap(np.power(e, 3 - 2 * b) * np.power(c + e, a - 3) * ((a - b) * e + (2 - b) * c))


def mean_to_theta(mu, params: LogisticParams) -> float:
    """Invert :func:`loss_grad`.

    Closed forms for the Bernoulli (logit) and Poisson (``log(mu/c)``) cases;
    the bridge case solves ``loss_grad = mu`` by a bracketed root search in
    ``log E``.  ``mu = 0`` (and ``mu = 1`` for Bernoulli) map to ``-inf``
    (``+inf``).
    """
    case, _ = _valid(params)
    mu = float(mu)
    if mu < 0 or not math.isfinite(mu):
        raise DomainError(f"mean {mu} outside the mean space")
    if mu == 0:
        return -math.inf
    if case is LogisticCase.BERNOULLI:
        if mu > 1:
            raise DomainError("Bernoulli mean must lie in [0, 1]")
        if mu == 1:
            return math.inf
        return math.log(mu) - math.log1p(-mu)
    if case is LogisticCase.POISSON:
        return math.log(mu / params.c)
    a, b, c = float(params.alpha), float(params.beta), params.c
    target = math.log(mu)

    def h(u):
        return (2 - b) * u - (2 - a) * np.logaddexp(math.log(c), u) - target

    lo, hi = -1.0, 1.0
    while h(lo) > 0:
        lo *= 2.0
    while h(hi) < 0:
        hi *= 2.0
    u = optimize.brentq(h, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=500)
    e = math.exp(u)
    return (e ** (b - 1) - c ** (b - 1)) / (b - 1)


def _support_ok(b: np.ndarray, case: LogisticCase) -> bool:
    if case is LogisticCase.BERNOULLI:
        return bool(np.all((b == 0) | (b == 1)))
    if case is LogisticCase.POISSON:
        return bool(np.all((b >= 0) & (b == np.round(b))))
    return bool(np.all(b >= 0))


def log_density_logistic(b, theta, params: LogisticParams, sigma2: float = 1.0):
    """Unnormalized log density ``(b theta - f(theta)) / sigma2``.

    Observations must be in ``{0, 1}`` (Bernoulli), the non-negative integers
    (Poisson) or ``[0, inf)`` (bridge).
    """
    case, _ = _valid(params)
    if sigma2 <= 0:
        raise DomainError("sigma2 must be positive")
    b = as_float_array(b)
    if not _support_ok(b, case):
        raise DomainError(f"observation outside the {case.value} support")
    theta = as_float_array(theta)
    return unwrap((b * theta - as_float_array(loss(theta, params))) / sigma2)


def transformed_loss(c_label, x, beta, branch=None):
    """``grad Phi(c_label + grad Psi(x)) = ln_{2-beta}(c_label + exp_{2-beta}(x))``.

    This is the maximizer value of ``<c, z> - D_Psi(z | x)`` written through
    the gradients of the pair.
    """
    mean = as_float_array(exp_ext(x, beta, branch))
    return log_ext(as_float_array(c_label) + mean, beta, branch)


def psi_K(theta, K: int):
    """``((K-1)/K) (theta/(K-1))**K`` for even ``K >= 2``, i.e. ``Psi`` at ``beta = K/(K-1)``."""
    if isinstance(K, bool) or int(K) != K or K < 2 or K % 2:
        raise DomainError(f"K must be an even integer >= 2, got {K!r}")
    K = int(K)
    theta = as_float_array(theta)
    return unwrap((K - 1) / K * (theta / (K - 1)) ** K)


FIG2_ALPHAS = tuple(Fraction(k, 10) for k in range(19, 10, -1))
FIG2_BETAS = tuple(Fraction(k, 10) for k in range(7, -2, -1))


def c_for_threshold(beta, threshold: float) -> float:
    """The ``c`` giving ``c_{2-beta} = threshold`` for ``beta < 1``."""
    beta = as_exponent(beta)
    if beta >= 1 or threshold <= 0:
        raise DomainError("need beta < 1 and a positive threshold")
    return (threshold * float(1 - beta)) ** (1.0 / float(beta - 1))

