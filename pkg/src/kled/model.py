"""The K-LED model: cumulants, densities, normalization and estimation.

A K-LED with power variance is the family

    p(b; theta, sigma2) = exp((b theta - psi(theta)) / sigma2) p1(b, sigma2)

where ``psi`` is the conjugate of ``Phi`` and only the first ``K`` derivatives
of ``psi`` are guaranteed to exist on the whole canonical domain.
"""

from __future__ import annotations

import functools
import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, NamedTuple

import numpy as np
from scipy import integrate, optimize, special

from ._util import as_float_array, unwrap
from .divergence import bregman, extended_argmin
from .domains import NEG, POS, REALS, Branch, DomainInterval
from .exceptions import DomainError, QuadratureFailure
from .extfun import exp_ext
from .legendre import LegendrePair, eta, legendre_pair
from .rational import ExponentClass, as_exponent, classify_exponent, signed_power

INF = math.inf

LEBESGUE = "lebesgue"
COUNTING = "counting"


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

def _is_even(beta: Fraction) -> bool:
    return classify_exponent(beta) is ExponentClass.EVEN


def cumulant_order(beta) -> int | float:
    """Number ``K`` of cumulants defined on the whole canonical domain.

    ``math.inf`` for ``beta <= 1`` and ``beta == 2``; ``floor(beta/(beta-1))``
    for ``beta`` in ``(1, 2)`` within ``R_e``; ``1`` for ``beta > 2`` in ``R_e``.

    Raises
    ------
    DomainError
        When ``beta > 1`` is not in ``R_e``: no Legendre cumulant function exists.
    """
    beta = as_exponent(beta)
    if beta <= 1 or beta == 2:
        return INF
    if not _is_even(beta):
        raise DomainError(f"no K-LED exists for beta={beta}: beta > 1 requires R_e")
    if beta > 2:
        return 1
    return math.floor(beta / (beta - 1))


def cumulant_domain(beta, k: int) -> tuple[DomainInterval, ...]:
    """Natural domain of ``grad^k Psi`` as a tuple of alternatives.

    Two entries mean a mirror pair (positive and negative region); an empty
    tuple means the derivative has no Legendre-compatible domain.
    """
    beta = as_exponent(beta)
    if k < 1:
        raise ValueError("k must be >= 1")
    if beta == 1:
        return (REALS,)
    if beta < 1:
        if beta != 0 and _is_even(beta):
            return (NEG, POS)
        return (NEG,)
    if not _is_even(beta):
        return ()
    h = 1 / (beta - 1) - (k - 1)
    if h >= 0:
        return (REALS,)
    return (POS, NEG)


_DASH = "-"


def _join(labels) -> str:
    return "/".join(labels)


@dataclass(frozen=True)
class KledRow:
    """One characterization row: names, support and every domain as text."""

    beta: Fraction
    exists: bool
    name: str
    support: str
    dom_phi: str
    dom_psi: str
    dom_grad: str
    dom_hess: str
    dom_order: str
    tweedie_dom_psi: str
    K: int | float | None
    order: int | None

    def as_tuple(self) -> tuple[str, ...]:
        return (self.name, self.support, self.dom_phi, self.dom_psi, self.dom_grad,
                self.dom_hess, self.dom_order, self.tweedie_dom_psi)


def _branches(beta: Fraction) -> list[Branch]:
    if beta < 1 and beta != 0 and _is_even(beta):
        return [Branch.POSITIVE, Branch.NEGATIVE]
    return [Branch.POSITIVE]


def _distribution_name(beta: Fraction) -> str:
    if beta == 2:
        return "Gaussian"
    if beta == 1:
        return "Poisson"
    if 0 < beta < 1:
        return "Compound Poisson-Gamma"
    if beta == 0:
        return "Gamma"
    if beta == -1:
        return "Inverse Gaussian"
    if beta < 0:
        return "Positive stable"
    return _DASH


def _support_label(beta: Fraction) -> str:
    if beta > 1:
        return "R"
    if beta == 1:
        return "Z+"
    if beta > 0:
        return "R+"
    return "R++"


def _derivative_label(beta: Fraction, k: int, K) -> str:
    """Domain of ``grad^k Psi`` restricted to the K-LED (``-`` when absent)."""
    if beta > 1:
        if k > K or eta(k, beta) == 0:
            return _DASH
        return _join(d.label for d in cumulant_domain(beta, k))
    pairs = [legendre_pair(beta, br) for br in _branches(beta)]
    if beta == 1:
        return "R"
    return _join(p.dom_psi.interior.label for p in pairs)


def kled_classification(beta, order: int | None = None) -> KledRow:
    """Characterization row for ``beta``.

    Parameters
    ----------
    beta : rational-like
    order : int, optional
        The order ``K`` shown in the ``grad^K Psi`` column.  Defaults to the
        cumulant order when finite and to 3 otherwise.  Orders above the
        cumulant order, or where the derivative vanishes identically, show
        ``-``.
    """
    beta = as_exponent(beta)
    try:
        K = cumulant_order(beta)
    except DomainError:
        return KledRow(beta, False, _DASH, _DASH, _DASH, _DASH, _DASH, _DASH, _DASH, _DASH,
                       None, order)
    if order is None:
        order = K if K != INF else 3
    pairs = [legendre_pair(beta, br) for br in _branches(beta)]
    dom_phi = _join(p.dom_phi.label for p in pairs)
    dom_psi = _join(p.dom_psi.label for p in pairs)
    dom_grad = _derivative_label(beta, 1, K)
    dom_hess = _derivative_label(beta, 2, K) if K >= 2 else _DASH
    if order < 2 or (beta > 1 and (order > K or eta(order, beta) == 0)):
        dom_order = _DASH
    else:
        dom_order = _derivative_label(beta, order, K)
    tweedie = dom_psi if (beta <= 1 or beta == 2) else _DASH
    return KledRow(beta, True, _distribution_name(beta), _support_label(beta), dom_phi,
                   dom_psi, dom_grad, dom_hess, dom_order, tweedie, K, order)


# ---------------------------------------------------------------------------
# model
# ---------------------------------------------------------------------------

class FitResult(NamedTuple):
    theta: float
    mean: float
    variance: float
    boundary: bool


@dataclass(frozen=True)
class ScaledCumulant:
    """``psi_1(t) = psi(sigma2 t) / sigma2`` for the additive parameterization ``t = theta / sigma2``."""

    pair: LegendrePair
    sigma2: float

    def value(self, t):
        return unwrap(as_float_array(self.pair.psi(self.sigma2 * as_float_array(t))) / self.sigma2)

    def grad(self, t):
        return self.pair.grad_psi(self.sigma2 * as_float_array(t))

    def hess(self, t):
        return unwrap(self.sigma2 * as_float_array(self.pair.hess_psi(self.sigma2 * as_float_array(t))))


@dataclass(frozen=True)
class KledModel:
    """Power-variance K-LED model.

    Parameters
    ----------
    beta : rational-like
        Exponent; ``beta > 1`` must lie in ``R_e``.
    sigma2 : float
        Dispersion, strictly positive.
    branch : {"pos", "neg"}
        Sign region of the data; only meaningful for ``beta < 1`` in ``R_e``.
    measure : {"lebesgue", "counting"}, optional
        Dominating measure.  Defaults to counting measure on the non-negative
        integers for ``beta == 1`` and to Lebesgue measure on ``dom Phi``
        otherwise.  For ``0 < beta < 1`` the classic atom at zero is not
        represented.
    """

    beta: Fraction
    sigma2: float = 1.0
    branch: Branch = Branch.POSITIVE
    measure: str | None = None
    pair: LegendrePair = field(init=False, repr=False)
    K: int | float = field(init=False)
    _cache: dict = field(init=False, repr=False, compare=False, default_factory=dict)
    _lock: threading.Lock = field(init=False, repr=False, compare=False,
                                  default_factory=threading.Lock)

    def __post_init__(self):
        beta = as_exponent(self.beta)
        if not (self.sigma2 > 0 and math.isfinite(self.sigma2)):
            raise DomainError("sigma2 must be positive and finite")
        pair = legendre_pair(beta, self.branch)
        measure = self.measure or (COUNTING if beta == 1 else LEBESGUE)
        if measure not in (LEBESGUE, COUNTING):
            raise ValueError(f"unknown measure {measure!r}")
        if measure == COUNTING and pair.dom_phi.lower != 0:
            raise DomainError("counting measure needs a non-negative support")
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "sigma2", float(self.sigma2))
        object.__setattr__(self, "branch", pair.branch)
        object.__setattr__(self, "measure", measure)
        object.__setattr__(self, "pair", pair)
        object.__setattr__(self, "K", cumulant_order(beta))

    def __reduce__(self):
        # The lock and cache are rebuilt rather than pickled.
        return type(self), (self.beta, self.sigma2, self.branch, self.measure)

    # -- domains -----------------------------------------------------------
    @property
    def support(self) -> DomainInterval:
        return self.pair.dom_phi

    @property
    def canonical_domain(self) -> DomainInterval:
        return self.pair.dom_psi

    def _check_support(self, b, integer: bool = True):
        b = as_float_array(b)
        if not self.support.contains_all(b):
            raise DomainError(f"observation outside support {self.support.label}")
        if integer and self.measure == COUNTING and np.any(b != np.round(b)):
            raise DomainError("counting measure requires integer observations")
        return b

    # -- cumulants ---------------------------------------------------------
    def cumulant(self, theta):
        """Cumulant function: the exact conjugate of ``Phi``."""
        return unwrap(as_float_array(self.pair.psi(theta)) + self.pair.conjugate_offset)

    def mean(self, theta):
        return self.pair.grad_psi(theta)

    def kth_cumulant(self, theta, k: int):
        """``grad^k Psi(theta) = eta(k, beta) [(beta - 1) theta] ** (1/(beta-1) - (k-1))``.

        Orders whose coefficient ``eta`` vanishes return zero; otherwise ``k``
        above the cumulant order raises :class:`DomainError`.
        """
        if k < 1:
            raise ValueError("k must be >= 1")
        if k == 1:
            return self.mean(theta)
        if self.beta != 1 and eta(k, self.beta) == 0:
            t = as_float_array(theta)
            if not self.canonical_domain.interior.contains_all(t):
                raise DomainError("theta outside the interior of dom Psi")
            return unwrap(np.zeros_like(t))
        if k > self.K:
            raise DomainError(f"order {k} exceeds the cumulant order K={self.K}")
        return self.pair.psi_derivative(theta, k)

    def scaled_cumulant(self, theta, k: int):
        """k-th cumulant of ``b`` itself: ``sigma2 ** (k-1) * grad^k Psi(theta)``."""
        return unwrap(self.sigma2 ** (k - 1) * as_float_array(self.kth_cumulant(theta, k)))

    def variance(self, theta):
        return self.scaled_cumulant(theta, 2)

    def degenerate_at(self, theta: float) -> bool:
        """True when both the mean and the second cumulant vanish at ``theta``."""
        theta = float(theta)
        if not self.canonical_domain.contains(theta):
            raise DomainError(f"theta={theta} outside {self.canonical_domain.label}")
        if not self.canonical_domain.interior.contains(theta) or self.K < 2:
            return False
        try:
            return self.mean(theta) == 0.0 and self.kth_cumulant(theta, 2) == 0.0
        except DomainError:
            return False

    def reparameterize_additive(self, theta):
        """Return ``(theta / sigma2, psi_1)`` with ``psi_1(t) = psi(sigma2 t) / sigma2``."""
        return unwrap(as_float_array(theta) / self.sigma2), ScaledCumulant(self.pair, self.sigma2)

    # -- densities ---------------------------------------------------------
    def log_density_unnormalized(self, b, theta):
        """``(b theta - psi(theta) - Phi(b)) / sigma2``, i.e. ``-d_Phi(b; theta) / sigma2``."""
        b = self._check_support(b)
        theta = as_float_array(theta)
        val = b * theta - as_float_array(self.cumulant(theta)) - as_float_array(self.pair.phi(b))
        return unwrap(val / self.sigma2)

    def _log_weight(self, theta: float, log_carrier):
        s2 = self.sigma2
        phi = self.pair.phi
        if log_carrier is None:
            def weight(b):
                return (b * theta - as_float_array(phi(b))) / s2
        else:
            def weight(b):
                return b * theta / s2 + as_float_array(log_carrier(b))
        return weight

    def log_normalizer(self, theta: float, log_carrier: Callable | None = None) -> float:
        """``log Z(theta) = log int exp(b theta / sigma2 + log p1(b)) nu(db)``.

        ``log_carrier`` gives ``log p1``; by default ``-Phi(b) / sigma2``.
        Returns ``+inf`` when the integral (or series) diverges.
        """
        theta = float(theta)
        if not self.canonical_domain.contains(theta):
            raise DomainError(f"theta={theta} outside {self.canonical_domain.label}")
        key = theta
        if log_carrier is None:
            with self._lock:
                if key in self._cache:
                    return self._cache[key]
        weight = self._log_weight(theta, log_carrier)
        if self.measure == COUNTING:
            value = _log_series(weight)
        else:
            value = _log_integral(weight, self.support)
        if log_carrier is None:
            with self._lock:
                self._cache[key] = value
        return value

    def normalize(self, theta: float, log_carrier: Callable | None = None) -> float:
        """Partition function ``Z(theta)``; ``+inf`` signals a non-normalizable weight."""
        with np.errstate(over="ignore"):
            return float(np.exp(self.log_normalizer(theta, log_carrier)))

    # -- estimation --------------------------------------------------------
    def mle_theta(self, observations) -> float:
        """Closed-form maximum-likelihood estimate ``ln_{2-beta}(mean(observations))``.

        Boundary sample means map to ``+inf`` or ``-inf``.
        """
        return self.fit(observations).theta

    def fit(self, observations) -> FitResult:
        """Closed-form fit; only the sample mean matters, so integrality is not enforced."""
        b = self._check_support(np.ravel(as_float_array(observations)), integer=False)
        if b.size == 0:
            raise DomainError("no observations")
        b_avg = float(b.mean())
        theta = float(extended_argmin(self.pair, b_avg))
        boundary = not self.support.interior.contains(b_avg)
        variance = math.nan
        if self.K >= 2:
            try:
                variance = self.sigma2 * float(signed_power(b_avg, 2 - self.beta))
            except DomainError:
                variance = math.inf
        return FitResult(theta, b_avg, variance, boundary)

    def empirical_divergence(self, observations, theta):
        """Mean canonical divergence ``d_Phi(b_i; theta)`` over the observations."""
        b = self._check_support(np.ravel(as_float_array(observations)), integer=False)
        theta = as_float_array(theta)
        cum = as_float_array(self.cumulant(theta))
        return unwrap(float(np.mean(self.pair.phi(b))) + cum - float(b.mean()) * theta)


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------

_DROP = 40.0
_TAIL_MARGIN = 1e-3


def _safe(weight, x):
    with np.errstate(all="ignore"):
        try:
            v = as_float_array(weight(as_float_array(x)))
        except DomainError:
            return np.full(np.shape(x), -np.inf)
    return np.where(np.isnan(v), -np.inf, v)


def _tail_exponent(weight, anchor, direction, small):
    """Slope of the log-weight against ``log|b - anchor|`` at far (or near) distances."""
    if small:
        d1, d2 = 1e-10, 1e-12
    else:
        d1, d2 = 1e8, 1e10
    w1, w2 = _safe(weight, anchor + direction * d1), _safe(weight, anchor + direction * d2)
    if np.isneginf(w1) and np.isneginf(w2):
        return -math.inf if not small else math.inf
    return float((w2 - w1) / (math.log(d2) - math.log(d1)))


def _log_integral(weight, dom: DomainInterval) -> float:
    # Tails: a power-law exponent at least -1 at infinity, or at most -1 at a
    # finite endpoint, means the integral diverges.
    if not dom.is_bounded_above:
        anchor = 0.0 if not dom.is_bounded_below else dom.lower
        if _tail_exponent(weight, anchor, 1.0, small=False) >= -1 - _TAIL_MARGIN:
            return math.inf
    if not dom.is_bounded_below:
        anchor = 0.0 if not dom.is_bounded_above else dom.upper
        if _tail_exponent(weight, anchor, -1.0, small=False) >= -1 - _TAIL_MARGIN:
            return math.inf
    for p in dom.boundary:
        direction = 1.0 if p == dom.lower else -1.0
        if _tail_exponent(weight, p, direction, small=True) <= -1 + _TAIL_MARGIN:
            return math.inf

    # Half-lines are mapped onto the whole line by b = anchor + dir * exp(u),
    # which turns integrable endpoint singularities into exponential tails.
    if dom.is_bounded_below or dom.is_bounded_above:
        anchor = dom.lower if dom.is_bounded_below else dom.upper
        direction = 1.0 if dom.is_bounded_below else -1.0

        def g(u):
            u = as_float_array(u)
            return _safe(weight, anchor + direction * np.exp(u)) + u

        grid = np.linspace(-30.0, 30.0, 2401)
    else:
        g = functools.partial(_safe, weight)
        r = np.logspace(-12, 12, 1201)
        grid = np.concatenate([-r[::-1], [0.0], r])
    return _log_integral_line(g, grid)


def _log_integral_line(g, grid) -> float:
    """``log int_R exp(g(x)) dx`` for a unimodal-enough log-integrand ``g``."""
    vals = g(grid)
    i = int(np.argmax(vals))
    if not np.isfinite(vals[i]):
        return -math.inf if np.all(np.isneginf(vals)) else math.inf
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, grid.size - 1)]
    peak = float(grid[i])
    if hi > lo:
        res = optimize.minimize_scalar(lambda x: -float(g(x)), bounds=(lo, hi), method="bounded",
                                       options={"xatol": 1e-12 * max(1.0, abs(hi))})
        if -res.fun >= vals[i]:
            peak = float(res.x)
    top = float(g(peak))

    def integrand(x):
        v = float(g(x)) - top
        # Overflow far out in a tail (e.g. inf - inf) carries no mass.
        return math.exp(v) if v <= 0 or math.isfinite(v) and v < 700 else 0.0

    def edge(direction):
        step = 1e-3 * max(1.0, abs(peak))
        x = peak
        while True:
            x = x + direction * step
            if g(x) < top - _DROP or not math.isfinite(x):
                return x
            step *= 2.0

    left, right = edge(-1.0), edge(1.0)
    total = 0.0
    width = 10.0 * (right - left)
    for lo_, hi_, pts in ((left, right, [peak]), (left - width, left, None),
                          (right, right + width, None)):
        val, err, *rest = integrate.quad(integrand, lo_, hi_, points=pts, epsabs=1e-14,
                                         epsrel=1e-11, limit=500, full_output=1)
        if len(rest) > 1 and err > 1e-8 * max(abs(val), 1e-300) and err > 1e-14:
            raise QuadratureFailure(
                f"quadrature on [{lo_}, {hi_}] did not converge: value={val}, error={err}, "
                f"message={rest[1]!r}")
        total += val
    if total <= 0:
        raise QuadratureFailure(f"non-positive integral {total} around peak {peak}")
    return top + math.log(total)


def _log_series(weight, chunk: int = 4096, cap: int = 10**6) -> float:
    """``log sum_{k>=0} exp(weight(k))`` evaluated in log space."""
    terms = []
    best = -math.inf
    start = 0
    while start < cap:
        k = np.arange(start, start + chunk, dtype=float)
        w = _safe(weight, k)
        terms.append(special.logsumexp(w))
        best = max(best, float(w.max()))
        if w[-1] < best - _DROP and np.all(np.diff(w[-16:]) < 0):
            return float(special.logsumexp(terms))
        start += chunk
    return math.inf


# ---------------------------------------------------------------------------
# closed-form helpers
# ---------------------------------------------------------------------------

def density_levy(b, sigma2: float = 1.0):
    """Inverse-Gaussian boundary density at ``theta = 0`` (a Levy law).

    ``(2 pi sigma2 b**3) ** -0.5 * exp(-1 / (2 sigma2 b))`` for ``b > 0``.
    """
    if sigma2 <= 0:
        raise DomainError("sigma2 must be positive")
    b = as_float_array(b)
    if np.any(~(b > 0)):
        raise DomainError("Levy density requires b > 0")
    return unwrap((2 * math.pi * sigma2 * b**3) ** -0.5 * np.exp(-1.0 / (2 * sigma2 * b)))


def curve_extended_normal(b_fixed: float, beta, sigma2: float, mu_grid) -> np.ndarray:
    """Extended normal curve ``exp(-D_Psi(b | mu) / sigma2)`` as a function of ``mu``.

    Returns an ``(n, 2)`` array of ``(mu, value)`` rows.  ``beta`` must lie in
    ``(1, inf)`` within ``R_e`` so that ``Psi`` lives on the whole line.
    """
    beta = as_exponent(beta)
    if not (beta > 1 and _is_even(beta)):
        raise DomainError("extended normal curves need beta > 1 in R_e")
    pair = legendre_pair(beta)
    mu = as_float_array(mu_grid).ravel()
    d = as_float_array(bregman(pair, np.full_like(mu, b_fixed), mu, side="psi"))
    return np.column_stack([mu, np.exp(-d / sigma2)])
