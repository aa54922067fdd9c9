"""Conjugate base functions Phi and Psi of the power-variance family.

For an exponent ``beta``

    Phi(x) = -log x              (beta == 0)
           = x log x - x         (beta == 1)
           = x**beta / (beta (beta - 1))   otherwise

    Psi(t) = -log(-t)            (beta == 0)
           = exp(t)              (beta == 1)
           = ((beta - 1) t) ** (beta / (beta - 1)) / beta   otherwise

with ``grad Phi = ln_{2-beta}`` and ``grad Psi = exp_{2-beta}``.  Additive
constants are dropped throughout, so ``Phi`` and ``Psi`` are conjugate up to
a constant (which is ``-1`` at ``beta == 0`` and zero otherwise).

The ``branch`` argument names the sign region of the data (``Phi``) side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ._util import as_float_array, unwrap
from .domains import NEG, NONNEG, NONPOS, POS, REALS, Branch, DomainInterval
from .exceptions import DomainError
from .extfun import exp_ext, log_ext
from .rational import ExponentClass, as_exponent, classify_exponent, signed_power

SIDES = ("phi", "psi")


def _has_dual(beta: Fraction) -> bool:
    # Mirror-image (negative data) domains exist for beta in R_e with beta < 1, beta != 0.
    return beta < 1 and beta != 0 and classify_exponent(beta) is ExponentClass.EVEN


def _resolve(beta, branch, strict: bool = True) -> tuple[Fraction, Branch]:
    beta = as_exponent(beta)
    branch = Branch.coerce(branch)
    if strict and beta > 1 and classify_exponent(beta) is not ExponentClass.EVEN:
        raise DomainError(f"no Legendre pair for beta={beta}: beta > 1 requires R_e")
    if branch is Branch.NEGATIVE and beta < 1 and not _has_dual(beta):
        raise DomainError(f"beta={beta} has no negative-region branch")
    if beta >= 1:
        branch = Branch.POSITIVE
    return beta, branch


def domain_phi(beta, branch=None, strict: bool = True) -> DomainInterval:
    """Effective domain of ``Phi``, openness included.

    With ``strict=False``, exponents ``beta > 1`` outside ``R_e`` get the
    half-line ``R+`` on which the powers are real (the pair is then convex
    but not steep at 0).
    """
    beta, branch = _resolve(beta, branch, strict)
    neg = branch is Branch.NEGATIVE
    if beta > 1:
        return REALS if classify_exponent(beta) is ExponentClass.EVEN else NONNEG
    if beta > 0:
        return NONPOS if neg else NONNEG
    return NEG if neg else POS


def domain_psi(beta, branch=None, strict: bool = True) -> DomainInterval:
    """Effective domain of ``Psi`` (the canonical parameter space)."""
    beta, branch = _resolve(beta, branch, strict)
    neg = branch is Branch.NEGATIVE
    if beta > 1 and classify_exponent(beta) is not ExponentClass.EVEN:
        return NONNEG
    if beta >= 1:
        return REALS
    if beta >= 0:
        return POS if neg else NEG
    return NONNEG if neg else NONPOS


def eta(k: int, beta) -> Fraction:
    """Exact coefficient ``prod_{j=1}^{k-1} (j - (j-1) beta)`` of the k-th derivative of Psi."""
    beta = as_exponent(beta)
    out = Fraction(1)
    for j in range(1, k):
        out *= j - (j - 1) * beta
    return out


def _check(x, dom: DomainInterval, what: str):
    x = as_float_array(x)
    if not dom.contains_all(x):
        raise DomainError(f"{what}: argument outside {dom.label}")
    return x


@dataclass(frozen=True)
class LegendrePair:
    """The pair ``(Phi, Psi)`` for one exponent and sign region.

    Parameters
    ----------
    beta : Fraction
        Exact exponent.
    branch : Branch
        Sign region of the ``Phi`` side.  Ignored unless ``beta < 1`` lies in
        ``R_e`` (and is non-zero), where two mirror-image domains exist.
    strict : bool
        When False, also accept ``beta > 1`` outside ``R_e`` on ``R+``.  Such a
        pair is convex and its gradients are mutually inverse on ``R++``, but
        it is not of Legendre type (see :attr:`is_legendre`).
    """

    beta: Fraction
    branch: Branch = Branch.POSITIVE
    strict: bool = True
    exponent_class: ExponentClass = field(init=False)
    dom_phi: DomainInterval = field(init=False)
    dom_psi: DomainInterval = field(init=False)

    def __post_init__(self):
        beta, branch = _resolve(self.beta, self.branch, self.strict)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "branch", branch)
        object.__setattr__(self, "exponent_class", classify_exponent(beta))
        object.__setattr__(self, "dom_phi", domain_phi(beta, branch, self.strict))
        object.__setattr__(self, "dom_psi", domain_psi(beta, branch, self.strict))

    @property
    def is_legendre(self) -> bool:
        return not (self.beta > 1 and self.exponent_class is not ExponentClass.EVEN)

    # -- Phi -----------------------------------------------------------
    def phi(self, x):
        b = self.beta
        x = _check(x, self.dom_phi, "phi")
        if b == 0:
            return unwrap(-np.log(x))
        if b == 1:
            with np.errstate(divide="ignore", invalid="ignore"):
                out = np.where(x > 0, x * np.log(np.where(x > 0, x, 1.0)), 0.0) - x
            return unwrap(out)
        return unwrap(as_float_array(signed_power(x, b)) / float(b * (b - 1)))

    def grad_phi(self, x):
        _check(x, self.dom_phi.interior, "grad_phi")
        return log_ext(x, self.beta, self.branch)

    def hess_phi(self, x):
        x = _check(x, self.dom_phi.interior, "hess_phi")
        return signed_power(x, self.beta - 2)

    # -- Psi -----------------------------------------------------------
    def psi(self, theta):
        b = self.beta
        t = _check(theta, self.dom_psi, "psi")
        if b == 0:
            return unwrap(-np.log(-t))
        if b == 1:
            return unwrap(np.exp(t))
        return unwrap(as_float_array(signed_power(float(b - 1) * t, b / (b - 1))) / float(b))

    def grad_psi(self, theta):
        _check(theta, self.dom_psi.interior, "grad_psi")
        return exp_ext(theta, self.beta, self._ext_branch)

    def hess_psi(self, theta):
        return self.psi_derivative(theta, 2)

    def psi_derivative(self, theta, k: int):
        """k-th derivative ``eta(k, beta) [(beta-1) theta] ** H`` with ``H = 1/(beta-1) - (k-1)``.

        Raises :class:`DomainError` where the power is undefined, e.g. at
        ``theta = 0`` when ``H < 0``.
        """
        if k < 0 or int(k) != k:
            raise ValueError("derivative order must be a non-negative integer")
        k = int(k)
        if k == 0:
            return self.psi(theta)
        if k == 1:
            return self.grad_psi(theta)
        b = self.beta
        t = _check(theta, self.dom_psi.interior, "psi_derivative")
        if b == 1:
            return unwrap(np.exp(t))
        coef = eta(k, b)
        if coef == 0:
            return unwrap(np.zeros_like(t))
        h = 1 / (b - 1) - (k - 1)
        return unwrap(float(coef) * as_float_array(signed_power(float(b - 1) * t, h)))

    @property
    def _ext_branch(self) -> Branch:
        return self.branch

    # -- conjugacy -------------------------------------------------------
    @property
    def conjugate_offset(self) -> float:
        """Constant ``c`` with ``Phi* = Psi + c`` and ``Psi* = Phi + c``."""
        return -1.0 if self.beta == 0 else 0.0

    def function(self, side: str):
        return {"phi": self.phi, "psi": self.psi}[_side(side)]

    def gradient(self, side: str):
        return {"phi": self.grad_phi, "psi": self.grad_psi}[_side(side)]

    def domain(self, side: str) -> DomainInterval:
        return {"phi": self.dom_phi, "psi": self.dom_psi}[_side(side)]

    def partner(self, side: str) -> str:
        return "psi" if _side(side) == "phi" else "phi"


def _side(side: str) -> str:
    s = str(side).lower()
    if s not in SIDES:
        raise ValueError(f"side must be 'phi' or 'psi', got {side!r}")
    return s


def legendre_pair(beta, branch=None, *, strict: bool = True) -> LegendrePair:
    """Build the pair for ``beta``; raises :class:`DomainError` if none exists.

    ``strict=False`` admits the non-Legendre half-line pairs described in
    :class:`LegendrePair`.
    """
    return LegendrePair(as_exponent(beta), Branch.coerce(branch), strict)


def conjugate_value(pair: LegendrePair, side: str, x):
    """Convex conjugate of ``pair.function(side)`` evaluated at ``x``.

    ``Phi*`` is ``Psi`` and ``Psi*`` is ``Phi`` up to :attr:`LegendrePair.conjugate_offset`,
    so ``x`` must lie in the domain of the partner function.
    """
    other = pair.partner(side)
    return unwrap(as_float_array(pair.function(other)(x)) + pair.conjugate_offset)


@dataclass(frozen=True)
class LegendreReport:
    """Outcome of a grid-based audit of the Legendre-type conditions."""

    side: str
    beta: Fraction
    domain: str
    strictly_convex: bool
    steep: bool
    coercive: bool
    coercive_expected: bool
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.strictly_convex and self.steep and self.coercive == self.coercive_expected


def _interior_grid(dom: DomainInterval, n: int, span: float) -> np.ndarray:
    if not dom.is_bounded_below and not dom.is_bounded_above:
        return np.linspace(-span, span, n)
    if dom.is_bounded_below and dom.is_bounded_above:
        return np.linspace(dom.lower, dom.upper, n + 2)[1:-1]
    anchor = dom.lower if dom.is_bounded_below else dom.upper
    sign = 1.0 if dom.is_bounded_below else -1.0
    return np.sort(anchor + sign * np.logspace(-6, math.log10(span), n))


def verify_legendre(
    pair: LegendrePair,
    side: str = "phi",
    *,
    n: int = 400,
    span: float = 10.0,
    decades: int = 12,
    steep_ratio: float = 0.5,
) -> LegendreReport:
    """Numerically audit strict convexity, steepness and coercivity.

    Parameters
    ----------
    pair : LegendrePair
    side : {"phi", "psi"}
        Which function of the pair to audit.
    n, span : int, float
        Size and half-width of the interior grid used for the convexity test.
    decades : int
        Steepness is probed at distances ``10**-1 ... 10**-decades`` from each
        finite boundary point.
    steep_ratio : float
        The inward directional derivative must keep falling: the drop over the
        last decade has to be at least ``steep_ratio`` times the drop over the
        first.  A gradient with a finite limit has geometrically shrinking
        drops and fails; ``log``-type and power-type blow-ups pass.

    Returns
    -------
    LegendreReport
        Coercivity is compared against the expectation that ``f`` is coercive
        exactly when ``0`` is interior to the domain of its conjugate.
    """
    side = _side(side)
    f = pair.function(side)
    grad = pair.gradient(side)
    dom = pair.domain(side)
    details: dict = {}

    x = _interior_grid(dom, n, span)
    fx = as_float_array(f(x))
    slopes = np.diff(fx) / np.diff(x)
    second = np.diff(slopes)
    details["min_second_difference"] = float(second.min())
    convex = bool(np.all(second > 0))

    steep = True
    t = np.logspace(-1, -decades, decades)
    for p in dom.boundary:
        inward = 1.0 if p == dom.lower else -1.0
        d = inward * as_float_array(grad(p + inward * t))
        drops = -np.diff(d)
        details[f"inward_derivative_at_{p:g}"] = float(d[-1])
        ok = bool(np.all(drops > 0) and drops[-1] >= steep_ratio * drops[0])
        steep = steep and ok

    partner = pair.domain(pair.partner(side))
    expected = bool(partner.interior.contains(0.0))
    observed = True
    for direction, unbounded in ((1.0, not dom.is_bounded_above), (-1.0, not dom.is_bounded_below)):
        if not unbounded:
            continue
        x0 = 0.0 if dom.contains(0.0) and not dom.boundary else (
            dom.lower + 1.0 if dom.is_bounded_below else dom.upper - 1.0)
        f0 = float(f(x0))
        with np.errstate(over="ignore"):
            for radius in (1e2, 1e4):
                s = (float(f(x0 + direction * radius)) - f0) / radius
                details[f"secant_slope_{direction:+g}_{radius:g}"] = s
                observed = observed and s > 0
    return LegendreReport(side, pair.beta, dom.label, convex, steep, observed, expected, details)
