"""Extended exponential and logarithmic functions.

For an exponent ``beta`` the pair is

    exp_{2-beta}(x) = exp(x)                           if beta == 1
                    = ((beta - 1) x) ** (1 / (beta - 1))  otherwise

    ln_{2-beta}(x)  = ln(x)                            if beta == 1
                    = x ** (beta - 1) / (beta - 1)        otherwise

with powers of negative bases resolved by :func:`kled.rational.signed_power`.
The two are mutually inverse on the reduced domains returned by
:func:`domain_exp` and :func:`domain_log`.

The raw forms ``exp_{2-beta,c}`` and ``ln_{2-beta,c}`` keep the constant
``c > 0`` explicit; they differ from the reduced forms by a shift of the
argument (exp) or of the value (log) by :func:`shift_constant`.
"""

from __future__ import annotations

import math

import numpy as np

from ._util import as_float_array, unwrap
from .domains import NEG, NONNEG, POS, REALS, Branch, DomainInterval
from .exceptions import DomainError
from .rational import ExponentClass, as_exponent, classify_exponent, signed_power


def domain_exp(beta, branch=None) -> DomainInterval:
    """Reduced domain of ``exp_{2-beta}``."""
    beta = as_exponent(beta)
    branch = Branch.coerce(branch)
    even = classify_exponent(beta) is ExponentClass.EVEN
    if beta == 1:
        return REALS
    if beta > 1:
        return REALS if even else NONNEG
    if even and branch is Branch.NEGATIVE:
        return POS
    return NEG


def domain_log(beta, branch=None) -> DomainInterval:
    """Reduced domain of ``ln_{2-beta}``; the image of :func:`domain_exp`."""
    beta = as_exponent(beta)
    branch = Branch.coerce(branch)
    even = classify_exponent(beta) is ExponentClass.EVEN
    if beta == 1:
        return POS
    if beta > 1:
        return REALS if even else NONNEG
    if even and branch is Branch.NEGATIVE:
        return NEG
    return POS


def shift_constant(beta, c: float = 1.0) -> float:
    """``c_{2-beta} = c**(beta-1) / (1-beta)``; ``-ln c`` when ``beta == 1``.

    ``exp_ext_raw(x) == exp_ext(x - shift_constant(beta, c))`` in both cases.
    """
    beta = as_exponent(beta)
    if c <= 0:
        raise DomainError("c must be positive")
    if beta == 1:
        return -math.log(c)
    return c ** float(beta - 1) / float(1 - beta)


def _power_limit(base_sign: float, r) -> float:
    """Limit of ``t**r`` as the base tends to 0 with the given sign."""
    if r > 0:
        return 0.0
    if r == 0:
        return 1.0
    if classify_exponent(r) is ExponentClass.ODD:
        return math.copysign(math.inf, base_sign)
    return math.inf


def _approach_sign(dom: DomainInterval, point: float) -> float:
    # +1 when the interior lies to the right of the boundary point.
    return 1.0 if point == dom.lower else -1.0


def _evaluate(x, dom, fn, limit, extended, name):
    x = as_float_array(x)
    inside = dom.contains(x)
    edge = np.zeros_like(inside)
    if extended:
        edge = ~inside & dom.closure.contains(x)
    bad = ~(inside | edge)
    if np.any(bad):
        first = x[bad].flat[0] if x.ndim else float(x)
        raise DomainError(f"{name}: {first!r} outside domain {dom.label}")
    out = np.empty_like(x)
    if np.any(inside):
        out[inside] = fn(x[inside])
    if np.any(edge):
        for idx in zip(*np.nonzero(edge)) if x.ndim else [()]:
            out[idx] = limit(float(x[idx]))
    return unwrap(out)


def exp_ext(x, beta, branch=None, *, extended: bool = False):
    """Extended exponential ``exp_{2-beta}(x)``.

    With ``extended=True``, finite boundary points of the domain that are not
    themselves in it return the one-sided limit (``0`` or ``+-inf``) instead
    of raising.
    """
    beta = as_exponent(beta)
    dom = domain_exp(beta, branch)
    if beta == 1:
        return _evaluate(x, dom, np.exp, lambda p: 0.0, extended, "exp_ext")
    inv = 1 / (beta - 1)

    def fn(v):
        return signed_power(float(beta - 1) * v, inv)

    def limit(p):
        side = _approach_sign(dom, p)
        return _power_limit(float(beta - 1) * side, inv)

    return _evaluate(x, dom, fn, limit, extended, "exp_ext")


def log_ext(x, beta, branch=None, *, extended: bool = False):
    """Extended logarithm ``ln_{2-beta}(x)``, inverse of :func:`exp_ext`.

    ``extended=True`` maps boundary points such as ``x = 0`` to their
    one-sided limits, e.g. ``-inf`` for ``beta <= 1`` on the positive region.
    """
    beta = as_exponent(beta)
    dom = domain_log(beta, branch)
    if beta == 1:
        return _evaluate(x, dom, np.log, lambda p: -math.inf, extended, "log_ext")
    r = beta - 1

    def fn(v):
        return signed_power(v, r) / float(r)

    def limit(p):
        side = _approach_sign(dom, p)
        value = _power_limit(side, r)
        return value / float(r) if value != 0 else 0.0

    return _evaluate(x, dom, fn, limit, extended, "log_ext")


def exp_ext_raw(x, beta, c: float = 1.0, branch=None, *, extended: bool = False):
    """Raw extended exponential ``(c**(beta-1) + (beta-1) x) ** (1/(beta-1))``.

    ``beta == 1`` gives ``c * exp(x)``.  Equivalently ``exp_ext(x - c_{2-beta})``
    with the shift from :func:`shift_constant`; ``extended`` has the same
    meaning as in :func:`exp_ext`.
    """
    beta = as_exponent(beta)
    if c <= 0:
        raise DomainError("c must be positive")
    if beta == 1:
        return unwrap(c * np.exp(as_float_array(x)))
    try:
        return exp_ext(as_float_array(x) - shift_constant(beta, c), beta, branch, extended=extended)
    except DomainError:
        raise DomainError("exp_ext_raw: argument outside the shifted domain") from None


def log_ext_raw(x, beta, c: float = 1.0, branch=None):
    """Raw extended logarithm ``(x**(beta-1) - c**(beta-1)) / (beta-1)``.

    ``beta == 1`` gives ``ln(x) - ln(c)``.  Inverse of :func:`exp_ext_raw`.
    """
    beta = as_exponent(beta)
    if c <= 0:
        raise DomainError("c must be positive")
    dom = domain_log(beta, branch)
    x = as_float_array(x)
    if not dom.contains_all(x):
        raise DomainError(f"log_ext_raw: argument outside {dom.label}")
    if beta == 1:
        return unwrap(np.log(x) - math.log(c))
    r = beta - 1
    return unwrap((as_float_array(signed_power(x, r)) - c ** float(r)) / float(r))
