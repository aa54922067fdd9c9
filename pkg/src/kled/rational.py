"""Exact rational exponents and their parity classes.

Every real exponent that drives a domain decision is carried as a
:class:`fractions.Fraction`.  The reduced form ``p/q`` falls into exactly
one of three classes:

* ``EVEN``  -- ``p`` even, ``q`` odd.  ``x**r`` is defined for ``x < 0`` and is
  non-negative.
* ``ODD``   -- ``p`` odd, ``q`` odd.  ``x**r`` is defined for ``x < 0`` and keeps
  the sign of ``x``.
* ``OTHER`` -- ``q`` even (or no small rational matches a float input).  Only
  non-negative bases are allowed.
"""

from __future__ import annotations

import enum
import math
import numbers
from fractions import Fraction

import numpy as np

from ._util import as_float_array, unwrap
from .exceptions import DomainError

DEFAULT_TOLERANCE = 1e-9
DEFAULT_MAX_DENOMINATOR = 999


class ExponentClass(enum.Enum):
    EVEN = "R_e"
    ODD = "R_o"
    OTHER = "R_x"


def classify_exponent(r) -> ExponentClass:
    """Return the parity class of a rational exponent.

    >>> classify_exponent(Fraction(16, 9))
    <ExponentClass.EVEN: 'R_e'>
    """
    r = Fraction(r)
    if r.denominator % 2 == 0:
        return ExponentClass.OTHER
    if r.numerator % 2 == 0:
        return ExponentClass.EVEN
    return ExponentClass.ODD


def _simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    # Continued-fraction descent; yields the smallest denominator in [lo, hi].
    fl = math.floor(lo)
    if fl == lo:
        return Fraction(fl)
    if fl < math.floor(hi):
        return Fraction(fl + 1)
    return fl + 1 / _simplest_between(1 / (hi - fl), 1 / (lo - fl))


def classify_float(
    x: float,
    tolerance: float = DEFAULT_TOLERANCE,
    max_denominator: int = DEFAULT_MAX_DENOMINATOR,
) -> tuple[Fraction, ExponentClass]:
    """Recover a rational exponent from a floating-point value.

    Parameters
    ----------
    x : float
        Value to classify.
    tolerance : float
        Half-width of the search interval around ``x``.
    max_denominator : int
        Rationals with a larger reduced denominator are ignored.

    Returns
    -------
    (Fraction, ExponentClass)
        The smallest-denominator rational within ``tolerance`` and its class.
        When none exists below the cap, the exact binary value of ``x`` is
        returned; its power-of-two denominator places it in ``OTHER``.
    """
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    if not math.isfinite(x):
        raise DomainError(f"cannot classify non-finite value {x!r}")
    exact = Fraction(x)
    tol = Fraction(tolerance)
    r = _simplest_between(exact - tol, exact + tol)
    if r.denominator > max_denominator:
        r = exact
    return r, classify_exponent(r)


def parse_exponent(text: str, tolerance: float = DEFAULT_TOLERANCE) -> Fraction:
    """Parse ``"p/q"`` exactly; decimal literals go through :func:`classify_float`."""
    s = text.strip()
    if "/" in s:
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {text!r}") from exc
    try:
        return Fraction(int(s))
    except ValueError:
        pass
    try:
        value = float(s)
    except ValueError as exc:
        raise ValueError(f"not a number: {text!r}") from exc
    return classify_float(value, tolerance)[0]


def as_exponent(value) -> Fraction:
    """Coerce ints, strings, floats and fractions to an exact exponent."""
    if isinstance(value, bool):
        raise TypeError("booleans are not exponents")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    if isinstance(value, str):
        return parse_exponent(value)
    if isinstance(value, numbers.Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, numbers.Real):
        return classify_float(float(value))[0]
    raise TypeError(f"cannot interpret {value!r} as an exponent")


def signed_power(x, r, cls: ExponentClass | None = None):
    """Real power ``x**r`` with the sign rules of the exponent class.

    ``EVEN`` gives ``|x|**r``, ``ODD`` gives ``sign(x) * |x|**r`` and ``OTHER``
    requires ``x >= 0``.  A zero base with a negative exponent is rejected;
    tiny non-zero bases overflow to ``inf`` instead.
    """
    r = as_exponent(r)
    if cls is None:
        cls = classify_exponent(r)
    x = as_float_array(x)
    rf = float(r)
    if cls is ExponentClass.OTHER and np.any(x < 0):
        raise DomainError(f"negative base with exponent {r} outside R_e and R_o")
    if rf < 0 and np.any(x == 0):
        raise DomainError(f"zero base with negative exponent {r}")
    with np.errstate(over="ignore"):
        mag = np.abs(x) ** rf
    if cls is ExponentClass.ODD:
        mag = np.copysign(mag, x)
    return unwrap(mag)
