"""Real intervals used as effective domains, and the region selector."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from ._util import as_float_array


class Branch(enum.Enum):
    """Which sign region the data (mean) side lives in.

    Only meaningful where an exponent admits two mirror-image Legendre
    domains; elsewhere it is ignored.
    """

    POSITIVE = "pos"
    NEGATIVE = "neg"

    @classmethod
    def coerce(cls, value) -> "Branch":
        if value is None:
            return cls.POSITIVE
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        aliases = {"pos": cls.POSITIVE, "positive": cls.POSITIVE, "+": cls.POSITIVE,
                   "neg": cls.NEGATIVE, "negative": cls.NEGATIVE, "-": cls.NEGATIVE}
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown branch {value!r}; use 'pos' or 'neg'") from None


@dataclass(frozen=True)
class DomainInterval:
    """A (possibly unbounded) interval of the real line."""

    lower: float = -math.inf
    upper: float = math.inf
    lower_closed: bool = False
    upper_closed: bool = False

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError("empty interval")
        if math.isinf(self.lower) and self.lower_closed:
            object.__setattr__(self, "lower_closed", False)
        if math.isinf(self.upper) and self.upper_closed:
            object.__setattr__(self, "upper_closed", False)

    def contains(self, x):
        x = as_float_array(x)
        lo = x >= self.lower if self.lower_closed else x > self.lower
        hi = x <= self.upper if self.upper_closed else x < self.upper
        return lo & hi

    def contains_all(self, x) -> bool:
        return bool(np.all(self.contains(x)))

    def interior_contains(self, x):
        return self.interior.contains(x)

    @property
    def interior(self) -> "DomainInterval":
        return DomainInterval(self.lower, self.upper, False, False)

    @property
    def closure(self) -> "DomainInterval":
        return DomainInterval(self.lower, self.upper,
                              math.isfinite(self.lower), math.isfinite(self.upper))

    @property
    def boundary(self) -> tuple[float, ...]:
        """Finite endpoints, i.e. ``cl \\ int``."""
        return tuple(p for p in (self.lower, self.upper) if math.isfinite(p))

    @property
    def is_open(self) -> bool:
        return not (self.lower_closed or self.upper_closed)

    @property
    def is_bounded_below(self) -> bool:
        return math.isfinite(self.lower)

    @property
    def is_bounded_above(self) -> bool:
        return math.isfinite(self.upper)

    @property
    def label(self) -> str:
        """Short name: ``R``, ``R+``, ``R++``, ``R-``, ``R--`` or interval notation."""
        if math.isinf(self.lower) and math.isinf(self.upper):
            return "R"
        if self.lower == 0 and math.isinf(self.upper):
            return "R+" if self.lower_closed else "R++"
        if self.upper == 0 and math.isinf(self.lower):
            return "R-" if self.upper_closed else "R--"
        left = "[" if self.lower_closed else "("
        right = "]" if self.upper_closed else ")"
        lo = "-inf" if math.isinf(self.lower) else repr(self.lower)
        hi = "+inf" if math.isinf(self.upper) else repr(self.upper)
        return f"{left}{lo}, {hi}{right}"

    def __str__(self) -> str:
        return self.label


REALS = DomainInterval()
NONNEG = DomainInterval(0.0, math.inf, True, False)
POS = DomainInterval(0.0, math.inf, False, False)
NONPOS = DomainInterval(-math.inf, 0.0, False, True)
NEG = DomainInterval(-math.inf, 0.0, False, False)


def below(threshold: float) -> DomainInterval:
    """The open half-line ``(-inf, threshold)``."""
    return DomainInterval(-math.inf, float(threshold), False, False)
