"""Closed subintervals of [0,1] with exact rational endpoints.

All probability values in this package are `fractions.Fraction` instances;
floats are rejected at the boundary so that interval comparisons, minimality
checks, and ranking equalities stay exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

RationalLike = Union[int, str, Fraction]


def as_fraction(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction, or numeric string to an exact Fraction."""
    if isinstance(value, bool):
        raise TypeError(f"not a rational value: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(
        f"expected an exact rational, got {type(value).__name__}: {value!r}"
        " (floats are not accepted; pass a string or Fraction)"
    )


def format_rational(value: Fraction) -> str:
    """Render a Fraction as an exact decimal when possible, else as "p/q"."""
    rest = value.denominator
    twos = fives = 0
    while rest % 2 == 0:
        rest //= 2
        twos += 1
    while rest % 5 == 0:
        rest //= 5
        fives += 1
    if rest != 1:
        return f"{value.numerator}/{value.denominator}"
    places = max(twos, fives)
    if places == 0:
        return str(value.numerator)
    digits = value.numerator * 10**places // value.denominator
    text = str(digits).rjust(places + 1, "0")
    return f"{text[:-places]}.{text[-places:]}"


@dataclass(frozen=True)
class ProbInterval:
    """A closed interval [lower, upper] with 0 <= lower <= upper <= 1."""

    lower: Fraction
    upper: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lower", as_fraction(self.lower))
        object.__setattr__(self, "upper", as_fraction(self.upper))
        if not (0 <= self.lower <= self.upper <= 1):
            raise ValueError(
                f"not a closed subinterval of [0,1]: "
                f"[{self.lower}, {self.upper}]"
            )

    @classmethod
    def point(cls, value: RationalLike) -> "ProbInterval":
        v = as_fraction(value)
        return cls(v, v)

    @property
    def is_point(self) -> bool:
        return self.lower == self.upper

    def __str__(self) -> str:
        return f"[{format_rational(self.lower)},{format_rational(self.upper)}]"


BOTTOM = ProbInterval.point(0)
TOP = ProbInterval.point(1)


def truth_leq(first: ProbInterval, second: ProbInterval) -> bool:
    """Componentwise truth order: both endpoints of `first` at most `second`'s."""
    return first.lower <= second.lower and first.upper <= second.upper


def truth_lt(first: ProbInterval, second: ProbInterval) -> bool:
    """Strict truth order: truth_leq and not equal."""
    return first != second and truth_leq(first, second)
