"""Exact arithmetic on the Gaussian integers Z[i].

Besides the ring operations this module holds the unit/associate
normalizations (fundamental domain D, the odd monoid O^I) and the parity
classes E0, EI, O0, OI used throughout the package.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from typing import Union

IntLike = Union[int, "GaussianInt"]


class GaussianError(ValueError):
    """Domain error raised for inputs outside an operation's precondition."""


@dataclass(frozen=True, slots=True)
class GaussianInt:
    re: int
    im: int = 0

    def __post_init__(self) -> None:
        if not isinstance(self.re, int) or not isinstance(self.im, int):
            raise TypeError("GaussianInt components must be int")

    @classmethod
    def coerce(cls, value: IntLike) -> "GaussianInt":
        if isinstance(value, GaussianInt):
            return value
        if isinstance(value, int):
            return cls(value, 0)
        raise TypeError(f"cannot convert {value!r} to GaussianInt")

    # -- ring structure --------------------------------------------------

    def __add__(self, other: IntLike) -> "GaussianInt":
        if isinstance(other, int):
            return GaussianInt(self.re + other, self.im)
        if isinstance(other, GaussianInt):
            return GaussianInt(self.re + other.re, self.im + other.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other: IntLike) -> "GaussianInt":
        if isinstance(other, int):
            return GaussianInt(self.re - other, self.im)
        if isinstance(other, GaussianInt):
            return GaussianInt(self.re - other.re, self.im - other.im)
        return NotImplemented

    def __rsub__(self, other: IntLike) -> "GaussianInt":
        return (-self) + other

    def __mul__(self, other: IntLike) -> "GaussianInt":
        if isinstance(other, int):
            return GaussianInt(self.re * other, self.im * other)
        if isinstance(other, GaussianInt):
            a, b, c, d = self.re, self.im, other.re, other.im
            return GaussianInt(a * c - b * d, a * d + b * c)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self) -> "GaussianInt":
        return GaussianInt(-self.re, -self.im)

    def __pos__(self) -> "GaussianInt":
        return self

    def __pow__(self, exponent: int) -> "GaussianInt":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            raise GaussianError("negative powers are not defined in Z[i]")
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __bool__(self) -> bool:
        return bool(self.re or self.im)

    def __divmod__(self, other: IntLike) -> tuple["GaussianInt", "GaussianInt"]:
        return divrem(self, GaussianInt.coerce(other))

    def __floordiv__(self, other: IntLike) -> "GaussianInt":
        return divrem(self, GaussianInt.coerce(other))[0]

    def __mod__(self, other: IntLike) -> "GaussianInt":
        return divrem(self, GaussianInt.coerce(other))[1]

    def conj(self) -> "GaussianInt":
        return GaussianInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def is_unit(self) -> bool:
        return self.norm() == 1

    def divides(self, other: IntLike) -> bool:
        """True if ``self`` divides ``other`` exactly (0 divides only 0)."""
        other = GaussianInt.coerce(other)
        n = self.norm()
        if n == 0:
            return not other
        p = other * self.conj()
        return p.re % n == 0 and p.im % n == 0

    def exact_div(self, other: IntLike) -> "GaussianInt":
        """Quotient ``self / other``; raises GaussianError unless exact."""
        other = GaussianInt.coerce(other)
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Z[i]")
        p = self * other.conj()
        if p.re % n or p.im % n:
            raise GaussianError(f"{other} does not divide {self}")
        return GaussianInt(p.re // n, p.im // n)

    def sort_key(self) -> tuple[int, int, int]:
        return (self.norm(), self.re, self.im)

    # -- text form -------------------------------------------------------

    def __str__(self) -> str:
        sign = "-" if self.im < 0 else "+"
        return f"{self.re}{sign}{abs(self.im)}i"

    def __repr__(self) -> str:
        return f"GaussianInt({self.re}, {self.im})"


ZERO = GaussianInt(0, 0)
ONE = GaussianInt(1, 0)
I = GaussianInt(0, 1)
ONE_PLUS_I = GaussianInt(1, 1)
UNITS = (ONE, I, GaussianInt(-1, 0), GaussianInt(0, -1))

_FULL = re.compile(r"([+-]?\d+)([+-])(\d*)i")
_IMAG = re.compile(r"([+-]?)(\d*)i")
_REAL = re.compile(r"[+-]?\d+")


def parse(text: str) -> GaussianInt:
    """Parse ``a``, ``bi``, ``a+bi`` or ``a-bi`` (a bare ``i`` means 1i).

    The Unicode minus sign is accepted in place of ``-``.
    """
    s = text.strip().replace("−", "-")
    if m := _REAL.fullmatch(s):
        return GaussianInt(int(s), 0)
    if m := _IMAG.fullmatch(s):
        mag = int(m.group(2)) if m.group(2) else 1
        return GaussianInt(0, -mag if m.group(1) == "-" else mag)
    if m := _FULL.fullmatch(s):
        mag = int(m.group(3)) if m.group(3) else 1
        return GaussianInt(int(m.group(1)), -mag if m.group(2) == "-" else mag)
    raise GaussianError(f"not a Gaussian integer: {text!r}")


def unit(n: int) -> GaussianInt:
    """i**n for any integer n."""
    return UNITS[n % 4]


def _round_half_down(num: int, den: int) -> int:
    # nearest integer to num/den (den > 0), ties toward -infinity
    return -((den - 2 * num) // (2 * den))


def divrem(z: GaussianInt, w: GaussianInt) -> tuple[GaussianInt, GaussianInt]:
    """Euclidean division: ``z = q*w + r`` with ``N(r) <= N(w)/2``.

    Each coordinate of z/w is rounded to the nearest integer, ties toward
    minus infinity, so the result is deterministic.
    """
    n = w.norm()
    if n == 0:
        raise ZeroDivisionError("division by zero in Z[i]")
    p = z * w.conj()
    q = GaussianInt(_round_half_down(p.re, n), _round_half_down(p.im, n))
    return q, z - q * w


# -- parity classes ------------------------------------------------------


class ParityClass(enum.Enum):
    E0 = "E0"
    EI = "EI"
    O0 = "O0"
    OI = "OI"

    @property
    def is_even(self) -> bool:
        return self in (ParityClass.E0, ParityClass.EI)

    def __str__(self) -> str:
        return self.value


def _require_nonzero(z: GaussianInt) -> None:
    if not z:
        raise GaussianError("zero is not classified")


def is_even(z: GaussianInt) -> bool:
    """Divisible by 1+i (zero counts as even)."""
    return (z.re + z.im) % 2 == 0


def classify(z: GaussianInt) -> ParityClass:
    _require_nonzero(z)
    if (z.re + z.im) % 2 == 0:
        return ParityClass.E0 if z.re % 2 == 0 else ParityClass.EI
    return ParityClass.O0 if z.re % 2 == 0 else ParityClass.OI


def ramified_valuation(z: GaussianInt) -> int:
    """Exponent of 1+i in z."""
    _require_nonzero(z)
    k = 0
    while (z.re + z.im) % 2 == 0:
        # z/(1+i) = z(1-i)/2
        z = GaussianInt((z.re + z.im) // 2, (z.im - z.re) // 2)
        k += 1
    return k


def is_OI(z: GaussianInt) -> bool:
    """Odd with real part congruent to 1 mod 4."""
    _require_nonzero(z)
    return (z.re + z.im) % 2 == 1 and z.re % 4 == 1


def is_E0_prime(z: GaussianInt) -> bool:
    """Member of E0 whose rational components have gcd exactly 2."""
    return classify(z) is ParityClass.E0 and math.gcd(z.re, z.im) == 2


def is_E0_dblprime(z: GaussianInt) -> bool:
    """z = (1+i)**2 * beta with beta odd."""
    return ramified_valuation(z) == 2


def in_D(z: GaussianInt) -> bool:
    # -pi/4 < Arg(z) <= pi/4, decided without floating point
    return z.re > 0 and -z.re < z.im <= z.re


def normalize_to_D(z: GaussianInt) -> tuple[int, GaussianInt]:
    """Return ``(n, z')`` with ``z = i**n * z'`` and z' in the fundamental domain."""
    _require_nonzero(z)
    for n in range(4):
        cand = z * unit(-n)
        if in_D(cand):
            return n, cand
    raise AssertionError("unreachable: every nonzero z has an associate in D")


def normalize_odd_to_OI(z: GaussianInt) -> tuple[int, GaussianInt]:
    """Return ``(n, beta)`` with ``z = i**n * beta`` and beta in O^I."""
    if not z or is_even(z):
        raise GaussianError(f"{z} is not odd")
    for n in range(4):
        cand = z * unit(-n)
        if cand.re % 4 == 1:
            return n, cand
    raise AssertionError("unreachable: one associate of an odd z is in O^I")


def square_residues(z: GaussianInt) -> tuple[int, int]:
    """(R(z**2) mod 4, I(z**2) mod 4)."""
    _require_nonzero(z)
    sq = z * z
    return sq.re % 4, sq.im % 4


SQUARE_RESIDUE_TABLE = {
    ParityClass.E0: (0, 0),
    ParityClass.EI: (0, 2),
    ParityClass.O0: (3, 0),
    ParityClass.OI: (1, 0),
}
