"""Gaussian primes, the unit/(1+i)/O^I factorization, gcds and the G-set."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import isqrt
from typing import Iterable, Optional

from .gaussian import (
    ONE,
    ONE_PLUS_I,
    ZERO,
    GaussianError,
    GaussianInt,
    divrem,
    normalize_odd_to_OI,
    unit,
)


def factor_int(n: int) -> dict[int, int]:
    """Trial-division factorization of a positive rational integer."""
    if n < 1:
        raise ValueError("factor_int expects a positive integer")
    r = isqrt(n)
    if r > 1 and r * r == n:
        # norms of squares are squares: factor the root instead
        return {q: 2 * e for q, e in factor_int(r).items()}
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_rational_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def is_gaussian_prime(z: GaussianInt) -> bool:
    if not z:
        raise GaussianError("zero has no primality")
    if z.is_unit():
        raise GaussianError(f"{z} is a unit")
    if is_rational_prime(z.norm()):
        return True
    # associates of a rational prime q = 3 mod 4 lie on the axes
    if z.re == 0 or z.im == 0:
        q = abs(z.re + z.im)
        return q % 4 == 3 and is_rational_prime(q)
    return False


def gcd_euclidean(z: GaussianInt, w: GaussianInt) -> GaussianInt:
    """Euclidean algorithm with :func:`divrem`; the result is not normalized."""
    if not z and not w:
        raise GaussianError("gcd(0, 0) is undefined")
    while w:
        z, w = w, divrem(z, w)[1]
    return z


def sqrt_minus_one_mod(q: int) -> int:
    """A square root of -1 modulo a prime q = 1 mod 4."""
    c = 2
    while pow(c, (q - 1) // 2, q) != q - 1:
        c += 1
    return pow(c, (q - 1) // 4, q)


@lru_cache(maxsize=4096)
def split_prime(q: int) -> tuple[GaussianInt, GaussianInt]:
    """The two O^I primes above a rational prime q = 1 mod 4, sorted."""
    s = sqrt_minus_one_mod(q)
    pi = gcd_euclidean(GaussianInt(q), GaussianInt(s, 1))
    a = normalize_odd_to_OI(pi)[1]
    b = normalize_odd_to_OI(pi.conj())[1]
    return tuple(sorted((a, b), key=GaussianInt.sort_key))  # type: ignore[return-value]


@dataclass(frozen=True)
class CanonicalFactorization:
    """``i**unit_exp * (1+i)**ramified_exp * prod(p**e)`` with every p prime in O^I."""

    unit_exp: int = 0
    ramified_exp: int = 0
    odd_factors: tuple[tuple[GaussianInt, int], ...] = field(default=())

    def __post_init__(self) -> None:
        if not 0 <= self.unit_exp <= 3:
            raise GaussianError("unit_exp must lie in 0..3")
        if self.ramified_exp < 0 or any(e <= 0 for _, e in self.odd_factors):
            raise GaussianError("exponents must be positive")
        keys = [p.sort_key() for p, _ in self.odd_factors]
        if keys != sorted(set(keys)):
            raise GaussianError("odd factors must be distinct and sorted")

    @classmethod
    def from_parts(
        cls, unit_exp: int, ramified_exp: int, factors: Iterable[tuple[GaussianInt, int]]
    ) -> "CanonicalFactorization":
        merged: dict[GaussianInt, int] = {}
        for p, e in factors:
            merged[p] = merged.get(p, 0) + e
        items = sorted(((p, e) for p, e in merged.items() if e), key=lambda pe: pe[0].sort_key())
        return cls(unit_exp % 4, ramified_exp, tuple(items))

    def value(self) -> GaussianInt:
        z = unit(self.unit_exp) * ONE_PLUS_I**self.ramified_exp
        for p, e in self.odd_factors:
            z = z * p**e
        return z

    def primes(self) -> list[tuple[GaussianInt, int]]:
        """All prime blocks, (1+i) first when present."""
        head = [(ONE_PLUS_I, self.ramified_exp)] if self.ramified_exp else []
        return head + list(self.odd_factors)

    @property
    def num_primes(self) -> int:
        return len(self.odd_factors) + (1 if self.ramified_exp else 0)

    def without_unit(self) -> "CanonicalFactorization":
        return CanonicalFactorization(0, self.ramified_exp, self.odd_factors)

    def __mul__(self, other: "CanonicalFactorization") -> "CanonicalFactorization":
        return CanonicalFactorization.from_parts(
            self.unit_exp + other.unit_exp,
            self.ramified_exp + other.ramified_exp,
            list(self.odd_factors) + list(other.odd_factors),
        )

    def is_square(self) -> bool:
        return (
            self.unit_exp % 2 == 0
            and self.ramified_exp % 2 == 0
            and all(e % 2 == 0 for _, e in self.odd_factors)
        )

    def half(self) -> "CanonicalFactorization":
        """Factorization of the square root; requires :meth:`is_square`."""
        if not self.is_square():
            raise GaussianError("not a perfect square")
        return CanonicalFactorization(
            self.unit_exp // 2,
            self.ramified_exp // 2,
            tuple((p, e // 2) for p, e in self.odd_factors),
        )

    def to_json(self) -> dict:
        return {
            "unit_exp": self.unit_exp,
            "one_plus_i_exp": self.ramified_exp,
            "factors": [[str(p), e] for p, e in self.odd_factors],
        }

    def __str__(self) -> str:
        parts = [f"i^{self.unit_exp}", f"(1+i)^{self.ramified_exp}"]
        parts += [f"({p})^{e}" for p, e in self.odd_factors]
        return " * ".join(parts)


def factor(z: GaussianInt) -> CanonicalFactorization:
    """Factor ``z`` as a unit power times (1+i) power times O^I primes.

    N(z) is factored over Z by trial division; each q = 1 mod 4 is split via
    a square root of -1 mod q, q = 3 mod 4 stays inert and 2 contributes the
    ramified prime.
    """
    if not z:
        raise GaussianError("cannot factor zero")
    rest = z
    ramified = 0
    odd: list[tuple[GaussianInt, int]] = []
    for q, e in sorted(factor_int(z.norm()).items()):
        if q == 2:
            for _ in range(e):
                rest = rest.exact_div(ONE_PLUS_I)
            ramified = e
        elif q % 4 == 3:
            # exponent of q in N(z) is even: q**(e/2) divides z
            p = GaussianInt(-q)
            for _ in range(e // 2):
                rest = rest.exact_div(p)
            odd.append((p, e // 2))
        else:
            for p in split_prime(q):
                k = 0
                while p.divides(rest):
                    rest = rest.exact_div(p)
                    k += 1
                if k:
                    odd.append((p, k))
    if not rest.is_unit():
        raise AssertionError(f"factorization of {z} left cofactor {rest}")
    n = next(k for k in range(4) if unit(k) == rest)
    return CanonicalFactorization.from_parts(n, ramified, odd)


def gcd_canonical(z: GaussianInt, w: GaussianInt) -> CanonicalFactorization:
    """Exponent-wise minimum of the two factorizations, unit exponent included."""
    if not z or not w:
        raise GaussianError("gcd_canonical needs nonzero arguments")
    fz, fw = factor(z), factor(w)
    dz, dw = dict(fz.odd_factors), dict(fw.odd_factors)
    common = [(p, min(e, dw[p])) for p, e in dz.items() if p in dw]
    return CanonicalFactorization.from_parts(
        min(fz.unit_exp, fw.unit_exp), min(fz.ramified_exp, fw.ramified_exp), common
    )


def are_associates(z: GaussianInt, w: GaussianInt) -> bool:
    return any(z == w * unit(k) for k in range(4))


def is_unit_gcd(*values: GaussianInt) -> bool:
    """True when the gcd of ``values`` (folded with :func:`gcd_euclidean`) is a unit."""
    g = ZERO
    for v in values:
        if v:
            g = gcd_euclidean(g, v) if g else v
    return bool(g) and g.is_unit()


@dataclass(frozen=True)
class GMembership:
    value: GaussianInt
    witness: CanonicalFactorization


def is_in_G(z: GaussianInt) -> Optional[GMembership]:
    """Witness that z lies in the G-set (zero unit exponent), else None."""
    f = factor(z)
    if f.unit_exp != 0:
        return None
    return GMembership(z, f)


def in_G(z: GaussianInt) -> bool:
    return bool(z) and is_in_G(z) is not None


def to_G(z: GaussianInt) -> GaussianInt:
    """The unique associate of a nonzero z that lies in G."""
    return z * unit(-factor(z).unit_exp)


def gaussian_sqrt(z: GaussianInt) -> Optional[GaussianInt]:
    """A square root of z, or None when z is not a perfect square."""
    if not z:
        return ZERO
    n = z.norm()
    if isqrt(n) ** 2 != n:
        return None
    f = factor(z)
    return f.half().value() if f.is_square() else None


def sqrt_in_G(z: GaussianInt) -> Optional[GaussianInt]:
    """The square root inside G of a faithful square, else None.

    z must have unit exponent 0 and only even exponents.
    """
    if not z:
        return None
    f = factor(z)
    if f.unit_exp != 0 or not f.is_square():
        return None
    return f.half().value()


def divisors(f: CanonicalFactorization) -> list[GaussianInt]:
    """All divisors of ``f.value()``, every associate included."""
    out = [ONE]
    for p, e in f.primes():
        out = [d * p**k for d in out for k in range(e + 1)]
    return [d * u for d in out for u in (unit(0), unit(1), unit(2), unit(3))]
