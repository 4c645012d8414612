"""The four ternary quadratic families over Z[i].

Original forms (all with XYZ != 0 and unit gcd):

    A    X^2 +       Y^2 +       Z^2 = 0
    B1   X^2 +      iY^2 +       Z^2 = 0,  Y exactly divisible by (1+i)
    B2   X^2 +      iY^2 +       Z^2 = 0,  (1+i)^2 | Y
    C+-  X^2 + (1+-i)Y^2 +       Z^2 = 0
    D    X^2 +      iY^2 + (1+i) Z^2 = 0

Each family reduces, by rotating coordinates with units, to a canonical
equation whose odd coordinates lie in O^I and whose even coordinate lies in
G.  For A, B1, B2 and C the canonical solutions are parametrized by
``(t, P, Q)``; for D only a parametric subfamily is known, together with its
reduction to the system ``x - y = u + v, xy = iuv``.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

from .factorization import (
    factor,
    gaussian_sqrt,
    in_G,
    is_unit_gcd,
    sqrt_in_G,
    to_G,
)
from .gaussian import (
    I,
    ONE,
    ONE_PLUS_I,
    GaussianError,
    GaussianInt,
    is_even,
    is_OI,
    normalize_odd_to_OI,
    ramified_valuation,
    unit,
)
from .mordell import mordell_normalize

TWO_I = ONE_PLUS_I * ONE_PLUS_I  # (1+i)^2
ONE_MINUS_I = GaussianInt(1, -1)


class UnsupportedFamily(GaussianError):
    pass


class Family(enum.Enum):
    A = "A"
    B1 = "B1"
    B2 = "B2"
    CPLUS = "C+"
    CMINUS = "C-"
    D = "D"

    @classmethod
    def parse(cls, text: str) -> "Family":
        aliases = {"CPLUS": "C+", "CMINUS": "C-", "C(1+I)": "C+", "C(1-I)": "C-"}
        key = text.strip().upper().replace("−", "-")
        try:
            return cls(aliases.get(key, key))
        except ValueError:
            raise GaussianError(f"unknown family {text!r}") from None

    @property
    def coefficients(self) -> tuple[GaussianInt, GaussianInt]:
        """Coefficients of Y^2 and Z^2 in the original form."""
        return _COEFFS[self]

    @property
    def is_C(self) -> bool:
        return self in (Family.CPLUS, Family.CMINUS)

    @property
    def c(self) -> GaussianInt:
        """The 1+-i coefficient of the C families."""
        if self is Family.CPLUS:
            return ONE_PLUS_I
        if self is Family.CMINUS:
            return ONE_MINUS_I
        raise AttributeError(f"family {self.value} has no 1+-i coefficient")

    def __str__(self) -> str:
        return self.value


_COEFFS = {
    Family.A: (ONE, ONE),
    Family.B1: (I, ONE),
    Family.B2: (I, ONE),
    Family.CPLUS: (ONE_PLUS_I, ONE),
    Family.CMINUS: (ONE_MINUS_I, ONE),
    Family.D: (I, ONE_PLUS_I),
}

PARAMETRIZED = (Family.A, Family.B1, Family.B2, Family.CPLUS, Family.CMINUS)


@dataclass(frozen=True)
class Triple:
    X: GaussianInt
    Y: GaussianInt
    Z: GaussianInt

    def __iter__(self):
        return iter((self.X, self.Y, self.Z))

    def __getitem__(self, i: int) -> GaussianInt:
        return (self.X, self.Y, self.Z)[i]

    @cached_property
    def primitive(self) -> bool:
        return is_unit_gcd(self.X, self.Y, self.Z)

    def nonzero(self) -> bool:
        return bool(self.X) and bool(self.Y) and bool(self.Z)

    def scale(self, k: GaussianInt) -> "Triple":
        return Triple(self.X * k, self.Y * k, self.Z * k)

    def sort_key(self) -> tuple:
        return tuple((c.re, c.im) for c in self)

    def to_json(self) -> dict:
        return {"X": str(self.X), "Y": str(self.Y), "Z": str(self.Z), "primitive": self.primitive}

    def __str__(self) -> str:
        return f"{self.X}, {self.Y}, {self.Z}"


@dataclass(frozen=True)
class FamilyParams:
    """Seed ``(t, P, Q)`` of a parametric solution; ``sign`` is used by B1 only."""

    t: int
    P: GaussianInt
    Q: GaussianInt
    sign: Optional[int] = None

    def to_json(self) -> dict:
        out = {"t": self.t, "P": str(self.P), "Q": str(self.Q)}
        if self.sign is not None:
            out["sign"] = "+" if self.sign > 0 else "-"
        return out


@dataclass(frozen=True)
class CanonicalCertificate:
    """How a canonical triple maps back onto the reduced input.

    Canonical coordinate ``j`` came from input coordinate ``perm[j]`` and
    ``input[perm[j]] == i**units[j] * canonical[j]``.  ``global_unit`` is the
    unit exponent of the reference coordinate (the even one, or X for D).
    """

    perm: tuple[int, int, int]
    units: tuple[int, int, int]
    global_unit: int
    sign: Optional[int] = None

    def apply(self, canonical: Triple) -> Triple:
        out: list[Optional[GaussianInt]] = [None, None, None]
        for j, src in enumerate(self.perm):
            out[src] = unit(self.units[j]) * canonical[j]
        return Triple(*out)  # type: ignore[arg-type]

    def to_json(self) -> dict:
        out = {"perm": list(self.perm), "units": list(self.units), "global_unit": self.global_unit}
        if self.sign is not None:
            out["sign"] = "+" if self.sign > 0 else "-"
        return out


# -- evaluating the forms ---------------------------------------------------


def original_form(family: Family, T: Triple) -> GaussianInt:
    cy, cz = family.coefficients
    return T.X * T.X + cy * T.Y * T.Y + cz * T.Z * T.Z


def canonical_form(family: Family, T: Triple, sign: int = 1) -> GaussianInt:
    """Left minus right side of the family's canonical equation."""
    X2, Y2, Z2 = T.X * T.X, T.Y * T.Y, T.Z * T.Z
    if family is Family.A:
        return X2 + Y2 - Z2
    if family is Family.B1:
        return X2 + Z2 - I * Y2 * sign
    if family is Family.B2:
        return X2 + I * Y2 - Z2
    if family.is_C:
        return X2 + family.c * Y2 - Z2
    return X2 + I * Y2 - ONE_PLUS_I * Z2


def _b_case_ok(family: Family, Y: GaussianInt) -> bool:
    if family is Family.B1:
        return is_even(Y) and not TWO_I.divides(Y)
    if family is Family.B2:
        return TWO_I.divides(Y)
    return True


def b1_sign(T: Triple) -> Optional[int]:
    """Which of X^2+Z^2 = +iY^2 or -iY^2 the triple satisfies."""
    for s in (1, -1):
        if not canonical_form(Family.B1, T, s):
            return s
    return None


def check_solution(
    family: Family, T: Triple, canonical: bool = False, sign: Optional[int] = None
) -> bool:
    """Exact check of the original (or canonical) form with XYZ != 0.

    For B1/B2 the Y divisibility case is part of the family.  A canonical B1
    check with ``sign=None`` accepts either sign.
    """
    if not T.nonzero() or not _b_case_ok(family, T.Y):
        return False
    if not canonical:
        return not original_form(family, T)
    if family is Family.B1 and sign is None:
        return b1_sign(T) is not None
    return not canonical_form(family, T, 1 if sign is None else sign)


# -- divisibility lemmas and reduction -----------------------------------


def lift_to_original(family: Family, T: Triple) -> tuple[Triple, tuple[int, int, int]]:
    """Rotate a solution of either form into a solution of the original form.

    Returns the rotated triple and the unit exponents applied per coordinate;
    raises GaussianError when T solves neither form.
    """
    if check_solution(family, T):
        return T, (0, 0, 0)
    if family is Family.B1:
        # X^2 + Z^2 = iY^2  ->  (X, iY, Z); the minus sign is the original form
        extra = (0, 1, 0) if b1_sign(T) == 1 and check_solution(family, T, canonical=True) else None
    else:
        extra = (0, 0, 1) if check_solution(family, T, canonical=True) else None
    if extra is None:
        raise GaussianError(f"({T}) is not a solution of family {family}")
    return Triple(*(c * unit(e) for c, e in zip(T, extra))), extra


def _require_primitive_solution(family: Family, T: Triple) -> None:
    lift_to_original(family, T)
    if not T.primitive:
        raise GaussianError(f"({T}) is not primitive")


def _even_index(family: Family, T: Triple) -> Optional[int]:
    evens = [j for j, c in enumerate(T) if is_even(c)]
    if family is Family.D:
        return None if not evens else -1
    if family is Family.A:
        return evens[0] if len(evens) == 1 else -1
    return 1 if evens == [1] else -1


def divisibility_profile(family: Family, T: Triple) -> bool:
    """Whether a primitive solution has the (1+i)-divisibility pattern its
    family's lemma requires.

    A: exactly one coordinate even, divisible by (1+i)^2 (the form is
    symmetric, so it need not be Y).  B1/B2: exactly Y even.  C: exactly Y
    even, with (1+i)^2 | Y.  D: all coordinates odd.
    """
    _require_primitive_solution(family, T)
    j = _even_index(family, T)
    if family is Family.D:
        return j is None
    if j is None or j < 0:
        return False
    if family in (Family.A, Family.CPLUS, Family.CMINUS):
        return ramified_valuation(T[j]) >= 2
    return True


def valuations(T: Triple) -> list[int]:
    return [ramified_valuation(c) if c else -1 for c in T]


def _arranged(family: Family, T: Triple) -> tuple[int, int, int]:
    """Input indices in (odd, middle, odd) order; the even coordinate in the middle."""
    if family is Family.A:
        j = _even_index(family, T)
        rest = [k for k in range(3) if k != j]
        return (rest[0], j, rest[1])  # type: ignore[return-value]
    return (0, 1, 2)


def parity_exponents(family: Family, T: Triple) -> tuple[int, int, int]:
    """Unit exponents (m, n, l) of the arranged coordinates.

    Odd coordinates are written ``i**m * a`` with a in O^I; the even
    coordinate of A-C is written ``i**n * b`` with b in G.
    """
    a, b, c = (T[k] for k in _arranged(family, T))
    m = normalize_odd_to_OI(a)[0]
    l = normalize_odd_to_OI(c)[0]
    n = normalize_odd_to_OI(b)[0] if family is Family.D else factor(b).unit_exp
    return m, n, l


def parity_lemma_holds(family: Family, T: Triple) -> bool:
    m, n, l = parity_exponents(family, T)
    if family is Family.B1:
        return (m + l) % 2 == 0
    if family is Family.D:
        return (m + l) % 2 == 1 and (n + l) % 2 == 1
    return (m + l) % 2 == 1


def reduce_to_canonical(family: Family, T: Triple) -> tuple[Triple, CanonicalCertificate]:
    """Rotate a primitive solution into its family's canonical form.

    The input may solve the original form or the canonical equation; in the
    second case it is first lifted to the original form.
    """
    if not divisibility_profile(family, T):
        raise GaussianError(f"({T}) violates the divisibility lemma of family {family}")
    lifted, extra = lift_to_original(family, T)
    canon, cert = _reduce_original(family, lifted)
    units = tuple((u - extra[src]) % 4 for u, src in zip(cert.units, cert.perm))
    return canon, CanonicalCertificate(cert.perm, units, cert.global_unit, cert.sign)  # type: ignore[arg-type]


def _reduce_original(family: Family, T: Triple) -> tuple[Triple, CanonicalCertificate]:
    ia, ib, ic = _arranged(family, T)
    m, a = normalize_odd_to_OI(T[ia])
    l, c = normalize_odd_to_OI(T[ic])
    sign = None
    if family is Family.D:
        n, b = normalize_odd_to_OI(T[ib])
        perm, units = (ia, ib, ic), (m, n, l)
        canon = Triple(a, b, c)
        global_unit = m
    else:
        n = factor(T[ib]).unit_exp
        b = T[ib] * unit(-n)
        global_unit = n
        if family is Family.B1:
            # m = l mod 2; the odd pair stays in place
            sign = -1 if (n - m) % 2 == 0 else 1
            perm, units = (ia, ib, ic), (m, n, l)
            canon = Triple(a, b, c)
        elif (m - n) % 2 == 0:
            perm, units = (ia, ib, ic), (m, n, l)
            canon = Triple(a, b, c)
        else:
            perm, units = (ic, ib, ia), (l, n, m)
            canon = Triple(c, b, a)
    if not check_solution(family, canon, canonical=True, sign=sign):
        raise GaussianError(f"({T}) does not reduce to the canonical form of {family}")
    return canon, CanonicalCertificate(perm, units, global_unit, sign)


def is_canonical(family: Family, T: Triple) -> bool:
    """Membership conditions of a canonical triple (equation not checked)."""
    if not T.nonzero():
        return False
    if family is Family.D:
        return all(is_OI(c) for c in T)
    if not (is_OI(T.X) and is_OI(T.Z) and in_G(T.Y)):
        return False
    v = ramified_valuation(T.Y)
    return v == 1 if family is Family.B1 else v >= 2


# -- parametric solutions --------------------------------------------------


def validate_params(family: Family, params: FamilyParams) -> None:
    P, Q = params.P, params.Q
    if not 0 <= params.t <= 3:
        raise GaussianError("t must lie in 0..3")
    if not P or not Q:
        raise GaussianError("P and Q must be nonzero")
    if not in_G(P) or not in_G(Q):
        raise GaussianError("P and Q must lie in G")
    if not is_unit_gcd(P, Q):
        raise GaussianError("gcd(P, Q) must be a unit")
    if family is Family.B1:
        if params.sign not in (1, -1):
            raise GaussianError("family B1 needs an explicit sign")
        if is_even(P) or is_even(Q):
            raise GaussianError("family B1 needs P and Q odd")
    elif family in (Family.A, Family.B2):
        if not is_even(P * Q):
            raise GaussianError("PQ must be divisible by 1+i")
    elif family.is_C:
        if is_even(P):
            raise GaussianError("gcd(P, (1+i)Q) must be a unit")
    elif family is Family.D:
        if not is_even(Q):
            raise GaussianError("Q must be divisible by 1+i")


def generate(family: Family, params: FamilyParams) -> Triple:
    """The parametric solution of the family's canonical equation."""
    validate_params(family, params)
    t, P, Q = params.t, params.P, params.Q
    P2, Q2, PQ = P * P, Q * Q, P * Q
    s = 1 if t % 2 == 0 else -1  # (-1)^t
    rot = unit(t + 1)
    if family is Family.A:
        return Triple(rot * (P2 - Q2 * s), TWO_I * PQ, rot * (P2 + Q2 * s))
    if family is Family.B1:
        s1 = s * params.sign  # type: ignore[operator]
        X = (rot * (P2 + I * Q2 * s1)).exact_div(ONE_PLUS_I)
        Z = (unit(t) * (P2 - I * Q2 * s1)).exact_div(ONE_PLUS_I)
        return Triple(X, ONE_PLUS_I * PQ, Z)
    if family is Family.B2:
        return Triple(rot * (P2 - I * Q2 * s), TWO_I * PQ, rot * (P2 + I * Q2 * s))
    if family.is_C:
        cQ2 = family.c * Q2
        return Triple(rot * (P2 - cQ2 * s), TWO_I * PQ, rot * (P2 + cQ2 * s))
    w = ONE_PLUS_I * I * Q2
    return Triple(
        P2 - w,
        P2 - 2 * ONE_PLUS_I * PQ + w,
        P2 - 2 * I * PQ + w,
    )


def _recovery_quotients(
    family: Family, T: Triple, sign: Optional[int]
) -> tuple[GaussianInt, GaussianInt]:
    # (y0, x0) with y0 = i^t P^2 and x0 = i^-t Q^2
    X, Z = T.X, T.Z
    if family is Family.B1:
        return (X + I * Z).exact_div(ONE_PLUS_I), (X - I * Z).exact_div(-ONE_MINUS_I * sign)
    y0 = (Z + X).exact_div(TWO_I)
    if family is Family.A:
        return y0, (Z - X).exact_div(TWO_I)
    if family is Family.B2:
        return y0, (Z - X).exact_div(I * TWO_I)
    return y0, (Z - X).exact_div(family.c * TWO_I)


def param_recover(family: Family, T: Triple, sign: Optional[int] = None) -> FamilyParams:
    """Invert :func:`generate` on a solution of the canonical equation.

    The quotient pair of the triple is a coprime Mordell pair whose product
    is (PQ)^2; the unit rotation putting it into G fixes t, and P, Q are the
    square roots inside G.
    """
    if family is Family.D:
        raise UnsupportedFamily("family D has no complete parametrization")
    if family is Family.B1 and sign is None:
        sign = b1_sign(T)
    if not check_solution(family, T, canonical=True, sign=sign):
        raise GaussianError(f"({T}) does not solve the canonical equation of {family}")
    y0, x0 = _recovery_quotients(family, T, sign)
    n = mordell_normalize(y0, x0)
    P = sqrt_in_G(y0 * unit(n))
    Q = sqrt_in_G(x0 * unit(-n))
    if P is None or Q is None:
        raise GaussianError(f"({T}): quotients are not faithful squares in G")
    params = FamilyParams((-n) % 4, P, Q, sign if family is Family.B1 else None)
    if generate(family, params) != T:
        raise GaussianError(f"({T}) is not in the image of the parametrization")
    return params


def sample_params(
    family: Family, rng: random.Random, max_norm: int = 10_000, sign: Optional[int] = None
) -> FamilyParams:
    """Draw random valid params with N(P), N(Q) <= max_norm."""
    r = int(max_norm**0.5)
    while True:
        P = GaussianInt(rng.randint(-r, r), rng.randint(-r, r))
        Q = GaussianInt(rng.randint(-r, r), rng.randint(-r, r))
        if not P or not Q or P.norm() > max_norm or Q.norm() > max_norm:
            continue
        P, Q = to_G(P), to_G(Q)
        t = 0 if family is Family.D else rng.randrange(4)
        s = None
        if family is Family.B1:
            s = sign if sign is not None else rng.choice((1, -1))
        params = FamilyParams(t, P, Q, s)
        try:
            validate_params(family, params)
        except GaussianError:
            continue
        return params


# -- family D and the quadratic system ---------------------------------------


@dataclass(frozen=True)
class SystemSolution:
    """Solution of ``x - y = u + v``, ``xy = iuv`` with unit gcds and uv even."""

    x: GaussianInt
    y: GaussianInt
    u: GaussianInt
    v: GaussianInt

    def violations(self) -> list[str]:
        bad = []
        if self.x - self.y != self.u + self.v:
            bad.append("x - y != u + v")
        if self.x * self.y != I * self.u * self.v:
            bad.append("xy != iuv")
        if not is_unit_gcd(self.x, self.y):
            bad.append("gcd(x, y) not a unit")
        if not is_unit_gcd(self.u, self.v):
            bad.append("gcd(u, v) not a unit")
        if not is_even(self.u * self.v):
            bad.append("uv not divisible by 1+i")
        return bad

    def to_json(self) -> dict:
        return {k: str(getattr(self, k)) for k in ("x", "y", "u", "v")}


def system_from_D(T: Triple) -> SystemSolution:
    """``(x, y, u, v) = ((X+Z)/2, (X-Z)/2, (Z+Y)/2, (Z-Y)/2)``."""
    if not T.nonzero() or any(is_even(c) for c in T):
        raise GaussianError("system_from_D needs three odd coordinates")
    if canonical_form(Family.D, T):
        raise GaussianError(f"({T}) does not solve X^2 + iY^2 = (1+i)Z^2")
    X, Y, Z = T
    sys = SystemSolution(
        (X + Z).exact_div(2), (X - Z).exact_div(2), (Z + Y).exact_div(2), (Z - Y).exact_div(2)
    )
    if bad := sys.violations():
        raise GaussianError("; ".join(bad))
    return sys


def D_from_system(sys: SystemSolution) -> Triple:
    if bad := sys.violations():
        raise GaussianError("; ".join(bad))
    return Triple(sys.x + sys.y, sys.u - sys.v, sys.x - sys.y)


def system_from_params(P: GaussianInt, Q: GaussianInt) -> SystemSolution:
    """Parametric system solution: x = P^2 - iPQ, y = (1-i)Q^2 + iPQ,
    u = P^2 - (1-i)Q^2 - (2i+1)PQ, v = PQ."""
    _check_disc_params(P, Q)
    PQ, P2, Q2 = P * Q, P * P, Q * Q
    return SystemSolution(
        P2 - I * PQ,
        ONE_MINUS_I * Q2 + I * PQ,
        P2 - ONE_MINUS_I * Q2 - GaussianInt(1, 2) * PQ,
        PQ,
    )


def _check_disc_params(P: GaussianInt, Q: GaussianInt) -> None:
    if not P or not Q or not in_G(P) or not in_G(Q):
        raise GaussianError("P and Q must be nonzero elements of G")
    if not is_unit_gcd(P, Q):
        raise GaussianError("gcd(P, Q) must be a unit")
    if not is_even(Q):
        raise GaussianError("Q must be divisible by 1+i")


def discriminant_params(P: GaussianInt, Q: GaussianInt) -> tuple[GaussianInt, GaussianInt, GaussianInt]:
    """``(disc, u, v)`` with disc^2 = (u+v)^2 + 4iuv."""
    _check_disc_params(P, Q)
    P2, Q2, PQ = P * P, Q * Q, P * Q
    disc = P2 + ONE_MINUS_I * Q2
    u = P2 - ONE_MINUS_I * Q2 - GaussianInt(1, 2) * PQ
    return disc, u, PQ


def quadratic_discriminant(u: GaussianInt, v: GaussianInt) -> GaussianInt:
    s = u + v
    return s * s + 4 * I * u * v


def quadratic_root_solutions(u: GaussianInt, v: GaussianInt) -> list[tuple[GaussianInt, GaussianInt]]:
    """Solutions (x, y) of the system for fixed (u, v) via the roots of
    ``z^2 - (u+v)z - iuv``; empty when the discriminant is not a square.

    The O^I square root of the discriminant is used first, then its negative.
    """
    s = u + v
    if not is_unit_gcd(u, v):
        raise GaussianError("gcd(u, v) must be a unit")
    if not s or not is_OI(s) or not is_even(u * v):
        raise GaussianError("need u + v in O^I and uv divisible by 1+i")
    root = gaussian_sqrt(quadratic_discriminant(u, v))
    if root is None:
        return []
    if root and not is_OI(root):
        root = -root
    out = []
    for d in (root, -root):
        pair = ((s + d).exact_div(2), (d - s).exact_div(2))
        if pair not in out:
            out.append(pair)
    return out


def match_D(T: Triple) -> Optional[tuple[FamilyParams, Triple]]:
    """Find G-params whose parametric D solution is a unit rotation of ``T``.

    Returns the params and the rotated triple they generate, or None.
    """
    for a in range(4):
        for b in range(a % 2, 4, 2):
            for c in range(a % 2, 4, 2):
                R = Triple(T.X * unit(a), T.Y * unit(b), T.Z * unit(c))
                try:
                    sys = system_from_D(R)
                except GaussianError:
                    continue
                P = sqrt_in_G(sys.x + I * sys.v)
                if P is None or not ONE_MINUS_I.divides(sys.y - I * sys.v):
                    continue
                Q = sqrt_in_G((sys.y - I * sys.v).exact_div(ONE_MINUS_I))
                if Q is None:
                    continue
                params = FamilyParams(0, P, Q)
                try:
                    if generate(Family.D, params) == R:
                        return params, R
                except GaussianError:
                    continue
    return None
