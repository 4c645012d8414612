"""Coprime solutions of XY = k V**2 over G, and the unit rotation that puts a
solution pair back into G."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .factorization import (
    CanonicalFactorization,
    divisors,
    factor,
    gcd_euclidean,
    in_G,
    is_unit_gcd,
)
from .gaussian import ONE, GaussianError, GaussianInt, unit


@dataclass(frozen=True)
class MordellInstance:
    k: GaussianInt
    V: GaussianInt

    def __post_init__(self) -> None:
        if not self.k or not self.V:
            raise GaussianError("kV must be nonzero")
        if not in_G(self.k) or not in_G(self.V):
            raise GaussianError("k and V must lie in G")
        if not gcd_euclidean(self.k, self.V).is_unit():
            raise GaussianError("gcd(k, V) must be a unit")

    @property
    def rhs(self) -> GaussianInt:
        return self.k * self.V * self.V


@dataclass(frozen=True)
class MordellSolution:
    t: int
    k1: GaussianInt
    k2: GaussianInt
    P: GaussianInt
    Q: GaussianInt

    @property
    def X(self) -> GaussianInt:
        return unit(self.t) * self.k1 * self.P * self.P

    @property
    def Y(self) -> GaussianInt:
        return unit(-self.t) * self.k2 * self.Q * self.Q

    def to_json(self) -> dict:
        return {
            "t": self.t,
            "k1": str(self.k1),
            "k2": str(self.k2),
            "P": str(self.P),
            "Q": str(self.Q),
            "X": str(self.X),
            "Y": str(self.Y),
        }


def _splittings(f: CanonicalFactorization) -> list[tuple[GaussianInt, GaussianInt]]:
    # each prime power goes wholly to one side
    blocks = [p**e for p, e in f.primes()]
    out = []
    for mask in itertools.product((0, 1), repeat=len(blocks)):
        left, right = ONE, ONE
        for side, b in zip(mask, blocks):
            if side:
                right = right * b
            else:
                left = left * b
        out.append((left, right))
    return out


def mordell_solutions(inst: MordellInstance) -> list[MordellSolution]:
    """Every solution of ``XY = kV**2`` with ``gcd(X, Y)`` a unit.

    Solutions are ``X = i**t k1 P**2``, ``Y = i**-t k2 Q**2`` over the
    coprime splittings ``k = k1 k2``, ``V = PQ`` and t in 0..3.
    """
    k_split = _splittings(factor(inst.k))
    v_split = _splittings(factor(inst.V))
    sols = [
        MordellSolution(t, k1, k2, P, Q)
        for t in range(4)
        for k1, k2 in k_split
        for P, Q in v_split
    ]
    sols.sort(key=lambda s: (s.t, str(s.k1), str(s.P)))
    return sols


def verify_mordell(X: GaussianInt, Y: GaussianInt, inst: MordellInstance) -> bool:
    return X * Y == inst.rhs and is_unit_gcd(X, Y)


def mordell_normalize(X0: GaussianInt, Y0: GaussianInt) -> int:
    """The n in 0..3 with ``i**n X0`` and ``i**-n Y0`` both in G."""
    if not X0 or not Y0:
        raise GaussianError("Mordell pair must be nonzero")
    for n in range(4):
        if in_G(unit(n) * X0) and in_G(unit(-n) * Y0):
            return n
    raise GaussianError(f"({X0}, {Y0}) cannot be rotated into G")


def brute_force_pairs(inst: MordellInstance) -> set[tuple[GaussianInt, GaussianInt]]:
    """Reference enumeration: all divisor pairs of kV**2 with unit gcd."""
    rhs = inst.rhs
    out = set()
    for X in divisors(factor(rhs)):
        Y = rhs.exact_div(X)
        if gcd_euclidean(X, Y).is_unit():
            out.add((X, Y))
    return out
