"""Brute-force enumeration of primitive solutions in a coordinate box.

The enumerator only evaluates the original forms and gcds; it never touches
the parametrizations, so it can serve as ground truth for them.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Optional

from .factorization import is_unit_gcd
from .families import (
    PARAMETRIZED,
    Family,
    Triple,
    check_solution,
    divisibility_profile,
    generate,
    is_canonical,
    match_D,
    param_recover,
    parity_lemma_holds,
    reduce_to_canonical,
)
from .gaussian import GaussianError, GaussianInt

THREADS_ENV = "GAUSS_DIOPH_THREADS"


@dataclass(frozen=True)
class SearchBox:
    bound: int

    def __post_init__(self) -> None:
        if self.bound < 1:
            raise ValueError("bound must be >= 1")

    def contains(self, z: GaussianInt) -> bool:
        return abs(z.re) <= self.bound and abs(z.im) <= self.bound

    def elements(self) -> list[GaussianInt]:
        r = range(-self.bound, self.bound + 1)
        return [GaussianInt(a, b) for a in r for b in r]


def exact_sqrt(w: GaussianInt) -> Optional[GaussianInt]:
    """A square root of w computed from components, or None.

    From (x+yi)^2 = a+bi: x^2 = (a + |w|)/2, y^2 = (|w| - a)/2.
    """
    a, b = w.re, w.im
    n = a * a + b * b
    r = math.isqrt(n)
    if r * r != n or (r + a) % 2:
        return None
    x2, y2 = (r + a) // 2, (r - a) // 2
    x, y = math.isqrt(x2), math.isqrt(y2)
    if x * x != x2 or y * y != y2:
        return None
    if 2 * x * y != abs(b):
        return None
    return GaussianInt(x, y if b >= 0 else -y)


def _in_family(family: Family, T: Triple) -> bool:
    # definition only: original form, XYZ != 0, unit gcd, B1/B2 case split
    return check_solution(family, T) and is_unit_gcd(*T)


def _scan(family: Family, bound: int, ys: list[GaussianInt]) -> list[Triple]:
    box = SearchBox(bound)
    zs = box.elements()
    cy, cz = family.coefficients
    found = []
    for Y in ys:
        if not Y:
            continue
        yterm = cy * Y * Y
        for Z in zs:
            if not Z:
                continue
            root = exact_sqrt(-(yterm + cz * Z * Z))
            if root is None or not root or not box.contains(root):
                continue
            for X in (root, -root):
                T = Triple(X, Y, Z)
                if _in_family(family, T):
                    found.append(T)
    return found


def default_workers() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def enumerate_primitive(
    family: Family, box: SearchBox, workers: Optional[int] = None
) -> list[Triple]:
    """All primitive solutions of the family's original form inside ``box``.

    X is solved from (Y, Z) by an exact square root, so the scan is over
    (Y, Z) only; the result is sorted by coordinates.
    """
    workers = default_workers() if workers is None else workers
    ys = box.elements()
    if workers <= 1 or box.bound < 4:
        found = _scan(family, box.bound, ys)
    else:
        chunks = [ys[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(_scan, [family] * workers, [box.bound] * workers, chunks)
            found = [T for part in parts for T in part]
    return sorted(set(found), key=Triple.sort_key)


def naive_enumerate(family: Family, box: SearchBox) -> list[Triple]:
    """Six-fold loop over the box; only practical for bound <= 2."""
    els = [z for z in box.elements() if z]
    found = [Triple(X, Y, Z) for X, Y, Z in product(els, repeat=3) if _in_family(family, Triple(X, Y, Z))]
    return sorted(found, key=Triple.sort_key)


@dataclass
class CrossCheckReport:
    family: Family
    bound: int
    total: int = 0
    matched: int = 0
    unmatched: list[Triple] = field(default_factory=list)
    # unmatched solutions whose canonical triple is generated after a sign flip
    sign_twins: list[Triple] = field(default_factory=list)
    failures: list[tuple[Triple, str]] = field(default_factory=list)

    @property
    def hard_failure(self) -> bool:
        if self.failures:
            return True
        return self.family in PARAMETRIZED and bool(self.unmatched)

    def to_json(self) -> dict:
        return {
            "family": self.family.value,
            "bound": self.bound,
            "total": self.total,
            "matched": self.matched,
            "unmatched": len(self.unmatched),
            "unmatched_triples": [str(T) for T in self.unmatched],
            "sign_twin_matched": len(self.sign_twins),
            "failures": [[str(T), why] for T, why in self.failures],
            "ok": not self.hard_failure,
        }


def _sign_twin_recoverable(family: Family, canon: Triple) -> bool:
    for sx, sz in ((-1, 1), (1, -1), (-1, -1)):
        twin = Triple(canon.X * sx, canon.Y, canon.Z * sz)
        try:
            param_recover(family, twin)
            return True
        except GaussianError:
            continue
    return False


def check_one(family: Family, T: Triple) -> tuple[str, Optional[str]]:
    """Run every claim on one oracle solution.

    Returns ``(status, failure)`` with status one of ``matched``,
    ``sign_twin`` (only a sign flip of the canonical triple is generated),
    ``unmatched`` or ``failed``.
    """
    if not check_solution(family, T):
        return "failed", "not a solution"
    try:
        if not divisibility_profile(family, T):
            return "failed", "divisibility profile"
        if not parity_lemma_holds(family, T):
            return "failed", "parity lemma"
        canon, cert = reduce_to_canonical(family, T)
    except GaussianError as exc:
        return "failed", f"reduction: {exc}"
    if not is_canonical(family, canon):
        return "failed", "canonical memberships"
    if cert.apply(canon) != T:
        return "failed", "certificate"
    if family is Family.D:
        return ("matched" if match_D(canon) is not None else "unmatched"), None
    try:
        params = param_recover(family, canon, cert.sign)
    except GaussianError:
        return ("sign_twin" if _sign_twin_recoverable(family, canon) else "unmatched"), None
    if generate(family, params) != canon:
        return "failed", "generate does not round-trip"
    return "matched", None


def cross_check(family: Family, box: SearchBox, workers: Optional[int] = None) -> CrossCheckReport:
    """Check divisibility, parity, reduction and parametrization claims on
    every primitive solution in the box."""
    report = CrossCheckReport(family, box.bound)
    for T in enumerate_primitive(family, box, workers):
        report.total += 1
        status, failure = check_one(family, T)
        if failure:
            report.failures.append((T, failure))
        elif status == "matched":
            report.matched += 1
        else:
            report.unmatched.append(T)
            if status == "sign_twin":
                report.sign_twins.append(T)
    return report
