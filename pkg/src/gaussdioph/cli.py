"""Command line interface.

Every command prints a human-readable rendering by default and one JSON
object per line with ``--json``.  Exit status: 0 success, 2 domain or usage
error, 3 cross-check failure.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from typing import Optional, Sequence

from .factorization import factor, gcd_canonical, gcd_euclidean, is_gaussian_prime
from .families import (
    Family,
    FamilyParams,
    Triple,
    check_solution,
    divisibility_profile,
    generate,
    reduce_to_canonical,
    sample_params,
    valuations,
)
from .gaussian import (
    GaussianError,
    classify,
    is_E0_dblprime,
    is_E0_prime,
    is_OI,
    normalize_to_D,
    parse,
    square_residues,
)
from .mordell import MordellInstance, mordell_solutions
from .oracle import SearchBox, cross_check, enumerate_primitive

EXIT_DOMAIN = 2
EXIT_CHECK = 3

_NEGATIVE_GAUSS = re.compile(r"[-−](?:\d+(?:[-+−]\d*i)?|\d*i)")


def _dump(obj: dict) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _sign(text: Optional[str]) -> Optional[int]:
    if text is None:
        return None
    if text not in ("+", "-"):
        raise GaussianError("sign must be + or -")
    return 1 if text == "+" else -1


def _triple(values: Sequence[str]) -> Triple:
    return Triple(*(parse(v) for v in values))


def cmd_classify(args, out) -> int:
    z = parse(args.z)
    cls = classify(z)
    if args.json:
        n, zd = normalize_to_D(z)
        out.write(_dump({
            "z": str(z),
            "class": cls.value,
            "is_OI": is_OI(z),
            "is_E0_prime": is_E0_prime(z),
            "is_E0_dblprime": is_E0_dblprime(z),
            "square_residues": list(square_residues(z)),
            "D": {"n": n, "z": str(zd)},
        }) + "\n")
    else:
        out.write(f"{cls.value}\n")
    return 0


def cmd_factor(args, out) -> int:
    f = factor(parse(args.z))
    out.write((_dump(f.to_json()) if args.json else str(f)) + "\n")
    return 0


def cmd_gcd(args, out) -> int:
    z, w = parse(args.z), parse(args.w)
    canon = gcd_canonical(z, w)
    euclid = gcd_euclidean(z, w)
    if args.json:
        out.write(_dump({"canonical": canon.to_json(), "value": str(canon.value()), "euclidean": str(euclid)}) + "\n")
    else:
        out.write(f"canonical: {canon} = {canon.value()}\neuclidean: {euclid}\n")
    return 0


def cmd_prime(args, out) -> int:
    z = parse(args.z)
    result = is_gaussian_prime(z)
    out.write((_dump({"z": str(z), "prime": result}) if args.json else str(result).lower()) + "\n")
    return 0


def cmd_mordell(args, out) -> int:
    inst = MordellInstance(parse(args.k), parse(args.V))
    for sol in mordell_solutions(inst):
        if args.json:
            out.write(_dump(sol.to_json()) + "\n")
        else:
            out.write(f"t={sol.t} k1={sol.k1} k2={sol.k2} P={sol.P} Q={sol.Q}  X={sol.X} Y={sol.Y}\n")
    return 0


def cmd_solve(args, out) -> int:
    family = Family.parse(args.family)
    if args.random:
        rng = random.Random(args.seed)
        params_list = [sample_params(family, rng, args.max_norm, _sign(args.sign)) for _ in range(args.random)]
    else:
        if args.P is None or args.Q is None:
            raise GaussianError("solve needs --P and --Q (or --random N)")
        params_list = [FamilyParams(args.t, parse(args.P), parse(args.Q), _sign(args.sign))]
    for params in params_list:
        T = generate(family, params)
        if args.json:
            out.write(_dump({"family": family.value, **params.to_json(), **T.to_json()}) + "\n")
        else:
            out.write(f"{T}\n")
    return 0


def cmd_verify(args, out) -> int:
    family = Family.parse(args.family)
    T = _triple(args.triple)
    ok = check_solution(family, T, canonical=args.canonical, sign=_sign(args.sign))
    profile = None
    if ok and T.primitive:
        profile = divisibility_profile(family, T)
    record = {
        "family": family.value,
        **T.to_json(),
        "solution": ok,
        "form": "canonical" if args.canonical else "original",
        "divisibility_profile": profile,
        "valuations": valuations(T),
    }
    if args.json:
        out.write(_dump(record) + "\n")
    else:
        shown = "n/a" if profile is None else str(profile).lower()
        out.write(f"{str(ok).lower()}\ndivisibility profile: {shown} (valuations {record['valuations']})\n")
    return 0


def cmd_reduce(args, out) -> int:
    family = Family.parse(args.family)
    canon, cert = reduce_to_canonical(family, _triple(args.triple))
    if args.json:
        out.write(_dump({"family": family.value, **canon.to_json(), "certificate": cert.to_json()}) + "\n")
    else:
        out.write(f"{canon}\n")
    return 0


def cmd_enumerate(args, out) -> int:
    family = Family.parse(args.family)
    box = SearchBox(args.bound)
    if args.check:
        report = cross_check(family, box, args.workers)
        if args.json:
            out.write(_dump(report.to_json()) + "\n")
        else:
            out.write(
                f"family {family.value} bound {box.bound}: total {report.total}, matched {report.matched}, "
                f"unmatched {len(report.unmatched)} (sign twins {len(report.sign_twins)}), "
                f"failures {len(report.failures)}\n"
            )
            for T in report.unmatched:
                out.write(f"unmatched: {T}\n")
            for T, why in report.failures:
                out.write(f"FAILED: {T}: {why}\n")
        return EXIT_CHECK if report.hard_failure else 0
    for T in enumerate_primitive(family, box, args.workers):
        out.write((_dump({"family": family.value, **T.to_json()}) if args.json else str(T)) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON lines")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized runs")

    parser = argparse.ArgumentParser(prog="gaussdioph", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="parity class of z")
    p.add_argument("z")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("factor", parents=[common], help="canonical factorization")
    p.add_argument("z")
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("gcd", parents=[common], help="canonical and Euclidean gcd")
    p.add_argument("z")
    p.add_argument("w")
    p.set_defaults(func=cmd_gcd)

    p = sub.add_parser("prime", parents=[common], help="Gaussian primality")
    p.add_argument("z")
    p.set_defaults(func=cmd_prime)

    p = sub.add_parser("mordell", parents=[common], help="solutions of XY = kV^2")
    p.add_argument("--k", required=True)
    p.add_argument("--V", required=True)
    p.set_defaults(func=cmd_mordell)

    fam_help = "A, B1, B2, C+, C- or D"
    p = sub.add_parser("solve", parents=[common], help="parametric solution")
    p.add_argument("--family", required=True, help=fam_help)
    p.add_argument("--t", type=int, default=0)
    p.add_argument("--P")
    p.add_argument("--Q")
    p.add_argument("--sign", choices=("+", "-"))
    p.add_argument("--random", type=int, default=0, metavar="N", help="emit N random valid solutions")
    p.add_argument("--max-norm", type=int, default=10_000)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", parents=[common], help="check a triple")
    p.add_argument("--family", required=True, help=fam_help)
    p.add_argument("--triple", nargs=3, required=True, metavar=("X", "Y", "Z"))
    p.add_argument("--canonical", action="store_true", help="check the canonical equation")
    p.add_argument("--sign", choices=("+", "-"))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reduce", parents=[common], help="reduce to canonical form")
    p.add_argument("--family", required=True, help=fam_help)
    p.add_argument("--triple", nargs=3, required=True, metavar=("X", "Y", "Z"))
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("enumerate", parents=[common], help="brute-force primitive solutions")
    p.add_argument("--family", required=True, help=fam_help)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--check", action="store_true", help="cross-check every solution")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_enumerate)
    return parser


def _protect_negatives(argv: Sequence[str]) -> list[str]:
    # argparse would read "-3+2i" as an option; a leading space is stripped by parse()
    return [f" {a}" if _NEGATIVE_GAUSS.fullmatch(a) else a for a in argv]


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(_protect_negatives(argv))
    try:
        return args.func(args, out)
    except (GaussianError, ZeroDivisionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
