import random

import pytest
import sympy

from gaussdioph.factorization import factor, in_G
from gaussdioph.families import (
    PARAMETRIZED,
    CanonicalCertificate,
    Family,
    FamilyParams,
    SystemSolution,
    Triple,
    UnsupportedFamily,
    b1_sign,
    check_solution,
    D_from_system,
    discriminant_params,
    divisibility_profile,
    generate,
    is_canonical,
    match_D,
    param_recover,
    parity_lemma_holds,
    quadratic_discriminant,
    quadratic_root_solutions,
    reduce_to_canonical,
    sample_params,
    system_from_D,
    system_from_params,
    validate_params,
)
from gaussdioph.gaussian import GaussianError, GaussianInt, is_OI, parse, ramified_valuation, unit

ALL = list(Family)


def T(*parts: str) -> Triple:
    return Triple(*(parse(p) for p in parts))


def sym(z: GaussianInt):
    return sympy.Integer(z.re) + sympy.I * z.im


def canonical_residual(family: Family, tr: Triple, sign: int = 1):
    """Canonical equation evaluated with sympy arithmetic."""
    X, Y, Z = (sym(c) for c in tr)
    i = sympy.I
    lhs = {
        Family.A: X**2 + Y**2 - Z**2,
        Family.B1: X**2 + Z**2 - sign * i * Y**2,
        Family.B2: X**2 + i * Y**2 - Z**2,
        Family.CPLUS: X**2 + (1 + i) * Y**2 - Z**2,
        Family.CMINUS: X**2 + (1 - i) * Y**2 - Z**2,
        Family.D: X**2 + i * Y**2 - (1 + i) * Z**2,
    }[family]
    return sympy.expand(lhs)


def test_family_parse():
    assert Family.parse("C+") is Family.CPLUS and Family.parse("c-") is Family.CMINUS
    with pytest.raises(GaussianError):
        Family.parse("E")


def test_check_solution_examples():
    assert check_solution(Family.A, T("-2-i", "-2+2i", "-2+i"), canonical=True)
    assert check_solution(Family.D, T("3+2i", "-1-6i", "1-4i"), canonical=True)
    assert not check_solution(Family.A, T("1", "1", "1"), canonical=True)
    assert not check_solution(Family.A, T("1", "1", "1"))
    assert check_solution(Family.A, T("1+2i", "-2+2i", "2+i"))
    assert not check_solution(Family.A, T("0", "1", "i"))


def test_b_case_split():
    # Y = (1+i)(...) with valuation exactly 1 belongs to B1, >= 2 to B2
    b1 = T("-3i", "3-i", "-4-i")
    assert check_solution(Family.B1, b1, canonical=True, sign=1)
    assert not check_solution(Family.B2, b1, canonical=True)
    assert b1_sign(b1) == 1


def test_divisibility_examples():
    assert divisibility_profile(Family.A, T("-2-i", "-2+2i", "-2+i"))
    assert divisibility_profile(Family.D, T("3+2i", "-1-6i", "1-4i"))
    assert divisibility_profile(Family.CPLUS, T("2+3i", "-2+2i", "-2-i"))


def test_divisibility_rejects_non_solutions():
    with pytest.raises(GaussianError):
        divisibility_profile(Family.A, T("1", "1", "1"))
    with pytest.raises(GaussianError):
        divisibility_profile(Family.A, T("-2-i", "-2+2i", "-2+i").scale(parse("2+i")))


def test_reduce_examples():
    canon, cert = reduce_to_canonical(Family.A, T("-2-i", "-2+2i", "-2+i"))
    assert canon == T("1+2i", "-2+2i", "1-2i")
    assert cert.apply(canon) == T("-2-i", "-2+2i", "-2+i")
    fixed = T("1+2i", "-2+2i", "1-2i")
    canon, cert = reduce_to_canonical(Family.A, fixed)
    assert canon == fixed and cert.apply(canon) == fixed


def test_reduce_D_strips_global_unit():
    base = T("3+2i", "-1-6i", "1-4i")
    rotated = base.scale(parse("i"))
    canon, cert = reduce_to_canonical(Family.D, rotated)
    # the O^I representative: 3+2i has real part 3, so its associate -3-2i is chosen
    assert canon == T("-3-2i", "1+6i", "1-4i")
    assert all(is_OI(c) for c in canon)
    assert check_solution(Family.D, canon, canonical=True)
    assert cert.apply(canon) == rotated


def test_certificate_round_trip_on_rotations():
    rng = random.Random(3)
    for family in PARAMETRIZED:
        for _ in range(20):
            canon = generate(family, sample_params(family, rng, 200))
            if not canon.primitive:
                continue
            lifted = Triple(canon.X, canon.Y, canon.Z * parse("i")) if family is not Family.B1 else None
            for src in filter(None, (canon, lifted)):
                src = Triple(src.X * unit(2), src.Y, src.Z)
                if not check_solution(family, src) and not check_solution(family, src, canonical=True):
                    continue
                out, cert = reduce_to_canonical(family, src)
                assert cert.apply(out) == src
                assert is_canonical(family, out)


GENERATE_EXAMPLES = [
    (Family.A, FamilyParams(0, parse("1+i"), parse("1")), T("-2-i", "-2+2i", "-2+i")),
    (Family.B1, FamilyParams(0, parse("1-2i"), parse("1"), 1), T("-3i", "3-i", "-4-i")),
    (Family.CPLUS, FamilyParams(0, parse("1"), parse("1+i")), T("2+3i", "-2+2i", "-2-i")),
    (Family.D, FamilyParams(0, parse("1"), parse("1+i")), T("3+2i", "-1-6i", "1-4i")),
]


@pytest.mark.parametrize("family, params, expected", GENERATE_EXAMPLES)
def test_generate_examples(family, params, expected):
    out = generate(family, params)
    assert out == expected
    assert canonical_residual(family, out, params.sign or 1) == 0


@pytest.mark.parametrize(
    "family, params",
    [
        (Family.A, FamilyParams(0, parse("1"), parse("-3"))),
        (Family.A, FamilyParams(4, parse("1+i"), parse("1"))),
        (Family.A, FamilyParams(0, parse("2"), parse("1"))),
        (Family.A, FamilyParams(0, parse("1+i"), parse("2i"))),
        (Family.B1, FamilyParams(0, parse("1-2i"), parse("1"))),
        (Family.B1, FamilyParams(0, parse("1+i"), parse("1"), 1)),
        (Family.CPLUS, FamilyParams(0, parse("1+i"), parse("1"))),
        (Family.D, FamilyParams(0, parse("1+i"), parse("1"))),
    ],
)
def test_invalid_params(family, params):
    with pytest.raises(GaussianError):
        generate(family, params)


@pytest.mark.parametrize("family", ALL)
def test_generator_soundness(family):
    rng = random.Random(hash(family.value) & 0xFFFF)
    for _ in range(150):
        params = sample_params(family, rng)
        out = generate(family, params)
        assert check_solution(family, out, canonical=True, sign=params.sign)
        assert canonical_residual(family, out, params.sign or 1) == 0


def test_generated_triples_are_primitive_and_reducible():
    rng = random.Random(11)
    for family in ALL:
        for _ in range(100):
            out = generate(family, sample_params(family, rng, 2000))
            assert out.primitive
            canon, cert = reduce_to_canonical(family, out)
            assert is_canonical(family, canon)
            assert cert.apply(canon) == out


def test_param_recover_examples():
    assert param_recover(Family.A, T("1+2i", "-2+2i", "1-2i")) == FamilyParams(3, parse("1"), parse("1+i"))
    assert param_recover(Family.B1, T("-3i", "3-i", "-4-i")) == FamilyParams(0, parse("1-2i"), parse("1"), 1)
    with pytest.raises(UnsupportedFamily):
        param_recover(Family.D, T("3+2i", "-1-6i", "1-4i"))
    with pytest.raises(GaussianError):
        param_recover(Family.A, T("1", "1", "1"))


@pytest.mark.parametrize("family", PARAMETRIZED)
def test_param_round_trip(family):
    rng = random.Random(7)
    for _ in range(50):
        params = sample_params(family, rng, 100)
        assert param_recover(family, generate(family, params), params.sign) == params


def test_parity_lemma_on_original_lifts():
    rng = random.Random(2)
    for family in ALL:
        for _ in range(30):
            out = generate(family, sample_params(family, rng, 500))
            if family is Family.B1:
                lifted = Triple(out.X, out.Y * unit(1 if b1_sign(out) == 1 else 0), out.Z)
            else:
                lifted = Triple(out.X, out.Y, out.Z * unit(1))
            assert check_solution(family, lifted)
            assert parity_lemma_holds(family, lifted)


def test_system_examples():
    tr = T("3+2i", "-1-6i", "1-4i")
    sys = system_from_D(tr)
    assert sys == SystemSolution(parse("2-i"), parse("1+3i"), parse("-5i"), parse("1+i"))
    assert sys.x - sys.y == parse("1-4i") == sys.u + sys.v
    assert sys.x * sys.y == parse("5+5i") == parse("i") * sys.u * sys.v
    assert D_from_system(sys) == tr
    assert system_from_params(parse("1"), parse("1+i")) == sys


def test_system_rejects_bad_input():
    with pytest.raises(GaussianError):
        system_from_D(T("1+i", "1", "1"))
    with pytest.raises(GaussianError):
        system_from_D(T("1", "1", "3"))
    with pytest.raises(GaussianError):
        D_from_system(SystemSolution(parse("1"), parse("1"), parse("1"), parse("1")))


def test_quadratic_roots():
    sols = quadratic_root_solutions(parse("-5i"), parse("1+i"))
    assert quadratic_discriminant(parse("-5i"), parse("1+i")) == parse("5+12i")
    # root -3-2i (in O^I) first, then 3+2i
    assert sols == [(parse("-1-3i"), parse("-2+i")), (parse("2-i"), parse("1+3i"))]
    # flipping the sign of the discriminant swaps and negates the pair
    x, y = sols[0]
    assert sols[1] == (-y, -x)
    assert quadratic_root_solutions(parse("1"), parse("2i")) == []
    assert quadratic_discriminant(parse("1"), parse("2i")) == parse("-11+4i")
    assert not factor(parse("-11+4i")).is_square()
    with pytest.raises(GaussianError):
        quadratic_root_solutions(parse("2"), parse("1+i"))


def test_discriminant_examples():
    assert discriminant_params(parse("1"), parse("1+i")) == (parse("3+2i"), parse("-5i"), parse("1+i"))
    with pytest.raises(GaussianError):
        discriminant_params(parse("1+i"), parse("1"))


def test_discriminant_identity_symbolic():
    P, Q = sympy.symbols("P Q")
    i = sympy.I
    disc = P**2 + (1 - i) * Q**2
    u = P**2 - (1 - i) * Q**2 - (2 * i + 1) * P * Q
    v = P * Q
    assert sympy.expand(disc**2 - (u + v) ** 2 - 4 * i * u * v) == 0
    x = P**2 - i * P * Q
    y = (1 - i) * Q**2 + i * P * Q
    assert sympy.expand(x - y - (u + v)) == 0
    assert sympy.expand(x * y - i * u * v) == 0
    # the system maps back onto the parametric D triple
    X, Y, Z = x + y, u - v, x - y
    assert sympy.expand(X**2 + i * Y**2 - (1 + i) * Z**2) == 0


def test_discriminant_random():
    rng = random.Random(19)
    for _ in range(100):
        params = sample_params(Family.D, rng)
        disc, u, v = discriminant_params(params.P, params.Q)
        assert disc * disc == quadratic_discriminant(u, v)
        sys = system_from_params(params.P, params.Q)
        assert (sys.x, sys.y) in quadratic_root_solutions(u, v)
        assert not sys.violations()
        assert D_from_system(sys) == generate(Family.D, params)


def test_match_D():
    params, R = match_D(T("3+2i", "-1-6i", "1-4i"))
    assert params == FamilyParams(0, parse("1"), parse("1+i"))
    assert match_D(T("-3-2i", "1+6i", "1-4i")) is not None


def test_validate_params_accepts_generated():
    rng = random.Random(1)
    for family in ALL:
        validate_params(family, sample_params(family, rng))
        p = sample_params(family, rng)
        assert in_G(p.P) and in_G(p.Q)


def test_json_shapes():
    out = generate(Family.B1, FamilyParams(0, parse("1-2i"), parse("1"), -1))
    assert set(out.to_json()) == {"X", "Y", "Z", "primitive"}
    cert = CanonicalCertificate((0, 1, 2), (0, 0, 0), 0, -1)
    assert cert.to_json()["sign"] == "-"
    assert ramified_valuation(out.Y) == 1
