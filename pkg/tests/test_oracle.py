import pytest

from gaussdioph.factorization import gaussian_sqrt
from gaussdioph.families import PARAMETRIZED, Family, Triple, check_solution
from gaussdioph.gaussian import I, GaussianInt, parse
from gaussdioph.oracle import (
    THREADS_ENV,
    SearchBox,
    check_one,
    cross_check,
    default_workers,
    enumerate_primitive,
    exact_sqrt,
    naive_enumerate,
)

from conftest import box


def T(*parts):
    return Triple(*(parse(p) for p in parts))


def test_search_box():
    with pytest.raises(ValueError):
        SearchBox(0)
    b = SearchBox(2)
    assert len(b.elements()) == 25
    assert b.contains(parse("2-2i")) and not b.contains(parse("3"))


def test_exact_sqrt_agrees_with_factorization():
    for z in box(20):
        r = exact_sqrt(z)
        s = gaussian_sqrt(z)
        assert (r is None) == (s is None)
        if r is not None:
            assert r * r == z


@pytest.mark.parametrize("family", list(Family))
@pytest.mark.parametrize("bound", [1, 2])
def test_matches_naive_loop(family, bound):
    box_ = SearchBox(bound)
    assert enumerate_primitive(family, box_, workers=1) == naive_enumerate(family, box_)


def test_parallel_matches_serial():
    box_ = SearchBox(4)
    assert enumerate_primitive(Family.A, box_, workers=3) == enumerate_primitive(Family.A, box_, workers=1)


def test_family_A_small_boxes():
    assert enumerate_primitive(Family.A, SearchBox(1), 1) == []
    found = set(enumerate_primitive(Family.A, SearchBox(3), 1))
    # the canonical triple itself solves X^2+Y^2=Z^2; its Z-rotation solves the original form
    assert T("1+2i", "-2+2i", "1-2i") not in found
    assert T("1+2i", "-2+2i", "2+i") in found
    assert T("2+i", "-2+2i", "1+2i") in found


def test_family_D_contains_worked_example():
    found = set(enumerate_primitive(Family.D, SearchBox(7), 1))
    # (3+2i, -1-6i, 1-4i) solves the canonical form; rotating Z by i gives the original form
    assert T("3+2i", "-1-6i", "4+i") in found


@pytest.mark.parametrize("family", list(Family))
def test_symmetries(family):
    found = set(enumerate_primitive(family, SearchBox(3), 1))
    assert found
    for tr in found:
        assert check_solution(family, tr) and tr.primitive
        assert Triple(I * tr.X, I * tr.Y, I * tr.Z) in found
        for sx, sy, sz in ((-1, 1, 1), (1, -1, 1), (1, 1, -1)):
            assert Triple(tr.X * sx, tr.Y * sy, tr.Z * sz) in found


def test_output_sorted_and_unique():
    found = enumerate_primitive(Family.CPLUS, SearchBox(3), 1)
    assert found == sorted(set(found), key=Triple.sort_key)


def test_workers_env(monkeypatch):
    monkeypatch.setenv(THREADS_ENV, "3")
    assert default_workers() == 3
    monkeypatch.delenv(THREADS_ENV)
    assert default_workers() >= 1


@pytest.mark.parametrize("family, bound", [(Family.A, 6), (Family.B1, 5), (Family.B2, 5)])
def test_cross_check_complete(family, bound):
    report = cross_check(family, SearchBox(bound), workers=1)
    assert report.total > 0
    assert report.failures == []
    assert report.unmatched == []
    assert report.matched == report.total
    assert not report.hard_failure


@pytest.mark.parametrize("family", [Family.CPLUS, Family.CMINUS])
def test_cross_check_C_gap_is_sign_twins(family):
    # the C parametrization only produces triples with v(Z+X) = 2; the
    # others are reached after negating X
    report = cross_check(family, SearchBox(4), workers=1)
    assert report.failures == []
    assert report.unmatched and report.unmatched == report.sign_twins
    assert report.hard_failure


def test_C_counterexample_details():
    from gaussdioph.families import FamilyParams, generate, is_canonical, param_recover
    from gaussdioph.gaussian import GaussianError

    gap = T("-3-4i", "-4+2i", "5+2i")
    assert check_solution(Family.CPLUS, gap, canonical=True)
    assert gap.primitive and is_canonical(Family.CPLUS, gap)
    with pytest.raises(GaussianError):
        param_recover(Family.CPLUS, gap)
    twin = T("3+4i", "-4+2i", "5+2i")
    assert generate(Family.CPLUS, FamilyParams(2, parse("1+2i"), parse("1"))) == twin


def test_cross_check_D_reports_without_failing():
    report = cross_check(Family.D, SearchBox(6), workers=1)
    assert report.failures == []
    assert report.matched > 0
    assert not report.hard_failure
    assert report.to_json()["unmatched"] == len(report.unmatched)


def test_check_one_rejects_non_solutions():
    assert check_one(Family.A, T("1", "1", "1")) == ("failed", "not a solution")
