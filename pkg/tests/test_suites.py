"""The bundled verification suites must come back clean on the test matrix."""

import pytest

from borbits.suites import SUITE_NAMES, run_suite

from conftest import get_system


@pytest.mark.parametrize("letter,rank", [("A", 2), ("B", 2), ("C", 3), ("D", 4), ("G", 2)])
@pytest.mark.parametrize("name", SUITE_NAMES)
def test_suites_pass(letter, rank, name):
    _, W = get_system(letter, rank)
    reports = run_suite(W, name)
    assert reports
    for rep in reports:
        assert rep.ok, (rep.name, rep.violations[:5])


def test_unknown_suite_rejected():
    _, W = get_system("A", 2)
    with pytest.raises(ValueError):
        run_suite(W, "everything")


def test_d4_suite_includes_counterexample_report():
    _, W = get_system("D", 4)
    names = [rep.name for rep in run_suite(W, "involutions")]
    assert "counterexample-sets" in names


def test_rank_three_suite_includes_monotonicity():
    _, W = get_system("C", 3)
    names = [rep.name for rep in run_suite(W, "involutions")]
    assert "conjugation-monotonicity" in names
    _, W4 = get_system("D", 4)
    assert "conjugation-monotonicity" not in [
        rep.name for rep in run_suite(W4, "involutions")
    ]


def test_phi_suite_vacuous_without_mark_one():
    _, W = get_system("G", 2)
    reports = run_suite(W, "phi")
    assert len(reports) == 1 and reports[0].checks == 0
