"""The bundled verification suites (light smoke; the heavy runs live in the
acceptance tests)."""

import pytest

from filterlab.checks import CheckResult, run_suite, suite_names
from filterlab.domains import FilterLabError


def test_suite_names_are_distinct_and_known():
    names = suite_names()
    assert len(names) == len(set(names))
    assert "rank" in names and "ordinals" in names and "games" in names


def test_unknown_suite_raises():
    with pytest.raises(FilterLabError):
        run_suite("nosuch")


@pytest.mark.parametrize("name", ["ordinals", "rank", "type-gap"])
def test_fast_suites_pass(name):
    results = run_suite(name, seed=0)
    assert results
    for r in results:
        assert isinstance(r, CheckResult)
        assert r.ok, f"{name}: {r.name}: {r.detail}"


def test_results_carry_names():
    results = run_suite("ordinals", seed=1)
    assert all(r.name for r in results)
