import json

import pytest

from polydir import laws
from polydir.laws import Grid


def test_all_suites_pass(reports):
    for name, r in reports.items():
        assert r.passed, r.line()
        assert r.instances > 0 and r.counterexample is None


def test_reports_serialize(reports):
    data = json.loads(json.dumps(reports["algebra"].to_json()))
    assert data["suite"] == "algebra" and data["status"] == "pass"
    assert set(data) >= {"suite", "status", "instances", "counterexample", "elapsed", "notes"}


def test_every_suite_states_its_method(reports):
    assert all(r.notes for r in reports.values())


def test_deterministic():
    grid = Grid.parse("exp=2,terms=2,set=2,legs=2")
    a = laws.run_suite("algebra", grid, seed=5).to_json()
    b = laws.run_suite("algebra", grid, seed=5).to_json()
    a.pop("elapsed"), b.pop("elapsed")
    assert a == b
    a = laws.run_suite("equivalences", grid, mutate="functor_D").to_json()
    b = laws.run_suite("equivalences", grid, mutate="functor_D").to_json()
    assert a["counterexample"] == b["counterexample"]


def test_mutations_caught_with_replayable_counterexamples(mutation_reports):
    for name, r in mutation_reports.items():
        assert r.status == "fail", name
        cx = r.counterexample
        # the replay under the same corruption reproduces the mismatch
        with laws.mutation(laws.SUITE_MUTATIONS[name]):
            lhs, rhs = laws.recheck(cx)
        assert lhs != rhs and [lhs, rhs] == [cx["lhs"], cx["rhs"]]
        # and without it the instance holds
        lhs, rhs = laws.recheck(cx)
        assert lhs == rhs


def test_mutation_restores_original():
    from polydir import poly
    before = poly.hom_count
    with laws.mutation("hom_count"):
        assert poly.hom_count is not before
    assert poly.hom_count is before


def test_grid_parse():
    g = Grid.parse("exp=2, terms=1,set=4")
    assert (g.max_exponent, g.max_terms, g.max_set, g.max_legs) == (2, 1, 4, 3)
    with pytest.raises(ValueError):
        Grid.parse("depth=2")


def test_grid_enumeration():
    assert len(laws.grid_polys(3, 3)) == 35
    assert len(laws.grid_bundles(2)) == 11
    assert laws.grid_terms(1, 2) == [(), (0,), (1,), (0, 0), (1, 0), (1, 1)]


def test_scalar_checks_agree_with_bulk_path():
    from polydir import finset
    from polydir.poly import Poly
    legs = [finset.function((0, 1, 1), 2), finset.function((1, 0), 2), finset.function((1,), 2)]
    for exps in [(), (0,), (2, 1), (3, 3, 0)]:
        lhs, rhs = laws.poly_wide_pullback(Poly(exps), legs)
        assert lhs == rhs


def test_failed_report_line():
    r = laws.run_suite("algebra", Grid.parse("exp=1,terms=1"), mutate="tensor")
    assert "counterexample" in r.line() and not r.passed
