"""Verification harness: universes, reports, oracles, shrinking, faults."""

import json

import pytest

from graftop import parse_tree
from graftop.verify import (
    CheckReport,
    Universe,
    check_deformed_identity,
    check_disjoint_associativity,
    check_equivariance,
    check_minimality,
    check_morphisms_i_j,
    check_nested_associativity,
    check_roundtrip_psi_phi,
    check_specializations,
    check_unit_laws,
    oracle_compose_root,
    oracle_compose_terms,
    oracle_graft_counts,
    reports_to_json,
    run_suite,
    shrink_instance,
    tree_shape,
    shape_tree,
)

SMALL = Universe(2, 2)
TRIPLE = Universe(3, 2)


def test_universe_counts_match_cayley_times_weights():
    # n-vertex layer holds n^(n-1) shapes times w_max^n weight vectors
    trees = Universe(3, 2).trees("a")
    assert len(trees) == 1 * 2 + 2 * 4 + 9 * 8
    assert len(set(trees)) == len(trees)


def test_universe_unlabeled_counts():
    assert len(Universe(3, 2).unlabeled_trees()) == 2 + 4 + 14


def test_oracle_composer_agrees_on_reference_instance():
    S = parse_tree("a:1[b:3[c:2,d:1]]")
    T = parse_tree("e:2[h:1]")
    terms = oracle_compose_terms(S, "b", T)
    assert len(terms) == 4
    assert oracle_compose_root(S, "b", T) == parse_tree("a:1[e:2[c:2,d:1,h:1]]")
    assert parse_tree("a:1[e:2[h:1[c:2,d:1]]]") in terms


def test_shape_conversions_roundtrip():
    t = parse_tree("_:1[_:2[_:1],_:3]")
    assert shape_tree(tree_shape(t)) == t


def test_oracle_graft_counts_symmetric_host():
    host = tree_shape(parse_tree("_:1[_:1,_:1]"))
    leaf = tree_shape(parse_tree("_:1"))
    counts = oracle_graft_counts(host, leaf)
    # root graft once, and the two identical leaves collapse to one shape
    assert counts[tree_shape(parse_tree("_:1[_:1,_:1,_:1]"))] == 1
    assert counts[tree_shape(parse_tree("_:1[_:1,_:1[_:1]]"))] == 2


@pytest.mark.parametrize(
    "check",
    [
        check_nested_associativity,
        check_disjoint_associativity,
        check_unit_laws,
        check_equivariance,
        check_minimality,
    ],
)
def test_axiom_checks_pass_on_small_universe(check):
    report = check(SMALL)
    assert report.ok
    assert report.instances > 0
    assert report.counterexamples == ()


def test_specialization_and_iso_checks_pass_small():
    assert check_specializations(SMALL).ok
    assert check_roundtrip_psi_phi(SMALL).ok
    assert check_deformed_identity(SMALL).ok
    assert check_morphisms_i_j(Universe(2, 1), weight_bound=4).ok


@pytest.mark.parametrize(
    "check, universe",
    [
        # the nested fault needs weight-3 slots before a non-minimal map can
        # appear on both composition stages
        (check_nested_associativity, Universe(3, 3)),
        (check_disjoint_associativity, TRIPLE),
        (check_unit_laws, SMALL),
        (check_equivariance, SMALL),
        (check_minimality, SMALL),
        (check_specializations, SMALL),
        (check_deformed_identity, SMALL),
        (check_roundtrip_psi_phi, Universe(3, 2)),
    ],
)
def test_fault_injection_is_detected(check, universe):
    report = check(universe, fault=True)
    assert report.failure_count >= 1
    assert report.counterexamples


def test_fault_injection_detected_by_morphisms():
    report = check_morphisms_i_j(Universe(2, 1), weight_bound=4, fault=True)
    assert report.failure_count >= 1


def test_shrinker_minimizes_to_boundary():
    # failure criterion: combined size of the pair at least 4
    def fails(trees):
        return trees[0].size + trees[1].size >= 4

    big = (parse_tree("a:2[b:1[c:1],d:2]"), parse_tree("x:1[y:3]"))
    small = shrink_instance(big, fails)
    assert fails(small)
    assert small[0].size + small[1].size == 4
    # weights got driven down too
    assert all(v.node.weight == 1 for t in small for v in t.vertices())


def test_report_json_schema():
    report = check_unit_laws(SMALL)
    payload = json.loads(reports_to_json([report]))
    assert payload[0]["name"] == "unit-laws"
    assert payload[0]["ok"] is True
    assert set(payload[0]) == {"name", "instances", "failures", "counterexamples", "seconds", "ok"}


def test_failed_report_carries_tree_grammar_counterexample():
    report = check_nested_associativity(Universe(3, 3), fault=True)
    assert not report.ok
    sample = report.counterexamples[0]
    # counterexamples are serialized in the parseable tree grammar
    for chunk in sample.split():
        _, text = chunk.split("=", 1)
        parse_tree(text)


def test_run_suite_names():
    reports = run_suite("iso", SMALL)
    assert [r.name for r in reports] == ["bracket-roundtrip"]
    with pytest.raises(ValueError):
        run_suite("nope")


def test_check_report_ok_property():
    r = CheckReport("x", 5, 0, (), 0.1)
    assert r.ok and "ok" in r.summary()
    r2 = CheckReport("x", 5, 2, ("S=a:1",), 0.1)
    assert not r2.ok and "FAIL" in r2.summary()
