"""Exactness reports, degree-4 probes, node classification, rule diffs."""

import numpy as np
import pytest

from symcub import (
    CubatureRule,
    DimensionMismatchError,
    NodeClass,
    Region,
    RegionId,
    UnmatchedRuleError,
    build_rule,
    check_exactness,
    classify_nodes,
    compare_to_reference,
    cube_spec,
    degree4_nonexactness,
    region_monomial_moment,
    sector_spec,
    simplex_spec,
)
from symcub.reference import load_reference_rule
from symcub.validation import monomial_exponents


def test_monomial_enumeration_count():
    # C(n + 3, 3) exponent vectors of degree <= 3
    for n in [2, 3, 8]:
        count = sum(1 for _ in monomial_exponents(n))
        import math

        assert count == math.comb(n + 3, 3)


def test_reference_table1_exactness_within_print_precision():
    report = check_exactness(load_reference_rule("table1"), simplex_spec(3))
    assert report.max_abs_error <= 1e-8


def test_fresh_rule_exactness():
    spec = simplex_spec(3)
    report = check_exactness(build_rule(spec), spec)
    assert report.max_abs_error <= 1e-13
    assert report.per_degree_max[0] <= 1e-14  # mass conservation
    assert len(report.per_degree_max) == 4
    assert len(report.worst_monomial) == 3


def test_mass_conservation_any_rule():
    for make, n in [(simplex_spec, 3), (sector_spec, 4), (cube_spec, 2)]:
        spec = make(n)
        rule = build_rule(spec)
        assert abs(rule.total_weight() - spec.m_1) <= 1e-14


def test_wrong_spec_shows_large_error():
    rule = build_rule(cube_spec(3))
    report = check_exactness(rule, simplex_spec(3))
    assert report.max_abs_error > 1e-3


def test_dimension_mismatch():
    rule = build_rule(cube_spec(3))
    with pytest.raises(DimensionMismatchError):
        check_exactness(rule, cube_spec(4))


def test_sampled_exactness_above_dim8():
    spec = simplex_spec(9)
    rule = build_rule(spec)
    report = check_exactness(rule, spec, seed=3)
    assert report.monomial_count == 7 * 201
    assert report.max_abs_error <= 1e-12
    # seeded sampling is reproducible
    again = check_exactness(rule, spec, seed=3)
    assert again.max_abs_error == report.max_abs_error
    assert again.worst_monomial == report.worst_monomial


def test_degree4_witness_on_table1():
    rule = load_reference_rule("table1")
    region = RegionId(Region.SIMPLEX, 3)
    witness = degree4_nonexactness(rule, region)
    assert witness is not None
    exps, error = witness
    assert sum(exps) == 4
    assert error > 1e-5
    # the pure quartic probe alone already shows the defect
    x4 = np.array([node[0] ** 4 for node in rule.nodes]) @ np.array(rule.weights)
    assert abs(x4 - region_monomial_moment(region, (4, 0, 0))) > 1e-5


@pytest.mark.parametrize("region", list(Region))
@pytest.mark.parametrize("n", [2, 3, 4])
def test_degree4_witness_for_default_rules(region, n):
    rid = RegionId(region, n)
    from symcub import region_spec

    spec = region_spec(rid)
    witness = degree4_nonexactness(build_rule(spec), rid)
    assert witness is not None
    exps, error = witness
    assert sum(exps) == 4
    assert error > 1e-6 * spec.m_1


def test_classify_table1():
    classification = classify_nodes(
        load_reference_rule("table1"), RegionId(Region.SIMPLEX, 3), tol=1e-9
    )
    assert classification.classes[0] is NodeClass.EXTERIOR
    assert classification.classes[1:] == (NodeClass.INTERIOR,) * 5
    assert classification.exterior == 1
    assert classification.positive_weights == 6


def test_classify_table2_three_exterior():
    classification = classify_nodes(
        load_reference_rule("table2"), RegionId(Region.SIMPLEX, 4), tol=1e-9
    )
    assert classification.exterior == 3
    flagged = [i for i, c in enumerate(classification.classes) if c is NodeClass.EXTERIOR]
    # outside mass on row 1, negative coordinates on rows 3 and 5
    assert flagged == [0, 2, 4]


def test_classify_table3_boundary_rows():
    classification = classify_nodes(
        load_reference_rule("table3"), RegionId(Region.SIMPLEX, 3), tol=1e-9
    )
    assert classification.classes[0] is NodeClass.BOUNDARY
    assert classification.classes[2] is NodeClass.BOUNDARY
    assert classification.boundary == 2
    assert classification.exterior == 0


def test_classify_table8_all_interior():
    classification = classify_nodes(
        load_reference_rule("table8"), RegionId(Region.BALL_SECTOR, 4), tol=1e-9
    )
    assert classification.interior == 8


def test_classify_counts_sum_to_rule_size():
    rule = load_reference_rule("table4")
    classification = classify_nodes(rule, RegionId(Region.SIMPLEX, 4))
    assert (
        classification.interior + classification.boundary + classification.exterior
        == len(rule)
    )
    assert classification.negative_weights == 1


def test_classification_is_permutation_equivariant():
    rule = load_reference_rule("table2")
    rid = RegionId(Region.SIMPLEX, 4)
    base = classify_nodes(rule, rid).classes
    rng = np.random.default_rng(5)
    for _ in range(5):
        permuted_nodes = tuple(
            tuple(np.asarray(node)[rng.permutation(4)]) for node in rule.nodes
        )
        permuted = CubatureRule(dim=4, nodes=permuted_nodes, weights=rule.weights)
        assert classify_nodes(permuted, rid).classes == base


def test_cube_classification():
    rid = RegionId(Region.CUBE, 3)
    rule = CubatureRule(
        dim=3,
        nodes=((0.5, 0.5, 0.5), (1.0, 0.5, 0.5), (1.2, 0.5, 0.5), (-0.1, 0.2, 0.3)),
        weights=(1.0, 1.0, 1.0, 1.0),
    )
    classes = classify_nodes(rule, rid).classes
    assert classes == (
        NodeClass.INTERIOR,
        NodeClass.BOUNDARY,
        NodeClass.EXTERIOR,
        NodeClass.EXTERIOR,
    )


def test_compare_to_reference_is_symmetric_and_order_insensitive():
    rule = build_rule(simplex_spec(3), region_label="simplex")
    reference = load_reference_rule("table1")
    shuffled = CubatureRule(
        dim=3,
        nodes=tuple(reversed(reference.nodes)),
        weights=tuple(reversed(reference.weights)),
    )
    forward = compare_to_reference(rule, shuffled)
    backward = compare_to_reference(shuffled, rule)
    assert forward.max_node_distance == pytest.approx(backward.max_node_distance, abs=1e-18)
    assert forward.max_weight_deviation == pytest.approx(
        backward.max_weight_deviation, abs=1e-18
    )
    assert forward.passed


def test_compare_rule_to_itself_is_zero():
    rule = build_rule(sector_spec(4))
    diff = compare_to_reference(rule, rule)
    assert diff.max_node_distance == 0.0
    assert diff.max_weight_deviation == 0.0


def test_compare_errors():
    a = build_rule(simplex_spec(3))
    b = build_rule(simplex_spec(4))
    with pytest.raises(DimensionMismatchError):
        compare_to_reference(a, b)
    truncated = CubatureRule(dim=3, nodes=a.nodes[:-1], weights=a.weights[:-1])
    with pytest.raises(UnmatchedRuleError):
        compare_to_reference(a, truncated)
