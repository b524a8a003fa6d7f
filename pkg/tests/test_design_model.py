"""三元系模型：循环三元组、校验、循环展开、删除/加入、边索引"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import load
from src.core.design_model import (
    Completeness,
    CyclicTriple,
    TripleSystem,
    add_triple,
    admissible_order,
    converse,
    develop_mod_v,
    edge_table,
    is_cyclic,
    relabel,
    remove_triple,
    translate,
    validate,
)
from src.core.exceptions import InvalidDesignError, TripleNotPresentError

M9_1_1 = load("m9_1_1")


def test_cyclic_triple_rotations_are_equal():
    assert CyclicTriple(2, 0, 1) == CyclicTriple(0, 1, 2) == CyclicTriple(1, 2, 0)
    assert CyclicTriple(0, 2, 1) != CyclicTriple(0, 1, 2)
    assert CyclicTriple(3, 1, 2).as_tuple() == (1, 2, 3)


def test_cyclic_triple_needs_distinct_points():
    with pytest.raises(ValueError):
        CyclicTriple(1, 1, 2)


def test_cyclic_triple_edges_and_reverse():
    t = CyclicTriple(0, 1, 3)
    assert t.edges() == ((0, 1), (1, 3), (3, 0))
    assert t.reversed() == CyclicTriple(0, 3, 1)
    assert t.shares_edge(CyclicTriple(1, 3, 5))
    assert not t.shares_edge(t.reversed())


@pytest.mark.parametrize("v,expected", [(1, True), (3, True), (4, True), (5, False),
                                        (6, False), (7, True), (8, False), (9, True), (10, True)])
def test_admissible_order(v, expected):
    assert admissible_order(v) is expected


def test_develop_example_mts7(mts7_cyclic):
    assert mts7_cyclic.is_complete
    assert len(mts7_cyclic) == 14
    assert validate(mts7_cyclic).ok
    assert is_cyclic(mts7_cyclic)


def test_develop_bad_base_reports_double_cover():
    ts = develop_mod_v([(0, 1, 2)], 4)
    assert ts.kind is Completeness.PARTIAL
    report = validate(ts)
    assert not report.ok
    assert "edge (1,2) covered twice" in report.violations


def test_complete_claim_with_missing_triple_fails(mts7_cyclic):
    short = TripleSystem(7, mts7_cyclic.triples[1:], Completeness.COMPLETE)
    violations = validate(short).violations
    assert "complete system needs 14 triples, found 13" in violations
    assert any(v.endswith("uncovered") for v in violations)


def test_points_outside_range_are_reported():
    ts = TripleSystem.create(4, [(0, 1, 7)])
    assert "triple (0,1,7) has point 7 outside [0,4)" in validate(ts).violations


def test_empty_partial_system_is_valid():
    ts = TripleSystem.create(5, [], kind=Completeness.PARTIAL)
    assert validate(ts).ok


def test_remove_triple_makes_partial_and_leaves_original():
    t = CyclicTriple(0, 2, 1)
    partial = remove_triple(M9_1_1, t)
    assert partial.kind is Completeness.PARTIAL
    assert len(partial) == 23
    assert validate(partial).ok
    assert t in M9_1_1 and t not in partial


def test_remove_absent_triple_raises(mts7_cyclic):
    with pytest.raises(TripleNotPresentError, match="triple not present"):
        remove_triple(mts7_cyclic, CyclicTriple(0, 1, 2))


@given(st.sampled_from(M9_1_1.triples))
@settings(max_examples=24, deadline=None)
def test_remove_then_add_restores_system(t):
    restored = add_triple(remove_triple(M9_1_1, t), t)
    assert restored == M9_1_1
    assert restored.is_complete


@given(st.permutations(list(range(9))))
@settings(max_examples=30, deadline=None)
def test_relabel_preserves_validity(perm):
    image = relabel(M9_1_1, perm)
    assert validate(image).ok
    assert image.is_complete
    assert len(image) == len(M9_1_1)


def test_relabel_rejects_non_permutation(mts7_cyclic):
    with pytest.raises(ValueError):
        relabel(mts7_cyclic, [0] * 7)


def test_translate_of_non_cyclic_design_differs():
    assert not is_cyclic(M9_1_1)
    assert translate(M9_1_1, 9) == M9_1_1


def test_converse_reverses_every_triple(mts7_cyclic):
    conv = converse(M9_1_1)
    assert validate(conv).ok and conv.is_complete
    assert CyclicTriple(0, 2, 1).reversed() in conv
    assert converse(conv) == M9_1_1
    assert converse(mts7_cyclic) != mts7_cyclic


def test_edge_table_covers_every_edge_once(mts7_cyclic):
    table = edge_table(mts7_cyclic)
    assert len(table) == 42
    assert table.uncovered() == []
    assert table[(0, 1)] == CyclicTriple(0, 1, 3)
    assert table.third_lists()[1][3] == 0
    assert table.has_triple(3, 0, 1)
    assert not table.has_triple(0, 3, 1)


def test_edge_table_on_partial_system_leaves_gaps(mts7_cyclic):
    table = edge_table(remove_triple(mts7_cyclic, CyclicTriple(0, 1, 3)))
    assert sorted(table.uncovered()) == [(0, 1), (1, 3), (3, 0)]
    assert table[(0, 1)] is None


def test_edge_table_rejects_invalid_system():
    with pytest.raises(InvalidDesignError):
        edge_table(develop_mod_v([(0, 1, 2)], 4))
