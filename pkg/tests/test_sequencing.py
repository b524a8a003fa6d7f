"""序列：文本形式、三元循环序、l-good 判定"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import load, naive_is_l_good
from src.core.design_model import CyclicTriple
from src.core.exceptions import DesignFormatError, InvalidParameterError, SequencingError
from src.core.sequencing import (
    NO_GOOD_L,
    Sequencing,
    TernaryQuery,
    bound_l,
    contains_triple,
    in_cyclic_order,
    is_l_good,
    max_good_l,
    violations,
    window_span,
)

M9_1_1 = load("m9_1_1")
IDENTITY7 = Sequencing(tuple(range(7)))


def test_rotations_are_equal_reversal_is_not():
    assert Sequencing((3, 4, 0, 1, 2)) == Sequencing((0, 1, 2, 3, 4))
    assert Sequencing((0, 1, 2, 3, 4)).reversed() == Sequencing((0, 4, 3, 2, 1))
    assert Sequencing((0, 1, 2, 3, 4)).reversed() != Sequencing((0, 1, 2, 3, 4))


def test_parse_compact_and_general_forms():
    d = Sequencing.parse("023471856")
    assert d.order == (0, 2, 3, 4, 7, 1, 8, 5, 6)
    assert d.to_compact() == "023471856"
    assert d.to_text() == "0 2 3 4 7 1 8 5 6"
    assert Sequencing.parse("0 2 3 4 7 1 8 5 6") == d
    assert Sequencing.parse("9 0 1 2 3 4 5 6 7 8 10").to_text() == "0 1 2 3 4 5 6 7 8 10 9"


def test_compact_form_needs_single_digits():
    with pytest.raises(DesignFormatError):
        Sequencing(tuple(range(11))).to_compact()


@pytest.mark.parametrize("text", ["", "0 a 2", "01x"])
def test_parse_rejects_garbage(text):
    with pytest.raises(DesignFormatError):
        Sequencing.parse(text)


def test_repeated_points_rejected():
    with pytest.raises(SequencingError):
        Sequencing.parse("0 1 1")


def test_ternary_query_needs_distinct_points():
    with pytest.raises(SequencingError):
        TernaryQuery(1, 1, 2)


def test_in_cyclic_order_wraps():
    d = Sequencing((0, 1, 2, 3, 4))
    assert in_cyclic_order(d, TernaryQuery(3, 4, 1))
    assert not in_cyclic_order(d, TernaryQuery(3, 1, 4))
    assert contains_triple(d, CyclicTriple(4, 0, 2))


@pytest.mark.parametrize("positions,n,span", [
    ((0, 1, 2), 7, 3),
    ((0, 1, 3), 7, 4),
    ((0, 6), 7, 2),
    ((0, 5, 6), 7, 3),
    ((0, 3, 5), 9, 6),
])
def test_window_span(positions, n, span):
    assert window_span(positions, n) == span


def test_identity_on_cyclic_mts7_is_3_good_not_4_good(mts7_cyclic):
    assert is_l_good(IDENTITY7, mts7_cyclic, 3)
    assert not is_l_good(IDENTITY7, mts7_cyclic, 4)
    assert max_good_l(IDENTITY7, mts7_cyclic) == 3
    assert CyclicTriple(0, 1, 3) in violations(IDENTITY7, mts7_cyclic, 4)


def test_l_below_three_is_rejected(mts7_cyclic):
    with pytest.raises(InvalidParameterError, match="l < 3"):
        is_l_good(IDENTITY7, mts7_cyclic, 2)


def test_sequencing_must_cover_design_points(mts7_cyclic):
    with pytest.raises(SequencingError):
        is_l_good(Sequencing(tuple(range(6))), mts7_cyclic, 3)


def test_appendix_witness_is_4_good_only(appendix_a):
    d = Sequencing.parse("023471856")
    assert is_l_good(d, appendix_a["m9_1_1"], 4)
    assert not is_l_good(d, appendix_a["m9_1_1"], 5)
    assert max_good_l(d, appendix_a["m9_1_1"]) == 4


@pytest.mark.parametrize("v,bound", [(3, 1), (4, 1), (7, 3), (9, 4), (10, 4), (13, 6)])
def test_bound_l(v, bound):
    assert bound_l(v) == bound


def test_bound_l_rejects_small_orders():
    with pytest.raises(InvalidParameterError):
        bound_l(2)


@given(st.permutations(list(range(1, 9))), st.integers(3, 9))
@settings(max_examples=200, deadline=None)
def test_goodness_matches_window_scan(rest, l):
    order = (0,) + tuple(rest)
    assert is_l_good(Sequencing(order), M9_1_1, l) == naive_is_l_good(order, M9_1_1, l)


@given(st.permutations(list(range(1, 9))))
@settings(max_examples=200, deadline=None)
def test_max_good_l_is_the_threshold(rest):
    d = Sequencing((0,) + tuple(rest))
    best = max_good_l(d, M9_1_1)
    if best == NO_GOOD_L:
        assert not is_l_good(d, M9_1_1, 3)
        return
    assert all(is_l_good(d, M9_1_1, l) for l in range(3, best + 1))
    if best < M9_1_1.v:
        assert not is_l_good(d, M9_1_1, best + 1)
    assert best <= bound_l(M9_1_1.v)


@given(st.permutations(list(range(1, 9))))
@settings(max_examples=100, deadline=None)
def test_reversal_flips_containment(rest):
    d = Sequencing((0,) + tuple(rest))
    for t in M9_1_1.triples[:5]:
        assert contains_triple(d, t) != contains_triple(d.reversed(), t)
