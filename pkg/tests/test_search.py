"""回溯搜索：字典序最小解、计数、最优 l、删除扫描"""

import pytest

from conftest import APPENDIX_B, load, naive_count, naive_is_l_good
from src.core.design_model import CyclicTriple, remove_triple
from src.core.exceptions import InvalidParameterError
from src.core.search import (
    TSV_HEADER,
    FindMode,
    SearchMode,
    SequencingSearch,
    count_l_good,
    find_l_good,
    optimal_l,
    partial_removal_sweep,
    search,
    verify_bound_exhaustive,
    window_pairs,
)
from src.core.sequencing import Sequencing, is_l_good

APPENDIX_A_EXPECTED = {
    "m9_1_1": ("023471856", 18),
    "m9_3_1": ("047563812", 36),
    "m9_7_1": ("031485726", 324),
}


def test_window_pairs_include_seam_windows():
    pairs = window_pairs(5, 3)
    assert pairs[2] == [(0, 1)]
    assert pairs[3] == [(1, 2)]
    assert pairs[4] == [(0, 1), (0, 3), (2, 3)]


@pytest.mark.parametrize("name", sorted(APPENDIX_A_EXPECTED))
def test_lex_least_4_good(name):
    ts = load(name)
    witness = find_l_good(ts, 4, mode=FindMode.LEX_LEAST)
    assert witness.to_compact() == APPENDIX_A_EXPECTED[name][0]
    assert is_l_good(witness, ts, 4)


@pytest.mark.parametrize("name", sorted(APPENDIX_A_EXPECTED))
def test_count_4_good_is_position_fixed(name):
    ts = load(name)
    assert count_l_good(ts, 4) == APPENDIX_A_EXPECTED[name][1]


def test_kernel_counts_rotation_classes():
    ts = load("m9_3_1")
    classes, first = SequencingSearch(ts, 4).count()
    assert classes == 4
    assert count_l_good(ts, 4) == ts.v * classes == 36
    assert first == (0, 4, 7, 5, 6, 3, 8, 1, 2)


def test_find_any_returns_a_valid_witness(mts7_cyclic):
    witness = find_l_good(mts7_cyclic, 3, mode=FindMode.ANY)
    assert witness is not None
    assert is_l_good(witness, mts7_cyclic, 3)


def test_unknown_find_mode_rejected(mts7_cyclic):
    with pytest.raises(ValueError):
        find_l_good(mts7_cyclic, 3, mode="fastest")


def test_l_below_three_rejected(mts7_cyclic):
    with pytest.raises(InvalidParameterError, match="l < 3"):
        find_l_good(mts7_cyclic, 2)


def test_parallel_search_matches_sequential():
    ts = load("m9_3_1")
    assert count_l_good(ts, 4, jobs=2) == 36
    assert find_l_good(ts, 4, jobs=2).to_compact() == "047563812"


def test_search_report_tsv():
    report = search(load("m9_7_1"), 4, mode=SearchMode.COUNT)
    fields = report.to_tsv().split("\t")
    assert TSV_HEADER.split("\t") == ["design", "l", "outcome", "count", "witness", "nodes", "ms"]
    assert fields[:5] == ["m9_7_1", "4", "found", "324", "0 3 1 4 8 5 7 2 6"]
    assert int(fields[5]) > 0
    assert fields[6] == "-"
    assert report.to_tsv(timing=True).split("\t")[6] != "-"


def test_search_exhausted_report(mts7_cyclic):
    report = search(mts7_cyclic, 4, mode=SearchMode.FIND)
    assert not report.found
    assert report.outcome == "exhausted"
    assert report.witness is None
    assert report.count is None


def test_count_matches_naive_scan_on_mts7(all_mts7):
    for ts in all_mts7:
        for l in (3, 4):
            assert count_l_good(ts, l) == naive_count(ts, l)


@pytest.mark.slow
def test_count_matches_naive_scan_on_mts9():
    ts = load("m9_1_1")
    assert count_l_good(ts, 4) == naive_count(ts, 4) == 18


def test_every_counted_witness_is_good(mts7_cyclic):
    witness = find_l_good(mts7_cyclic, 3)
    assert naive_is_l_good(witness.order, mts7_cyclic, 3)


def test_optimal_l(mts7_cyclic, mts4, appendix_a):
    best, witness = optimal_l(mts7_cyclic)
    assert best == 3 and is_l_good(witness, mts7_cyclic, 3)
    assert optimal_l(mts4) == (2, None)
    assert optimal_l(appendix_a["m9_1_1"])[0] == 4


@pytest.mark.slow
def test_optimal_l_on_mts10_is_three():
    best, witness = optimal_l(load("m10_116_2"))
    assert best == 3
    assert witness is not None


def test_bound_is_tight_for_small_designs(mts4, mts7_cyclic, appendix_a):
    assert verify_bound_exhaustive(mts4)
    assert verify_bound_exhaustive(mts7_cyclic)
    for ts in appendix_a.values():
        assert verify_bound_exhaustive(ts)


def test_optimal_l_on_partial_system(mts7_cyclic):
    partial = remove_triple(mts7_cyclic, CyclicTriple(0, 1, 3))
    best, witness = optimal_l(partial)
    assert best >= 3
    assert is_l_good(witness, partial, best)


@pytest.mark.slow
@pytest.mark.parametrize("name", APPENDIX_B)
def test_mts10_has_3_good_but_no_4_good(name):
    ts = load(name)
    assert find_l_good(ts, 4) is None
    witness = find_l_good(ts, 3)
    assert witness is not None and is_l_good(witness, ts, 3)


@pytest.mark.slow
@pytest.mark.parametrize("name", APPENDIX_B)
def test_removal_sweep_finds_4_good_everywhere(name):
    ts = load(name)
    results = partial_removal_sweep(ts, 4)
    assert len(results) == 30
    assert all(r.found for r in results)
    for r in results:
        assert is_l_good(r.witness, remove_triple(ts, r.triple), 4)


def test_removal_sweep_rejects_small_l(mts7_cyclic):
    with pytest.raises(InvalidParameterError):
        partial_removal_sweep(mts7_cyclic, 2)


def test_witness_text_round_trip():
    witness = find_l_good(load("m9_1_1"), 4)
    assert Sequencing.parse(witness.to_text()) == witness
