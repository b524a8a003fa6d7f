"""规范形与同构判定"""

from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import load
from src.core.design_model import Completeness, TripleSystem, converse, relabel, remove_triple, translate
from src.core.enumeration import enumerate_mts
from src.core.exceptions import OrderMismatchError, OrderTooLargeError
from src.core.isomorphism import (
    canonical_form,
    canonical_index,
    converse_canonical_form,
    encode,
    is_isomorphic,
)

M9_3_1 = load("m9_3_1")


def _exhaustive_minimum(ts):
    return min(encode([t.relabel(p) for t in ts.triples]) for p in permutations(range(ts.v)))


def test_canonical_form_matches_exhaustive_relabelling(mts7_cyclic, all_mts7):
    for ts in [mts7_cyclic, *enumerate_mts(3), *enumerate_mts(4), *all_mts7]:
        assert canonical_form(ts).encoding() == _exhaustive_minimum(ts)


def test_converse_form_matches_exhaustive_relabelling(all_mts7):
    for ts in [*enumerate_mts(3), *enumerate_mts(4), *all_mts7]:
        expected = min(_exhaustive_minimum(ts), _exhaustive_minimum(converse(ts)))
        assert converse_canonical_form(ts).encoding() == expected


def test_converse_form_certificate(appendix_a):
    ts = appendix_a["m9_7_1"]
    form = converse_canonical_form(ts)
    source = converse(ts) if form.conversed else ts
    assert relabel(source, form.permutation).triples == form.triples


def test_exactly_one_mts7_is_not_isomorphic_to_its_converse(all_mts7):
    chiral = [ts for ts in all_mts7 if not is_isomorphic(ts, converse(ts))]
    assert len(chiral) == 1
    assert is_isomorphic(chiral[0], converse(chiral[0]), up_to_converse=True)


def test_canonical_form_is_idempotent(mts7_cyclic):
    form = canonical_form(mts7_cyclic)
    assert canonical_form(form.to_system()) == form


def test_permutation_certifies_the_form(appendix_a):
    ts = appendix_a["m9_7_1"]
    form = canonical_form(ts)
    assert relabel(ts, form.permutation).triples == form.triples


@given(st.permutations(list(range(7))))
@settings(max_examples=30, deadline=None)
def test_relabelled_mts7_has_same_form(mts7_cyclic, perm):
    assert canonical_form(relabel(mts7_cyclic, perm)) == canonical_form(mts7_cyclic)


@given(st.permutations(list(range(9))))
@settings(max_examples=10, deadline=None)
def test_relabelled_mts9_is_isomorphic(perm):
    assert is_isomorphic(M9_3_1, relabel(M9_3_1, perm))


@given(st.permutations(list(range(9))))
@settings(max_examples=10, deadline=None)
def test_relabelled_converse_has_same_converse_form(perm):
    assert converse_canonical_form(relabel(converse(M9_3_1), perm)) == converse_canonical_form(M9_3_1)


def test_translate_is_an_isomorphism(appendix_a):
    ts = appendix_a["m9_1_1"]
    assert is_isomorphic(ts, translate(ts, 4))


def test_appendix_a_designs_are_pairwise_distinct(appendix_a):
    a, b, c = appendix_a["m9_1_1"], appendix_a["m9_3_1"], appendix_a["m9_7_1"]
    assert not is_isomorphic(a, b)
    assert not is_isomorphic(a, c)
    assert not is_isomorphic(b, c)


def test_partial_systems_of_different_sizes(mts7_cyclic):
    partial = remove_triple(mts7_cyclic, mts7_cyclic.triples[0])
    assert not is_isomorphic(mts7_cyclic, partial)


def test_removing_translates_gives_isomorphic_partials(mts7_cyclic):
    t = mts7_cyclic.triples[0]
    shifted = translate(mts7_cyclic, 1)
    image = t.relabel([(i + 1) % 7 for i in range(7)])
    assert is_isomorphic(remove_triple(mts7_cyclic, t), remove_triple(shifted, image))


def test_order_mismatch(mts7_cyclic, mts4):
    with pytest.raises(OrderMismatchError, match="order mismatch"):
        is_isomorphic(mts7_cyclic, mts4)


def test_large_order_is_refused():
    ts = TripleSystem(13, (), Completeness.PARTIAL)
    with pytest.raises(OrderTooLargeError, match="v too large"):
        canonical_form(ts)


def test_canonical_index_collapses_relabellings(mts7_cyclic):
    copies = [relabel(mts7_cyclic, [(i * k) % 7 for i in range(7)]) for k in range(1, 7)]
    index = canonical_index([mts7_cyclic, *copies])
    assert len(index) == 1


def test_canonical_index_up_to_converse(all_mts7):
    designs = [*all_mts7, *(converse(ts) for ts in all_mts7)]
    assert len(canonical_index(designs)) == 4
    assert len(canonical_index(designs, up_to_converse=True)) == 3
