import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_family_is_matroid
from relrank.enumeration import (
    canonical_form,
    class_counts,
    constructed_corpus,
    converse_fuzz,
    enumerate_matroids,
    enumerate_rank_functions,
    isomorphism_classes,
    mutate_table,
)
from relrank.matroid import graphic, linear_gf2, uniform
from relrank.sets import GroundSet, GroundSetTooLarge
from relrank.table import RelRankTable, check_axioms, table_from_matroid


@pytest.mark.parametrize("n,labelled", [(0, 1), (1, 2), (2, 5), (3, 16), (4, 68)])
def test_labelled_counts(n, labelled):
    ms = list(enumerate_matroids(n))
    assert len(ms) == labelled
    assert len({M.independents for M in ms}) == labelled


def test_small_examples():
    assert [M.independents for M in enumerate_matroids(0)] == [frozenset({0})]
    assert {M.independents for M in enumerate_matroids(1)} == {frozenset({0}), frozenset({0, 1})}
    assert len(isomorphism_classes(3)) == 8


@pytest.mark.parametrize("n", range(4))
def test_enumeration_is_complete(n):
    # every family containing ∅ that passes the brute-force axiom check
    others = [m for m in range(1, 1 << n)]
    accepted = set()
    for choice in range(1 << len(others)):
        family = frozenset([0] + [m for i, m in enumerate(others) if choice >> i & 1])
        if brute_family_is_matroid(n, family):
            accepted.add(family)
    assert {M.independents for M in enumerate_matroids(n)} == accepted


def test_two_pipelines_agree():
    independence = class_counts(4, "independence")
    rank = class_counts(4, "rank")
    assert independence == rank == [1, 2, 4, 8, 17]
    for n in range(5):
        assert {M.independents for _, M in enumerate_rank_functions(n)} == \
            {M.independents for M in enumerate_matroids(n)}


def test_enumeration_cap():
    with pytest.raises(GroundSetTooLarge):
        next(enumerate_matroids(6))


def test_canonical_form_examples():
    assert canonical_form(uniform(1, 2)) == canonical_form(uniform(1, 2).relabel([1, 0]))
    assert canonical_form(graphic(3, [(0, 1), (1, 2), (2, 0)])) == canonical_form(linear_gf2(["10", "01", "11"]))
    assert canonical_form(uniform(1, 3)) != canonical_form(uniform(2, 3))


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_canonical_form_is_relabelling_invariant(data):
    n = data.draw(st.integers(0, 5))
    ms = list(enumerate_matroids(n))
    M = data.draw(st.sampled_from(ms))
    perm = data.draw(st.permutations(range(n)))
    assert canonical_form(M.relabel(perm)) == canonical_form(M)


def test_canonical_keys_separate_classes():
    # brute isomorphism: equal keys iff some permutation maps one family to the other
    from itertools import permutations
    from relrank.matroid import permute_mask
    classes = isomorphism_classes(4)
    for i, a in enumerate(classes):
        for b in classes[i + 1:]:
            assert not any(
                frozenset(permute_mask(I, p) for I in a.matroid.independents) == b.matroid.independents
                for p in permutations(range(4))
            )


def test_constructed_corpus_shape():
    corpus = constructed_corpus()
    names = {e.name for e in corpus}
    assert {"U0,0", "U4,8", "path8", "cycle8", "wheel3", "wheel4", "gf2-49"} <= names
    assert sum(name.startswith("gf2-") for name in names) == 50
    assert max(e.matroid.n for e in corpus) == 8
    assert [e.matroid for e in corpus] == [e.matroid for e in constructed_corpus()]


def test_mutate_keeps_r1_box_and_is_deterministic():
    t = table_from_matroid(uniform(2, 3))
    for seed in range(200):
        m = mutate_table(t, seed)
        assert m == mutate_table(t, seed)
        assert check_axioms(m, ("R1",)).passed
        assert all(m[A, A] == 0 for A in range(8))


def test_mutate_without_room_returns_input():
    t = RelRankTable.zeros(GroundSet.of_size(0))
    assert mutate_table(t, 5) is t


def test_mutation_changes_something_usually():
    t = table_from_matroid(uniform(1, 3))
    changed = sum(mutate_table(t, s) != t for s in range(100))
    assert changed == 100


def test_fuzz_trivial_cases():
    assert converse_fuzz(3, 0).trials == 0
    report = converse_fuzz(3, 200, mutate=False)
    assert report.passing == report.roundtrips == 200 and report.ok


def test_fuzz_small_run_is_reproducible():
    a, b = converse_fuzz(2, 300, seed=9), converse_fuzz(2, 300, seed=9)
    assert a == b and a.ok
    assert a.passing > 0 and a.passing < a.trials


def test_random_gf2_reproducible():
    from relrank.enumeration import random_gf2
    assert random_gf2(random.Random(3)) == random_gf2(random.Random(3))
