import random

import pytest
from hypothesis import given, strategies as st

from relrank.fincof import (
    ALMOST_FREE_Z,
    EMPTY,
    FREE_Z,
    Z,
    FinCofSet,
    distinguishing_witness,
    fincof_card,
    random_fincof,
    sym_is_independent,
    sym_r_independent,
    sym_rank,
    sym_relrank,
    window_matroid,
    window_set,
)
from relrank.matroid import uniform
from relrank.sets import INF, GroundSet

KINDS = (FREE_Z, ALMOST_FREE_Z)
fincofs = st.builds(FinCofSet, st.booleans(), st.frozensets(st.integers(-6, 6), max_size=6))


def test_card_examples():
    assert fincof_card(FinCofSet.finite({1, 2, 3})) == 3
    assert fincof_card(Z) == INF
    assert fincof_card(FinCofSet.cofinite_of({5})) == INF


def test_rank_examples():
    assert sym_rank(FREE_Z, FinCofSet.finite({1, 2})) == 2
    assert sym_rank(ALMOST_FREE_Z, Z) == INF


def test_relrank_examples():
    Zx = FinCofSet.cofinite_of({7})
    assert sym_relrank(FREE_Z, Z, Zx) == 1
    assert sym_relrank(ALMOST_FREE_Z, Z, Zx) == 0
    for kind in KINDS:
        for S in (EMPTY, Z, Zx, FinCofSet.finite({1})):
            assert sym_relrank(kind, S, S) == 0
    with pytest.raises(ValueError):
        sym_relrank(FREE_Z, EMPTY, Z)


def test_distinguishing_witness():
    A, B, v1, v2 = distinguishing_witness()
    assert (A, B) == (Z, FinCofSet.cofinite_of({0}))
    assert v1 != v2 and v1 - v2 == 1 and (v1, v2) == (1, 0)
    for S in (A, B):
        assert sym_rank(FREE_Z, S) == sym_rank(ALMOST_FREE_Z, S)


@given(fincofs, fincofs)
def test_set_algebra(X, Y):
    window = range(-8, 9)
    for x in window:
        assert (x in X | Y) == (x in X or x in Y)
        assert (x in X & Y) == (x in X and x in Y)
        assert (x in X - Y) == (x in X and x not in Y)
        assert (x in X.complement()) == (x not in X)
    assert (X | Y).complement() == X.complement() & Y.complement()
    assert (X & Y).complement() == X.complement() | Y.complement()
    assert X.complement().complement() == X
    assert (X & Y).issubset(X) and X.issubset(X | Y)


@given(fincofs)
def test_ranks_agree(X):
    assert sym_rank(FREE_Z, X) == sym_rank(ALMOST_FREE_Z, X) == fincof_card(X)


def test_ranks_agree_on_large_sample():
    rng = random.Random(7)
    sample = [random_fincof(rng) for _ in range(10_000)] + [Z, EMPTY]
    assert all(sym_rank(FREE_Z, X) == sym_rank(ALMOST_FREE_Z, X) for X in sample)


@given(fincofs, fincofs, fincofs)
def test_r1_to_r3(S1, S2, S3):
    C, B, A = S1 & S2, S1, S1 | S3
    for kind in KINDS:
        r = lambda P, Q: sym_relrank(kind, P, Q)  # noqa: E731
        assert 0 <= r(A, B) <= fincof_card(A - B)
        assert r(A, C) == r(A, B) + r(B, C)
        assert r(S1, S1 & S2) >= r(S1 | S2, S2)


def _truncated(kind, A, B):
    # both sets cofinite: model Z by the window covering both supports
    window = sorted(A.support | B.support | {100})
    E = GroundSet.of_size(len(window))
    pos = {x: i for i, x in enumerate(window)}
    M = uniform(len(window) - (kind is ALMOST_FREE_Z), len(window))

    def mask(S):
        return E.full & ~sum(1 << pos[x] for x in S.support)

    return M.relative_rank(mask(A), mask(B))


@given(fincofs, fincofs)
def test_closed_form_against_truncation(S1, S2):
    A, B = Z - FinCofSet.finite(S1.support), Z - FinCofSet.finite(S1.support | S2.support)
    for kind in KINDS:
        assert sym_relrank(kind, A, B) == _truncated(kind, A, B)
    # A = Z as well
    for kind in KINDS:
        assert sym_relrank(kind, Z, B) == _truncated(kind, Z, B)


def test_cofinite_over_finite_is_infinite():
    # the truncated value grows without bound as the window widens
    A, B = FinCofSet.cofinite_of({1}), FinCofSet.finite({2, 3})
    for kind in KINDS:
        assert sym_relrank(kind, A, B) == INF
        values = []
        for width in (5, 7, 9):
            E = GroundSet.of_size(width)
            M = uniform(width - (kind is ALMOST_FREE_Z), width)
            values.append(M.relative_rank(E.full & ~(1 << 1), 0b1100))
        assert values == sorted(set(values))


def test_r_independence_of_z():
    assert sym_r_independent(FREE_Z, Z, probes=range(-20, 21))
    assert not sym_r_independent(ALMOST_FREE_Z, Z, probes=[0])
    assert sym_is_independent(FREE_Z, Z) and not sym_is_independent(ALMOST_FREE_Z, Z)
    assert sym_r_independent(ALMOST_FREE_Z, FinCofSet.cofinite_of({0}), probes=range(-5, 6))


@pytest.mark.parametrize("n", range(7))
def test_windows_are_free(n):
    for kind in KINDS:
        W = window_matroid(kind, n)
        assert W == uniform(n, n)
        for A in range(1 << n):
            B = A
            while True:
                assert W.relative_rank(A, B) == sym_relrank(kind, window_set(A), window_set(B))
                if B == 0:
                    break
                B = (B - 1) & A


def test_str():
    assert str(Z) == "Z" and str(FinCofSet.cofinite_of({0})) == "Z-{0}"
    assert str(FinCofSet.finite({2, 1})) == "{1,2}"
