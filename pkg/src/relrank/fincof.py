"""Finite/cofinite subsets of the integers and two symbolic matroids on them.

``FREE_Z`` has every subset of Z independent; ``ALMOST_FREE_Z`` has every
subset except Z itself.  Their rank functions coincide while their relative
rank functions do not, which :func:`distinguishing_witness` exhibits.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from typing import Iterable

from .matroid import Matroid
from .sets import INF, ExtendedNat, GroundSet


@dataclass(frozen=True)
class FinCofSet:
    """A finite set (``cofinite=False``) or the complement of a finite set."""

    cofinite: bool
    support: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "support", frozenset(self.support))
        if any(isinstance(x, bool) or not isinstance(x, int) for x in self.support):
            raise TypeError("FinCofSet support must contain integers")

    @classmethod
    def finite(cls, elements: Iterable[int] = ()) -> FinCofSet:
        return cls(False, frozenset(elements))

    @classmethod
    def cofinite_of(cls, missing: Iterable[int] = ()) -> FinCofSet:
        """``Z`` minus the given elements."""
        return cls(True, frozenset(missing))

    @property
    def is_finite(self) -> bool:
        return not self.cofinite

    def __contains__(self, x: int) -> bool:
        return (x in self.support) != self.cofinite

    def complement(self) -> FinCofSet:
        return FinCofSet(not self.cofinite, self.support)

    def __or__(self, other: FinCofSet) -> FinCofSet:
        s, o = self.support, other.support
        if not self.cofinite and not other.cofinite:
            return FinCofSet(False, s | o)
        if self.cofinite and other.cofinite:
            return FinCofSet(True, s & o)
        if self.cofinite:
            return FinCofSet(True, s - o)
        return FinCofSet(True, o - s)

    def __and__(self, other: FinCofSet) -> FinCofSet:
        return (self.complement() | other.complement()).complement()

    def __sub__(self, other: FinCofSet) -> FinCofSet:
        return self & other.complement()

    def issubset(self, other: FinCofSet) -> bool:
        return (self - other) == EMPTY

    def __le__(self, other: FinCofSet) -> bool:
        return self.issubset(other)

    def __str__(self):
        body = ",".join(str(x) for x in sorted(self.support))
        if self.cofinite:
            return "Z" if not self.support else f"Z-{{{body}}}"
        return "{" + body + "}"


EMPTY = FinCofSet.finite()
Z = FinCofSet.cofinite_of()


def fincof_card(S: FinCofSet) -> ExtendedNat:
    return INF if S.cofinite else ExtendedNat(len(S.support))


class SymbolicMatroid(enum.Enum):
    FREE_Z = "FreeZ"
    ALMOST_FREE_Z = "AlmostFreeZ"

    def __str__(self):
        return self.value


FREE_Z = SymbolicMatroid.FREE_Z
ALMOST_FREE_Z = SymbolicMatroid.ALMOST_FREE_Z


def sym_is_independent(M: SymbolicMatroid, S: FinCofSet) -> bool:
    return M is FREE_Z or S != Z


def sym_rank(M: SymbolicMatroid, X: FinCofSet) -> ExtendedNat:
    # finite X is independent in both; infinite X holds arbitrarily large
    # finite independent subsets in both, so the supremum is inf either way
    return fincof_card(X)


def sym_relrank(M: SymbolicMatroid, A: FinCofSet, B: FinCofSet) -> ExtendedNat:
    """Closed-form ``r(A|B)`` for ``B ⊆ A``.

    In the free matroid the witnesses are ``I = A``, ``J = B``.  In the other
    one they are the same unless ``A = Z``: then a maximal independent ``I``
    inside Z is ``Z - y``.  If ``B`` is cofinite, ``J = B`` (or ``Z - y`` when
    ``B = Z``) and ``y`` can be taken outside ``B``, so exactly one element of
    ``A \\ B`` is lost.  If ``B`` is finite, ``A \\ B`` is infinite and so is
    the value.
    """
    if not B.issubset(A):
        raise ValueError(f"{B} is not a subset of {A}")
    size = fincof_card(A - B)
    if M is ALMOST_FREE_Z and A == Z and B.cofinite:
        return size.monus(1)
    return size


def distinguishing_witness() -> tuple[FinCofSet, FinCofSet, ExtendedNat, ExtendedNat]:
    """``(Z, Z-{0}, r_free, r_almost)``: same ranks, different relative rank."""
    A, B = Z, FinCofSet.cofinite_of({0})
    return A, B, sym_relrank(FREE_Z, A, B), sym_relrank(ALMOST_FREE_Z, A, B)


def sym_r_independent(M: SymbolicMatroid, S: FinCofSet, probes: Iterable[int]) -> bool:
    """``r(S|S-x) > 0`` for every probe ``x`` in ``S`` (all of ``S`` when finite)."""
    elements = sorted(S.support) if S.is_finite else [x for x in probes if x in S]
    return all(sym_relrank(M, S, S - FinCofSet.finite({x})) > 0 for x in elements)


def window_matroid(M: SymbolicMatroid, n: int) -> Matroid:
    """Restriction to the window ``{0, ..., n-1}``, labels ``"0" .. "n-1"``."""
    E = GroundSet.of_size(n)
    family = frozenset(
        mask for mask in range(1 << n)
        if sym_is_independent(M, FinCofSet.finite(i for i in range(n) if mask >> i & 1))
    )
    return Matroid.from_family(E, family)


def window_set(mask: int) -> FinCofSet:
    return FinCofSet.finite(i for i in range(mask.bit_length()) if mask >> i & 1)


def random_fincof(rng: random.Random, radius: int = 8, max_support: int = 5) -> FinCofSet:
    """A random finite or cofinite set with support inside ``[-radius, radius]``."""
    k = rng.randint(0, max_support)
    support = rng.sample(range(-radius, radius + 1), k)
    return FinCofSet(rng.random() < 0.5, frozenset(support))
