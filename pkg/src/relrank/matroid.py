"""Finite matroids stored as their full independence family."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

from .sets import (
    GroundSet,
    GroundSetMismatch,
    MaskLike,
    compress,
    indices,
)


class Violation(NamedTuple):
    axiom: str
    witnesses: tuple[int, ...]
    message: str


@dataclass
class AxiomReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def failed_axioms(self) -> set[str]:
        return {v.axiom for v in self.violations}

    def lines(self) -> list[str]:
        return [v.message for v in self.violations]


class AxiomError(ValueError):
    """An explicit family failed the independence axioms."""

    def __init__(self, report: AxiomReport):
        self.report = report
        super().__init__("; ".join(report.lines()))


def _maximal_members(family: frozenset[int], n: int) -> list[int]:
    return sorted(
        I for I in family
        if not any((I | 1 << x) in family for x in range(n) if not I >> x & 1)
    )


def check_independence_axioms(E: GroundSet, family: Iterable[int]) -> AxiomReport:
    """Check (I1), (I2), (I3) on a finite family.  (IM) holds for any finite family.

    (I2) is tested via single-element deletions, which suffices by induction.
    (I3) is tested for every non-maximal member against every maximal member;
    witnesses are ``(I, I')``.
    """
    family = frozenset(E.check(I) for I in family)
    report = AxiomReport()
    fmt = E.format
    if 0 not in family:
        report.violations.append(Violation("I1", (0,), "I1 violation: {} not in family"))
    for I in sorted(family):
        for x in indices(I):
            sub = I & ~(1 << x)
            if sub not in family:
                report.violations.append(Violation(
                    "I2", (I, sub), f"I2 violation: {fmt(I)} in family but {fmt(sub)} absent"))
                break
    maximal = _maximal_members(family, E.n)
    maxset = set(maximal)
    for I in sorted(family):
        if I in maxset:
            continue
        for Ip in maximal:
            if not any((I | 1 << x) in family for x in indices(Ip & ~I)):
                report.violations.append(Violation(
                    "I3", (I, Ip),
                    f"I3 violation: {fmt(I)} is not maximal but no element of "
                    f"{fmt(Ip & ~I)} extends it, although {fmt(Ip)} is maximal"))
    return report


def recheck_independence(E: GroundSet, family: Iterable[int], v: Violation) -> bool:
    """True iff the witnesses of ``v`` still exhibit a violation of its axiom."""
    family = frozenset(family)
    if v.axiom == "I1":
        return 0 not in family
    if v.axiom == "I2":
        I, sub = v.witnesses
        return I in family and sub not in family and sub & ~I == 0
    if v.axiom == "I3":
        I, Ip = v.witnesses
        maximal = set(_maximal_members(family, E.n))
        return (I in family and I not in maximal and Ip in maximal
                and not any((I | 1 << x) in family for x in indices(Ip & ~I)))
    raise ValueError(f"unknown axiom {v.axiom}")


@dataclass(frozen=True)
class Matroid:
    """A finite matroid ``(E, independents)``; immutable once built."""

    ground: GroundSet
    independents: frozenset[int]

    @classmethod
    def from_family(cls, E: GroundSet, family: Iterable[MaskLike]) -> Matroid:
        """Build a matroid from an explicit family, raising :class:`AxiomError` on failure."""
        family = frozenset(E.check(I) for I in family)
        report = check_independence_axioms(E, family)
        if not report.passed:
            raise AxiomError(report)
        return cls(E, family)

    @property
    def n(self) -> int:
        return self.ground.n

    @cached_property
    def bases(self) -> tuple[int, ...]:
        return tuple(_maximal_members(self.independents, self.n))

    def is_independent(self, X: MaskLike) -> bool:
        return self.ground.check(X) in self.independents

    def max_independent_extension(self, J: MaskLike, A: MaskLike) -> int:
        """Greedily extend independent ``J`` to a maximal independent subset of ``A``.

        Candidates are scanned in ascending index order.
        """
        J, A = self.ground.check(J), self.ground.check(A)
        if J & ~A:
            raise ValueError(f"{self.ground.format(J)} is not contained in {self.ground.format(A)}")
        if J not in self.independents:
            raise ValueError(f"{self.ground.format(J)} is not independent")
        I = J
        for x in indices(A & ~J):
            if (I | 1 << x) in self.independents:
                I |= 1 << x
        return I

    def rank(self, X: MaskLike) -> int:
        return self.max_independent_extension(0, X).bit_count()

    def relative_rank_witness(self, A: MaskLike, B: MaskLike) -> tuple[int, int]:
        """The greedy witness pair ``(I, J)`` for ``r(A|B)``."""
        A, B = self.ground.check(A), self.ground.check(B)
        if B & ~A:
            raise ValueError(f"{self.ground.format(B)} is not a subset of {self.ground.format(A)}")
        J = self.max_independent_extension(0, B)
        I = self.max_independent_extension(J, A)
        return I, J

    def relative_rank(self, A: MaskLike, B: MaskLike) -> int:
        I, J = self.relative_rank_witness(A, B)
        return (I & ~J).bit_count()

    def restrict(self, A: MaskLike) -> Matroid:
        """``M|A``, re-indexed onto the elements of ``A`` in their original order."""
        A = self.ground.check(A)
        E = GroundSet(tuple(self.ground.labels_of(A)))
        return Matroid(E, frozenset(compress(I, A) for I in self.independents if I & ~A == 0))

    def contract(self, X: MaskLike, J: int | None = None) -> Matroid:
        """``M/X`` on ``E \\ X``.

        ``J`` is the maximal independent subset of ``X`` used to define the
        contraction; by default the greedy one.
        """
        X = self.ground.check(X)
        if J is None:
            J = self.max_independent_extension(0, X)
        elif J & ~X or J not in self.independents:
            raise ValueError("J must be an independent subset of X")
        rest = self.ground.full & ~X
        E = GroundSet(tuple(self.ground.labels_of(rest)))
        family = frozenset(
            compress(I & ~J, rest) for I in self.independents
            if I & J == J and I & X == J
        )
        return Matroid(E, family)

    def dual(self) -> Matroid:
        full = self.ground.full
        family = set()
        for B in self.bases:
            comp = full & ~B
            if comp in family:
                continue
            sub = comp
            while True:
                family.add(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & comp
        return Matroid.from_family(self.ground, family)

    def relabel(self, perm: Sequence[int]) -> Matroid:
        """Move element ``i`` to position ``perm[i]`` (labels travel with the bits)."""
        labels = [""] * self.n
        for i, p in enumerate(perm):
            labels[p] = self.ground.labels[i]
        return Matroid(GroundSet(tuple(labels)), frozenset(permute_mask(I, perm) for I in self.independents))

    def with_ground(self, E: GroundSet) -> Matroid:
        """Same family, different labels (sizes must agree)."""
        if E.n != self.n:
            raise GroundSetMismatch(f"cannot relabel a size-{self.n} matroid with {E.n} labels")
        return Matroid(E, self.independents)

    def __repr__(self):
        return f"Matroid(n={self.n}, rank={self.rank(self.ground.full)}, |I|={len(self.independents)})"


def permute_mask(mask: int, perm: Sequence[int]) -> int:
    out = 0
    for i in indices(mask):
        out |= 1 << perm[i]
    return out


def _default_ground(n: int, labels: Sequence[str] | None) -> GroundSet:
    E = GroundSet.of_size(n) if labels is None else GroundSet(tuple(labels))
    if E.n != n:
        raise ValueError(f"expected {n} labels, got {E.n}")
    E.require_exhaustive()
    return E


def from_explicit_family(E: GroundSet, family: Iterable[MaskLike]) -> Matroid:
    return Matroid.from_family(E, family)


def uniform(k: int, n: int, labels: Sequence[str] | None = None) -> Matroid:
    """``U_{k,n}``: every subset of size at most ``k`` is independent."""
    if not 0 <= k <= n:
        raise ValueError(f"uniform matroid needs 0 <= k <= n, got k={k}, n={n}")
    E = _default_ground(n, labels)
    family = frozenset(
        sum(1 << i for i in c) for size in range(k + 1) for c in combinations(range(n), size)
    )
    return Matroid(E, family)


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        self.parent[rx] = ry
        return True


def graphic(vertices: int, edges: Sequence[tuple[int, int]], labels: Sequence[str] | None = None) -> Matroid:
    """Cycle matroid of a multigraph; edge ``i`` is element ``i``."""
    for u, v in edges:
        if not (0 <= u < vertices and 0 <= v < vertices):
            raise ValueError(f"edge ({u},{v}) has an endpoint outside 0..{vertices - 1}")
    E = _default_ground(len(edges), labels)
    family = {0}
    # forests are downward closed: a set is a forest iff dropping its top edge
    # leaves a forest and the top edge joins two components of it
    for mask in range(1, 1 << len(edges)):
        top = mask.bit_length() - 1
        rest = mask ^ (1 << top)
        if rest not in family:
            continue
        uf = _UnionFind(vertices)
        for i in indices(rest):
            uf.union(*edges[i])
        if uf.union(*edges[top]):
            family.add(mask)
    return Matroid(E, frozenset(family))


def _as_bitvector(col) -> tuple[int, int]:
    bits = [int(c) for c in col]
    if any(b not in (0, 1) for b in bits):
        raise ValueError(f"column {col!r} is not a 0/1 vector")
    value = 0
    for i, b in enumerate(bits):
        value |= b << i
    return value, len(bits)


def gf2_independent(vectors: Iterable[int]) -> bool:
    """Linear independence over GF(2) of bit-packed vectors (xor basis elimination)."""
    basis: dict[int, int] = {}
    for v in vectors:
        while v:
            pivot = v.bit_length() - 1
            if pivot not in basis:
                basis[pivot] = v
                break
            v ^= basis[pivot]
        else:
            return False
    return True


def linear_gf2(columns: Sequence, labels: Sequence[str] | None = None) -> Matroid:
    """Column matroid of a 0/1 matrix over GF(2).

    Columns are strings like ``"101"`` or sequences of 0/1, all of one length.
    """
    packed = [_as_bitvector(c) for c in columns]
    if len({m for _, m in packed}) > 1:
        raise ValueError("columns have inconsistent lengths")
    vecs = [v for v, _ in packed]
    E = _default_ground(len(vecs), labels)
    family = {0}
    for mask in range(1, 1 << len(vecs)):
        top = mask.bit_length() - 1
        if mask ^ (1 << top) in family and gf2_independent(vecs[i] for i in indices(mask)):
            family.add(mask)
    return Matroid(E, frozenset(family))


def minor(M: Matroid, X: MaskLike, Y: MaskLike) -> Matroid:
    """``(M/X)|Y`` for disjoint ``X`` and ``Y``; labels of ``Y`` are kept."""
    X, Y = M.ground.check(X), M.ground.check(Y)
    if X & Y:
        raise ValueError("X and Y must be disjoint")
    N = M.contract(X)
    return N.restrict(compress(Y, M.ground.full & ~X))


__all__ = [
    "AxiomError",
    "AxiomReport",
    "Matroid",
    "Violation",
    "check_independence_axioms",
    "from_explicit_family",
    "gf2_independent",
    "graphic",
    "linear_gf2",
    "minor",
    "permute_mask",
    "recheck_independence",
    "uniform",
]
