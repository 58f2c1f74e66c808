"""Explicit relative-rank tables and the (R1)-(R5) axiom checker.

A table assigns a value in N ∪ {inf} to every nested pair ``B ⊆ A`` of a
finite ground set.  Nothing beyond that is assumed: the axioms are checked,
the independence family is read off, and the round trip back to a table is
compared entry for entry.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping, NamedTuple

from .matroid import AxiomReport, Matroid, check_independence_axioms
from .sets import (
    INF,
    ExtendedNat,
    GroundSet,
    GroundSetMismatch,
    MaskLike,
    compress,
    indices,
    nested_pairs,
    submasks,
)

AXIOMS = ("R1", "R2", "R3", "R4", "R5")
MAX_TABLE = 12


class PreconditionError(ValueError):
    """A lemma was invoked on a table or set outside its hypotheses."""


def _raw(v) -> int | ExtendedNat:
    # tables keep finite entries as plain ints; infinity stays the INF tag
    if isinstance(v, ExtendedNat):
        return v.value if v.is_finite else INF
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        raise ValueError(f"table values must be naturals or INF, got {v!r}")
    return v


class RelRankTable:
    """Immutable map from nested pairs ``(A, B)`` to extended naturals."""

    __slots__ = ("ground", "_n", "_vals", "_reports")

    def __init__(self, ground: GroundSet, values: Mapping[tuple[int, int], int | ExtendedNat]):
        ground.require_exhaustive(MAX_TABLE)
        n = ground.n
        vals = {}
        for (A, B), v in values.items():
            A, B = ground.check(A), ground.check(B)
            if B & ~A:
                raise ValueError(f"entry ({ground.format(A)}, {ground.format(B)}) is not a nested pair")
            vals[A << n | B] = _raw(v)
        if len(vals) != 3 ** n:
            raise ValueError(f"a table on {n} elements needs {3 ** n} entries, got {len(vals)}")
        self.ground = ground
        self._n = n
        self._vals = vals
        self._reports: dict = {}

    @classmethod
    def from_function(cls, ground: GroundSet, fn: Callable[[int, int], int | ExtendedNat]) -> RelRankTable:
        return cls(ground, {(A, B): fn(A, B) for A, B in nested_pairs(ground)})

    @classmethod
    def zeros(cls, ground: GroundSet) -> RelRankTable:
        return cls.from_function(ground, lambda A, B: 0)

    def raw(self, A: int, B: int) -> int | ExtendedNat:
        return self._vals[A << self._n | B]

    def __getitem__(self, key: tuple[MaskLike, MaskLike]) -> ExtendedNat:
        A, B = (self.ground.check(k) for k in key)
        try:
            return ExtendedNat.coerce(self._vals[A << self._n | B])
        except KeyError:
            raise KeyError(f"({self.ground.format(A)}, {self.ground.format(B)}) is not a nested pair") from None

    def items(self) -> Iterator[tuple[tuple[int, int], ExtendedNat]]:
        """Entries in canonical order (ascending A, then ascending B)."""
        for A, B in nested_pairs(self.ground):
            yield (A, B), ExtendedNat.coerce(self.raw(A, B))

    def __len__(self):
        return len(self._vals)

    def replace(self, changes: Mapping[tuple[int, int], int | ExtendedNat]) -> RelRankTable:
        vals = {(A, B): v for (A, B), v in self.items()}
        for key, v in changes.items():
            if key not in vals:
                raise KeyError(f"{key} is not a nested pair")
            vals[key] = v
        return RelRankTable(self.ground, vals)

    @property
    def is_finite(self) -> bool:
        return all(v is not INF for v in self._vals.values())

    def mismatches(self, other: RelRankTable) -> list[tuple[int, int]]:
        if other.ground != self.ground:
            raise GroundSetMismatch("tables over different ground sets")
        return [(A, B) for A, B in nested_pairs(self.ground) if self.raw(A, B) != other.raw(A, B)]

    def __eq__(self, other):
        if not isinstance(other, RelRankTable):
            return NotImplemented
        return self.ground == other.ground and self._vals == other._vals

    __hash__ = None

    def __repr__(self):
        return f"RelRankTable(n={self._n}, entries={len(self._vals)})"


def table_from_matroid(M: Matroid) -> RelRankTable:
    """``r_M(A|B)`` for every nested pair, via the greedy witness construction."""
    M.ground.require_exhaustive(MAX_TABLE)
    vals = {}
    J_of: dict[int, int] = {}
    for A, B in nested_pairs(M.ground):
        J = J_of.get(B)
        if J is None:
            J = J_of[B] = M.max_independent_extension(0, B)
        I = M.max_independent_extension(J, A)
        vals[A, B] = (I & ~J).bit_count()
    return RelRankTable(M.ground, vals)


def r_independents(t: RelRankTable) -> frozenset[int]:
    """``{I : r(I | I - x) > 0 for every x in I}``."""
    raw = t.raw
    return frozenset(
        I for I in range(1 << t.ground.n)
        if all(raw(I, I & ~(1 << x)) > 0 for x in indices(I))
    )


# ---------------------------------------------------------------------------
# axiom checker


class RViolation(NamedTuple):
    axiom: str
    witnesses: tuple[int, ...]
    observed: tuple

    def describe(self, E: GroundSet) -> str:
        f = E.format
        w, o = self.witnesses, self.observed
        if self.axiom == "R1":
            A, B = w
            return f"R1 violation: r({f(A)}|{f(B)}) = {o[0]} not in [0, {o[1]}]"
        if self.axiom == "R2":
            A, B = w
            return (f"R2 violation: A={f(A)}, B={f(B)}: r({f(A)}|{f(A & B)}) = {o[0]} "
                    f"< r({f(A | B)}|{f(B)}) = {o[1]}")
        if self.axiom == "R3":
            A, B, C = w
            return (f"R3 violation: chain {f(C)} ⊆ {f(B)} ⊆ {f(A)}: r({f(A)}|{f(C)}) = {o[0]} "
                    f"!= r({f(A)}|{f(B)}) + r({f(B)}|{f(C)}) = {o[1]} + {o[2]}")
        if self.axiom == "R4":
            A, B = w
            return (f"R4 violation: r(B+x|B) = 0 for every x in {f(A & ~B)} "
                    f"but r({f(A)}|{f(B)}) = {o[0]}")
        A, B = w
        return (f"R5 violation: no r-independent I ⊆ {f(A)} with r({f(A)}|I) = 0 "
                f"and r({f(B)}|{f(B)}∩I) = 0")


@dataclass
class RelRankReport:
    checked: tuple[str, ...]
    counts: dict[str, int]
    violations: dict[str, list[RViolation]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not any(self.counts.values())

    def holds(self, axiom: str) -> bool:
        if axiom not in self.counts:
            raise KeyError(f"{axiom} was not checked")
        return self.counts[axiom] == 0

    def failed_axioms(self) -> list[str]:
        return [a for a in self.checked if self.counts[a]]

    def first(self, axiom: str) -> RViolation | None:
        vs = self.violations.get(axiom)
        return vs[0] if vs else None

    def all_violations(self) -> list[RViolation]:
        return [v for a in self.checked for v in self.violations.get(a, [])]


def _threads(threads: int | None) -> int:
    if threads is None:
        threads = int(os.environ.get("RELRANK_THREADS", "1") or 1)
    return max(1, threads)


def _check_range(t: RelRankTable, axioms, lo: int, hi: int, indep: frozenset[int] | None):
    n = t.ground.n
    size = 1 << n
    raw = t.raw
    out: dict[str, list[RViolation]] = {a: [] for a in axioms}
    for A in range(lo, hi):
        if "R1" in out:
            for B in submasks(A):
                v = raw(A, B)
                bound = (A & ~B).bit_count()
                if not 0 <= v <= bound:
                    out["R1"].append(RViolation("R1", (A, B), (v, bound)))
        if "R2" in out:
            for B in range(size):
                lhs, rhs = raw(A, A & B), raw(A | B, B)
                if lhs < rhs:
                    out["R2"].append(RViolation("R2", (A, B), (lhs, rhs)))
        if "R3" in out:
            for B in submasks(A):
                rAB = raw(A, B)
                for C in submasks(B):
                    lhs, r1, r2 = raw(A, C), rAB, raw(B, C)
                    if lhs != r1 + r2:
                        out["R3"].append(RViolation("R3", (A, B, C), (lhs, r1, r2)))
        if "R4" in out:
            for B in submasks(A):
                if B == A:
                    continue
                v = raw(A, B)
                if v != 0 and all(raw(B | 1 << x, B) == 0 for x in indices(A & ~B)):
                    out["R4"].append(RViolation("R4", (A, B), (v,)))
        if "R5" in out:
            spanning = [I for I in indep if I & ~A == 0 and raw(A, I) == 0]
            for B in submasks(A):
                if not any(raw(B, B & I) == 0 for I in spanning):
                    out["R5"].append(RViolation("R5", (A, B), ()))
    return out


def check_axioms(t: RelRankTable, axioms: Iterable[str] = AXIOMS, threads: int | None = None) -> RelRankReport:
    """Check the chosen relative-rank axioms exhaustively.

    R1 runs over nested pairs, R2 over all pairs of subsets, R3 over all
    chains ``C ⊆ B ⊆ A``.  R4 is checked in its finite singleton-cover form:
    if ``r(B+x|B) = 0`` for every ``x`` in ``A \\ B`` then ``r(A|B) = 0``.
    R5 searches the r-independent subsets of ``A`` exhaustively.

    The work is split over ``A`` between ``threads`` workers (default from
    ``RELRANK_THREADS``); the report is identical for any split.
    """
    axioms = tuple(a for a in AXIOMS if a in set(axioms))
    key = axioms
    if key in t._reports:
        return t._reports[key]
    indep = r_independents(t) if "R5" in axioms else None
    size = 1 << t.ground.n
    workers = min(_threads(threads), size)
    bounds = [(size * i // workers, size * (i + 1) // workers) for i in range(workers)]
    if workers == 1:
        parts = [_check_range(t, axioms, 0, size, indep)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda b: _check_range(t, axioms, b[0], b[1], indep), bounds))
    violations = {a: sorted((v for p in parts for v in p[a]), key=lambda v: v.witnesses) for a in axioms}
    report = RelRankReport(axioms, {a: len(violations[a]) for a in axioms}, violations)
    t._reports[key] = report
    return report


def recheck(t: RelRankTable, v: RViolation) -> bool:
    """True iff the witnesses of ``v`` still violate its axiom on ``t``."""
    raw = t.raw
    if v.axiom == "R1":
        A, B = v.witnesses
        return not 0 <= raw(A, B) <= (A & ~B).bit_count()
    if v.axiom == "R2":
        A, B = v.witnesses
        return raw(A, A & B) < raw(A | B, B)
    if v.axiom == "R3":
        A, B, C = v.witnesses
        return raw(A, C) != raw(A, B) + raw(B, C)
    if v.axiom == "R4":
        A, B = v.witnesses
        return raw(A, B) != 0 and all(raw(B | 1 << x, B) == 0 for x in indices(A & ~B))
    if v.axiom == "R5":
        A, B = v.witnesses
        return not any(
            I & ~A == 0 and raw(A, I) == 0 and raw(B, B & I) == 0 for I in r_independents(t)
        )
    raise ValueError(f"unknown axiom {v.axiom}")


# ---------------------------------------------------------------------------
# reconstruction


@dataclass
class Reconstruction:
    family: frozenset[int]
    family_report: AxiomReport
    matroid: Matroid | None
    mismatch: tuple[int, int] | None

    @property
    def roundtrip_ok(self) -> bool:
        return self.matroid is not None and self.mismatch is None


def reconstruct(t: RelRankTable) -> Reconstruction:
    """Read off ``I_r``, build the matroid, and regenerate its table.

    ``matroid`` is ``None`` when ``I_r`` fails (I1)-(I3); ``mismatch`` is the
    first pair (canonical order) where the regenerated table differs.
    """
    family = r_independents(t)
    report = check_independence_axioms(t.ground, family)
    if not report.passed:
        return Reconstruction(family, report, None, None)
    M = Matroid(t.ground, family)
    diffs = table_from_matroid(M).mismatches(t)
    return Reconstruction(family, report, M, diffs[0] if diffs else None)


# ---------------------------------------------------------------------------
# identities on pairs of matroids and on minors


def duality_violation(M: Matroid, M2: Matroid) -> tuple[int, int, int, int] | None:
    """First ``(A, B, lhs, |A \\ B|)`` where ``r_M(A|B) + r_M2(E-B|E-A) != |A \\ B|``."""
    if M.ground != M2.ground:
        raise GroundSetMismatch("duality needs a common ground set")
    full = M.ground.full
    for A, B in nested_pairs(M.ground):
        lhs = M.relative_rank(A, B) + M2.relative_rank(full & ~B, full & ~A)
        size = (A & ~B).bit_count()
        if lhs != size:
            return A, B, lhs, size
    return None


def duality_identity(M: Matroid, M2: Matroid) -> bool:
    return duality_violation(M, M2) is None


def zoom_violation(M: Matroid, X: MaskLike, Y: MaskLike) -> tuple[int, int] | None:
    """First ``(A, B)`` with ``X ⊆ B ⊆ A ⊆ X ∪ Y`` where ``r_M(A|B) != r_N(A-X|B-X)``.

    ``N = (M/X)|Y``, with ``Y`` re-indexed onto its own elements.
    """
    X, Y = M.ground.check(X), M.ground.check(Y)
    if X & Y:
        raise ValueError("X and Y must be disjoint")
    N = M.contract(X).restrict(compress(Y, M.ground.full & ~X))
    for Ay in submasks(Y):
        A = X | Ay
        for By in submasks(Ay):
            B = X | By
            if M.relative_rank(A, B) != N.relative_rank(compress(Ay, Y), compress(By, Y)):
                return A, B
    return None


def zoom_identity(M: Matroid, X: MaskLike, Y: MaskLike) -> bool:
    return zoom_violation(M, X, Y) is None


# ---------------------------------------------------------------------------
# the plus and span criteria


def _element(E: GroundSet, x: int | str) -> int:
    if isinstance(x, str):
        return E.index(x)
    if not 0 <= x < E.n:
        raise PreconditionError(f"element index {x} outside the ground set")
    return x


def _require(t: RelRankTable, axioms: tuple[str, ...]) -> None:
    report = check_axioms(t, axioms)
    if not report.passed:
        raise PreconditionError(f"table fails {', '.join(report.failed_axioms())}")


def plus_criterion(t: RelRankTable, I: MaskLike, x: int | str) -> bool:
    """``r(I+x|I) > 0``, which for an r-independent ``I`` decides whether ``I+x`` is."""
    I = t.ground.check(I)
    x = _element(t.ground, x)
    if I >> x & 1:
        raise PreconditionError(f"{t.ground.labels[x]} already lies in {t.ground.format(I)}")
    _require(t, ("R1", "R3"))
    if I not in r_independents(t):
        raise PreconditionError(f"{t.ground.format(I)} is not r-independent")
    return t.raw(I | 1 << x, I) > 0


def span_criterion(t: RelRankTable, I: MaskLike, F: MaskLike) -> bool:
    """``r(F|I) == 0``, equivalent to ``I`` being maximal r-independent inside ``F``."""
    I, F = t.ground.check(I), t.ground.check(F)
    if I & ~F:
        raise PreconditionError(f"{t.ground.format(I)} is not a subset of {t.ground.format(F)}")
    _require(t, ("R1", "R3", "R4"))
    if I not in r_independents(t):
        raise PreconditionError(f"{t.ground.format(I)} is not r-independent")
    return t.raw(F, I) == 0


# ---------------------------------------------------------------------------
# redundancy of R4/R5


@dataclass(frozen=True)
class RedundancyReport:
    r1_to_r3: bool
    finite: bool
    r4: bool
    r5: bool

    @property
    def applicable(self) -> bool:
        """Finite ground set (always) with R1-R3 and finite values."""
        return self.r1_to_r3 and self.finite

    @property
    def contradiction(self) -> bool:
        """R1-R3 hold with finite values, yet R4 or R5 fails."""
        return self.applicable and not (self.r4 and self.r5)


def redundancy_report(t: RelRankTable) -> RedundancyReport:
    report = check_axioms(t)
    return RedundancyReport(
        r1_to_r3=all(report.holds(a) for a in ("R1", "R2", "R3")),
        finite=t.is_finite,
        r4=report.holds("R4"),
        r5=report.holds("R5"),
    )
