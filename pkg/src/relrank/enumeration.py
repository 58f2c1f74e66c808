"""Test corpora: all small matroids, canonical forms, and rank-table fuzzing.

Randomness comes from :class:`random.Random` (MT19937) seeded with plain
integers, so every corpus and fuzz run is reproducible bit for bit.
"""

from __future__ import annotations

import enum
import random
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, permutations
from typing import Iterator

from .matroid import Matroid, check_independence_axioms, graphic, linear_gf2, uniform
from .sets import INF, GroundSet, GroundSetTooLarge, indices, nested_pairs
from .table import RelRankTable, check_axioms, reconstruct, redundancy_report, table_from_matroid

MAX_ENUMERATE = 5
MAX_CANONICAL = 7


class Source(enum.Enum):
    ENUMERATED = "enumerated"
    CONSTRUCTED = "constructed"
    FUZZED = "fuzzed"


@dataclass(frozen=True)
class CorpusEntry:
    matroid: Matroid
    source: Source
    name: str = ""

    @cached_property
    def canonical_key(self) -> bytes:
        return canonical_form(self.matroid)


def _down_closure(sets) -> frozenset[int]:
    out = set()
    for S in sets:
        if S in out:
            continue
        sub = S
        while True:
            out.add(sub)
            if sub == 0:
                break
            sub = (sub - 1) & S
    return frozenset(out)


def enumerate_matroids(n: int) -> Iterator[Matroid]:
    """Every labelled matroid on ``n`` elements, exactly once.

    The maximal sets of a finite matroid all have the same size, so the
    search runs rank by rank over nonempty collections of ``k``-subsets
    (mixed-size antichains never arise) and keeps the downward closures that
    pass (I1)-(I3).
    """
    if n > MAX_ENUMERATE:
        raise GroundSetTooLarge(f"enumeration is limited to n <= {MAX_ENUMERATE}")
    E = GroundSet.of_size(n)
    for k in range(n + 1):
        ksets = [sum(1 << i for i in c) for c in combinations(range(n), k)]
        chosen: list[int] = []

        def backtrack(pos: int) -> Iterator[Matroid]:
            if pos == len(ksets):
                if chosen:
                    family = _down_closure(chosen)
                    if check_independence_axioms(E, family).passed:
                        yield Matroid(E, family)
                return
            chosen.append(ksets[pos])
            yield from backtrack(pos + 1)
            chosen.pop()
            yield from backtrack(pos + 1)

        yield from backtrack(0)


def enumerate_rank_functions(n: int) -> Iterator[tuple[int, Matroid]]:
    """Second, independent pipeline: backtrack over matroid rank functions.

    Subsets get ranks in order of size; each value is bounded by unit
    increase and cut by local submodularity.  Yields ``(rank, matroid)``
    with independents ``{X : r(X) = |X|}``.
    """
    if n > MAX_ENUMERATE:
        raise GroundSetTooLarge(f"enumeration is limited to n <= {MAX_ENUMERATE}")
    E = GroundSet.of_size(n)
    order = sorted(range(1 << n), key=lambda m: (m.bit_count(), m))
    r = [0] * (1 << n)

    def feasible(X: int, v: int) -> bool:
        elems = list(indices(X))
        for a, b in combinations(elems, 2):
            if v + r[X & ~(1 << a) & ~(1 << b)] > r[X & ~(1 << a)] + r[X & ~(1 << b)]:
                return False
        return True

    def backtrack(pos: int) -> Iterator[tuple[int, Matroid]]:
        if pos == len(order):
            family = frozenset(X for X in range(1 << n) if r[X] == X.bit_count())
            yield r[-1], Matroid(E, family)
            return
        X = order[pos]
        below = [r[X & ~(1 << x)] for x in indices(X)]
        for v in range(max(below), min(below) + 2):
            if feasible(X, v):
                r[X] = v
                yield from backtrack(pos + 1)
        r[X] = 0

    yield from backtrack(1)


def canonical_form(M: Matroid) -> bytes:
    """Isomorphism-invariant key: the least sorted mask list over all relabelings."""
    n = M.n
    if n > MAX_CANONICAL:
        raise GroundSetTooLarge(f"canonical form is limited to n <= {MAX_CANONICAL}")
    family = sorted(M.independents)
    best = None
    for perm in permutations(range(n)):
        image = [0] * (1 << n)
        for m in range(1, 1 << n):
            low = m & -m
            image[m] = image[m ^ low] | 1 << perm[low.bit_length() - 1]
        key = sorted(image[I] for I in family)
        if best is None or key < best:
            best = key
    return bytes([n]) + len(best).to_bytes(4, "big") + b"".join(m.to_bytes(2, "big") for m in best)


def isomorphism_classes(n: int) -> list[CorpusEntry]:
    """One representative per class, the first one met by :func:`enumerate_matroids`."""
    seen: dict[bytes, CorpusEntry] = {}
    for M in enumerate_matroids(n):
        key = canonical_form(M)
        if key not in seen:
            entry = seen[key] = CorpusEntry(M, Source.ENUMERATED, f"class{n}.{len(seen)}")
            entry.__dict__["canonical_key"] = key
    return list(seen.values())


def class_counts(max_n: int, pipeline: str = "independence") -> list[int]:
    """Isomorphism-class counts for ``n = 0 .. max_n``."""
    counts = []
    for n in range(max_n + 1):
        if pipeline == "independence":
            keys = {canonical_form(M) for M in enumerate_matroids(n)}
        elif pipeline == "rank":
            by_rank: dict[int, set[bytes]] = {}
            for k, M in enumerate_rank_functions(n):
                by_rank.setdefault(k, set()).add(canonical_form(M))
            keys = set().union(*by_rank.values())
        else:
            raise ValueError(f"unknown pipeline {pipeline!r}")
        counts.append(len(keys))
    return counts


# ---------------------------------------------------------------------------
# constructed corpus


def path_graph(m: int) -> Matroid:
    return graphic(m + 1, [(i, i + 1) for i in range(m)])


def cycle_graph(m: int) -> Matroid:
    return graphic(m, [(i, (i + 1) % m) for i in range(m)])


def wheel_graph(spokes: int) -> Matroid:
    rim = [(i, i % spokes + 1) for i in range(1, spokes + 1)]
    hub = [(0, i) for i in range(1, spokes + 1)]
    return graphic(spokes + 1, rim + hub)


def random_gf2(rng: random.Random, max_columns: int = 8, max_rows: int = 5) -> Matroid:
    ncols = rng.randint(1, max_columns)
    nrows = rng.randint(1, max_rows)
    return linear_gf2(["".join(rng.choice("01") for _ in range(nrows)) for _ in range(ncols)])


def constructed_corpus(seed: int = 2024, gf2_count: int = 50) -> list[CorpusEntry]:
    """Uniform matroids up to 8 elements, paths/cycles/wheels up to 8 edges,
    and seeded random GF(2) column matroids with at most 8 columns."""
    out = []

    def add(M, name):
        out.append(CorpusEntry(M, Source.CONSTRUCTED, name))

    for n in range(9):
        for k in range(n + 1):
            add(uniform(k, n), f"U{k},{n}")
    for m in range(1, 9):
        add(path_graph(m), f"path{m}")
        add(cycle_graph(m), f"cycle{m}")
    for spokes in (3, 4):
        add(wheel_graph(spokes), f"wheel{spokes}")
    rng = random.Random(seed)
    for i in range(gf2_count):
        add(random_gf2(rng), f"gf2-{i}")
    return out


# ---------------------------------------------------------------------------
# fuzzing


def _point_mutation(rng: random.Random, vals: dict, n: int) -> bool:
    candidates = [(A, B) for A, B in nested_pairs(GroundSet.of_size(n)) if A != B]
    rng.shuffle(candidates)
    for A, B in candidates:
        v, bound = vals[A, B], (A & ~B).bit_count()
        if v is INF or v > bound:
            vals[A, B] = bound
            return True
        options = [w for w in (v - 1, v + 1) if 0 <= w <= bound]
        if options:
            vals[A, B] = rng.choice(options)
            return True
    return False


def _rank_mutation(rng: random.Random, vals: dict, n: int) -> bool:
    # shift r(X|∅) by ±1 and every entry with X as exactly one endpoint so
    # that chain additivity is preserved; reject shifts leaving the R1 box
    moves = [(X, d) for X in range(1, 1 << n) for d in (-1, 1)]
    rng.shuffle(moves)
    for X, d in moves:
        changes = {}
        for A, B in vals:
            if (A == X) == (B == X):
                continue
            v = vals[A, B]
            if v is INF:
                break
            w = v + d if A == X else v - d
            if not 0 <= w <= (A & ~B).bit_count():
                break
            changes[A, B] = w
        else:
            if changes:
                vals.update(changes)
                return True
    return False


def mutate_table(t: RelRankTable, seed: int) -> RelRankTable:
    """Seeded perturbation of one or more entries by ±1, kept inside ``[0, |A \\ B|]``.

    Modes: a single entry, a few entries, or a coherent shift of one or two
    values ``r(X|∅)`` together with every entry they determine through chain
    additivity.  Returns ``t`` itself when no entry can change.
    """
    rng = random.Random(seed)
    n = t.ground.n
    original = {key: (v.value if v.is_finite else INF) for key, v in t.items()}
    vals = dict(original)
    mode = rng.choice(("point", "points", "rank", "ranks"))
    if mode == "point":
        _point_mutation(rng, vals, n)
    elif mode == "points":
        for _ in range(rng.randint(2, 3)):
            _point_mutation(rng, vals, n)
    else:
        for _ in range(1 if mode == "rank" else 2):
            _rank_mutation(rng, vals, n)
    # composite moves may cancel out
    if vals == original:
        _point_mutation(rng, vals, n)
    if vals == original:
        return t
    return RelRankTable(t.ground, vals)


@dataclass
class FuzzReport:
    n: int
    trials: int = 0
    passing: int = 0
    roundtrips: int = 0
    new_matroids: int = 0
    failing_by_axiom: Counter = field(default_factory=Counter)
    hard_failures: list[int] = field(default_factory=list)
    unexplained_mismatches: list[int] = field(default_factory=list)
    redundancy_checked: int = 0
    redundancy_contradictions: list[RelRankTable] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.hard_failures or self.unexplained_mismatches or self.redundancy_contradictions)

    def records(self) -> list[tuple[str, object]]:
        return [
            ("n", self.n),
            ("trials", self.trials),
            ("passing", self.passing),
            ("roundtrips", self.roundtrips),
            ("new_matroids", self.new_matroids),
            *((f"failing.{a}", self.failing_by_axiom[a]) for a in sorted(self.failing_by_axiom)),
            ("redundancy_checked", self.redundancy_checked),
            ("hard_failures", len(self.hard_failures)),
            ("unexplained_mismatches", len(self.unexplained_mismatches)),
            ("redundancy_contradictions", len(self.redundancy_contradictions)),
        ]

    def lines(self) -> list[str]:
        return [f"{key}: {value}" for key, value in self.records()]


def converse_fuzz(n: int, trials: int, seed: int = 1, mutate: bool = True) -> FuzzReport:
    """Mutate tables of labelled matroids on ``n`` elements and rebuild them.

    Every table passing all axioms must round-trip; a failed round trip
    without a violated axiom is recorded by trial index, and a table with
    R1-R3 but not R4/R5 is kept whole.  With ``mutate=False`` the source tables are used as is.
    """
    if n > 4:
        raise GroundSetTooLarge("converse fuzzing is limited to n <= 4")
    report = FuzzReport(n)
    if trials <= 0:
        return report
    sources = [table_from_matroid(M) for M in enumerate_matroids(n)]
    rng = random.Random(seed)
    for trial in range(trials):
        src = sources[rng.randrange(len(sources))]
        t = mutate_table(src, rng.getrandbits(32)) if mutate else src
        axioms = check_axioms(t)
        rec = reconstruct(t)
        report.trials += 1
        if axioms.passed:
            report.passing += 1
            if rec.roundtrip_ok:
                report.roundtrips += 1
                if t != src:
                    report.new_matroids += 1
            else:
                report.hard_failures.append(trial)
        else:
            report.failing_by_axiom.update(axioms.failed_axioms())
        if not rec.roundtrip_ok and axioms.passed:
            report.unexplained_mismatches.append(trial)
        red = redundancy_report(t)
        if red.applicable:
            report.redundancy_checked += 1
            if red.contradiction:
                report.redundancy_contradictions.append(t)
    return report
