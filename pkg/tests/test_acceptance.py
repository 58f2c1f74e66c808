"""Exit criteria.  Each test appends one PASS/FAIL line to the terminal summary.

Everything here is exact integer comparison; the only numeric bounds are
the stated wall-clock budgets.
"""

import contextlib
import io
import os
import random
import time

import pytest

from cli_cases import CASES
from conftest import ACCEPTANCE_LINES, FIXTURES
from oracles import all_witness_values, brute_dual_family
from relrank.cli import main
from relrank.enumeration import (
    class_counts,
    constructed_corpus,
    converse_fuzz,
    enumerate_matroids,
    isomorphism_classes,
)
from relrank.fincof import (
    ALMOST_FREE_Z,
    EMPTY,
    FREE_Z,
    Z,
    FinCofSet,
    random_fincof,
    sym_rank,
    sym_relrank,
    window_matroid,
)
from relrank.formats import format_table
from relrank.matroid import uniform
from relrank.sets import nested_pairs
from relrank.table import (
    check_axioms,
    duality_identity,
    r_independents,
    reconstruct,
    table_from_matroid,
    zoom_violation,
)


def verdict(number, title, ok, detail=""):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title}"
    if detail:
        line += f" ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def class_corpus():
    return [e.matroid for n in range(5) for e in isomorphism_classes(n)]


@pytest.fixture(scope="module")
def labelled4():
    return [M for n in range(5) for M in enumerate_matroids(n)]


@pytest.fixture(scope="module")
def fuzz_runs():
    start = time.perf_counter()
    runs = {3: converse_fuzz(3, 10_000, seed=1), 4: converse_fuzz(4, 1_000, seed=1)}
    return runs, time.perf_counter() - start


def test_criterion_1_axioms_forward(class_corpus):
    start = time.perf_counter()
    first, second = class_counts(4, "independence"), class_counts(4, "rank")
    counts_ok = first == second == [1, 2, 4, 8, 17]
    corpus = [(f"class n={M.n}", M) for M in class_corpus]
    corpus += [(e.name, e.matroid) for e in constructed_corpus()]
    bad = []
    for name, M in corpus:
        report = check_axioms(table_from_matroid(M))
        if not report.passed:
            bad.append((name, report.failed_axioms()))
    elapsed = time.perf_counter() - start
    verdict(1, "R1-R5 hold on every corpus table", counts_ok and not bad and elapsed < 120,
            f"counts {first} / {second}, {len(corpus)} matroids, {len(bad)} failing, {elapsed:.1f}s")


def test_criterion_2_round_trip(class_corpus):
    failures = 0
    for M in class_corpus:
        t = table_from_matroid(M)
        rec = reconstruct(t)
        if not (rec.roundtrip_ok and rec.family == M.independents
                and table_from_matroid(rec.matroid).mismatches(t) == []):
            failures += 1
    verdict(2, "table -> I_r -> matroid -> table reproduces the input", failures == 0,
            f"{len(class_corpus)} matroids, {failures} failures")


def test_criterion_3_converse_fuzzing(fuzz_runs):
    runs, elapsed = fuzz_runs
    hard = sum(len(r.hard_failures) for r in runs.values())
    unexplained = sum(len(r.unexplained_mismatches) for r in runs.values())
    passing = {n: r.passing for n, r in runs.items()}
    ok = hard == 0 and unexplained == 0 and elapsed < 60 and all(r.trials for r in runs.values())
    verdict(3, "every mutated table passing R1-R5 round-trips", ok,
            f"trials 10000+1000, passing {passing}, hard failures {hard}, "
            f"mismatches without violation {unexplained}, {elapsed:.1f}s")


def test_criterion_4_witness_independence(class_corpus):
    exceptions = 0
    pairs = 0
    for M in class_corpus:
        for A, B in nested_pairs(M.ground):
            pairs += 1
            if all_witness_values(M.independents, A, B) != {M.relative_rank(A, B)}:
                exceptions += 1
    verdict(4, "all maximal witness pairs give the same |I - J|", exceptions == 0,
            f"{pairs} pairs, {exceptions} exceptions")


def test_criterion_5_zoom(class_corpus):
    exceptions = checked = 0
    for M in class_corpus:
        full = M.ground.full
        for X in range(full + 1):
            rest = full & ~X
            Y = rest
            while True:
                checked += 1
                if zoom_violation(M, X, Y) is not None:
                    exceptions += 1
                if Y == 0:
                    break
                Y = (Y - 1) & rest
    verdict(5, "r_M(A|B) = r_N(A-X|B-X) for N = (M/X)|Y", exceptions == 0,
            f"{checked} (X, Y) pairs, {exceptions} exceptions")


def test_criterion_6_lemma7():
    corpus = [e.matroid for n in range(6) for e in isomorphism_classes(n)]
    corpus += [e.matroid for e in constructed_corpus() if e.matroid.n <= 5]
    exceptions = 0
    for M in corpus:
        t = table_from_matroid(M)
        for I in range(M.ground.full + 1):
            positive = all(t[I, I & ~(1 << x)] > 0 for x in range(M.n) if I >> x & 1)
            if positive != M.is_independent(I):
                exceptions += 1
        if r_independents(t) != M.independents:
            exceptions += 1
    verdict(6, "I independent iff every r(I|I-x) > 0", exceptions == 0,
            f"{len(corpus)} matroids up to n=5, {exceptions} exceptions")


def test_criterion_7_duality(labelled4):
    wrong = pairs = 0
    small = [M for M in labelled4 if M.n <= 3]
    for M in small:
        dual_family = brute_dual_family(M.n, M.independents)
        for M2 in small:
            if M2.ground != M.ground:
                continue
            pairs += 1
            if duality_identity(M, M2) != (M2.independents == dual_family):
                wrong += 1
    involution = sum(M.dual().dual() != M for M in labelled4)
    verdict(7, "duality identity holds exactly for the dual; dual is an involution",
            wrong == 0 and involution == 0,
            f"{pairs} ordered pairs, {wrong} wrong, {involution} involution failures")


def test_criterion_8_redundancy(fuzz_runs):
    runs, _ = fuzz_runs
    small = {n: converse_fuzz(n, 2_000, seed=n) for n in (1, 2)}
    all_runs = {**small, **runs}
    cases = sum(r.redundancy_checked for r in all_runs.values())
    bad = [format_table(t) for r in all_runs.values() for t in r.redundancy_contradictions]
    for text in bad:
        print(text)
    verdict(8, "R1-R3 with finite values imply R4 and R5", cases > 0 and not bad,
            f"{cases} qualifying fuzzed tables, {len(bad)} counterexamples")


def test_criterion_9_counterexample():
    rng = random.Random(1)
    sample = [random_fincof(rng) for _ in range(10_000 - 2)] + [Z, EMPTY]
    disagree = sum(sym_rank(FREE_Z, X) != sym_rank(ALMOST_FREE_Z, X) for X in sample)
    Z0 = FinCofSet.cofinite_of({0})
    values = (sym_relrank(FREE_Z, Z, Z0), sym_relrank(ALMOST_FREE_Z, Z, Z0))
    windows_ok = all(window_matroid(k, n) == uniform(n, n) for k in (FREE_Z, ALMOST_FREE_Z) for n in range(7))
    ok = disagree == 0 and values == (1, 0) and windows_ok
    verdict(9, "ranks agree, relative ranks differ at (Z, Z-{0})", ok,
            f"{len(sample)} sets, {disagree} rank disagreements, values {values[0]} vs {values[1]}, "
            f"windows {'ok' if windows_ok else 'wrong'}")


def test_criterion_10_cli_determinism(monkeypatch):
    monkeypatch.chdir(FIXTURES)
    golden = os.path.join(os.path.dirname(__file__), "golden")
    failures = []
    for name, argv, code in CASES:
        with open(os.path.join(golden, f"{name}.out")) as fh:
            expected = fh.read()
        for threads in ("1", "4", "1"):
            monkeypatch.setenv("RELRANK_THREADS", threads)
            buf = io.StringIO()
            with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(io.StringIO()):
                got = main(argv)
            if got != code or buf.getvalue() != expected:
                failures.append((name, threads))
    commands = {next(a for a in argv if not a.startswith("--")) for _, argv, _ in CASES}
    verdict(10, "golden CLI output, stable across runs and thread counts", not failures,
            f"{len(CASES)} cases over {len(commands)} commands x 3 runs, {len(failures)} mismatches")
