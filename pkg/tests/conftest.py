import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from relrank.enumeration import constructed_corpus, enumerate_matroids, isomorphism_classes  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def classes_upto4():
    return [e.matroid for n in range(5) for e in isomorphism_classes(n)]


@pytest.fixture(scope="session")
def labelled_upto3():
    return [M for n in range(4) for M in enumerate_matroids(n)]


@pytest.fixture(scope="session")
def labelled_upto4():
    return [M for n in range(5) for M in enumerate_matroids(n)]


@pytest.fixture(scope="session")
def spot_upto5():
    classes = [e.matroid for n in range(6) for e in isomorphism_classes(n)]
    built = [e.matroid for e in constructed_corpus() if e.matroid.n <= 5]
    return classes + built


@pytest.fixture(scope="session")
def constructed():
    return constructed_corpus()


@pytest.fixture
def fixtures_dir():
    return FIXTURES


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
