from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from fillsys.diagram import ChordWord, from_chords

GOLDEN = Path(__file__).parent / "golden"

settings.register_profile("default", max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def chord_words(draw, min_n=1, max_n=7):
    """Random ordered chord diagram: chord i is the i-th pair of a shuffled point list."""
    n = draw(st.integers(min_n, max_n))
    pts = draw(st.permutations(range(2 * n)))
    return from_chords([(pts[2 * i], pts[2 * i + 1]) for i in range(n)])


@st.composite
def permutations_of(draw, n):
    return [x + 1 for x in draw(st.permutations(range(n)))]


@pytest.fixture(scope="session")
def golden_dir():
    return GOLDEN


def words_from_text(text):
    return [ChordWord.parse(line) for line in text.strip().splitlines()]


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[n])
