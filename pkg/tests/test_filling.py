import pytest
from hypothesis import given

from fillsys.diagram import ChordWord
from fillsys.enumerate import enumerate_matchings, word_of_matching
from fillsys.figures import build_x, build_y
from fillsys.filling import (
    FillingSystem,
    NotFillingError,
    boundary_profile,
    delete_chord,
    is_disconnected,
    is_filling_system,
    remove_chord,
)

from .conftest import chord_words


def W(*labels):
    return ChordWord(tuple(labels))


def hand_orbits(word):
    """Oracle: follow p -> partner(p + 1) with an explicit position table."""
    m = len(word)
    pos = {}
    for p, lab in enumerate(word):
        pos.setdefault(lab, []).append(p)
    other = {}
    for a, b in pos.values():
        other[a], other[b] = b, a
    seen, out = set(), []
    for s in range(m):
        if s in seen:
            continue
        p, n = s, 0
        while p not in seen:
            seen.add(p)
            p = other[(p + 1) % m]
            n += 1
        out.append(n)
    return sorted(out)


@pytest.mark.parametrize(
    "word,orbits,g",
    [
        ((1, 2, 1, 2), (4,), 1),
        ((1, 1, 2, 2), (1, 1, 2), 0),
        ((1, 2, 1, 3, 2, 4, 3, 4), (8,), 2),
        ((1, 2, 3, 1, 2, 3), (3, 3), 1),
    ],
)
def test_profile_examples(word, orbits, g):
    prof = boundary_profile(ChordWord(word))
    assert prof.orbits == orbits and prof.b == len(orbits) and prof.g == g


@pytest.mark.parametrize(
    "word,g,k,expected",
    [
        ((1, 2, 1, 3, 2, 4, 3, 4), 2, 0, True),
        ((1, 2, 1, 3, 2, 3), 1, 1, False),
        ((1, 1), 0, 1, False),
        ((1, 2, 1, 2), 1, 0, True),
        ((1, 2, 1, 2), 1, 1, False),
    ],
)
def test_is_filling_examples(word, g, k, expected):
    assert is_filling_system(ChordWord(word), g, k) is expected


def test_orbits_of_short_path():
    assert boundary_profile(W(1, 2, 1, 3, 2, 3)).orbits == (2, 4)


@pytest.mark.parametrize(
    "word,expected",
    [((1, 2, 1, 2, 3, 4, 3, 4), True), ((1, 2, 1, 3, 2, 4, 3, 4), False), ((1, 2, 1, 2), False), ((1,1), False)],
)
def test_is_disconnected_examples(word, expected):
    assert is_disconnected(ChordWord(word)) is expected


def test_filling_system_of_rejects():
    with pytest.raises(NotFillingError):
        FillingSystem.of(W(1, 1, 2, 2))
    fs = FillingSystem.of(W(1, 2, 1, 2))
    assert (fs.g, fs.k, fs.n) == (1, 0, 2)


class TestDeleteChord:
    def test_y2_first_face_is_x2(self):
        from fillsys.diagram import canonicalize

        face = delete_chord(build_y(2), 1)
        assert canonicalize(face)[0] == canonicalize(build_x(2).word)[0]

    def test_y2_second_face_is_zero(self):
        assert delete_chord(build_y(2), 2) is None

    def test_crossing_pair_face_is_zero(self):
        assert delete_chord(FillingSystem.of(W(1, 2, 1, 2)), 1) is None

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            delete_chord(build_x(2), 5)

    def test_remove_chord_keeps_order(self):
        assert remove_chord((1, 2, 1, 3, 2, 3), 2) == (1, 1, 2, 2)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_euler_parity_and_deletion_exhaustive(n):
    for m in enumerate_matchings(2 * n):
        word = word_of_matching(m)
        prof = boundary_profile(ChordWord(word))
        assert prof.b % 2 == (n + 1) % 2
        assert list(prof.orbits) == hand_orbits(word)
        if n > 1:
            for i in range(1, n + 1):
                assert abs(boundary_profile(ChordWord(remove_chord(word, i))).b - prof.b) == 1


@given(chord_words(max_n=9))
def test_euler_parity_random(w):
    prof = boundary_profile(w)
    assert prof.b % 2 == (w.n + 1) % 2
    assert sum(prof.orbits) == 2 * w.n
    assert list(prof.orbits) == hand_orbits(w.word)


@given(chord_words(min_n=2, max_n=9))
def test_deletion_changes_b_by_one(w):
    b = boundary_profile(w).b
    for i in range(1, w.n + 1):
        assert abs(boundary_profile(ChordWord(remove_chord(w.word, i))).b - b) == 1


@given(chord_words(max_n=9))
def test_one_face_has_no_short_orbit(w):
    prof = boundary_profile(w)
    if prof.b == 1:
        assert prof.min_orbit >= 3
        assert is_filling_system(w, prof.g, 0)
