import pytest

from fillsys.diagram import ChordWord, canonicalize, crossing_graph, rotate
from fillsys.figures import (
    VerificationReport,
    build_x,
    build_y,
    build_z,
    class_of,
    crossing_shape,
    path_word,
    proof_identities,
    verify_vanishing,
)
from fillsys.filling import boundary_profile, delete_chord, is_filling_system


def test_x_words():
    assert build_x(1).word.word == (1, 2, 1, 2)
    assert build_x(2).word.word == (1, 2, 1, 3, 2, 4, 3, 4)
    assert boundary_profile(build_x(2).word).orbits == (8,)
    x3 = build_x(3)
    assert boundary_profile(x3.word).b == 1 and x3.g == 3 and crossing_shape(x3) == "path"


def test_y2():
    y = build_y(2)
    assert y.word.word == (1, 2, 1, 3, 2, 4, 3, 5, 4, 5)
    assert boundary_profile(y.word).orbits == (3, 7)
    assert crossing_graph(y.word)[5] == {4}


def test_y1_rejected():
    assert boundary_profile(ChordWord(path_word(3))).orbits == (2, 4)
    with pytest.raises(ValueError):
        build_y(1)


def test_z1_is_the_triangle():
    z = build_z(1)
    assert boundary_profile(z.word).orbits == (3, 3)
    target = canonicalize(ChordWord((1, 3, 2, 1, 3, 2)))[0]
    assert canonicalize(z.word)[0] == target
    assert crossing_shape(z) == "cycle"


@pytest.mark.parametrize("g", range(2, 9))
def test_constructions_fill_and_have_the_right_shape(g):
    x, y, z = build_x(g), build_y(g), build_z(g)
    assert is_filling_system(x.word, g, 0) and is_filling_system(y.word, g, 1) and is_filling_system(z.word, g, 1)
    assert crossing_shape(x) == "path"
    # y hangs off the end of the path, so Y is a longer path
    assert crossing_shape(y) == "path" and crossing_graph(y.word)[2 * g + 1] == {2 * g}
    assert crossing_shape(z) == "cycle" and crossing_graph(z.word)[1] == {2, 2 * g + 1}


@pytest.mark.parametrize("g", [2, 3])
def test_every_face_of_z_is_x(g):
    z, xc = build_z(g), class_of(build_x(g))
    for i in range(1, z.n + 1):
        assert class_of(delete_chord(z, i)) == xc


@pytest.mark.parametrize("g", range(2, 8))
def test_proof_identities(g):
    report = VerificationReport(g)
    proof_identities(g, report)
    assert report.passed, report.text()


def test_report_rejects_duplicates():
    r = VerificationReport(2)
    r.add("a", True)
    with pytest.raises(ValueError):
        r.add("a", True)
    r.add("b", None, "why")
    assert r.status("a") == "PASS" and r.status("b") == "SKIP"
    assert r.machine().splitlines() == ["CHECK a PASS", "CHECK b SKIP why"]


def test_verify_vanishing_g2():
    report = verify_vanishing(2)
    assert report.passed and report.cokernel.trivial
    assert len(report.checks) == 9


def test_verify_g4_without_stretch_skips_chain_checks():
    report = verify_vanishing(4)
    statuses = [c.status for c in report.checks]
    assert statuses[:6] == ["PASS"] * 6 and statuses[6:] == ["SKIP"] * 3


def test_verify_budget_skip():
    report = verify_vanishing(3, budget=10)
    assert [c.status for c in report.checks][6:] == ["SKIP"] * 3


def test_verify_rejects_g1():
    with pytest.raises(ValueError):
        verify_vanishing(1)


def test_rotated_x_has_the_same_class():
    x = build_x(3).word
    assert all(canonicalize(rotate(x, r))[0].word == class_of(build_x(3)) for r in range(12))
