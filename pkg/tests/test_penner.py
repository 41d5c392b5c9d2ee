"""Penner curve systems: tracks, twist carryings, closed formula and homology checks."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hfrank import carrying as cy
from hfrank import penner as pn
from hfrank.errors import (
    CurvesNotDisjoint,
    HomologyMismatch,
    InvalidCyclicOrder,
    InvalidWord,
    MissingHomology,
    NotFilling,
    UnknownCurve,
)
from hfrank.traintrack import compute_faces

TORUS = pn.PennerCurveSystem({"C1": ("x0",)}, {"D1": ("x0",)}, {"x0": 1})


# -- systems ------------------------------------------------------------------------

def test_genus2_system_shape(genus2_system, genus2_track):
    assert genus2_system.num_crossings == 4
    assert len(genus2_system.branches) == 8
    assert genus2_system.c_branches == ("C1.0", "C1.1", "C1.2", "C1.3")
    assert genus2_system.intersection_counts().tolist() == [[4]]
    assert genus2_system.algebraic_intersection("C1", "D1") == 0
    assert len(genus2_track.switches) == 4


def test_curves_in_one_family_must_be_disjoint():
    with pytest.raises(CurvesNotDisjoint):
        pn.PennerCurveSystem({"C1": ("x0", "x1"), "C2": ("x1",)}, {"D1": ("x0", "x1")},
                             {"x0": 1, "x1": 1})


@pytest.mark.parametrize("c, d, signs", [
    ({"C1": ("x0", "x0")}, {"D1": ("x0",)}, {"x0": 1}),
    ({"C1": ("x0",)}, {"D1": ("x1",)}, {"x0": 1, "x1": 1}),
    ({"C1": ("x0",)}, {"D1": ("x0",)}, {"x0": 2}),
    ({"C1": ("x0",)}, {}, {"x0": 1}),
])
def test_malformed_systems(c, d, signs):
    with pytest.raises(InvalidCyclicOrder):
        pn.PennerCurveSystem(c, d, signs)


def test_torus_system_does_not_fill():
    report = pn.check_filling(TORUS)
    assert not report.fills and report.genus == 1
    with pytest.raises(NotFilling):
        pn.build_track(TORUS)


def test_unknown_curve(genus2_system):
    with pytest.raises(UnknownCurve):
        genus2_system.family("E7")


def test_region_count(random_systems):
    for cs in random_systems:
        report = pn.check_filling(cs)
        assert report.fills and report.connected
        assert len(report.regions) == 2 - 2 * report.genus + cs.num_crossings
        assert all(len(r) % 2 == 0 and len(r) >= 4 for r in report.regions)


def test_region_sizes_of_the_genus2_system(genus2_system):
    assert pn.check_filling(genus2_system).region_sizes == [8, 8]


# -- words and matrices -----------------------------------------------------------------

@pytest.mark.parametrize("word", [
    [["C1", -2, "alt"]],
    [["D1", 2, "alt"]],
    [["C1", 0]],
    [["C1", 2, "up"]],
])
def test_invalid_words(genus2_system, word):
    with pytest.raises(InvalidWord):
        pn.parse_word(word).validate(genus2_system)


def test_parse_word_round_trip(genus2_word):
    assert pn.parse_word(genus2_word.to_json()) == genus2_word
    assert genus2_word.to_json() == [["C1", 2, "alt"], ["D1", -2, "alt"]]


def test_twist_blocks(genus2_system):
    a, b = pn.block_matrices(genus2_system)
    nc = len(genus2_system.c_branches)
    eye = np.eye(nc, dtype=int)
    zero = np.zeros_like(eye)
    c_block = pn.word_matrix(genus2_system, pn.parse_word([["C1", 2, "alt"]]))
    d_block = pn.word_matrix(genus2_system, pn.parse_word([["D1", -2, "alt"]]))
    assert np.array_equal(c_block, np.block([[eye, zero], [a, eye]]))
    assert np.array_equal(d_block, np.block([[eye, b], [zero, eye]]))
    # each of the two ends of a branch meets every branch of a 4-branch curve
    assert a.sum(axis=1).tolist() == [8] * 4 and b.sum(axis=1).tolist() == [8] * 4


def test_word_matrix_matches_carrying(random_systems):
    for cs in random_systems[:10]:
        for word in (pn.canonical_word(cs), pn.canonical_word(cs, 2, 1)):
            assert np.array_equal(pn.word_matrix(cs, word),
                                  cy.incidence_matrix(pn.word_carrying(cs, word)))


def test_trace_identity(random_systems):
    for cs in random_systems:
        a, b = pn.block_matrices(cs)
        m = pn.word_matrix(cs, pn.canonical_word(cs))
        assert int(np.trace(m)) == len(cs.branches) + int(np.sum(b * a.T))


def test_composite_of_blocks(genus2_system, genus2_carrying):
    c_block = pn.word_carrying(genus2_system, pn.parse_word([["C1", 2, "alt"]]))
    d_block = pn.word_carrying(genus2_system, pn.parse_word([["D1", -2, "alt"]]))
    assert cy.compose(d_block, c_block) == genus2_carrying


# -- ranks ---------------------------------------------------------------------------------

@pytest.mark.parametrize("n, g, k, l, expected", [
    ([[1, 1], [1, 1]], 2, 1, 1, 18),
    ([[4]], 2, 1, 1, 66),
    ([[4]], 2, 2, 3, 386),
])
def test_closed_formula(n, g, k, l, expected):
    assert pn.closed_formula(n, g, k, l) == expected


def test_closed_formula_needs_intersections():
    with pytest.raises(NotFilling):
        pn.closed_formula([[0]], 2)


@pytest.mark.parametrize("k, l, rank, even, odd", [(1, 1, 66, 32, 34), (2, 3, 386, 192, 194)])
def test_genus2_pipeline(genus2_system, k, l, rank, even, odd):
    res = pn.penner_rank(genus2_system, pn.canonical_word(genus2_system, k, l))
    assert res.agrees and res.predicted == rank
    assert (res.census.even_rank, res.census.odd_rank) == (even, odd)
    assert res.lefschetz == -2


def test_cyclic_conjugate_has_the_same_rank(genus2_system):
    d_first = pn.parse_word([["D1", -2, "alt"], ["C1", 2, "alt"]])
    res = pn.penner_rank(genus2_system, d_first)
    assert res.census.rank == 66 and res.agrees


def test_non_canonical_word_has_no_prediction(genus2_system):
    word = pn.parse_word([["C1", 1, "left"], ["D1", -1, "right"]])
    with pytest.raises(InvalidWord):
        pn.predicted_rank(genus2_system, word)


def test_square_regions_are_regular_points():
    cs = pn.PennerCurveSystem({"C1": ("x0", "x1", "x2", "x3")}, {"D1": ("x0", "x1", "x3", "x2")},
                              {f"x{i}": 1 for i in range(4)})
    res = pn.penner_rank(cs, pn.canonical_word(cs))
    assert res.census.rank == 66 == res.predicted
    assert res.census.census.u == {2: 1, 6: 1}
    assert (res.census.even_rank, res.census.odd_rank) == (0, 66)


# -- homology -----------------------------------------------------------------------------

def test_trivial_words_have_euler_characteristic_lefschetz(genus2_system):
    assert pn.lefschetz_of_word(genus2_system, pn.TwistWord(())) == -2
    assert pn.lefschetz_of_word(genus2_system, pn.parse_word([["C1", 1, "left"]])) == -2


def test_homology_action_is_symplectic(genus2_system, genus2_word):
    act = pn.homology_action(genus2_system, genus2_word).astype(np.int64)
    j = pn._symplectic_form(4)
    assert np.array_equal(act.T @ j @ act, j)
    assert 2 - int(np.trace(act)) == pn.lefschetz_of_word(genus2_system, genus2_word) == -2


def test_homology_must_match_crossing_signs(genus2_system, genus2_word):
    bad = pn.PennerCurveSystem(genus2_system.c_curves, genus2_system.d_curves, genus2_system.signs,
                               {"C1": (1, 0, 0, 0), "D1": (0, 1, 0, 0)})
    with pytest.raises(HomologyMismatch):
        pn.lefschetz_of_word(bad, genus2_word)


def test_homology_required(random_systems):
    cs = random_systems[0]
    with pytest.raises(MissingHomology):
        pn.lefschetz_of_word(cs, pn.canonical_word(cs), require_homology=True)
    with pytest.raises(MissingHomology):
        pn.homology_action(cs, pn.canonical_word(cs))


def test_square_system_homology():
    cs = pn.PennerCurveSystem({"C1": ("x0", "x1", "x2", "x3")}, {"D1": ("x0", "x1", "x3", "x2")},
                              {f"x{i}": 1 for i in range(4)}, {"C1": (1, 0, 0, 0), "D1": (0, 4, 1, 0)})
    word = pn.canonical_word(cs)
    assert pn.lefschetz_of_word(cs, word, require_homology=True) == -66


# -- random systems -------------------------------------------------------------------

def _check_system(cs, word, full_lists=True):
    track = pn.build_track(cs)
    faces = compute_faces(track)
    genus = pn.check_filling(cs).genus
    if full_lists:
        cm = pn.word_carrying(cs, word)
        assert cy.validate_carrying(track, cm).ok
        assert cy.as_summary(cm).sigma_ends == pn.word_summary(cs, word).sigma_ends
    else:
        cm = pn.word_summary(cs, word)
    fpc = cy.rank(track, cm)
    # every face is fixed and unrotated; the overcount sits on the family twisted last
    assert fpc.census.r == {}
    assert fpc.census.unrotated_total == len(faces) == 2 - 2 * genus + cs.num_crossings
    per, total = cy.boundary_corrections(cm)
    last = cs.c_branches if cs.family(word.terms[-1].curve) == pn.C_FAMILY else cs.d_branches
    assert total == cs.num_crossings
    assert all(per[b] == (1 if b in last else 0) for b in cs.branches)
    assert fpc.flips == 0
    assert fpc.even_rank - fpc.odd_rank == pn.lefschetz_of_word(cs, word)
    return fpc


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 100_000), k=st.integers(1, 2), l=st.integers(1, 2))
def test_random_canonical_words(seed, k, l):
    cs = next(iter(pn.random_filling_systems(seed, 1, max_crossings=7)))
    word = pn.canonical_word(cs, k, l)
    fpc = _check_system(cs, word)
    assert fpc.rank == pn.predicted_rank(cs, word)


@settings(max_examples=15, deadline=None)
@given(seed=st.integers(0, 100_000),
       exps=st.lists(st.integers(1, 2), min_size=2, max_size=4))
def test_random_mixed_words(seed, exps):
    cs = next(iter(pn.random_filling_systems(seed, 1, max_crossings=6)))
    # alternate whole C and D blocks with varying powers
    terms = []
    for i, e in enumerate(exps):
        fam = cs.c_curves if i % 2 == 0 else cs.d_curves
        sign = 1 if i % 2 == 0 else -1
        terms += [pn.TwistTerm(c, sign * 2 * e) for c in fam]
    word = pn.TwistWord(tuple(terms))
    fpc = _check_system(cs, word, full_lists=False)
    assert fpc.rank == pn.predicted_rank(cs, word)
