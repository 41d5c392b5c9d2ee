"""Reducible decompositions: relative homology ranks and summed contributions."""

from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hfrank import carrying as cy
from hfrank import reducible as rd
from hfrank.errors import InconsistentSigns, InvalidDecomposition, InvalidSurface

from oracles import relative_homology_oracle


GRID = [(g, b, m) for g in range(4) for b in range(4) for m in range(b + 1) if 2 - 2 * g - b <= 0]


@pytest.mark.parametrize("g, b, m", GRID)
def test_rel_homology_matches_cell_oracle(g, b, m):
    assert rd.rel_homology_ranks(g, b, m) == relative_homology_oracle(g, b, m)


@pytest.mark.parametrize("g, b, m", GRID)
def test_euler_identity_and_duality(g, b, m):
    h0, h1, h2 = rd.rel_homology_ranks(g, b, m)
    assert h0 - h1 + h2 == 2 - 2 * g - b
    d0, d1, d2 = rd.rel_homology_ranks(g, b, b - m)
    assert (d0, d1, d2) == (h2, h1, h0)


@pytest.mark.parametrize("args, expected", [
    ((1, 1, 1), (0, 2, 1)),
    ((0, 2, 0), (1, 1, 0)),
    ((2, 0, 0), (1, 4, 1)),
])
def test_rel_homology_examples(args, expected):
    assert rd.rel_homology_ranks(*args) == expected


@pytest.mark.parametrize("args", [(0, 0, 0), (0, 1, 0), (1, 1, 2), (-1, 3, 0)])
def test_rel_homology_rejects_bad_surfaces(args):
    with pytest.raises(InvalidSurface):
        rd.rel_homology_ranks(*args)


# -- components ----------------------------------------------------------------------------

def _pa(id="A", odd=0, even=0, u=None, r=None, boundaries=(), genus=None):
    return rd.PAComponent(id, odd, even, cy.SingularityCensus(u or {}, r or {}), tuple(boundaries), genus)


def test_periodic_component():
    c = rd.component_contribution(rd.PeriodicComponent("P", 4))
    assert (c.even, c.odd) == (4, 0)


def test_negative_periodic_lefschetz_is_rejected():
    with pytest.raises(InvalidDecomposition):
        rd.component_contribution(rd.PeriodicComponent("P", -1))


@pytest.mark.parametrize("census, expected", [
    (dict(u={3: 1}), (0, 2)),
    (dict(r={3: 2}), (2, 0)),
    (dict(odd=5, even=3, u={4: 1}, r={2: 1}), (4, 8)),
])
def test_pa_census_grading(census, expected):
    c = rd.component_contribution(_pa(**census))
    assert (c.even, c.odd) == expected


def test_punctures_add_prongs_unless_abutting_or_rotated():
    pts = [rd.Puncture("p", 3), rd.Puncture("q", 2, rotated=True), rd.Puncture("s", 4, abuts="F")]
    c = rd.component_contribution(_pa(odd=1, boundaries=pts))
    assert (c.even, c.odd) == (0, 1 + 3)


def test_rotated_puncture_cannot_abut():
    with pytest.raises(InvalidDecomposition):
        rd.component_contribution(_pa(boundaries=[rd.Puncture("p", 3, rotated=True, abuts="F")]))


def test_fixed_piece_away_from_pa():
    f = rd.FixedComponent("F", 1, (rd.FixedBoundary("x", "-"),))
    c = rd.component_contribution(f)
    assert rd.fixed_kind(f) == "a"
    assert (c.even, c.odd) == (1, 2)
    assert c.module_action == "intersection product"


def test_fixed_piece_with_one_pa_boundary():
    f = rd.FixedComponent("F", 1, (rd.FixedBoundary("x", None, "A", 3), rd.FixedBoundary("y", "+")))
    c = rd.component_contribution(f)
    h0, h1, h2 = rd.rel_homology_ranks(1, 3, 1)
    assert rd.fixed_kind(f) == "b"
    assert (c.even, c.odd) == (h0 + h2, h1 + 2)


def test_one_pa_boundary_must_be_negative():
    f = rd.FixedComponent("F", 1, (rd.FixedBoundary("x", "+", "A", 3),))
    with pytest.raises(InconsistentSigns):
        rd.component_contribution(f)


def test_fixed_piece_with_several_pa_boundaries():
    f = rd.FixedComponent("F", 0, (rd.FixedBoundary("x", "+", "A", 2), rd.FixedBoundary("y", "-", "B", 3),
                                   rd.FixedBoundary("z", "-")))
    c = rd.component_contribution(f)
    assert rd.fixed_kind(f) == "c"
    h0, h1, h2 = rd.rel_homology_ranks(0, 3, 2)
    assert (c.even, c.odd) == (h0 + h2, h1 + 5)


def test_several_pa_boundaries_need_both_signs():
    f = rd.FixedComponent("F", 0, (rd.FixedBoundary("x", "-", "A", 2), rd.FixedBoundary("y", "-", "B", 3),
                                   rd.FixedBoundary("z", "-")))
    with pytest.raises(InconsistentSigns):
        rd.component_contribution(f)


def test_fixed_annulus_outside_twist_region_is_rejected():
    with pytest.raises(InvalidDecomposition):
        rd.component_contribution(rd.FixedComponent("F", 0, (rd.FixedBoundary("x", "+"),
                                                              rd.FixedBoundary("y", "+"))))


def test_twist_regions():
    assert (lambda c: (c.even, c.odd))(rd.component_contribution(rd.TwistAnnulus("T"))) == (0, 0)
    flip = rd.component_contribution(rd.TwistAnnulus("T", "flip-twist"))
    assert (flip.even, flip.odd) == (2, 0)
    two = rd.component_contribution(rd.TwistAnnulus("T", fixed_annuli=2, directions=(1, 1, 1)))
    assert (two.even, two.odd) == (2, 2)
    mixed = rd.component_contribution(rd.TwistAnnulus("T", fixed_annuli=1, annulus_signs="+-"))
    assert (mixed.even, mixed.odd) == (0, 0)


def test_parallel_twists_share_a_direction():
    with pytest.raises(InconsistentSigns):
        rd.component_contribution(rd.TwistAnnulus("T", fixed_annuli=1, directions=(1, -1)))


# -- totals -----------------------------------------------------------------------------------

def test_all_periodic_spec():
    s = rd.total_rank(rd.DecompositionSpec((rd.PeriodicComponent("P", 4),)))
    assert (s.total_rank, s.even_rank, s.odd_rank) == (4, 4, 0)


@given(st.lists(st.integers(0, 9), min_size=1, max_size=5))
def test_all_periodic_even_minus_odd_is_total_lefschetz(lams):
    spec = rd.DecompositionSpec(tuple(rd.PeriodicComponent(f"P{i}", x) for i, x in enumerate(lams)))
    s = rd.total_rank(spec)
    assert s.even_rank - s.odd_rank == sum(lams) == s.total_rank


def test_two_fixed_tori_joined_by_a_twist():
    comps = (rd.FixedComponent("F1", 1, (rd.FixedBoundary("x", "-"),)),
             rd.FixedComponent("F2", 1, (rd.FixedBoundary("y", "-"),)),
             rd.TwistAnnulus("T"))
    s = rd.total_rank(rd.DecompositionSpec(comps, (2, 0)))
    assert (s.total_rank, s.even_rank, s.odd_rank) == (6, 2, 4)


def test_closed_pa_spec_reproduces_the_census(genus2_track, genus2_carrying):
    fpc = cy.rank(genus2_track, genus2_carrying)
    s = rd.total_rank(rd.DecompositionSpec((rd.PAComponent.from_census("A", fpc, genus=2),), (2, 0)))
    assert (s.total_rank, s.even_rank, s.odd_rank) == (fpc.rank, fpc.even_rank, fpc.odd_rank) == (66, 32, 34)


MIXED = (
    _pa("A", 10, 6, u={3: 1}, boundaries=[rd.Puncture("A.0", 3, abuts="F")], genus=1),
    rd.FixedComponent("F", 1, (rd.FixedBoundary("F.0", None, "A", 3), rd.FixedBoundary("F.1", "+"))),
    rd.PeriodicComponent("P", 2, 1, 1),
    rd.TwistAnnulus("T", "flip-twist"),
)


def test_mixed_spec_sums_its_parts():
    s = rd.total_rank(rd.DecompositionSpec(MIXED, (3, 0)))
    parts = [rd.component_contribution(c) for c in MIXED]
    assert s.even_rank == sum(p.even for p in parts)
    assert s.odd_rank == sum(p.odd for p in parts)
    assert (s.total_rank, s.even_rank, s.odd_rank) == (27, 10, 17)


@pytest.mark.parametrize("order", list(itertools.permutations(range(4))))
def test_rank_is_independent_of_component_order(order):
    s = rd.total_rank(rd.DecompositionSpec(tuple(MIXED[i] for i in order)))
    assert (s.even_rank, s.odd_rank) == (10, 17)


@pytest.mark.parametrize("comps, surface", [
    ((rd.PeriodicComponent("P", 1), rd.PeriodicComponent("P", 2)), None),
    ((rd.FixedComponent("F", 1, (rd.FixedBoundary("x", None, "Q", 3),)),), None),
    ((MIXED[0], rd.FixedComponent("F", 1, (rd.FixedBoundary("F.0", None, "A", 4),
                                           rd.FixedBoundary("F.1", "+")))), None),
    (MIXED, (2, 0)),
])
def test_inconsistent_decompositions(comps, surface):
    with pytest.raises(InvalidDecomposition):
        rd.total_rank(rd.DecompositionSpec(comps, surface))
