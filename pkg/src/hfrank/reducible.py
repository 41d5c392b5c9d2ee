"""Floer homology ranks of reducible maps from a typed decomposition.

Components are fixed pieces, periodic pieces, pseudo-Anosov pieces and
twist annuli.  Fixed pieces are sorted by how many of their boundary
circles meet pseudo-Anosov pieces: none (contributes relative homology),
one (the punctured piece plus ``p - 1`` odd generators) or several
(relative homology plus ``q`` odd generators, ``q`` the total prong count).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Mapping, Sequence, Union

from . import carrying as cy
from .errors import InconsistentSigns, InvalidDecomposition, InvalidSurface

log = logging.getLogger(__name__)

PLUS = "+"
MINUS = "-"


def rel_homology_ranks(genus: int, num_boundary: int, num_negative: int) -> tuple[int, int, int]:
    """Ranks of ``H_k(S, d_- S; Z/2)`` for a connected surface, ``k = 0, 1, 2``.

    ``H_0`` survives only when no boundary circle is collapsed; ``H_2`` only
    when the surface is closed or every boundary circle is collapsed.  The
    middle rank follows from the Euler characteristic.
    """
    if genus < 0 or num_boundary < 0 or not 0 <= num_negative <= num_boundary:
        raise InvalidSurface(f"bad surface data ({genus}, {num_boundary}, {num_negative})")
    chi = 2 - 2 * genus - num_boundary
    if chi > 0:
        raise InvalidSurface(f"surface with Euler characteristic {chi} > 0")
    h0 = 1 if num_negative == 0 else 0
    h2 = 1 if num_boundary == 0 or num_negative == num_boundary else 0
    return h0, h0 + h2 - chi, h2


# -- component types ------------------------------------------------------------

@dataclass(frozen=True)
class FixedBoundary:
    id: str
    sign: str | None = None      # "+" or "-"
    abuts: str | None = None     # id of an abutting pseudo-Anosov component
    prongs: int | None = None    # prong count on that side


@dataclass(frozen=True)
class FixedComponent:
    id: str
    genus: int
    boundaries: tuple[FixedBoundary, ...] = ()


@dataclass(frozen=True)
class PeriodicComponent:
    id: str
    lefschetz: int
    genus: int | None = None
    num_boundary: int | None = None


@dataclass(frozen=True)
class Puncture:
    id: str
    prongs: int
    rotated: bool = False
    abuts: str | None = None     # id of an abutting fixed component


@dataclass(frozen=True)
class PAComponent:
    id: str
    regular_odd: int
    regular_even: int
    census: cy.SingularityCensus
    boundaries: tuple[Puncture, ...] = ()
    genus: int | None = None

    @classmethod
    def from_census(cls, id: str, fpc: cy.FixedPointCensus,
                    boundaries: Sequence[Puncture] = (), genus: int | None = None) -> "PAComponent":
        return cls(id, fpc.regular_odd, fpc.regular_even, fpc.census, tuple(boundaries), genus)


@dataclass(frozen=True)
class TwistAnnulus:
    id: str
    flavor: str = "twist"                   # "twist" or "flip-twist"
    fixed_annuli: int = 0                   # fixed annuli between parallel twists
    annulus_signs: str = PLUS + PLUS        # boundary signs of each fixed annulus
    directions: tuple[int, ...] | None = None  # signs of the parallel twists


Component = Union[FixedComponent, PeriodicComponent, PAComponent, TwistAnnulus]


@dataclass(frozen=True)
class DecompositionSpec:
    components: tuple[Component, ...]
    surface: tuple[int, int] | None = None  # (genus, boundary) of the whole surface


@dataclass(frozen=True)
class Contribution:
    id: str
    kind: str
    even: int
    odd: int
    module_action: str
    detail: Mapping[str, object] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return self.even + self.odd


@dataclass(frozen=True)
class HFSummary:
    even_rank: int
    odd_rank: int
    breakdown: tuple[Contribution, ...]

    @property
    def total_rank(self) -> int:
        return self.even_rank + self.odd_rank


# -- contributions -----------------------------------------------------------------------

_ACTS = "intersection product"
_ZERO = "zero"


def fixed_kind(c: FixedComponent) -> str:
    """``"a"`` (meets no pA piece), ``"b"`` (one pA boundary) or ``"c"`` (several)."""
    n = sum(b.abuts is not None for b in c.boundaries)
    return "a" if n == 0 else "b" if n == 1 else "c"


def _signs(c: FixedComponent) -> list[str]:
    out = []
    for b in c.boundaries:
        if b.sign not in (PLUS, MINUS):
            raise InvalidDecomposition(f"boundary {b.id!r} of {c.id!r} needs a sign '+' or '-'")
        out.append(b.sign)
    return out


def _fixed_contribution(c: FixedComponent) -> Contribution:
    if 2 - 2 * c.genus - len(c.boundaries) >= 0:
        raise InvalidDecomposition(
            f"fixed component {c.id!r} must have negative Euler characteristic; "
            "fixed annuli belong to twist regions")
    kind = fixed_kind(c)
    b = len(c.boundaries)
    if kind == "b":
        (pa,) = [x for x in c.boundaries if x.abuts is not None]
        if pa.sign == PLUS:
            raise InconsistentSigns(f"the pA boundary {pa.id!r} of {c.id!r} must be negative")
        if not pa.prongs or pa.prongs < 1:
            raise InvalidDecomposition(f"boundary {pa.id!r} of {c.id!r} needs a prong count")
        signs = [MINUS if x is pa else x.sign for x in c.boundaries]
        if any(s not in (PLUS, MINUS) for s in signs):
            raise InvalidDecomposition(f"every non-pA boundary of {c.id!r} needs a sign")
        h0, h1, h2 = rel_homology_ranks(c.genus, b + 1, signs.count(MINUS))
        extra = pa.prongs - 1
        return Contribution(c.id, "fixed-b", h0 + h2, h1 + extra, _ZERO,
                            {"h": (h0, h1, h2), "prongs": pa.prongs})
    signs = _signs(c)
    h0, h1, h2 = rel_homology_ranks(c.genus, b, signs.count(MINUS))
    if kind == "a":
        return Contribution(c.id, "fixed-a", h0 + h2, h1, _ACTS, {"h": (h0, h1, h2)})
    if PLUS not in signs or MINUS not in signs:
        raise InconsistentSigns(f"{c.id!r} meets several pA pieces and needs both boundary signs")
    q = 0
    for x in c.boundaries:
        if x.abuts is not None:
            if not x.prongs or x.prongs < 1:
                raise InvalidDecomposition(f"boundary {x.id!r} of {c.id!r} needs a prong count")
            q += x.prongs
    return Contribution(c.id, "fixed-c", h0 + h2, h1 + q, _ZERO, {"h": (h0, h1, h2), "prongs": q})


def _pa_contribution(c: PAComponent) -> Contribution:
    for x in c.boundaries:
        if x.prongs < 1:
            raise InvalidDecomposition(f"puncture {x.id!r} of {c.id!r} needs a positive prong count")
        if x.abuts is not None and x.rotated:
            raise InvalidDecomposition(f"puncture {x.id!r} of {c.id!r} abuts a fixed piece but is rotated")
    puncture_odd = sum(x.prongs for x in c.boundaries if not x.rotated and x.abuts is None)
    singular_odd = sum((p - 1) * n for p, n in c.census.u.items())
    even = c.regular_even + c.census.rotated_total
    odd = c.regular_odd + singular_odd + puncture_odd
    return Contribution(c.id, "pseudo-Anosov", even, odd, _ZERO,
                        {"u": dict(c.census.u), "r": dict(c.census.r), "punctures": puncture_odd})


def _twist_contribution(c: TwistAnnulus) -> Contribution:
    if c.flavor == "flip-twist":
        if c.fixed_annuli:
            raise InvalidDecomposition(f"flip-twist region {c.id!r} cannot hold fixed annuli")
        return Contribution(c.id, "flip-twist", 2, 0, _ZERO)
    if c.flavor != "twist":
        raise InvalidDecomposition(f"unknown twist flavor {c.flavor!r}")
    if c.fixed_annuli < 0:
        raise InvalidDecomposition(f"negative fixed-annulus count on {c.id!r}")
    if c.directions is not None:
        if len(c.directions) != c.fixed_annuli + 1:
            raise InvalidDecomposition(f"{c.id!r} lists {len(c.directions)} twists for "
                                       f"{c.fixed_annuli} fixed annuli")
        if len(set(c.directions)) > 1:
            raise InconsistentSigns(f"parallel twists in {c.id!r} twist in different directions")
    if len(c.annulus_signs) != 2 or set(c.annulus_signs) - {PLUS, MINUS}:
        raise InvalidDecomposition(f"annulus signs of {c.id!r} must be two of '+'/'-'")
    h0, h1, h2 = rel_homology_ranks(0, 2, c.annulus_signs.count(MINUS))
    n = c.fixed_annuli
    return Contribution(c.id, "twist", n * (h0 + h2), n * h1, _ZERO if n == 0 else _ACTS,
                        {"fixed_annuli": n})


def component_contribution(c: Component) -> Contribution:
    if isinstance(c, FixedComponent):
        return _fixed_contribution(c)
    if isinstance(c, PeriodicComponent):
        if c.lefschetz < 0:
            raise InvalidDecomposition(f"periodic component {c.id!r} has negative Lefschetz number")
        return Contribution(c.id, "periodic", c.lefschetz, 0, _ZERO)
    if isinstance(c, PAComponent):
        return _pa_contribution(c)
    if isinstance(c, TwistAnnulus):
        return _twist_contribution(c)
    raise InvalidDecomposition(f"unknown component {c!r}")


# -- consistency and totals -------------------------------------------------------------------

def _check_links(spec: DecompositionSpec) -> None:
    by_id: dict[str, Component] = {}
    for c in spec.components:
        if c.id in by_id:
            raise InvalidDecomposition(f"duplicate component id {c.id!r}")
        by_id[c.id] = c
    boundary_ids: set[str] = set()
    for c in spec.components:
        for b in getattr(c, "boundaries", ()):
            if b.id in boundary_ids:
                raise InvalidDecomposition(f"duplicate boundary id {b.id!r}")
            boundary_ids.add(b.id)
    for c in spec.components:
        if isinstance(c, FixedComponent):
            for b in c.boundaries:
                if b.abuts is not None and not isinstance(by_id.get(b.abuts), PAComponent):
                    raise InvalidDecomposition(f"{b.id!r} abuts {b.abuts!r}, which is not a pA component")
        if isinstance(c, PAComponent):
            for b in c.boundaries:
                if b.abuts is not None and not isinstance(by_id.get(b.abuts), FixedComponent):
                    raise InvalidDecomposition(f"{b.id!r} abuts {b.abuts!r}, which is not a fixed component")
    for c in spec.components:
        if not isinstance(c, FixedComponent):
            continue
        for pid in {b.abuts for b in c.boundaries if b.abuts is not None}:
            mine = sorted(b.prongs or 0 for b in c.boundaries if b.abuts == pid)
            theirs = sorted(b.prongs for b in by_id[pid].boundaries if b.abuts == c.id)
            if mine != theirs:
                raise InvalidDecomposition(
                    f"{c.id!r} and {pid!r} disagree on their shared boundaries ({mine} vs {theirs})")
    for c in spec.components:
        if isinstance(c, PAComponent):
            for b in c.boundaries:
                if b.abuts is not None and not any(
                        x.abuts == c.id for x in by_id[b.abuts].boundaries):
                    raise InvalidDecomposition(f"{b.abuts!r} does not list a boundary on {c.id!r}")


def _euler(c: Component) -> int:
    if isinstance(c, FixedComponent):
        return 2 - 2 * c.genus - len(c.boundaries)
    if isinstance(c, TwistAnnulus):
        return 0
    if isinstance(c, PAComponent):
        if c.genus is None:
            raise InvalidDecomposition(f"surface check needs the genus of {c.id!r}")
        return 2 - 2 * c.genus - len(c.boundaries)
    if c.genus is None or c.num_boundary is None:
        raise InvalidDecomposition(f"surface check needs genus and boundary count of {c.id!r}")
    return 2 - 2 * c.genus - c.num_boundary


def total_rank(spec: DecompositionSpec) -> HFSummary:
    """Sum the independent summands of every component."""
    _check_links(spec)
    if spec.surface is not None:
        g, b = spec.surface
        chi = sum(_euler(c) for c in spec.components)
        if chi != 2 - 2 * g - b:
            raise InvalidDecomposition(
                f"components have total Euler characteristic {chi}, surface has {2 - 2 * g - b}")
    parts = tuple(component_contribution(c) for c in spec.components)
    for p in parts:
        log.info("component %s (%s): even=%d odd=%d", p.id, p.kind, p.even, p.odd)
    return HFSummary(sum(p.even for p in parts), sum(p.odd for p in parts), parts)
