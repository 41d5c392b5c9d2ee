"""Cusped ribbon-graph model of a train track and its complementary faces.

Conventions
-----------
A switch is drawn with its tangent line horizontal: branches on ``side_a``
leave downward, branches on ``side_b`` leave upward, and both sides are
listed left to right in that same picture.  Going counterclockwise around
the switch one therefore meets ``reversed(side_b) + side_a``.

A branch runs from ``end0`` to ``end1``.  Its *left* side is the side on the
left when travelling in that direction.  Faces are traced keeping the face
on the left, so the dart ``(branch, +1)`` borders the left side of the branch
and ``(branch, -1)`` its right side.  After arriving at a switch through a
branch end the walk leaves through the clockwise successor of that end; the
turn is a cusp exactly when both ends sit on the same side of the switch.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    BigonFace,
    BoundaryFaceMismatch,
    CusplessAnnulus,
    DanglingEnd,
    EulerMismatch,
    GeometryError,
    InvalidSurface,
    LowValence,
    MonogonFace,
    OneSidedSwitch,
    SmoothDiskFace,
)

LEFT = "left"
RIGHT = "right"


@dataclass(frozen=True)
class Surface:
    genus: int
    num_boundary: int = 0

    def __post_init__(self):
        if self.genus < 0 or self.num_boundary < 0:
            raise InvalidSurface(f"negative genus or boundary count: {self}")
        if self.euler_char >= 0:
            raise InvalidSurface(
                f"surface of genus {self.genus} with {self.num_boundary} boundary "
                f"components has Euler characteristic {self.euler_char} >= 0"
            )

    @property
    def euler_char(self) -> int:
        return 2 - 2 * self.genus - self.num_boundary


@dataclass(frozen=True, order=True)
class BranchEnd:
    branch: str
    end: int  # 0 or 1


@dataclass(frozen=True)
class Slot:
    switch: str
    side: str  # "a" or "b"
    index: int


@dataclass(frozen=True)
class Switch:
    id: str
    side_a: tuple[BranchEnd, ...]
    side_b: tuple[BranchEnd, ...]

    @property
    def degree(self) -> int:
        return len(self.side_a) + len(self.side_b)

    def side(self, name: str) -> tuple[BranchEnd, ...]:
        return self.side_a if name == "a" else self.side_b


@dataclass(frozen=True)
class Branch:
    id: str
    end0: Slot
    end1: Slot

    def slot(self, end: int) -> Slot:
        return self.end0 if end == 0 else self.end1


@dataclass(frozen=True)
class TrainTrack:
    surface: Surface
    switches: tuple[Switch, ...]
    branches: tuple[Branch, ...]
    # Branch-sides (branch id, "left"/"right") whose face is a boundary annulus.
    boundary_sides: frozenset[tuple[str, str]] = field(default_factory=frozenset)

    @cached_property
    def branch_ids(self) -> tuple[str, ...]:
        return tuple(b.id for b in self.branches)

    @cached_property
    def index(self) -> dict[str, int]:
        return {b.id: i for i, b in enumerate(self.branches)}

    @cached_property
    def branch(self) -> dict[str, Branch]:
        return {b.id: b for b in self.branches}

    @cached_property
    def switch(self) -> dict[str, Switch]:
        return {s.id: s for s in self.switches}

    def slot_of(self, end: BranchEnd) -> Slot:
        return self.branch[end.branch].slot(end.end)

    @cached_property
    def _cw_next(self) -> dict[BranchEnd, tuple[BranchEnd, bool]]:
        nxt = {}
        for sw in self.switches:
            ring = list(reversed(sw.side_a)) + list(sw.side_b)
            sides = ["a"] * len(sw.side_a) + ["b"] * len(sw.side_b)
            n = len(ring)
            for k in range(n):
                nxt[ring[k]] = (ring[(k + 1) % n], sides[k] == sides[(k + 1) % n])
        return nxt

    def cw_next(self, end: BranchEnd) -> tuple[BranchEnd, bool]:
        """Clockwise successor of a branch end and whether the turn is a cusp."""
        return self._cw_next[end]

    @property
    def num_cusps(self) -> int:
        return sum(sw.degree - 2 for sw in self.switches)


def build_track(
    surface: Surface,
    switch_specs: Iterable[tuple[str, Sequence[tuple[str, int]], Sequence[tuple[str, int]]]],
    branch_specs: Iterable[str],
    boundary_sides: Iterable[tuple[str, str]] = (),
) -> TrainTrack:
    """Assemble and validate a track.

    ``switch_specs`` holds ``(switch_id, side_a, side_b)`` with each side a
    left-to-right list of ``(branch_id, end)`` pairs, ``end`` in {0, 1}.
    """
    branch_ids = list(branch_specs)
    if len(set(branch_ids)) != len(branch_ids):
        raise DanglingEnd("duplicate branch id")
    known = set(branch_ids)
    slots: dict[BranchEnd, Slot] = {}
    switches = []
    seen_switch = set()
    for sid, side_a, side_b in switch_specs:
        if sid in seen_switch:
            raise DanglingEnd(f"duplicate switch id {sid!r}")
        seen_switch.add(sid)
        sides = {}
        for name, spec in (("a", side_a), ("b", side_b)):
            ends = []
            for k, (bid, end) in enumerate(spec):
                if bid not in known:
                    raise DanglingEnd(f"switch {sid!r} references unknown branch {bid!r}")
                if end not in (0, 1):
                    raise DanglingEnd(f"switch {sid!r}: branch end must be 0 or 1, got {end!r}")
                be = BranchEnd(bid, end)
                if be in slots:
                    raise DanglingEnd(f"branch end {bid}.end{end} occupies two slots")
                slots[be] = Slot(sid, name, k)
                ends.append(be)
            sides[name] = tuple(ends)
        sw = Switch(sid, sides["a"], sides["b"])
        if sw.degree < 3:
            raise LowValence(f"switch {sid!r} has degree {sw.degree} < 3")
        if not sw.side_a or not sw.side_b:
            raise OneSidedSwitch(f"switch {sid!r} has an empty side")
        switches.append(sw)

    branches = []
    for bid in branch_ids:
        ends = []
        for e in (0, 1):
            be = BranchEnd(bid, e)
            if be not in slots:
                raise DanglingEnd(f"end{e} of branch {bid!r} is not attached to a switch")
            ends.append(slots[be])
        branches.append(Branch(bid, ends[0], ends[1]))

    bsides = frozenset((b, s) for b, s in boundary_sides)
    for b, s in bsides:
        if b not in known or s not in (LEFT, RIGHT):
            raise DanglingEnd(f"boundary face marker {(b, s)!r} is not a branch side")
    return TrainTrack(surface, tuple(switches), tuple(branches), bsides)


# -- faces ---------------------------------------------------------------------

Dart = tuple[str, int]  # (branch id, +1 forward / -1 backward)


def dart_side(dart: Dart) -> tuple[str, str]:
    return (dart[0], LEFT if dart[1] == 1 else RIGHT)


def side_dart(branch: str, side: str) -> Dart:
    return (branch, 1 if side == LEFT else -1)


@dataclass(frozen=True)
class Face:
    """A complementary region, as a cyclic walk of darts.

    ``cusp_after[k]`` records whether the turn after ``darts[k]`` is a cusp.
    Walks are rotated so that they begin right after a cusp whenever the face
    has one, which makes ``arcs`` contiguous slices.
    """

    darts: tuple[Dart, ...]
    cusp_after: tuple[bool, ...]
    kind: str  # "disk" or "annulus"

    @property
    def cusp_count(self) -> int:
        return sum(self.cusp_after)

    @property
    def euler(self) -> Fraction:
        base = 1 if self.kind == "disk" else 0
        return base - Fraction(self.cusp_count, 2)

    @property
    def boundary_walk(self) -> tuple[tuple[str, str, int], ...]:
        return tuple((b, dart_side((b, d))[1], d) for b, d in self.darts)

    @property
    def arcs(self) -> tuple[tuple[Dart, ...], ...]:
        """Maximal smooth runs of darts between consecutive cusps."""
        if self.cusp_count == 0:
            return (self.darts,)
        out, cur = [], []
        for dart, cusp in zip(self.darts, self.cusp_after):
            cur.append(dart)
            if cusp:
                out.append(tuple(cur))
                cur = []
        return tuple(out)


def _next_dart(track: TrainTrack, dart: Dart) -> tuple[Dart, bool]:
    bid, d = dart
    arriving = BranchEnd(bid, 1 if d == 1 else 0)
    nxt, cusp = track.cw_next(arriving)
    return (nxt.branch, 1 if nxt.end == 0 else -1), cusp


def compute_faces(track: TrainTrack) -> list[Face]:
    """Trace every face of the fattened track (deterministic order)."""
    order = {(b, d): 2 * i + (d == -1) for i, b in enumerate(track.branch_ids) for d in (1, -1)}
    unvisited = sorted(order, key=order.get)
    visited: set[Dart] = set()
    faces = []
    for start in unvisited:
        if start in visited:
            continue
        darts, cusps = [], []
        dart = start
        while True:
            visited.add(dart)
            darts.append(dart)
            dart, cusp = _next_dart(track, dart)
            cusps.append(cusp)
            if dart == start:
                break
        if any(cusps):
            # rotate so the walk starts just after a cusp, at the smallest such dart
            starts = [k for k in range(len(darts)) if cusps[k - 1]]
            k0 = min(starts, key=lambda k: order[darts[k]])
        else:
            k0 = min(range(len(darts)), key=lambda k: order[darts[k]])
        darts = darts[k0:] + darts[:k0]
        cusps = cusps[k0:] + cusps[:k0]
        sides = {dart_side(x) for x in darts}
        kind = "annulus" if sides & track.boundary_sides else "disk"
        faces.append(Face(tuple(darts), tuple(cusps), kind))
    return faces


def face_index(faces: Sequence[Face]) -> dict[Dart, tuple[int, int, int]]:
    """Map each dart to ``(face number, arc number, position in walk)``."""
    where = {}
    for fi, face in enumerate(faces):
        arc = 0
        for pos, (dart, cusp) in enumerate(zip(face.darts, face.cusp_after)):
            where[dart] = (fi, arc, pos)
            if cusp:
                arc += 1
    return where


@dataclass(frozen=True)
class GeometryReport:
    faces: tuple[Face, ...]
    issues: tuple[GeometryError, ...]
    euler_sum: Fraction
    fills: bool

    @property
    def ok(self) -> bool:
        return not self.issues

    def raise_if_invalid(self) -> None:
        if self.issues:
            raise self.issues[0]


def check_geometry(track: TrainTrack, faces: Sequence[Face] | None = None,
                   allow_bigons: bool = False) -> GeometryReport:
    """Validate face Euler characteristics and the filling condition.

    ``allow_bigons`` admits two-cusp disks; the Penner pipeline uses it for
    square regions of a curve system, which zip up to regular points.
    """
    if faces is None:
        faces = compute_faces(track)
    issues: list[GeometryError] = []
    for k, f in enumerate(faces):
        if f.kind == "disk":
            if f.cusp_count == 0:
                issues.append(SmoothDiskFace(f"face {k} is a disk without cusps"))
            elif f.cusp_count == 1:
                issues.append(MonogonFace(f"face {k} is a monogon"))
            elif f.cusp_count == 2 and not allow_bigons:
                issues.append(BigonFace(f"face {k} is a bigon (Euler characteristic 0)"))
        elif f.cusp_count == 0:
            issues.append(CusplessAnnulus(f"face {k} is an annulus without cusps"))
    n_annuli = sum(f.kind == "annulus" for f in faces)
    if n_annuli != track.surface.num_boundary:
        issues.append(BoundaryFaceMismatch(
            f"{n_annuli} faces marked as boundary annuli, surface has "
            f"{track.surface.num_boundary} boundary components"))
    euler_sum = sum((f.euler for f in faces), Fraction(0))
    fills = euler_sum == track.surface.euler_char and n_annuli == track.surface.num_boundary
    if euler_sum != track.surface.euler_char:
        issues.append(EulerMismatch(
            f"face Euler characteristics sum to {euler_sum}, surface has "
            f"{track.surface.euler_char}"))
    return GeometryReport(tuple(faces), tuple(issues), euler_sum, fills)
