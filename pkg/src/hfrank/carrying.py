"""Carrying data of an invariant train track and the fixed-point count.

A :class:`CarryingMap` records, for every branch ``b``, the tangential list
``sigma[b]`` (the edge path run over by the image of ``b``) and the
transverse list ``nu[b]`` (the image strands crossing ``b``, left to right
with ``b`` pointing along its orientation).  Entries are ``(branch, sign)``
with ``sign = +1`` when orientations agree.

Matrix convention: ``M[i, j]`` counts ``b_j`` in ``sigma[b_i]`` (rows are
source branches).  Only the trace enters the rank, and the trace does not
see the transpose.

Long iterates are handled through :class:`CarryingSummary`, which keeps
the exact (big-integer) incidence matrices and the first/last entries of
every list.  That is all the fixed-point count needs, and it composes.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence, Union

import numpy as np

from . import spectral
from .errors import (
    CountMismatch,
    DisconnectedEdgePath,
    HFError,
    InconsistentCensus,
    InconsistentFaceImage,
    InconsistentSwitchImage,
    LefschetzMismatch,
    NotAnAutomorphism,
    NotClosed,
    NotPrimitive,
    SignDisagreement,
    TrackMismatch,
)
from .traintrack import LEFT, RIGHT, BranchEnd, Face, TrainTrack, compute_faces, face_index, side_dart

log = logging.getLogger(__name__)

SignedRef = tuple[str, int]
Ends = tuple[SignedRef, SignedRef]


def _flip(ref: SignedRef) -> SignedRef:
    return (ref[0], -ref[1])


def _reverse(path: Sequence[SignedRef]) -> tuple[SignedRef, ...]:
    return tuple((b, -e) for b, e in reversed(path))


@dataclass(frozen=True, eq=True)
class CarryingMap:
    branches: tuple[str, ...]
    sigma: Mapping[str, tuple[SignedRef, ...]]
    nu: Mapping[str, tuple[SignedRef, ...]]

    def summary(self) -> "CarryingSummary":
        return CarryingSummary(
            branches=self.branches,
            matrix=incidence_matrix(self),
            signed=signed_incidence_matrix(self),
            sigma_ends={b: (s[0], s[-1]) for b, s in self.sigma.items()},
            nu_ends={b: (s[0], s[-1]) for b, s in self.nu.items()},
        )


@dataclass(frozen=True, eq=False)
class CarryingSummary:
    branches: tuple[str, ...]
    matrix: np.ndarray   # object dtype, exact
    signed: np.ndarray   # object dtype, signed multiplicities
    sigma_ends: Mapping[str, Ends]
    nu_ends: Mapping[str, Ends]


CarryingLike = Union[CarryingMap, CarryingSummary]


def as_summary(cm: CarryingLike) -> CarryingSummary:
    return cm if isinstance(cm, CarryingSummary) else cm.summary()


def identity_carrying(track: TrainTrack) -> CarryingMap:
    ids = track.branch_ids
    return CarryingMap(ids, {b: ((b, 1),) for b in ids}, {b: ((b, 1),) for b in ids})


def _matrix(cm: CarryingMap, signed: bool) -> np.ndarray:
    idx = {b: i for i, b in enumerate(cm.branches)}
    n = len(idx)
    m = np.zeros((n, n), dtype=object)
    m[:, :] = 0
    for b, path in cm.sigma.items():
        i = idx[b]
        for c, e in path:
            m[i, idx[c]] += e if signed else 1
    return m


def incidence_matrix(cm: CarryingLike) -> np.ndarray:
    """``M[i, j]`` = multiplicity of branch ``j`` in ``sigma[i]`` (exact integers)."""
    if isinstance(cm, CarryingSummary):
        return cm.matrix
    return _matrix(cm, signed=False)


def signed_incidence_matrix(cm: CarryingLike) -> np.ndarray:
    if isinstance(cm, CarryingSummary):
        return cm.signed
    return _matrix(cm, signed=True)


def automorphism_carrying(track: TrainTrack, perm: Mapping[str, SignedRef]) -> CarryingMap:
    """Carrying data of a symmetry of the track.

    ``perm[b] = (c, e)`` sends branch ``b`` onto ``c`` (reversed when ``e = -1``).
    The map must carry every switch onto a switch, sides onto sides, keeping
    the counterclockwise order of branch ends.
    """
    ids = track.branch_ids
    if set(perm) != set(ids) or sorted(c for c, _ in perm.values()) != sorted(ids):
        raise NotAnAutomorphism("branch map is not a bijection")

    def image(end: BranchEnd) -> BranchEnd:
        c, e = perm[end.branch]
        return BranchEnd(c, end.end if e == 1 else 1 - end.end)

    for sw in track.switches:
        ring = [image(x) for x in list(reversed(sw.side_b)) + list(sw.side_a)]
        target = track.switch[track.slot_of(ring[0]).switch]
        t_ring = list(reversed(target.side_b)) + list(target.side_a)
        ok = len(ring) == len(t_ring) and ring[0] in t_ring
        if ok:
            k = t_ring.index(ring[0])
            ok = t_ring[k:] + t_ring[:k] == ring
        if ok:
            sides = {track.slot_of(image(x)).side for x in sw.side_a}
            ok = len(sides) == 1 and len(sw.side_a) == len(target.side(sides.pop()))
        if not ok:
            raise NotAnAutomorphism(f"switch {sw.id!r} is not carried onto a switch")
    sigma = {b: (perm[b],) for b in ids}
    nu = {perm[b][0]: ((b, perm[b][1]),) for b in ids}
    return CarryingMap(ids, sigma, nu)


# -- validation ----------------------------------------------------------------

@dataclass(frozen=True)
class CarryingReport:
    issues: tuple[HFError, ...]

    @property
    def ok(self) -> bool:
        return not self.issues

    def raise_if_invalid(self) -> None:
        if self.issues:
            raise self.issues[0]


def _exit_end(ref: SignedRef) -> tuple[str, int]:
    return (ref[0], 1 if ref[1] == 1 else 0)


def _entry_end(ref: SignedRef) -> tuple[str, int]:
    return (ref[0], 0 if ref[1] == 1 else 1)


def validate_carrying(track: TrainTrack, cm: CarryingMap) -> CarryingReport:
    """Check count relations, sign agreement and smoothness of every edge path."""
    issues: list[HFError] = []
    ids = set(track.branch_ids)
    if set(cm.sigma) != ids or set(cm.nu) != ids or set(cm.branches) != ids:
        return CarryingReport((TrackMismatch("carrying lists do not match the track's branches"),))
    for name, lists in (("sigma", cm.sigma), ("nu", cm.nu)):
        for b, path in lists.items():
            if not path:
                issues.append(CountMismatch(f"{name}[{b}] is empty"))
            for c, e in path:
                if c not in ids or e not in (1, -1):
                    return CarryingReport((TrackMismatch(f"{name}[{b}] has bad entry {(c, e)!r}"),))

    # sigma_i contains b_j with sign e exactly as often as nu_j contains b_i with sign e
    tang = Counter((i, c, e) for i, path in cm.sigma.items() for c, e in path)
    trans = Counter((c, j, e) for j, path in cm.nu.items() for c, e in path)
    unsigned_t = Counter()
    unsigned_n = Counter()
    for (i, j, e), k in tang.items():
        unsigned_t[i, j] += k
    for (i, j, e), k in trans.items():
        unsigned_n[i, j] += k
    for key in sorted(set(unsigned_t) | set(unsigned_n)):
        i, j = key
        if unsigned_t[key] != unsigned_n[key]:
            issues.append(CountMismatch(
                f"{j} appears {unsigned_t[key]} times in sigma[{i}] but {i} appears "
                f"{unsigned_n[key]} times in nu[{j}]"))
        else:
            for e in (1, -1):
                if tang[i, j, e] != trans[i, j, e]:
                    issues.append(SignDisagreement(
                        f"orientations of {j} in sigma[{i}] and of {i} in nu[{j}] disagree"))
                    break

    for b, path in cm.sigma.items():
        for k in range(len(path) - 1):
            out = track.branch[path[k][0]].slot(_exit_end(path[k])[1])
            inn = track.branch[path[k + 1][0]].slot(_entry_end(path[k + 1])[1])
            if out.switch != inn.switch or out.side == inn.side:
                issues.append(DisconnectedEdgePath(
                    f"sigma[{b}] breaks between entries {k} and {k + 1} "
                    f"({path[k]!r} -> {path[k + 1]!r})"))
                break
    return CarryingReport(tuple(issues))


# -- composition -----------------------------------------------------------------

def compose(outer: CarryingMap, inner: CarryingMap) -> CarryingMap:
    """Carrying data of ``outer o inner`` (``inner`` applied first)."""
    if tuple(outer.branches) != tuple(inner.branches):
        raise TrackMismatch("carrying maps live on different tracks")
    rev_sigma = {b: _reverse(p) for b, p in outer.sigma.items()}
    sigma = {}
    for b, path in inner.sigma.items():
        out: list[SignedRef] = []
        for c, e in path:
            out.extend(outer.sigma[c] if e == 1 else rev_sigma[c])
        sigma[b] = tuple(out)
    rev_nu = {b: _reverse(p) for b, p in inner.nu.items()}
    nu = {}
    for b, strands in outer.nu.items():
        out = []
        for c, e in strands:
            out.extend(inner.nu[c] if e == 1 else rev_nu[c])
        nu[b] = tuple(out)
    return CarryingMap(inner.branches, sigma, nu)


def _compose_ends(first_map: Mapping[str, Ends], then_map: Mapping[str, Ends],
                  b: str) -> Ends:
    """Ends of a list obtained by expanding ``first_map[b]`` with ``then_map``."""
    (c0, e0), (c1, e1) = first_map[b]
    head = then_map[c0][0] if e0 == 1 else _flip(then_map[c0][1])
    tail = then_map[c1][1] if e1 == 1 else _flip(then_map[c1][0])
    return head, tail


def compose_summaries(outer: CarryingLike, inner: CarryingLike) -> CarryingSummary:
    o, i = as_summary(outer), as_summary(inner)
    if tuple(o.branches) != tuple(i.branches):
        raise TrackMismatch("carrying maps live on different tracks")
    return CarryingSummary(
        branches=i.branches,
        matrix=i.matrix.dot(o.matrix),
        signed=i.signed.dot(o.signed),
        sigma_ends={b: _compose_ends(i.sigma_ends, o.sigma_ends, b) for b in i.branches},
        nu_ends={b: _compose_ends(o.nu_ends, i.nu_ends, b) for b in i.branches},
    )


def iterate(cm: CarryingLike, n: int) -> CarryingSummary:
    """Summary of the ``n``-fold composite, ``n >= 1``."""
    if n < 1:
        raise ValueError("iterate count must be positive")
    base = as_summary(cm)
    out = base
    for _ in range(n - 1):
        out = compose_summaries(base, out)
    return out


# -- correction terms ----------------------------------------------------------------

def boundary_corrections(cm: CarryingLike) -> tuple[dict[str, Fraction], Fraction]:
    """Per-branch overcount ``s_i`` and its total.

    Half a unit each time ``b_i`` itself, with agreeing orientation, is the
    first or the last entry of ``sigma[b_i]``.
    """
    s = as_summary(cm)
    per = {}
    for b in s.branches:
        first, last = s.sigma_ends[b]
        per[b] = Fraction((first == (b, 1)) + (last == (b, 1)), 2)
    return per, sum(per.values(), Fraction(0))


def _away_first(s: CarryingSummary, end) -> SignedRef:
    """First entry of the image of a branch traversed away from ``end``'s switch."""
    first, last = s.sigma_ends[end.branch]
    return first if end.end == 0 else _flip(last)


def find_flips(track: TrainTrack, cm: CarryingLike) -> list[tuple[str, str, str]]:
    """Flips as ``(switch, branch_i, branch_j)`` triples."""
    s = as_summary(cm)
    flips = []
    for sw in track.switches:
        for ea in sw.side_a:
            for eb in sw.side_b:
                if ea.branch == eb.branch:
                    continue
                away_a = (ea.branch, 1 if ea.end == 0 else -1)
                away_b = (eb.branch, 1 if eb.end == 0 else -1)
                if _away_first(s, ea) == away_b and _away_first(s, eb) == away_a:
                    flips.append((sw.id, ea.branch, eb.branch))
    return flips


def flip_count(track: TrainTrack, cm: CarryingLike) -> int:
    return len(find_flips(track, cm))


# -- Lefschetz number from cells ---------------------------------------------------

def _start_switch(track: TrainTrack, ref: SignedRef) -> str:
    return track.branch[ref[0]].slot(0 if ref[1] == 1 else 1).switch


def switch_map(track: TrainTrack, cm: CarryingLike) -> dict[str, str]:
    """Switch onto which each switch is carried, read off the ends of the sigma lists."""
    s = as_summary(cm)
    out: dict[str, str] = {}
    for b in track.branch_ids:
        first, last = s.sigma_ends[b]
        br = track.branch[b]
        for src, img in ((br.end0.switch, _start_switch(track, first)),
                         (br.end1.switch, _start_switch(track, _flip(last)))):
            if out.setdefault(src, img) != img:
                raise InconsistentSwitchImage(
                    f"switch {src} is carried to both {out[src]} and {img}")
    return out


def cellular_lefschetz(track: TrainTrack, cm: CarryingLike, faces: Sequence[Face] | None = None) -> int:
    """Lefschetz number of the carried map on the cell structure of the track.

    Switches, branches and (disk) faces form a cell decomposition of the
    closed surface and the carrying is a cellular approximation of the map,
    so the number is ``#fixed switches - signed trace + #fixed faces``.
    """
    if track.surface.num_boundary:
        raise NotClosed("cellular Lefschetz number needs a closed surface")
    s = as_summary(cm)
    if faces is None:
        faces = compute_faces(track)
    fixed_switches = sum(1 for v, w in switch_map(track, s).items() if v == w)
    fixed_faces = len(face_map(track, faces, s).fixed)
    return fixed_switches - int(np.trace(s.signed)) + fixed_faces


# -- faces and singularities ------------------------------------------------------

@dataclass(frozen=True)
class FaceMap:
    image: tuple[int, ...]           # face k is carried onto face image[k]
    offsets: Mapping[int, int]       # fixed faces only: cyclic cusp shift

    @property
    def fixed(self) -> list[int]:
        return [k for k, j in enumerate(self.image) if j == k]


def face_map(track: TrainTrack, faces: Sequence[Face], cm: CarryingLike) -> FaceMap:
    """Read the action on complementary faces off the outermost transverse strands.

    The strand hugging the left (right) side of ``b_k`` is the first (last)
    entry of ``nu[b_k]``; the face on the corresponding side of that strand's
    branch is carried onto the face beside ``b_k``.  Smooth arcs between
    cusps correspond the same way, which gives the rotation of fixed faces.
    """
    s = as_summary(cm)
    where = face_index(faces)
    image: dict[int, int] = {}
    preimage: dict[int, int] = {}
    arc_map: dict[tuple[int, int], tuple[int, int]] = {}
    for k in track.branch_ids:
        first, last = s.nu_ends[k]
        for side, (j, e) in ((LEFT, first), (RIGHT, last)):
            src_side = side if e == 1 else (RIGHT if side == LEFT else LEFT)
            tgt_face, tgt_arc, _ = where[side_dart(k, side)]
            src_face, src_arc, _ = where[side_dart(j, src_side)]
            if image.setdefault(src_face, tgt_face) != tgt_face:
                raise InconsistentFaceImage(
                    f"face {src_face} is sent to both face {image[src_face]} and face {tgt_face}")
            if preimage.setdefault(tgt_face, src_face) != src_face:
                raise InconsistentFaceImage(
                    f"face {tgt_face} receives both face {preimage[tgt_face]} and face {src_face}")
            if arc_map.setdefault((src_face, src_arc), (tgt_face, tgt_arc)) != (tgt_face, tgt_arc):
                raise InconsistentFaceImage(
                    f"arc {src_arc} of face {src_face} lands on two different arcs")
    if len(image) != len(faces):
        raise InconsistentFaceImage("some face has no image")
    offsets = {}
    for fk, face in enumerate(faces):
        g = image[fk]
        p = faces[g].cusp_count
        if p != face.cusp_count:
            raise InconsistentFaceImage(
                f"face {fk} with {face.cusp_count} cusps lands on face {g} with {p}")
        pairs = [(ia, ta) for (sf, ia), (tf, ta) in arc_map.items() if sf == fk]
        if len({ta for _, ta in pairs}) != len(pairs) or (p and len(pairs) != p):
            raise InconsistentFaceImage(f"arcs of face {fk} are not matched bijectively")
        if g == fk:
            shifts = {(ta - ia) % p for ia, ta in pairs} if p else {0}
            if len(shifts) != 1:
                raise InconsistentFaceImage(f"face {fk} is not mapped by a rotation")
            offsets[fk] = shifts.pop()
    return FaceMap(tuple(image[k] for k in range(len(faces))), offsets)


@dataclass(frozen=True)
class SingularityCensus:
    u: Mapping[int, int]  # prongs -> unrotated fixed singular faces
    r: Mapping[int, int]  # prongs -> rotated fixed singular faces

    @property
    def unrotated_total(self) -> int:
        return sum(self.u.values())

    @property
    def rotated_total(self) -> int:
        return sum(self.r.values())


def singularity_census(fm: FaceMap, faces: Sequence[Face]) -> SingularityCensus:
    u: Counter = Counter()
    r: Counter = Counter()
    for k, off in sorted(fm.offsets.items()):
        face = faces[k]
        if face.kind != "disk":
            continue
        (u if off == 0 else r)[face.cusp_count] += 1
    return SingularityCensus(dict(sorted(u.items())), dict(sorted(r.items())))


# -- the count ----------------------------------------------------------------------

@dataclass(frozen=True)
class FixedPointCensus:
    trace: int
    flips: int
    overcount: Fraction
    census: SingularityCensus
    regular_odd: int
    regular_even: int
    rank: int
    even_rank: int
    odd_rank: int
    face_image: tuple[int, ...] = field(default=())

    @property
    def singular_odd(self) -> int:
        return sum((p - 1) * n for p, n in self.census.u.items())

    @property
    def singular_even(self) -> int:
        return self.census.rotated_total


def rank(track: TrainTrack, cm: CarryingLike, check_primitive: bool = True) -> FixedPointCensus:
    """Rank of Floer homology, ``tr(M) + f - sum s_i + sum_p (r_p - u_p)``.

    Gradings come from the orientation signs: a diagonal occurrence with
    agreeing orientation is positive hyperbolic (odd), a reversed one is
    negative hyperbolic (even).  The overcounted switch points and the
    ``p`` occurrences merged at each unrotated ``p``-prong face are
    removed from the odd ones; flips are reversals, hence even.
    """
    if track.surface.num_boundary:
        raise NotClosed("the train-track count applies to closed surfaces")
    s = as_summary(cm)
    if tuple(s.branches) != track.branch_ids:
        raise TrackMismatch("carrying data is indexed differently from the track")
    if check_primitive and not spectral.is_primitive(s.matrix):
        raise NotPrimitive("incidence matrix is not Perron-Frobenius")
    faces = compute_faces(track)
    fm = face_map(track, faces, s)
    census = singularity_census(fm, faces)
    tr = int(np.trace(s.matrix))
    signed_tr = int(np.trace(s.signed))
    positive = (tr + signed_tr) // 2
    negative = (tr - signed_tr) // 2
    _, s_total = boundary_corrections(s)
    if s_total.denominator != 1:
        raise InconsistentCensus(f"overcount total {s_total} is not an integer")
    f = flip_count(track, s)
    merged = sum(p * n for p, n in census.u.items())
    regular_odd = positive - int(s_total) - merged
    regular_even = negative + f
    if regular_odd < 0:
        raise InconsistentCensus(
            f"corrections exceed the positive diagonal count ({positive} < {s_total} + {merged})")
    total = tr + f - int(s_total) + census.rotated_total - census.unrotated_total
    singular_odd = sum((p - 1) * n for p, n in census.u.items())
    even = regular_even + census.rotated_total
    odd = regular_odd + singular_odd
    assert even + odd == total
    log.info("rank: tr=%d f=%d s=%s u=%s r=%s -> %d", tr, f, s_total, census.u, census.r, total)
    return FixedPointCensus(
        trace=tr,
        flips=f,
        overcount=s_total,
        census=census,
        regular_odd=regular_odd,
        regular_even=regular_even,
        rank=total,
        even_rank=even,
        odd_rank=odd,
        face_image=fm.image,
    )


def grading(census: FixedPointCensus, lefschetz: int | None = None) -> tuple[int, int]:
    """``(even, odd)`` ranks, cross-checked against a Lefschetz number if given."""
    even, odd = census.even_rank, census.odd_rank
    if lefschetz is not None and even - odd != lefschetz:
        raise LefschetzMismatch(
            f"combinatorial grading gives even - odd = {even - odd}, Lefschetz number is {lefschetz}")
    return even, odd
