"""Penner words: invariant tracks, twist carryings, and closed-form checks.

A curve system is given combinatorially.  Each curve is a cyclic list of
crossing ids; every crossing joins one C-curve and one D-curve and carries
the sign of the oriented pair (C, D) there.  Around a crossing with sign
``+1`` the four half-edges appear counterclockwise as ``C+, D+, C-, D-``
(``+`` leaves along the curve, ``-`` arrives); with sign ``-1`` the two
D half-edges trade places.

The curve arc from the ``k``-th crossing of ``K`` to the next one is the
branch ``"K.k"``, oriented along ``K``.  The track smooths every crossing
so that a traveller on a C-curve is turned right onto the D-curve, which
keeps it invariant under positive twists on C-curves and negative twists
on D-curves.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import carrying as cy
from .errors import (
    CurvesNotDisjoint,
    HomologyMismatch,
    InvalidCyclicOrder,
    InvalidWord,
    MissingHomology,
    NotAnAutomorphism,
    NotFilling,
    UnknownCurve,
)
from .traintrack import LEFT, RIGHT, Surface, TrainTrack, build_track as _assemble

log = logging.getLogger(__name__)

C_FAMILY = "C"
D_FAMILY = "D"
ALT = "alt"

HalfEdge = tuple[str, int]  # (family, +1 leaving / -1 arriving)

# Loop direction of a single twist, by (family, side).
_LOOP_DIRECTION = {
    (C_FAMILY, LEFT): 1,
    (C_FAMILY, RIGHT): -1,
    (D_FAMILY, LEFT): -1,
    (D_FAMILY, RIGHT): 1,
}


def branch_name(curve: str, k: int) -> str:
    return f"{curve}.{k}"


def _ccw(sign: int) -> tuple[HalfEdge, ...]:
    if sign == 1:
        return ((C_FAMILY, 1), (D_FAMILY, 1), (C_FAMILY, -1), (D_FAMILY, -1))
    return ((C_FAMILY, 1), (D_FAMILY, -1), (C_FAMILY, -1), (D_FAMILY, 1))


@dataclass(frozen=True)
class PennerCurveSystem:
    c_curves: Mapping[str, tuple[str, ...]]
    d_curves: Mapping[str, tuple[str, ...]]
    signs: Mapping[str, int]
    homology: Mapping[str, tuple[int, ...]] | None = None

    def __post_init__(self):
        object.__setattr__(self, "c_curves", {k: tuple(v) for k, v in self.c_curves.items()})
        object.__setattr__(self, "d_curves", {k: tuple(v) for k, v in self.d_curves.items()})
        object.__setattr__(self, "signs", dict(self.signs))
        if self.homology is not None:
            object.__setattr__(self, "homology", {k: tuple(int(x) for x in v)
                                                  for k, v in self.homology.items()})
        self._validate()

    def _validate(self) -> None:
        if not self.c_curves or not self.d_curves:
            raise InvalidCyclicOrder("both curve families must be nonempty")
        if set(self.c_curves) & set(self.d_curves):
            raise InvalidCyclicOrder("a curve id is used in both families")
        for family, curves in ((C_FAMILY, self.c_curves), (D_FAMILY, self.d_curves)):
            owner: dict[str, str] = {}
            for cid, order in curves.items():
                if not order:
                    raise InvalidCyclicOrder(f"curve {cid!r} has no crossings")
                for x in order:
                    if x in owner:
                        if owner[x] == cid:
                            raise InvalidCyclicOrder(f"curve {cid!r} passes crossing {x!r} twice")
                        raise CurvesNotDisjoint(
                            f"{family}-curves {owner[x]!r} and {cid!r} share crossing {x!r}")
                    owner[x] = cid
            if family == C_FAMILY:
                c_owner = owner
            else:
                d_owner = owner
        if set(c_owner) != set(d_owner):
            odd = sorted(set(c_owner) ^ set(d_owner))
            raise InvalidCyclicOrder(f"crossings {odd} lie on only one family")
        if set(self.signs) != set(c_owner):
            raise InvalidCyclicOrder("every crossing needs exactly one sign")
        if any(s not in (1, -1) for s in self.signs.values()):
            raise InvalidCyclicOrder("crossing signs must be +1 or -1")
        if self.homology is not None:
            missing = set(self.curves) - set(self.homology)
            if missing:
                raise MissingHomology(f"no homology class for curves {sorted(missing)}")
            dims = {len(v) for v in self.homology.values()}
            if len(dims) != 1 or dims.pop() % 2:
                raise HomologyMismatch("homology vectors must share one even length")

    # -- lookup ------------------------------------------------------------------

    @cached_property
    def curves(self) -> dict[str, tuple[str, ...]]:
        return {**self.c_curves, **self.d_curves}

    def family(self, curve: str) -> str:
        if curve in self.c_curves:
            return C_FAMILY
        if curve in self.d_curves:
            return D_FAMILY
        raise UnknownCurve(f"no curve named {curve!r}")

    @cached_property
    def crossings(self) -> tuple[str, ...]:
        return tuple(x for order in self.c_curves.values() for x in order)

    @cached_property
    def position(self) -> dict[str, dict[str, tuple[str, int]]]:
        """crossing -> family -> (curve, index along that curve)."""
        pos: dict[str, dict[str, tuple[str, int]]] = {x: {} for x in self.crossings}
        for family, curves in ((C_FAMILY, self.c_curves), (D_FAMILY, self.d_curves)):
            for cid, order in curves.items():
                for k, x in enumerate(order):
                    pos[x][family] = (cid, k)
        return pos

    @cached_property
    def branches(self) -> tuple[str, ...]:
        """C-branches first, then D-branches, each curve in order."""
        return tuple(branch_name(c, k) for c, order in self.curves.items() for k in range(len(order)))

    @cached_property
    def c_branches(self) -> tuple[str, ...]:
        return tuple(branch_name(c, k) for c, order in self.c_curves.items() for k in range(len(order)))

    @cached_property
    def d_branches(self) -> tuple[str, ...]:
        return tuple(branch_name(c, k) for c, order in self.d_curves.items() for k in range(len(order)))

    def branch_end(self, crossing: str, half: HalfEdge) -> tuple[str, int]:
        """Branch end occupying a half-edge at a crossing, as ``(branch, end)``."""
        family, direction = half
        cid, k = self.position[crossing][family]
        if direction == 1:
            return branch_name(cid, k), 0
        return branch_name(cid, (k - 1) % len(self.curves[cid])), 1

    def ccw_ends(self, crossing: str) -> list[tuple[str, int]]:
        return [self.branch_end(crossing, h) for h in _ccw(self.signs[crossing])]

    @property
    def num_crossings(self) -> int:
        return len(self.crossings)

    def intersection_counts(self) -> np.ndarray:
        """``n[i, j] = |C_i cap D_j|`` with curves in declaration order."""
        ci = {c: i for i, c in enumerate(self.c_curves)}
        dj = {d: j for j, d in enumerate(self.d_curves)}
        n = np.zeros((len(ci), len(dj)), dtype=np.int64)
        for x in self.crossings:
            n[ci[self.position[x][C_FAMILY][0]], dj[self.position[x][D_FAMILY][0]]] += 1
        return n

    def algebraic_intersection(self, a: str, b: str) -> int:
        """Signed crossing count of ``a`` with ``b`` (antisymmetric, zero within a family)."""
        fa, fb = self.family(a), self.family(b)
        if fa == fb:
            return 0
        c, d = (a, b) if fa == C_FAMILY else (b, a)
        total = sum(self.signs[x] for x in self.crossings
                    if self.position[x][C_FAMILY][0] == c and self.position[x][D_FAMILY][0] == d)
        return total if fa == C_FAMILY else -total


# -- regions and filling --------------------------------------------------------------

@dataclass(frozen=True)
class FillingReport:
    fills: bool
    genus: int | None
    regions: tuple[tuple[tuple[str, int], ...], ...]  # each a cyclic walk of (branch, direction)
    connected: bool

    @property
    def region_sizes(self) -> list[int]:
        return [len(r) for r in self.regions]


def _connected(cs: PennerCurveSystem) -> bool:
    curves = list(cs.curves)
    seen = {curves[0]}
    stack = [curves[0]]
    while stack:
        cur = stack.pop()
        for x in cs.curves[cur]:
            for fam in (C_FAMILY, D_FAMILY):
                nb = cs.position[x][fam][0]
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
    return len(seen) == len(curves)


def regions(cs: PennerCurveSystem) -> list[tuple[tuple[str, int], ...]]:
    """Complementary regions of the curve graph, traced with the region on the left."""
    cw_next: dict[tuple[str, int], tuple[str, int]] = {}
    for x in cs.crossings:
        ring = cs.ccw_ends(x)
        for k in range(4):
            cw_next[ring[k]] = ring[k - 1]
    darts = [(b, d) for b in cs.branches for d in (1, -1)]
    seen: set[tuple[str, int]] = set()
    out = []
    for start in darts:
        if start in seen:
            continue
        walk = []
        dart = start
        while dart not in seen:
            seen.add(dart)
            walk.append(dart)
            arriving = (dart[0], 1 if dart[1] == 1 else 0)
            nb, ne = cw_next[arriving]
            dart = (nb, 1 if ne == 0 else -1)
        out.append(tuple(walk))
    return out


def check_filling(cs: PennerCurveSystem) -> FillingReport:
    """Whether the curves fill a closed surface of negative Euler characteristic.

    The genus comes from ``V - E + F = 2 - 2g`` with ``E = 2V``.  Filling
    asks for a connected system whose regions all have more than two sides
    on a surface with ``g >= 2``.
    """
    regs = regions(cs)
    connected = _connected(cs)
    genus = None
    if connected:
        twice = 2 + cs.num_crossings - len(regs)
        genus = twice // 2 if twice % 2 == 0 else None
    fills = connected and genus is not None and genus >= 2 and all(len(r) > 2 for r in regs)
    return FillingReport(fills, genus, tuple(regs), connected)


def _surface(cs: PennerCurveSystem) -> Surface:
    report = check_filling(cs)
    if not report.fills:
        raise NotFilling(
            f"curve system does not fill (connected={report.connected}, genus={report.genus}, "
            f"region sizes={sorted(report.region_sizes)})")
    return Surface(report.genus, 0)


def _switch_specs(cs: PennerCurveSystem):
    for x in cs.crossings:
        e = lambda fam, d: cs.branch_end(x, (fam, d))  # noqa: E731
        cp, cm, dp, dm = e(C_FAMILY, 1), e(C_FAMILY, -1), e(D_FAMILY, 1), e(D_FAMILY, -1)
        side_b, side_a = ([cm, dp], [dm, cp]) if cs.signs[x] == 1 else ([cm, dm], [dp, cp])
        yield x, side_a, side_b


def build_track(cs: PennerCurveSystem) -> TrainTrack:
    """Invariant track: one switch per crossing, one branch per curve arc."""
    return _assemble(_surface(cs), _switch_specs(cs), cs.branches)


# -- single twists --------------------------------------------------------------------

def _other(family: str) -> str:
    return D_FAMILY if family == C_FAMILY else C_FAMILY


def _twisted_half_edge(cs: PennerCurveSystem, crossing: str, family: str, side: str) -> HalfEdge:
    ring = _ccw(cs.signs[crossing])
    k = ring.index((family, 1))
    return ring[(k + 1) % 4] if side == LEFT else ring[(k - 1) % 4]


def symmetry_carrying(cs: PennerCurveSystem, crossing_map: Mapping[str, str]) -> cy.CarryingMap:
    """Carrying data of a symmetry of the curve system given on crossings.

    Every curve must be carried onto a curve, forwards or backwards; the
    resulting branch map is checked to be a symmetry of the track.
    """
    if sorted(crossing_map) != sorted(cs.crossings) or \
            sorted(crossing_map.values()) != sorted(cs.crossings):
        raise NotAnAutomorphism("crossing map is not a bijection")
    track = build_track(cs)
    perm: dict[str, cy.SignedRef] = {}
    for curve, order in cs.curves.items():
        m = len(order)
        image = [crossing_map[x] for x in order]
        target = [k for k, o in cs.curves.items() if image[0] in o and len(o) == m]
        found = None
        for k in target:
            pos = {x: j for j, x in enumerate(cs.curves[k])}
            if not all(x in pos for x in image):
                continue
            for step in (1, -1):
                if all((pos[image[(i + 1) % m]] - pos[image[i]]) % m == step % m for i in range(m)):
                    found = (k, pos, step)
                    break
            if found:
                break
        if found is None:
            raise NotAnAutomorphism(f"curve {curve!r} is not carried onto a curve")
        k, pos, step = found
        for i in range(m):
            j = pos[image[i]]
            perm[branch_name(curve, i)] = ((branch_name(k, j), 1) if step == 1
                                           else (branch_name(k, (j - 1) % m), -1))
    return cy.automorphism_carrying(track, perm)


def _check_twist(cs: PennerCurveSystem, curve: str, side: str) -> str:
    family = cs.family(curve)
    if side not in (LEFT, RIGHT):
        raise InvalidWord(f"twist side must be {LEFT!r} or {RIGHT!r}, got {side!r}")
    return family


def twist_matrix(cs: PennerCurveSystem, curve: str, side: str) -> np.ndarray:
    """Incidence matrix of one twist on ``curve`` performed on ``side``.

    Every branch end of the other family sitting on that side of the curve
    picks up one full turn, covering each branch of the curve once.
    """
    family = _check_twist(cs, curve, side)
    idx = {b: i for i, b in enumerate(cs.branches)}
    n = len(idx)
    m = np.eye(n, dtype=np.int64).astype(object)
    order = cs.curves[curve]
    own = [idx[branch_name(curve, k)] for k in range(len(order))]
    for x in order:
        half = _twisted_half_edge(cs, x, family, side)
        beta, _ = cs.branch_end(x, half)
        for j in own:
            m[idx[beta], j] += 1
    return m


def single_twist(cs: PennerCurveSystem, curve: str, side: str) -> cy.CarryingMap:
    """Carrying data of one twist on ``curve`` (positive on C, negative on D)."""
    family = _check_twist(cs, curve, side)
    order = cs.curves[curve]
    m = len(order)
    delta = _LOOP_DIRECTION[family, side]
    kb = [branch_name(curve, k) for k in range(m)]

    def loop(k: int) -> tuple[cy.SignedRef, ...]:
        if delta == 1:
            return tuple((kb[(k + t) % m], 1) for t in range(m))
        return tuple((kb[(k - 1 - t) % m], -1) for t in range(m))

    prefix: dict[str, tuple[cy.SignedRef, ...]] = {}
    suffix: dict[str, tuple[cy.SignedRef, ...]] = {}
    strands: dict[int, list[tuple[int, cy.SignedRef]]] = {a: [] for a in range(m)}
    for k, x in enumerate(order):
        beta, end = cs.branch_end(x, _twisted_half_edge(cs, x, family, side))
        if end == 1:
            suffix[beta] = loop(k)
            sign = delta
        else:
            prefix[beta] = cy._reverse(loop(k))
            sign = -delta
        for a in range(m):
            t = (a - k) % m if delta == 1 else (k - 1 - a) % m
            strands[a].append((t, (beta, sign)))

    sigma = {}
    for b in cs.branches:
        sigma[b] = prefix.get(b, ()) + ((b, 1),) + suffix.get(b, ())
    nu = {b: ((b, 1),) for b in cs.branches}
    core = lambda a: ((kb[a], 1),)  # noqa: E731
    for a in range(m):
        if side == LEFT:
            loops = tuple(ref for _, ref in sorted(strands[a], key=lambda s: s[0]))
            nu[kb[a]] = loops + core(a)
        else:
            loops = tuple(ref for _, ref in sorted(strands[a], key=lambda s: -s[0]))
            nu[kb[a]] = core(a) + loops
    return cy.CarryingMap(cs.branches, sigma, nu)


# -- words ------------------------------------------------------------------------------

@dataclass(frozen=True)
class TwistTerm:
    curve: str
    exponent: int
    side: str = ALT

    def sides(self) -> list[str]:
        count = abs(self.exponent)
        if self.side == ALT:
            return [LEFT if t % 2 == 0 else RIGHT for t in range(count)]
        return [self.side] * count


@dataclass(frozen=True)
class TwistWord:
    """Twist terms in the order they are applied (first term acts first)."""

    terms: tuple[TwistTerm, ...] = field(default=())

    def validate(self, cs: PennerCurveSystem) -> None:
        for t in self.terms:
            family = cs.family(t.curve)
            if t.side not in (LEFT, RIGHT, ALT):
                raise InvalidWord(f"unknown side {t.side!r} for {t.curve!r}")
            if t.exponent == 0:
                raise InvalidWord(f"zero exponent on {t.curve!r}")
            if family == C_FAMILY and t.exponent < 0:
                raise InvalidWord(f"C-curve {t.curve!r} must be twisted positively")
            if family == D_FAMILY and t.exponent > 0:
                raise InvalidWord(f"D-curve {t.curve!r} must be twisted negatively")

    def singles(self) -> list[tuple[str, str]]:
        return [(t.curve, s) for t in self.terms for s in t.sides()]

    def to_json(self) -> list[list]:
        return [[t.curve, t.exponent, t.side] for t in self.terms]


def parse_word(obj) -> TwistWord:
    """Read ``[["C1", 2, "alt"], ["D1", -2, "alt"]]`` (side optional)."""
    if not isinstance(obj, (list, tuple)):
        raise InvalidWord("word must be a list of [curve, exponent, side] terms")
    terms = []
    for item in obj:
        if not isinstance(item, (list, tuple)) or len(item) not in (2, 3):
            raise InvalidWord(f"bad word term {item!r}")
        curve, exp = item[0], item[1]
        side = item[2] if len(item) == 3 else ALT
        if not isinstance(curve, str) or isinstance(exp, bool) or not isinstance(exp, int):
            raise InvalidWord(f"bad word term {item!r}")
        terms.append(TwistTerm(curve, exp, side))
    return TwistWord(tuple(terms))


def canonical_word(cs: PennerCurveSystem, k: int = 1, l: int = 1) -> TwistWord:
    """``prod tau_D^(-2l) prod tau_C^(2k)``: all C-twists first, sides alternating."""
    if k < 1 or l < 1:
        raise InvalidWord("block powers must be positive")
    terms = [TwistTerm(c, 2 * k, ALT) for c in cs.c_curves]
    terms += [TwistTerm(d, -2 * l, ALT) for d in cs.d_curves]
    return TwistWord(tuple(terms))


def word_carrying(cs: PennerCurveSystem, word: TwistWord) -> cy.CarryingMap:
    """Full tangential and transverse lists of the word, twist by twist."""
    _surface(cs)
    word.validate(cs)
    cache: dict[tuple[str, str], cy.CarryingMap] = {}
    result = cy.CarryingMap(cs.branches, {b: ((b, 1),) for b in cs.branches},
                            {b: ((b, 1),) for b in cs.branches})
    for curve, side in word.singles():
        if (curve, side) not in cache:
            cache[curve, side] = single_twist(cs, curve, side)
        result = cy.compose(cache[curve, side], result)
    return result


def word_summary(cs: PennerCurveSystem, word: TwistWord) -> cy.CarryingSummary:
    """Matrices and list ends of the word without materialising the full lists."""
    _surface(cs)
    word.validate(cs)
    cache: dict[tuple[str, str], cy.CarryingSummary] = {}
    result = cy.identity_carrying(build_track(cs)).summary()
    for curve, side in word.singles():
        if (curve, side) not in cache:
            cache[curve, side] = single_twist(cs, curve, side).summary()
        result = cy.compose_summaries(cache[curve, side], result)
    return result


def word_matrix(cs: PennerCurveSystem, word: TwistWord) -> np.ndarray:
    """Product of single-twist matrices (earlier twists on the left)."""
    word.validate(cs)
    n = len(cs.branches)
    eye = np.eye(n, dtype=np.int64).astype(object)
    return reduce(lambda acc, t: acc.dot(twist_matrix(cs, *t)), word.singles(), eye)


def block_matrices(cs: PennerCurveSystem) -> tuple[np.ndarray, np.ndarray]:
    """``A[beta, alpha]`` = ends of d_beta on the curve of c_alpha; ``B`` mirrors it."""
    def ends_on(branch_family: str, rows: Sequence[str], cols: Sequence[str]) -> np.ndarray:
        out = np.zeros((len(rows), len(cols)), dtype=np.int64)
        other = _other(branch_family)
        for i, b in enumerate(rows):
            curve, k = b.rsplit(".", 1)
            order = cs.curves[curve]
            for x in (order[int(k)], order[(int(k) + 1) % len(order)]):
                host = cs.position[x][other][0]
                for j, c in enumerate(cols):
                    if c.rsplit(".", 1)[0] == host:
                        out[i, j] += 1
        return out

    a = ends_on(D_FAMILY, cs.d_branches, cs.c_branches)
    b = ends_on(C_FAMILY, cs.c_branches, cs.d_branches)
    return a, b


def canonical_exponents(cs: PennerCurveSystem, word: TwistWord) -> list[tuple[str, int]]:
    """Split a canonical word into family blocks ``(family, power)``.

    Each maximal run of one family must twist every curve of that family
    equally often on each side; a run twisting every curve ``2k`` times is
    the block power ``k``.
    """
    word.validate(cs)
    runs: list[tuple[str, list[TwistTerm]]] = []
    for t in word.terms:
        fam = cs.family(t.curve)
        if runs and runs[-1][0] == fam:
            runs[-1][1].append(t)
        else:
            runs.append((fam, [t]))
    blocks = []
    for fam, terms in runs:
        curves = cs.c_curves if fam == C_FAMILY else cs.d_curves
        tally = {c: [0, 0] for c in curves}
        for t in terms:
            for s in t.sides():
                tally[t.curve][0 if s == LEFT else 1] += 1
        counts = {tuple(v) for v in tally.values()}
        if len(counts) != 1:
            raise InvalidWord(f"{fam}-run does not twist every curve of the family equally")
        left, right = counts.pop()
        if left != right or left == 0:
            raise InvalidWord(f"{fam}-run must twist each curve equally often on both sides")
        blocks.append((fam, left))
    return blocks


def closed_formula(n, genus: int, k: int = 1, l: int = 1) -> int:
    """``4 k l sum n_ij^2 + 2g - 2`` for intersection counts ``n``."""
    arr = np.asarray(n, dtype=object)
    if not np.any(arr != 0):
        raise NotFilling("curves without intersections cannot fill")
    return 4 * k * l * int(sum(int(v) ** 2 for v in arr.flat)) + 2 * genus - 2


def predicted_rank(cs: PennerCurveSystem, word: TwistWord) -> int:
    """Rank predicted for a product of canonical blocks.

    Only the trace changes from block to block; the overcount removes one
    per switch and every region is a fixed unrotated singularity.
    """
    blocks = canonical_exponents(cs, word)
    genus = check_filling(cs).genus
    fams = [f for f, _ in blocks]
    if len(blocks) == 2 and set(fams) == {C_FAMILY, D_FAMILY}:
        k = dict(blocks)[C_FAMILY]
        l = dict(blocks)[D_FAMILY]
        return closed_formula(cs.intersection_counts(), genus, k, l)
    v = cs.num_crossings
    tr = int(np.trace(word_matrix(cs, word)))
    return tr - v - (2 - 2 * genus + v)


@dataclass(frozen=True)
class PennerResult:
    census: cy.FixedPointCensus
    predicted: int
    lefschetz: int

    @property
    def agrees(self) -> bool:
        return self.census.rank == self.predicted


def penner_rank(cs: PennerCurveSystem, word: TwistWord) -> PennerResult:
    """Run the train-track count on a canonical word and compare with the formula."""
    predicted = predicted_rank(cs, word)
    track = build_track(cs)
    census = cy.rank(track, word_carrying(cs, word))
    lam = lefschetz_of_word(cs, word)
    cy.grading(census, lam)
    return PennerResult(census, predicted, lam)


# -- homology -----------------------------------------------------------------------------

def _symplectic_form(dim: int) -> np.ndarray:
    j = np.zeros((dim, dim), dtype=np.int64)
    for i in range(0, dim, 2):
        j[i, i + 1] = 1
        j[i + 1, i] = -1
    return j


def _twist_signs(cs: PennerCurveSystem, word: TwistWord) -> list[tuple[str, int]]:
    return [(c, 1 if cs.family(c) == C_FAMILY else -1) for c, _ in word.singles()]


def homology_action(cs: PennerCurveSystem, word: TwistWord) -> np.ndarray:
    """Action on first homology from explicit classes, ``x -> x + e <K, x> K`` per twist.

    Classes are coordinate vectors in a symplectic basis ``a1, b1, a2, b2, ...``
    with ``<a_i, b_i> = 1``.
    """
    if cs.homology is None:
        raise MissingHomology("curve system carries no homology classes")
    word.validate(cs)
    dim = len(next(iter(cs.homology.values())))
    j = _symplectic_form(dim)
    act = np.eye(dim, dtype=np.int64).astype(object)
    for curve, e in _twist_signs(cs, word):
        k = np.array(cs.homology[curve], dtype=object)
        t = np.eye(dim, dtype=np.int64).astype(object) + e * np.outer(k, k.dot(j))
        act = t.dot(act)
    return act


def _check_gram(cs: PennerCurveSystem) -> None:
    dim = len(next(iter(cs.homology.values())))
    genus = check_filling(cs).genus
    if genus is not None and dim != 2 * genus:
        raise HomologyMismatch(f"classes live in dimension {dim}, surface has genus {genus}")
    j = _symplectic_form(dim)
    for a in cs.curves:
        for b in cs.curves:
            va, vb = np.array(cs.homology[a]), np.array(cs.homology[b])
            if int(va @ j @ vb) != cs.algebraic_intersection(a, b):
                raise HomologyMismatch(
                    f"<{a}, {b}> is {int(va @ j @ vb)} from the classes but "
                    f"{cs.algebraic_intersection(a, b)} from the crossing signs")


def lefschetz_of_word(cs: PennerCurveSystem, word: TwistWord, require_homology: bool = False) -> int:
    """``2 - tr`` of the word's action on first homology.

    The trace is computed from the intersection pairing alone: the twist
    classes span a subspace on which the word acts through an ``r x r``
    matrix, and the action is trivial on the quotient.  When explicit
    classes are attached they are checked against the crossing signs and
    the explicit transvection product must give the same trace.
    """
    word.validate(cs)
    genus = check_filling(cs).genus
    if genus is None:
        raise NotFilling("genus is undefined for a disconnected system")
    singles = _twist_signs(cs, word)
    r = len(singles)
    gram = np.array([[cs.algebraic_intersection(a, b) for b, _ in singles] for a, _ in singles],
                    dtype=object).reshape(r, r)
    act = np.eye(r, dtype=np.int64).astype(object)
    for i, (_, e) in enumerate(singles):
        t = np.eye(r, dtype=np.int64).astype(object)
        t[i, :] += e * gram[i, :]
        act = t.dot(act)
    trace = 2 * genus - r + int(np.trace(act)) if r else 2 * genus
    if cs.homology is not None:
        _check_gram(cs)
        explicit = int(np.trace(homology_action(cs, word)))
        if explicit != trace:
            raise HomologyMismatch(f"explicit trace {explicit} differs from pairing trace {trace}")
    elif require_homology:
        raise MissingHomology("curve system carries no homology classes")
    return 2 - trace


# -- random systems -----------------------------------------------------------------------

def random_system(rng: random.Random, crossings: int, c_count: int, d_count: int) -> PennerCurveSystem | None:
    """Random crossing combinatorics; ``None`` when a family would have an empty curve."""
    xs = [f"x{i}" for i in range(crossings)]

    def family(prefix: str, count: int):
        owners = [rng.randrange(count) for _ in xs]
        curves = {}
        for i in range(count):
            mine = [x for x, o in zip(xs, owners) if o == i]
            if not mine:
                return None
            rng.shuffle(mine)
            curves[f"{prefix}{i + 1}"] = tuple(mine)
        return curves

    cc = family("C", c_count)
    dd = family("D", d_count)
    if cc is None or dd is None:
        return None
    return PennerCurveSystem(cc, dd, {x: rng.choice((1, -1)) for x in xs})


def random_filling_systems(seed: int, count: int, max_crossings: int = 8,
                           max_curves: int = 3) -> Iterable[PennerCurveSystem]:
    """Yield ``count`` random filling systems (deterministic for a seed)."""
    rng = random.Random(seed)
    found = 0
    while found < count:
        v = rng.randint(2, max_crossings)
        cs = random_system(rng, v, rng.randint(1, max_curves), rng.randint(1, max_curves))
        if cs is not None and check_filling(cs).fills:
            found += 1
            yield cs
