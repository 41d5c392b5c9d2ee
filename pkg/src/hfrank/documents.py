"""JSON documents for tracks, carryings, curve systems and decompositions.

Every ``parse_*`` function accepts an already-decoded JSON value and raises
:class:`DocumentError` for anything structurally wrong; ``dump_*`` is its
inverse, so ``parse(dump(x)) == x`` on the data model.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from . import carrying as cy
from . import penner as pn
from . import reducible as rd
from .errors import DanglingEnd, DocumentError, HFError
from .traintrack import LEFT, RIGHT, Surface, TrainTrack, build_track


def load_json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from exc
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise DocumentError(f"{path} is not valid JSON: {exc}") from exc


def _need(obj: Any, kind: type | tuple, where: str):
    kinds = kind if isinstance(kind, tuple) else (kind,)
    if not isinstance(obj, kinds) or (isinstance(obj, bool) and bool not in kinds):
        name = "/".join(k.__name__ for k in kinds)
        raise DocumentError(f"{where}: expected {name}, got {type(obj).__name__}")
    return obj


def _field(obj: dict, key: str, kind, where: str, default=...):
    if key not in obj:
        if default is ...:
            raise DocumentError(f"{where}: missing field {key!r}")
        return default
    return _need(obj[key], kind, f"{where}.{key}")


# -- tracks -------------------------------------------------------------------------------

_END_NAMES = {0: 0, 1: 1, "end0": 0, "end1": 1}


def _parse_end(item: Any, where: str) -> tuple[str, int]:
    if not isinstance(item, list) or len(item) != 2 or not isinstance(item[0], str):
        raise DocumentError(f"{where}: branch end must be [branch_id, end]")
    end = item[1]
    if isinstance(end, bool) or end not in _END_NAMES:
        raise DocumentError(f"{where}: end must be 0, 1, 'end0' or 'end1', got {end!r}")
    return item[0], _END_NAMES[end]


def parse_track(obj: Any) -> TrainTrack:
    _need(obj, dict, "track")
    surf = _field(obj, "surface", dict, "track")
    genus = _field(surf, "genus", int, "track.surface")
    boundary = _field(surf, "boundary", int, "track.surface", 0)
    switches = []
    for k, sw in enumerate(_field(obj, "switches", list, "track")):
        where = f"track.switches[{k}]"
        _need(sw, dict, where)
        sid = _field(sw, "id", str, where)
        sides = [[_parse_end(e, f"{where}.{s}[{i}]") for i, e in enumerate(_field(sw, s, list, where))]
                 for s in ("a", "b")]
        switches.append((sid, sides[0], sides[1]))
    branches = []
    for k, br in enumerate(_field(obj, "branches", list, "track")):
        branches.append(_field(_need(br, dict, f"track.branches[{k}]"), "id", str, f"track.branches[{k}]"))
    bsides = []
    for k, item in enumerate(_field(obj, "boundary_faces", list, "track", [])):
        if (not isinstance(item, list) or len(item) != 2 or not isinstance(item[0], str)
                or item[1] not in (LEFT, RIGHT)):
            raise DocumentError(f"track.boundary_faces[{k}]: expected [branch_id, 'left'|'right']")
        bsides.append((item[0], item[1]))
    surface = Surface(genus, boundary)
    try:
        return build_track(surface, switches, branches, bsides)
    except DanglingEnd as exc:
        raise DocumentError(f"track: {exc}") from exc


def dump_track(track: TrainTrack) -> dict:
    return {
        "surface": {"genus": track.surface.genus, "boundary": track.surface.num_boundary},
        "switches": [
            {"id": sw.id,
             "a": [[e.branch, f"end{e.end}"] for e in sw.side_a],
             "b": [[e.branch, f"end{e.end}"] for e in sw.side_b]}
            for sw in track.switches
        ],
        "branches": [{"id": b} for b in track.branch_ids],
        "boundary_faces": [list(x) for x in sorted(track.boundary_sides)],
    }


# -- carryings ---------------------------------------------------------------------------

def _parse_refs(items: Any, where: str) -> tuple[cy.SignedRef, ...]:
    _need(items, list, where)
    out = []
    for i, it in enumerate(items):
        if (not isinstance(it, list) or len(it) != 2 or not isinstance(it[0], str)
                or isinstance(it[1], bool) or it[1] not in (1, -1)):
            raise DocumentError(f"{where}[{i}]: expected [branch_id, 1|-1]")
        out.append((it[0], it[1]))
    return tuple(out)


def parse_carrying(obj: Any, track: TrainTrack) -> cy.CarryingMap:
    _need(obj, dict, "carrying")
    lists = {}
    for key in ("sigma", "nu"):
        table = _field(obj, key, dict, "carrying")
        lists[key] = {b: _parse_refs(v, f"carrying.{key}.{b}") for b, v in table.items()}
    return cy.CarryingMap(track.branch_ids, lists["sigma"], lists["nu"])


def dump_carrying(cm: cy.CarryingMap) -> dict:
    return {
        "sigma": {b: [list(r) for r in cm.sigma[b]] for b in cm.branches if b in cm.sigma},
        "nu": {b: [list(r) for r in cm.nu[b]] for b in cm.branches if b in cm.nu},
    }


# -- curve systems ----------------------------------------------------------------------

def _parse_curves(obj: dict, key: str) -> dict[str, tuple[str, ...]]:
    table = _field(obj, key, dict, "system")
    out = {}
    for cid, order in table.items():
        _need(order, list, f"system.{key}.{cid}")
        if not all(isinstance(x, str) for x in order):
            raise DocumentError(f"system.{key}.{cid}: crossing ids must be strings")
        out[cid] = tuple(order)
    return out


def parse_system(obj: Any) -> tuple[pn.PennerCurveSystem, pn.TwistWord | None]:
    """Curve system and, if present, its word."""
    _need(obj, dict, "system")
    signs = _field(obj, "signs", dict, "system")
    for x, s in signs.items():
        if isinstance(s, bool) or s not in (1, -1):
            raise DocumentError(f"system.signs.{x}: expected 1 or -1")
    homology = None
    if "homology" in obj:
        homology = {}
        for cid, vec in _field(obj, "homology", dict, "system").items():
            _need(vec, list, f"system.homology.{cid}")
            if not all(isinstance(v, int) and not isinstance(v, bool) for v in vec):
                raise DocumentError(f"system.homology.{cid}: expected integers")
            homology[cid] = tuple(vec)
    cs = pn.PennerCurveSystem(_parse_curves(obj, "c_curves"), _parse_curves(obj, "d_curves"),
                              signs, homology)
    word = None
    if "word" in obj:
        try:
            word = pn.parse_word(obj["word"])
        except HFError as exc:
            raise DocumentError(f"system.word: {exc}") from exc
    return cs, word


def dump_system(cs: pn.PennerCurveSystem, word: pn.TwistWord | None = None) -> dict:
    out: dict[str, Any] = {
        "c_curves": {c: list(v) for c, v in cs.c_curves.items()},
        "d_curves": {d: list(v) for d, v in cs.d_curves.items()},
        "signs": dict(cs.signs),
    }
    if cs.homology is not None:
        out["homology"] = {c: list(v) for c, v in cs.homology.items()}
    if word is not None:
        out["word"] = word.to_json()
    return out


# -- decompositions -----------------------------------------------------------------------

def _prong_table(obj: Any, where: str) -> dict[int, int]:
    _need(obj, dict, where)
    out = {}
    for p, n in obj.items():
        try:
            key = int(p)
        except ValueError as exc:
            raise DocumentError(f"{where}: prong count {p!r} is not an integer") from exc
        out[key] = _need(n, int, f"{where}.{p}")
    return dict(sorted(out.items()))


def _opt_int(obj: dict, key: str, where: str):
    return _field(obj, key, int, where, None)


def _parse_component(obj: Any, where: str, base: Path | None) -> rd.Component:
    _need(obj, dict, where)
    kind = _field(obj, "type", str, where)
    cid = _field(obj, "id", str, where)
    if kind == "fixed":
        bds = []
        for k, b in enumerate(_field(obj, "boundaries", list, where, [])):
            w = f"{where}.boundaries[{k}]"
            _need(b, dict, w)
            bds.append(rd.FixedBoundary(_field(b, "id", str, w), _field(b, "sign", str, w, None),
                                        _field(b, "abuts", str, w, None), _opt_int(b, "prongs", w)))
        return rd.FixedComponent(cid, _field(obj, "genus", int, where), tuple(bds))
    if kind == "periodic":
        return rd.PeriodicComponent(cid, _field(obj, "lefschetz", int, where),
                                    _opt_int(obj, "genus", where), _opt_int(obj, "boundary", where))
    if kind == "pa":
        pts = []
        for k, b in enumerate(_field(obj, "boundaries", list, where, [])):
            w = f"{where}.boundaries[{k}]"
            _need(b, dict, w)
            pts.append(rd.Puncture(_field(b, "id", str, w), _field(b, "prongs", int, w),
                                   _field(b, "rotated", bool, w, False), _field(b, "abuts", str, w, None)))
        genus = _opt_int(obj, "genus", where)
        if "census" in obj:
            cen = _field(obj, "census", dict, where)
            w = f"{where}.census"
            return rd.PAComponent(
                cid, _field(cen, "regular_odd", int, w), _field(cen, "regular_even", int, w),
                cy.SingularityCensus(_prong_table(cen.get("u", {}), f"{w}.u"),
                                     _prong_table(cen.get("r", {}), f"{w}.r")),
                tuple(pts), genus)
        if "track" in obj and "carrying" in obj:
            root = base or Path(".")
            track = parse_track(load_json(root / _field(obj, "track", str, where)))
            cm = parse_carrying(load_json(root / _field(obj, "carrying", str, where)), track)
            cy.validate_carrying(track, cm).raise_if_invalid()
            fpc = cy.rank(track, cm)
            return rd.PAComponent.from_census(cid, fpc, pts, genus if genus is not None else track.surface.genus)
        raise DocumentError(f"{where}: pa component needs 'census' or 'track' and 'carrying'")
    if kind == "twist":
        dirs = _field(obj, "directions", list, where, None)
        if dirs is not None and not all(d in (1, -1) and not isinstance(d, bool) for d in dirs):
            raise DocumentError(f"{where}.directions: expected a list of 1/-1")
        return rd.TwistAnnulus(cid, _field(obj, "flavor", str, where, "twist"),
                               _field(obj, "fixed_annuli", int, where, 0),
                               _field(obj, "annulus_signs", str, where, "++"),
                               tuple(dirs) if dirs is not None else None)
    raise DocumentError(f"{where}.type: unknown component type {kind!r}")


def parse_decomposition(obj: Any, base: Path | None = None) -> rd.DecompositionSpec:
    """Decomposition document; ``base`` resolves relative track/carrying paths."""
    _need(obj, dict, "decomposition")
    comps = tuple(_parse_component(c, f"decomposition.components[{k}]", base)
                  for k, c in enumerate(_field(obj, "components", list, "decomposition")))
    surface = None
    if "surface" in obj:
        s = _field(obj, "surface", dict, "decomposition")
        surface = (_field(s, "genus", int, "decomposition.surface"),
                   _field(s, "boundary", int, "decomposition.surface", 0))
    return rd.DecompositionSpec(comps, surface)


def _drop_none(d: dict) -> dict:
    return {k: v for k, v in d.items() if v is not None}


def dump_decomposition(spec: rd.DecompositionSpec) -> dict:
    comps = []
    for c in spec.components:
        if isinstance(c, rd.FixedComponent):
            comps.append({"type": "fixed", "id": c.id, "genus": c.genus, "boundaries": [
                _drop_none({"id": b.id, "sign": b.sign, "abuts": b.abuts, "prongs": b.prongs})
                for b in c.boundaries]})
        elif isinstance(c, rd.PeriodicComponent):
            comps.append(_drop_none({"type": "periodic", "id": c.id, "lefschetz": c.lefschetz,
                                     "genus": c.genus, "boundary": c.num_boundary}))
        elif isinstance(c, rd.PAComponent):
            comps.append(_drop_none({
                "type": "pa", "id": c.id, "genus": c.genus,
                "census": {"regular_odd": c.regular_odd, "regular_even": c.regular_even,
                           "u": {str(p): n for p, n in c.census.u.items()},
                           "r": {str(p): n for p, n in c.census.r.items()}},
                "boundaries": [_drop_none({"id": b.id, "prongs": b.prongs, "rotated": b.rotated,
                                           "abuts": b.abuts}) for b in c.boundaries]}))
        else:
            comps.append(_drop_none({
                "type": "twist", "id": c.id, "flavor": c.flavor, "fixed_annuli": c.fixed_annuli,
                "annulus_signs": c.annulus_signs,
                "directions": list(c.directions) if c.directions is not None else None}))
    out: dict[str, Any] = {"components": comps}
    if spec.surface is not None:
        out["surface"] = {"genus": spec.surface[0], "boundary": spec.surface[1]}
    return out
