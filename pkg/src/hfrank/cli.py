"""``hf`` command line: validate tracks, count fixed points, run Penner words and
reducible decompositions.

Exit status is 0 on success, 1 on a domain or validation failure and 2 on a
malformed document.  Reports go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from . import carrying as cy
from . import documents as doc
from . import penner as pn
from . import reducible as rd
from . import spectral as sp
from .errors import DocumentError, HFError, InvalidWord, NotFilling
from .traintrack import check_geometry

log = logging.getLogger("hfrank")

EXIT_OK, EXIT_DOMAIN, EXIT_PARSE = 0, 1, 2


class Report:
    """Ordered key/value results rendered either as JSON or as aligned text."""

    def __init__(self, command: str, inputs: Sequence[str]):
        self.command = command
        self.inputs = {p: _digest(p) for p in inputs}
        self.results: dict[str, Any] = {}
        self.diagnostics: list[dict[str, str]] = []
        self.status = EXIT_OK

    def fail(self, exc: HFError, status: int = EXIT_DOMAIN) -> None:
        self.diagnostics.append({"code": exc.code, "message": str(exc)})
        self.status = max(self.status, status)

    def as_dict(self) -> dict:
        return {"command": self.command, "inputs": self.inputs, "results": self.results,
                "diagnostics": self.diagnostics, "status": self.status}

    def render(self, as_json: bool) -> str:
        if as_json:
            return json.dumps(_plain(self.as_dict()), indent=2)
        lines = [f"command: {self.command}"]
        for key, value in self.results.items():
            lines.extend(_text(key, _plain(value), 0))
        for d in self.diagnostics:
            lines.append(f"error {d['code']}: {d['message']}")
        lines.append(f"status: {self.status}")
        return "\n".join(lines)


def _digest(path: str) -> str:
    try:
        return hashlib.sha256(Path(path).read_bytes()).hexdigest()[:16]
    except OSError:
        return "unreadable"


def _plain(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else str(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(f"{float(value):.12g}")
    return value


def _text(key: str, value: Any, depth: int) -> list[str]:
    pad = "  " * depth
    if isinstance(value, dict) and value and any(isinstance(v, (dict, list)) for v in value.values()):
        out = [f"{pad}{key}:"]
        for k, v in value.items():
            out.extend(_text(k, v, depth + 1))
        return out
    if isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
        out = [f"{pad}{key}:"]
        for item in value:
            out.append(pad + "  - " + ", ".join(f"{k}={_fmt(v)}" for k, v in item.items()))
        return out
    return [f"{pad}{key}: {_fmt(value)}"]


def _fmt(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.12g}"
    if isinstance(value, dict):
        return "{" + ", ".join(f"{k}: {_fmt(v)}" for k, v in value.items()) + "}"
    if isinstance(value, list):
        return "[" + ", ".join(_fmt(v) for v in value) + "]"
    return str(value)


# -- shared pieces -----------------------------------------------------------------------------

def _census_results(fpc: cy.FixedPointCensus) -> dict:
    return {
        "rank": fpc.rank,
        "even": fpc.even_rank,
        "odd": fpc.odd_rank,
        "trace": fpc.trace,
        "flips": fpc.flips,
        "overcount": fpc.overcount,
        "unrotated": dict(fpc.census.u),
        "rotated": dict(fpc.census.r),
        "regular_odd": fpc.regular_odd,
        "regular_even": fpc.regular_even,
    }


def _spectral_results(track, matrix) -> dict:
    res = sp.dominant_eig(matrix)
    return {
        "lambda": res.lam,
        "residual": res.residual,
        "iterations": res.iterations,
        "switch_conditions": "pass" if sp.check_switch_conditions(track, res.widths).ok else "fail",
        "length_conditions": "pass" if sp.check_length_conditions(track, res.lengths).ok else "fail",
    }


def _grading_results(fpc: cy.FixedPointCensus, lefschetz: int | None, cellular: int | None = None) -> dict:
    out: dict[str, Any] = {"even": fpc.even_rank, "odd": fpc.odd_rank}
    if cellular is not None:
        cy.grading(fpc, cellular)
        out["cellular_lefschetz"] = cellular
        out["cellular_check"] = "pass"
    if lefschetz is None:
        out["lefschetz_check"] = "skipped"
    else:
        cy.grading(fpc, lefschetz)
        out["lefschetz"] = lefschetz
        out["lefschetz_check"] = "pass"
    return out


# -- commands -------------------------------------------------------------------------------------

def cmd_validate(args, report: Report) -> None:
    track = doc.parse_track(doc.load_json(args.track))
    geo = check_geometry(track, allow_bigons=args.allow_bigons)
    report.results["switches"] = len(track.switches)
    report.results["branches"] = len(track.branches)
    report.results["faces"] = [{"cusps": f.cusp_count, "kind": f.kind, "euler": f.euler}
                               for f in geo.faces]
    report.results["euler_sum"] = geo.euler_sum
    report.results["fills"] = geo.fills
    for issue in geo.issues:
        report.fail(issue)


def cmd_rank(args, report: Report) -> None:
    track = doc.parse_track(doc.load_json(args.track))
    cm = doc.parse_carrying(doc.load_json(args.carrying), track)
    check_geometry(track, allow_bigons=args.allow_bigons).raise_if_invalid()
    checked = cy.validate_carrying(track, cm)
    if not checked.ok:
        for issue in checked.issues:
            report.fail(issue)
        return
    fpc = cy.rank(track, cm)
    report.results.update(_census_results(fpc))
    report.results["spectral"] = _spectral_results(track, cy.incidence_matrix(cm))
    if args.grading or args.lefschetz is not None:
        cellular = None if track.surface.num_boundary else cy.cellular_lefschetz(track, cm)
        report.results["grading"] = _grading_results(fpc, args.lefschetz, cellular)


def _word(args, cs: pn.PennerCurveSystem, word: pn.TwistWord | None) -> pn.TwistWord:
    if args.word is not None:
        try:
            return pn.parse_word(json.loads(args.word))
        except json.JSONDecodeError as exc:
            raise DocumentError(f"--word is not valid JSON: {exc}") from exc
    return word if word is not None else pn.canonical_word(cs)


def cmd_penner(args, report: Report) -> None:
    cs, doc_word = doc.parse_system(doc.load_json(args.system))
    word = _word(args, cs, doc_word)
    word.validate(cs)
    filling = pn.check_filling(cs)
    report.results["word"] = word.to_json()
    report.results["crossings"] = cs.num_crossings
    report.results["genus"] = filling.genus
    report.results["fills"] = filling.fills
    if not filling.fills:
        raise NotFilling("curve system does not fill a surface of negative Euler characteristic")
    if args.formula_only:
        report.results["formula"] = pn.predicted_rank(cs, word)
        return
    track = pn.build_track(cs)
    cm = pn.word_carrying(cs, word)
    cy.validate_carrying(track, cm).raise_if_invalid()
    if args.emit_track:
        Path(args.emit_track).write_text(json.dumps(doc.dump_track(track), indent=1) + "\n")
    if args.emit_carrying:
        Path(args.emit_carrying).write_text(json.dumps(doc.dump_carrying(cm), indent=1) + "\n")
    fpc = cy.rank(track, cm)
    lam = pn.lefschetz_of_word(cs, word)
    report.results.update(_census_results(fpc))
    try:
        report.results["formula"] = pn.predicted_rank(cs, word)
        report.results["check"] = f"formula: {report.results['formula']}, pipeline: {fpc.rank}"
    except InvalidWord as exc:
        report.results["formula"] = f"n/a ({exc})"
    report.results["grading"] = _grading_results(fpc, lam, cy.cellular_lefschetz(track, cm))
    spectral = _spectral_results(track, cy.incidence_matrix(cm))
    report.results["spectral"] = spectral
    if args.iterate:
        rows = []
        summary = cm.summary()
        power = summary
        for n in range(1, args.iterate + 1):
            if n > 1:
                power = cy.compose_summaries(summary, power)
            fn = cy.rank(track, power)
            lam_n = pn.lefschetz_of_word(cs, pn.TwistWord(word.terms * n))
            cy.grading(fn, lam_n)
            rows.append({"n": n, "rank": fn.rank, "even": fn.even_rank, "odd": fn.odd_rank,
                         "trace": fn.trace})
        for a, b in zip(rows, rows[1:]):
            b["ratio"] = b["rank"] / a["rank"]
        report.results["iterates"] = rows


def cmd_reducible(args, report: Report) -> None:
    path = Path(args.spec)
    spec = doc.parse_decomposition(doc.load_json(path), base=path.parent)
    summary = rd.total_rank(spec)
    report.results["components"] = [
        {"id": c.id, "kind": c.kind, "even": c.even, "odd": c.odd, "module_action": c.module_action}
        for c in summary.breakdown
    ]
    report.results["rank"] = summary.total_rank
    report.results["even"] = summary.even_rank
    report.results["odd"] = summary.odd_rank


# -- entry point ------------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hf", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="machine-readable report")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a train-track document")
    p.add_argument("track")
    p.add_argument("--allow-bigons", action="store_true", help="accept two-cusp disk faces")
    p.set_defaults(run=cmd_validate, files=("track",))

    p = sub.add_parser("rank", help="fixed-point count from a track and its carrying data")
    p.add_argument("track")
    p.add_argument("carrying")
    p.add_argument("--lefschetz", type=int, default=None, help="cross-check even - odd against this")
    p.add_argument("--grading", action="store_true", help="report the even/odd split")
    p.add_argument("--allow-bigons", action="store_true", help="accept two-cusp disk faces")
    p.set_defaults(run=cmd_rank, files=("track", "carrying"))

    p = sub.add_parser("penner", help="run a Penner word through the track pipeline")
    p.add_argument("system")
    p.add_argument("--word", default=None, help='JSON word, e.g. [["C1",2,"alt"],["D1",-2,"alt"]]')
    p.add_argument("--iterate", type=int, default=0, metavar="N", help="ranks of the first N powers")
    p.add_argument("--formula-only", action="store_true", help="only evaluate the closed formula")
    p.add_argument("--emit-track", default=None, metavar="PATH", help="write the track document")
    p.add_argument("--emit-carrying", default=None, metavar="PATH", help="write the carrying document")
    p.set_defaults(run=cmd_penner, files=("system",))

    p = sub.add_parser("reducible", help="rank of a reducible map from its decomposition")
    p.add_argument("spec")
    p.set_defaults(run=cmd_reducible, files=("spec",))

    for action in sub.choices.values():
        action.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                            help="machine-readable report")
    return parser


def _configure_logging() -> None:
    level = os.environ.get("HF_LOG", "off").lower()
    levels = {"off": logging.WARNING, "info": logging.INFO, "debug": logging.DEBUG}
    logging.basicConfig(stream=sys.stderr, level=levels.get(level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")


def main(argv: Sequence[str] | None = None) -> int:
    _configure_logging()
    args = build_parser().parse_args(argv)
    report = Report(args.command, [getattr(args, f) for f in args.files])
    try:
        args.run(args, report)
    except DocumentError as exc:
        report.fail(exc, EXIT_PARSE)
    except HFError as exc:
        report.fail(exc)
    for d in report.diagnostics:
        print(f"hf: {d['code']}: {d['message']}", file=sys.stderr)
    print(report.render(args.json))
    return report.status


if __name__ == "__main__":
    sys.exit(main())
