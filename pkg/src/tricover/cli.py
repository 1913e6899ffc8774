"""Command line front end.

    python -m tricover --input surface.json [--seed N] [--format json|text]
    python -m tricover --verify-only report.json

Input is a JSON document such as::

    {"base": {"hirzebruch": 2},
     "centers": [{"level": 1, "chart": "H00", "coords": ["1", "1/2"]}]}

Exit codes: 0 success, 1 bad input, 2 construction failed, 3 the
certificate did not pass.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from .algebra import format_scalar, parse_scalar
from .builder import ChoiceConfig, ChoiceError, PreconditionError, TriCover, construct_cover
from .surface import (BlowupCenter, MinimalModel, PresentationError, SurfacePresentation, hirzebruch,
                      plane, validate_presentation)
from .verifier import CoverageCertificate, certify, replay_certificate, verify_transitions

log = logging.getLogger(__name__)

EXIT_OK, EXIT_INPUT, EXIT_CONSTRUCTION, EXIT_VERIFICATION = 0, 1, 2, 3


@dataclass
class RunConfig:
    input: str | None = None
    seed: int = 0
    max_retries: int = 64
    samples: int = 1000
    format: str = "json"
    verify_only: str | None = None
    quiet: bool = False


# -- input ------------------------------------------------------------------

def _parse_base(obj) -> MinimalModel:
    if obj == "P2":
        return plane()
    if isinstance(obj, dict) and set(obj) == {"hirzebruch"}:
        n = obj["hirzebruch"]
        if not isinstance(n, int) or isinstance(n, bool):
            raise PresentationError("hirzebruch index must be an integer")
        return hirzebruch(n)
    raise PresentationError(f"unknown base {obj!r}; expected \"P2\" or {{\"hirzebruch\": n}}")


def _parse_center(k: int, obj) -> BlowupCenter:
    if not isinstance(obj, dict) or not {"level", "chart", "coords"} <= set(obj):
        raise PresentationError(f"center {k}: expected an object with level, chart and coords")
    coords = obj["coords"]
    if not isinstance(coords, list) or len(coords) != 2 or not all(isinstance(c, str) for c in coords):
        raise PresentationError(f"center {k}: coords must be two rational strings such as \"3/7\"")
    try:
        values = [parse_scalar(c) for c in coords]
    except (ValueError, ZeroDivisionError) as exc:
        raise PresentationError(f"center {k}: bad coordinate ({exc})") from None
    return BlowupCenter.make(obj["level"], str(obj["chart"]), values)


def parse_presentation(text: str) -> SurfacePresentation:
    """Parse and validate a JSON surface presentation."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PresentationError(f"syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict) or "base" not in doc:
        raise PresentationError("expected an object with a \"base\" entry")
    centers = doc.get("centers", [])
    if not isinstance(centers, list):
        raise PresentationError("\"centers\" must be a list")
    sp = SurfacePresentation(_parse_base(doc["base"]),
                             [_parse_center(k, c) for k, c in enumerate(centers, start=1)])
    validate_presentation(sp)
    return sp


# -- report -------------------------------------------------------------------

def build_report(sp: SurfacePresentation, cover: TriCover, cert: CoverageCertificate,
                 transitions: dict, seed: int) -> dict:
    charts = [{"name": c.name, "coordinates": list(c.node.coords), "reference": c.reference,
               "to_reference": c.to_reference.to_strs(), "from_reference": c.from_reference.to_strs()}
              for c in cover.charts]
    # U_i -> U_j in factored form: the expanded maps have very high degree
    trans = [{"from": a.name, "to": b.name, "via": a.reference,
              "maps": [a.to_reference.to_strs(), b.from_reference.to_strs()]}
             for a in cover.charts for b in cover.charts if a is not b]
    comps = {w: [c.complement.get(w) for c in cover.charts] for w in cover.standard_charts()}
    comps = {w: [("1" if f is None else f.to_str()) for f in row] for w, row in comps.items()}
    return {
        "surface": {"base": sp.base.label(),
                    "centers": [{"level": c.level, "chart": c.chart,
                                 "coords": [format_scalar(v) for v in c.coords]} for c in sp.centers]},
        "seed": seed,
        "charts": charts,
        "transitions": trans,
        "complements": comps,
        "audit": [e.to_dict() for e in cover.audit],
        "certificate": dict(cert.to_dict(), transitions=transitions),
    }


def dumps(report: dict) -> str:
    return json.dumps(report, indent=1, sort_keys=True, ensure_ascii=False) + "\n"


def format_text(report: dict, timings: dict) -> str:
    cert = report["certificate"]
    lines = [f"surface {report['surface']['base']} with {len(report['surface']['centers'])} blowups, seed {report['seed']}"]
    for c in report["charts"]:
        lines.append(f"chart {c['name']} -> {c['reference']}: ({', '.join(c['to_reference'])})")
    lines.append("complement traces:")
    for w, row in report["complements"].items():
        lines.append(f"  {w}: " + " | ".join(row))
    lines.append(f"generic choices: {len(report['audit'])}")
    bad = [r["chart"] for r in cert["emptiness"] if r["status"] == "fail"]
    lines.append("emptiness: " + ("ok" if not bad else "FAILED in " + ", ".join(bad)))
    lines.append("pairwise gcds: " + ("ok" if all(r["gcd"] == "1" for r in cert["pairwise"]) else "FAILED"))
    s = cert["sampling"]
    lines.append(f"sampling: {s['count']} points, {len(s['failures'])} uncovered")
    lines.append(f"transitions: {cert['transitions']['checked']} round trips, "
                 f"{len(cert['transitions']['failures'])} failures")
    lines.append("certificate: " + ("PASS" if cert["ok"] else "FAIL"))
    lines.append("timings: " + ", ".join(f"{k} {v:.2f}s" for k, v in timings.items()))
    return "\n".join(lines) + "\n"


# -- entry points ---------------------------------------------------------------

def _verify_only(cfg: RunConfig) -> int:
    try:
        data = json.loads(Path(cfg.verify_only).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read certificate: {exc}", file=sys.stderr)
        return EXIT_INPUT
    data = data.get("certificate", data)
    ok, problems = replay_certificate(data)
    if not cfg.quiet:
        for p in problems:
            print(p, file=sys.stderr)
        print("certificate replay: " + ("PASS" if ok else "FAIL"))
    return EXIT_OK if ok else EXIT_VERIFICATION


def run(cfg: RunConfig, out=None) -> int:
    out = out if out is not None else sys.stdout
    if cfg.verify_only:
        return _verify_only(cfg)
    timings = {}
    t0 = time.perf_counter()
    try:
        text = Path(cfg.input).read_text(encoding="utf-8") if cfg.input not in (None, "-") else sys.stdin.read()
        sp = parse_presentation(text)
    except (OSError, PresentationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    timings["parse"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    try:
        cover = construct_cover(sp, ChoiceConfig(seed=cfg.seed, max_retries=cfg.max_retries))
    except (ChoiceError, PreconditionError) as exc:
        print(f"error: construction failed: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCTION
    timings["construct"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    cert = certify(cover, cfg.samples, cfg.seed)
    trans = verify_transitions(cover, 100, cfg.seed)
    timings["verify"] = time.perf_counter() - t0

    report = build_report(sp, cover, cert, trans, cfg.seed)
    # timings stay out of the structured report so that it is reproducible
    for k, v in timings.items():
        log.info("%s: %.3f s", k, v)
    if not cfg.quiet:
        out.write(dumps(report) if cfg.format == "json" else format_text(report, timings))
    if not (cert.ok and trans["ok"]):
        print("error: the certificate did not pass", file=sys.stderr)
        return EXIT_VERIFICATION
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tricover",
                                 description="Cover a smooth rational surface by three affine planes.")
    ap.add_argument("--input", metavar="PATH", help="surface presentation (JSON); '-' reads stdin")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-retries", type=int, default=64)
    ap.add_argument("--samples", type=int, default=1000, help="random points for the coverage check")
    ap.add_argument("--format", choices=("json", "text"), default="json")
    ap.add_argument("--verify-only", metavar="PATH", help="re-check a stored report or certificate")
    ap.add_argument("--quiet", action="store_true")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if not args.input and not args.verify_only:
        ap.error("one of --input or --verify-only is required")
    if args.max_retries < 1 or args.samples < 0:
        ap.error("--max-retries must be positive and --samples non-negative")
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO,
                        format="%(levelname)s %(name)s: %(message)s")
    cfg = RunConfig(args.input, args.seed, args.max_retries, args.samples, args.format,
                    args.verify_only, args.quiet)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
