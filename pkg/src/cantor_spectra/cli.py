"""Command-line front end: ``cantor-spectra <subcommand> ...``.

Exit codes: 0 when the command ran (verdicts live in the payload), 1 for
input or schema errors, 2 when a resource limit was hit.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import certify, treemap
from .errors import CantorSpectraError, ResourceError, SchemaError, ValidationFailure
from .fourier import compute_mask_constants
from .numtheory import MeasureParams

log = logging.getLogger("cantor_spectra")

BUILD_KINDS = ("canonical", "sparse", "slow", "nonspectrum", "custom")


def _dump(obj, out: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True, default=_json_default) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _json_default(o):
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    if isinstance(o, np.bool_):
        return bool(o)
    raise TypeError(f"not serializable: {type(o).__name__}")


def _write_csv(header, rows, out: str | None) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([repr(float(x)) if isinstance(x, (float, np.floating)) else x for x in row])
    if out:
        Path(out).write_text(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())


def _load_spec(path: str) -> treemap.TreeMappingSpec:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    return treemap.spec_from_json(doc)


def _params(args) -> MeasureParams:
    return MeasureParams(args.q, args.b)


# ---------------------------------------------------------------------------
# subcommands


def cmd_classify(args) -> int:
    _dump(certify.classify_qb(args.q, args.b).to_json(), args.out)
    return 0


def cmd_build(args) -> int:
    if args.kind == "custom":
        if not args.input:
            raise SchemaError("custom specs need --in")
        spec = _load_spec(args.input)
    else:
        p = _params(args)
        if args.kind == "canonical":
            spec = treemap.canonical_spec(p)
        elif args.kind == "sparse":
            spec = treemap.sparse_spec(p, args.g, window_hint=args.window_hint)
        else:
            mc = compute_mask_constants(p)
            spec = (treemap.slow_growth_spec(p, mc) if args.kind == "slow"
                    else treemap.nonspectrum_spec(p, args.epsilon, mc))
    for stem in args.irregular or ():
        spec = treemap.with_irregular(spec, tuple(int(x) for x in stem.split(",")))
    rep = treemap.validate(spec, args.validate_depth)
    doc = treemap.spec_to_json(spec)
    doc["validation"] = rep.to_json()
    _dump(doc, args.out)
    if not rep.ok:
        first = rep.violations[0]
        log.error("validation failed at node %s: %s", list(first.node), first.message)
        return 1
    return 0


def _xi_grid(args) -> tuple:
    xs = list(args.xi) if args.xi else list(certify.verdict.default_xi_grid())
    if args.random_xi:
        rng = np.random.default_rng(args.seed)
        xs += [float(x) for x in rng.uniform(0.0, 0.5, args.random_xi)]
    return tuple(xs)


def cmd_certify(args) -> int:
    spec = _load_spec(args.spec)
    cfg = certify.VerdictConfig(terms=args.terms, depth=args.depth, xi_grid=_xi_grid(args),
                                tol=args.tol, delta=args.delta, horizon=args.horizon,
                                alpha=args.alpha, threads=args.threads)
    try:
        v = certify.spectrum_verdict(spec, cfg)
    except ValidationFailure as exc:
        _dump({"error": "validation failure", "message": str(exc),
               "pair": list(exc.pair) if exc.pair else None,
               "violations": [x.to_json() for x in exc.violations]}, args.out)
        return 1
    _dump(v.to_json(), args.out)
    if args.emit_q:
        _write_csv(("xi", "Q", "error_budget", "terms"),
                   [(x, Q, e, v.terms) for x, Q, e in v.grid], args.emit_q)
    return 0


def cmd_density(args) -> int:
    spec = _load_spec(args.spec)
    c = treemap.enumerate_spec(spec, args.terms)
    Rs = [float(x) for x in args.R]
    rows = certify.beurling_density(c, args.g, Rs)
    _write_csv(("R", "count", "g", "ratio"), [(r.R, r.count, r.g, r.ratio) for r in rows], args.out)
    return 0


def cmd_enumerate(args) -> int:
    spec = _load_spec(args.spec)
    c = treemap.enumerate_spec(spec, args.count)
    text = c.jsonl()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_stats(args) -> int:
    spec = _load_spec(args.spec)
    st = treemap.spec_stats(spec)
    _dump(st.to_json(levels=max(args.levels, st.depth)), args.out)
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cantor-spectra",
                                 description="Spectra of Cantor measures with consecutive digits.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def qb(p, required=True):
        p.add_argument("--q", type=int, required=required)
        p.add_argument("--b", type=int, required=required)

    s = sub.add_parser("classify", help="classify mu_{q,b} by gcd(q, b)")
    qb(s)
    s.add_argument("--out")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("build", help="write a mapping-spec JSON file")
    s.add_argument("kind", choices=BUILD_KINDS)
    qb(s, required=False)
    s.add_argument("--g", default="log", help="density target for sparse specs")
    s.add_argument("--window-hint", type=int, default=4)
    s.add_argument("--epsilon", type=float, default=1.0)
    s.add_argument("--in", dest="input")
    s.add_argument("--irregular", action="append", metavar="STEM",
                   help="comma separated stem made irregular (repeatable)")
    s.add_argument("--validate-depth", type=int, default=5)
    s.add_argument("--out")
    s.set_defaults(func=cmd_build)

    s = sub.add_parser("certify", help="spectrum verdict for a spec file")
    s.add_argument("spec")
    s.add_argument("--terms", type=int, default=4096)
    s.add_argument("--depth", type=int, default=40)
    s.add_argument("--xi", type=float, action="append")
    s.add_argument("--random-xi", type=int, default=0)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--tol", type=float, default=1e-3)
    s.add_argument("--delta", type=float, default=0.0)
    s.add_argument("--horizon", type=int, default=2000)
    s.add_argument("--alpha", choices=("square",), default=None)
    s.add_argument("--threads", type=int, default=None)
    s.add_argument("--emit-q", metavar="CSV")
    s.add_argument("--out")
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("density", help="Beurling-type window counts as CSV")
    s.add_argument("spec")
    s.add_argument("--g", default="log")
    s.add_argument("--R", type=float, nargs="*", default=[])
    s.add_argument("--terms", type=int, default=4096)
    s.add_argument("--out")
    s.set_defaults(func=cmd_density)

    s = sub.add_parser("enumerate", help="candidate elements as JSON lines")
    s.add_argument("spec")
    s.add_argument("--count", type=int, default=64)
    s.add_argument("--out")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("stats", help="per-level digit statistics")
    s.add_argument("spec")
    s.add_argument("--levels", type=int, default=12)
    s.add_argument("--out")
    s.set_defaults(func=cmd_stats)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except ResourceError as exc:
        log.error("%s", exc)
        return 2
    except (CantorSpectraError, OSError) as exc:
        log.error("%s", exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
