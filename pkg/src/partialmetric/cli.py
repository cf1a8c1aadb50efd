"""Command line interface.

Exit codes: 0 when the requested verdict is positive, 1 when it is negative
and 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .alignment import ScoringScheme, best_alignment, multi_score, space_from_words, validate_scheme
from .core import SpaceError, check_axioms, induce_metric, lift_to_n, shift_by_constant
from .core import space_from_dict, space_to_dict
from .fixedpoint import (
    MAPS,
    ContractionSpec,
    MapEvaluationError,
    SolveOptions,
    build_map,
    find_coincidence_point,
    find_common_fixed_point,
    find_fixed_point,
)
from .sequences import (
    DistanceEvaluator,
    NotCauchyError,
    check_limit,
    check_special_limit,
    classify_cauchy,
    limit_deviation,
)
from .spaces import CATALOG, SENTINEL, CatalogSpec, build_space, numeric_evaluator
from .topology import closure_of, generate_topology

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2


class InputError(Exception):
    """Bad file or argument contents."""


def dumps(doc: Any) -> str:
    """Canonical JSON text: sorted keys, two-space indent."""
    return json.dumps(doc, indent=2, sort_keys=True, allow_nan=False)


def _read_json(path: str) -> Any:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None


def _load_space(path: str):
    try:
        return space_from_dict(_read_json(path))
    except SpaceError as exc:
        raise InputError(f"{path}: {exc}") from None


def _point(text: str) -> Any:
    if text == SENTINEL:
        return text
    try:
        return float(text)
    except ValueError:
        return text


def _emit(args, doc: dict, lines: list[str]) -> None:
    if args.json:
        print(dumps(doc))
    else:
        print("\n".join(lines))


def cmd_check(args) -> int:
    space = _load_space(args.space)
    report = check_axioms(space, tol=args.tol)
    lines = [f"kind: {space.kind}  elements: {space.size}"]
    for r in report.results:
        status = "pass" if r.holds else "FAIL"
        extra = " (derived)" if r.derived else ""
        if not r.holds:
            extra += f"  witness={','.join(r.witness)}  margin={r.margin:.6g}"
        lines.append(f"{r.axiom:<12} {status}{extra}")
    lines.append(f"overall: {'pass' if report.overall else 'FAIL'}")
    _emit(args, report.to_dict(), lines)
    return EXIT_OK if report.overall else EXIT_NEGATIVE


def cmd_derive(args) -> int:
    space = _load_space(args.space)
    if args.op == "induce":
        out = induce_metric(space)
    elif args.op == "lift":
        if args.n is None:
            raise InputError("lift needs --n")
        out = lift_to_n(space, args.n)
    else:
        if args.r is None:
            raise InputError("shift needs --r")
        out = shift_by_constant(space, args.r)
    print(dumps(space_to_dict(out)))
    return EXIT_OK


def cmd_align(args) -> int:
    try:
        scheme = ScoringScheme.from_dict(_read_json(args.scheme))
    except ValueError as exc:
        raise InputError(f"{args.scheme}: {exc}") from None
    if len(args.words) < 2:
        raise InputError("align needs at least two words")
    verdict = validate_scheme(scheme)
    words = args.words
    pairs = []
    lines = []
    if not verdict.valid:
        lines.append("warning: scheme violates " + "; ".join(verdict.violations))
    for j in range(1, len(words)):
        for i in range(j):
            res = best_alignment(words[i], words[j], scheme)
            pairs.append(
                {
                    "x": words[i],
                    "y": words[j],
                    "score": res.score,
                    "aligned_x": res.aligned_x,
                    "aligned_y": res.aligned_y,
                    "column_scores": list(res.column_scores),
                }
            )
            lines += [f"{words[i]} / {words[j]}: {res.score:g}", f"  {res.aligned_x}", f"  {res.aligned_y}"]
    doc = {"scheme_valid": verdict.valid, "violations": list(verdict.violations), "pairs": pairs}
    if len(words) > 2:
        doc["multi_score"] = multi_score(words, scheme)
        lines.append(f"multi score: {doc['multi_score']:g}")
    if args.n is not None:
        if not verdict.valid:
            raise InputError("cannot build a space from an invalid scheme")
        distinct = list(dict.fromkeys(words))
        doc["space"] = space_to_dict(space_from_words(distinct, scheme, args.n))
        lines.append(f"space: {len(distinct)} words at arity {args.n}")
    _emit(args, doc, lines)
    return EXIT_OK if verdict.valid else EXIT_NEGATIVE


def cmd_topology(args) -> int:
    space = _load_space(args.space)
    rep = generate_topology(space)
    doc = rep.to_dict()
    lines = [f"open sets ({len(rep.open_masks)}):"]
    lines += ["  {" + ", ".join(s) + "}" for s in doc["open_sets"]]
    lines.append(f"T0: {rep.t0}  T1: {rep.t1}  T2: {rep.t2}")
    for level, pairs in doc["witness_pairs"].items():
        lines.append(f"  {level} fails for: " + " ".join(f"({a},{b})" for a, b in pairs))
    if args.closure:
        cl = closure_of(space, args.closure)
        doc["closure"] = [e for e in space.elements if e in cl]
        lines.append("closure: {" + ", ".join(doc["closure"]) + "}")
    _emit(args, doc, lines)
    return EXIT_OK


def _sequence_source(args) -> tuple[DistanceEvaluator, list[Any], bool]:
    if args.space:
        space = _load_space(args.space)
        if not args.points:
            raise InputError("--space needs --points (a JSON array of labels)")
        pts = [str(p) for p in _read_json(args.points)]
        for p in pts:
            space.index(p)
        return DistanceEvaluator.from_space(space), pts, True
    if not args.closed_form:
        raise InputError("give --space with --points, or --closed-form")
    ev = numeric_evaluator(args.closed_form, args.arity)
    if args.points:
        raw = _read_json(args.points)
        if not isinstance(raw, list):
            raise InputError("--points must hold a JSON array")
        return ev, [p if p == SENTINEL else float(p) for p in raw], False
    pts = [args.start * args.ratio**i + args.offset for i in range(args.length)]
    return ev, pts, False


def cmd_sequence(args) -> int:
    ev, pts, labels = _sequence_source(args)
    verdict = classify_cauchy(ev, pts, args.tol, args.window)
    doc = {"cauchy": verdict.to_dict(), "length": len(pts), "candidates": []}
    lines = [
        f"cauchy: {verdict.is_cauchy}  central distance: {verdict.central_distance:.12g}"
        f"  max deviation: {verdict.max_tail_deviation:.3g}  window: {verdict.window}"
    ]
    for text in args.candidate or []:
        cand = text if labels else _point(text)
        is_limit = check_limit(ev, pts, cand, args.tol, verdict.window)
        try:
            special = check_special_limit(ev, pts, cand, args.tol, verdict.window)
        except NotCauchyError:
            special = False
        dev = limit_deviation(ev, pts, cand, verdict.window)
        doc["candidates"].append({"candidate": text, "limit": is_limit, "special_limit": special, "deviation": dev})
        lines.append(f"candidate {text}: limit={is_limit} special={special} deviation={dev:.3g}")
    _emit(args, doc, lines)
    return EXIT_OK if verdict.is_cauchy else EXIT_NEGATIVE


def _map_from(doc: Any, key: str):
    if key not in doc:
        raise InputError(f"problem file needs {key!r}")
    entry = doc[key]
    if isinstance(entry, str):
        return build_map(entry)
    return build_map(entry.get("map", ""), entry.get("params", []))


def _x(value: Any) -> Any:
    return value if isinstance(value, str) else float(value)


def cmd_solve(args) -> int:
    doc = _read_json(args.problem)
    if not isinstance(doc, dict):
        raise InputError("problem file must hold a JSON object")
    kind = doc.get("problem")
    tol = args.tol
    c = args.c if args.c is not None else doc.get("c")
    r = args.r if args.r is not None else doc.get("r")
    max_iter = args.max_iter if args.max_iter is not None else int(doc.get("max_iter", 60))
    route = doc.get("route", "partial")
    try:
        if kind in ("fixed_point", "common_fixed_point"):
            ev = numeric_evaluator(doc.get("space", "max_partial"), int(doc.get("arity", 2)))
            contraction = None
            if c is not None:
                mode = "orbital_c" if kind == "fixed_point" else "pairwise_c"
                contraction = ContractionSpec(mode, c=float(c), r=None if r is None else float(r))
            opts = SolveOptions(max_iter, tol, args.window, route=route, contraction=contraction)
            if kind == "fixed_point":
                res = find_fixed_point(_map_from(doc, "f"), _x(doc.get("x0", 1.0)), ev, opts)
            else:
                res = find_common_fixed_point(
                    _map_from(doc, "f"),
                    _map_from(doc, "g"),
                    _x(doc.get("x0", 1.0)),
                    _x(doc.get("y0", 1.0)),
                    ev,
                    opts,
                )
        elif kind == "coincidence_point":
            dom = numeric_evaluator(doc.get("domain", "abs_metric"), int(doc.get("arity", 2)))
            cod = numeric_evaluator(doc.get("codomain", "abs_metric"), int(doc.get("arity", 2)))
            if c is None or "A" not in doc:
                raise InputError("coincidence problems need c and A")
            spec = ContractionSpec(
                "mutual_c",
                c=float(c),
                r=None if r is None else float(r),
                A=float(doc["A"]),
                mutual_route=doc.get("mutual_route", "fg"),
            )
            opts = SolveOptions(max_iter, tol, args.window)
            res = find_coincidence_point(
                _map_from(doc, "f"),
                _map_from(doc, "g"),
                _map_from(doc, "selector"),
                _x(doc.get("x0", 0.0)),
                dom,
                cod,
                spec,
                opts,
            )
        else:
            raise InputError(
                "problem must be one of fixed_point, common_fixed_point, coincidence_point"
            )
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed problem file: {exc}") from None
    out = res.to_dict()
    lines = [f"status: {res.status}", f"point: {res.point!r}", f"iterations: {res.iterations}"]
    for k in res.required:
        lines.append(f"  {k:<32} {'pass' if res.checks[k] else 'FAIL'}")
    if res.assumed:
        lines.append("assumed: " + ", ".join(res.assumed))
    _emit(args, out, lines)
    return EXIT_NEGATIVE if res.status == "no_certificate" else EXIT_OK


def cmd_catalog(args) -> int:
    if args.name:
        try:
            params = tuple(float(p) for p in args.params)
        except ValueError:
            raise InputError("catalog parameters must be numbers") from None
        print(dumps(space_to_dict(build_space(CatalogSpec(args.name, params)))))
        return EXIT_OK
    doc = {
        "spaces": {k: {"family": e.base, "params": e.params, "about": e.blurb} for k, e in CATALOG.items()},
        "maps": {k: v[1] for k, v in MAPS.items()},
    }
    lines = ["spaces:"]
    lines += [f"  {k:<22} {e.base:<8} {e.blurb}  [params: {e.params}]" for k, e in CATALOG.items()]
    lines.append("maps:")
    lines += [f"  {k:<24} {v[1]}" for k, v in MAPS.items()]
    _emit(args, doc, lines)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-9, help="absolute tolerance (default 1e-9)")
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")

    parser = argparse.ArgumentParser(prog="partialmetric", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="check the axioms of a space file")
    p.add_argument("--space", required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("derive", parents=[common], help="induce, lift or shift a space")
    p.add_argument("--space", required=True)
    p.add_argument("--op", choices=("induce", "lift", "shift"), required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=float)
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("align", parents=[common], help="optimal alignment costs of words")
    p.add_argument("--scheme", required=True)
    p.add_argument("--n", type=int, help="also emit the space of the words at this arity")
    p.add_argument("words", nargs="+")
    p.set_defaults(func=cmd_align)

    p = sub.add_parser("topology", parents=[common], help="open sets and separation")
    p.add_argument("--space", required=True)
    p.add_argument("--closure", nargs="*", metavar="LABEL")
    p.set_defaults(func=cmd_topology)

    p = sub.add_parser("sequence", parents=[common], help="Cauchy and limit verdicts")
    p.add_argument("--space")
    p.add_argument("--points", help="JSON array of points or labels")
    p.add_argument("--closed-form", help="numeric space name, e.g. augmented_real_line")
    p.add_argument("--arity", type=int, default=2)
    p.add_argument("--start", type=float, default=1.0)
    p.add_argument("--ratio", type=float, default=0.5)
    p.add_argument("--offset", type=float, default=0.0)
    p.add_argument("--length", type=int, default=31)
    p.add_argument("--window", type=int)
    p.add_argument("--candidate", action="append")
    p.set_defaults(func=cmd_sequence)

    p = sub.add_parser("solve", parents=[common], help="fixed, common fixed or coincidence points")
    p.add_argument("--problem", required=True, help="JSON problem file")
    p.add_argument("--max-iter", type=int)
    p.add_argument("--window", type=int)
    p.add_argument("--c", type=float)
    p.add_argument("--r", type=float)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("catalog", parents=[common], help="list catalog spaces or emit one")
    p.add_argument("name", nargs="?")
    p.add_argument("params", nargs="*")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, SpaceError, MapEvaluationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
