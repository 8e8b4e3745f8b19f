"""Command-line front end.

Maps are given either as text, e.g. ``"(z1 + z0*z2^2, z0, z2)"``, or as a
catalog entry with ``--zoo NAME --param key=value``.

Exit codes:

* 0: success
* 2: bad command line (argparse)
* 3: the map or a parameter could not be parsed or built
* 4: the analysis aborted (collapse, horizon too short, wrong map shape, ...)
* 5: verification mismatch in ``verify-paper``
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

from . import zoo
from .dynamics import (
    HORIZON,
    NOT_BLOWN_DOWN,
    WINDOW,
    HorizonTooShort,
    HyperplaneInIndeterminacy,
    classify_growth,
    degree_sequence,
    dynamical_degree_estimate,
    orbit_point,
    parse_point,
    render_point,
    stability_check,
    blow_down_image,
    bidegree_growth_check,
)
from .maps import AffineMapSpec, IterationAborted, MapError, ProjectiveMap, inverse
from .parse import ParseError, parse_map

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_ABORT = 4
EXIT_MISMATCH = 5


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


@dataclass
class RunConfig:
    horizon: int = HORIZON
    window: int = WINDOW
    fmt: str = "json"
    params: dict = field(default_factory=dict)
    seed: int = 0
    method: str = "exact"


# -- output helpers -------------------------------------------------------------


def _dump_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _dump_csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _dump_text(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    cells = [list(map(str, header))] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    return "\n".join(lines)


def _table(fmt: str, header: Sequence[str], rows: Sequence[Sequence], payload: Any) -> str:
    if fmt == "csv":
        return _dump_csv(header, rows)
    if fmt == "text":
        return _dump_text(header, rows)
    return _dump_json(payload)


def _record(fmt: str, payload: dict) -> str:
    """Single-record output: JSON object, two-column CSV or aligned text."""
    if fmt == "json":
        return _dump_json(payload)
    rows = [(k, json.dumps(v) if isinstance(v, (dict, list)) else v) for k, v in sorted(payload.items())]
    return _table(fmt, ("key", "value"), rows, payload)


# -- map acquisition ------------------------------------------------------------


def _parse_params(pairs: Sequence[str]) -> dict:
    out = {}
    for item in pairs or ():
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise CliError(f"--param expects key=value, got {item!r}", EXIT_PARSE)
        out[key.strip()] = value.strip()
    return out


def _load_spec(args) -> AffineMapSpec | ProjectiveMap:
    try:
        if args.zoo:
            if args.map:
                raise CliError("give either a map or --zoo, not both", EXIT_USAGE)
            return zoo.get(args.zoo).build(_parse_params(args.param))
        if not args.map:
            raise CliError("no map given (text argument or --zoo NAME)", EXIT_USAGE)
        return parse_map(args.map)
    except ParseError as exc:
        raise CliError(f"parse error: {exc}", EXIT_PARSE) from exc
    except (zoo.ZooError, MapError) as exc:
        raise CliError(str(exc), EXIT_PARSE) from exc


def _projective(spec) -> ProjectiveMap:
    return spec if isinstance(spec, ProjectiveMap) else spec.projective


def _maybe_inverse(spec, args):
    if not getattr(args, "inverse", False):
        return spec
    if isinstance(spec, ProjectiveMap):
        raise CliError("--inverse needs an affine map with inverse information", EXIT_ABORT)
    return inverse(spec)


# -- commands -------------------------------------------------------------------


def cmd_parse(args, cfg: RunConfig) -> str:
    spec = _load_spec(args)
    pm = _projective(spec)
    payload = {
        "affine": spec.render() if isinstance(spec, AffineMapSpec) else None,
        "projective": pm.render(),
        "degree": pm.degree,
        "dimension": pm.nvars - 1,
    }
    return _record(cfg.fmt, payload)


def cmd_degrees(args, cfg: RunConfig) -> str:
    spec = _maybe_inverse(_load_spec(args), args)
    seq = degree_sequence(_projective(spec), cfg.horizon, method=cfg.method, seeds=(cfg.seed, cfg.seed + 1))
    rows = [(n, d) for n, d in enumerate(seq.degrees, 1)]
    return _table(cfg.fmt, ("n", "deg"), rows, {"degrees": list(seq.degrees), "N": seq.N})


def cmd_classify(args, cfg: RunConfig) -> str:
    spec = _maybe_inverse(_load_spec(args), args)
    seq = degree_sequence(_projective(spec), cfg.horizon, method=cfg.method, seeds=(cfg.seed, cfg.seed + 1))
    gc = classify_growth(seq, cfg.window)
    payload = gc.to_dict()
    payload["degrees"] = list(seq.degrees)
    if seq.N >= 4:
        payload["dynamical_degree"] = dynamical_degree_estimate(seq, cfg.window).to_dict()
    return _record(cfg.fmt, payload)


def cmd_stability(args, cfg: RunConfig) -> str:
    spec = _load_spec(args)
    report = stability_check(_projective(spec))
    return _record(cfg.fmt, report.to_dict())


def cmd_orbit(args, cfg: RunConfig) -> str:
    spec = _load_spec(args)
    try:
        point = parse_point(args.point)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_PARSE) from exc
    res = orbit_point(_projective(spec), point, cfg.horizon)
    rows = [(i, p) for i, p in enumerate(map(render_point, res.points), 1)]
    if res.indeterminate_at is not None:
        rows.append((res.indeterminate_at, "indeterminate"))
    return _table(cfg.fmt, ("step", "point"), rows, res.to_dict())


def cmd_blowdown(args, cfg: RunConfig) -> str:
    spec = _load_spec(args)
    pm = _projective(spec)
    h = pm.nvars - 1 if args.hyperplane is None else args.hyperplane
    img = blow_down_image(pm, h)
    payload = {"hyperplane": h, "blow_down": None if img is NOT_BLOWN_DOWN else render_point(img)}
    return _record(cfg.fmt, payload)


def cmd_bidegree(args, cfg: RunConfig) -> str:
    spec = _load_spec(args)
    if isinstance(spec, ProjectiveMap):
        raise CliError("bidegree needs an affine map with inverse information", EXIT_ABORT)
    inv = inverse(spec)
    fwd = degree_sequence(spec.projective, cfg.horizon)
    bwd = degree_sequence(inv.projective, cfg.horizon)
    payload = {
        "bidegree": [fwd[1], bwd[1]],
        "forward": list(fwd.degrees),
        "backward": list(bwd.degrees),
    }
    if cfg.horizon >= 6:
        cf, cb = classify_growth(fwd, cfg.window), classify_growth(bwd, cfg.window)
        payload["forward_class"] = cf.to_dict()
        payload["backward_class"] = cb.to_dict()
        if cf.tag == cb.tag == "Polynomial":
            payload["exponents_compatible"] = bidegree_growth_check(cf.ell, cb.ell, spec.k)
    return _record(cfg.fmt, payload)


def cmd_zoo_list(args, cfg: RunConfig) -> str:
    entries = [e.to_dict() for e in zoo.CATALOG.values()]
    rows = [(e["name"], e["kind"], e["dimension"], e["citation"], e["formula"]) for e in entries]
    return _table(cfg.fmt, ("name", "kind", "dimension", "citation", "formula"), rows, entries)


def cmd_zoo_show(args, cfg: RunConfig) -> str:
    try:
        entry = zoo.get(args.name)
        params = _parse_params(args.param)
        info = entry.to_dict(params)
        spec = entry.build(params)
    except (zoo.ZooError, MapError, ParseError) as exc:
        raise CliError(str(exc), EXIT_PARSE) from exc
    info["map"] = spec.render()
    info["projective"] = spec.projective.render()
    return _record(cfg.fmt, info)


# -- verify-paper ---------------------------------------------------------------


@dataclass(frozen=True)
class VerifyRow:
    entry: str
    params: str
    direction: str
    n: int
    expected: str
    computed: int
    status: str  # pass, FAIL, report, info

    def as_tuple(self):
        return (self.entry, self.params, self.direction, self.n, self.expected, self.computed, self.status)


VERIFY_HEADER = ("entry", "params", "direction", "n", "expected", "computed", "status")


def _fmt_params(params: dict) -> str:
    return ",".join(f"{k}={_plain(v)}" for k, v in params.items())


def _plain(v) -> str:
    if isinstance(v, (tuple, list)):
        return ";".join(map(str, v))
    return str(v)


def verify_entry(entry: zoo.ZooEntry, params: dict | None = None, horizon: int | None = None) -> list[VerifyRow]:
    params = entry.params(params)
    N = horizon or entry.horizon_hint
    spec = entry.builder(**params)
    label = _fmt_params(params)
    rows: list[VerifyRow] = []
    directions: list[tuple[str, Callable, AffineMapSpec]] = [("forward", entry.expected, spec)]
    if entry.expected_inverse_degree is not None:
        directions.append(("inverse", entry.expected_inverse, inverse(spec)))
    for direction, law, m in directions:
        method = "certified" if m.kind == "polynomial" else "exact"
        seq = degree_sequence(m.projective, N, method=method)
        for n, got in enumerate(seq.degrees, 1):
            want = law(n, params)
            if want is None:
                status, shown = "info", "-"
            else:
                shown = str(Fraction(want))
                ok = Fraction(want) == got
                status = "report" if entry.mode == "report" else ("pass" if ok else "FAIL")
                if entry.mode == "report" and not ok:
                    status = "report-mismatch"
            rows.append(VerifyRow(entry.name, label, direction, n, shown, got, status))
    return rows


def verify_paper(catalog: dict[str, zoo.ZooEntry] | None = None, only: Sequence[str] = ()) -> list[VerifyRow]:
    catalog = zoo.CATALOG if catalog is None else catalog
    rows: list[VerifyRow] = []
    for name, entry in catalog.items():
        if only and name not in only:
            continue
        if entry.expected_degree is None:
            continue
        for params in entry.verify_params or (entry.default_params,):
            rows.extend(verify_entry(entry, dict(params)))
    return rows


def cmd_verify_paper(args, cfg: RunConfig) -> tuple[str, int]:
    rows = verify_paper(only=args.only or ())
    payload = [dict(zip(VERIFY_HEADER, r.as_tuple())) for r in rows]
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(_dump_json(payload) + "\n")
    failed = any(r.status == "FAIL" for r in rows)
    fmt = cfg.fmt if args.format else "text"
    out = _table(fmt, VERIFY_HEADER, [r.as_tuple() for r in rows], payload)
    return out, EXIT_MISMATCH if failed else EXIT_OK


# -- argument parsing -----------------------------------------------------------


def _add_map_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("map", nargs="?", help='map text, e.g. "(z1 + z0*z2^2, z0, z2)"')
    p.add_argument("--zoo", metavar="NAME", help="catalog entry instead of map text")
    p.add_argument("--param", action="append", default=[], metavar="K=V", help="entry parameter (repeatable)")


def _add_run_args(p: argparse.ArgumentParser, horizon: int | None = HORIZON) -> None:
    p.add_argument("-N", dest="horizon", type=int, default=horizon, help="number of iterates")
    p.add_argument("--window", type=int, default=WINDOW, help="classification window")
    p.add_argument("--format", choices=("json", "csv", "text"), default=None)
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="degrowth", description="Degree growth of polynomial automorphisms and birational maps.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse a map and show its projective form")
    _add_map_args(p)
    _add_run_args(p)
    p.set_defaults(func=cmd_parse, default_format="json")

    for name, func, fmt, helptext in (
        ("degrees", cmd_degrees, "csv", "degree sequence of the iterates"),
        ("classify", cmd_classify, "json", "classify the growth of the degree sequence"),
    ):
        p = sub.add_parser(name, help=helptext)
        _add_map_args(p)
        _add_run_args(p)
        p.add_argument("--inverse", action="store_true", help="use the inverse map")
        p.add_argument("--method", choices=("exact", "line", "certified"), default="exact")
        p.set_defaults(func=func, default_format=fmt)

    p = sub.add_parser("stability", help="algebraic stability report")
    _add_map_args(p)
    _add_run_args(p)
    p.set_defaults(func=cmd_stability, default_format="json")

    p = sub.add_parser("orbit", help="orbit of a projective point")
    _add_map_args(p)
    _add_run_args(p, horizon=1)
    p.add_argument("--point", required=True, help='projective point, e.g. "(-1:0:1:0)"')
    p.set_defaults(func=cmd_orbit, default_format="json")

    p = sub.add_parser("blowdown", help="image of a coordinate hyperplane")
    _add_map_args(p)
    _add_run_args(p)
    p.add_argument("--hyperplane", type=int, default=None, help="coordinate index (default: the last one)")
    p.set_defaults(func=cmd_blowdown, default_format="json")

    p = sub.add_parser("bidegree", help="forward and backward degrees")
    _add_map_args(p)
    _add_run_args(p, horizon=8)
    p.set_defaults(func=cmd_bidegree, default_format="json")

    pz = sub.add_parser("zoo", help="catalog of maps")
    zsub = pz.add_subparsers(dest="zoo_command", required=True)
    p = zsub.add_parser("list", help="list catalog entries")
    p.add_argument("--format", choices=("json", "csv", "text"), default=None)
    p.set_defaults(func=cmd_zoo_list, default_format="text")
    p = zsub.add_parser("show", help="show one entry")
    p.add_argument("name")
    p.add_argument("--param", action="append", default=[], metavar="K=V")
    p.add_argument("--format", choices=("json", "csv", "text"), default=None)
    p.set_defaults(func=cmd_zoo_show, default_format="json")

    p = sub.add_parser("verify-paper", help="check every catalog degree law")
    p.add_argument("--only", action="append", metavar="NAME", help="restrict to these entries")
    p.add_argument("--out", metavar="FILE", help="also write the rows as JSON")
    p.add_argument("--format", choices=("json", "csv", "text"), default=None)
    p.set_defaults(func=cmd_verify_paper, default_format="text")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    cfg = RunConfig(
        horizon=getattr(args, "horizon", HORIZON) or HORIZON,
        window=getattr(args, "window", WINDOW),
        fmt=getattr(args, "format", None) or args.default_format,
        seed=getattr(args, "seed", 0),
        method=getattr(args, "method", "exact"),
    )
    try:
        result = args.func(args, cfg)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (IterationAborted, HorizonTooShort, HyperplaneInIndeterminacy, MapError, ArithmeticError, ValueError) as exc:
        print(f"analysis aborted: {exc}", file=sys.stderr)
        return EXIT_ABORT
    code = EXIT_OK
    if isinstance(result, tuple):
        result, code = result
    print(result)
    return code


if __name__ == "__main__":
    sys.exit(main())
