"""Command-line front end."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .arith import format_rational
from .bounds import bound_report
from .driver import SolveLog, SolverConfig, low_rank_sym, solve_lmi
from .errors import GenericityError, Timeout
from .feasibility import Empty, LinearPoint, accepted_roots, char_poly_coeffs, point_enclosure, rank_at
from .pencil import dump_pencil, load_pencil, random_pencil
from .ratpar import RationalParametrization
from .realroots import decimal_string, isolate_roots

EXIT_OK, EXIT_PARSE, EXIT_GENERICITY, EXIT_TIMEOUT = 0, 2, 3, 4


class _ParseError(Exception):
    pass


def fixture_path(name: str) -> Path:
    """Path of a fixture shipped with the package (e.g. ``scheiderer.json``)."""
    return Path(str(resources.files("exactlmi") / "data" / name))


def _load_pencil(path: str):
    p = Path(path)
    if not p.exists() and fixture_path(path).exists():
        p = fixture_path(path)
    try:
        return load_pencil(p)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise _ParseError(f"cannot read pencil {path}: {exc}") from exc


def _load_rp(path: str) -> RationalParametrization:
    try:
        obj = json.loads(Path(path).read_text())
        if "parametrization" in obj:
            obj = obj["parametrization"]
        return RationalParametrization.from_json(obj)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise _ParseError(f"cannot read parametrization {path}: {exc}") from exc


def _config(args) -> SolverConfig:
    return SolverConfig(seed=args.seed, coeff_bound=args.coeff_bound, skip_isreg=args.skip_isreg,
                        max_seconds=args.max_seconds)


def _interval(alpha) -> list[str]:
    return [format_rational(alpha.lo), format_rational(alpha.hi)]


def _root_report(rp, alpha, digits: int) -> dict:
    width = Fraction(1, 10 ** (digits + 3))
    return {
        "interval": _interval(alpha),
        "point": [decimal_string(lo, hi, digits) for lo, hi in point_enclosure(rp, alpha, width)],
    }


def _log_fields(slog: SolveLog, deterministic: bool) -> dict:
    out = {"degrees": slog.degrees, "levels": slog.levels, "events": slog.events}
    if not deterministic:
        out["timings"] = {k: round(v, 6) for k, v in slog.timings.items()}
    return out


def _emit(args, payload: dict, text: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n".join(text))


def cmd_solve(args) -> int:
    p = _load_pencil(args.file)
    slog = SolveLog()
    out = solve_lmi(p, _config(args), slog)
    payload = {"outcome": out.tag, "seed": args.seed, **_log_fields(slog, args.deterministic)}
    if isinstance(out, Empty):
        text = ["outcome: Empty (the spectrahedron is empty)"]
    elif isinstance(out, LinearPoint):
        payload["point"] = [format_rational(c) for c in out.coords]
        text = ["outcome: LinearPoint (A(x) = 0)", "x = (" + ", ".join(payload["point"]) + ")"]
    else:
        payload.update({
            "rank": out.rank,
            "parametrization": out.rp.to_json(),
            "degree": out.rp.degree,
            "real_roots": out.real_roots,
            "root": _interval(out.root),
            "accepted": [_root_report(out.rp, a, args.precision) for a in out.accepted],
        })
        text = [
            f"outcome: Witness at rank {out.rank}",
            f"qn1 degree {out.rp.degree}, {out.real_roots} real roots, {len(out.accepted)} accepted",
        ]
        for k, acc in enumerate(payload["accepted"], 1):
            text.append(f"accepted root {k} in [{acc['interval'][0]}, {acc['interval'][1]}]")
            text.append(f"  x ~ ({', '.join(acc['point'])})  [{args.precision}-digit approximation]")
    _emit(args, payload, text)
    return EXIT_OK


def cmd_lowrank(args) -> int:
    p = _load_pencil(args.file)
    slog = SolveLog()
    rp = low_rank_sym(p, args.r, _config(args), slog)
    payload = {"r": args.r, "seed": args.seed, "degree": rp.degree, "parametrization": rp.to_json(),
               **_log_fields(slog, args.deterministic)}
    text = [f"rank bound {args.r}: parametrization of degree {rp.degree}"]
    for lv in slog.levels:
        text.append(f"  level {lv['level']} (n={lv['n']}): degree {lv['degree']}")
    if args.out:
        Path(args.out).write_text(json.dumps(rp.to_json(), indent=2) + "\n")
    _emit(args, payload, text)
    return EXIT_OK


def cmd_bound(args) -> int:
    try:
        rep = bound_report(args.m, args.n, args.r)
    except ValueError as exc:
        raise _ParseError(str(exc)) from exc
    payload = rep.to_dict()
    text = [f"theta({args.m}, {args.n}, {args.r}) = {rep.theta}",
            f"p_r = {rep.p_r}, index set {rep.index_set}, cube bound {rep.cube_bound}"]
    _emit(args, payload, text)
    return EXIT_OK


def cmd_check(args) -> int:
    p = _load_pencil(args.pencil)
    rp = _load_rp(args.parametrization)
    if rp.n != p.n:
        raise _ParseError("parametrization and pencil have different numbers of variables")
    cp = char_poly_coeffs(p)
    acc = accepted_roots(p, rp, cp)
    nroots = 0 if rp.is_empty else len(isolate_roots(rp.qn1))
    payload = {
        "feasible": bool(acc),
        "real_roots": nroots,
        "accepted": [dict(_root_report(rp, a, args.precision), signs=s,
                          rank=rank_at(p, rp, a, cp)) for a, s in acc],
    }
    text = [f"{nroots} real roots, {len(acc)} with A(x) PSD"]
    for a in payload["accepted"]:
        text.append(f"  rank {a['rank']} at x ~ ({', '.join(a['point'])})")
    _emit(args, payload, text)
    return EXIT_OK


def cmd_random(args) -> int:
    p = random_pencil(args.m, args.n, args.seed, args.bound, integer=args.integer)
    if args.out:
        dump_pencil(p, args.out)
    else:
        from .pencil import pencil_to_json

        print(json.dumps(pencil_to_json(p), indent=1))
    return EXIT_OK


def _parse_cases(text: str) -> list[tuple[int, int, int]]:
    try:
        cases = []
        for part in text.split(";"):
            m, n, r = (int(v) for v in part.split(","))
            cases.append((m, n, r))
        return cases
    except ValueError as exc:
        raise _ParseError(f"bad --cases value {text!r}; expected 'm,n,r;m,n,r'") from exc


def cmd_report(args) -> int:
    from .report import degree_report

    cases = _parse_cases(args.cases)
    seeds = [args.seed + k for k in range(args.seeds)]
    csv_path, png_path = degree_report(cases, seeds, _config(args), args.out, args.pencil_bound)
    _emit(args, {"csv": str(csv_path), "png": str(png_path)}, [f"wrote {csv_path}", f"wrote {png_path}"])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="root seed (64-bit unsigned)")
    common.add_argument("--coeff-bound", type=int, default=100, help="bound for random M and fibers")
    common.add_argument("--skip-isreg", action="store_true", help="skip the regularity check")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--deterministic", action="store_true", help="omit timings from JSON")
    common.add_argument("--max-seconds", type=float, default=None, help="wall-time ceiling")
    common.add_argument("--precision", type=int, default=9, help="decimal digits for approximations")
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="exactlmi", description="Exact LMI feasibility via low-rank sampling.")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", parents=[common], help="decide feasibility of A(x) >= 0")
    s.add_argument("file")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("lowrank", parents=[common], help="sample the real locus of rank <= r")
    s.add_argument("file")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--out", help="also write the parametrization JSON here")
    s.set_defaults(func=cmd_lowrank)

    s = sub.add_parser("bound", parents=[common], help="degree bound theta(m, n, r)")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--r", type=int, required=True)
    s.set_defaults(func=cmd_bound)

    s = sub.add_parser("check", parents=[common], help="check a parametrization against a pencil")
    s.add_argument("pencil")
    s.add_argument("parametrization")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("random", parents=[common], help="write a seeded random pencil")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--bound", type=int, default=100)
    s.add_argument("--integer", action="store_true", help="integer entries only")
    s.add_argument("--out")
    s.set_defaults(func=cmd_random)

    s = sub.add_parser("report", parents=[common], help="degree sweep: CSV and PNG")
    s.add_argument("--cases", default="3,2,2;3,3,2", help="semicolon-separated m,n,r triples")
    s.add_argument("--seeds", type=int, default=2, help="number of consecutive seeds")
    s.add_argument("--pencil-bound", type=int, default=10)
    s.add_argument("--out", default="report")
    s.set_defaults(func=cmd_report)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.seed < 0 or args.seed >= 2 ** 64:
            raise _ParseError("--seed must be a 64-bit unsigned integer")
        if args.coeff_bound < 1:
            raise _ParseError("--coeff-bound must be at least 1")
        return args.func(args)
    except _ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except GenericityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if args.json:
            print(json.dumps({"outcome": "GenericityError", "stage": exc.stage, "context": exc.context,
                              "message": exc.args[0]}, sort_keys=True))
        return EXIT_GENERICITY
    except Timeout as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TIMEOUT


if __name__ == "__main__":
    sys.exit(main())
