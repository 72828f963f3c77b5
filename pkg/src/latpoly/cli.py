"""Command-line interface.

Exit codes: 0 success (or a query answered), 2 input error, 3 a requested
verification failed, 4 input the operation does not support (e.g. the
dual of a non-reflexive polytope).
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from contextlib import nullcontext

from . import constructions as C
from .census import scan_file
from .ehrhart import check_delta_properties, delta, ehrhart_from_delta, is_symmetric
from .equivalence import apply_map, are_equivalent, enumerate_reflexive_2d
from .ksio import ParseError, read_polytopes, write_native
from .lattice import LatticeError, determinant
from .polytope import (
    EmptyInput,
    NotFullDimensional,
    NotIntegral,
    OriginNotInterior,
    Polytope,
    is_reflexive,
    normalized_volume,
    polar_dual,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_VERIFY = 3
EXIT_UNSUPPORTED = 4

CONSTRUCTIONS = {
    "gamma": C.gamma,
    "prism-sym": C.prism_sym,
    "bipyramid": C.bipyramid,
    "prism01": C.prism01,
    "pyramid": C.pyramid,
}


class InputError(Exception):
    pass


def _bool(x: bool) -> str:
    return "true" if x else "false"


def _vec(v) -> str:
    return " ".join(map(str, v))


def load_inputs(args) -> list[Polytope]:
    out = []
    fixtures = C.fixtures()
    for name in args.fixture or []:
        if name not in fixtures:
            raise InputError(f"unknown fixture {name!r}; known: {', '.join(sorted(fixtures))}")
        out.append(fixtures[name])
    for path in args.file or []:
        try:
            fh = sys.stdin if path == "-" else open(path, encoding="utf-8")
        except OSError as exc:
            raise InputError(str(exc)) from None
        with fh if fh is not sys.stdin else nullcontext(fh):
            out.extend(read_polytopes(fh, args.format, strict=True, orientation=args.orientation))
    if not out:
        raise InputError("no input polytope (use --file or --fixture)")
    return out


def _add_input_args(p):
    p.add_argument("--file", action="append", help="input file ('-' for stdin)")
    p.add_argument("--fixture", action="append", help="named built-in polytope")
    p.add_argument("--format", choices=("auto", "native", "ks"), default="auto")
    p.add_argument("--orientation", choices=("auto", "rows", "columns"), default="auto",
                   help="for KS input: whether matrix rows or columns are points")


def _emit(args, human: list[str], machine) -> None:
    if args.machine:
        print(json.dumps(machine, sort_keys=True))
    else:
        print("\n".join(human))


def cmd_delta(args) -> int:
    status = EXIT_OK
    reports_h, reports_m = [], []
    for P in load_inputs(args):
        dv = delta(P)
        poly = ehrhart_from_delta(dv)
        refl = is_reflexive(P)
        h = [f"dim: {P.dim}", f"vertices: {P.n_vertices}", f"delta: {_vec(dv)}",
             f"ehrhart: {poly}", f"volume: {sum(dv)}", f"symmetric: {_bool(is_symmetric(dv))}",
             f"reflexive: {_bool(refl)}"]
        m = {"dim": P.dim, "vertices": [list(v) for v in P.vertices], "delta": list(dv),
             "ehrhart": [str(c) for c in poly.coefficients], "volume": sum(dv),
             "reflexive": refl}
        if args.check:
            rep = check_delta_properties(P, dv)
            for c in rep.checks:
                h.append(f"check: {c.name}: {'PASS' if c.passed else 'FAIL'} ({c.witness})")
            m["checks"] = {c.name: c.passed for c in rep.checks}
            if not rep.passed:
                status = EXIT_VERIFY
        reports_h.append("\n".join(h))
        reports_m.append(m)
    if args.machine:
        print(json.dumps(reports_m if len(reports_m) > 1 else reports_m[0], sort_keys=True))
    else:
        print("\n\n".join(reports_h))
    return status


def cmd_dual(args) -> int:
    status = EXIT_OK
    for P in load_inputs(args):
        D = polar_dual(P)
        print(write_native(D))
        if args.verify and polar_dual(D) != P:
            print("verify: dual of dual differs from input", file=sys.stderr)
            status = EXIT_VERIFY
    return status


def _verify_construction(kind: str, P: Polytope, Q: Polytope) -> list[str]:
    """Problems found re-checking a construction's properties."""
    problems = []
    dv = delta(P)
    formula = {"gamma": C.gamma_delta_formula, "prism01": C.prism_delta_formula,
               "pyramid": C.pyramid_delta_formula}.get(kind)
    if formula and delta(Q) != formula(dv):
        problems.append(f"delta {delta(Q)} != transform {formula(dv)}")
    if is_reflexive(P):
        if kind in ("gamma", "prism-sym", "bipyramid") and not is_reflexive(Q):
            problems.append("construction over a reflexive polytope is not reflexive")
        if kind == "gamma" and len(Q.facets) != 2 * len(P.facets) + 1:
            problems.append("facet count is not 2s+1")
        if kind == "prism-sym" and polar_dual(Q) != C.bipyramid(polar_dual(P)):
            problems.append("dual is not the bipyramid over the dual")
        if kind == "bipyramid" and polar_dual(Q) != C.prism_sym(polar_dual(P)):
            problems.append("dual is not the prism over the dual")
    return problems


def cmd_construct(args) -> int:
    status = EXIT_OK
    fn = CONSTRUCTIONS[args.kind]
    for P in load_inputs(args):
        Q = fn(P)
        print(write_native(Q))
        if args.verify:
            for msg in _verify_construction(args.kind, P, Q):
                print(f"verify: {msg}", file=sys.stderr)
                status = EXIT_VERIFY
    return status


def cmd_equiv(args) -> int:
    polys = load_inputs(args)
    if args.dual:
        if len(polys) != 1:
            raise InputError("--dual takes exactly one input polytope")
        P, Q = polys[0], polar_dual(polys[0])
    else:
        if len(polys) != 2:
            raise InputError(f"expected two input polytopes, got {len(polys)}")
        P, Q = polys
    if P.dim != Q.dim:
        m = None
    else:
        m = are_equivalent(P, Q)
    if m is None:
        _emit(args, ["inequivalent"], {"equivalent": False})
    else:
        human = ["equivalent", "matrix:"] + [_vec(r) for r in m.matrix] + [f"translation: {_vec(m.translation)}"]
        _emit(args, human, {"equivalent": True, "matrix": [list(r) for r in m.matrix],
                            "translation": list(m.translation)})
    return EXIT_OK


def cmd_sylvester(args) -> int:
    d = args.dim
    S = C.sylvester_simplex(d)
    print(write_native(S))
    if not args.verify:
        return EXIT_OK
    from .ehrhart import delta_vector_simplex

    D = polar_dual(S)
    vol = normalized_volume(S)
    bound = C.sylvester(d) - 1
    nill = C.nill_bounds_check(S)
    m = C.sylvester_simplex_dual_map(d)
    checks = [
        ("reflexive", is_reflexive(S), ""),
        ("self-dual (search)", are_equivalent(S, D) is not None, ""),
        ("self-dual (explicit map)", apply_map(m, D) == S, f"det {determinant(m.matrix)}"),
        ("volume formula", vol == C.sylvester_volume_formula(d), f"{vol}"),
        ("volume bound", vol < bound, f"{vol} < {bound}"),
        ("nill lower bound", nill.lower <= nill.product, f"{nill.product} >= {nill.lower}"),
        ("nill upper bound", nill.product <= nill.upper, f"{nill.product} <= {nill.upper}"),
    ]
    dv = delta_vector_simplex(S)
    ok = all(c[1] for c in checks)
    human = [f"{name}: {'PASS' if good else 'FAIL'}" + (f" ({w})" if w else "") for name, good, w in checks]
    human.append(f"delta: {_vec(dv)}")
    if args.machine:
        print(json.dumps({"dim": d, "volume": vol, "delta": list(dv),
                          "checks": {n: g for n, g, _ in checks}}, sort_keys=True))
    else:
        print("\n".join(human))
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_scan(args) -> int:
    summary = scan_file(args.path, args.format, args.equivalence, args.workers,
                        keep_records=args.details or args.machine)
    if args.machine:
        out = summary.as_dict()
        if args.details:
            out["records"] = [r.describe() for r in summary.records]
        print(json.dumps(out, sort_keys=True))
    else:
        if args.details:
            for r in summary.records:
                print(r.describe())
        print("\n".join(summary.lines()))
    return EXIT_OK


def cmd_enumerate_2d(args) -> int:
    for P in enumerate_reflexive_2d():
        print(write_native(P))
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    from .reproduce import ReproduceConfig, run_all

    rows = run_all(ReproduceConfig(ks3=args.ks3, skip_enum2d=args.skip_enum2d,
                                   workers=args.workers))
    if args.machine:
        print(json.dumps([r.__dict__ for r in rows], sort_keys=True))
    else:
        w = max(len(r.claim) for r in rows)
        for r in rows:
            print(f"{r.status:<7} {r.claim:<{w}}  {r.anchor}")
            print(f"{'':<7} {'':<{w}}  {r.detail}")
    return EXIT_OK if all(r.status != "FAIL" for r in rows) else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="latpoly", description="Exact lattice polytope toolkit")
    p.add_argument("--machine", action="store_true", help="emit JSON instead of text")
    p.add_argument("-v", "--verbose", action="store_true")
    # --machine is accepted after the subcommand as well
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--machine", action="store_true", default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)
    _sub = sub.add_parser
    sub.add_parser = lambda *a, **k: _sub(*a, parents=[common], **k)

    s = sub.add_parser("delta", help="delta-vector, Ehrhart polynomial, volume")
    _add_input_args(s)
    s.add_argument("--check", action="store_true", help="verify the delta-vector properties")
    s.set_defaults(func=cmd_delta)

    s = sub.add_parser("dual", help="polar dual in native format")
    _add_input_args(s)
    s.add_argument("--verify", action="store_true")
    s.set_defaults(func=cmd_dual)

    s = sub.add_parser("construct", help="build gamma / prism / pyramid polytopes")
    s.add_argument("kind", choices=sorted(CONSTRUCTIONS))
    _add_input_args(s)
    s.add_argument("--verify", action="store_true")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("equiv", help="decide unimodular equivalence")
    _add_input_args(s)
    s.add_argument("--dual", action="store_true", help="compare the input with its dual")
    s.set_defaults(func=cmd_equiv)

    s = sub.add_parser("sylvester", help="the Sylvester self-dual reflexive simplex")
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--verify", action="store_true")
    s.set_defaults(func=cmd_sylvester)

    s = sub.add_parser("scan", help="self-duality census of a polytope file")
    s.add_argument("path", help="KS or native file ('-' for stdin)")
    s.add_argument("--format", choices=("auto", "native", "ks"), default="auto")
    s.add_argument("--equivalence", action="store_true", help="also search for P ~ P^v (slow)")
    s.add_argument("--workers", type=int, default=None)
    s.add_argument("--details", action="store_true", help="per-record lines in input order")
    s.set_defaults(func=cmd_scan)

    s = sub.add_parser("enumerate-2d", help="the reflexive polygons up to equivalence")
    s.set_defaults(func=cmd_enumerate_2d)

    s = sub.add_parser("verify-paper", help="run the full reproduction suite")
    s.add_argument("--ks3", help="Kreuzer-Skarke file of reflexive 3-polytopes")
    s.add_argument("--skip-enum2d", action="store_true")
    s.add_argument("--workers", type=int, default=None)
    s.set_defaults(func=cmd_verify_paper)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (OriginNotInterior, NotIntegral, C.NotReflexive) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (InputError, ParseError, NotFullDimensional, EmptyInput, C.DimensionTooSmall,
            LatticeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
