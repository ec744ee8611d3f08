"""``kalai-lab`` command line.

Exit status: 0 when every claim holds, 1 when a claim or certificate fails,
2 for unusable input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import jsonschema

from .corpus import random_lab, random_unconditional
from .errors import CertificationFailure, InvariantViolation, KalaiLabError
from .hanner import P4Witness, build_gp, classify_minimizer, cotree_str, expr_str, hanner_from_expr, is_cograph, parse_expr
from .harness import verify_unconditional_bound
from .io import dumps, read_polytope, write_polytope
from .lab import classify
from .lattice import FaceLattice
from .reproduce import TARGETS, reproduce
from .special import default_precision, special_census

OK, CLAIM_FAILED, BAD_INPUT = 0, 1, 2


def _emit(obj, out: Path | None = None) -> None:
    text = dumps(obj)
    if out is not None:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def cmd_check(args) -> int:
    _emit(classify(read_polytope(args.file)).to_dict(), args.output)
    return OK


def cmd_faces(args) -> int:
    P = read_polytope(args.file)
    L = FaceLattice(P)
    faces = [
        {"id": f.index, "dim": f.dim, "vertices": [k + 1 for k in f.vertex_ids()]}
        for f in L.faces
    ]
    _emit({"d": P.dim, "s": L.s, "f_vector": list(L.f_vector), "euler": L.euler_ok, "faces": faces}, args.output)
    return OK if L.euler_ok else CLAIM_FAILED


def cmd_special(args) -> int:
    P = read_polytope(args.file)
    census = special_census(P, precision=args.precision)
    _emit(census.to_dict(), args.output)
    return OK if census.total and census.injective else CLAIM_FAILED


def cmd_gp(args) -> int:
    G = build_gp(read_polytope(args.file))
    tree = is_cograph(G)
    out = {"graph": G.to_dict(), "cograph": not isinstance(tree, P4Witness)}
    if isinstance(tree, P4Witness):
        out["induced_p4"] = [k + 1 for k in tree.path]
    else:
        out["cotree"] = cotree_str(tree)
    _emit(out, args.output)
    return OK


def cmd_classify(args) -> int:
    _emit(classify_minimizer(read_polytope(args.file)).to_dict(), args.output)
    return OK


def cmd_prove5(args) -> int:
    report = verify_unconditional_bound(read_polytope(args.file))
    _emit(report.to_dict(), args.output)
    return OK if report.passed else CLAIM_FAILED


def cmd_hanner(args) -> int:
    expr = parse_expr(args.expr)
    P = hanner_from_expr(expr)
    if args.output is not None:
        write_polytope(P, args.output)
    summary = {"expr": expr_str(expr), "d": P.dim, "n_vertices": P.n_vertices, "n_facets": P.n_facets}
    print(dumps(summary) if args.output is not None else dumps(P.to_dict()))
    return OK


def cmd_random(args) -> int:
    if args.unconditional:
        P = random_unconditional(args.d, args.seed, args.n_points)
    else:
        P = random_lab(args.d, args.seed, args.n_points)
    if args.output is not None:
        write_polytope(P, args.output)
    else:
        print(dumps(P.to_dict()))
    return OK


def cmd_reproduce(args) -> int:
    claims = reproduce(args.target, args.arg, args.figures)
    print("claim\texpected\tcomputed\tverdict")
    for c in claims:
        print(c.line())
    failed = sum(not c.passed for c in claims)
    print(f"# {len(claims) - failed}/{len(claims)} claims hold")
    return CLAIM_FAILED if failed else OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kalai-lab", description="Exact face counting for symmetric polytopes.")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, fn, help_ in [
        ("check", cmd_check, "symmetry classification with witnesses"),
        ("faces", cmd_faces, "face lattice, f-vector and s(P)"),
        ("special", cmd_special, "certified special-point census"),
        ("gp", cmd_gp, "coordinate graph and cograph test"),
        ("classify", cmd_classify, "Hanner classification of a minimizer"),
        ("prove5", cmd_prove5, "complemented-lattice bound for unconditional polytopes"),
    ]:
        p = sub.add_parser(name, help=help_)
        p.add_argument("file", type=Path)
        p.add_argument("-o", "--output", type=Path)
        if name == "special":
            p.add_argument("--precision", type=int, default=None,
                           help=f"working precision in bits (default {default_precision()})")
        p.set_defaults(func=fn)

    p = sub.add_parser("hanner", help="build a Hanner polytope from an expression")
    p.add_argument("expr")
    p.add_argument("-o", "--output", type=Path)
    p.set_defaults(func=cmd_hanner)

    p = sub.add_parser("reproduce", help=f"check a named result ({', '.join(TARGETS)})")
    p.add_argument("target")
    p.add_argument("arg", nargs="?")
    p.add_argument("--figures", type=Path, help="directory for PNG figures")
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("random", help="seeded random LAB polytope")
    p.add_argument("-d", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n-points", type=int, default=3)
    p.add_argument("--unconditional", action="store_true", help="skip the halfspace scalings")
    p.add_argument("-o", "--output", type=Path)
    p.set_defaults(func=cmd_random)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CertificationFailure, InvariantViolation) as exc:
        print(f"kalai-lab: claim failed: {exc}", file=sys.stderr)
        return CLAIM_FAILED
    except jsonschema.ValidationError as exc:
        print(f"kalai-lab: invalid input: {exc.message}", file=sys.stderr)
        return BAD_INPUT
    except (KalaiLabError, ValueError, OSError) as exc:
        print(f"kalai-lab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
