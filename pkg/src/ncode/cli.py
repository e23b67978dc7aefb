"""Command-line entry point: ``ncode <subcommand> ...``."""
from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import bounds as bnd
from . import families as fam
from . import io
from .code import (
    format_word,
    is_intersection_complete,
    is_simplicial_complex,
    maximal_codewords,
    members,
    popcount,
)
from .errors import CapExceededError, PreconditionError
from .geometry import (
    code_of_realization,
    inflate,
    trim_all,
    trim_realization,
    rat,
    rat_str,
)
from .morphisms import apply_morphism, sdelta_to_sm
from .realize import realize_closed, verify_plan, VerifyReport
from .sunflower import build_counterexample, certify, run_trials, tverberg_partition, is_k_flexible

EXIT_OK = 0
EXIT_PRECONDITION = 2
EXIT_CAP = 3
EXIT_USAGE = 64

GLOBAL_DEFAULTS = {"json": False, "seed": 0, "threads": 1}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _emit(obj, out=None) -> None:
    text = io.dumps(obj)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _words(C, ws) -> str:
    return "{" + ", ".join(format_word(w, C.n) for w in sorted(ws, key=lambda w: (-popcount(w), w))) + "}"


# subcommand handlers ------------------------------------------------------

def cmd_inspect(args) -> int:
    C = io.code_from_json(io.load_json(args.code))
    maxi = maximal_codewords(C)
    info = {
        "n": C.n,
        "num_codewords": len(C),
        "intersection_complete": is_intersection_complete(C),
        "simplicial_complex": is_simplicial_complex(C),
        "dim": C.dim,
        "maximal": [members(w) for w in sorted(maxi, key=lambda w: (-popcount(w), w))],
        "k_flexible": is_k_flexible(C),
    }
    if args.json:
        _emit(info)
    else:
        print(f"code:        {C}")
        print(f"n:           {C.n}")
        print(f"codewords:   {len(C)}")
        print(f"IC:          {str(info['intersection_complete']).lower()}")
        print(f"complex:     {str(info['simplicial_complex']).lower()}")
        print(f"dim:         {C.dim}")
        print(f"maximal:     {_words(C, maxi)}")
    return EXIT_OK


def cmd_family(args) -> int:
    if args.kind == "sn":
        C = fam.make_S_n(_int_arg(args.arg))
    elif args.kind == "tn":
        C = fam.make_T_n(_int_arg(args.arg))
    elif args.kind == "sdelta":
        C = fam.make_S_Delta(io.complex_from_json(io.load_json(args.arg)))
    else:
        if args.extra is None:
            raise UsageError("family scd needs <C.json> <D.json>")
        C = fam.make_S_C_over_D(io.code_from_json(io.load_json(args.arg)),
                                io.code_from_json(io.load_json(args.extra)))
    _emit(io.code_to_json(C))
    return EXIT_OK


def _int_arg(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"expected an integer, got {text!r}")


def cmd_bounds(args) -> int:
    C = io.code_from_json(io.load_json(args.code))
    rep = bnd.bound_report(C, permute=args.permute)
    if args.json:
        _emit(rep.as_dict())
        return EXIT_OK
    fmt = lambda v: "unbounded" if v is None else str(v)  # noqa: E731
    print(f"code: {C}")
    print(f"family:     {rep.family or '-'}")
    print(f"odim:       {rep.odim_lower} .. {fmt(rep.odim_upper)}")
    print(f"cdim:       {rep.cdim_lower} .. {fmt(rep.cdim_upper)}")
    print(f"exact odim: {fmt(rep.exact_odim) if rep.exact_odim is not None else '-'}")
    for text, tag in rep.reasons:
        print(f"  {text:<40} [{tag}]")
    return EXIT_OK


def cmd_morphism(args) -> int:
    if args.action == "apply":
        f = io.trunks_from_json(io.load_json(args.file))
        _emit(io.code_to_json(apply_morphism(f)))
    else:
        f = sdelta_to_sm(io.complex_from_json(io.load_json(args.file)))
        out = io.trunks_to_json(f)
        out["image"] = io.code_to_json(apply_morphism(f))
        _emit(out)
    return EXIT_OK


def cmd_code_of(args) -> int:
    C = code_of_realization(io.realization_from_json(io.load_json(args.realization)))
    if args.json:
        _emit(io.code_to_json(C))
    else:
        print(C)
    return EXIT_OK


def cmd_trim(args) -> int:
    R = io.realization_from_json(io.load_json(args.realization))
    if args.eps is not None:
        out = trim_all(R, rat(args.eps))
        eps = rat(args.eps)
    else:
        out, eps = trim_realization(R)
    obj = io.realization_to_json(out)
    if args.json:
        obj = {"eps": rat_str(eps), "realization": obj}
    _emit(obj, args.output)
    return EXIT_OK


def cmd_inflate(args) -> int:
    R = io.realization_from_json(io.load_json(args.realization))
    _emit(io.realization_to_json(inflate(R)), args.output)
    return EXIT_OK


def cmd_realize(args) -> int:
    C = io.code_from_json(io.load_json(args.code))
    R, plan = realize_closed(C, complete=args.complete)
    if plan.warning:
        print(f"warning: {plan.warning}", file=sys.stderr)
    _emit(io.realization_to_json(R), args.output)
    if args.plan:
        _emit(io.plan_to_json(plan), args.plan)
    return EXIT_OK


def cmd_verify(args) -> int:
    C = io.code_from_json(io.load_json(args.code))
    obj = io.load_json(args.target)
    if io.is_plan(obj):
        rep = verify_plan(C, io.plan_from_json(obj), deep=args.deep)
    else:
        rep = _verify_realization(C, io.realization_from_json(obj), args.deep)
    if args.json:
        _emit(rep.as_dict())
    else:
        for name, status in rep.layers.items():
            print(f"layer {name}: {status}")
        if rep.detail:
            print(rep.detail)
    if not rep.ok:
        print(f"verification failed at layer ({rep.failed_layer}): {rep.detail}", file=sys.stderr)
        return EXIT_PRECONDITION
    return EXIT_OK


def _verify_realization(C, R, deep: bool) -> VerifyReport:
    """Without witness points only the combinatorial and (optionally) deep layers apply."""
    from .code import completion_membership, intersection_completion
    rep = VerifyReport()
    for sigma in sorted(intersection_completion(C).words):
        if completion_membership(C, sigma) != (sigma in C.words):
            return rep.fail("a", f"{format_word(sigma, C.n)} is an intersection of codewords but not a codeword")
    rep.layers["a"] = "pass"
    rep.layers["b"] = "skipped"
    if not deep:
        rep.layers["c"] = "skipped"
        return rep
    got = code_of_realization(R)
    if got != C:
        return rep.fail("c", f"realization has code {got}, expected {C}")
    rep.layers["c"] = "pass"
    return rep


def cmd_sunflower(args) -> int:
    if args.action == "counterexample":
        spec, pts = build_counterexample(args.d, args.k, skew=args.skew)
        cert = certify(spec, pts)
        obj = {
            "kind": "sunflower",
            "d": spec.d,
            "k": spec.k,
            "realization": io.realization_to_json(spec.realization()),
            "points": io.points_to_json(pts, spec.d),
            "certificate": {"k_flexible": cert.flexible_k,
                            "hull_misses_center": cert.hull_misses_center},
            "meta": spec.meta,
        }
        _emit(obj, args.output)
        return EXIT_OK if cert.ok else EXIT_PRECONDITION
    results = run_trials(args.d, args.k, args.n, args.trials, seed=args.seed,
                         threads=args.threads, verify_code=args.verify_code)
    hits = sum(results)
    summary = {"d": args.d, "k": args.k, "n": args.n, "trials": len(results),
               "seed": args.seed, "center_hits": hits, "misses": len(results) - hits,
               "miss_seeds": [args.seed + i for i, r in enumerate(results) if not r]}
    if args.json:
        _emit(summary)
    else:
        print(f"d={args.d} k={args.k} n={args.n}: {hits}/{len(results)} trials hit the center")
    return EXIT_OK


def cmd_tverberg(args) -> int:
    pts = io.points_from_json(io.load_json(args.points))
    parts = tverberg_partition(pts, args.r)
    if args.json:
        _emit({"r": args.r, "partition": parts if parts is None else
               [[[rat_str(v) for v in pts[i]] for i in B] for B in parts]})
    elif parts is None:
        print("no partition")
    else:
        for B in parts:
            print(" ".join("(" + ", ".join(rat_str(v) for v in pts[i]) + ")" for i in B))
    return EXIT_OK


# parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS)

    p = _Parser(prog="ncode", description="Intersection complete neural codes and convex realizations.",
                parents=[common])
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("inspect", parents=[common], help="summarize a code")
    s.add_argument("code")
    s.set_defaults(func=cmd_inspect)

    s = sub.add_parser("family", parents=[common], help="build a named code family")
    s.add_argument("kind", choices=["sn", "tn", "sdelta", "scd"])
    s.add_argument("arg")
    s.add_argument("extra", nargs="?")
    s.set_defaults(func=cmd_family)

    s = sub.add_parser("bounds", parents=[common], help="embedding dimension bounds")
    s.add_argument("code")
    s.add_argument("--permute", action="store_true", help="allow relabeled family recognition")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("morphism", parents=[common], help="trunk-determined morphisms")
    s.add_argument("action", choices=["apply", "sdelta-to-sm"])
    s.add_argument("file")
    s.set_defaults(func=cmd_morphism)

    s = sub.add_parser("code-of", parents=[common], help="code of a realization")
    s.add_argument("realization")
    s.set_defaults(func=cmd_code_of)

    s = sub.add_parser("trim", parents=[common], help="trim a realization")
    s.add_argument("realization")
    s.add_argument("--eps", help="fixed radius (rational); default picks one preserving the code")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_trim)

    s = sub.add_parser("inflate", parents=[common], help="open realization from a closed one")
    s.add_argument("realization")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_inflate)

    s = sub.add_parser("realize", parents=[common], help="closed realization of an IC code")
    s.add_argument("code")
    s.add_argument("-o", "--output")
    s.add_argument("--plan", help="also write the construction plan here")
    s.add_argument("--complete", action="store_true",
                   help="realize the intersection completion of a non-IC code")
    s.set_defaults(func=cmd_realize)

    s = sub.add_parser("verify", parents=[common], help="verify a realization or plan")
    s.add_argument("code")
    s.add_argument("target")
    s.add_argument("--deep", action="store_true", help="also recompute the code from facets")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("sunflower", parents=[common], help="flexible sunflower experiments")
    ss = s.add_subparsers(dest="action", parser_class=_Parser)
    c = ss.add_parser("counterexample", parents=[common])
    c.add_argument("-d", type=int, required=True)
    c.add_argument("-k", type=int, default=1)
    c.add_argument("--skew", action="store_true")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_sunflower)
    t = ss.add_parser("trials", parents=[common])
    t.add_argument("-d", type=int, required=True)
    t.add_argument("-k", type=int, default=1)
    t.add_argument("-n", type=int, required=True)
    t.add_argument("--trials", type=int, default=100)
    t.add_argument("--verify-code", action="store_true")
    t.set_defaults(func=cmd_sunflower)

    s = sub.add_parser("tverberg", parents=[common], help="brute-force Tverberg partition")
    s.add_argument("points")
    s.add_argument("-r", type=int, required=True)
    s.set_defaults(func=cmd_tverberg)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        # global options may appear before or after the subcommand
        for key, value in GLOBAL_DEFAULTS.items():
            if not hasattr(args, key):
                setattr(args, key, value)
        if not getattr(args, "func", None):
            parser.print_usage(sys.stderr)
            return EXIT_USAGE
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except CapExceededError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
