"""Command-line entry point.

Exit codes: 0 success, 1 a property fails or a witness was found, 2 bad usage
or input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from . import io
from .edge import decompose_sum, edge_polytope, rewrite_fractional
from .graph import common_vertex_condition, odd_cycle_condition
from .polytope import dilate, dimension, lattice_points, minkowski_sum
from .semigroup import idp_check, level_check, normal_check
from .suite import FAIL, PASS, RunConfig, run_suite


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def _int_list(text: str, field: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise io.InputError(f"{field}: expected comma-separated integers, got {text!r}") from None


def _edge_list(text: str) -> list[tuple[int, int]]:
    out = []
    for item in (t for t in text.split(",") if t.strip()):
        try:
            a, b = (int(x) for x in item.split("-"))
        except ValueError:
            raise io.InputError(f"--tracked: expected edges like 1-2,3-4, got {item!r}") from None
        out.append((a, b))
    return out


def _print(data) -> None:
    print(io.dumps(data))


def _colour(status: str) -> str:
    if os.environ.get("NO_COLOR") is not None or not sys.stdout.isatty():
        return status
    code = {"PASS": "32", "FAIL": "31", "SKIPPED": "33"}.get(status, "0")
    return f"\033[{code}m{status}\033[0m"


def _report(rep) -> int:
    _print(rep.to_json())
    return 0 if rep.holds else 1


def _cmd_dim(args) -> int:
    print(dimension(io.polytope_from_json(io.load_json(args.polytope))))
    return 0


def _cmd_minksum(args) -> int:
    ps = [io.polytope_from_json(io.load_json(f)) for f in args.polytopes]
    if len({p.ambient_dim for p in ps}) != 1:
        raise io.InputError("ambient_dim: polytopes disagree")
    _print(io.polytope_to_json(minkowski_sum(ps)))
    return 0


def _cmd_points(args) -> int:
    p = io.polytope_from_json(io.load_json(args.polytope))
    _print([list(x) for x in lattice_points(dilate(p, args.k))])
    return 0


def _cmd_idp(args) -> int:
    return _report(idp_check(io.polytope_from_json(io.load_json(args.polytope)), args.max_k))


def _cmd_normal(args) -> int:
    p = io.polytope_from_json(io.load_json(args.polytope))
    return _report(normal_check(p, args.max_k, reading=args.reading))


def _cmd_level(args) -> int:
    ps = [io.polytope_from_json(io.load_json(f)) for f in args.polytopes]
    ns = _int_list(args.n, "--n")
    if len(ns) != len(ps):
        raise io.InputError(f"--n: expected {len(ps)} multipliers, got {len(ns)}")
    if any(m < 1 for m in ns):
        raise io.InputError("--n: multipliers must be positive")
    return _report(level_check(ps, ns, args.max_k))


def _cmd_edge_polytope(args) -> int:
    _print(io.polytope_to_json(edge_polytope(io.graph_from_json(io.load_json(args.graph)))))
    return 0


def _bool(value: bool) -> int:
    print("true" if value else "false")
    return 0 if value else 1


def _cmd_occ(args) -> int:
    return _bool(odd_cycle_condition(io.graph_from_json(io.load_json(args.graph))))


def _cmd_common_vertex(args) -> int:
    return _bool(common_vertex_condition(io.graph_from_json(io.load_json(args.graph))))


def _cmd_decompose(args) -> int:
    g1 = io.graph_from_json(io.load_json(args.g1), "g1")
    g2 = io.graph_from_json(io.load_json(args.g2), "g2")
    alpha = _int_list(args.alpha, "--alpha")
    if len(alpha) != g1.n:
        raise io.InputError(f"--alpha: expected {g1.n} coordinates, got {len(alpha)}")
    _print([list(x) for x in decompose_sum(g1, g2, alpha, args.k)])
    return 0


def _cmd_rewrite(args) -> int:
    w = io.weighting_from_json(io.load_json(args.weighting))
    res = rewrite_fractional(w.graph, w.weights, set(_edge_list(args.tracked)))
    _print({
        "integer_weights": [[list(e), x] for e, x in sorted(res.integer_weights.items())],
        "tracked_sum": io.rational_to_json(res.tracked_sum),
        "tracked_bound": io.rational_to_json(res.tracked_bound),
        "steps": res.steps,
    })
    return 0


def _cmd_verify(args) -> int:
    cfg = RunConfig(max_k=args.max_k, random_seed=args.seed, sample_count=args.samples)
    checks = run_suite(cfg)
    if args.json:
        print(json.dumps([c.to_json() for c in checks], indent=2))
    else:
        print(f"seed={cfg.random_seed} max_k={cfg.max_k} samples={cfg.sample_count}")
        width = max(len(c.id) for c in checks)
        for c in checks:
            extra = f" [{c.reason}]" if c.reason else ""
            print(f"{c.id:<{width}}  {_colour(c.status):<7}  {c.details}{extra}")
        passed = sum(c.status == PASS for c in checks)
        print(f"{passed}/{len(checks)} passed")
    return 1 if any(c.status == FAIL for c in checks) else 0


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _at_least_two(text: str) -> int:
    v = _positive(text)
    if v < 2:
        raise argparse.ArgumentTypeError("must be at least 2")
    return v


def _nonnegative(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="minkidp", description="Integer decomposition checks for Minkowski sums of lattice polytopes.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("dim", help="dimension of a polytope")
    s.add_argument("polytope")
    s.set_defaults(func=_cmd_dim)

    s = sub.add_parser("minksum", help="Minkowski sum of polytopes")
    s.add_argument("polytopes", nargs="+")
    s.set_defaults(func=_cmd_minksum)

    s = sub.add_parser("points", help="lattice points of kP")
    s.add_argument("polytope")
    s.add_argument("--k", type=_positive, default=1)
    s.set_defaults(func=_cmd_points)

    s = sub.add_parser("idp", help="integer decomposition property up to max-k")
    s.add_argument("polytope")
    s.add_argument("--max-k", type=_at_least_two, default=3)
    s.set_defaults(func=_cmd_idp)

    s = sub.add_parser("normal", help="normality up to max-k")
    s.add_argument("polytope")
    s.add_argument("--max-k", type=_at_least_two, default=3)
    s.add_argument("--reading", choices=["literal", "generated"], default="literal")
    s.set_defaults(func=_cmd_normal)

    s = sub.add_parser("level", help="interior splitting of sum n_i P_i up to max-k")
    s.add_argument("--n", required=True, help="comma-separated multipliers")
    s.add_argument("polytopes", nargs="+")
    s.add_argument("--max-k", type=_at_least_two, default=3)
    s.set_defaults(func=_cmd_level)

    s = sub.add_parser("edge-polytope", help="edge polytope of a graph")
    s.add_argument("graph")
    s.set_defaults(func=_cmd_edge_polytope)

    s = sub.add_parser("occ", help="odd cycle condition")
    s.add_argument("graph")
    s.set_defaults(func=_cmd_occ)

    s = sub.add_parser("common-vertex", help="every two odd cycles share a vertex")
    s.add_argument("graph")
    s.set_defaults(func=_cmd_common_vertex)

    s = sub.add_parser("decompose", help="split alpha in k(P_G1 + P_G2) into k lattice points")
    s.add_argument("g1")
    s.add_argument("g2")
    s.add_argument("--alpha", required=True)
    s.add_argument("--k", type=_positive, required=True)
    s.set_defaults(func=_cmd_decompose)

    s = sub.add_parser("rewrite", help="integral rewriting of a fractional edge weighting")
    s.add_argument("weighting")
    s.add_argument("--tracked", default="", help="edges like 1-2,3-4")
    s.set_defaults(func=_cmd_rewrite)

    s = sub.add_parser("verify-paper", aliases=["verify"], help="run the full reproduction suite")
    s.add_argument("--seed", type=_nonnegative, default=0)
    s.add_argument("--max-k", type=_at_least_two, default=3)
    s.add_argument("--samples", type=_positive, default=20)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=_cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except io.InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
