"""Command-line front end.

Exit codes: 0 success, 2 certificate failure, 3 rejected input, 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import shlex
import sys
from fractions import Fraction
from pathlib import Path

from . import diagnostics, graphs, oracle, scallop, stepgraphon
from .surd import format_decimal, format_exact, parse_rational

EXIT_FAIL = 2
EXIT_DOMAIN = 3
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _both(x) -> str:
    return f"{format_exact(x)}  [{format_decimal(x)}]"


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _read_graphon(path: str) -> stepgraphon.StepGraphon:
    return stepgraphon.StepGraphon.from_json(Path(path).read_text())


def _read_graph(path: str) -> graphs.Graph:
    return graphs.read_graph(Path(path).read_text())


def cmd_eval(args) -> int:
    alpha = args.alpha
    lines = [f"alpha={format_exact(alpha)}"]
    if alpha == 1:
        lines.append(f"h={format_exact(scallop.h_r(args.r, alpha))}")
    else:
        point = scallop.scallop_point(alpha, (args.r,))
        lines += [f"k={point.k}", f"c={_both(point.c)}", f"h={_both(point.h[args.r])}"]
        if alpha > 0:
            lines.append(f"h_prime_left={_both(point.h_prime_left[args.r])}")
            lines.append(f"h_prime_right={_both(point.h_prime[args.r])}")
    print("\n".join(lines))
    return 0


def cmd_sweep(args) -> int:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\r\n")
    writer.writerow(["alpha", "k", "c_decimal", "h_r_decimal", "h_r_prime_decimal", "exact_h_r"])
    for alpha in scallop.grid(args.start, args.stop, args.step):
        point = scallop.scallop_point(alpha, (args.r,))
        prime = format_decimal(point.h_prime[args.r]) if alpha > 0 else ""
        h = point.h[args.r]
        writer.writerow([str(alpha), point.k, format_decimal(point.c), format_decimal(h), prime, format_exact(h)])
    _write(out.getvalue(), args.out)
    return 0


def cmd_construct_graph(args) -> int:
    if args.m is not None:
        _, member = graphs.family_minimum_H(args.n, args.m, args.r)
    elif args.alpha is not None:
        member = graphs.construct_H_alpha_n(args.alpha, args.n)
    else:
        raise UsageError("construct-graph needs --alpha or --m")
    if args.format == "graph6":
        text = graphs.to_graph6(member.graph) + "\n"
    elif args.format == "edges":
        text = graphs.to_edge_list(member.graph)
    else:
        text = member.to_json() + "\n"
    _write(text, args.out)
    return 0


def cmd_construct_graphon(args) -> int:
    ext = stepgraphon.construct_extremal(args.r, args.alpha)
    _write(ext.base.to_json() + "\n", args.out)
    return 0


def cmd_hom(args) -> int:
    if (args.graph is None) == (args.graphon is None):
        raise UsageError("hom needs exactly one of --graph and --graphon")
    if args.graph is not None:
        value = graphs.hom_density(_read_graph(args.graph), args.r)
    else:
        value = stepgraphon.clique_density(_read_graphon(args.graphon), args.r)
    print(_both(value))
    return 0


def cmd_oracle(args) -> int:
    if args.all_m:
        records = oracle.table(args.n, args.r, jobs=args.jobs, cache=args.cache, use_cache=args.cache is not None)
    elif args.m is not None:
        records = [oracle.exact_min(args.n, args.m, args.r)]
        if args.cache is not None:
            oracle.append_cache(records, args.cache)
    else:
        raise UsageError("oracle needs --all-m or --m")
    sys.stdout.write(oracle.table_csv(records))
    return 0


def cmd_certify(args) -> int:
    cert = diagnostics.certify(_read_graphon(args.graphon), args.r)
    print(cert.to_json())
    return 0 if cert.passed else EXIT_FAIL


def cmd_distance(args) -> int:
    a, b = _read_graph(args.a), _read_graph(args.b)
    if args.mode == "edit":
        value = graphs.edit_distance(a, b, "exact" if args.exact else "heuristic")
        print(value)
    else:
        value = graphs.cut_discrepancy(a, b, exact=args.exact, seed=args.seed)
        print(_both(value))
    return 0


def cmd_sample(args) -> int:
    g = graphs.sample_w_random(_read_graphon(args.graphon), args.n, args.seed)
    text = graphs.to_graph6(g) + "\n" if args.format == "graph6" else graphs.to_edge_list(g)
    _write(text, args.out)
    return 0


def build_parser() -> Parser:
    parser = Parser(prog="cliquedensity", description="Exact clique-density extremal functions, constructions and checks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=Parser)

    p = sub.add_parser("eval", help="k(alpha), c(alpha), h_r(alpha) and its one-sided derivatives",
                       description="Evaluate the scallop point (k, c, h_r, h_r') at a rational edge density alpha.")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--alpha", type=_rational, required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sweep", help="CSV of h_r and h_r' along a rational alpha grid",
                       description="Tabulate k, c(alpha), h_r(alpha) and the right derivative h_r'(alpha) on a grid.")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--from", dest="start", type=_rational, default=Fraction(0))
    p.add_argument("--to", dest="stop", type=_rational, default=Fraction(119, 120))
    p.add_argument("--step", type=_rational, default=Fraction(1, 120))
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("construct-graph", help="the graph H_{alpha,n} or an optimal family member with m edges",
                       description="Build H_{alpha,n} (complete (k+1)-partite, parts floor(c n)), or with --m the "
                       "family member minimising the K_r count among graphs with n vertices and m edges.")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--alpha", type=_rational)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--format", choices=["graph6", "edges", "json"], default="graph6")
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct_graph)

    p = sub.add_parser("construct-graphon", help="the extremal step graphon at edge density alpha",
                       description="Write the complete partite step graphon with t(K_2) = alpha and t(K_r) = h_r(alpha).")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--alpha", type=_rational, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct_graphon)

    p = sub.add_parser("hom", help="homomorphism density t(K_r, W) of a graph or step graphon",
                       description="Exact K_r homomorphism density t(K_r, W) of a graph (graph6 or edge list) or a step graphon.")
    p.add_argument("--graph")
    p.add_argument("--graphon")
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_hom)

    p = sub.add_parser("oracle", help="exact minimum K_r counts G_r(n,m) against the family optimum H_r(n,m)",
                       description="Exhaustive G_r(n,m) for n <= 8 with the family optimum H_r(n,m) and the gap "
                       "r! G_r(n,m)/n^r - h_r(2m/n^2), as CSV.")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--all-m", action="store_true")
    p.add_argument("--cache")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("certify", help="necessary extremality conditions for a step graphon",
                       description="Check f_r = 0, absence of K_r-heavy pairs, the degree cap d <= k c and the "
                       "neighbourhood bound. Exit 0 on pass, 2 on fail, 3 at a cusp density.")
    p.add_argument("--graphon", required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("distance", help="edit distance or cut discrepancy between two graphs",
                       description="Edit distance (minimum edge edits over vertex bijections) or cut discrepancy "
                       "max |e_a(S,T) - e_b(S,T)| / n^2.")
    p.add_argument("--mode", choices=["edit", "cut"], required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--exact", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("sample", help="n-vertex W-random graph from a step graphon",
                       description="Draw an n-vertex W-random graph G(n, W), deterministic for a given seed.")
    p.add_argument("--graphon", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--format", choices=["graph6", "edges"], default="graph6")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sample)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    print("# cliquedensity " + shlex.join(argv), file=sys.stderr)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"cliquedensity: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, IndexError, ZeroDivisionError, KeyError, OSError) as exc:
        print(f"cliquedensity: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
