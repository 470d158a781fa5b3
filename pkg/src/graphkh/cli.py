"""Command-line interface.

Exit status: 0 on success, 1 when input fails validation, 2 when a property
check fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .complex import CapacityError, build_complex, verify_d_squared
from .gf2 import corank, principal_submatrix
from .glformat import GraphFileError, parse, serialize
from .graph import LabeledGraph, MoveNotApplicable, MoveSpec, adjacency_matrix, apply_move, enumerate_moves, is_graph_knot, writhe
from .harness import check_invariance, random_graph
from .homology import CONVENTIONS, betti_table, normalized_table
from .polynomials import euler_identity_check, jones, kauffman_bracket
from .states import members

EXIT_OK, EXIT_INVALID, EXIT_PROPERTY = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _load(path: str) -> LabeledGraph:
    text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    return parse(text)


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def invariants_json(g: LabeledGraph, table) -> dict:
    return {
        "betti": table.rows(),
        "bracket": kauffman_bracket(g).to_json(),
        "jones": jones(g).to_json(),
        "writhe": writhe(g),
        "graph_knot": is_graph_knot(g),
    }


def cmd_kh(args) -> int:
    g = _load(args.file)
    c = build_complex(g)
    if args.dump_complex:
        Path(args.dump_complex).write_text(json.dumps(c.to_json(), sort_keys=True) + "\n", encoding="utf-8")
    table = betti_table(c)
    if args.normalized:
        if not is_graph_knot(g):
            print("warning: normalized gradings are invariant only for graph-knots", file=sys.stderr)
        table = normalized_table(g, table, args.normalized)
    if args.json:
        _emit_json(invariants_json(g, table))
        return EXIT_OK
    grading = args.normalized or "raw (M0, Q0)"
    print(f"n = {g.n}, writhe = {writhe(g)}, graph-knot = {'yes' if is_graph_knot(g) else 'no'}")
    print(f"grading: {grading}, total dimension = {table.total}")
    print(table.format())
    return EXIT_OK


def cmd_bracket(args) -> int:
    g = _load(args.file)
    p = kauffman_bracket(g)
    if args.json:
        _emit_json(p.to_json())
    else:
        print(p)
    return EXIT_OK


def cmd_jones(args) -> int:
    g = _load(args.file)
    if not is_graph_knot(g):
        print("warning: not a graph-knot; the result is not an invariant", file=sys.stderr)
    p = jones(g)
    if args.json:
        _emit_json(p.to_json())
    else:
        print(p)
    return EXIT_OK


def cmd_writhe(args) -> int:
    print(writhe(_load(args.file)))
    return EXIT_OK


def cmd_isknot(args) -> int:
    print("yes" if is_graph_knot(_load(args.file)) else "no")
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _load(args.file)
    c = build_complex(g)
    d2 = verify_d_squared(c)
    a = adjacency_matrix(g)
    dims = all(sp.dim == corank(principal_submatrix(a, members(sp.state))) for sp in c.spaces)
    report = euler_identity_check(g, betti_table(c, check=False))
    result = {
        "d_squared_zero": d2,
        "dim_equals_corank": dims,
        "euler_plus_n": report.holds_plus_n,
        "euler_minus_n": report.holds_minus_n,
        "graded_euler": str(report.euler),
        "bracket_plus_n": str(report.plus_n),
        "bracket_minus_n": str(report.minus_n),
    }
    ok = d2 and dims and report.holds_plus_n
    if args.json:
        _emit_json(result)
    else:
        for key, value in result.items():
            print(f"{key}: {value}")
        if not report.holds_minus_n:
            print("note: the a^-n normalization of the Euler identity does not hold for this graph")
    return EXIT_OK if ok else EXIT_PROPERTY


def cmd_check(args) -> int:
    g = _load(args.file)
    report = check_invariance(g, args.moves, args.seed, args.max_vertices)
    if args.json:
        _emit_json(report.to_json())
    else:
        print(f"seed {report.seed}: {len(report.moves)} moves, {'PASS' if report.passed else 'FAIL'}")
        for label, entry in report.shift_summary().items():
            line = f"  {label:16s} x{entry['count']:<3d} shift {entry['measured']} expected {entry['expected']}"
            if "printed" in entry and entry["printed"] != entry["expected"]:
                line += f" (table prints {entry['printed']})"
            print(line)
        v = report.omega3_verbal
        if v["preserved"] or v["changed"]:
            print(f"  omega3 verbal semantics: preserved {v['preserved']}, changed {v['changed']}")
        for f in report.failures:
            print(f"FAIL {f}", file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_PROPERTY


def cmd_random(args) -> int:
    _write(serialize(random_graph(args.n, args.seed)), args.output)
    return EXIT_OK


def cmd_moves(args) -> int:
    for m in enumerate_moves(_load(args.file)):
        print(m.format())
    return EXIT_OK


def cmd_apply(args) -> int:
    g = _load(args.file)
    try:
        spec = MoveSpec.parse(args.move)
    except ValueError as exc:
        raise GraphFileError(f"bad move {args.move!r}: {exc}") from None
    _write(serialize(apply_move(g, spec)), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="graphkh", description="Khovanov homology and Jones polynomial of graph-links")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    kh = sub.add_parser("kh", help="bigraded Khovanov homology over GF(2)")
    kh.add_argument("file")
    kh.add_argument("--normalized", choices=CONVENTIONS)
    kh.add_argument("--json", action="store_true")
    kh.add_argument("--dump-complex", metavar="PATH")
    kh.set_defaults(func=cmd_kh)

    for name, func, helptext in (
        ("bracket", cmd_bracket, "Kauffman bracket"),
        ("jones", cmd_jones, "Jones polynomial"),
    ):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("file")
        sp.add_argument("--json", action="store_true")
        sp.set_defaults(func=func)

    for name, func, helptext in (
        ("writhe", cmd_writhe, "writhe number"),
        ("isknot", cmd_isknot, "whether the graph is a graph-knot"),
        ("moves", cmd_moves, "list applicable moves"),
    ):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("file")
        sp.set_defaults(func=func)

    v = sub.add_parser("verify", help="check d^2 = 0, dimensions and the Euler identity")
    v.add_argument("file")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("check", help="random move sequence with invariance checks")
    c.add_argument("file")
    c.add_argument("--moves", type=int, default=20)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--max-vertices", type=int, default=9)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_check)

    r = sub.add_parser("random", help="write a random labeled graph")
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("-o", "--output")
    r.set_defaults(func=cmd_random)

    a = sub.add_parser("apply", help="apply a move, e.g. omega4:1,2 or omega1-add:+")
    a.add_argument("file")
    a.add_argument("--move", required=True)
    a.add_argument("-o", "--output")
    a.set_defaults(func=cmd_apply)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphFileError, MoveNotApplicable, CapacityError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
