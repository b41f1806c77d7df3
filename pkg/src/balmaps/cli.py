"""Command line interface.

Exit codes: 0 for success / positive verdicts, 1 for negative mathematical
verdicts, 2 for malformed input.  Results are printed as JSON on stdout,
diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from . import balance, corpus, decompose, dps, hurwitz, mapio, maps, realize
from .errors import MapError


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _load_map(path: str):
    obj = mapio.map_from_json(_read(path))
    return obj


def _load_colored(path: str) -> maps.ColoredMap:
    obj = _load_map(path)
    if isinstance(obj, maps.ColoredMap):
        return obj
    return maps.checkerboard(obj)[0]


def _emit(data) -> None:
    sys.stdout.write(mapio.dumps(data))


def cmd_validate(args) -> int:
    obj = _load_map(args.map)
    m = obj.m if isinstance(obj, maps.ColoredMap) else obj
    _emit({"valid": True, "vertices": m.num_vertices, "edges": m.num_edges,
           "faces": m.num_faces, "four_valent": m.is_four_valent()})
    return 0


def cmd_balance(args) -> int:
    cm = _load_colored(args.map)
    report = balance.is_balanced(cm, oracle=args.oracle)
    out = report.to_dict()
    if not args.witness:
        out.pop("witness", None)
    _emit(out)
    return 0 if report.balanced else 1


def cmd_realize(args) -> int:
    cm = _load_colored(args.map)
    try:
        em, lab = realize.realize_generic(cm)
    except MapError as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)})
        return 1
    t = realize.monodromy(em, lab)
    _emit({
        "labels": {str(v): l for v, l in sorted(lab.critical(em).items())},
        "inserted": {str(e): c for e, c in sorted(em.counts.items())},
        "tuple": mapio.tuple_to_dict(t),
    })
    return 0


def cmd_from_tuple(args) -> int:
    t = mapio.tuple_from_dict(json.loads(_read(args.tuple)))
    real = realize.graph_from_monodromy(t)
    _emit(mapio.map_to_dict(real.colored))
    return 0


def cmd_hurwitz(args) -> int:
    if args.action == "count":
        _emit({"d": args.d, "count": hurwitz.hurwitz_count(args.d)})
        return 0
    if args.action == "enumerate":
        classes = hurwitz.enumerate_classes(args.d)
        data = {"d": args.d, "count": len(classes),
                "classes": [[list(p) for p in c.representative.taus]
                            for c in classes]}
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(mapio.dumps(data))
            _emit({"d": args.d, "count": len(classes), "out": args.out})
        else:
            _emit(data)
        return 0
    return cmd_census(args)


def cmd_census(args) -> int:
    entries = hurwitz.census(args.d)
    _emit({
        "d": args.d,
        "underlying_graphs": len(entries),
        "total_covers": sum(e.class_count for e in entries),
        "entries": [e.to_dict() for e in entries],
        "notes": (
            "Counts are per underlying diagram up to orientation-preserving "
            "isomorphism.  The classical hand-catalog of the degree-4 case "
            "groups the same covers as 36+60+6+6+12 across 17 plane "
            "drawings; drawings repeat sphere diagrams (the octahedron "
            "appears twice), so the drawing-level counts 17 and 6/12/2/6/6 "
            "do not match the isomorphism-class census, and one stated "
            "per-drawing count ('three', against that group's own total "
            "of 36) is internally inconsistent."),
    })
    return 0


def cmd_dps(args) -> int:
    if args.action == "encode":
        g = mapio.dual_from_dict(json.loads(_read(args.input)))
        t = dps.graph_to_tree(g)
        _emit(mapio.tree_to_dict(t))
        return 0
    if args.action == "decode":
        t = mapio.tree_from_dict(json.loads(_read(args.input)))
        g = dps.tree_to_graph(t)
        _emit(mapio.dual_to_dict(g))
        return 0
    d = args.d
    if args.input is not None:
        try:
            d = int(args.input)
        except ValueError:
            raise MapError("dps verify takes a degree, got %r" % args.input)
    result = dps.verify_counting_chain(d)
    _emit(result)
    return 0 if result["ok"] else 1


def cmd_decompose(args) -> int:
    cm = _load_colored(args.map)
    tree = decompose.decompose_full(cm)
    data = tree.to_dict()
    leaves = [l.kind for l in tree.leaves()]
    out = {"leaves": leaves, "tree": data}
    if args.tree:
        with open(args.tree, "w") as fh:
            fh.write(mapio.dumps(data))
    _emit(out)
    return 0


def cmd_generate(args) -> int:
    if args.kind == "turkshead":
        if args.n is None:
            raise MapError("turkshead needs an index n")
        m = maps.turkshead(args.n)
    elif args.kind == "pinch":
        if not args.map or not args.darts:
            raise MapError("pinch needs --map and --darts D1 D2")
        cm = _load_colored(args.map)
        m = maps.pinch(cm, args.darts[0], args.darts[1])
    else:
        m = maps.generate(args.kind)
    if isinstance(m, maps.ColoredMap):
        _emit(mapio.map_to_dict(m))
    else:
        _emit(mapio.map_to_dict(maps.checkerboard(m)[0]))
    return 0


def cmd_corpus(args) -> int:
    c = corpus.build_corpus(args.max_vertices)
    data = {
        "max_vertices": args.max_vertices,
        "uncolored": len(c.uncolored),
        "colored": len(c.colored),
        "codes": [list(cm.colored_code()) for cm in c.colored],
    }
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(mapio.dumps(data))
        _emit({"max_vertices": args.max_vertices, "colored": len(c.colored),
               "out": args.out})
    else:
        _emit(data)
    return 0


def cmd_export_dot(args) -> int:
    obj = _load_map(args.map)
    sys.stdout.write(mapio.export_dot(obj))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="balmaps",
                                description="balanced 4-valent sphere maps toolkit")
    p.add_argument("--seed", type=int, default=None,
                   help="seed for randomized property checks")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate")
    s.add_argument("map")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("balance")
    s.add_argument("map")
    s.add_argument("--oracle", choices=["curves", "flow", "both"], default="flow")
    s.add_argument("--witness", action="store_true")
    s.set_defaults(func=cmd_balance)

    s = sub.add_parser("realize")
    s.add_argument("map")
    s.set_defaults(func=cmd_realize)

    s = sub.add_parser("from-tuple")
    s.add_argument("tuple")
    s.set_defaults(func=cmd_from_tuple)

    s = sub.add_parser("hurwitz")
    s.add_argument("action", choices=["count", "enumerate", "census"])
    s.add_argument("d", type=int)
    s.add_argument("--out")
    s.set_defaults(func=cmd_hurwitz)

    s = sub.add_parser("census")
    s.add_argument("d", type=int)
    s.set_defaults(func=cmd_census)

    s = sub.add_parser("dps")
    s.add_argument("action", choices=["encode", "decode", "verify"])
    s.add_argument("input", nargs="?")
    s.add_argument("-d", "--degree", dest="d", type=int, default=3)
    s.set_defaults(func=cmd_dps)

    s = sub.add_parser("decompose")
    s.add_argument("map")
    s.add_argument("--tree")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("generate")
    s.add_argument("kind", choices=["quadratic", "octahedron", "turkshead", "pinch"])
    s.add_argument("n", type=int, nargs="?")
    s.add_argument("--map", help="input map for pinch")
    s.add_argument("--darts", type=int, nargs=2, help="pinch darts")
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("corpus")
    s.add_argument("max_vertices", type=int, choices=[2, 4, 6])
    s.add_argument("--out")
    s.set_defaults(func=cmd_corpus)

    s = sub.add_parser("export-dot")
    s.add_argument("map")
    s.set_defaults(func=cmd_export_dot)
    return p


def run(argv: Optional[List[str]] = None) -> int:
    threads = os.environ.get("BALMAPS_THREADS")
    if threads is not None:
        try:
            if int(threads) < 1:
                raise ValueError
        except ValueError:
            sys.stderr.write("BALMAPS_THREADS must be a positive integer\n")
            return 2
        # accepted for interface compatibility; execution is sequential and
        # deterministic regardless
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except MapError as exc:
        sys.stderr.write("%s: %s\n" % (type(exc).__name__, exc))
        _emit({"error": type(exc).__name__, "message": str(exc)})
        return 2
    except FileNotFoundError as exc:
        sys.stderr.write("%s\n" % exc)
        return 2
    except json.JSONDecodeError as exc:
        sys.stderr.write("invalid JSON: %s\n" % exc)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
