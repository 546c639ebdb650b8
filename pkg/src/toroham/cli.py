"""Command-line front end.

Exit codes: 0 success, 1 a verified property failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import ham_builder as hb
from . import oracle
from . import sweep as sweeps
from .docs import CycleDoc, DocumentError, InstanceDoc, dumps, load
from .export import FORMATS, render
from .torus_quad import Color, DiagonalSpec, Face, TorusParams, build, diagonal_endpoints, edge_key

OK, PROPERTY_FAILURE, USAGE_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _face(text: str) -> Face:
    try:
        c, r = (int(x) for x in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad face {text!r}; expected C,R") from exc
    return Face(c, r)


def _vertex(text: str) -> tuple[int, int]:
    try:
        i, j = (int(x) for x in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad vertex {text!r}; expected I,J") from exc
    return (i, j)


def _edge(text: str) -> tuple:
    parts = text.replace("-", ":").split(":")
    if len(parts) != 2:
        raise UsageError(f"bad edge {text!r}; expected I,J:K,L")
    return edge_key(_vertex(parts[0]), _vertex(parts[1]))


def _params(m, n, q) -> TorusParams:
    if m is None or n is None or q is None:
        raise UsageError("need m, n and q (positionally or via --m --n --q)")
    try:
        return TorusParams(int(m), int(n), int(q))
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc


def _extra_diagonals(args) -> list[DiagonalSpec]:
    faces = args.face or []
    colors = args.color or []
    if len(colors) > len(faces):
        raise UsageError("more --color flags than --face flags")
    default = [Color.BLACK, Color.WHITE]
    out = []
    for k, f in enumerate(faces):
        color = Color(colors[k]) if k < len(colors) else default[min(k, 1)]
        out.append(DiagonalSpec(_face(f), color))
    return out


def _instance(args) -> InstanceDoc:
    """Instance from a file argument or from --m --n --q, plus any --face diagonals."""
    extra = _extra_diagonals(args)
    if getattr(args, "instance", None):
        doc = load(args.instance)
        base = doc.instance if isinstance(doc, CycleDoc) else doc
    else:
        base = InstanceDoc(_params(args.m, args.n, args.q))
    try:
        return InstanceDoc(base.params, base.diagonals + tuple(extra), base.named_edges)
    except (ValueError, RuntimeError) as exc:
        raise UsageError(str(exc)) from exc


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def classify(params: TorusParams) -> str:
    if not params.simple:
        return "non-simple"
    parts = ["simple", "bipartite" if params.bipartite else "non-bipartite"]
    parts.append(f"k={oracle.vertex_connectivity(build(params))}")
    return " ".join(parts)


def cmd_gen(args) -> int:
    params = _params(args.m if args.m is not None else args.pm, args.n if args.n is not None else args.pn,
                     args.q if args.q is not None else args.pq)
    label = classify(params)
    print(f"{params}: {label}", file=sys.stderr if args.out is None else sys.stdout)
    if label == "non-simple":
        print(f"warning: {params} has loops or parallel edges", file=sys.stderr)
    _emit(dumps(InstanceDoc(params)), args.out)
    return OK


def cmd_ham(args) -> int:
    inst = _instance(args)
    black, white = inst.black(), inst.white()
    if len(black) != 1 or len(white) != 1:
        raise UsageError("ham needs exactly one black and one white diagonal")
    params = inst.params
    if not (params.simple and params.bipartite):
        raise UsageError(f"{params} must be simple and bipartite")
    try:
        cyc = hb.ham_through_two_diagonals(params, black[0], white[0])
    except hb.ConstructionError as exc:
        print(f"construction failed: {exc}", file=sys.stderr)
        return PROPERTY_FAILURE
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    required = (diagonal_endpoints(params, black[0]), diagonal_endpoints(params, white[0]))
    doc = CycleDoc(inst, cyc.vertices, required)
    _emit(dumps(doc), args.out)
    return OK if doc.status.ok else PROPERTY_FAILURE


def cmd_cover(args) -> int:
    inst = _instance(args)
    black, white = inst.black(), inst.white()
    if not black:
        raise UsageError("cover needs a nonempty set of black diagonals")
    if len(white) != 1:
        raise UsageError("cover needs exactly one white diagonal")
    try:
        cover = hb.edge_ham_cover(inst.params, black, white[0])
    except hb.ConstructionError as exc:
        print(f"construction failed: {exc}", file=sys.stderr)
        return PROPERTY_FAILURE
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    g = inst.graph()
    kinds = {e.key: e.kind for e in g.edges}
    failed = 0
    for e in sorted(g.edge_set):
        ok = e in cover and oracle.verify_cycle(g, cover[e].vertices, [e]).ok
        failed += not ok
        print(f"{e[0][0]},{e[0][1]}:{e[1][0]},{e[1][1]}\t{kinds[e].value}\t{'ok' if ok else 'FAIL'}")
    print(f"covered {len(g.edge_set) - failed}/{len(g.edge_set)} edges", file=sys.stderr)
    return OK if failed == 0 else PROPERTY_FAILURE


def cmd_oracle(args) -> int:
    inst = _instance(args)
    g = inst.graph()
    if args.through:
        targets = [_edge(t) for t in args.through]
    else:
        targets = [diagonal_endpoints(inst.params, d) for d in inst.diagonals] or [None]
    cert = None
    if inst.params.bipartite:
        cert = oracle.exclusion_certificate(g)
    status = OK
    for t in targets:
        try:
            count = oracle.enumerate_ham_cycles(g, through=t, budget=args.budget).count
        except oracle.BudgetExceeded as exc:
            raise UsageError(str(exc)) from exc
        label = "all" if t is None else f"{t[0][0]},{t[0][1]}:{t[1][0]},{t[1][1]}"
        print(f"{label}\t{count}")
        if t is not None and cert is not None and cert.valid and count > 0:
            if all(cert.coloring.get(v) is Color.BLACK for v in t):
                print(f"contradiction: certificate excludes {label}", file=sys.stderr)
                status = PROPERTY_FAILURE
    return status


def cmd_sweep(args) -> int:
    report = sweeps.run(args.mode, args.max_vertices, dedup=not args.no_dedup)
    text = json.dumps(report.to_json(), indent=2) + "\n"
    _emit(text, args.out)
    return OK if report.ok else PROPERTY_FAILURE


def cmd_export(args) -> int:
    doc = load(args.document)
    if args.format not in FORMATS:
        raise UsageError(f"unknown format {args.format!r}")
    _emit(render(doc, args.format), args.out)
    return OK


def _instance_flags(p: argparse.ArgumentParser, positional: bool = True) -> None:
    if positional:
        p.add_argument("instance", nargs="?", help="instance or cycle JSON file")
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--face", action="append", metavar="C,R", help="add a diagonal on this face (repeatable)")
    p.add_argument("--color", action="append", choices=[c.value for c in Color],
                   help="color of the matching --face (default: black, then white)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toroham", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write an instance file and print its classification")
    p.add_argument("pm", nargs="?", type=int, metavar="M")
    p.add_argument("pn", nargs="?", type=int, metavar="N")
    p.add_argument("pq", nargs="?", type=int, metavar="Q")
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("ham", help="hamilton cycle through one black and one white diagonal")
    _instance_flags(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_ham)

    p = sub.add_parser("cover", help="a verified hamilton cycle through every edge")
    _instance_flags(p)
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("oracle", help="exact hamilton cycle counts")
    _instance_flags(p)
    p.add_argument("--through", action="append", metavar="I,J:K,L")
    p.add_argument("--budget", type=int, help="vertex budget (default from TOROHAM_BUDGET or 24)")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("sweep", help="exhaustive acceptance sweeps")
    p.add_argument("max_vertices", type=int)
    p.add_argument("mode", choices=sweeps.MODES)
    p.add_argument("--no-dedup", action="store_true", help="check every placement, not one per symmetry class")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("export", help="render an instance or cycle file")
    p.add_argument("document")
    p.add_argument("--format", default="json", help="dot, svg or json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code else OK
    try:
        return args.func(args)
    except (UsageError, DocumentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
