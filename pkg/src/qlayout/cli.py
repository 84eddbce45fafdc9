"""Command-line front end.

Exit codes: 0 success, 1 negative answer (no layout / violation found),
2 input error, 3 internal self-check failure, 4 capacity limit hit.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .errors import CapacityError, GraphError, InternalError, LayoutError, ParseError, QLayoutError
from .graph import Graph, connected_components, graph_to_json, induced_subgraph, parse_graph
from .layout import LinearLayout, layout_from_json, layout_to_dict, layout_to_json, layout_to_svg, validate_layout
from .oracle import ORACLE_CAP, oracle_is_1queue, oracle_queue_number
from .params import min_vertex_cover, treedepth
from .td.kernel import BRUTE_FORCE_CAP, decide_1queue_td, kernelize_1queue
from .td.thresholds import Thresholds
from .vc import build_vc_kernel, queue_number_vc

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_INTERNAL, EXIT_CAPACITY = 0, 1, 2, 3, 4

log = logging.getLogger("qlayout")


class _Exit(Exception):
    def __init__(self, code, message=""):
        self.code = code
        self.message = message


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise _Exit(EXIT_INPUT, f"cannot read {path}: {exc.strerror}") from exc


def _load_graph(path: str) -> Graph:
    return parse_graph(_read(path))


def _components(g: Graph) -> list[tuple[Graph, tuple[int, ...]]]:
    return [induced_subgraph(g, comp) for comp in connected_components(g)]


def _merge(parts: list[LinearLayout]) -> LinearLayout:
    order: list[int] = []
    sigma = {}
    for p in parts:
        order.extend(p.order)
        sigma.update(p.sigma)
    return LinearLayout(tuple(order), sigma, max((p.num_queues for p in parts), default=0))


def _self_check(g: Graph, layout: LinearLayout, h: int | None = None):
    try:
        bad = validate_layout(g, layout)
    except LayoutError as exc:
        raise _Exit(EXIT_INTERNAL, f"self-check failed: {exc}") from exc
    if bad is not None:
        raise _Exit(EXIT_INTERNAL, f"self-check failed: queue {bad.queue} has nesting edges {bad.outer} {bad.inner}")
    if h is not None and layout.num_queues > h:
        raise _Exit(EXIT_INTERNAL, f"self-check failed: layout uses {layout.num_queues} queues, expected {h}")


def _emit_layout(args, g: Graph, layout: LinearLayout):
    if not args.output:
        return
    out = Path(args.output)
    if args.format == "svg" or out.suffix == ".svg":
        out.write_text(layout_to_svg(g, layout))
    else:
        out.write_text(layout_to_json(g, layout) + "\n")


def _print_json(doc):
    print(json.dumps(doc, indent=2))


# -- commands ------------------------------------------------------------------


def cmd_qn(args) -> int:
    g = _load_graph(args.input)
    parts = []
    h = 0
    for sub, kept in _components(g):
        res = queue_number_vc(sub)
        h = max(h, res.h)
        parts.append(res.layout.relabel(kept))
    layout = _merge(parts)
    _self_check(g, layout, h)
    layout = LinearLayout(layout.order, layout.sigma, h)
    if args.format == "json":
        _print_json({"queue_number": h, "layout": layout_to_dict(g, layout)})
    elif args.format == "svg" and not args.output:
        sys.stdout.write(layout_to_svg(g, layout))
    else:
        print(h)
    _emit_layout(args, g, layout)
    return EXIT_OK


def cmd_check(args) -> int:
    g = _load_graph(args.input)
    try:
        layout = layout_from_json(g, _read(args.layout))
        bad = validate_layout(g, layout)
    except (LayoutError, GraphError) as exc:
        raise _Exit(EXIT_INPUT, f"layout does not match the graph: {exc}") from exc
    if bad is None:
        print("ok")
        return EXIT_OK
    lab = g.labels
    print(
        f"violation: queue {bad.queue}: "
        f"({lab[bad.outer[0]]}, {lab[bad.outer[1]]}) nests ({lab[bad.inner[0]]}, {lab[bad.inner[1]]})"
    )
    return EXIT_NO


def _thresholds(args) -> Thresholds:
    try:
        return Thresholds.parse(args.thresholds)
    except ValueError as exc:
        raise _Exit(EXIT_INPUT, str(exc)) from exc


def _td_parts(args, g: Graph):
    comps = _components(g)
    if len(comps) > 1 and not args.per_component:
        raise _Exit(EXIT_INPUT, "input graph is disconnected; pass --per-component to solve components separately")
    return comps


def cmd_td1(args) -> int:
    g = _load_graph(args.input)
    thresholds = _thresholds(args)
    answer = True
    parts = []
    kernel_size = 0
    removal_log = []
    for sub, kept in _td_parts(args, g):
        decision = decide_1queue_td(sub, thresholds, brute_force_cap=args.brute_force_cap)
        kernel_size += decision.kernel.graph.n
        removal_log.extend(decision.kernel.log_dicts(sub))
        if not decision.answer:
            answer = False
            break
        parts.append(decision.layout.relabel(kept))
    layout = None
    if answer:
        layout = _merge(parts)
        _self_check(g, layout, 1)
    if args.format == "json":
        doc = {"answer": "yes" if answer else "no", "kernel_size": kernel_size, "removal_log": removal_log}
        if layout is not None:
            doc["layout"] = layout_to_dict(g, layout)
        _print_json(doc)
    else:
        print("yes" if answer else "no")
        print(f"kernel size: {kernel_size}")
        print(f"removed components: {len(removal_log)}")
        for rec in removal_log:
            print(f"  anchor {rec['anchor']} level {rec['depth']} class {rec['class_size']}: removed {rec['removed']}")
        if layout is not None:
            print("layout: " + layout_to_json(g, layout))
    if layout is not None:
        _emit_layout(args, g, layout)
    return EXIT_OK if answer else EXIT_NO


def cmd_kernel_td(args) -> int:
    g = _load_graph(args.input)
    thresholds = _thresholds(args)
    out = []
    for sub, kept in _td_parts(args, g):
        td = treedepth(sub, sub.n)
        kernel = kernelize_1queue(sub, thresholds, td)
        out.append(
            {
                "treedepth": td.height,
                "kernel": json.loads(graph_to_json(kernel.graph)),
                "removal_log": kernel.log_dicts(sub),
            }
        )
    _print_json(out[0] if len(out) == 1 else out)
    return EXIT_OK


def cmd_kernel_vc(args) -> int:
    g = _load_graph(args.input)
    if args.h is None or args.h < 1:
        raise _Exit(EXIT_INPUT, "kernel-vc needs --h >= 1")
    cover = min_vertex_cover(g)
    kernel = build_vc_kernel(g, cover, args.h)
    _print_json(
        {
            "cover": [g.labels[v] for v in cover.cover],
            "bound": kernel.bound,
            "kernel": json.loads(graph_to_json(kernel.graph)),
            "trim_log": [r.to_dict(g) for r in kernel.log],
        }
    )
    return EXIT_OK


def cmd_oracle(args) -> int:
    g = _load_graph(args.input)
    cap = args.oracle_cap
    if args.h is not None:
        if args.h != 1:
            raise _Exit(EXIT_INPUT, "the oracle decision mode supports --h 1 only; omit --h for the queue number")
        ok, witness = oracle_is_1queue(g, cap=cap)
        if ok:
            _self_check(g, witness, 1)
        if args.format == "json":
            doc = {"one_queue": ok}
            if ok:
                doc["layout"] = layout_to_dict(g, witness)
            _print_json(doc)
        else:
            print("yes" if ok else "no")
        if ok:
            _emit_layout(args, g, witness)
        return EXIT_OK if ok else EXIT_NO
    res = oracle_queue_number(g, cap=cap)
    _self_check(g, res.witness, res.queue_number)
    if args.format == "json":
        _print_json(
            {
                "queue_number": res.queue_number,
                "orders_examined": res.orders_examined,
                "layout": layout_to_dict(g, res.witness),
            }
        )
    else:
        print(res.queue_number)
    _emit_layout(args, g, res.witness)
    return EXIT_OK


def cmd_render(args) -> int:
    g = _load_graph(args.input)
    try:
        layout = layout_from_json(g, _read(args.layout))
        validate_layout(g, layout)
    except (LayoutError, GraphError) as exc:
        raise _Exit(EXIT_INPUT, f"layout does not match the graph: {exc}") from exc
    svg = layout_to_svg(g, layout)
    if args.output:
        Path(args.output).write_text(svg)
    else:
        sys.stdout.write(svg)
    return EXIT_OK


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qlayout", description="Exact queue layouts of small-parameter graphs.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, output=True):
        p.add_argument("input", help="graph file (edge list or JSON), '-' for stdin")
        p.add_argument("--format", choices=("text", "json", "svg"), default="text")
        p.add_argument("--seed", type=int, default=0, help="accepted for harness compatibility; all searches are deterministic")
        if output:
            p.add_argument("-o", "--output", help="write the layout here (JSON, or SVG for *.svg / --format svg)")

    def td_flags(p):
        p.add_argument("--thresholds", default="paper", help="'paper' or 'synthetic:<c2>,<c3>,...'")
        p.add_argument("--per-component", action="store_true", help="solve each connected component separately")

    p = sub.add_parser("qn", help="queue number via the vertex-cover kernel")
    common(p)
    p.set_defaults(func=cmd_qn)

    p = sub.add_parser("check", help="validate a layout file against a graph")
    common(p, output=False)
    p.add_argument("layout", help="layout JSON file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("td1", help="decide queue number one via treedepth pruning")
    common(p)
    td_flags(p)
    p.add_argument("--brute-force-cap", type=int, default=BRUTE_FORCE_CAP)
    p.set_defaults(func=cmd_td1)

    p = sub.add_parser("kernel-td", help="print the treedepth kernel and removal log")
    common(p, output=False)
    td_flags(p)
    p.set_defaults(func=cmd_kernel_td)

    p = sub.add_parser("kernel-vc", help="print the vertex-cover kernel for a given h")
    common(p, output=False)
    p.add_argument("--h", type=int, required=True)
    p.set_defaults(func=cmd_kernel_vc)

    p = sub.add_parser("oracle", help="brute-force queue number (small graphs only)")
    common(p)
    p.add_argument("--h", type=int, help="decide h=1 instead of computing the queue number")
    p.add_argument("--oracle-cap", type=int, default=ORACLE_CAP)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("render", help="draw a layout as an SVG arc diagram")
    p.add_argument("input")
    p.add_argument("layout")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except _Exit as exc:
        if exc.message:
            print(f"qlayout: {exc.message}", file=sys.stderr)
        return exc.code
    except (ParseError, GraphError, LayoutError) as exc:
        print(f"qlayout: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapacityError as exc:
        print(f"qlayout: capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (InternalError, QLayoutError, AssertionError) as exc:
        print(f"qlayout: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
