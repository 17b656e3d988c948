"""Command line front end.

A thin client over the same ops layer the HTTP gateway uses, so a report
written with --output is byte-identical with the HTTP response body for
the same graph and request.

Exit codes: 0 success, 1 rejected input (arguments, graph document,
request values), 2 unexpected runtime failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from ..fixtures import fixture_names, load_fixture
from ..generator import GenerationRecipe, build_plants
from ..model import (GraphParseError, GraphValidationError, PlantGraph,
                     load_graph_file, save_graph)
from . import ops
from .schemas import (GAParamsModel, OptimizeRequest, ServiceRequest,
                      SimulateRequest, WeightsModel)

_STATE_NAMES = ("initial", "all-true", "all-false")


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad usage; the contract here is 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _load_graph_arg(spec: str) -> PlantGraph:
    """Accept a file path or a bundled fixture reference like fixture:L."""
    if spec.startswith("fixture:"):
        return load_fixture(spec.split(":", 1)[1])
    return load_graph_file(spec)


def _split_csv(values) -> list[str]:
    out: list[str] = []
    for chunk in values or ():
        out.extend(part for part in (s.strip() for s in chunk.split(",")) if part)
    return out


def _parse_bool(text: str) -> bool:
    low = text.lower()
    if low in ("true", "1", "on"):
        return True
    if low in ("false", "0", "off"):
        return False
    raise ValueError(f"bad boolean {text!r}; expected true or false")


def _parse_switches(values) -> dict[str, bool]:
    out: dict[str, bool] = {}
    for item in _split_csv(values):
        name, sep, raw = item.partition("=")
        name = name.strip()
        if not sep or not name:
            raise ValueError(
                f"bad switch assignment {item!r}; expected NAME=true|false")
        out[name] = _parse_bool(raw.strip())
    return out


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        print(text)


def _weights_model(args) -> WeightsModel:
    return WeightsModel(w1=args.w1, w2=args.w2, w3=args.w3)


def _cmd_validate(args) -> int:
    graph = _load_graph_arg(args.graph)
    print(f"ok: {len(graph.nodes)} nodes, {len(graph.edges)} edges, "
          f"{len(graph.switch_ids)} switches")
    print(f"fingerprint: {graph.fingerprint()}")
    return 0


def _cmd_measures(args) -> int:
    graph = _load_graph_arg(args.graph)
    _emit(json.dumps(ops.measures_payload(graph), indent=2), args.output)
    return 0


def _cmd_service(args) -> int:
    graph = _load_graph_arg(args.graph)
    request = ServiceRequest(base_state=args.state,
                             switches=_parse_switches(args.switch))
    _emit(json.dumps(ops.service_payload(graph, request), indent=2), args.output)
    return 0


def _cmd_simulate(args) -> int:
    graph = _load_graph_arg(args.graph)
    request = SimulateRequest(perturb=_split_csv(args.perturb),
                              base_state=args.state,
                              switches=_parse_switches(args.switch),
                              weights=_weights_model(args))
    report = ops.simulate_report(graph, request)
    _emit(ops.render_report_json(report), args.output)
    return 0


def _cmd_optimize(args) -> int:
    graph = _load_graph_arg(args.graph)
    params = GAParamsModel(npop=args.npop, ngen=args.ngen, indpb=args.indpb,
                           tresh=args.tresh, nsel=args.nsel, seed=args.seed,
                           elitism=not args.no_elitism)
    request = OptimizeRequest(perturb=_split_csv(args.perturb), mode=args.mode,
                              weights=_weights_model(args), params=params,
                              cap=args.cap)

    on_generation = None
    if args.progress and args.mode == "genetic":
        def on_generation(gen, best, _total=params.ngen):
            if gen % 10 == 0 or gen == _total:
                print(f"generation {gen}/{_total} best {best.fitness:g}",
                      file=sys.stderr)

    report = ops.optimize_report(graph, request, on_generation=on_generation)
    _emit(ops.render_report_json(report), args.output)
    return 0


def _cmd_generate(args) -> int:
    inline_used = (args.n is not None or args.seed is not None
                   or args.p is not None or args.switch_pct
                   or args.or_fraction is not None)
    if args.recipe:
        if inline_used:
            raise ValueError("--recipe replaces the inline generation flags")
        recipe = GenerationRecipe.from_dict(
            json.loads(Path(args.recipe).read_text(encoding="utf-8")))
    else:
        if args.n is None or args.seed is None:
            raise ValueError("--n and --seed are required without --recipe")
        recipe = GenerationRecipe(
            n=args.n, seed=args.seed, p=args.p,
            switch_percentages=tuple(args.switch_pct or ()),
            or_fraction=args.or_fraction if args.or_fraction is not None else 0.0)

    plants = build_plants(recipe)
    base, variants = plants[0], plants[1:]

    if args.output_dir:
        outdir = Path(args.output_dir)
        outdir.mkdir(parents=True, exist_ok=True)
        paths = [outdir / "base.json"]
        paths[0].write_text(save_graph(base), encoding="utf-8")
        for pct, plant in zip(recipe.switch_percentages, variants):
            path = outdir / f"switched-{pct * 100:g}pct.json"
            path.write_text(save_graph(plant), encoding="utf-8")
            paths.append(path)
        for path in paths:
            print(path)
        return 0

    if variants:
        raise ValueError("switched variants need --output-dir")
    if args.output:
        Path(args.output).write_text(save_graph(base), encoding="utf-8")
        print(args.output)
    else:
        print(save_graph(base), end="")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .app import create_app

    port = args.port
    if port is None:
        port = int(os.environ.get("PLANTSIM_PORT", "8000"))
    uvicorn.run(create_app(args.data_dir), host=args.host, port=port)
    return 0


def _add_graph_arg(parser) -> None:
    parser.add_argument("--graph", required=True,
                        help="graph JSON file, or fixture:NAME "
                             f"(bundled: {', '.join(fixture_names())})")


def _add_output_arg(parser) -> None:
    parser.add_argument("--output", help="write the result here instead of stdout")


def _add_state_args(parser) -> None:
    parser.add_argument("--state", choices=_STATE_NAMES, default="initial",
                        help="base switch state before overrides")
    parser.add_argument("--switch", action="append", metavar="NAME=BOOL",
                        help="switch override, repeatable or comma separated")


def _add_weight_args(parser) -> None:
    parser.add_argument("--w1", type=float, default=1.0,
                        help="weight on switch actions")
    parser.add_argument("--w2", type=float, default=1.0,
                        help="weight on total residual service")
    parser.add_argument("--w3", type=float, default=1.0,
                        help="weight on surviving node count")


def _add_perturb_arg(parser) -> None:
    parser.add_argument("--perturb", action="append", required=True,
                        metavar="NODES",
                        help="node ids to fault, repeatable or comma separated")


def build_parser() -> _Parser:
    parser = _Parser(prog="plantsim",
                     description="fault propagation and switch "
                                 "reconfiguration for plant graphs")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse and check a graph document")
    _add_graph_arg(p)
    p.set_defaults(handler=_cmd_validate)

    p = sub.add_parser("measures", help="baseline topology measures and service")
    _add_graph_arg(p)
    _add_output_arg(p)
    p.set_defaults(handler=_cmd_measures)

    p = sub.add_parser("service", help="residual service under a switch state")
    _add_graph_arg(p)
    _add_state_args(p)
    _add_output_arg(p)
    p.set_defaults(handler=_cmd_service)

    p = sub.add_parser("simulate", help="propagate faults under a fixed state")
    _add_graph_arg(p)
    _add_perturb_arg(p)
    _add_state_args(p)
    _add_weight_args(p)
    _add_output_arg(p)
    p.set_defaults(handler=_cmd_simulate)

    p = sub.add_parser("optimize", help="search for the best switch state")
    _add_graph_arg(p)
    _add_perturb_arg(p)
    _add_weight_args(p)
    p.add_argument("--mode", choices=("genetic", "exhaustive"),
                   default="genetic")
    p.add_argument("--seed", type=int, default=0, help="search RNG seed")
    p.add_argument("--npop", type=int, default=400, help="population size")
    p.add_argument("--ngen", type=int, default=200, help="generations")
    p.add_argument("--indpb", type=float, default=0.7,
                   help="per-gene mutation probability")
    p.add_argument("--tresh", type=float, default=0.4,
                   help="crossover-vs-mutation threshold")
    p.add_argument("--nsel", type=int, default=100, help="parents kept per generation")
    p.add_argument("--no-elitism", action="store_true",
                   help="replace parents instead of keeping them")
    p.add_argument("--cap", type=int, default=20,
                   help="max switch count for exhaustive mode")
    p.add_argument("--progress", action="store_true",
                   help="print generation progress to stderr")
    _add_output_arg(p)
    p.set_defaults(handler=_cmd_optimize)

    p = sub.add_parser("generate", help="build seeded random plants")
    p.add_argument("--n", type=int, help="node count")
    p.add_argument("--p", type=float, help="edge probability (default 1/n)")
    p.add_argument("--seed", type=int, help="generation RNG seed")
    p.add_argument("--switch-pct", type=float, action="append",
                   help="hub fraction to promote, repeatable, ascending")
    p.add_argument("--or-fraction", type=float,
                   help="fraction of AND edges converted to OR")
    p.add_argument("--recipe", help="JSON recipe file instead of inline flags")
    p.add_argument("--output", help="write a single graph here")
    p.add_argument("--output-dir", help="write base and variants here")
    p.set_defaults(handler=_cmd_generate)

    p = sub.add_parser("serve", help="run the HTTP gateway")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=None,
                   help="default: PLANTSIM_PORT or 8000")
    p.add_argument("--data-dir", default=None,
                   help="default: PLANTSIM_DATA_DIR or ./plantsim-data")
    p.set_defaults(handler=_cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (GraphParseError, GraphValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except KeyError as exc:
        detail = exc.args[0] if exc.args else exc
        print(f"error: {detail}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except KeyboardInterrupt:
        return 2
    except Exception as exc:  # anything else is a bug, not bad input
        print(f"runtime error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
