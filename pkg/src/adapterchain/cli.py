"""Command-line front end.

Results go to stdout as deterministic JSON; diagnostics go to stderr.
Exit codes: 0 success, 1 input error, 2 no chain exists.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import data as bundled
from .chaining import (
    ChainSearchResult,
    InvocationWeights,
    brute_force_optimal,
    evaluate_chain,
    greedy_chain,
    greedy_chain_multi_source,
)
from .document import (
    DocumentError,
    adapter_entry,
    document_problems,
    format_json,
    graph_document,
    load_discrete_graph,
    load_graph,
)
from .graph import (
    GraphValidationError,
    InterfaceAdapterGraph,
    InvalidChainError,
    UnknownNameError,
    chain_factor,
    enumerate_acyclic_chains,
)
from .reduction import reduce_graph

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_NO_CHAIN = 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on usage errors; 2 is reserved for
    # "no chain exists" here, so route usage errors through exit code 1.
    def error(self, message):
        raise _UsageError(message)


def _fail(*problems: str) -> int:
    for problem in problems:
        print(f"error: {problem}", file=sys.stderr)
    return EXIT_INPUT_ERROR


def _parse_weights(
    spec: str, g: InterfaceAdapterGraph, target: str
) -> InvocationWeights:
    methods = g.interface(target).methods
    if not methods:
        raise ValueError(f"interface {target} has no methods to weight")
    if spec == "uniform":
        return InvocationWeights.uniform(len(methods))
    try:
        raw = json.loads(open(spec, encoding="utf-8").read())
    except OSError as exc:
        raise ValueError(f"cannot read weights file {spec}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ValueError(
            f"weights file {spec}: parse error at line {exc.lineno}, "
            f"column {exc.colno}: {exc.msg}"
        ) from None
    if not isinstance(raw, dict):
        raise ValueError("weights file must map method names to numbers")
    unknown = set(raw) - set(methods)
    if unknown:
        raise ValueError(
            f"weights name methods not in {target}: {sorted(unknown)}"
        )
    for name, value in raw.items():
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise ValueError(f"weight for {name} must be a number")
    return InvocationWeights.normalized([float(raw.get(m, 0.0)) for m in methods])


def _chain_names(arg: str) -> tuple[str, ...]:
    return tuple(name for name in arg.split(",") if name)


def _result_document(g: InterfaceAdapterGraph, result: ChainSearchResult, target: str) -> dict:
    methods = g.interface(target).methods
    return {
        "chain": list(result.chain),
        "availability": result.availability,
        "loss": result.loss,
        "per_method": {
            m: result.per_method.entries[i + 1] for i, m in enumerate(methods)
        },
    }


def _emit(obj) -> None:
    print(format_json(obj))


def _cmd_validate(args) -> int:
    try:
        text = open(args.graph, encoding="utf-8").read()
    except OSError as exc:
        return _fail(str(exc))
    problems = document_problems(text, discrete=args.discrete)
    if problems:
        return _fail(*problems)
    print("ok")
    return EXIT_OK


def _cmd_chain(args) -> int:
    g = load_graph(args.graph)
    if (args.source is None) == (args.sources is None):
        raise ValueError("exactly one of --source and --sources is required")
    weights = _parse_weights(args.weights, g, args.target)
    if args.sources is not None:
        sources = _chain_names(args.sources)
        if not sources:
            raise ValueError("--sources must name at least one interface")
        if args.exhaustive:
            best = None
            for source in sources:
                candidate = brute_force_optimal(g, source, args.target, weights)
                if candidate is None:
                    continue
                key = (candidate.loss, len(candidate.chain), candidate.chain)
                if best is None or key < (best.loss, len(best.chain), best.chain):
                    best = candidate
            result = best
        else:
            result = greedy_chain_multi_source(g, sources, args.target, weights)
    elif args.exhaustive:
        result = brute_force_optimal(g, args.source, args.target, weights)
    else:
        result = greedy_chain(g, args.source, args.target, weights)
    if result is None:
        _emit({"chain": None})
        return EXIT_NO_CHAIN
    _emit(_result_document(g, result, args.target))
    return EXIT_OK


def _cmd_loss(args) -> int:
    g = load_graph(args.graph)
    weights = _parse_weights(args.weights, g, args.target)
    result = evaluate_chain(g, _chain_names(args.chain), args.target, weights)
    _emit(_result_document(g, result, args.target))
    return EXIT_OK


def _cmd_compose(args) -> int:
    g = load_graph(args.graph)
    names = _chain_names(args.chain)
    if not names:
        raise ValueError("--chain must name at least one adapter")
    factor = chain_factor(g, names)
    source = g.interface(g.adapter(names[0]).source)
    target = g.interface(g.adapter(names[-1]).target)
    _emit(adapter_entry("+".join(names), source, target, factor))
    return EXIT_OK


def _cmd_enumerate(args) -> int:
    g = load_graph(args.graph)
    weights = _parse_weights(args.weights, g, args.target)
    documents = []
    for chain in enumerate_acyclic_chains(g, args.source, args.target):
        result = evaluate_chain(g, chain, args.target, weights)
        documents.append(
            {
                "chain": list(chain),
                "availability": result.availability,
                "loss": result.loss,
            }
        )
    _emit(documents)
    return EXIT_OK


def _cmd_reduce(args) -> int:
    dg = load_discrete_graph(args.graph)
    _emit(graph_document(reduce_graph(dg)))
    return EXIT_OK


def _cmd_data(args) -> int:
    print(bundled.path(args.dataset))
    return EXIT_OK


def _build_parser() -> _Parser:
    parser = _Parser(prog="adapterchain", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a graph document")
    p.add_argument("graph")
    p.add_argument(
        "--discrete",
        action="store_true",
        help="expect a discrete document (dependency lists without p)",
    )
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("chain", help="find the minimum-loss adapter chain")
    p.add_argument("graph")
    p.add_argument("--source", help="source interface name")
    p.add_argument("--sources", help="comma-separated candidate source interfaces")
    p.add_argument("--target", required=True)
    p.add_argument("--weights", default="uniform", help='weights file or "uniform"')
    p.add_argument(
        "--exhaustive",
        action="store_true",
        help="use the brute-force search instead of the greedy one",
    )
    p.set_defaults(func=_cmd_chain)

    p = sub.add_parser("loss", help="evaluate an explicit adapter chain")
    p.add_argument("graph")
    p.add_argument("--chain", required=True, help="comma-separated adapter names")
    p.add_argument("--target", required=True)
    p.add_argument("--weights", default="uniform")
    p.set_defaults(func=_cmd_loss)

    p = sub.add_parser("compose", help="fuse a chain into a single adapter entry")
    p.add_argument("graph")
    p.add_argument("--chain", required=True, help="comma-separated adapter names")
    p.set_defaults(func=_cmd_compose)

    p = sub.add_parser("enumerate", help="list all acyclic chains with their losses")
    p.add_argument("graph")
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--weights", default="uniform")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("reduce", help="turn a discrete document into a probabilistic one")
    p.add_argument("graph")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("data", help="print the path of a bundled dataset")
    p.add_argument("dataset", choices=sorted(bundled.DATASETS))
    p.set_defaults(func=_cmd_data)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        return _fail(str(exc))
    try:
        return args.func(args)
    except DocumentError as exc:
        return _fail(*exc.problems)
    except GraphValidationError as exc:
        return _fail(*exc.violations)
    except InvalidChainError as exc:
        return _fail(*exc.violations)
    except (UnknownNameError, ValueError, OSError) as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    raise SystemExit(main())
