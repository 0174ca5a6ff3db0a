"""JSON document format for adapter graphs.

A graph document is a single JSON object:

    {
      "interfaces": [{"name": "Video1", "methods": ["playFile"]}, ...],
      "adapters": [
        {"name": "A1", "source": "Video1", "target": "Video2",
         "methods": {"play": [{"method": "playFile", "p": 0.5}]}},
        ...
      ]
    }

Each adapter must list EVERY method of its target interface under
"methods", mapped to one of:

* the string "always": the method works regardless of the source,
* the string "never": the method cannot be provided at all,
* a list of {"method": <source method>, "p": <probability in [0, 1]>}
  dependencies.

Discrete documents use the same shape with the "p" key omitted from the
dependency entries. Methods and interfaces are referenced by name only; the
internal dummy-slot indexing never appears in files.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Sequence

from .algebra import ProbabilisticAdaptationFactor
from .graph import (
    AdapterSpec,
    InterfaceAdapterGraph,
    InterfaceSpec,
    build_graph,
    graph_violations,
)
from .reduction import (
    DiscreteAdapterGraph,
    DiscreteAdapterSpec,
    build_discrete_graph,
    discrete_graph_violations,
)
from .algebra import MethodDependencyMatrix, ConversionProbabilityMatrix


class DocumentError(ValueError):
    """A graph document cannot be parsed or violates the format."""

    def __init__(self, problems: Sequence[str]):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


_INTERFACE_KEYS = {"name", "methods"}
_ADAPTER_KEYS = {"name", "source", "target", "methods"}


def _parse_interfaces(obj: Any, problems: list[str]) -> list[InterfaceSpec]:
    interfaces: list[InterfaceSpec] = []
    raw = obj.get("interfaces")
    if not isinstance(raw, list):
        problems.append('top-level "interfaces" must be a list')
        return interfaces
    for pos, entry in enumerate(raw):
        where = f"interfaces[{pos}]"
        if not isinstance(entry, dict):
            problems.append(f"{where}: must be an object")
            continue
        extra = set(entry) - _INTERFACE_KEYS
        if extra:
            problems.append(f"{where}: unknown keys: {sorted(extra)}")
        name = entry.get("name")
        methods = entry.get("methods")
        if not isinstance(name, str) or not name:
            problems.append(f'{where}: "name" must be a non-empty string')
            continue
        if not isinstance(methods, list) or any(
            not isinstance(m, str) or not m for m in methods
        ):
            problems.append(f'{where} ({name}): "methods" must be a list of names')
            continue
        interfaces.append(InterfaceSpec(name, tuple(methods)))
    return interfaces


def _parse_dependency_row(
    entry_list: Any,
    source: InterfaceSpec,
    where: str,
    discrete: bool,
    problems: list[str],
) -> list[tuple[int, float]] | None:
    """Parse one dependency list into (slot index, probability) pairs."""
    deps: list[tuple[int, float]] = []
    seen: set[str] = set()
    ok = True
    for pos, item in enumerate(entry_list):
        spot = f"{where}[{pos}]"
        if not isinstance(item, dict):
            problems.append(f"{spot}: must be an object")
            ok = False
            continue
        allowed = {"method"} if discrete else {"method", "p"}
        extra = set(item) - allowed
        if extra:
            problems.append(f"{spot}: unknown keys: {sorted(extra)}")
            ok = False
        method = item.get("method")
        if not isinstance(method, str) or method not in source.methods:
            problems.append(
                f"{spot}: unknown source method: {method!r} (source {source.name})"
            )
            ok = False
            continue
        if method in seen:
            problems.append(f"{spot}: duplicate dependency on method {method}")
            ok = False
            continue
        seen.add(method)
        if discrete:
            deps.append((source.method_index(method), 1.0))
            continue
        p = item.get("p")
        if not isinstance(p, (int, float)) or isinstance(p, bool):
            problems.append(f'{spot}: "p" must be a number')
            ok = False
            continue
        p = float(p)
        if not 0.0 <= p <= 1.0:
            problems.append(f'{spot}: "p" = {p} outside [0, 1]')
            ok = False
            continue
        deps.append((source.method_index(method), p))
    return deps if ok else None


def _parse_adapter(
    entry: Any,
    pos: int,
    by_name: dict[str, InterfaceSpec],
    discrete: bool,
    problems: list[str],
) -> tuple[str, str, str, MethodDependencyMatrix, ConversionProbabilityMatrix] | None:
    where = f"adapters[{pos}]"
    if not isinstance(entry, dict):
        problems.append(f"{where}: must be an object")
        return None
    extra = set(entry) - _ADAPTER_KEYS
    if extra:
        problems.append(f"{where}: unknown keys: {sorted(extra)}")
    name = entry.get("name")
    if not isinstance(name, str) or not name:
        problems.append(f'{where}: "name" must be a non-empty string')
        return None
    where = f"adapter {name}"
    ok = True
    endpoints: list[InterfaceSpec] = []
    for role in ("source", "target"):
        ref = entry.get(role)
        if not isinstance(ref, str) or ref not in by_name:
            problems.append(f"{where}: unknown {role} interface: {ref!r}")
            ok = False
        else:
            endpoints.append(by_name[ref])
    methods = entry.get("methods")
    if not isinstance(methods, dict):
        problems.append(f'{where}: "methods" must be an object')
        ok = False
    if not ok:
        return None
    source, target = endpoints

    unknown = set(methods) - set(target.methods)
    if unknown:
        problems.append(
            f"{where}: methods not in target {target.name}: {sorted(unknown)}"
        )
        ok = False
    missing = set(target.methods) - set(methods)
    if missing:
        problems.append(
            f"{where}: target methods must all be listed; missing: {sorted(missing)}"
        )
        ok = False

    rows, cols = target.slots, source.slots
    dep = [[False] * cols for _ in range(rows)]
    conv = [[0.0] * cols for _ in range(rows)]
    dep[0][0] = True
    for method in target.methods:
        if method not in methods:
            continue
        j = target.method_index(method)
        value = methods[method]
        spot = f"{where}: method {method}"
        if value == "never":
            dep[j][0] = True
        elif value == "always":
            pass
        elif isinstance(value, list):
            deps = _parse_dependency_row(value, source, spot, discrete, problems)
            if deps is None:
                ok = False
                continue
            for i, p in deps:
                dep[j][i] = True
                conv[j][i] = p
        else:
            problems.append(
                f'{spot}: must be "never", "always" or a dependency list'
            )
            ok = False
    if not ok:
        return None
    return (
        name,
        source.name,
        target.name,
        MethodDependencyMatrix.from_rows(dep),
        ConversionProbabilityMatrix.from_rows(conv),
    )


def parse_document(
    obj: Any, *, discrete: bool = False
) -> tuple[list[InterfaceSpec], list[Any], list[str]]:
    """Parse a decoded JSON object; returns (interfaces, adapters, problems)."""
    problems: list[str] = []
    if not isinstance(obj, dict):
        return [], [], ["top-level document must be an object"]
    extra = set(obj) - {"interfaces", "adapters"}
    if extra:
        problems.append(f"unknown top-level keys: {sorted(extra)}")
    interfaces = _parse_interfaces(obj, problems)
    by_name: dict[str, InterfaceSpec] = {}
    for iface in interfaces:
        by_name.setdefault(iface.name, iface)

    adapters: list[Any] = []
    raw = obj.get("adapters")
    if not isinstance(raw, list):
        problems.append('top-level "adapters" must be a list')
        return interfaces, adapters, problems
    for pos, entry in enumerate(raw):
        parsed = _parse_adapter(entry, pos, by_name, discrete, problems)
        if parsed is None:
            continue
        name, source, target, dep, conv = parsed
        if discrete:
            adapters.append(DiscreteAdapterSpec(name, source, target, dep))
        else:
            adapters.append(
                AdapterSpec(
                    name, source, target, ProbabilisticAdaptationFactor(dep, conv)
                )
            )
    return interfaces, adapters, problems


def _decode(text: str) -> tuple[Any, list[str]]:
    try:
        return json.loads(text), []
    except json.JSONDecodeError as exc:
        return None, [
            f"parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ]


def document_problems(text: str, *, discrete: bool = False) -> list[str]:
    """Every parse and validation problem of a document; empty means valid."""
    obj, problems = _decode(text)
    if problems:
        return problems
    interfaces, adapters, problems = parse_document(obj, discrete=discrete)
    if discrete:
        problems += discrete_graph_violations(interfaces, adapters)
    else:
        problems += graph_violations(interfaces, adapters)
    return problems


def load_graph_text(text: str) -> InterfaceAdapterGraph:
    obj, problems = _decode(text)
    if problems:
        raise DocumentError(problems)
    interfaces, adapters, problems = parse_document(obj)
    if problems:
        raise DocumentError(problems)
    return build_graph(interfaces, adapters)


def load_discrete_graph_text(text: str) -> DiscreteAdapterGraph:
    obj, problems = _decode(text)
    if problems:
        raise DocumentError(problems)
    interfaces, adapters, problems = parse_document(obj, discrete=True)
    if problems:
        raise DocumentError(problems)
    return build_discrete_graph(interfaces, adapters)


def load_graph(path: str | Path) -> InterfaceAdapterGraph:
    return load_graph_text(Path(path).read_text(encoding="utf-8"))


def load_discrete_graph(path: str | Path) -> DiscreteAdapterGraph:
    return load_discrete_graph_text(Path(path).read_text(encoding="utf-8"))


def _dependency_entries(
    factor: ProbabilisticAdaptationFactor,
    j: int,
    source: InterfaceSpec,
) -> Any:
    """Emit one target method's entry: "never", "always" or a dependency list."""
    dep_row = factor.dep.cells[j]
    if dep_row[0]:
        # A dependency on the dummy dominates everything else in the row.
        return "never"
    deps = [
        {"method": source.methods[i - 1], "p": factor.conv.cells[j][i]}
        for i in range(1, len(dep_row))
        if dep_row[i]
    ]
    return deps if deps else "always"


def adapter_entry(
    name: str,
    source: InterfaceSpec,
    target: InterfaceSpec,
    factor: ProbabilisticAdaptationFactor,
) -> dict:
    """A GraphDocument-style adapter entry for a factor between two interfaces."""
    return {
        "name": name,
        "source": source.name,
        "target": target.name,
        "methods": {
            method: _dependency_entries(factor, target.method_index(method), source)
            for method in target.methods
        },
    }


def graph_document(g: InterfaceAdapterGraph) -> dict:
    """Emit a full probabilistic graph document, preserving declaration order."""
    return {
        "interfaces": [
            {"name": i.name, "methods": list(i.methods)} for i in g.interfaces
        ],
        "adapters": [
            adapter_entry(
                a.name, g.interface(a.source), g.interface(a.target), a.factor
            )
            for a in g.adapters
        ],
    }


def format_json(obj: Any) -> str:
    """Deterministic rendering: fixed key order, shortest round-trip floats."""
    return json.dumps(obj, indent=2, allow_nan=False)
