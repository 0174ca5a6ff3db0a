"""Interface adapter graphs: interfaces as nodes, adapters as directed edges.

A graph is a directed multigraph; parallel adapters between the same pair of
interfaces are allowed. A chain is an ordered tuple of adapter names applied
left to right (source end first). Chains are acyclic: no interface may be
visited twice.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .algebra import (
    ProbabilisticAdaptationFactor,
    prob_compose,
    validate_factor,
)


class UnknownNameError(ValueError):
    """A referenced interface or adapter does not exist in the graph."""


class GraphValidationError(ValueError):
    """A graph definition violates structural invariants."""

    def __init__(self, violations: Sequence[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class InvalidChainError(ValueError):
    """A chain is malformed with respect to a graph."""

    def __init__(self, violations: Sequence[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


@dataclass(frozen=True)
class InterfaceSpec:
    """A named interface with its ordered method names (dummy excluded)."""

    name: str
    methods: tuple[str, ...]

    @property
    def slots(self) -> int:
        """Method count including the implicit dummy slot."""
        return len(self.methods) + 1

    def method_index(self, method: str) -> int:
        """Slot index of a method (1-based; 0 is the dummy)."""
        try:
            return self.methods.index(method) + 1
        except ValueError:
            raise UnknownNameError(
                f"interface {self.name} has no method named {method}"
            ) from None


@dataclass(frozen=True)
class AdapterSpec:
    """A named adapter edge from a source interface to a target interface."""

    name: str
    source: str
    target: str
    factor: ProbabilisticAdaptationFactor


@dataclass(frozen=True)
class InterfaceAdapterGraph:
    interfaces: tuple[InterfaceSpec, ...]
    adapters: tuple[AdapterSpec, ...]

    def __post_init__(self):
        object.__setattr__(self, "_interfaces", {i.name: i for i in self.interfaces})
        object.__setattr__(self, "_adapters", {a.name: a for a in self.adapters})
        outgoing: dict[str, list[AdapterSpec]] = {i.name: [] for i in self.interfaces}
        incoming: dict[str, list[AdapterSpec]] = {i.name: [] for i in self.interfaces}
        for adapter in self.adapters:
            outgoing.setdefault(adapter.source, []).append(adapter)
            incoming.setdefault(adapter.target, []).append(adapter)
        object.__setattr__(
            self,
            "_outgoing",
            {k: tuple(sorted(v, key=lambda a: a.name)) for k, v in outgoing.items()},
        )
        object.__setattr__(
            self,
            "_incoming",
            {k: tuple(sorted(v, key=lambda a: a.name)) for k, v in incoming.items()},
        )

    def interface(self, name: str) -> InterfaceSpec:
        try:
            return self._interfaces[name]
        except KeyError:
            raise UnknownNameError(f"unknown interface name: {name}") from None

    def adapter(self, name: str) -> AdapterSpec:
        try:
            return self._adapters[name]
        except KeyError:
            raise UnknownNameError(f"unknown adapter name: {name}") from None

    def outgoing(self, interface: str) -> tuple[AdapterSpec, ...]:
        """Adapters whose source is ``interface``, sorted by adapter name."""
        self.interface(interface)
        return self._outgoing.get(interface, ())

    def incoming(self, interface: str) -> tuple[AdapterSpec, ...]:
        """Adapters whose target is ``interface``, sorted by adapter name."""
        self.interface(interface)
        return self._incoming.get(interface, ())


def structure_violations(
    interfaces: Sequence[InterfaceSpec],
    edges: Iterable[tuple[str, str, str, int, int]],
) -> list[str]:
    """Endpoint and dimension checks shared by the probabilistic and discrete graphs.

    ``edges`` holds (name, source, target, matrix rows, matrix cols) per adapter.
    """
    problems: list[str] = []
    by_name: dict[str, InterfaceSpec] = {}
    for iface in interfaces:
        if iface.name in by_name:
            problems.append(f"duplicate interface name: {iface.name}")
        else:
            by_name[iface.name] = iface
        seen: set[str] = set()
        for method in iface.methods:
            if method in seen:
                problems.append(
                    f"interface {iface.name}: duplicate method name: {method}"
                )
            seen.add(method)
    edge_names: set[str] = set()
    for name, source, target, rows, cols in edges:
        if name in edge_names:
            problems.append(f"duplicate adapter name: {name}")
        edge_names.add(name)
        known = True
        for role, endpoint in (("source", source), ("target", target)):
            if endpoint not in by_name:
                problems.append(f"adapter {name}: unknown {role} interface: {endpoint}")
                known = False
        if known:
            want = (by_name[target].slots, by_name[source].slots)
            if (rows, cols) != want:
                problems.append(
                    f"adapter {name}: matrix is {rows}x{cols} but "
                    f"{target} (target) and {source} (source) require {want[0]}x{want[1]}"
                )
    return problems


def graph_violations(
    interfaces: Sequence[InterfaceSpec], adapters: Sequence[AdapterSpec]
) -> list[str]:
    """Every structural or factor invariant violated by a graph definition."""
    problems = structure_violations(
        interfaces,
        (
            (a.name, a.source, a.target, a.factor.dep.rows, a.factor.dep.cols)
            for a in adapters
        ),
    )
    for adapter in adapters:
        for line in validate_factor(adapter.factor):
            problems.append(f"adapter {adapter.name}: {line}")
    return problems


def build_graph(
    interfaces: Iterable[InterfaceSpec], adapters: Iterable[AdapterSpec]
) -> InterfaceAdapterGraph:
    """Validate and build a graph; raises GraphValidationError listing all problems."""
    interfaces = tuple(interfaces)
    adapters = tuple(adapters)
    problems = graph_violations(interfaces, adapters)
    if problems:
        raise GraphValidationError(problems)
    return InterfaceAdapterGraph(interfaces, adapters)


def chain_interfaces(g: InterfaceAdapterGraph, chain: Sequence[str]) -> tuple[str, ...]:
    """Interfaces visited by a chain, source end first."""
    if not chain:
        return ()
    first = g.adapter(chain[0])
    visited = [first.source, first.target]
    for name in chain[1:]:
        visited.append(g.adapter(name).target)
    return tuple(visited)


def validate_chain(
    g: InterfaceAdapterGraph,
    chain: Sequence[str],
    *,
    source: str | None = None,
    target: str | None = None,
) -> list[str]:
    """Report every violation of the chain invariants; empty means valid.

    ``source``/``target`` additionally pin the expected endpoints. An empty
    chain is valid only when no endpoints are pinned or they coincide.
    """
    problems: list[str] = []
    for name in chain:
        try:
            g.adapter(name)
        except UnknownNameError as exc:
            problems.append(str(exc))
    if problems:
        return problems
    if not chain:
        if source is not None and target is not None and source != target:
            problems.append(
                f"empty chain cannot adapt {source} to {target}: endpoints differ"
            )
        return problems
    for earlier, later in zip(chain, chain[1:]):
        a, b = g.adapter(earlier), g.adapter(later)
        if a.target != b.source:
            problems.append(
                f"adapter {later} cannot follow {earlier}: "
                f"{earlier} ends at {a.target} but {later} starts at {b.source}"
            )
    visited = chain_interfaces(g, chain)
    seen: set[str] = set()
    for iface in visited:
        if iface in seen:
            problems.append(f"chain revisits interface {iface}")
        seen.add(iface)
    if source is not None and g.adapter(chain[0]).source != source:
        problems.append(
            f"chain starts at {g.adapter(chain[0]).source}, expected {source}"
        )
    if target is not None and g.adapter(chain[-1]).target != target:
        problems.append(
            f"chain ends at {g.adapter(chain[-1]).target}, expected {target}"
        )
    return problems


def chain_factor(
    g: InterfaceAdapterGraph, chain: Sequence[str]
) -> ProbabilisticAdaptationFactor:
    """Fuse a non-empty chain into a single factor, later adapters on the left.

    Composition is applied in chain order: for [A, B, C] the result is
    factor(C) composed with (factor(B) composed with factor(A)). Note that
    fusing and then adapting is only guaranteed to match applying the
    adapters one by one when every dependency row along the chain names at
    most one method; see README for the exactness discussion.
    """
    problems = validate_chain(g, chain)
    if problems:
        raise InvalidChainError(problems)
    if not chain:
        raise InvalidChainError(["cannot compose an empty chain"])
    factor = g.adapter(chain[0]).factor
    for name in chain[1:]:
        factor = prob_compose(g.adapter(name).factor, factor)
    return factor


def enumerate_acyclic_chains(
    g: InterfaceAdapterGraph,
    source: str,
    target: str,
    max_len: int | None = None,
) -> Iterator[tuple[str, ...]]:
    """Yield every acyclic chain from source to target exactly once.

    Order is deterministic: shorter chains first, ties broken by the
    lexicographic order of the adapter-name sequence. The empty chain is
    yielded exactly when source == target.
    """
    g.interface(source)
    g.interface(target)
    return _enumerate(g, source, target, max_len)


def _enumerate(
    g: InterfaceAdapterGraph, source: str, target: str, max_len: int | None
) -> Iterator[tuple[str, ...]]:
    if source == target:
        yield ()
        return  # any return to the source revisits it
    frontier: list[tuple[tuple[str, ...], str, frozenset[str]]] = [
        ((), source, frozenset((source,)))
    ]
    length = 0
    while frontier and (max_len is None or length < max_len):
        length += 1
        extended: list[tuple[tuple[str, ...], str, frozenset[str]]] = []
        for names, end, visited in frontier:
            for adapter in g.outgoing(end):
                if adapter.target in visited:
                    continue
                chain = names + (adapter.name,)
                if adapter.target == target:
                    yield chain
                else:
                    extended.append(
                        (chain, adapter.target, visited | {adapter.target})
                    )
        frontier = extended
