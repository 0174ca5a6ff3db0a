"""Bridge from the all-or-nothing (discrete) adapter model to the probabilistic one.

A discrete adapter graph carries only dependency matrices. Mapping every
dependency to conversion probability 1 and every boolean availability to
0/1 embeds the discrete model in the probabilistic engine exactly: products
of 0.0 and 1.0 are exact in floating point, so no tolerance is needed
anywhere on a reduced graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .algebra import (
    ConversionProbabilityMatrix,
    DiscreteAvailabilityVector,
    MethodAvailabilityVector,
    MethodDependencyMatrix,
    ProbabilisticAdaptationFactor,
    dependency_violations,
    discrete_adapt,
)
from .chaining import InvocationWeights, prob_chain_decision
from .graph import (
    AdapterSpec,
    GraphValidationError,
    InterfaceAdapterGraph,
    InterfaceSpec,
    UnknownNameError,
    build_graph,
    enumerate_acyclic_chains,
    structure_violations,
)


@dataclass(frozen=True)
class DiscreteAdapterSpec:
    """An adapter edge carrying only a method dependency matrix."""

    name: str
    source: str
    target: str
    dep: MethodDependencyMatrix


@dataclass(frozen=True)
class DiscreteAdapterGraph:
    interfaces: tuple[InterfaceSpec, ...]
    adapters: tuple[DiscreteAdapterSpec, ...]

    def __post_init__(self):
        object.__setattr__(self, "_interfaces", {i.name: i for i in self.interfaces})
        object.__setattr__(self, "_adapters", {a.name: a for a in self.adapters})

    def interface(self, name: str) -> InterfaceSpec:
        try:
            return self._interfaces[name]
        except KeyError:
            raise UnknownNameError(f"unknown interface name: {name}") from None

    def adapter(self, name: str) -> DiscreteAdapterSpec:
        try:
            return self._adapters[name]
        except KeyError:
            raise UnknownNameError(f"unknown adapter name: {name}") from None


def discrete_graph_violations(
    interfaces: Sequence[InterfaceSpec], adapters: Sequence[DiscreteAdapterSpec]
) -> list[str]:
    problems = structure_violations(
        interfaces,
        ((a.name, a.source, a.target, a.dep.rows, a.dep.cols) for a in adapters),
    )
    for adapter in adapters:
        for line in dependency_violations(adapter.dep):
            problems.append(f"adapter {adapter.name}: {line}")
    return problems


def build_discrete_graph(
    interfaces: Iterable[InterfaceSpec], adapters: Iterable[DiscreteAdapterSpec]
) -> DiscreteAdapterGraph:
    interfaces = tuple(interfaces)
    adapters = tuple(adapters)
    problems = discrete_graph_violations(interfaces, adapters)
    if problems:
        raise GraphValidationError(problems)
    return DiscreteAdapterGraph(interfaces, adapters)


def reduce_factor(dep: MethodDependencyMatrix) -> ProbabilisticAdaptationFactor:
    """Attach conversion probability 1 to every dependency.

    Row 0 and column 0 stay 0 to respect the dummy conventions; the dummy's
    availability is always 0, so this does not change any result.
    """
    conv = ConversionProbabilityMatrix(
        tuple(
            tuple(
                1.0 if dep.cells[j][i] and j != 0 and i != 0 else 0.0
                for i in range(dep.cols)
            )
            for j in range(dep.rows)
        )
    )
    return ProbabilisticAdaptationFactor(dep, conv)


def reduce_availability(p: DiscreteAvailabilityVector) -> MethodAvailabilityVector:
    """Map boolean availability to exact 0/1 probabilities."""
    return MethodAvailabilityVector(tuple(1.0 if e else 0.0 for e in p.entries))


def reduce_graph(dg: DiscreteAdapterGraph) -> InterfaceAdapterGraph:
    """Re-express a discrete adapter graph in the probabilistic model."""
    problems = discrete_graph_violations(dg.interfaces, dg.adapters)
    if problems:
        raise GraphValidationError(problems)
    adapters = tuple(
        AdapterSpec(a.name, a.source, a.target, reduce_factor(a.dep))
        for a in dg.adapters
    )
    return build_graph(dg.interfaces, adapters)


def discrete_chain_availability(
    dg: DiscreteAdapterGraph, chain: Sequence[str]
) -> DiscreteAvailabilityVector:
    """Fold a non-empty chain over a fully available source, all-or-nothing."""
    if not chain:
        raise ValueError("chain must contain at least one adapter")
    first = dg.adapter(chain[0])
    vector = DiscreteAvailabilityVector.full(dg.interface(first.source).slots)
    for name in chain:
        vector = discrete_adapt(dg.adapter(name).dep, vector)
    return vector


def chain_decision_discrete(
    dg: DiscreteAdapterGraph, source: str, target: str, n_required: int
) -> bool:
    """Decide whether some acyclic chain makes at least ``n_required`` target methods available.

    Decided through the probabilistic engine: reduce the graph, weight the
    target's M methods uniformly at 1/M and ask for weighted availability of
    at least n_required/M.
    """
    target_iface = dg.interface(target)
    dg.interface(source)
    method_count = len(target_iface.methods)
    if not 0 <= n_required <= method_count:
        raise ValueError(
            f"required method count {n_required} outside [0, {method_count}]"
        )
    reduced = reduce_graph(dg)
    if method_count == 0:
        # Nothing to weight; any chain (including the empty one) provides
        # all zero methods.
        return any(True for _ in enumerate_acyclic_chains(reduced, source, target))
    weights = InvocationWeights.uniform(method_count)
    return prob_chain_decision(
        reduced, source, target, weights, n_required / method_count
    )
