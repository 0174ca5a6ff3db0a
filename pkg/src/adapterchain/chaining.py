"""Optimal adapter chain search and chain loss evaluation.

Loss of a chain is the weighted probability that an invocation of the target
interface cannot be handled, starting from a fully functional service behind
the chain's source interface. A chain is valued by applying its adapters one
after another to the full-availability vector of the source; this sequential
valuation is monotone (prepending an adapter can only lower availability),
which is what makes the greedy best-first search below return the global
optimum. Worst-case running time is still exponential, since a graph can
hold exponentially many acyclic chains.

Ties are broken deterministically everywhere: lowest loss, then shortest
chain, then lexicographically smallest adapter-name sequence.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Sequence

from .algebra import (
    MethodAvailabilityVector,
    ShapeMismatchError,
    full_availability,
    prob_adapt,
)
from .graph import (
    InterfaceAdapterGraph,
    InvalidChainError,
    enumerate_acyclic_chains,
    validate_chain,
)

#: Slack used when comparing a chain's availability against a threshold.
DECISION_SLACK = 1e-12


@dataclass(frozen=True)
class InvocationWeights:
    """Relative invocation weights over the non-dummy methods of an interface.

    Entries are aligned with availability vectors: index 0 is the dummy slot
    and carries weight 0. Weights are normalized to sum to 1 on construction.
    """

    entries: tuple[float, ...]

    @classmethod
    def normalized(cls, values: Sequence[float]) -> "InvocationWeights":
        """Normalize raw per-method weights (counts are fine); rejects a zero sum."""
        weights = [float(v) for v in values]
        if not weights:
            raise ValueError("an interface without methods cannot be weighted")
        if any(w < 0.0 or w != w or w == float("inf") for w in weights):
            raise ValueError("weights must be finite and non-negative")
        total = sum(weights)
        if total <= 0.0:
            raise ValueError("weights sum to zero: at least one must be positive")
        return cls((0.0,) + tuple(w / total for w in weights))

    @classmethod
    def uniform(cls, method_count: int) -> "InvocationWeights":
        """Spread weight 1/M over M non-dummy methods."""
        if method_count < 1:
            raise ValueError("an interface without methods cannot be weighted")
        return cls((0.0,) + (1.0 / method_count,) * method_count)

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class ChainSearchResult:
    """A chain together with its weighted availability and loss at the target."""

    chain: tuple[str, ...]
    availability: float
    loss: float
    per_method: MethodAvailabilityVector


def _chain_vector(
    g: InterfaceAdapterGraph, chain: Sequence[str]
) -> MethodAvailabilityVector:
    """Availability at the end of a non-empty chain, applied adapter by adapter."""
    first = g.adapter(chain[0])
    vector = full_availability(g.interface(first.source).slots)
    for name in chain:
        vector = prob_adapt(g.adapter(name).factor, vector)
    return vector


def _weighted(weights: InvocationWeights, vector: MethodAvailabilityVector) -> float:
    total = 0.0
    for w, v in zip(weights.entries[1:], vector.entries[1:]):
        total += w * v
    return min(1.0, max(0.0, total))


def evaluate_chain(
    g: InterfaceAdapterGraph,
    chain: Sequence[str],
    target: str,
    weights: InvocationWeights,
) -> ChainSearchResult:
    """Evaluate a valid chain ending at ``target``.

    The empty chain stands for no adaptation at all and has loss exactly 0.
    """
    target_iface = g.interface(target)
    if len(weights) != target_iface.slots:
        raise ShapeMismatchError(
            f"weights have {len(weights)} slots but interface {target} has {target_iface.slots}"
        )
    problems = validate_chain(g, chain, target=target if chain else None)
    if problems:
        raise InvalidChainError(problems)
    if not chain:
        return ChainSearchResult(
            chain=(),
            availability=1.0,
            loss=0.0,
            per_method=full_availability(target_iface.slots),
        )
    vector = _chain_vector(g, chain)
    availability = _weighted(weights, vector)
    return ChainSearchResult(
        chain=tuple(chain),
        availability=availability,
        loss=1.0 - availability,
        per_method=vector,
    )


def prob_loss(
    g: InterfaceAdapterGraph,
    chain: Sequence[str],
    target: str,
    weights: InvocationWeights,
) -> float:
    """Weighted probability that the adapted target cannot handle an invocation."""
    return evaluate_chain(g, chain, target, weights).loss


def _search(
    g: InterfaceAdapterGraph,
    sources: frozenset[str],
    target: str,
    weights: InvocationWeights,
    trace: list[tuple[tuple[str, ...], float]] | None = None,
) -> ChainSearchResult | None:
    """Best-first search over chains ending at ``target``, built backwards.

    Chains are popped in non-decreasing (loss, length, names) order; the
    first popped chain whose source lies in ``sources`` is optimal because
    prepending an adapter never lowers loss.
    """
    for name in sources | {target}:
        g.interface(name)
    if target in sources:
        return evaluate_chain(g, (), target, weights)
    heap: list[tuple[float, int, tuple[str, ...]]] = [(0.0, 0, ())]
    while heap:
        loss, _, names = heapq.heappop(heap)
        if trace is not None:
            trace.append((names, loss))
        if names and g.adapter(names[0]).source in sources:
            return evaluate_chain(g, names, target, weights)
        if names:
            head = g.adapter(names[0]).source
            visited = {head}
            visited.update(g.adapter(n).target for n in names)
        else:
            head = target
            visited = {target}
        for adapter in g.incoming(head):
            if adapter.source in visited:
                continue
            child = (adapter.name,) + names
            child_loss = prob_loss(g, child, target, weights)
            heapq.heappush(heap, (child_loss, len(child), child))
    return None


def greedy_chain(
    g: InterfaceAdapterGraph,
    source: str,
    target: str,
    weights: InvocationWeights,
) -> ChainSearchResult | None:
    """Minimum-loss acyclic chain from source to target, or None if none exists.

    Returns the empty chain with loss 0 when source == target.
    """
    return _search(g, frozenset((source,)), target, weights)


def greedy_chain_multi_source(
    g: InterfaceAdapterGraph,
    sources: Iterable[str],
    target: str,
    weights: InvocationWeights,
) -> ChainSearchResult | None:
    """Minimum-loss chain whose source is any member of ``sources``."""
    source_set = frozenset(sources)
    if not source_set:
        raise ValueError("at least one source interface is required")
    return _search(g, source_set, target, weights)


def brute_force_optimal(
    g: InterfaceAdapterGraph,
    source: str,
    target: str,
    weights: InvocationWeights,
) -> ChainSearchResult | None:
    """Exhaustive reference: evaluate every acyclic chain and keep the best.

    Shares the valuation and tie-break of greedy_chain, so the two must
    agree chain for chain.
    """
    best: ChainSearchResult | None = None
    best_key: tuple[float, int, tuple[str, ...]] | None = None
    for chain in enumerate_acyclic_chains(g, source, target):
        result = evaluate_chain(g, chain, target, weights)
        key = (result.loss, len(result.chain), result.chain)
        if best_key is None or key < best_key:
            best, best_key = result, key
    return best


def prob_chain_decision(
    g: InterfaceAdapterGraph,
    source: str,
    target: str,
    weights: InvocationWeights,
    threshold: float,
) -> bool:
    """Decide whether some chain reaches weighted availability >= threshold."""
    if not 0.0 <= threshold <= 1.0:
        raise ValueError(f"threshold {threshold} outside [0, 1]")
    best = brute_force_optimal(g, source, target, weights)
    return best is not None and best.availability >= threshold - DECISION_SLACK
