"""Path sums: the same answers as the state-space route, built the long way.

A path is one full joint assignment whose table factors are all nonzero. The
paths ending in the same external configuration form a class, and summing
the path products within a class gives that configuration's total amplitude
(quantum) or probability (classical). Everything the net engine computes by
vectorized enumeration can be recomputed here from explicit path lists with
plain Python arithmetic, which is exactly what makes this module useful as a
cross-check: the two routes share the tables and nothing else.

Zero support is decided by exact comparison with zero, entry by entry; a
path is excluded the moment any factor vanishes, never because its product
is merely small.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping

from .core import BaseNet, max_states
from .errors import ContradictoryEvidence, InvalidParams, StateSpaceTooLarge


@dataclass(frozen=True)
class Path:
    """One nonzero-support joint assignment (states follow the node order)."""

    states: tuple[tuple[int, ...], ...]
    value: complex


@dataclass(frozen=True)
class FinalState:
    """External component values in canonical order."""

    values: tuple[int, ...]


@dataclass
class PathClassification:
    order: tuple[str, ...]
    classes: dict[FinalState, list[Path]]


def _space_size(net: BaseNet) -> int:
    n = 1
    for node in net.graph.nodes:
        n *= len(net.space.states(node))
    return n


def enumerate_paths(net: BaseNet) -> list[Path]:
    """All nonzero-support paths, in lexicographic state-index order."""
    cap = max_states()
    if _space_size(net) > cap:
        raise StateSpaceTooLarge(f"{_space_size(net)} joint states exceeds the cap of {cap}")
    order = net.node_order()
    state_lists = [net.space.states(n) for n in order]
    pos = {n: j for j, n in enumerate(order)}
    pure = complex if net.kind == "quantum" else float
    node_info = []
    for j, node in enumerate(order):
        parent_pos = [pos[p] for p in net.parents(node)]
        psizes = [len(state_lists[k]) for k in parent_pos]
        strides = [1] * len(parent_pos)
        for k in range(len(parent_pos) - 2, -1, -1):
            strides[k] = strides[k + 1] * psizes[k + 1]
        index = {s: i for i, s in enumerate(state_lists[j])}
        node_info.append((net.table(node), index, parent_pos, strides))

    paths = []
    for combo in itertools.product(*state_lists):
        value = pure(1)
        for j, (table, index, parent_pos, strides) in enumerate(node_info):
            col = 0
            for k, stride in zip(parent_pos, strides):
                col += node_info[k][1][combo[k]] * stride
            factor = pure(table[index[combo[j]], col])
            if factor == 0:
                break
            value *= factor
        else:
            paths.append(Path(states=combo, value=value))
    return paths


def _final_state(net: BaseNet, order, states) -> FinalState:
    values: list[int] = []
    for node, state in zip(order, states):
        if node in net.external_nodes:
            values.extend(state)
    return FinalState(tuple(values))


def classify_paths(net: BaseNet) -> PathClassification:
    """Group the nonzero-support paths by final external configuration."""
    order = net.node_order()
    classes: dict[FinalState, list[Path]] = {}
    for path in enumerate_paths(net):
        classes.setdefault(_final_state(net, order, path.states), []).append(path)
    return PathClassification(order=order, classes=classes)


def feynman_integral(net: BaseNet):
    """Per-class path sums: {FinalState: summed value}.

    For quantum nets the values are complex amplitudes whose squared moduli
    are the external configuration weights; for classical nets they are the
    configuration probabilities directly. Only classes with at least one
    nonzero-support path appear (their sum may still cancel to zero).
    """
    out = {}
    for final, paths in classify_paths(net).classes.items():
        total = paths[0].value
        for p in paths[1:]:
            total = total + p.value
        out[final] = total
    return out


# ---------------------------------------------------------------------------
# Query mirrors: identical contracts to the state-space route, summed from
# explicit paths instead.


def _value_set(allowed) -> set:
    if isinstance(allowed, int) or (hasattr(allowed, "__int__") and not hasattr(allowed, "__iter__")):
        return {int(allowed)}
    return {int(v) for v in allowed}


def _matchers(net: BaseNet, order, fixed):
    pos = {n: j for j, n in enumerate(order)}
    out = []
    for alpha, allowed in fixed.items():
        node, k = net.space.owner(alpha)
        out.append((pos[node], k, _value_set(allowed)))
    return out


def path_chi(net: BaseNet, fixed: Mapping[str, object] | None = None) -> float:
    """Path-route version of the filtered weight.

    Classical nets: total probability of matching paths. Quantum nets:
    matching amplitudes are summed within each final-state class before
    squaring.
    """
    order = net.node_order()
    matchers = _matchers(net, order, fixed or {})
    if net.kind == "quantum":
        sums: dict[FinalState, complex] = {}
        for path in enumerate_paths(net):
            if all(path.states[j][k] in vs for j, k, vs in matchers):
                key = _final_state(net, order, path.states)
                sums[key] = sums.get(key, 0j) + path.value
        return sum(abs(v) ** 2 for v in sums.values())
    total = 0.0
    for path in enumerate_paths(net):
        if all(path.states[j][k] in vs for j, k, vs in matchers):
            total += path.value
    return total


def pathsum_conditional(
    net: BaseNet, hypothesis: Mapping[str, int], evidence: Mapping[str, int]
) -> float:
    """P(hypothesis | evidence) summed from paths; mirrors the state route."""
    overlap = set(hypothesis) & set(evidence)
    if overlap:
        raise ValueError(f"hypothesis and evidence overlap on {sorted(overlap)}")
    if not hypothesis:
        raise ValueError("empty hypothesis")
    for alpha in itertools.chain(hypothesis, evidence):
        net.space.owner(alpha)
    if net.kind == "quantum":
        comps = list(hypothesis)
        weights = {}
        for combo in itertools.product(
            *[net.space.component_values(a) for a in comps]
        ):
            weights[combo] = path_chi(net, {**dict(zip(comps, combo)), **evidence})
        den = sum(weights.values())
        if den == 0.0:
            raise ContradictoryEvidence(f"evidence {dict(evidence)} has zero weight")
        return weights[tuple(hypothesis[a] for a in comps)] / den
    den = path_chi(net, evidence)
    if den == 0.0:
        raise ContradictoryEvidence(f"evidence {dict(evidence)} has zero probability")
    return path_chi(net, {**hypothesis, **evidence}) / den


def pathsum_fuzzy_classical(net: BaseNet, hypothesis, evidence) -> float:
    """Set-valued conditional from paths; arguments as in the fuzzy module."""
    den = path_chi(net, evidence.sets)
    if den == 0.0:
        raise ContradictoryEvidence("evidence set has zero mass")
    return path_chi(net, hypothesis.intersect(evidence).sets) / den


def pathsum_fuzzy_quantum(net: BaseNet, partition, index: int, evidence) -> float:
    """Probability of one partition block, summed from paths."""
    if not 0 <= index < len(partition.blocks):
        raise InvalidParams(
            f"block index {index} out of range for {len(partition.blocks)} blocks"
        )
    weights = [path_chi(net, b.intersect(evidence).sets) for b in partition.blocks]
    total = sum(weights)
    if total == 0.0:
        raise ContradictoryEvidence("evidence set has zero weight across the partition")
    return weights[index] / total
