"""Quantum nets: complex amplitude tables and measurement-style conditionals.

A quantum net looks like a classical one except that table entries are
complex amplitudes and each column has unit squared norm instead of unit sum.
The joint amplitude of a full assignment is the product of one entry per
node. Probabilities of external configurations come from coherently summing
the joint amplitude over internal configurations first and squaring after:

    chi[K] = sum over external configs of |sum over internal configs of
             A(x) * (x matches K)|^2

where K constrains individual components to values (or value sets). The
conditional probability of a hypothesis H given evidence E is

    P(H | E) = chi[H and E] / (sum over all value combos m of H's
               components of chi[m and E])

and the quantum-noise factor below measures how far that denominator sits
from chi[E] itself; it equals one whenever the hypothesis components are all
external, and drifts from one when conditioning cuts into coherent sums.

Every quantum net has a parent classical net with tables |A|^2. The two give
the same answers exactly when each external configuration pins down the
whole internal configuration (no interference terms survive); otherwise they
genuinely differ, which is the point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .classical import CBNet, ValidationReport
from .core import BaseNet, filter_mask
from .errors import ContradictoryEvidence, StateSpaceTooLarge
from .graph import classify_nodes

EPS_NORM = 1e-9
EPS_NET = 1e-9


@dataclass(frozen=True)
class AmplitudeTable:
    """Read-only view of one node's amplitude table."""

    node: str
    parents: tuple[str, ...]
    entries: np.ndarray


class QBNet(BaseNet):
    dtype = np.complex128
    kind = "quantum"

    def __init__(self, graph, space, tables, meta=None, pre_net=False):
        if pre_net:
            raise ValueError("quantum nets must be acyclic; pre-nets are classical-only")
        super().__init__(graph, space, tables, meta=meta)

    def node_table(self, node: str) -> AmplitudeTable:
        return AmplitudeTable(node, self.parents(node), self.table(node))


def joint_amplitude(net: QBNet, assignment: Mapping[str, object]) -> complex:
    """Amplitude of one full assignment {node: state}."""
    return complex(net.joint_value(assignment))


def total_squared_amplitude(net: QBNet) -> float:
    """Sum of |A|^2 over every joint state; one for any normalized net."""
    values = net.enumeration().values
    return float((values.real ** 2 + values.imag ** 2).sum())


def external_amplitude_map(net: QBNet) -> dict[tuple[int, ...], complex]:
    """Summed amplitude of each external configuration, keyed by component
    values in canonical external order. Zero entries included."""
    en = net.enumeration()
    re = np.bincount(en.ext_group, weights=en.values.real, minlength=en.n_ext)
    im = np.bincount(en.ext_group, weights=en.values.imag, minlength=en.n_ext)
    return {
        key: complex(a, b) for key, a, b in zip(en.group_values(net), re, im)
    }


def chi(net: QBNet, fixed: Mapping[str, object] | None = None) -> float:
    """Filtered squared magnitude of internal sums, totalled over external
    configurations. ``fixed`` maps component names to a value or value set."""
    en = net.enumeration()
    mask = filter_mask(net, fixed or {})
    values = en.values
    if mask is not None:
        values = np.where(mask, values, 0)
    re = np.bincount(en.ext_group, weights=values.real, minlength=en.n_ext)
    im = np.bincount(en.ext_group, weights=values.imag, minlength=en.n_ext)
    return float((re * re + im * im).sum())


def _check_query(net, hypothesis, evidence):
    overlap = set(hypothesis) & set(evidence)
    if overlap:
        raise ValueError(f"hypothesis and evidence overlap on {sorted(overlap)}")
    for alpha in itertools.chain(hypothesis, evidence):
        net.space.owner(alpha)


def hypothesis_weights(
    net: QBNet, components: Iterable[str], evidence: Mapping[str, int]
) -> dict[tuple[int, ...], float]:
    """chi[m and E] for every value combo m of the given components."""
    comps = list(components)
    out = {}
    for combo in itertools.product(*[net.space.component_values(a) for a in comps]):
        out[combo] = chi(net, {**dict(zip(comps, combo)), **evidence})
    return out


def quantum_conditional(
    net: QBNet, hypothesis: Mapping[str, int], evidence: Mapping[str, int]
) -> float:
    """P(hypothesis | evidence), both given as {component: value}."""
    if not hypothesis:
        raise ValueError("empty hypothesis")
    _check_query(net, hypothesis, evidence)
    comps = list(hypothesis)
    weights = hypothesis_weights(net, comps, evidence)
    den = sum(weights.values())
    if den == 0.0:
        raise ContradictoryEvidence(f"evidence {dict(evidence)} has zero weight")
    return weights[tuple(hypothesis[a] for a in comps)] / den


def f_qna(net: QBNet, components: Iterable[str], evidence: Mapping[str, int]) -> float:
    """Quantum-noise factor for conditioning on the given hypothesis
    components: the hypothesis-summed weight over the plain evidence weight.
    One exactly when the components are all external; otherwise a measure of
    how much coherence the conditioning destroys."""
    comps = list(components)
    _check_query(net, {a: 0 for a in comps}, evidence)
    base = chi(net, evidence)
    if base == 0.0:
        raise ContradictoryEvidence(f"evidence {dict(evidence)} has zero weight")
    total = sum(hypothesis_weights(net, comps, evidence).values())
    return total / base


def parent_cb_net(net: QBNet) -> CBNet:
    """Classical net with tables |A|^2 on the same graph and state space."""
    tables = {n: np.abs(net.table(n)) ** 2 for n in net.graph.nodes}
    return CBNet(net.graph, net.space, tables, meta=dict(net.meta))


def validate_quantum(net: QBNet) -> ValidationReport:
    """Check column norms, node classification, and the whole-net sums."""
    report = ValidationReport()
    cls = classify_nodes(net.graph)
    for n in cls.invalid:
        report.problems.append(f"node {n!r} is neither internal nor external")
    for node in net.graph.nodes:
        table = net.table(node)
        norms = (np.abs(table) ** 2).sum(axis=0)
        bad = np.nonzero(np.abs(norms - 1.0) > EPS_NORM)[0]
        for c in bad[:4]:
            report.problems.append(
                f"node {node!r}: column {int(c)} squared norm {norms[c]:.12g}, expected 1"
            )
        if len(bad) > 4:
            report.problems.append(f"node {node!r}: {len(bad) - 4} more bad columns")
    try:
        total = total_squared_amplitude(net)
        if abs(total - 1.0) > EPS_NET:
            report.problems.append(
                f"total squared amplitude {total:.12g}, expected 1"
            )
        ext_total = chi(net)
        if abs(ext_total - 1.0) > EPS_NET:
            report.problems.append(
                f"external weight (squared internal sums) {ext_total:.12g}, expected 1"
            )
    except StateSpaceTooLarge as exc:
        report.notes.append(f"whole-net sums skipped: {exc}")
    return report
