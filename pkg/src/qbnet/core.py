"""State spaces, node tables, and the machinery shared by both net kinds.

Every node carries a finite list of states; a state is a vector of integer
occupation numbers, one per named component. The component names of all nodes
together form the index set Gamma of the whole net, and conditioning always
talks about components, never whole nodes, so the names must be globally
unique.

A node's table holds one value per (state, parent configuration) pair. Parent
configurations are flattened into columns in ``itertools.product`` order over
the parent state lists, parents taken in declared order (the last parent
varies fastest). Root nodes have a single column.

The enumeration engine at the bottom materializes the joint value vector
(product of table entries) over the full cartesian product of node states,
which is what total mass, the chi functionals, and validation are computed
from. The product size is capped (default 2**20 joint states, override with
the QBNET_MAX_STATES environment variable).
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import CyclicGraph, InvalidState, StateSpaceTooLarge
from .graph import Arrow, LabelledGraph, classify_nodes, chronological_labelling, is_acyclic

DEFAULT_MAX_STATES = 2 ** 20


def max_states() -> int:
    """Joint-state cap for enumeration, from QBNET_MAX_STATES or the default."""
    raw = os.environ.get("QBNET_MAX_STATES")
    if raw is None:
        return DEFAULT_MAX_STATES
    value = int(raw)
    if value < 1:
        raise ValueError(f"QBNET_MAX_STATES must be positive, got {value}")
    return value


def _as_state(state) -> tuple[int, ...]:
    if isinstance(state, int):
        return (state,)
    return tuple(int(v) for v in state)


class StateSpace:
    """Per-node state lists plus the global component naming."""

    def __init__(
        self,
        components: Mapping[str, Sequence[str]],
        states: Mapping[str, Sequence],
    ):
        if set(components) != set(states):
            raise ValueError("components and states must cover the same nodes")
        self._components = {n: tuple(c) for n, c in components.items()}
        self._states = {}
        for node, slist in states.items():
            fixed = tuple(_as_state(s) for s in slist)
            if not fixed:
                raise ValueError(f"node {node!r} has no states")
            width = len(self._components[node])
            for s in fixed:
                if len(s) != width:
                    raise ValueError(
                        f"node {node!r}: state {s} has {len(s)} entries, expected {width}"
                    )
            if len(set(fixed)) != len(fixed):
                raise ValueError(f"node {node!r} has duplicate states")
            self._states[node] = fixed
        self._owner: dict[str, tuple[str, int]] = {}
        for node, comps in self._components.items():
            for k, alpha in enumerate(comps):
                if alpha in self._owner:
                    raise ValueError(f"component name {alpha!r} is not globally unique")
                self._owner[alpha] = (node, k)
        self._index = {
            node: {s: i for i, s in enumerate(slist)} for node, slist in self._states.items()
        }

    def components(self, node: str) -> tuple[str, ...]:
        return self._components[node]

    def states(self, node: str) -> tuple[tuple[int, ...], ...]:
        return self._states[node]

    def owner(self, alpha: str) -> tuple[str, int]:
        """(node, position) of component alpha."""
        try:
            return self._owner[alpha]
        except KeyError:
            raise KeyError(f"unknown component {alpha!r}") from None

    def has_component(self, alpha: str) -> bool:
        return alpha in self._owner

    def component_values(self, alpha: str) -> tuple[int, ...]:
        """Sorted realizable values of one component."""
        node, k = self.owner(alpha)
        return tuple(sorted({s[k] for s in self._states[node]}))

    def state_index(self, node: str, state) -> int:
        s = _as_state(state)
        try:
            return self._index[node][s]
        except KeyError:
            raise InvalidState(f"{s} is not a state of node {node!r}") from None


@dataclass
class NodeBlock:
    """Everything the net builder needs to know about one node.

    ``table`` may be an array-like of shape (n_states, n_columns) -- a flat
    length-n_states sequence is accepted for root nodes -- or a callable
    ``f(state, parent_states) -> value`` that is tabulated at build time.
    """

    name: str
    states: Sequence
    table: object
    parents: tuple[str, ...] = ()
    components: tuple[str, ...] | None = None

    def __post_init__(self):
        self.states = [_as_state(s) for s in self.states]
        self.parents = tuple(self.parents)
        if self.components is None:
            width = len(self.states[0]) if self.states else 1
            if width == 1:
                self.components = (self.name,)
            else:
                raise ValueError(
                    f"node {self.name!r} has {width} components; explicit names required"
                )
        else:
            self.components = tuple(self.components)


class _Enumeration:
    """Dense joint enumeration over one net (values vector + helpers)."""

    def __init__(self, net: "BaseNet", cap: int):
        self.order = net.node_order()
        sizes = [len(net.space.states(n)) for n in self.order]
        njoint = 1
        for s in sizes:
            njoint *= s
        if njoint > cap:
            raise StateSpaceTooLarge(
                f"{njoint} joint states exceeds the cap of {cap}"
            )
        self.sizes = sizes
        self.njoint = njoint
        self.pos = {n: j for j, n in enumerate(self.order)}
        strides = [1] * len(self.order)
        for j in range(len(self.order) - 2, -1, -1):
            strides[j] = strides[j + 1] * sizes[j + 1]
        self.strides = strides
        flat = np.arange(njoint, dtype=np.int64)
        self._flat = flat

        values = np.ones(njoint, dtype=net.dtype)
        for j, node in enumerate(self.order):
            idx = (flat // strides[j]) % sizes[j]
            parents = net.parents(node)
            if parents:
                pstrides = net._parent_strides(node)
                col = np.zeros(njoint, dtype=np.int64)
                for p, pstride in zip(parents, pstrides):
                    jp = self.pos[p]
                    col += ((flat // strides[jp]) % sizes[jp]) * pstride
            else:
                col = 0
            values = values * net.table(node)[idx, col]
        self.values = values

        ext = [n for n in self.order if n in net.external_nodes]
        self.external_order = tuple(ext)
        if ext:
            group = np.zeros(njoint, dtype=np.int64)
            mult = 1
            for n in reversed(ext):
                j = self.pos[n]
                group += ((flat // strides[j]) % sizes[j]) * mult
                mult *= sizes[j]
            self.ext_group = group
            self.n_ext = mult
        else:
            self.ext_group = np.zeros(njoint, dtype=np.int64)
            self.n_ext = 1

    def node_state_indices(self, node: str) -> np.ndarray:
        j = self.pos[node]
        return (self._flat // self.strides[j]) % self.sizes[j]

    def group_values(self, net: "BaseNet") -> list[tuple[int, ...]]:
        """External component values for each group index, in group order."""
        ext = self.external_order
        sizes = [len(net.space.states(n)) for n in ext]
        ext_strides = [1] * len(ext)
        for j in range(len(ext) - 2, -1, -1):
            ext_strides[j] = ext_strides[j + 1] * sizes[j + 1]
        out = []
        for g in range(self.n_ext):
            vals: list[int] = []
            for n, size, stride in zip(ext, sizes, ext_strides):
                vals.extend(net.space.states(n)[(g // stride) % size])
            out.append(tuple(vals))
        return out

    def component_column(self, net: "BaseNet", alpha: str) -> np.ndarray:
        node, k = net.space.owner(alpha)
        table = np.asarray([s[k] for s in net.space.states(node)], dtype=np.int64)
        return table[self.node_state_indices(node)]


class BaseNet:
    """Graph + state space + one table per node. Treat as immutable."""

    dtype: type = np.float64
    kind = "classical"

    def __init__(self, graph: LabelledGraph, space: StateSpace, tables: Mapping[str, np.ndarray],
                 meta: Mapping[str, str] | None = None, pre_net: bool = False):
        self.graph = graph
        self.space = space
        self.pre_net = bool(pre_net)
        self.meta: dict[str, str] = dict(meta or {})
        self._tables = {}
        for node in graph.nodes:
            if node not in tables:
                raise ValueError(f"missing table for node {node!r}")
            arr = np.asarray(tables[node], dtype=self.dtype)
            n_states = len(space.states(node))
            n_cols = self._n_columns(node)
            if arr.ndim == 1 and n_cols == 1:
                arr = arr.reshape(n_states, 1)
            if arr.shape != (n_states, n_cols):
                raise ValueError(
                    f"node {node!r}: table shape {arr.shape}, expected ({n_states}, {n_cols})"
                )
            arr = arr.copy()
            arr.flags.writeable = False
            self._tables[node] = arr
        if not self.pre_net and not is_acyclic(graph):
            raise CyclicGraph("net graph has a directed cycle (use a pre-net for diagnostics)")
        self._enum_cache: _Enumeration | None = None

    # -- construction -------------------------------------------------------

    @classmethod
    def from_blocks(cls, blocks: Iterable[NodeBlock], meta=None, pre_net=False):
        blocks = list(blocks)
        names = [b.name for b in blocks]
        with_children = {p for b in blocks for p in b.parents}
        arrows = [Arrow(p, b.name) for b in blocks for p in b.parents]
        arrows += [Arrow(n) for n in names if n not in with_children]
        graph = LabelledGraph(names, arrows)
        space = StateSpace(
            {b.name: b.components for b in blocks},
            {b.name: b.states for b in blocks},
        )
        tables = {}
        for b in blocks:
            if callable(b.table):
                tables[b.name] = cls._tabulate(b, blocks, space)
            else:
                tables[b.name] = b.table
        return cls(graph, space, tables, meta=meta, pre_net=pre_net)

    @classmethod
    def _tabulate(cls, block: NodeBlock, blocks: list[NodeBlock], space: StateSpace):
        parent_states = [space.states(p) for p in block.parents]
        n_cols = 1
        for ps in parent_states:
            n_cols *= len(ps)
        arr = np.zeros((len(block.states), n_cols), dtype=cls.dtype)
        for col, combo in enumerate(itertools.product(*parent_states)):
            for row, state in enumerate(block.states):
                arr[row, col] = block.table(state, combo)
        return arr

    def _n_columns(self, node: str) -> int:
        n = 1
        for p in self.graph.parents(node):
            n *= len(self.space.states(p))
        return n

    # -- structure ----------------------------------------------------------

    def node_order(self) -> tuple[str, ...]:
        """Chronological order for acyclic nets, declared order for pre-nets."""
        if self.pre_net and not is_acyclic(self.graph):
            return self.graph.nodes
        return self.chronological

    @property
    def chronological(self) -> tuple[str, ...]:
        if not hasattr(self, "_chron"):
            self._chron = chronological_labelling(self.graph)
        return self._chron

    @property
    def external_nodes(self) -> frozenset:
        if not hasattr(self, "_ext"):
            self._ext = frozenset(classify_nodes(self.graph).external)
        return self._ext

    @property
    def external_components(self) -> tuple[str, ...]:
        """Gamma_ex in canonical order: external nodes chronologically, their
        components in declared order."""
        out = []
        for n in self.node_order():
            if n in self.external_nodes:
                out.extend(self.space.components(n))
        return tuple(out)

    @property
    def internal_components(self) -> tuple[str, ...]:
        out = []
        for n in self.node_order():
            if n not in self.external_nodes:
                out.extend(self.space.components(n))
        return tuple(out)

    @property
    def all_components(self) -> tuple[str, ...]:
        out = []
        for n in self.node_order():
            out.extend(self.space.components(n))
        return tuple(out)

    def parents(self, node: str) -> tuple[str, ...]:
        return self.graph.parents(node)

    def table(self, node: str) -> np.ndarray:
        return self._tables[node]

    def _parent_strides(self, node: str) -> list[int]:
        parents = self.parents(node)
        sizes = [len(self.space.states(p)) for p in parents]
        strides = [1] * len(parents)
        for k in range(len(parents) - 2, -1, -1):
            strides[k] = strides[k + 1] * sizes[k + 1]
        return strides

    def column_index(self, node: str, parent_states: Sequence) -> int:
        parents = self.parents(node)
        if len(parent_states) != len(parents):
            raise ValueError(
                f"node {node!r} has {len(parents)} parents, got {len(parent_states)} states"
            )
        col = 0
        for p, s, stride in zip(parents, parent_states, self._parent_strides(node)):
            col += self.space.state_index(p, s) * stride
        return col

    def entry(self, node: str, state, parent_states: Sequence = ()):
        """One table value, addressed by state values (not indices)."""
        row = self.space.state_index(node, state)
        col = self.column_index(node, parent_states)
        return self._tables[node][row, col]

    # -- joint values -------------------------------------------------------

    def joint_value(self, assignment: Mapping[str, object]):
        """Product of table entries for a full assignment {node: state}."""
        missing = [n for n in self.graph.nodes if n not in assignment]
        if missing:
            raise ValueError(f"assignment missing nodes {missing}")
        total = self.dtype(1)
        for node in self.graph.nodes:
            state = assignment[node]
            pstates = [assignment[p] for p in self.parents(node)]
            total = total * self.entry(node, state, pstates)
        return total

    def enumeration(self) -> _Enumeration:
        if self._enum_cache is None:
            self._enum_cache = _Enumeration(self, max_states())
        return self._enum_cache

    def components_assignment_check(self, assignment: Mapping[str, int]) -> None:
        for alpha in assignment:
            self.space.owner(alpha)  # raises KeyError for unknown names

    def __repr__(self):
        return f"{type(self).__name__}(nodes={list(self.graph.nodes)})"


def filter_mask(net: BaseNet, sets: Mapping[str, Iterable[int]]) -> np.ndarray | None:
    """Boolean mask over the joint enumeration for a componentwise filter.

    ``sets`` maps component names to allowed values (scalars are accepted).
    Returns None when the filter is empty (everything allowed).
    """
    if not sets:
        return None
    en = net.enumeration()
    mask = None
    for alpha, allowed in sets.items():
        col = en.component_column(net, alpha)
        if isinstance(allowed, (int, np.integer)):
            m = col == int(allowed)
        else:
            vals = sorted({int(v) for v in allowed})
            if len(vals) == 1:
                m = col == vals[0]
            else:
                m = np.isin(col, vals)
        mask = m if mask is None else (mask & m)
    return mask
