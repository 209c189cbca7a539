"""Exact inference for classical and quantum nets over labelled DAGs.

The working pieces live in submodules: ``graph`` (arrows, labelling),
``classical`` and ``quantum`` (net semantics and conditionals), ``fuzzy``
(set-valued queries), ``pathsum`` (path enumeration oracle), ``spin``
(spin-half kinematics), ``catalog`` (ready-made nets and the evidence-case
runner), ``lattice`` (single-particle box propagation), ``netfile`` (text
formats), and ``cli`` (the qbnet command). The names below cover routine
use; reach into the submodules for the rest.
"""

from .catalog import build, list_entries
from .classical import CBNet, chi_classical, classical_conditional, coarsen, total_mass, validate
from .core import NodeBlock
from .errors import (
    ContradictoryEvidence,
    CyclicGraph,
    InvalidParams,
    ParseError,
    QBNetError,
    StateSpaceTooLarge,
)
from .graph import Arrow, LabelledGraph, chronological_labelling, classify_nodes, is_acyclic
from .netfile import emit_net, parse_net, read_net, write_net
from .pathsum import feynman_integral, pathsum_conditional
from .quantum import QBNet, chi, f_qna, parent_cb_net, quantum_conditional, validate_quantum

__version__ = "0.1.0"

__all__ = [
    "Arrow",
    "CBNet",
    "ContradictoryEvidence",
    "CyclicGraph",
    "InvalidParams",
    "LabelledGraph",
    "NodeBlock",
    "ParseError",
    "QBNet",
    "QBNetError",
    "StateSpaceTooLarge",
    "build",
    "chi",
    "chi_classical",
    "chronological_labelling",
    "classical_conditional",
    "classify_nodes",
    "coarsen",
    "emit_net",
    "f_qna",
    "feynman_integral",
    "is_acyclic",
    "list_entries",
    "parent_cb_net",
    "parse_net",
    "pathsum_conditional",
    "quantum_conditional",
    "read_net",
    "total_mass",
    "validate",
    "validate_quantum",
    "write_net",
    "__version__",
]
