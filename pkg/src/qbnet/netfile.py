"""Text formats for nets and evidence-case tables.

Net files are line-oriented UTF-8 with LF endings:

    qbnet 1
    kind quantum
    meta catalog fig19-loop
    meta theta_u pi/5
    node psi
    components psi._minus psi._plus
    states (0,1) (1,0)
    parents
    entry (0,1) [0.5,0.5]
    entry (1,0) [0.70710678118654746,0]
    node z.minus
    ...

States are always written as parenthesized occupation tuples. Each entry
line names the node state, then one state per declared parent, then the
value: a plain number for classical nets or a [re,im] pair for quantum
ones. Zero entries are omitted. Numbers use 17 significant digits so a
double round-trips exactly; simple pi fractions like pi/5 or -3*pi/4 are
accepted wherever a number is, and meta values are kept verbatim, so
symbolic angles survive emission unchanged.

Evidence-case files are CSV: a header row of "case" plus component names,
then one row per case. A blank cell means unconstrained, an integer is a
sharp value, and a braced list like {0,1} is a fuzzy value set.

Both emitters are deterministic: the same net or case list always yields
byte-identical text.
"""

from __future__ import annotations

import csv
import io
import re
import math
from typing import Iterable, Sequence

import numpy as np

from .catalog import EvidenceCase
from .classical import CBNet
from .core import NodeBlock
from .errors import CyclicGraph, ParseError
from .quantum import QBNet

FORMAT_HEADER = "qbnet 1"

_PI_RE = re.compile(r"^([+-]?)(?:(\d+)\*)?pi(?:/(\d+))?$")


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def _fmt_value(value, quantum: bool) -> str:
    if quantum:
        z = complex(value)
        return f"[{_fmt(z.real)},{_fmt(z.imag)}]"
    return _fmt(float(value))


def _fmt_state(state: Sequence[int]) -> str:
    return "(" + ",".join(str(int(x)) for x in state) + ")"


def parse_number(token: str, line=None) -> float:
    """A decimal number or a simple pi fraction such as -3*pi/4."""
    try:
        return float(token)
    except ValueError:
        pass
    m = _PI_RE.match(token)
    if m:
        sign = -1.0 if m.group(1) == "-" else 1.0
        num = int(m.group(2)) if m.group(2) else 1
        den = int(m.group(3)) if m.group(3) else 1
        if den == 0:
            raise ParseError(f"zero denominator in {token!r}", line)
        return sign * num * math.pi / den
    raise ParseError(f"not a number: {token!r}", line)


def _parse_value(token: str, quantum: bool, line):
    if token.startswith("["):
        if not token.endswith("]"):
            raise ParseError(f"unterminated value pair {token!r}", line)
        parts = token[1:-1].split(",")
        if len(parts) != 2:
            raise ParseError(f"value pair needs two numbers, got {token!r}", line)
        return complex(parse_number(parts[0], line), parse_number(parts[1], line))
    value = parse_number(token, line)
    return complex(value, 0.0) if quantum else value


def _parse_state(token: str, line) -> tuple[int, ...]:
    if not (token.startswith("(") and token.endswith(")")):
        raise ParseError(f"state must look like (0,1), got {token!r}", line)
    body = token[1:-1]
    if not body:
        raise ParseError("empty state tuple", line)
    try:
        return tuple(int(x) for x in body.split(","))
    except ValueError:
        raise ParseError(f"non-integer occupation in {token!r}", line)


# ---------------------------------------------------------------------------
# Net emission


def emit_net(net) -> str:
    """Serialize a net; parse_net(emit_net(net)) rebuilds identical tables."""
    quantum = isinstance(net, QBNet)
    lines = [FORMAT_HEADER, f"kind {'quantum' if quantum else 'classical'}"]
    if getattr(net, "pre_net", False):
        lines.append("pre-net true")
    for key in sorted(net.meta):
        value = str(net.meta[key])
        lines.append(f"meta {key} {value}" if value else f"meta {key}")
    order = net.chronological if not getattr(net, "pre_net", False) else tuple(net.graph.nodes)
    for node in order:
        states = net.space.states(node)
        parents = net.parents(node)
        lines.append(f"node {node}")
        lines.append("components " + " ".join(net.space.components(node)))
        lines.append("states " + " ".join(_fmt_state(s) for s in states))
        lines.append(("parents " + " ".join(parents)).rstrip())
        table = net.table(node)
        parent_states = [net.space.states(p) for p in parents]
        columns = [()]
        for ps in parent_states:
            columns = [c + (s,) for c in columns for s in ps]
        for col, combo in enumerate(columns):
            for row, state in enumerate(states):
                value = table[row, col]
                if value == 0:
                    continue
                tokens = [_fmt_state(state)]
                tokens += [_fmt_state(s) for s in combo]
                tokens.append(_fmt_value(value, quantum))
                lines.append("entry " + " ".join(tokens))
    return "\n".join(lines) + "\n"


def write_net(net, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(emit_net(net))


# ---------------------------------------------------------------------------
# Net parsing


class _NodeDraft:
    def __init__(self, name, line):
        self.name = name
        self.line = line
        self.components = None
        self.states = None
        self.parents = None
        self.entries = []  # (state, parent states, value, line)


def parse_net(text: str):
    """Build a net from file text; structural mistakes raise ParseError."""
    drafts: list[_NodeDraft] = []
    by_name: dict[str, _NodeDraft] = {}
    kind = None
    pre_net = False
    meta: dict[str, str] = {}
    current: _NodeDraft | None = None
    saw_header = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not saw_header:
            if line != FORMAT_HEADER:
                raise ParseError(f"expected {FORMAT_HEADER!r} first", lineno)
            saw_header = True
            continue
        tokens = line.split()
        word = tokens[0]
        if word == "kind":
            if len(tokens) != 2 or tokens[1] not in ("classical", "quantum"):
                raise ParseError("kind must be classical or quantum", lineno)
            if kind is not None:
                raise ParseError("duplicate kind line", lineno)
            kind = tokens[1]
        elif word == "pre-net":
            pre_net = len(tokens) > 1 and tokens[1] == "true"
        elif word == "meta":
            if len(tokens) < 2:
                raise ParseError("meta needs a key", lineno)
            meta[tokens[1]] = line.split(None, 2)[2] if len(tokens) > 2 else ""
        elif word == "node":
            if len(tokens) != 2:
                raise ParseError("node needs exactly one name", lineno)
            if tokens[1] in by_name:
                raise ParseError(f"duplicate node {tokens[1]!r}", lineno)
            current = _NodeDraft(tokens[1], lineno)
            drafts.append(current)
            by_name[tokens[1]] = current
        elif word in ("components", "states", "parents", "entry"):
            if current is None:
                raise ParseError(f"{word} before any node line", lineno)
            if word == "components":
                if current.components is not None:
                    raise ParseError("duplicate components line", lineno)
                if len(tokens) < 2:
                    raise ParseError("components line needs at least one name", lineno)
                current.components = tuple(tokens[1:])
            elif word == "states":
                if current.states is not None:
                    raise ParseError("duplicate states line", lineno)
                current.states = tuple(_parse_state(t, lineno) for t in tokens[1:])
                if not current.states:
                    raise ParseError("states line needs at least one state", lineno)
            elif word == "parents":
                if current.parents is not None:
                    raise ParseError("duplicate parents line", lineno)
                current.parents = tuple(tokens[1:])
            else:
                if len(tokens) < 3:
                    raise ParseError("entry needs a state and a value", lineno)
                state = _parse_state(tokens[1], lineno)
                combo = tuple(_parse_state(t, lineno) for t in tokens[2:-1])
                value = _parse_value(tokens[-1], kind == "quantum", lineno)
                current.entries.append((state, combo, value, lineno))
        else:
            raise ParseError(f"unknown directive {word!r}", lineno)

    if kind is None:
        raise ParseError("missing kind line", len(text.splitlines()) or 1)
    if not drafts:
        raise ParseError("no nodes declared", len(text.splitlines()) or 1)

    for draft in drafts:
        if draft.states is None:
            raise ParseError(f"node {draft.name!r} has no states line", draft.line)
        if draft.parents is None:
            raise ParseError(f"node {draft.name!r} has no parents line", draft.line)
        width = {len(s) for s in draft.states}
        if len(width) != 1:
            raise ParseError(f"node {draft.name!r} mixes state widths", draft.line)
        if draft.components is not None and len(draft.components) != width.pop():
            raise ParseError(
                f"node {draft.name!r}: component count does not match state width",
                draft.line,
            )
        for parent in draft.parents:
            if parent not in by_name:
                raise ParseError(
                    f"node {draft.name!r} lists unknown parent {parent!r}", draft.line
                )

    blocks = []
    for draft in drafts:
        parent_states = [by_name[p].states for p in draft.parents]
        n_cols = 1
        for ps in parent_states:
            n_cols *= len(ps)
        dtype = complex if kind == "quantum" else float
        table = np.zeros((len(draft.states), n_cols), dtype=dtype)
        state_pos = {s: i for i, s in enumerate(draft.states)}
        pos_maps = [{s: i for i, s in enumerate(ps)} for ps in parent_states]
        strides = [1] * len(parent_states)
        for i in range(len(parent_states) - 2, -1, -1):
            strides[i] = strides[i + 1] * len(parent_states[i + 1])
        filled = set()
        for state, combo, value, lineno in draft.entries:
            if state not in state_pos:
                raise ParseError(
                    f"entry state {_fmt_state(state)} not in the states line", lineno
                )
            if len(combo) != len(parent_states):
                raise ParseError(
                    f"entry needs {len(parent_states)} parent states, got {len(combo)}",
                    lineno,
                )
            col = 0
            for k, s in enumerate(combo):
                if s not in pos_maps[k]:
                    raise ParseError(
                        f"parent state {_fmt_state(s)} not declared for "
                        f"{draft.parents[k]!r}",
                        lineno,
                    )
                col += pos_maps[k][s] * strides[k]
            key = (state_pos[state], col)
            if key in filled:
                raise ParseError("duplicate entry", lineno)
            filled.add(key)
            table[key] = value
        blocks.append(
            NodeBlock(
                draft.name,
                list(draft.states),
                table,
                parents=draft.parents,
                components=draft.components,
            )
        )

    if kind == "quantum":
        return QBNet.from_blocks(blocks, meta=meta)
    try:
        return CBNet.from_blocks(blocks, meta=meta, pre_net=pre_net)
    except CyclicGraph:
        # keep the net constructible so the validator can report the cycle
        return CBNet.from_blocks(blocks, meta=meta, pre_net=True)


def read_net(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_net(fh.read())


# ---------------------------------------------------------------------------
# Evidence-case files


def emit_cases(components: Sequence[str], cases: Iterable[EvidenceCase]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["case", *components])
    for case in cases:
        fixed = dict(case.constraints)
        row = [str(case.number)]
        for alpha in components:
            if alpha not in fixed:
                row.append("")
            elif isinstance(fixed[alpha], (set, frozenset)):
                row.append("{" + ",".join(str(v) for v in sorted(fixed[alpha])) + "}")
            else:
                row.append(str(fixed[alpha]))
        writer.writerow(row)
    return buf.getvalue()


def write_cases(components, cases, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(emit_cases(components, cases))


def parse_cases(text: str) -> tuple[tuple[str, ...], list[EvidenceCase]]:
    """Header components and the parsed cases, in file order."""
    rows = list(csv.reader(io.StringIO(text)))
    rows = [(i + 1, r) for i, r in enumerate(rows) if any(cell.strip() for cell in r)]
    if not rows:
        return (), []
    header_line, header = rows[0]
    if not header or header[0].strip() != "case":
        raise ParseError("header row must start with 'case'", header_line)
    components = tuple(c.strip() for c in header[1:])
    if any(not c for c in components):
        raise ParseError("empty component name in header", header_line)
    cases = []
    for lineno, row in rows[1:]:
        if len(row) > len(components) + 1:
            raise ParseError("more cells than header columns", lineno)
        try:
            number = int(row[0])
        except ValueError:
            raise ParseError(f"case number must be an integer, got {row[0]!r}", lineno)
        constraints = []
        for alpha, cell in zip(components, row[1:]):
            cell = cell.strip()
            if not cell:
                continue
            if cell.startswith("{"):
                if not cell.endswith("}"):
                    raise ParseError(f"unterminated value set {cell!r}", lineno)
                try:
                    values = frozenset(int(x) for x in cell[1:-1].split(","))
                except ValueError:
                    raise ParseError(f"bad value set {cell!r}", lineno)
                if not values:
                    raise ParseError("empty value set", lineno)
                constraints.append((alpha, values))
            else:
                try:
                    constraints.append((alpha, int(cell)))
                except ValueError:
                    raise ParseError(f"cell must be blank, int, or {{...}}: {cell!r}", lineno)
        cases.append(EvidenceCase(number, tuple(constraints)))
    return components, cases


def read_cases(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_cases(fh.read())
