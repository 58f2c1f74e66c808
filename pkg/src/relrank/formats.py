"""Line-oriented text formats for matroid and table specifications.

Matroid spec::

    # comments and blank lines are ignored
    name: triangle
    elements: a, b, c
    graphic: 3            # or  uniform: k  |  linear_gf2:  |  explicit:
    edge: 0 1             # one per element, in element order
    edge: 1 2
    edge: 2 0

``linear_gf2:`` is followed by one ``column: 101`` line per element and
``explicit:`` by ``independent: {a,b}`` lines.

Table spec::

    elements: a, b
    {} | {} = 0
    {a} | {} = 1
    ...

with one entry per nested pair; ``inf`` is the only spelling of infinity.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .matroid import Matroid, graphic, linear_gf2, uniform
from .sets import ExtendedNat, GroundSet, nested_pairs
from .table import RelRankTable

REPRESENTATIONS = ("uniform", "graphic", "linear_gf2", "explicit")
_LABEL = re.compile(r"^[^\s,{}|=#:]+$")
_ENTRY = re.compile(r"^(\{[^}]*\})\s*\|\s*(\{[^}]*\})\s*=\s*(\S+)$")


class SpecError(ValueError):
    """Malformed specification file."""


def parse_labels(text: str) -> tuple[str, ...]:
    labels = tuple(x.strip() for x in text.split(",") if x.strip())
    for lab in labels:
        if not _LABEL.match(lab):
            raise SpecError(f"bad element label {lab!r}")
    return labels


def parse_set(E: GroundSet, text: str) -> int:
    """``{a,b}`` (or a bare comma list) to a mask; unknown labels raise UnknownLabel."""
    text = text.strip()
    if text.startswith("{"):
        if not text.endswith("}"):
            raise SpecError(f"unterminated set {text!r}")
        text = text[1:-1]
    return E.mask(parse_labels(text))


@dataclass
class MatroidSpec:
    name: str
    ground: GroundSet
    kind: str
    uniform_k: int = 0
    vertices: int = 0
    edges: list[tuple[int, int]] = field(default_factory=list)
    columns: list[str] = field(default_factory=list)
    family: list[int] = field(default_factory=list)

    def build(self) -> Matroid:
        """Construct the matroid; an explicit family may raise AxiomError."""
        labels = self.ground.labels
        if self.kind == "uniform":
            return uniform(self.uniform_k, self.ground.n, labels)
        if self.kind == "graphic":
            return graphic(self.vertices, self.edges, labels)
        if self.kind == "linear_gf2":
            return linear_gf2(self.columns, labels)
        return Matroid.from_family(self.ground, self.family)


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _int(value: str, what: str) -> int:
    try:
        v = int(value)
    except ValueError:
        raise SpecError(f"{what} must be an integer, got {value!r}") from None
    if v < 0:
        raise SpecError(f"{what} must be non-negative")
    return v


def parse_matroid_spec(text: str) -> MatroidSpec:
    name, labels, kind = "", None, None
    k = vertices = 0
    edges, columns, independents = [], [], []
    for lineno, line in _lines(text):
        key, sep, value = line.partition(":")
        if not sep:
            raise SpecError(f"line {lineno}: expected 'key: value', got {line!r}")
        key, value = key.strip(), value.strip()
        if key == "name":
            name = value
        elif key == "elements":
            if labels is not None:
                raise SpecError(f"line {lineno}: elements given twice")
            labels = parse_labels(value)
        elif key in REPRESENTATIONS:
            if kind is not None:
                raise SpecError(f"line {lineno}: more than one representation")
            kind = key
            if key == "uniform":
                k = _int(value, "uniform rank")
            elif key == "graphic":
                vertices = _int(value, "vertex count")
            elif value:
                raise SpecError(f"line {lineno}: '{key}:' takes no value")
        elif key == "edge":
            parts = value.split()
            if len(parts) != 2:
                raise SpecError(f"line {lineno}: an edge needs two endpoints")
            edges.append((_int(parts[0], "endpoint"), _int(parts[1], "endpoint")))
        elif key == "column":
            if not value or set(value) - {"0", "1"}:
                raise SpecError(f"line {lineno}: column must be a 0/1 string")
            columns.append(value)
        elif key == "independent":
            independents.append((lineno, value))
        else:
            raise SpecError(f"line {lineno}: unknown key {key!r}")
    if labels is None:
        raise SpecError("missing 'elements:' line")
    if kind is None:
        raise SpecError("missing representation (uniform, graphic, linear_gf2 or explicit)")
    try:
        E = GroundSet(labels)
    except ValueError as exc:
        raise SpecError(str(exc)) from None
    extras = {"graphic": edges, "linear_gf2": columns, "explicit": independents}
    for other, items in extras.items():
        if items and other != kind:
            raise SpecError(f"{other} data in a {kind} spec")
    spec = MatroidSpec(name, E, kind)
    if kind == "uniform":
        if k > E.n:
            raise SpecError(f"uniform rank {k} exceeds {E.n} elements")
        spec.uniform_k = k
    elif kind == "graphic":
        if len(edges) != E.n:
            raise SpecError(f"{E.n} elements but {len(edges)} edges")
        for u, v in edges:
            if u >= vertices or v >= vertices:
                raise SpecError(f"edge ({u},{v}) has an endpoint outside 0..{vertices - 1}")
        spec.vertices, spec.edges = vertices, edges
    elif kind == "linear_gf2":
        if len(columns) != E.n:
            raise SpecError(f"{E.n} elements but {len(columns)} columns")
        if len({len(c) for c in columns}) > 1:
            raise SpecError("columns have inconsistent lengths")
        spec.columns = columns
    else:
        spec.family = [parse_set(E, value) for _, value in independents]
    return spec


def parse_table_spec(text: str) -> RelRankTable:
    labels = None
    entries: dict[tuple[int, int], ExtendedNat] = {}
    E = None
    for lineno, line in _lines(text):
        if line.startswith("elements:") or line.startswith("elements "):
            if labels is not None:
                raise SpecError(f"line {lineno}: elements given twice")
            labels = parse_labels(line.partition(":")[2])
            try:
                E = GroundSet(labels)
            except ValueError as exc:
                raise SpecError(str(exc)) from None
            continue
        m = _ENTRY.match(line)
        if not m:
            raise SpecError(f"line {lineno}: expected '{{A}} | {{B}} = value', got {line!r}")
        if E is None:
            raise SpecError(f"line {lineno}: entry before 'elements:' line")
        A, B = parse_set(E, m.group(1)), parse_set(E, m.group(2))
        if B & ~A:
            raise SpecError(f"line {lineno}: {E.format(B)} is not a subset of {E.format(A)}")
        if (A, B) in entries:
            raise SpecError(f"line {lineno}: duplicate entry for ({E.format(A)}, {E.format(B)})")
        try:
            entries[A, B] = ExtendedNat.parse(m.group(3))
        except ValueError as exc:
            raise SpecError(f"line {lineno}: {exc}") from None
    if E is None:
        raise SpecError("missing 'elements:' line")
    if E.n > 12:
        raise SpecError("tables are limited to 12 elements")
    for A, B in nested_pairs(E):
        if (A, B) not in entries:
            raise SpecError(f"missing entry for ({E.format(A)}, {E.format(B)})")
    return RelRankTable(E, entries)


def is_table_spec(text: str) -> bool:
    return any(_ENTRY.match(line) for _, line in _lines(text))


def load(path: str | Path) -> MatroidSpec | RelRankTable:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc.strerror}") from None
    return parse_table_spec(text) if is_table_spec(text) else parse_matroid_spec(text)


def format_table(t: RelRankTable) -> str:
    E = t.ground
    lines = ["elements: " + ", ".join(E.labels)]
    lines += [f"{E.format(A)} | {E.format(B)} = {v}" for (A, B), v in t.items()]
    return "\n".join(lines) + "\n"
