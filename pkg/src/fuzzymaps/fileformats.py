"""Plain-text file formats: model files, input vector files, bare
matrix grids. Line-oriented; `#` starts a comment; blank lines are
ignored everywhere.

Model file:

    model SFCM optional free-text name
    component 1 CM fuzzy circle tri 5x5
    rows c1 c2 c3 c4 c5
    expert expert 1
    0 1 0 0 -1
    ...four more rows...
    component 2 ...
    end

`rows`/`cols`/`expert` lines are optional per component (cols only for
RM components); serialization always writes them, so a file round-trips
parse -> serialize -> parse to the identical model.

Vector file, one line per component, every line on the same side:

    domain 0 1 0 0 0
    domain 1 0 0 0 1

Matrix file: rows of scalar tokens, nothing else.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError
from .matrices import Matrix
from .models import Model, ModelClass, build_model
from .special import (
    CM,
    ComponentTag,
    KINDS,
    OPS,
    RM,
    SIDES,
    SpecialStateVector,
)
from .values import ValueDomain, parse_scalar, render_scalar


@dataclass(frozen=True)
class ModelFile:
    """A parsed model file: the model plus its file-level name."""

    name: str
    model: Model


def _lines(text):
    """Significant (lineno, content) pairs; comments and blanks dropped."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].rstrip()
        if body.strip():
            out.append((lineno, body.strip()))
    return out


def _scalar_row(line, lineno, expected, where):
    tokens = line.split()
    if len(tokens) != expected:
        raise ParseError(
            f"{where}: expected {expected} entries, got {len(tokens)}",
            line=lineno)
    out = []
    for token in tokens:
        try:
            out.append(parse_scalar(token))
        except ParseError as exc:
            raise ParseError(exc.message, line=lineno,
                             col=line.index(token) + 1) from None
    return out


def _parse_size(token, lineno):
    parts = token.lower().split("x")
    if len(parts) != 2:
        raise ParseError(f"bad size {token!r}, expected RxC", line=lineno)
    try:
        rows, cols = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError(f"bad size {token!r}, expected RxC",
                         line=lineno) from None
    if rows < 1 or cols < 1:
        raise ParseError(f"size {token!r} must be positive", line=lineno)
    return rows, cols


@dataclass(frozen=True)
class _RawComponent:
    tag: ComponentTag
    rows: int
    cols: int
    grid: tuple
    row_labels: tuple  # or None
    col_labels: tuple  # or None
    expert: str  # or None


@dataclass(frozen=True)
class ParsedStructure:
    """Model file contents before class validation, so callers can report
    every diagnostic instead of stopping at the first."""

    model_class: ModelClass
    name: str
    components: tuple  # of (Matrix, ComponentTag)
    labels: tuple  # per component, or None entries
    experts: tuple  # per component, or None entries


def parse_model_structure(text: str) -> ParsedStructure:
    lines = _lines(text)
    if not lines:
        raise ParseError("empty model file", line=1)
    pos = 0
    lineno, header = lines[pos]
    head_tokens = header.split()
    if head_tokens[0].lower() != "model" or len(head_tokens) < 2:
        raise ParseError("expected `model <class> [name]` header",
                         line=lineno)
    try:
        model_class = ModelClass.parse(head_tokens[1])
    except ValueError as exc:
        raise ParseError(str(exc), line=lineno) from None
    name = " ".join(head_tokens[2:])
    pos += 1

    components, labels, experts = [], [], []
    while pos < len(lines):
        lineno, line = lines[pos]
        tokens = line.split()
        if tokens[0].lower() == "end":
            pos += 1
            if pos < len(lines):
                extra_lineno = lines[pos][0]
                raise ParseError("content after `end`", line=extra_lineno)
            break
        if tokens[0].lower() != "component":
            raise ParseError(
                f"expected `component` or `end`, got {tokens[0]!r}",
                line=lineno)
        if len(tokens) != 7:
            raise ParseError(
                "expected `component <index> <kind> <algebra> <op> "
                "<domain> <RxC>`", line=lineno)
        try:
            index = int(tokens[1])
        except ValueError:
            raise ParseError(f"bad component index {tokens[1]!r}",
                             line=lineno) from None
        if index != len(components) + 1:
            raise ParseError(
                f"component index {index} out of order, expected "
                f"{len(components) + 1}", line=lineno)
        kind = tokens[2].upper()
        if kind not in KINDS:
            raise ParseError(f"unknown component kind {tokens[2]!r}",
                             line=lineno)
        algebra = tokens[3].lower()
        if algebra not in ("fuzzy", "neutrosophic"):
            raise ParseError(f"unknown algebra {tokens[3]!r}", line=lineno)
        op = tokens[4].lower()
        if op not in OPS:
            raise ParseError(f"unknown operator {tokens[4]!r}", line=lineno)
        try:
            domain = ValueDomain.parse(tokens[5].lower())
        except ParseError as exc:
            raise ParseError(exc.message, line=lineno) from None
        rows, cols = _parse_size(tokens[6], lineno)
        pos += 1

        row_labels = col_labels = None
        expert = None
        while pos < len(lines):
            lineno, line = lines[pos]
            head = line.split(None, 1)[0].lower()
            if head == "rows":
                names = tuple(line.split()[1:])
                if len(names) != rows:
                    raise ParseError(
                        f"{len(names)} row labels for {rows} rows",
                        line=lineno)
                row_labels = names
            elif head == "cols":
                if kind == CM:
                    raise ParseError(
                        "cols labels only apply to RM components",
                        line=lineno)
                names = tuple(line.split()[1:])
                if len(names) != cols:
                    raise ParseError(
                        f"{len(names)} column labels for {cols} columns",
                        line=lineno)
                col_labels = names
            elif head == "expert":
                rest = line.split(None, 1)
                expert = rest[1] if len(rest) > 1 else ""
            else:
                break
            pos += 1

        grid = []
        for _ in range(rows):
            if pos >= len(lines):
                raise ParseError(
                    f"component {index}: matrix truncated, expected "
                    f"{rows} rows", line=lines[-1][0])
            lineno, line = lines[pos]
            grid.append(_scalar_row(line, lineno, cols,
                                    f"component {index}"))
            pos += 1
        try:
            matrix = Matrix.from_rows(grid, domain=domain)
        except Exception as exc:
            raise ParseError(f"component {index}: {exc}",
                             line=lineno) from None
        tag = ComponentTag(kind=kind, algebra=algebra, op=op)
        components.append((matrix, tag))
        if kind == CM:
            labels.append((row_labels,) if row_labels else None)
        elif row_labels or col_labels:
            labels.append((
                row_labels or tuple(f"d{i + 1}" for i in range(rows)),
                col_labels or tuple(f"r{j + 1}" for j in range(cols))))
        else:
            labels.append(None)
        experts.append(expert)
    else:
        raise ParseError("missing `end` terminator", line=lines[-1][0])

    if not components:
        raise ParseError("model file has no components", line=lines[0][0])
    return ParsedStructure(
        model_class=model_class, name=name, components=tuple(components),
        labels=tuple(labels), experts=tuple(experts))


def parse_model_text(text: str) -> ModelFile:
    """Parse and fully validate a model file."""
    raw = parse_model_structure(text)
    experts = None
    if any(e is not None for e in raw.experts):
        experts = tuple(
            e if e is not None else f"expert {i + 1}"
            for i, e in enumerate(raw.experts))
    model = build_model(raw.model_class, raw.components,
                        labels=raw.labels, experts=experts)
    return ModelFile(name=raw.name, model=model)


def serialize_model(model, name: str = "") -> str:
    """Canonical text form; labels and expert lines are always written."""
    if isinstance(model, ModelFile):
        name = model.name
        model = model.model
    out = [f"model {model.model_class.value}" + (f" {name}" if name else "")]
    for idx, (mat, tag) in enumerate(model.matrix):
        out.append(f"component {idx + 1} {tag.kind} {tag.algebra} "
                   f"{tag.op} {mat.domain.value} {mat.rows}x{mat.cols}")
        group = model.labels[idx]
        out.append("rows " + " ".join(group[0]))
        if tag.kind == RM:
            out.append("cols " + " ".join(group[1]))
        out.append(f"expert {model.experts[idx]}")
        for i in range(mat.rows):
            out.append(" ".join(render_scalar(v) for v in mat.row(i)))
    out.append("end")
    return "\n".join(out) + "\n"


def parse_vector_text(text: str) -> SpecialStateVector:
    lines = _lines(text)
    if not lines:
        raise ParseError("empty vector file", line=1)
    side = None
    parts = []
    for lineno, line in lines:
        tokens = line.split()
        tag = tokens[0].lower()
        if tag not in SIDES:
            raise ParseError(
                f"line must start with a side tag (domain|range), "
                f"got {tokens[0]!r}", line=lineno)
        if side is None:
            side = tag
        elif tag != side:
            raise ParseError(
                f"side {tag!r} disagrees with earlier side {side!r}; "
                f"a run is seeded on exactly one side", line=lineno)
        if len(tokens) < 2:
            raise ParseError("side tag with no entries", line=lineno)
        entries = []
        for token in tokens[1:]:
            try:
                entries.append(parse_scalar(token))
            except ParseError as exc:
                raise ParseError(exc.message, line=lineno,
                                 col=line.index(token) + 1) from None
        parts.append(entries)
    return SpecialStateVector(parts, side)


def serialize_vector(state: SpecialStateVector) -> str:
    out = []
    for part in state.parts:
        out.append(state.side + " " +
                   " ".join(render_scalar(v) for v in part))
    return "\n".join(out) + "\n"


def parse_matrix_text(text: str) -> Matrix:
    lines = _lines(text)
    if not lines:
        raise ParseError("empty matrix file", line=1)
    width = len(lines[0][1].split())
    grid = []
    for lineno, line in lines:
        grid.append(_scalar_row(line, lineno, width, "matrix"))
    return Matrix.from_rows(grid, domain=ValueDomain.ANY)


def serialize_matrix(matrix: Matrix) -> str:
    out = []
    for i in range(matrix.rows):
        out.append(" ".join(render_scalar(v) for v in matrix.row(i)))
    return "\n".join(out) + "\n"
