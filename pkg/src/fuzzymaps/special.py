"""Component unions: ordered tuples of tagged matrices that all operations
treat componentwise.

The union symbol in this layer is purely structural. A union is a product
of independent systems, one per expert; it is never a set union, and equal
components may legally repeat.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    ComponentCountMismatch,
    EmptyUnion,
    NonSquareCM,
    ShapeMismatch,
)
from .matrices import Matrix, transpose
from .values import (
    OrderPolicy,
    Scalar,
    coerce,
    render_scalar,
    scalar_add,
    scalar_max,
    scalar_min,
    scalar_mul,
)

CM = "CM"    # square component iterated against itself
RM = "RM"    # rectangular component alternated with its transpose

KINDS = (CM, RM)
ALGEBRAS = ("fuzzy", "neutrosophic")
OPS = ("circle", "maxmin", "minmax")

DOMAIN_SIDE = "domain"
RANGE_SIDE = "range"
SIDES = (DOMAIN_SIDE, RANGE_SIDE)


def other_side(side: str) -> str:
    return RANGE_SIDE if side == DOMAIN_SIDE else DOMAIN_SIDE


@dataclass(frozen=True)
class ComponentTag:
    """How one component participates in a run: its iteration kind,
    its value algebra, and the operator used to apply it."""

    kind: str = CM
    algebra: str = "fuzzy"
    op: str = "circle"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown component kind {self.kind!r}")
        if self.algebra not in ALGEBRAS:
            raise ValueError(f"unknown algebra {self.algebra!r}")
        if self.op not in OPS:
            raise ValueError(f"unknown component op {self.op!r}")


class SpecialMatrix:
    """Nonempty ordered union of (Matrix, ComponentTag) components."""

    __slots__ = ("components", "classification")

    def __init__(self, components):
        comps = tuple((m, t) for m, t in components)
        if not comps:
            raise EmptyUnion("a union needs at least one component")
        for idx, (matrix, tag) in enumerate(comps):
            if not isinstance(matrix, Matrix) or not isinstance(tag,
                                                                ComponentTag):
                raise TypeError(
                    f"component {idx + 1} must be (Matrix, ComponentTag)")
            if tag.kind == CM and not matrix.is_square:
                raise NonSquareCM(
                    f"component {idx + 1} is tagged CM but has shape "
                    f"{matrix.rows}x{matrix.cols}")
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "classification", _classify(comps))

    def __setattr__(self, name, value):
        raise AttributeError("SpecialMatrix is immutable")

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __eq__(self, other):
        if not isinstance(other, SpecialMatrix):
            return NotImplemented
        return self.components == other.components

    def __hash__(self):
        return hash(self.components)

    @property
    def matrices(self):
        return tuple(m for m, _ in self.components)

    @property
    def tags(self):
        return tuple(t for _, t in self.components)

    def __repr__(self):
        parts = ", ".join(f"{m.rows}x{m.cols}/{t.kind}"
                          for m, t in self.components)
        return f"SpecialMatrix({self.classification}: {parts})"


def _classify(components) -> str:
    shapes = [m.shape for m, _ in components]
    algebras = {t.algebra for _, t in components}
    if algebras == {"fuzzy"}:
        alg = "fuzzy"
    elif algebras == {"neutrosophic"}:
        alg = "neutrosophic"
    else:
        alg = "fuzzy and neutrosophic"
    squares = [r == c for r, c in shapes]
    if all(squares):
        shape = "square" if len(set(shapes)) == 1 else "mixed square"
    elif not any(squares):
        shape = ("rectangular" if len(set(shapes)) == 1
                 else "mixed rectangular")
    else:
        shape = "mixed matrix"
    return f"special {alg} {shape}"


def make_special(components) -> SpecialMatrix:
    return SpecialMatrix(components)


def classify(m: SpecialMatrix) -> str:
    return m.classification


class SpecialStateVector:
    """One state part per component, plus which space (domain or range)
    the parts currently address. Only RM components distinguish the two
    spaces; for CM components the single node space doubles as both."""

    __slots__ = ("parts", "side")

    def __init__(self, parts, side=DOMAIN_SIDE):
        if side not in SIDES:
            raise ValueError(f"unknown side {side!r}")
        packed = tuple(tuple(coerce(v) for v in part) for part in parts)
        if not packed:
            raise EmptyUnion("a state union needs at least one part")
        for idx, part in enumerate(packed):
            if not part:
                raise ShapeMismatch(f"state part {idx + 1} is empty")
        object.__setattr__(self, "parts", packed)
        object.__setattr__(self, "side", side)

    def __setattr__(self, name, value):
        raise AttributeError("SpecialStateVector is immutable")

    def __len__(self):
        return len(self.parts)

    def __eq__(self, other):
        if not isinstance(other, SpecialStateVector):
            return NotImplemented
        return self.parts == other.parts and self.side == other.side

    def __hash__(self):
        return hash((self.parts, self.side))

    def __repr__(self):
        body = " U ".join(render_part(p) for p in self.parts)
        return f"SpecialStateVector({self.side}: {body})"


def render_part(part) -> str:
    return "[" + " ".join(render_scalar(v) for v in part) + "]"


def make_state(parts, side=DOMAIN_SIDE) -> SpecialStateVector:
    return SpecialStateVector(parts, side)


def plain_transpose(m: SpecialMatrix) -> SpecialMatrix:
    """Transpose every component; tags are preserved."""
    return SpecialMatrix([(transpose(mat), tag) for mat, tag in m])


def special_transpose(m: SpecialMatrix) -> SpecialMatrix:
    """Transpose only the rectangular components; squares pass through.

    This is the transpose a mixed run uses on its return step: square
    components keep multiplying by their own matrix while rectangular
    components flip between their two spaces.
    """
    return SpecialMatrix([
        (mat if mat.is_square else transpose(mat), tag) for mat, tag in m
    ])


def _apply_circle(part, mat: Matrix):
    out = []
    for j in range(mat.cols):
        acc = scalar_mul(part[0], mat.at(0, j))
        for k in range(1, mat.rows):
            acc = scalar_add(acc, scalar_mul(part[k], mat.at(k, j)))
        out.append(acc)
    return tuple(out)


def _apply_maxmin(part, mat: Matrix, policy):
    out = []
    for j in range(mat.cols):
        acc = scalar_min(part[0], mat.at(0, j), policy)
        for k in range(1, mat.rows):
            acc = scalar_max(acc, scalar_min(part[k], mat.at(k, j), policy),
                             policy)
        out.append(acc)
    return tuple(out)


def _apply_minmax(part, mat: Matrix, policy):
    out = []
    for j in range(mat.cols):
        acc = scalar_max(part[0], mat.at(0, j), policy)
        for k in range(1, mat.rows):
            acc = scalar_min(acc, scalar_max(part[k], mat.at(k, j), policy),
                             policy)
        out.append(acc)
    return tuple(out)


def apply_part(part, mat: Matrix, op: str,
               policy=OrderPolicy.BOOK_DEFAULT):
    """Apply one state part against one matrix with the given operator.
    The part length must equal the matrix row count; the result length is
    the column count."""
    if len(part) != mat.rows:
        raise ShapeMismatch(
            f"state length {len(part)} does not match {mat.rows}x{mat.cols}")
    if op == "circle":
        return _apply_circle(part, mat)
    if op == "maxmin":
        return _apply_maxmin(part, mat, policy)
    if op == "minmax":
        return _apply_minmax(part, mat, policy)
    raise ValueError(f"unknown component op {op!r}")


def _result_side(x: SpecialStateVector, m: SpecialMatrix) -> str:
    if any(tag.kind == RM for _, tag in m):
        return other_side(x.side)
    return x.side


def special_apply(x: SpecialStateVector, m: SpecialMatrix, op: str,
                  policy=OrderPolicy.BOOK_DEFAULT) -> SpecialStateVector:
    """Componentwise application of every part against its matrix using one
    shared operator. Returns the raw (un-thresholded) state union."""
    if len(x) != len(m):
        raise ComponentCountMismatch(
            f"state has {len(x)} parts, union has {len(m)} components")
    out = []
    for idx, ((mat, _tag), part) in enumerate(zip(m, x.parts)):
        try:
            out.append(apply_part(part, mat, op, policy))
        except ShapeMismatch as exc:
            raise ShapeMismatch(f"component {idx + 1}: {exc}") from None
    return SpecialStateVector(out, _result_side(x, m))


def special_apply_mixed(x: SpecialStateVector, m: SpecialMatrix,
                        policy=OrderPolicy.BOOK_DEFAULT
                        ) -> SpecialStateVector:
    """Componentwise application where each component uses its own tagged
    operator (circle, maxmin, or minmax)."""
    if len(x) != len(m):
        raise ComponentCountMismatch(
            f"state has {len(x)} parts, union has {len(m)} components")
    out = []
    for idx, ((mat, tag), part) in enumerate(zip(m, x.parts)):
        try:
            out.append(apply_part(part, mat, tag.op, policy))
        except ShapeMismatch as exc:
            raise ShapeMismatch(f"component {idx + 1}: {exc}") from None
    return SpecialStateVector(out, _result_side(x, m))
