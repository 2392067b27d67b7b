"""Dense matrices over Scalar entries and the binary operators on them:
entrywise Max/Min, the max-min and min-max compositions, ordinary product
and sum, and transpose.

Everything here is tiny (instances in practice are at most 9x9), so storage
is a flat tuple and the operations are straightforward loops.
"""

from __future__ import annotations

from .errors import DomainError, ShapeMismatch
from .values import (
    OrderPolicy,
    Scalar,
    ValueDomain,
    coerce,
    domain_join,
    render_scalar,
    scalar_add,
    scalar_max,
    scalar_min,
    scalar_mul,
)


class Matrix:
    """Immutable rows x cols matrix of Scalars declared over a ValueDomain.

    Entries are checked against the domain's membership predicate at
    construction. Indexing is 0-based.
    """

    __slots__ = ("rows", "cols", "domain", "entries")

    def __init__(self, rows, cols, entries, domain=ValueDomain.ANY):
        rows = int(rows)
        cols = int(cols)
        if rows < 1 or cols < 1:
            raise ShapeMismatch(f"matrix shape {rows}x{cols} is empty")
        cells = tuple(coerce(e) for e in entries)
        if len(cells) != rows * cols:
            raise ShapeMismatch(
                f"{rows}x{cols} matrix needs {rows * cols} entries, "
                f"got {len(cells)}")
        for idx, cell in enumerate(cells):
            if not domain.contains(cell):
                raise DomainError(
                    f"entry ({idx // cols + 1},{idx % cols + 1}) = "
                    f"{render_scalar(cell)} is outside domain {domain.value}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "entries", cells)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def from_rows(cls, rows, domain=ValueDomain.ANY) -> "Matrix":
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ShapeMismatch("matrix needs at least one row and column")
        width = len(rows[0])
        for i, r in enumerate(rows):
            if len(r) != width:
                raise ShapeMismatch(
                    f"row {i + 1} has {len(r)} entries, expected {width}")
        flat = [cell for r in rows for cell in r]
        return cls(len(rows), width, flat, domain)

    def at(self, i, j) -> Scalar:
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j):
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self):
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self):
        return self.rows == self.cols

    @property
    def shape(self):
        return (self.rows, self.cols)

    def with_domain(self, domain: ValueDomain) -> "Matrix":
        return Matrix(self.rows, self.cols, self.entries, domain)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.shape == other.shape and self.domain is other.domain
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.domain, self.entries))

    def __repr__(self):
        body = "; ".join(
            " ".join(render_scalar(c) for c in self.row(i))
            for i in range(self.rows))
        return f"Matrix({self.rows}x{self.cols} {self.domain.value}: {body})"


def row_vector(values, domain=ValueDomain.ANY) -> Matrix:
    values = list(values)
    return Matrix(1, len(values), values, domain)


def col_vector(values, domain=ValueDomain.ANY) -> Matrix:
    values = list(values)
    return Matrix(len(values), 1, values, domain)


def zeros(rows, cols, domain=ValueDomain.ANY) -> Matrix:
    return Matrix(rows, cols, [Scalar(0)] * (rows * cols), domain)


def identity(n, domain=ValueDomain.UNIT) -> Matrix:
    cells = [Scalar(1) if i == j else Scalar(0)
             for i in range(n) for j in range(n)]
    return Matrix(n, n, cells, domain)


def _require_same_shape(a: Matrix, b: Matrix, what):
    if a.shape != b.shape:
        raise ShapeMismatch(
            f"{what} needs equal shapes, got {a.rows}x{a.cols} "
            f"and {b.rows}x{b.cols}")


def _require_inner(a: Matrix, b: Matrix, what):
    if a.cols != b.rows:
        raise ShapeMismatch(
            f"{what} needs cols(A) = rows(B), got {a.rows}x{a.cols} "
            f"and {b.rows}x{b.cols}")


def elementwise_max(a: Matrix, b: Matrix,
                    policy=OrderPolicy.BOOK_DEFAULT) -> Matrix:
    _require_same_shape(a, b, "Max")
    cells = [scalar_max(x, y, policy) for x, y in zip(a.entries, b.entries)]
    return Matrix(a.rows, a.cols, cells, domain_join(a.domain, b.domain))


def elementwise_min(a: Matrix, b: Matrix,
                    policy=OrderPolicy.BOOK_DEFAULT) -> Matrix:
    _require_same_shape(a, b, "Min")
    cells = [scalar_min(x, y, policy) for x, y in zip(a.entries, b.entries)]
    return Matrix(a.rows, a.cols, cells, domain_join(a.domain, b.domain))


def maxmin_compose(p: Matrix, q: Matrix,
                   policy=OrderPolicy.BOOK_DEFAULT) -> Matrix:
    """r_ij = max over k of min(p_ik, q_kj)."""
    _require_inner(p, q, "max-min composition")
    cells = []
    for i in range(p.rows):
        prow = p.row(i)
        for j in range(q.cols):
            acc = scalar_min(prow[0], q.at(0, j), policy)
            for k in range(1, p.cols):
                acc = scalar_max(acc, scalar_min(prow[k], q.at(k, j), policy),
                                 policy)
            cells.append(acc)
    return Matrix(p.rows, q.cols, cells, domain_join(p.domain, q.domain))


def minmax_compose(p: Matrix, q: Matrix,
                   policy=OrderPolicy.BOOK_DEFAULT) -> Matrix:
    """c_ij = min over k of max(p_ik, q_kj)."""
    _require_inner(p, q, "min-max composition")
    cells = []
    for i in range(p.rows):
        prow = p.row(i)
        for j in range(q.cols):
            acc = scalar_max(prow[0], q.at(0, j), policy)
            for k in range(1, p.cols):
                acc = scalar_min(acc, scalar_max(prow[k], q.at(k, j), policy),
                                 policy)
            cells.append(acc)
    return Matrix(p.rows, q.cols, cells, domain_join(p.domain, q.domain))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    """Ordinary row-by-column product. The output carries no domain
    constraint: products routinely escape the input domains."""
    _require_inner(a, b, "product")
    cells = []
    for i in range(a.rows):
        arow = a.row(i)
        for j in range(b.cols):
            acc = scalar_mul(arow[0], b.at(0, j))
            for k in range(1, a.cols):
                acc = scalar_add(acc, scalar_mul(arow[k], b.at(k, j)))
            cells.append(acc)
    return Matrix(a.rows, b.cols, cells, ValueDomain.ANY)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    """Entrywise sum (the combined-map construction). Unconstrained output
    domain: sums of opinions escape {-1,0,1} by design."""
    _require_same_shape(a, b, "sum")
    cells = [scalar_add(x, y) for x, y in zip(a.entries, b.entries)]
    return Matrix(a.rows, a.cols, cells, ValueDomain.ANY)


def transpose(a: Matrix) -> Matrix:
    cells = [a.at(i, j) for j in range(a.cols) for i in range(a.rows)]
    return Matrix(a.cols, a.rows, cells, a.domain)


def vec_mat_maxmin(x: Matrix, a: Matrix,
                   policy=OrderPolicy.BOOK_DEFAULT) -> Matrix:
    """Max-min composition specialized to a 1xn row against an nxm matrix."""
    if x.rows != 1:
        raise ShapeMismatch(f"expected a row vector, got {x.rows}x{x.cols}")
    return maxmin_compose(x, a, policy)
