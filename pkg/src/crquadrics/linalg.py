"""Exact dense linear algebra over Q(i).

Rank, right nullspace, determinant and linear solving via Gauss-Jordan
elimination with first-nonzero pivoting in row order.  Divisions happen
only by pivots and are exact in the field, so every result is canonical:
the nullspace is the reduced-echelon parametrization (free columns
ascending, each basis vector scaled to a unit leading entry) and
``solve`` picks free variables equal to zero.

Matrices here are small (at most a few hundred columns), so no sparse
storage is used; the elimination inner loop does skip zero entries of the
pivot row, which matters for the very sparse CR coefficient matrices.
"""

from __future__ import annotations

from .errors import DimensionMismatch
from .scalars import GaussianRational, ONE, ZERO, as_scalar


class ExactMatrix:
    """Immutable dense matrix of GaussianRational entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries, cols=None):
        rows = [tuple(as_scalar(x) for x in row) for row in entries]
        if rows:
            ncols = len(rows[0])
            if any(len(r) != ncols for r in rows):
                raise DimensionMismatch("ragged rows")
        else:
            if cols is None:
                raise DimensionMismatch("empty matrix needs an explicit column count")
            ncols = cols
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", ncols)
        object.__setattr__(self, "entries", tuple(rows))

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    @classmethod
    def identity(cls, n):
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows, cols):
        return cls([[ZERO] * cols for _ in range(rows)], cols=cols)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.entries == other.entries and self.cols == other.cols

    def __hash__(self):
        return hash((self.cols, self.entries))

    def __getitem__(self, rc):
        r, c = rc
        return self.entries[r][c]

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols})"

    def to_lists(self):
        return [[x for x in row] for row in self.entries]

    # -- algebra ----------------------------------------------------------

    def matmul(self, other):
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.cols} != {other.rows}")
        out = []
        bt = list(zip(*other.entries)) if other.entries else []
        for row in self.entries:
            out.append(
                [
                    sum((row[k] * col[k] for k in range(self.cols) if row[k]), ZERO)
                    for col in bt
                ]
            )
        return ExactMatrix(out, cols=other.cols)

    def conjugate_transpose(self):
        return ExactMatrix(
            [[self.entries[r][c].conjugate() for r in range(self.rows)] for c in range(self.cols)],
            cols=self.rows,
        )

    def transpose(self):
        return ExactMatrix(
            [[self.entries[r][c] for r in range(self.rows)] for c in range(self.cols)],
            cols=self.rows,
        )

    def apply(self, vector):
        if len(vector) != self.cols:
            raise DimensionMismatch(f"vector length {len(vector)} != {self.cols}")
        vec = [as_scalar(v) for v in vector]
        return tuple(
            sum((row[k] * vec[k] for k in range(self.cols) if row[k]), ZERO)
            for row in self.entries
        )

    def stack(self, other):
        if self.cols != other.cols:
            raise DimensionMismatch("column counts differ")
        return ExactMatrix(list(self.entries) + list(other.entries), cols=self.cols)


def _gauss_jordan(rows, pivot_cols_limit):
    """In-place reduced row echelon over the first `pivot_cols_limit` columns.

    Rows are lists of GaussianRational; pivot search is first nonzero in
    row order.  Returns the list of pivot column indices.
    """
    nrows = len(rows)
    width = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(pivot_cols_limit):
        prow = None
        for i in range(r, nrows):
            if rows[i][c]:
                prow = i
                break
        if prow is None:
            continue
        if prow != r:
            rows[r], rows[prow] = rows[prow], rows[r]
        pv = rows[r][c]
        if pv != ONE:
            inv = ONE / pv
            prowdata = rows[r]
            for j in range(c, width):
                if prowdata[j]:
                    prowdata[j] = prowdata[j] * inv
        pivnz = [(j, rows[r][j]) for j in range(c, width) if rows[r][j]]
        for i in range(nrows):
            if i == r:
                continue
            f = rows[i][c]
            if f:
                rowdata = rows[i]
                for j, v in pivnz:
                    rowdata[j] = rowdata[j] - f * v
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def rref(matrix):
    """Reduced row echelon form and pivot columns."""
    rows = [list(row) for row in matrix.entries]
    pivots = _gauss_jordan(rows, matrix.cols)
    return ExactMatrix(rows, cols=matrix.cols), pivots


def rank(matrix):
    """Exact rank over Q(i)."""
    rows = [list(row) for row in matrix.entries]
    return len(_gauss_jordan(rows, matrix.cols))


def nullspace(matrix):
    """Canonical basis of the right kernel.

    One vector per free column, free columns ascending, each vector scaled
    so that its first nonzero entry is 1.  Basis size = cols - rank.
    """
    rows = [list(row) for row in matrix.entries]
    pivots = _gauss_jordan(rows, matrix.cols)
    pivot_set = set(pivots)
    basis = []
    for free in range(matrix.cols):
        if free in pivot_set:
            continue
        v = [ZERO] * matrix.cols
        v[free] = ONE
        for i, p in enumerate(pivots):
            if rows[i][free]:
                v[p] = -rows[i][free]
        lead = next(x for x in v if x)
        if lead != ONE:
            inv = ONE / lead
            v = [x * inv if x else ZERO for x in v]
        basis.append(tuple(v))
    return basis


def solve(matrix, rhs):
    """One exact solution of M x = b with free variables set to zero.

    Returns None when the system is inconsistent.
    """
    if len(rhs) != matrix.rows:
        raise DimensionMismatch(f"rhs length {len(rhs)} != {matrix.rows}")
    rhs = [as_scalar(b) for b in rhs]
    rows = [list(row) + [rhs[i]] for i, row in enumerate(matrix.entries)]
    if not rows:
        return tuple()
    pivots = _gauss_jordan(rows, matrix.cols)
    for i in range(len(pivots), matrix.rows):
        if rows[i][matrix.cols]:
            return None
    x = [ZERO] * matrix.cols
    for i, p in enumerate(pivots):
        x[p] = rows[i][matrix.cols]
    return tuple(x)


def determinant(matrix):
    """Exact determinant of a square matrix."""
    if matrix.rows != matrix.cols:
        raise DimensionMismatch("determinant needs a square matrix")
    n = matrix.rows
    rows = [list(row) for row in matrix.entries]
    det = ONE
    for c in range(n):
        prow = None
        for i in range(c, n):
            if rows[i][c]:
                prow = i
                break
        if prow is None:
            return ZERO
        if prow != c:
            rows[c], rows[prow] = rows[prow], rows[c]
            det = -det
        pv = rows[c][c]
        det = det * pv
        inv = ONE / pv
        pivnz = [(j, rows[c][j] * inv) for j in range(c + 1, n) if rows[c][j]]
        for i in range(c + 1, n):
            f = rows[i][c]
            if f:
                rowdata = rows[i]
                for j, v in pivnz:
                    rowdata[j] = rowdata[j] - f * v
    return det


def stack_all(matrices):
    """Vertical stack of matrices with equal column counts."""
    if not matrices:
        raise DimensionMismatch("nothing to stack")
    cols = matrices[0].cols
    rows = []
    for m in matrices:
        if m.cols != cols:
            raise DimensionMismatch("column counts differ")
        rows.extend(m.entries)
    return ExactMatrix(rows, cols=cols)


def vectors_matrix(vectors, cols):
    """Rows-from-vectors helper (used to rank-check bases)."""
    return ExactMatrix([list(v) for v in vectors], cols=cols)


def is_zero_vector(v):
    return all(not x for x in v)


def scalar_vector(c, v):
    c = as_scalar(c)
    return tuple(c * x for x in v)
