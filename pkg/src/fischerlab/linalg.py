"""Exact dense linear algebra over the coefficient fields.

The row-reduction inner loop lives in fischerlab._kernels (compiled when
available, pure Python otherwise); this module owns the user-facing matrix
type plus reduced row echelon form, solving, nullspaces, and cokernel
witnesses.  Matrices are immutable and all operations are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import _kernels
from .errors import InconsistentSystemError
from .scalars import FIELD_Q, FIELD_QI, GaussianRational, as_scalar, validate_field


class ExactMatrix:
    """Dense matrix of exact field scalars, stored row-major."""

    __slots__ = ("rows", "cols", "field", "_entries")

    def __init__(self, rows, cols, entries, field=FIELD_Q):
        validate_field(field)
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        entries = tuple(as_scalar(e, field) for e in entries)
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "_entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    @classmethod
    def from_rows(cls, rows_data, field=FIELD_Q):
        rows_data = [list(r) for r in rows_data]
        rows = len(rows_data)
        cols = len(rows_data[0]) if rows else 0
        if any(len(r) != cols for r in rows_data):
            raise ValueError("ragged rows")
        return cls(rows, cols, [e for r in rows_data for e in r], field)

    @classmethod
    def from_columns(cls, columns, rows=None, field=FIELD_Q):
        columns = [list(c) for c in columns]
        if rows is None:
            if not columns:
                raise ValueError("rows must be given for a matrix with no columns")
            rows = len(columns[0])
        if any(len(c) != rows for c in columns):
            raise ValueError("ragged columns")
        entries = [columns[j][i] for i in range(rows) for j in range(len(columns))]
        return cls(rows, len(columns), entries, field)

    @classmethod
    def identity(cls, n, field=FIELD_Q):
        entries = [1 if i == j else 0 for i in range(n) for j in range(n)]
        return cls(n, n, entries, field)

    def entry(self, i, j):
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"entry ({i}, {j}) out of range")
        return self._entries[i * self.cols + j]

    def row(self, i):
        return self._entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j):
        return tuple(self._entries[i * self.cols + j] for i in range(self.rows))

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.field == other.field
            and self._entries == other._entries
        )

    def mul_vector(self, vec):
        vec = [as_scalar(v, self.field) for v in vec]
        if len(vec) != self.cols:
            raise ValueError(f"vector length {len(vec)} does not match cols {self.cols}")
        zero = as_scalar(0, self.field)
        out = []
        for i in range(self.rows):
            acc = zero
            base = i * self.cols
            for j in range(self.cols):
                acc = acc + self._entries[base + j] * vec[j]
            out.append(acc)
        return out

    def __matmul__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.field != other.field:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")
        if self.cols != other.rows:
            raise ValueError("inner dimensions do not match")
        zero = as_scalar(0, self.field)
        entries = []
        for i in range(self.rows):
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    acc = acc + self.entry(i, k) * other.entry(k, j)
                entries.append(acc)
        return ExactMatrix(self.rows, other.cols, entries, self.field)

    def hstack(self, other):
        """Concatenate columns: [self | other]."""
        if self.rows != other.rows or self.field != other.field:
            raise ValueError("hstack needs matching row count and field")
        entries = []
        for i in range(self.rows):
            entries.extend(self.row(i))
            entries.extend(other.row(i))
        return ExactMatrix(self.rows, self.cols + other.cols, entries, self.field)

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols}, field={self.field!r})"

    def _flat_q(self):
        num = [e.numerator for e in self._entries]
        den = [e.denominator for e in self._entries]
        return num, den

    def _flat_qi(self):
        ren = [e.re.numerator for e in self._entries]
        red = [e.re.denominator for e in self._entries]
        imn = [e.im.numerator for e in self._entries]
        imd = [e.im.denominator for e in self._entries]
        return ren, red, imn, imd


def _matrix_from_flat_q(num, den, rows, cols):
    entries = [Fraction(n, d) for n, d in zip(num, den)]
    return ExactMatrix(rows, cols, entries, FIELD_Q)


def _matrix_from_flat_qi(ren, red, imn, imd, rows, cols):
    entries = [
        GaussianRational(Fraction(rn, rd), Fraction(inn, ind))
        for rn, rd, inn, ind in zip(ren, red, imn, imd)
    ]
    return ExactMatrix(rows, cols, entries, FIELD_QI)


@dataclass(frozen=True)
class RrefResult:
    """Reduced row echelon form plus the row-operation record.

    transform @ original == rref holds exactly; pivot_cols is strictly
    increasing with length equal to the rank.
    """

    rref: ExactMatrix
    rank: int
    pivot_cols: tuple
    transform: ExactMatrix | None


def _kernel_rref(matrix, want_transform):
    if matrix.field == FIELD_Q:
        num, den = matrix._flat_q()
        num, den, pivots, tnum, tden = _kernels.rref_q(
            num, den, matrix.rows, matrix.cols, want_transform
        )
        reduced = _matrix_from_flat_q(num, den, matrix.rows, matrix.cols)
        transform = (
            _matrix_from_flat_q(tnum, tden, matrix.rows, matrix.rows)
            if want_transform
            else None
        )
    else:
        ren, red, imn, imd = matrix._flat_qi()
        ren, red, imn, imd, pivots, trn, trd, tin, tid = _kernels.rref_qi(
            ren, red, imn, imd, matrix.rows, matrix.cols, want_transform
        )
        reduced = _matrix_from_flat_qi(ren, red, imn, imd, matrix.rows, matrix.cols)
        transform = (
            _matrix_from_flat_qi(trn, trd, tin, tid, matrix.rows, matrix.rows)
            if want_transform
            else None
        )
    return reduced, tuple(pivots), transform


def rref(matrix, want_transform=True):
    """Reduced row echelon form by exact Gauss-Jordan elimination."""
    reduced, pivots, transform = _kernel_rref(matrix, want_transform)
    return RrefResult(rref=reduced, rank=len(pivots), pivot_cols=pivots, transform=transform)


def solve(matrix, rhs):
    """One exact solution of matrix @ x == rhs, free variables pinned to zero.

    Raises InconsistentSystemError when rhs is outside the column space.
    The returned solution is rechecked exactly before being returned.
    """
    rhs = [as_scalar(v, matrix.field) for v in rhs]
    if len(rhs) != matrix.rows:
        raise ValueError(f"rhs length {len(rhs)} does not match rows {matrix.rows}")
    augmented = matrix.hstack(
        ExactMatrix(matrix.rows, 1, rhs, matrix.field)
    )
    reduced, pivots, _ = _kernel_rref(augmented, want_transform=False)
    if pivots and pivots[-1] == matrix.cols:
        raise InconsistentSystemError("right-hand side is outside the column space")
    zero = as_scalar(0, matrix.field)
    x = [zero] * matrix.cols
    for k, pc in enumerate(pivots):
        x[pc] = reduced.entry(k, matrix.cols)
    if matrix.mul_vector(x) != rhs:
        raise AssertionError("internal error: solution failed the exact recheck")
    return x


def nullspace_basis(matrix):
    """Linearly independent exact vectors spanning the kernel."""
    result = rref(matrix, want_transform=False)
    pivots = list(result.pivot_cols)
    pivot_set = set(pivots)
    zero = as_scalar(0, matrix.field)
    one = as_scalar(1, matrix.field)
    basis = []
    for free_col in range(matrix.cols):
        if free_col in pivot_set:
            continue
        v = [zero] * matrix.cols
        v[free_col] = one
        for r, pc in enumerate(pivots):
            v[pc] = -result.rref.entry(r, free_col)
        basis.append(v)
    return basis


def cokernel_witness(matrix):
    """A right-hand side provably outside the column space, or None.

    When rank < rows, some transform row y beyond the rank satisfies
    y @ matrix == 0; any standard basis vector e_j with y[j] != 0 then makes
    matrix @ x == e_j unsolvable.
    """
    result = rref(matrix, want_transform=True)
    if result.rank == matrix.rows:
        return None
    y = result.transform.row(result.rank)
    j = next(i for i, v in enumerate(y) if v)
    zero = as_scalar(0, matrix.field)
    one = as_scalar(1, matrix.field)
    witness = [zero] * matrix.rows
    witness[j] = one
    return witness
