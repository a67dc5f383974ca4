"""Exact rational linear algebra: solving, kernels, image membership,
subspace-constrained solving.

Every verdict produced by the analyzer ultimately reduces to a rank /
kernel / membership question answered here, so all arithmetic is exact
(`fractions.Fraction`); no floating point appears on any decision path.
Elimination is fraction-free (integer-preserving with gcd stripping) and
normalized to reduced row echelon form at the end, which bounds
intermediate coefficient blow-up without sacrificing exactness.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

Scalar = Fraction
Vector = tuple[Fraction, ...]


class DimensionError(ValueError):
    """Operands with incompatible shapes."""


def scalar(value) -> Fraction:
    """Coerce an int, Fraction, or 'p/q' / decimal-integer string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact scalar: {value!r}")


def format_scalar(x: Fraction) -> str:
    """Serialize as a decimal-integer string or 'p/q'; round-trips bit-exactly."""
    return str(x)


def vector(values: Iterable) -> Vector:
    return tuple(scalar(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (Fraction(0),) * n


def vec_add(x: Vector, y: Vector) -> Vector:
    if len(x) != len(y):
        raise DimensionError(f"vector lengths differ: {len(x)} vs {len(y)}")
    return tuple(a + b for a, b in zip(x, y))

def vec_sub(x: Vector, y: Vector) -> Vector:
    if len(x) != len(y):
        raise DimensionError(f"vector lengths differ: {len(x)} vs {len(y)}")
    return tuple(a - b for a, b in zip(x, y))

def vec_scale(c, x: Vector) -> Vector:
    c = scalar(c)
    return tuple(c * a for a in x)

def vec_neg(x: Vector) -> Vector:
    return tuple(-a for a in x)

def is_zero_vector(x: Vector) -> bool:
    return all(a == 0 for a in x)


@dataclass(frozen=True)
class Matrix:
    """Dense rectangular matrix of Fractions.

    `rows`/`cols` are stored explicitly so that degenerate shapes (zero
    rows or zero columns) stay well defined.
    """

    rows: int
    cols: int
    entries: tuple[Vector, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows:
            raise DimensionError("row count does not match entries")
        for row in self.entries:
            if len(row) != self.cols:
                raise DimensionError("ragged matrix rows")

    @classmethod
    def from_rows(cls, rows: Sequence[Iterable], cols: Optional[int] = None) -> "Matrix":
        entries = tuple(vector(r) for r in rows)
        if entries:
            cols = len(entries[0])
        elif cols is None:
            raise DimensionError("empty matrix needs an explicit column count")
        return cls(len(entries), cols, entries)

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def mul_vec(self, x: Vector) -> Vector:
        if len(x) != self.cols:
            raise DimensionError(f"matrix has {self.cols} columns, vector has {len(x)}")
        return tuple(sum((r[j] * x[j] for j in range(self.cols)), Fraction(0))
                     for r in self.entries)

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows,
                      tuple(self.column(j) for j in range(self.cols)))

    def with_rows_permuted(self, order: Sequence[int]) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(self.entries[i] for i in order))


def matrix_from_columns(columns: Sequence[Vector], rows: Optional[int] = None) -> Matrix:
    if columns:
        rows = len(columns[0])
    elif rows is None:
        raise DimensionError("empty column list needs an explicit row count")
    return Matrix(rows, len(columns),
                  tuple(tuple(col[i] for col in columns) for i in range(rows)))


def _integer_rows(entries: Sequence[Vector]) -> list[list[int]]:
    # Clear denominators row by row; row scaling never changes rank,
    # kernel, or solvability.
    out = []
    for row in entries:
        mult = lcm(*(f.denominator for f in row)) if row else 1
        ints = [int(f * mult) for f in row]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if g > 1:
            ints = [v // g for v in ints]
        out.append(ints)
    return out


def _rref(entries: Sequence[Vector], cols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form with deterministic pivoting.

    Forward and backward elimination run on integer rows (fraction-free
    updates, gcd-stripped); pivot rows are divided out only at the end.
    Pivot choice is the first row with a nonzero entry in the scanned
    column, so the result is a pure function of the row order.
    """
    work = _integer_rows(entries)
    nrows = len(work)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot_row = None
        for i in range(r, nrows):
            if work[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        p = work[r][c]
        for i in range(nrows):
            if i == r or work[i][c] == 0:
                continue
            f = work[i][c]
            row = [work[i][j] * p - work[r][j] * f for j in range(cols)]
            g = 0
            for v in row:
                g = gcd(g, v)
            if g > 1:
                row = [v // g for v in row]
            work[i] = row
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    reduced: list[list[Fraction]] = []
    for i, row in enumerate(work):
        if i < len(pivots):
            p = row[pivots[i]]
            reduced.append([Fraction(v, p) for v in row])
        else:
            reduced.append([Fraction(v) for v in row])
    return reduced, pivots


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    reduced, pivots = _rref(m.entries, m.cols)
    return Matrix(m.rows, m.cols, tuple(tuple(r) for r in reduced)), tuple(pivots)


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def determinant(m: Matrix) -> Fraction:
    """Exact determinant via fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise DimensionError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return Fraction(1)
    a = []
    denom = Fraction(1)
    for row in m.entries:
        mult = lcm(*(f.denominator for f in row))
        denom *= mult
        a.append([int(f * mult) for f in row])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return Fraction(sign * a[n - 1][n - 1], 1) / denom


def _primitive(vec: Vector) -> Vector:
    # Scale a rational direction vector to coprime integers (sign kept).
    mult = lcm(*(f.denominator for f in vec)) if vec else 1
    ints = [int(f * mult) for f in vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(Fraction(v) for v in ints)


def kernel_basis(m: Matrix) -> list[Vector]:
    """Basis of {X : MX = 0}, one vector per free column of the RREF.

    Vectors are ordered by free-column position and scaled to primitive
    integer form; the list is empty exactly when the kernel is trivial.
    """
    reduced, pivots = _rref(m.entries, m.cols)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * m.cols
        vec[free] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -reduced[r][free]
        basis.append(_primitive(tuple(vec)))
    return basis


def solve_general(m: Matrix, v: Vector) -> Optional[tuple[Vector, list[Vector]]]:
    """Solve MX = v exactly.

    Returns (particular, nullspace_basis) or None when v is outside the
    image of M. The particular solution is canonical: zeros in every
    free-variable position of the reduced echelon form.
    """
    if len(v) != m.rows:
        raise DimensionError(f"matrix has {m.rows} rows, rhs has {len(v)}")
    augmented = tuple(row + (v[i],) for i, row in enumerate(m.entries))
    reduced, pivots = _rref(augmented, m.cols + 1)
    if m.cols in pivots:
        return None
    particular = [Fraction(0)] * m.cols
    for r, pc in enumerate(pivots):
        particular[pc] = reduced[r][m.cols]
    return tuple(particular), kernel_basis(m)


def image_contains(m: Matrix, v: Vector) -> bool:
    """True iff MX = v has a solution."""
    if len(v) != m.rows:
        raise DimensionError(f"matrix has {m.rows} rows, rhs has {len(v)}")
    return solve_general(m, v) is not None


def solve_in_span(m: Matrix, v: Vector, span: Sequence[Vector]) -> Optional[Vector]:
    """A vector Y in the span of the given vectors with MY = v, or None.

    The returned combination is canonical (free span coordinates zero).
    Span vectors need not be independent.
    """
    result = solve_in_span_coefficients(m, v, span)
    if result is None:
        return None
    return result[1]


def solve_in_span_coefficients(
    m: Matrix, v: Vector, span: Sequence[Vector]
) -> Optional[tuple[Vector, Vector]]:
    """Like solve_in_span but also returns the span coefficients used."""
    if len(v) != m.rows:
        raise DimensionError(f"matrix has {m.rows} rows, rhs has {len(v)}")
    for s in span:
        if len(s) != m.cols:
            raise DimensionError("span vector length does not match matrix columns")
    images = [m.mul_vec(s) for s in span]
    solved = solve_general(matrix_from_columns(images, rows=m.rows), v)
    if solved is None:
        return None
    coeffs = solved[0]
    combo = zero_vector(m.cols)
    for c, s in zip(coeffs, span):
        if c != 0:
            combo = vec_add(combo, vec_scale(c, s))
    return coeffs, combo
