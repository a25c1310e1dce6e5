"""Exact dense linear algebra over the rationals.

Elimination runs fraction-free on integer rows (Bareiss) and only the final
reduced row echelon form is normalised back to :class:`fractions.Fraction`.
Pivots are always the first nonzero entry in column order, so every basis
returned here is reproducible run to run.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

Vector = tuple  # tuple of Fraction


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class Matrix:
    """Immutable rows x cols grid of Fractions; either dimension may be 0."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: Sequence[Sequence] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        self.rows = rows
        self.cols = cols
        if data is None:
            self.data = tuple((Fraction(0),) * cols for _ in range(rows))
        else:
            if len(data) != rows or any(len(row) != cols for row in data):
                raise ValueError(f"entry grid does not match shape {rows}x{cols}")
            self.data = tuple(tuple(_frac(x) for x in row) for row in data)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = list(rows)
        if cols is None:
            if not rows:
                raise ValueError("cols must be given for a matrix with no rows")
            cols = len(rows[0])
        return cls(len(rows), cols, rows)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "Matrix":
        columns = list(columns)
        return cls(rows, len(columns), [[c[i] for c in columns] for i in range(rows)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i: int) -> Vector:
        return self.data[i]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.data)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, [self.column(j) for j in range(self.cols)])

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            ocols = other.columns()
            return Matrix(self.rows, other.cols,
                          [[_dot(row, c) for c in ocols] for row in self.data])
        vec = tuple(other)
        if len(vec) != self.cols:
            raise ValueError(f"vector of length {len(vec)} for {self.shape} matrix")
        return tuple(_dot(row, vec) for row in self.data)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix(self.rows, self.cols,
                      [[x + y for x, y in zip(r, s)] for r, s in zip(self.data, other.data)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def scale(self, c) -> "Matrix":
        c = _frac(c)
        return Matrix(self.rows, self.cols, [[c * x for x in r] for r in self.data])

    def __rmul__(self, c) -> "Matrix":
        return self.scale(c)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Matrix) and self.shape == other.shape
                and self.data == other.data)

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.data for x in r)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch in hstack")
        return Matrix(self.rows, self.cols + other.cols,
                      [a + b for a, b in zip(self.data, other.data)])

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise ValueError("column count mismatch in vstack")
        return Matrix(self.rows + other.rows, self.cols, self.data + other.data)

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "Matrix":
        rows, cols = list(rows), list(cols)
        return Matrix(len(rows), len(cols), [[self.data[i][j] for j in cols] for i in rows])

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self.data]

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.data)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"


def _dot(u, v) -> Fraction:
    s = Fraction(0)
    for x, y in zip(u, v):
        if x and y:
            s += x * y
    return s


@dataclass(frozen=True)
class SubspaceBasis:
    """Linearly independent coordinate vectors spanning a subspace of Q^n."""

    ambient_dim: int
    vectors: tuple = field(default_factory=tuple)

    def __post_init__(self):
        vecs = tuple(tuple(_frac(x) for x in v) for v in self.vectors)
        for v in vecs:
            if len(v) != self.ambient_dim:
                raise ValueError(f"vector of length {len(v)} in ambient dimension {self.ambient_dim}")
        object.__setattr__(self, "vectors", vecs)

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def as_matrix(self) -> Matrix:
        """Vectors as columns (ambient_dim x dim)."""
        return Matrix.from_columns(self.vectors, self.ambient_dim)

    @classmethod
    def standard(cls, n: int) -> "SubspaceBasis":
        return cls(n, tuple(tuple(1 if i == j else 0 for i in range(n)) for j in range(n)))

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Sequence]) -> "SubspaceBasis":
        """Basis of the span of possibly dependent vectors (keeps the first independent ones)."""
        vectors = [tuple(v) for v in vectors]
        if not vectors:
            return cls(ambient_dim, ())
        _, _, piv = rank_and_rref(Matrix.from_columns(vectors, ambient_dim))
        return cls(ambient_dim, tuple(vectors[j] for j in piv))


def _integer_rows(m: Matrix) -> list[list[int]]:
    out = []
    for row in m.data:
        den = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * den) for x in row])
    return out


def _bareiss_echelon(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form; returns (rows, pivot columns). Mutates ``rows``."""
    nrows = len(rows)
    prev = 1
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
        piv_row = rows[r]
        pv = piv_row[c]
        for i in range(r + 1, nrows):
            row = rows[i]
            f = row[c]
            if f == 0:
                if pv != prev:
                    for j in range(c + 1, ncols):
                        row[j] = row[j] * pv // prev
                continue
            for j in range(c + 1, ncols):
                row[j] = (pv * row[j] - f * piv_row[j]) // prev
            row[c] = 0
        prev = pv
        pivots.append(c)
        r += 1
    return rows, pivots


def rank_and_rref(m: Matrix) -> tuple[int, Matrix, list[int]]:
    """Rank, reduced row echelon form and pivot columns of ``m``."""
    if m.rows == 0 or m.cols == 0:
        return 0, Matrix(m.rows, m.cols), []
    rows, pivots = _bareiss_echelon(_integer_rows(m), m.cols)
    rank = len(pivots)
    red = [[Fraction(x) for x in rows[i]] for i in range(rank)]
    for i, c in enumerate(pivots):
        pv = red[i][c]
        red[i] = [x / pv for x in red[i]]
        for i2 in range(i):
            f = red[i2][c]
            if f:
                red[i2] = [x - f * y for x, y in zip(red[i2], red[i])]
    red.extend([[Fraction(0)] * m.cols for _ in range(m.rows - rank)])
    return rank, Matrix(m.rows, m.cols, red), pivots


def rank(m: Matrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return len(_bareiss_echelon(_integer_rows(m), m.cols)[1])


def determinant(m: Matrix) -> Fraction:
    """Determinant of a square matrix (Bareiss; the last pivot is the determinant)."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return Fraction(1)
    dens = [lcm(*(x.denominator for x in row)) for row in m.data]
    rows = [[int(x * d) for x in row] for row, d in zip(m.data, dens)]
    sign = 1
    prev = 1
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            sign = -sign
        pv = rows[c][c]
        for i in range(c + 1, n):
            f = rows[i][c]
            for j in range(c + 1, n):
                rows[i][j] = (pv * rows[i][j] - f * rows[c][j]) // prev
            rows[i][c] = 0
        prev = pv
    scale = 1
    for d in dens:
        scale *= d
    return Fraction(sign * rows[n - 1][n - 1], scale)


def kernel_basis(m: Matrix) -> SubspaceBasis:
    """Basis of the null space, one vector per free column of the rref."""
    rk, red, pivots = rank_and_rref(m)
    pivset = set(pivots)
    vectors = []
    for f in range(m.cols):
        if f in pivset:
            continue
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -red[i, f]
        vectors.append(tuple(v))
    return SubspaceBasis(m.cols, tuple(vectors))


def image_basis(m: Matrix) -> SubspaceBasis:
    """The pivot columns of ``m``: a basis of its column space."""
    _, _, pivots = rank_and_rref(m)
    return SubspaceBasis(m.rows, tuple(m.column(j) for j in pivots))


def in_span(basis: SubspaceBasis, v: Sequence) -> bool:
    if basis.dim == 0:
        return all(x == 0 for x in v)
    return solve(basis.as_matrix(), v) is not None


def quotient_basis(z: SubspaceBasis, b: SubspaceBasis) -> SubspaceBasis:
    """Coset representatives completing ``b`` to a basis of ``span(z)``.

    The returned vectors are drawn from ``z`` (first independent ones), so each
    of them lies in span(z) by construction.
    """
    if z.ambient_dim != b.ambient_dim:
        raise ValueError("quotient of subspaces with different ambient dimensions")
    n = z.ambient_dim
    zrank = rank(z.as_matrix()) if z.dim else 0
    for idx, v in enumerate(b.vectors):
        stacked = Matrix.from_columns(list(z.vectors) + [v], n)
        if rank(stacked) != zrank:
            raise ValueError(f"span(b) is not contained in span(z): b[{idx}] = {list(map(str, v))}")
    cols = list(b.vectors) + list(z.vectors)
    if not cols:
        return SubspaceBasis(n, ())
    _, _, pivots = rank_and_rref(Matrix.from_columns(cols, n))
    nb = b.dim
    return SubspaceBasis(n, tuple(z.vectors[j - nb] for j in pivots if j >= nb))


def solve(m: Matrix, v: Sequence) -> Vector | None:
    """Some ``x`` with ``m @ x == v``, or ``None`` when the system is inconsistent."""
    v = tuple(_frac(x) for x in v)
    if len(v) != m.rows:
        raise ValueError(f"right-hand side of length {len(v)} for {m.rows} rows")
    if m.cols == 0:
        return () if all(x == 0 for x in v) else None
    aug = m.hstack(Matrix.from_columns([v], m.rows))
    _, red, pivots = rank_and_rref(aug)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [Fraction(0)] * m.cols
    for i, c in enumerate(pivots):
        x[c] = red[i, m.cols]
    return tuple(x)


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    n = m.rows
    if n == 0:
        return Matrix(0, 0)
    rk, red, _ = rank_and_rref(m.hstack(Matrix.identity(n)))
    if any(red[i, i] != 1 for i in range(n)) or rank(m) != n:
        raise ValueError("matrix is singular")
    return red.submatrix(range(n), range(n, 2 * n))
