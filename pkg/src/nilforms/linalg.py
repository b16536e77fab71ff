"""Exact linear algebra over Q or F_p: echelon forms, kernels, Pfaffians,
span intersection, and exhaustive subspace enumeration over prime fields.

Everything is immutable after construction and all results are canonical
(reduced row echelon form throughout), so equality of subspaces is plain
equality of basis matrices.
"""

from __future__ import annotations

import itertools
from typing import Iterator, NamedTuple

from .fields import GF, QQ, FieldError, PrimeField

DEFAULT_ENUM_CAP = 10 ** 6


class EnumerationCapError(ValueError):
    """Raised when an exhaustive enumeration would exceed the configured cap."""


class Matrix:
    """Dense matrix with entries in one exact field.

    Entries are stored as a tuple of row tuples of raw scalars; ``field``
    supplies the arithmetic.  Zero-row matrices are legal (``cols`` is kept
    explicitly).
    """

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field, entries, cols=None):
        rows = [tuple(field.of(x) for x in row) for row in entries]
        self.field = field
        self.rows = len(rows)
        if rows:
            cols = len(rows[0])
            if any(len(r) != cols for r in rows):
                raise ValueError("ragged rows")
        elif cols is None:
            raise ValueError("zero-row matrix needs an explicit column count")
        self.cols = cols
        self.entries = tuple(rows)

    @classmethod
    def identity(cls, field, n):
        return cls(field, [[field.one if i == j else field.zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, field, rows, cols):
        return cls(field, [[field.zero] * cols for _ in range(rows)], cols=cols)

    def __getitem__(self, i):
        return self.entries[i]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.field, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.entries)
        return f"Matrix({self.field.name}, {self.rows}x{self.cols}: {body})"

    def transpose(self) -> "Matrix":
        return Matrix(self.field, list(zip(*self.entries)) if self.rows else [], cols=self.rows)

    def add(self, other) -> "Matrix":
        self._check_same_shape(other)
        F = self.field
        return Matrix(
            F,
            [[F.add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)],
            cols=self.cols,
        )

    def scale(self, c) -> "Matrix":
        F = self.field
        c = F.of(c)
        return Matrix(F, [[F.mul(c, x) for x in row] for row in self.entries], cols=self.cols)

    def neg(self) -> "Matrix":
        F = self.field
        return Matrix(F, [[F.neg(x) for x in row] for row in self.entries], cols=self.cols)

    def matmul(self, other) -> "Matrix":
        if self.field != other.field:
            raise FieldError("mixed-field matrix product")
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        F = self.field
        ot = list(zip(*other.entries)) if other.rows else [()] * other.cols
        out = [[_dot(F, row, col) for col in ot] for row in self.entries]
        return Matrix(F, out, cols=other.cols)

    def matvec(self, vec) -> tuple:
        F = self.field
        vec = tuple(F.of(x) for x in vec)
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(_dot(F, row, vec) for row in self.entries)

    def vecmat(self, vec) -> tuple:
        F = self.field
        vec = tuple(F.of(x) for x in vec)
        if len(vec) != self.rows:
            raise ValueError("vector length mismatch")
        return tuple(
            _dot(F, vec, tuple(self.entries[i][j] for i in range(self.rows)))
            for j in range(self.cols)
        )

    def stack(self, other) -> "Matrix":
        if self.field != other.field or self.cols != other.cols:
            raise ValueError("cannot stack: field or width mismatch")
        return Matrix(self.field, list(self.entries) + list(other.entries), cols=self.cols)

    def submatrix(self, row_idx, col_idx) -> "Matrix":
        return Matrix(
            self.field,
            [[self.entries[i][j] for j in col_idx] for i in row_idx],
            cols=len(col_idx),
        )

    def det(self):
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        F = self.field
        n = self.rows
        if n == 0:
            return F.one
        # fraction-free style elimination is unnecessary at desk scale
        work = [list(row) for row in self.entries]
        sign = F.one
        acc = F.one
        for col in range(n):
            piv = next((r for r in range(col, n) if not F.is_zero(work[r][col])), None)
            if piv is None:
                return F.zero
            if piv != col:
                work[col], work[piv] = work[piv], work[col]
                sign = F.neg(sign)
            p = work[col][col]
            acc = F.mul(acc, p)
            for r in range(col + 1, n):
                if F.is_zero(work[r][col]):
                    continue
                fac = F.div(work[r][col], p)
                work[r] = [F.sub(x, F.mul(fac, y)) for x, y in zip(work[r], work[col])]
        return F.mul(sign, acc)

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        F = self.field
        aug = Matrix(F, [list(self.entries[i]) + [F.one if j == i else F.zero for j in range(n)] for i in range(n)])
        red, _, pivots = rref(aug)
        # the identity block keeps the augmented rank at n; singularity of
        # the left block shows up as a pivot escaping into the right block
        if any(p >= n for p in pivots):
            raise ValueError("matrix is singular")
        return red.submatrix(range(n), range(n, 2 * n))

    def is_alternating(self) -> bool:
        if self.rows != self.cols:
            return False
        F = self.field
        for i in range(self.rows):
            if not F.is_zero(self.entries[i][i]):
                return False
            for j in range(i + 1, self.cols):
                if self.entries[j][i] != F.neg(self.entries[i][j]):
                    return False
        return True

    def _check_same_shape(self, other):
        if self.field != other.field:
            raise FieldError("mixed-field matrix arithmetic")
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")


def _dot(F, xs, ys):
    acc = F.zero
    for x, y in zip(xs, ys):
        if not (F.is_zero(x) or F.is_zero(y)):
            acc = F.add(acc, F.mul(x, y))
    return acc


class RrefResult(NamedTuple):
    reduced: Matrix
    rank: int
    pivot_columns: tuple


def rref(m: Matrix) -> RrefResult:
    """Unique reduced row echelon form, with rank and pivot columns."""
    F = m.field
    work = [list(row) for row in m.entries]
    nrows, ncols = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if not F.is_zero(work[i][c])), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = F.inv(work[r][c])
        work[r] = [F.mul(inv, x) for x in work[r]]
        for i in range(nrows):
            if i != r and not F.is_zero(work[i][c]):
                fac = work[i][c]
                work[i] = [F.sub(x, F.mul(fac, y)) for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return RrefResult(Matrix(F, work, cols=ncols), len(pivots), tuple(pivots))


def rank(m: Matrix) -> int:
    return rref(m).rank


class Subspace:
    """Subspace of F^n held as a canonical RREF basis matrix.

    Two subspaces are equal iff their basis matrices are identical; the zero
    subspace has a zero-row basis.
    """

    __slots__ = ("field", "ambient_dim", "basis")

    def __init__(self, field, ambient_dim: int, basis: Matrix):
        if basis.cols != ambient_dim:
            raise ValueError("basis width != ambient dimension")
        red, rk, _ = rref(basis)
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = red.submatrix(range(rk), range(ambient_dim))

    @classmethod
    def from_vectors(cls, field, ambient_dim: int, vectors) -> "Subspace":
        rows = [list(v) for v in vectors]
        return cls(field, ambient_dim, Matrix(field, rows, cols=ambient_dim))

    @classmethod
    def zero(cls, field, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim, Matrix(field, [], cols=ambient_dim))

    @classmethod
    def full(cls, field, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim, Matrix.identity(field, ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def vectors(self):
        return list(self.basis.entries)

    def contains(self, vec) -> bool:
        F = self.field
        stacked = self.basis.stack(Matrix(F, [list(vec)], cols=self.ambient_dim))
        return rref(stacked).rank == self.dim

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.field, self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of {self.field.name}^{self.ambient_dim})"


def kernel_basis(m: Matrix) -> Subspace:
    """Canonical basis of {x : m.x = 0}."""
    F = m.field
    red, rk, pivots = rref(m)
    n = m.cols
    free = [c for c in range(n) if c not in set(pivots)]
    vectors = []
    for fc in free:
        v = [F.zero] * n
        v[fc] = F.one
        for r, pc in enumerate(pivots):
            v[pc] = F.neg(red[r][fc])
        vectors.append(v)
    return Subspace.from_vectors(F, n, vectors)


def pfaffian(a: Matrix):
    """Pfaffian of an even-sized alternating matrix by first-row expansion.

    pfaffian(a)**2 == a.det() and the sign is the classical one
    (pf [[0,1],[-1,0]] = 1).
    """
    if a.rows != a.cols or a.rows % 2 != 0:
        raise ValueError("pfaffian needs an even-sized square matrix")
    if not a.is_alternating():
        raise ValueError("pfaffian needs an alternating matrix")
    F = a.field
    return _pfaffian_rec(F, [list(r) for r in a.entries])


def _pfaffian_rec(F, rows):
    n = len(rows)
    if n == 0:
        return F.one
    acc = F.zero
    for j in range(1, n):
        x = rows[0][j]
        if F.is_zero(x):
            continue
        keep = [i for i in range(1, n) if i != j]
        sub = [[rows[i][k] for k in keep] for i in keep]
        term = F.mul(x, _pfaffian_rec(F, sub))
        # expansion along the first row: sign (-1)^j with 1-based j
        acc = F.add(acc, term if j % 2 == 1 else F.neg(term))
    return acc


def intersect_spans(a: Subspace, b: Subspace) -> Subspace:
    """Intersection of two spans in the same ambient space."""
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    if a.field != b.field:
        raise FieldError("mixed-field intersection")
    F = a.field
    n = a.ambient_dim
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(F, n)
    # x in both spans  <=>  x = u.A = v.B; solve [A^T | -B^T] (u; v) = 0
    at = a.basis.transpose()
    bt = b.basis.transpose().neg()
    system = Matrix(F, [list(ra) + list(rb) for ra, rb in zip(at.entries, bt.entries)], cols=a.dim + b.dim)
    vectors = []
    for kv in kernel_basis(system).vectors():
        u = kv[: a.dim]
        vectors.append(a.basis.vecmat(u))
    return Subspace.from_vectors(F, n, vectors)


def sum_spans(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim or a.field != b.field:
        raise ValueError("ambient mismatch in span sum")
    return Subspace(a.field, a.ambient_dim, a.basis.stack(b.basis))


def gaussian_binomial(n: int, k: int, p: int) -> int:
    """Number of k-dimensional subspaces of F_p^n."""
    if k < 0 or k > n:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num *= p ** (n - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


def enumerate_subspaces_fp(ambient: int, dim: int, p: int, cap: int = DEFAULT_ENUM_CAP) -> Iterator[Subspace]:
    """Yield every dim-dimensional subspace of F_p^ambient exactly once.

    Each subspace appears via its canonical RREF basis; the order is
    lexicographic on (pivot-column tuple, free-entry assignment) which makes
    downstream oracles reproducible.
    """
    F = GF(p)
    count = gaussian_binomial(ambient, dim, p)
    if count > cap:
        raise EnumerationCapError(
            f"{count} subspaces of dimension {dim} in F_{p}^{ambient} exceeds cap {cap}"
        )
    for pivots in itertools.combinations(range(ambient), dim):
        # free slots: non-pivot columns to the right of each row's pivot
        slots = [
            (r, c)
            for r in range(dim)
            for c in range(pivots[r] + 1, ambient)
            if c not in pivots
        ]
        for assign in itertools.product(range(p), repeat=len(slots)):
            rows = [[0] * ambient for _ in range(dim)]
            for r in range(dim):
                rows[r][pivots[r]] = 1
            for (r, c), val in zip(slots, assign):
                rows[r][c] = val
            basis = Matrix(F, rows, cols=ambient)
            sub = Subspace(F, ambient, basis)
            yield sub
