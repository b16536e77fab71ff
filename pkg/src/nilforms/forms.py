"""Alternating bilinear form tuples.

A tuple (f_1, .., f_t) of alternating n x n forms is the defining datum for
both the Lie algebra and the group side of the package.  Forms are
vectorized against the standard basis psi_ij (i < j, lexicographic) of the
space of alternating forms, which makes span comparisons and the N0(U)
computation canonical.
"""

from __future__ import annotations

import json

from .fields import GF, QQ, FieldError
from .linalg import Matrix, Subspace, kernel_basis, rref
from .seeding import derive_rng


def form_space_dim(n: int) -> int:
    return n * (n - 1) // 2


def standard_pairs(n: int) -> list[tuple[int, int]]:
    """Index pairs (i, j), i < j, in lexicographic order; psi_ij has +1 at (i, j)."""
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


class AlternatingForm:
    """A single alternating bilinear form given by its matrix."""

    __slots__ = ("n", "matrix")

    def __init__(self, matrix: Matrix):
        if not matrix.is_alternating():
            raise ValueError("matrix is not alternating")
        self.n = matrix.rows
        self.matrix = matrix

    @property
    def field(self):
        return self.matrix.field

    @classmethod
    def from_rows(cls, field, rows) -> "AlternatingForm":
        return cls(Matrix(field, rows))

    @classmethod
    def standard(cls, field, n: int, i: int, j: int) -> "AlternatingForm":
        """psi_ij: +1 in entry (i, j), -1 in (j, i), zero elsewhere (0-based)."""
        if not 0 <= i < j < n:
            raise ValueError("need 0 <= i < j < n")
        rows = [[field.zero] * n for _ in range(n)]
        rows[i][j] = field.one
        rows[j][i] = field.neg(field.one)
        return cls(Matrix(field, rows))

    @classmethod
    def from_coordinates(cls, field, n: int, coords) -> "AlternatingForm":
        coords = list(coords)
        if len(coords) != form_space_dim(n):
            raise ValueError("coordinate length mismatch")
        rows = [[field.zero] * n for _ in range(n)]
        for (i, j), c in zip(standard_pairs(n), coords):
            c = field.of(c)
            rows[i][j] = c
            rows[j][i] = field.neg(c)
        return cls(Matrix(field, rows))

    def coordinates(self) -> tuple:
        """Coordinates against the psi_ij basis (upper-triangle read-out)."""
        m = self.matrix
        return tuple(m[i][j] for (i, j) in standard_pairs(self.n))

    def evaluate(self, x, y):
        """x^T . matrix . y; zero whenever x == y."""
        if len(x) != self.n or len(y) != self.n:
            raise ValueError("vector length mismatch")
        return _bilinear(self.matrix, x, y)

    def __eq__(self, other):
        return isinstance(other, AlternatingForm) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"AlternatingForm({self.matrix!r})"


def _bilinear(m: Matrix, x, y):
    F = m.field
    xv = [F.of(a) for a in x]
    yv = [F.of(a) for a in y]
    acc = F.zero
    for i, xi in enumerate(xv):
        if F.is_zero(xi):
            continue
        row = m[i]
        s = F.zero
        for j, yj in enumerate(yv):
            if not (F.is_zero(row[j]) or F.is_zero(yj)):
                s = F.add(s, F.mul(row[j], yj))
        acc = F.add(acc, F.mul(xi, s))
    return acc


class FormTuple:
    """Ordered tuple of t alternating forms of a common size n."""

    __slots__ = ("n", "t", "forms")

    def __init__(self, forms):
        forms = tuple(forms)
        if not forms:
            raise ValueError("empty form tuple")
        n = forms[0].n
        field = forms[0].field
        if any(f.n != n or f.field != field for f in forms):
            raise ValueError("forms must share size and field")
        self.n = n
        self.t = len(forms)
        self.forms = forms

    @property
    def field(self):
        return self.forms[0].field

    def vectorization(self) -> Matrix:
        """t x n(n-1)/2 matrix whose rows are the forms' psi-coordinates."""
        return Matrix(self.field, [list(f.coordinates()) for f in self.forms], cols=form_space_dim(self.n))

    def span(self) -> Subspace:
        return Subspace(self.field, form_space_dim(self.n), self.vectorization())

    def __eq__(self, other):
        return isinstance(other, FormTuple) and self.forms == other.forms

    def __hash__(self):
        return hash(self.forms)

    def __repr__(self):
        return f"FormTuple(n={self.n}, t={self.t}, {self.field.name})"


def is_independent(phi: FormTuple) -> bool:
    """Linear independence of the forms, via the rank of the vectorization."""
    return rref(phi.vectorization()).rank == phi.t


def change_basis_tuple(phi: FormTuple, c: Matrix) -> FormTuple:
    """New tuple with forms f'_i = sum_j c[i][j] f_j (c invertible t x t)."""
    if c.rows != phi.t or c.cols != phi.t:
        raise ValueError("basis-change matrix must be t x t")
    if c.field != phi.field:
        raise FieldError("basis-change matrix over the wrong field")
    if phi.field.is_zero(c.det()):
        raise ValueError("basis-change matrix is singular")
    F = phi.field
    n = phi.n
    out = []
    for i in range(phi.t):
        acc = Matrix.zeros(F, n, n)
        for j in range(phi.t):
            if not F.is_zero(c[i][j]):
                acc = acc.add(phi.forms[j].matrix.scale(c[i][j]))
        out.append(AlternatingForm(acc))
    return FormTuple(out)


def spans_equal(phi: FormTuple, psi: FormTuple) -> bool:
    """True iff the two tuples span the same subspace of alternating forms.

    A true answer certifies that the associated Lie algebras are isomorphic.
    """
    if phi.n != psi.n or phi.field != psi.field:
        return False
    return phi.span() == psi.span()


def n0_space(u: Subspace, n: int) -> Subspace:
    """Forms vanishing on (V, U) pairs, as a subspace of psi-coordinates.

    Solves f(e_j, u) = 0 for every ambient basis vector e_j and every basis
    vector u of U, as linear constraints on the n(n-1)/2 coordinates of f.
    The dimension always comes out as (n-k)(n-k-1)/2 for k = dim U.
    """
    if u.ambient_dim != n:
        raise ValueError("subspace ambient dimension mismatch")
    F = u.field
    pairs = standard_pairs(n)
    ncoords = len(pairs)
    col_of = {pair: idx for idx, pair in enumerate(pairs)}
    rows = []
    for uvec in u.vectors():
        for j in range(n):
            # coefficient of coordinate c_ab in f(e_j, u):
            #   psi_ab(e_j, u) = delta_aj * u_b - delta_bj * u_a
            row = [F.zero] * ncoords
            for b in range(n):
                if b == j:
                    continue
                a, bb = (j, b) if j < b else (b, j)
                val = uvec[b]
                if j > b:
                    val = F.neg(val)
                row[col_of[(a, bb)]] = val
            rows.append(row)
    system = Matrix(F, rows, cols=ncoords)
    return kernel_basis(system)


def random_tuple(n: int, t: int, bound: int, seed) -> FormTuple:
    """Random independent tuple over Q with integer entries in [-bound, bound].

    Deterministic in the seed; dependent draws are rejected and resampled
    (dependence has negligible probability for bound >= 1).
    """
    if not 1 <= t <= form_space_dim(n):
        raise ValueError(f"t must be in [1, {form_space_dim(n)}]")
    if bound < 1:
        raise ValueError("bound must be >= 1")
    rng = derive_rng(seed, "tuple") if not hasattr(seed, "randint") else seed
    while True:
        forms = []
        for _ in range(t):
            coords = [rng.randint(-bound, bound) for _ in standard_pairs(n)]
            forms.append(AlternatingForm.from_coordinates(QQ, n, coords))
        phi = FormTuple(forms)
        if is_independent(phi):
            return phi


def random_subspace(field, ambient: int, dim: int, bound: int, rng) -> Subspace:
    """Random dim-dimensional subspace spanned by small random integer vectors."""
    if not 0 <= dim <= ambient:
        raise ValueError("dimension out of range")
    if dim == 0:
        return Subspace.zero(field, ambient)
    while True:
        vectors = [[field.of(rng.randint(-bound, bound)) for _ in range(ambient)] for _ in range(dim)]
        sub = Subspace.from_vectors(field, ambient, vectors)
        if sub.dim == dim:
            return sub


def reduce_tuple_mod_p(phi: FormTuple, p: int, check: bool = True) -> FormTuple:
    """Entrywise reduction of a rational tuple mod p.

    Raises FieldError when a denominator vanishes mod p; with check=True
    (the default) raises ValueError when the reduced forms become linearly
    dependent, since algebra constructions need independence.  Pass
    check=False for form-level questions where dependence is harmless.
    """
    Fp = GF(p)
    out = []
    for f in phi.forms:
        out.append(AlternatingForm.from_coordinates(Fp, phi.n, [Fp.of(c) for c in f.coordinates()]))
    red = FormTuple(out)
    if check and not is_independent(red):
        raise ValueError(f"tuple becomes dependent mod {p}")
    return red


def first_good_prime(phi: FormTuple, start: int = 3) -> int:
    """Smallest prime p >= start keeping the tuple independent mod p."""
    from .fields import is_prime

    p = max(start, 2)
    while True:
        if is_prime(p):
            try:
                reduce_tuple_mod_p(phi, p)
                return p
            except (ValueError, FieldError):
                pass
        p += 1


# --- JSON codec ------------------------------------------------------------

def tuple_to_json_dict(phi: FormTuple) -> dict:
    """{"n": .., "t": .., "forms": [n x n integer arrays]}; integer entries only."""
    forms = []
    for f in phi.forms:
        rows = []
        for row in f.matrix.entries:
            out_row = []
            for x in row:
                v = phi.field.to_json(x)
                if not isinstance(v, int):
                    raise ValueError("tuple has non-integer entries; cannot serialize")
                out_row.append(v)
            rows.append(out_row)
        forms.append(rows)
    return {"n": phi.n, "t": phi.t, "forms": forms}


def tuple_from_json_dict(data: dict) -> FormTuple:
    try:
        n = int(data["n"])
        t = int(data["t"])
        raw_forms = data["forms"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed form-tuple object: {exc}") from None
    if len(raw_forms) != t:
        raise ValueError(f"declared t={t} but {len(raw_forms)} forms given")
    forms = []
    for idx, rows in enumerate(raw_forms):
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError(f"form {idx} is not {n}x{n}")
        if any(not isinstance(x, int) for r in rows for x in r):
            raise ValueError(f"form {idx} has non-integer entries")
        m = Matrix(QQ, rows)
        if not m.is_alternating():
            raise ValueError(f"form {idx} is not alternating")
        forms.append(AlternatingForm(m))
    return FormTuple(forms)


def dump_tuple(phi: FormTuple) -> str:
    return json.dumps(tuple_to_json_dict(phi), indent=2, sort_keys=True)


def load_tuple(text: str) -> FormTuple:
    return tuple_from_json_dict(json.loads(text))
