"""Plucker coordinates, Grassmann relations, and dimension bookkeeping.

A k-dim subspace of F^n embeds projectively via its k x k basis minors; the
image is cut out by quadratic relations, and a basis is recoverable from
any valid coordinate point.  The dimension formulas at the bottom are the
integer counts used to compare incidence varieties against the full
Grassmannian, which is how generic absence of small quotients is read off.
"""

from __future__ import annotations

import itertools

from .lie import ms_thresholds
from .linalg import Subspace, intersect_spans


class PluckerPoint:
    """Projective point with one coordinate per increasing k-subset of columns.

    Stored normalized: the first nonzero coordinate in lexicographic index
    order is scaled to one, so projective equality is plain equality.
    """

    __slots__ = ("field", "k", "n", "coords")

    def __init__(self, field, k: int, n: int, coords):
        if not 1 <= k <= n:
            raise ValueError("need 1 <= k <= n")
        index_sets = list(itertools.combinations(range(n), k))
        if isinstance(coords, dict):
            unknown = set(coords) - set(index_sets)
            if unknown:
                raise ValueError(f"unexpected index tuples: {sorted(unknown)}")
            values = [field.of(coords.get(idx, field.zero)) for idx in index_sets]
        else:
            values = [field.of(x) for x in coords]
            if len(values) != len(index_sets):
                raise ValueError(f"expected {len(index_sets)} coordinates")
        lead = next((v for v in values if not field.is_zero(v)), None)
        if lead is None:
            raise ValueError("all Plucker coordinates are zero")
        inv = field.inv(lead)
        values = [field.mul(inv, v) for v in values]
        self.field = field
        self.k = k
        self.n = n
        self.coords = dict(zip(index_sets, values))

    def coord(self, idx):
        return self.coords[tuple(idx)]

    def signed_coord(self, idx):
        """Coordinate at an arbitrary index tuple: zero on repeats, sign of the sort otherwise."""
        idx = tuple(idx)
        if len(set(idx)) != len(idx):
            return self.field.zero
        inversions = sum(1 for a in range(len(idx)) for b in range(a + 1, len(idx)) if idx[a] > idx[b])
        value = self.coords[tuple(sorted(idx))]
        return self.field.neg(value) if inversions % 2 else value

    def as_list(self) -> list:
        return [self.coords[idx] for idx in itertools.combinations(range(self.n), self.k)]

    def __eq__(self, other):
        return (
            isinstance(other, PluckerPoint)
            and self.field == other.field
            and (self.k, self.n) == (other.k, other.n)
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.field, self.k, self.n, tuple(sorted(self.coords.items()))))

    def __repr__(self):
        return f"PluckerPoint(k={self.k}, n={self.n}, {self.as_list()})"


def plucker(u: Subspace) -> PluckerPoint:
    """Embed a subspace by the maximal minors of its basis matrix."""
    k = u.dim
    if k == 0:
        raise ValueError("the zero subspace has no Plucker point")
    coords = {}
    for idx in itertools.combinations(range(u.ambient_dim), k):
        coords[idx] = u.basis.submatrix(range(k), idx).det()
    return PluckerPoint(u.field, k, u.ambient_dim, coords)


def check_plucker_relations(p: PluckerPoint) -> bool:
    """Evaluate every quadratic exchange relation; true iff all vanish."""
    F = p.field
    k, n = p.k, p.n
    for left in itertools.combinations(range(n), k - 1):
        for right in itertools.combinations(range(n), k + 1):
            acc = F.zero
            for r, jr in enumerate(right):
                a = p.signed_coord(left + (jr,))
                b = p.signed_coord(right[:r] + right[r + 1:])
                if F.is_zero(a) or F.is_zero(b):
                    continue
                term = F.mul(a, b)
                acc = F.add(acc, F.neg(term) if (r + 1) % 2 else term)
            if not F.is_zero(acc):
                return False
    return True


def basis_from_plucker(p: PluckerPoint) -> Subspace:
    """Recover the subspace from a valid coordinate point (round trip with plucker).

    Columns are relabeled so the leading nonzero coordinate plays the role of
    the pivot-block minor; the standard ratio formula then reads off a basis
    row by row, and the relabeling is undone at the end.
    """
    if not check_plucker_relations(p):
        raise ValueError("coordinates do not satisfy the Plucker relations")
    F = p.field
    k, n = p.k, p.n
    lead = next(idx for idx in itertools.combinations(range(n), k) if not F.is_zero(p.coords[idx]))
    order = list(lead) + [c for c in range(n) if c not in lead]

    def q(relabeled):
        return p.signed_coord(tuple(order[x] for x in relabeled))

    pivot_value = q(tuple(range(k)))
    vectors = []
    for i in range(k):
        vec = [F.zero] * n
        vec[order[i]] = F.one
        reduced = tuple(x for x in range(k) if x != i)
        for r in range(k, n):
            value = F.div(q(reduced + (r,)), pivot_value)
            if (k - 1 - i) % 2:
                value = F.neg(value)
            vec[order[r]] = value
        vectors.append(vec)
    return Subspace.from_vectors(F, n, vectors)


def dim_grassmannian(k: int, n: int) -> int:
    return k * (n - k)


def schubert_dim(vdims) -> int:
    """Cell dimension from the flag-dimension profile (strictly increasing)."""
    vdims = list(vdims)
    if any(b <= a for a, b in zip(vdims, vdims[1:])):
        raise ValueError("dimension profile must be strictly increasing")
    if any(d < i + 1 for i, d in enumerate(vdims)):
        raise ValueError("profile entry i must be at least i+1")
    return sum(d - (i + 1) for i, d in enumerate(vdims))


def gs_dim(s: int, m: int, k: int, n: int) -> int:
    """Dimension of {U in G(k, n) : dim(U meet W) >= s} for a fixed m-dim W."""
    if not max(0, k + m - n) <= s <= min(k, m):
        raise ValueError("intersection dimension out of the feasible range")
    return s * (m - s) + (k - s) * (n - k)


def gs_member(uprime: Subspace, u: Subspace, s: int) -> bool:
    if s <= 0:
        return True
    return intersect_spans(u, uprime).dim >= s


def fiber_dim(n: int, n0: int, t: int, t0: int) -> int:
    """Dimension of the fiber of tuples compatible with one fixed witness subspace.

    Only meaningful in the regime where the property is not yet guaranteed,
    i.e. t strictly below the guaranteed threshold.
    """
    if not 1 <= t0 <= min(t, n0 * (n0 - 1) // 2):
        raise ValueError("need 1 <= t0 <= min(t, n0(n0-1)/2)")
    if t > n * (n - 1) // 2:
        raise ValueError("t exceeds the form-space dimension")
    _, guaranteed = ms_thresholds(n, n0, t0)
    if t >= guaranteed:
        raise ValueError("t is in the guaranteed regime; the fiber formula does not apply")
    return t0 * (n0 * (n0 - 1) // 2 - t0) + (t - t0) * (n * (n - 1) // 2 - t)


def variety_d_dim(n: int, n0: int, t: int, t0: int) -> int:
    """Dimension of the incidence variety: fiber plus the witness Grassmannian."""
    return fiber_dim(n, n0, t, t0) + dim_grassmannian(n - n0, n)
