"""2-step nilpotent Lie algebras built from alternating form tuples.

L(phi) = V + S where dim V = n, dim S = t, and the bracket of two elements
is [x, y] = sum_i phi_i(x_V, y_V) z_i.  All double brackets vanish, so the
algebra data is exactly the form tuple.  This module also houses the
small-quotient certificate (a subspace U of V witnessing a surjection onto
a smaller algebra), its search strategies, and the closed-form thresholds
that bracket where the property switches from generically absent to
universally present.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .fields import FieldError
from .forms import (
    FormTuple,
    change_basis_tuple,
    is_independent,
    n0_space,
    random_subspace,
    reduce_tuple_mod_p,
)
from .linalg import (
    DEFAULT_ENUM_CAP,
    Matrix,
    Subspace,
    enumerate_subspaces_fp,
    intersect_spans,
    kernel_basis,
    rank,
    rref,
)
from .seeding import derive_rng


class StrategyError(ValueError):
    """A search strategy cannot run on its input (e.g. degenerate mod-p reduction)."""


class LieElement:
    """Element x = v_part + s_part of L = V + S, coordinates in a fixed basis."""

    __slots__ = ("field", "v_part", "s_part")

    def __init__(self, field, v_part, s_part):
        self.field = field
        self.v_part = tuple(field.of(x) for x in v_part)
        self.s_part = tuple(field.of(x) for x in s_part)

    def add(self, other) -> "LieElement":
        self._check_compatible(other)
        F = self.field
        return LieElement(
            F,
            [F.add(a, b) for a, b in zip(self.v_part, other.v_part)],
            [F.add(a, b) for a, b in zip(self.s_part, other.s_part)],
        )

    def neg(self) -> "LieElement":
        F = self.field
        return LieElement(F, [F.neg(x) for x in self.v_part], [F.neg(x) for x in self.s_part])

    def sub(self, other) -> "LieElement":
        return self.add(other.neg())

    def scale(self, c) -> "LieElement":
        F = self.field
        c = F.of(c)
        return LieElement(F, [F.mul(c, x) for x in self.v_part], [F.mul(c, x) for x in self.s_part])

    def is_zero(self) -> bool:
        F = self.field
        return all(F.is_zero(x) for x in self.v_part) and all(F.is_zero(x) for x in self.s_part)

    def _check_compatible(self, other):
        if self.field != other.field:
            raise FieldError("mixed-field element arithmetic")
        if len(self.v_part) != len(other.v_part) or len(self.s_part) != len(other.s_part):
            raise ValueError("element shape mismatch")

    def __eq__(self, other):
        return (
            isinstance(other, LieElement)
            and self.field == other.field
            and self.v_part == other.v_part
            and self.s_part == other.s_part
        )

    def __hash__(self):
        return hash((self.field, self.v_part, self.s_part))

    def __repr__(self):
        return f"LieElement(v={self.v_part}, s={self.s_part})"


class LieAlgebra2:
    """The algebra L(phi); immutable wrapper pairing a form tuple with V + S."""

    __slots__ = ("phi", "n", "t")

    def __init__(self, phi: FormTuple, check: bool = True):
        if check and not is_independent(phi):
            raise ValueError("forms are linearly dependent; pass check=False to build anyway")
        self.phi = phi
        self.n = phi.n
        self.t = phi.t

    @property
    def field(self):
        return self.phi.field

    @property
    def dim(self) -> int:
        return self.n + self.t

    def element(self, v_part, s_part=None) -> LieElement:
        v_part = list(v_part)
        s_part = list(s_part) if s_part is not None else [self.field.zero] * self.t
        if len(v_part) != self.n or len(s_part) != self.t:
            raise ValueError("element coordinates do not match (n, t)")
        return LieElement(self.field, v_part, s_part)

    def zero(self) -> LieElement:
        return self.element([self.field.zero] * self.n)

    def basis_v(self, i: int) -> LieElement:
        v = [self.field.zero] * self.n
        v[i] = self.field.one
        return self.element(v)

    def basis_s(self, i: int) -> LieElement:
        s = [self.field.zero] * self.t
        s[i] = self.field.one
        return self.element([self.field.zero] * self.n, s)

    def __repr__(self):
        return f"LieAlgebra2(n={self.n}, t={self.t}, {self.field.name})"


def bracket(l: LieAlgebra2, x: LieElement, y: LieElement) -> LieElement:
    """[x, y]: lands in S with coordinates phi_i(x_V, y_V)."""
    if x.field != l.field or y.field != l.field:
        raise FieldError("element field does not match the algebra")
    if len(x.v_part) != l.n or len(y.v_part) != l.n or len(x.s_part) != l.t or len(y.s_part) != l.t:
        raise ValueError("element shape does not match the algebra")
    s = [f.evaluate(x.v_part, y.v_part) for f in l.phi.forms]
    return LieElement(l.field, [l.field.zero] * l.n, s)


def center(l: LieAlgebra2) -> Subspace:
    """The V-part of the center: {c in V : phi_i(c, y) = 0 for all i, y}.

    The full center is this subspace plus all of S, so dim Z(L) = result.dim + t.
    """
    stacked_rows = []
    for f in l.phi.forms:
        stacked_rows.extend(list(row) for row in f.matrix.entries)
    return kernel_basis(Matrix(l.field, stacked_rows, cols=l.n))


def center_dim(l: LieAlgebra2) -> int:
    return center(l).dim + l.t


def derived_dim(l: LieAlgebra2) -> int:
    """dim [L, L] = rank of the vectorized forms (t exactly when independent)."""
    return rank(l.phi.vectorization())


def theorem1_predict(n: int, t: int) -> int:
    """Generic center dimension: t, except 2 for a single form in odd dimension."""
    if t == 1 and n % 2 == 1:
        return 2
    return t


def quotient_central(l: LieAlgebra2, h: Subspace) -> LieAlgebra2:
    """Quotient of L by a central subspace h of S, as an algebra on t - k forms.

    Rewrites the tuple in a basis of S adapted to h (complement first, h last)
    and keeps the coordinates that survive the quotient.
    """
    if h.ambient_dim != l.t:
        raise ValueError("h must live in S (ambient dimension t)")
    if h.field != l.field:
        raise FieldError("h is over the wrong field")
    k = h.dim
    if k >= l.t:
        raise ValueError("quotient by all of S is abelian; need dim h < t")
    if k == 0:
        return LieAlgebra2(l.phi)
    F = l.field
    pivots = set(rref(h.basis).pivot_columns)
    complement = [c for c in range(l.t) if c not in pivots]
    rows = []
    for c in complement:
        row = [F.zero] * l.t
        row[c] = F.one
        rows.append(row)
    rows.extend(list(r) for r in h.basis.entries)
    w = Matrix(F, rows)
    # s-coordinates transform by the inverse transpose of the basis matrix
    transformed = change_basis_tuple(l.phi, w.inverse().transpose())
    return LieAlgebra2(FormTuple(transformed.forms[: l.t - k]))


def ms_certificate(l: LieAlgebra2, u: Subspace, n0: int, t0: int) -> bool:
    """Check whether u witnesses a surjection onto an algebra with invariants (n0, t0).

    True iff at least t0 independent forms in the span of phi vanish on all
    pairs (V, u), i.e. dim(n0_space(u) meet span(phi)) >= t0.
    """
    if not 1 <= t0 <= min(l.t, n0 * (n0 - 1) // 2):
        raise ValueError("need 1 <= t0 <= min(t, n0(n0-1)/2)")
    if u.field != l.field:
        raise FieldError("witness subspace over the wrong field")
    if u.ambient_dim != l.n or u.dim != l.n - n0:
        raise ValueError("witness subspace must have dimension n - n0 inside V")
    return intersect_spans(n0_space(u, l.n), l.phi.span()).dim >= t0


@dataclass(frozen=True)
class ExhaustiveFp:
    """Enumerate every candidate subspace over F_p; definitive for that field."""

    p: int
    cap: int = DEFAULT_ENUM_CAP


@dataclass(frozen=True)
class RandomizedQ:
    """Sample random candidate subspaces over the algebra's own field."""

    trials: int = 200
    seed: int = 0
    bound: int = 9


def ms_search(l: LieAlgebra2, n0: int, t0: int, strategy) -> Subspace | None:
    """Search for a witness subspace U of dimension n - n0.

    ExhaustiveFp reduces the tuple mod p and tries every subspace, so a None
    answer is definitive over F_p (the returned U, when found, is over F_p).
    RandomizedQ samples candidates and can only answer found or not-found.
    """
    n, t = l.n, l.t
    if not 1 <= n0 <= n:
        raise ValueError("need 1 <= n0 <= n")
    if not 1 <= t0 <= n0 * (n0 - 1) // 2:
        raise ValueError("need 1 <= t0 <= n0(n0-1)/2")
    if t0 > t:
        return None
    if n0 == n:
        return Subspace.zero(l.field, n)
    if isinstance(strategy, ExhaustiveFp):
        if l.field.characteristic == 0:
            try:
                phi_p = reduce_tuple_mod_p(l.phi, strategy.p)
            except (ValueError, FieldError) as exc:
                raise StrategyError(f"cannot search mod {strategy.p}: {exc}") from None
        elif l.field.characteristic == strategy.p:
            phi_p = l.phi
        else:
            raise StrategyError("algebra field does not match the strategy prime")
        span = phi_p.span()
        for u in enumerate_subspaces_fp(n, n - n0, strategy.p, strategy.cap):
            if intersect_spans(n0_space(u, n), span).dim >= t0:
                return u
        return None
    if isinstance(strategy, RandomizedQ):
        span = l.phi.span()
        for i in range(strategy.trials):
            rng = derive_rng(strategy.seed, "ms-search", i)
            u = random_subspace(l.field, n, n - n0, strategy.bound, rng)
            if intersect_spans(n0_space(u, n), span).dim >= t0:
                return u
        return None
    raise TypeError(f"unknown search strategy: {strategy!r}")


def ms_thresholds(n: int, n0: int, t0: int) -> tuple[Fraction, Fraction]:
    """(generic_absence_below, guaranteed_at_or_above) for the quotient property.

    For t below the first value a random tuple generically has no (n0, t0)
    quotient; for t at or above the second every tuple has one.  The second
    minus the first is n0(n - n0)/t0, so the pair always comes out ordered.
    """
    if not 1 <= t0 <= n0 * (n0 - 1) // 2:
        raise ValueError("need 1 <= t0 <= n0(n0-1)/2")
    if not 1 <= n0 <= n:
        raise ValueError("need 1 <= n0 <= n")
    b = Fraction(n * (n - 1), 2)
    b0 = Fraction(n0 * (n0 - 1), 2)
    absence = b - Fraction(n * n0, t0) + Fraction(n0 * n0, t0) + t0 - b0
    guaranteed = b - b0 + t0
    return absence, guaranteed


def corollary_bound(n: int, N: int) -> Fraction:
    """Threshold below which a generic algebra maps onto no non-abelian algebra of dim N."""
    if N >= n:
        raise ValueError("need N < n")
    return Fraction(n * n, 2) - n * (Fraction(2 * N - 1, 2)) + Fraction(N * (N - 1), 2) + 1
