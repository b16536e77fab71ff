"""Torsion-free class-2 nilpotent groups from integer form tuples.

Elements have the unique normal form a1^k1 .. an^kn b1^l1 .. bt^lt with the
b-generators central; the product rule collects crossing generator pairs
through the form values.  The Malcev side realizes the same group inside
the rational Lie algebra under the degree-2 product x*y = x + y + [x,y]/2,
giving an exact bridge between group words and algebra coordinates.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .fields import QQ, FieldError
from .forms import FormTuple, is_independent
from .lie import LieAlgebra2, LieElement, bracket, center_dim


class GroupPresentation:
    """Group determined by a tuple of integer alternating forms, independent over Q."""

    __slots__ = ("phi", "n", "t", "_forms_int")

    def __init__(self, phi: FormTuple):
        if phi.field != QQ:
            raise FieldError("group presentations take rational tuples with integer entries")
        forms_int = []
        for f in phi.forms:
            rows = []
            for row in f.matrix.entries:
                if any(x.denominator != 1 for x in row):
                    raise ValueError("form entries must be integers")
                rows.append([int(x) for x in row])
            forms_int.append(rows)
        if not is_independent(phi):
            raise ValueError("forms are linearly dependent")
        self.phi = phi
        self.n = phi.n
        self.t = phi.t
        self._forms_int = forms_int

    def element(self, a_exp, b_exp=None) -> "GroupElement":
        return GroupElement(self, a_exp, b_exp if b_exp is not None else [0] * self.t)

    def identity(self) -> "GroupElement":
        return self.element([0] * self.n)

    def generator_a(self, i: int) -> "GroupElement":
        a = [0] * self.n
        a[i] = 1
        return self.element(a)

    def generator_b(self, j: int) -> "GroupElement":
        b = [0] * self.t
        b[j] = 1
        return self.element([0] * self.n, b)

    def lie_algebra(self) -> LieAlgebra2:
        return LieAlgebra2(self.phi)

    def __eq__(self, other):
        return isinstance(other, GroupPresentation) and self.phi == other.phi

    def __hash__(self):
        return hash(self.phi)

    def __repr__(self):
        return f"GroupPresentation(n={self.n}, t={self.t})"


class GroupElement:
    """Normal-form word: exponent vectors over the a- and b-generators."""

    __slots__ = ("presentation", "a_exp", "b_exp")

    def __init__(self, presentation: GroupPresentation, a_exp, b_exp):
        a_exp = tuple(int(x) for x in a_exp)
        b_exp = tuple(int(x) for x in b_exp)
        if len(a_exp) != presentation.n or len(b_exp) != presentation.t:
            raise ValueError("exponent vector lengths do not match the presentation")
        self.presentation = presentation
        self.a_exp = a_exp
        self.b_exp = b_exp

    def __eq__(self, other):
        return (
            isinstance(other, GroupElement)
            and self.presentation == other.presentation
            and self.a_exp == other.a_exp
            and self.b_exp == other.b_exp
        )

    def __hash__(self):
        return hash((self.presentation, self.a_exp, self.b_exp))

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"GroupElement({format_element(self)!r})"


def _check_same_presentation(g: GroupElement, h: GroupElement):
    if g.presentation != h.presentation:
        raise ValueError("elements belong to different presentations")


def multiply(g: GroupElement, h: GroupElement) -> GroupElement:
    """Normal-form product; the crossing pairs a_i past a_j (i > j) feed the b-part."""
    _check_same_presentation(g, h)
    gp = g.presentation
    a = [x + y for x, y in zip(g.a_exp, h.a_exp)]
    b = []
    for k in range(gp.t):
        form = gp._forms_int[k]
        corr = 0
        for i in range(gp.n):
            if g.a_exp[i] == 0:
                continue
            for j in range(i):
                if h.a_exp[j] != 0 and form[i][j] != 0:
                    corr += g.a_exp[i] * h.a_exp[j] * form[i][j]
        b.append(g.b_exp[k] + h.b_exp[k] + corr)
    return GroupElement(gp, a, b)


def inverse(g: GroupElement) -> GroupElement:
    gp = g.presentation
    b = []
    for k in range(gp.t):
        form = gp._forms_int[k]
        corr = 0
        for i in range(gp.n):
            if g.a_exp[i] == 0:
                continue
            for j in range(i):
                if g.a_exp[j] != 0 and form[i][j] != 0:
                    corr += g.a_exp[i] * g.a_exp[j] * form[i][j]
        b.append(-g.b_exp[k] + corr)
    return GroupElement(gp, [-x for x in g.a_exp], b)


def commutator(g: GroupElement, h: GroupElement) -> GroupElement:
    """[g, h] = g^-1 h^-1 g h in closed form: bilinear in the a-exponents."""
    _check_same_presentation(g, h)
    gp = g.presentation
    b = []
    for l in range(gp.t):
        form = gp._forms_int[l]
        val = 0
        for i in range(gp.n):
            if g.a_exp[i] == 0:
                continue
            row = form[i]
            for j in range(gp.n):
                if h.a_exp[j] != 0 and row[j] != 0:
                    val += g.a_exp[i] * h.a_exp[j] * row[j]
        b.append(val)
    return GroupElement(gp, [0] * gp.n, b)


def center_rank(gp: GroupPresentation) -> int:
    """Rank of the group center; computed on the rational Lie algebra side."""
    return center_dim(gp.lie_algebra())


class MalcevElement:
    """Rational Lie algebra element viewed as a group element of the completion."""

    __slots__ = ("algebra", "element")

    def __init__(self, algebra: LieAlgebra2, element: LieElement):
        if element.field != QQ or algebra.field != QQ:
            raise FieldError("Malcev elements are rational")
        if len(element.v_part) != algebra.n or len(element.s_part) != algebra.t:
            raise ValueError("element shape does not match the algebra")
        self.algebra = algebra
        self.element = element

    def neg(self) -> "MalcevElement":
        return MalcevElement(self.algebra, self.element.neg())

    def __eq__(self, other):
        return (
            isinstance(other, MalcevElement)
            and self.algebra.phi == other.algebra.phi
            and self.element == other.element
        )

    def __hash__(self):
        return hash((self.algebra.phi, self.element))

    def __repr__(self):
        return f"MalcevElement(v={self.element.v_part}, s={self.element.s_part})"


def bch_mul(x: MalcevElement, y: MalcevElement) -> MalcevElement:
    """x*y = x + y + [x,y]/2; exact group law on the rational completion."""
    if x.algebra.phi != y.algebra.phi:
        raise ValueError("elements belong to different algebras")
    half_bracket = bracket(x.algebra, x.element, y.element).scale(Fraction(1, 2))
    return MalcevElement(x.algebra, x.element.add(y.element).add(half_bracket))


def malcev_map(g: GroupElement) -> MalcevElement:
    """Embed a group element: fold its generator powers left-to-right under bch_mul.

    The map is an injective homomorphism onto the integer points of the
    completion; the b-part lands centrally so its fold step is a plain sum.
    """
    alg = g.presentation.lie_algebra()
    acc = MalcevElement(alg, alg.zero())
    for i, k in enumerate(g.a_exp):
        if k == 0:
            continue
        acc = bch_mul(acc, MalcevElement(alg, alg.basis_v(i).scale(k)))
    s_tail = alg.element([QQ.zero] * alg.n, [Fraction(l) for l in g.b_exp])
    return bch_mul(acc, MalcevElement(alg, s_tail))


# --- text codec --------------------------------------------------------------

_TOKEN = re.compile(r"^([ab])(\d+)(?:\^(-?\d+))?$")


def format_element(g: GroupElement) -> str:
    """Normal-form word with zero exponents omitted; the identity prints as 'e'."""
    parts = []
    for i, k in enumerate(g.a_exp):
        if k != 0:
            parts.append(f"a{i + 1}" if k == 1 else f"a{i + 1}^{k}")
    for j, l in enumerate(g.b_exp):
        if l != 0:
            parts.append(f"b{j + 1}" if l == 1 else f"b{j + 1}^{l}")
    return " ".join(parts) if parts else "e"


def parse_element(text: str, gp: GroupPresentation) -> GroupElement:
    """Inverse of format_element; insists on normal-form generator order."""
    text = text.strip()
    a = [0] * gp.n
    b = [0] * gp.t
    if text in ("", "e"):
        return GroupElement(gp, a, b)
    last = (0, -1)
    for token in text.split():
        m = _TOKEN.match(token)
        if m is None:
            raise ValueError(f"bad generator token {token!r}")
        letter, idx, exp = m.group(1), int(m.group(2)) - 1, m.group(3)
        exp = 1 if exp is None else int(exp)
        limit = gp.n if letter == "a" else gp.t
        if not 0 <= idx < limit:
            raise ValueError(f"generator index out of range in {token!r}")
        key = (0 if letter == "a" else 1, idx)
        if key <= last:
            raise ValueError(f"token {token!r} violates normal-form order")
        last = key
        (a if letter == "a" else b)[idx] = exp
    return GroupElement(gp, a, b)
