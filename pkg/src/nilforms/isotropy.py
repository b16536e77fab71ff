"""Common isotropic subspaces of a form tuple.

A subspace W is (commonly) isotropic when every form in the tuple vanishes
on W x W; these are exactly the abelian subalgebras of the associated
2-step algebra, modulo its derived part.  The module carries the dimension
bounds, a greedy randomized constructor with exact verification, an
exhaustive finite-field oracle, and the quaternionic 3-tuple on which the
rationals admit no isotropic plane while F_5 does.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import GF, QQ, FieldError
from .forms import AlternatingForm, FormTuple
from .linalg import (
    DEFAULT_ENUM_CAP,
    Matrix,
    Subspace,
    enumerate_subspaces_fp,
    kernel_basis,
)
from .seeding import derive_rng


@dataclass(frozen=True)
class IsotropicCertificate:
    subspace: Subspace
    verified: bool


def bound_k(n: int, t: int) -> int:
    """Largest k with 2n >= t(k-1) + 2k; isotropic dimension ceiling for generic tuples."""
    if t < 2:
        raise ValueError("bound requires t >= 2; a single form is covered by heisenberg_abelian_bound")
    return (2 * n + t) // (t + 2)


def bound_s(n: int, t: int) -> int:
    """Abelian-subalgebra dimension bound; always equals bound_k(n, t) + t."""
    if t < 2:
        raise ValueError("bound requires t >= 2; a single form is covered by heisenberg_abelian_bound")
    return (2 * n + t * t + 3 * t) // (t + 2)


def heisenberg_abelian_bound(m: int) -> int:
    """Maximal abelian subalgebra dimension (m+1)/2 in the Heisenberg algebra of odd dim m."""
    if m < 3 or m % 2 == 0:
        raise ValueError("Heisenberg algebras have odd dimension >= 3")
    return (m + 1) // 2


def commutation_matrix(phi: FormTuple, x) -> Matrix:
    """t x n matrix whose i-th row is the functional y -> phi_i(y, x).

    Its kernel is {y : phi_i(x, y) = 0 for all i} (the two argument orders
    agree on kernels since the forms are alternating), and x always lies in
    that kernel.
    """
    F = phi.field
    xv = [F.of(a) for a in x]
    if len(xv) != phi.n:
        raise ValueError("vector length mismatch")
    return Matrix(F, [list(f.matrix.matvec(xv)) for f in phi.forms], cols=phi.n)


def is_isotropic(phi: FormTuple, sub: Subspace) -> bool:
    """Exact check that every form vanishes on every pair of basis vectors."""
    if sub.ambient_dim != phi.n or sub.field != phi.field:
        raise ValueError("subspace does not match the tuple")
    F = phi.field
    vecs = sub.vectors()
    for a in range(len(vecs)):
        for b in range(a + 1, len(vecs)):
            for f in phi.forms:
                if not F.is_zero(f.evaluate(vecs[a], vecs[b])):
                    return False
    return True


def _extension_space(phi: FormTuple, sub: Subspace) -> Subspace:
    # vectors y with phi_i(w, y) = 0 for every current basis vector w
    rows = []
    for w in sub.vectors():
        rows.extend(list(r) for r in commutation_matrix(phi, w).entries)
    return kernel_basis(Matrix(phi.field, rows, cols=phi.n))


def greedy_isotropic(phi: FormTuple, seed: int = 0, restarts: int = 8) -> IsotropicCertificate:
    """Grow an isotropic subspace one vector at a time until stuck; keep the best restart.

    Restart 0 always extends by the candidate with the smallest pivot index,
    so the result is deterministic in the seed; later restarts randomize the
    extension choice.  Each extension adds at most t linear conditions, so
    the result dimension is at least ceil(n / (t+1)).  The returned
    certificate is verified exactly.
    """
    if restarts < 1:
        raise ValueError("need at least one restart")
    F = phi.field
    n = phi.n
    best = None
    for r in range(restarts):
        rng = derive_rng(seed, "isotropic-restart", r)
        sub = Subspace.zero(F, n)
        while True:
            ext = _extension_space(phi, sub)
            if ext.dim <= sub.dim:
                break
            candidates = [v for v in ext.vectors() if not sub.contains(v)]
            pick = candidates[0]
            if r > 0:
                pick = _random_extension(F, ext, sub, rng) or candidates[0]
            sub = Subspace.from_vectors(F, n, sub.vectors() + [list(pick)])
        if best is None or sub.dim > best.dim:
            best = sub
    return IsotropicCertificate(best, is_isotropic(phi, best))


def _random_extension(F, ext: Subspace, sub: Subspace, rng):
    basis = ext.vectors()
    for _ in range(32):
        coeffs = [F.of(rng.randint(-3, 3)) for _ in basis]
        vec = [F.zero] * ext.ambient_dim
        for c, bvec in zip(coeffs, basis):
            if F.is_zero(c):
                continue
            vec = [F.add(x, F.mul(c, y)) for x, y in zip(vec, bvec)]
        if any(not F.is_zero(x) for x in vec) and not sub.contains(vec):
            return tuple(vec)
    return None


def max_isotropic_fp(phi: FormTuple, p: int, k: int, cap: int = DEFAULT_ENUM_CAP) -> Subspace | None:
    """First k-dim common isotropic subspace over F_p, or None after full enumeration."""
    if phi.field != GF(p):
        raise FieldError(f"tuple must be over F_{p}; reduce it first")
    if not 1 <= k <= phi.n:
        raise ValueError("k out of range")
    for sub in enumerate_subspaces_fp(phi.n, k, p, cap):
        if is_isotropic(phi, sub):
            return sub
    return None


def max_isotropic_dim_fp(phi: FormTuple, p: int, cap: int = DEFAULT_ENUM_CAP) -> int:
    """Largest isotropic dimension over F_p by increasing exhaustive sweeps.

    Isotropic subspaces are closed under shrinking, so the first k with no
    witness is final.  Dimension 1 always exists (alternating forms vanish
    on every line).
    """
    best = 0
    for k in range(1, phi.n + 1):
        if max_isotropic_fp(phi, p, k, cap) is None:
            break
        best = k
    return best


def quaternion_example() -> FormTuple:
    """The 3-tuple on Q^4 whose isotropic planes are obstructed by a sum of four squares."""
    phi1 = [
        [0, 1, 0, 0],
        [-1, 0, 0, 0],
        [0, 0, 0, 1],
        [0, 0, -1, 0],
    ]
    phi2 = [
        [0, 0, 1, 0],
        [0, 0, 0, -1],
        [-1, 0, 0, 0],
        [0, 1, 0, 0],
    ]
    phi3 = [
        [0, 0, 0, 1],
        [0, 0, 1, 0],
        [0, -1, 0, 0],
        [-1, 0, 0, 0],
    ]
    return FormTuple([AlternatingForm.from_rows(QQ, m) for m in (phi1, phi2, phi3)])


def quaternion_minor_identity(x) -> bool:
    """Check the closed form of the four maximal minors of the commutation matrix.

    For the quaternion tuple, deleting column i (1-based) from the 3 x 4
    matrix M(x) gives a determinant of (-1)^i x_i (x1^2+x2^2+x3^2+x4^2),
    which is why the kernel is trivial for every nonzero rational x.
    """
    xv = [QQ.of(a) for a in x]
    if len(xv) != 4:
        raise ValueError("expected a 4-vector")
    m = commutation_matrix(quaternion_example(), xv)
    norm = sum(a * a for a in xv)
    for idx in range(4):
        minor = m.submatrix(range(3), [j for j in range(4) if j != idx]).det()
        sign = -1 if (idx + 1) % 2 == 1 else 1
        if minor != sign * xv[idx] * norm:
            return False
    return True
