"""Common isotropic subspaces: bounds, greedy search, finite-field oracle."""

import random

import pytest

from nilforms.fields import GF, QQ, FieldError
from nilforms.forms import random_tuple, reduce_tuple_mod_p
from nilforms.isotropy import (
    bound_k,
    bound_s,
    commutation_matrix,
    greedy_isotropic,
    heisenberg_abelian_bound,
    is_isotropic,
    max_isotropic_dim_fp,
    max_isotropic_fp,
    quaternion_example,
    quaternion_minor_identity,
)
from nilforms.linalg import EnumerationCapError, Subspace, rank

from helpers import basis_vector, heisenberg, int_entries, std_tuple

QUATERNION_MATRICES = [
    [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]],
    [[0, 0, 1, 0], [0, 0, 0, -1], [-1, 0, 0, 0], [0, 1, 0, 0]],
    [[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]],
]


def test_dimension_bounds():
    assert bound_k(4, 3) == 2
    assert bound_k(6, 2) == 3
    assert bound_s(4, 3) == 5
    assert bound_s(6, 2) == 5


def test_bound_boundary_case_is_attained_exactly():
    # 2n = t(k-1) + 2k with t=2, k=3 forces n=5
    assert bound_k(5, 2) == 3


def test_bounds_reject_single_forms():
    with pytest.raises(ValueError):
        bound_k(4, 1)
    with pytest.raises(ValueError):
        bound_s(4, 1)


def test_additive_relation_between_bounds():
    for n in range(2, 11):
        for t in range(2, n * (n - 1) // 2 + 1):
            assert bound_s(n, t) == bound_k(n, t) + t


def test_single_form_rank_bound():
    assert heisenberg_abelian_bound(3) == 2
    assert heisenberg_abelian_bound(5) == 3
    assert heisenberg_abelian_bound(9) == 5
    with pytest.raises(ValueError):
        heisenberg_abelian_bound(4)
    with pytest.raises(ValueError):
        heisenberg_abelian_bound(1)


def test_commutation_matrix_row_convention():
    phi = quaternion_example()
    rng = random.Random(12)
    x = [QQ.of(rng.randint(-9, 9)) for _ in range(4)]
    m = commutation_matrix(phi, x)
    assert (m.rows, m.cols) == (3, 4)
    for i, form in enumerate(phi.forms):
        for j in range(4):
            assert m.entries[i][j] == form.evaluate(basis_vector(QQ, 4, j), x)


def test_commutation_matrix_of_zero_vector():
    m = commutation_matrix(heisenberg(), [QQ.of(0), QQ.of(0)])
    assert int_entries(m) == [[0, 0]]


def test_commutation_matrix_kernel_contains_the_vector():
    m = commutation_matrix(heisenberg(), basis_vector(QQ, 2, 0))
    assert int_entries(m) == [[0, -1]]
    assert all(QQ.is_zero(v) for v in m.matvec(basis_vector(QQ, 2, 0)))


def test_quaternion_matrices_are_exact():
    phi = quaternion_example()
    assert phi.field == QQ
    assert (phi.n, phi.t) == (4, 3)
    assert [int_entries(f.matrix) for f in phi.forms] == QUATERNION_MATRICES
    assert phi.forms[0].matrix.entries[0][1] == 1
    assert phi.forms[2].matrix.entries[3][0] == -1
    assert all(f.matrix.is_alternating() for f in phi.forms)


def test_minor_identity_at_unit_and_zero_points():
    assert quaternion_minor_identity([QQ.of(1), QQ.of(0), QQ.of(0), QQ.of(0)])
    assert quaternion_minor_identity([QQ.of(0)] * 4)


def test_minor_identity_at_random_rational_points():
    rng = random.Random(14)
    for _ in range(200):
        x = [QQ.of(rng.randint(-30, 30)) for _ in range(4)]
        assert quaternion_minor_identity(x)


def test_commutation_matrix_rank_is_three_off_the_origin():
    phi = quaternion_example()
    assert rank(commutation_matrix(phi, basis_vector(QQ, 4, 0))) == 3


def test_greedy_on_single_nondegenerate_form():
    cert = greedy_isotropic(heisenberg(), seed=0, restarts=4)
    assert cert.verified
    assert cert.subspace.dim == 1


def test_greedy_meets_the_linear_extension_floor():
    rng = random.Random(18)
    for i in range(10):
        phi = random_tuple(6, 2, 9, rng)
        cert = greedy_isotropic(phi, seed=i, restarts=4)
        assert cert.verified
        assert cert.subspace.dim >= 2
        assert is_isotropic(phi, cert.subspace)


def test_greedy_is_deterministic_for_a_fixed_seed():
    phi = random_tuple(5, 2, 9, 44)
    a = greedy_isotropic(phi, seed=7, restarts=6)
    b = greedy_isotropic(phi, seed=7, restarts=6)
    assert a.subspace == b.subspace and a.verified == b.verified


def test_greedy_on_quaternion_tuple_stalls_at_lines():
    cert = greedy_isotropic(quaternion_example(), seed=3, restarts=30)
    assert cert.verified
    assert cert.subspace.dim == 1


def test_oracle_finds_plane_mod_five():
    phi5 = reduce_tuple_mod_p(quaternion_example(), 5)
    plane = max_isotropic_fp(phi5, 5, 2)
    assert plane is not None
    assert plane.dim == 2
    assert is_isotropic(phi5, plane)


def test_oracle_ground_truth_mod_three():
    phi3 = reduce_tuple_mod_p(quaternion_example(), 3)
    plane = max_isotropic_fp(phi3, 3, 2)
    assert plane is not None
    assert is_isotropic(phi3, plane)


def test_oracle_maximum_dimension_is_two_mod_small_primes():
    for p in (3, 5):
        phi_p = reduce_tuple_mod_p(quaternion_example(), p)
        assert max_isotropic_dim_fp(phi_p, p) == 2


def test_every_line_is_isotropic():
    phi3 = reduce_tuple_mod_p(std_tuple(3, (0, 1)), 3)
    assert max_isotropic_fp(phi3, 3, 1) is not None


def test_oracle_requires_matching_field():
    with pytest.raises(FieldError):
        max_isotropic_fp(quaternion_example(), 5, 2)
    phi5 = reduce_tuple_mod_p(quaternion_example(), 5)
    with pytest.raises(FieldError):
        max_isotropic_fp(phi5, 3, 2)


def test_oracle_respects_enumeration_cap():
    phi5 = reduce_tuple_mod_p(quaternion_example(), 5)
    with pytest.raises(EnumerationCapError):
        max_isotropic_fp(phi5, 5, 2, cap=10)


def test_isotropy_predicate_on_known_subspaces():
    phi = std_tuple(4, (0, 1))
    good = Subspace.from_vectors(QQ, 4, [basis_vector(QQ, 4, 2), basis_vector(QQ, 4, 3)])
    bad = Subspace.from_vectors(QQ, 4, [basis_vector(QQ, 4, 0), basis_vector(QQ, 4, 1)])
    assert is_isotropic(phi, good)
    assert not is_isotropic(phi, bad)
