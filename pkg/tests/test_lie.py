"""Algebras built from form tuples: bracket, center, quotients, witness search."""

import random
from fractions import Fraction

import pytest

from nilforms.fields import GF, QQ
from nilforms.forms import (
    AlternatingForm,
    FormTuple,
    change_basis_tuple,
    is_independent,
    random_subspace,
    random_tuple,
    reduce_tuple_mod_p,
    spans_equal,
)
from nilforms.isotropy import quaternion_example
from nilforms.lie import (
    ExhaustiveFp,
    LieAlgebra2,
    RandomizedQ,
    StrategyError,
    bracket,
    center,
    center_dim,
    corollary_bound,
    derived_dim,
    ms_certificate,
    ms_search,
    ms_thresholds,
    quotient_central,
    theorem1_predict,
)
from nilforms.linalg import Matrix, Subspace, enumerate_subspaces_fp

from helpers import basis_vector, heisenberg, std_tuple


def test_bracket_of_generators_is_central_generator():
    alg = LieAlgebra2(heisenberg())
    out = bracket(alg, alg.basis_v(0), alg.basis_v(1))
    assert out == alg.basis_s(0)


def test_bracket_is_alternating_and_class_two():
    alg = LieAlgebra2(random_tuple(4, 2, 9, 3))
    rng = random.Random(4)
    x = alg.element([QQ.of(rng.randint(-5, 5)) for _ in range(4)])
    y = alg.element([QQ.of(rng.randint(-5, 5)) for _ in range(4)])
    z = alg.element([QQ.of(rng.randint(-5, 5)) for _ in range(4)])
    assert bracket(alg, x, x).is_zero()
    assert bracket(alg, x, bracket(alg, y, z)).is_zero()
    left = bracket(alg, x.add(y), z)
    assert left == bracket(alg, x, z).add(bracket(alg, y, z))


def test_bracket_on_quaternion_tuple():
    alg = LieAlgebra2(quaternion_example())
    out = bracket(alg, alg.basis_v(0), alg.basis_v(3))
    assert out == alg.basis_s(2)


def test_bracket_rejects_foreign_elements():
    alg = LieAlgebra2(heisenberg())
    other = LieAlgebra2(std_tuple(3, (0, 1)))
    with pytest.raises(ValueError):
        bracket(alg, alg.basis_v(0), other.basis_v(0))


def test_center_of_degenerate_single_form():
    alg = LieAlgebra2(std_tuple(3, (0, 1)))
    assert center(alg) == Subspace.from_vectors(QQ, 3, [basis_vector(QQ, 3, 2)])
    assert center_dim(alg) == 2


def test_center_of_nondegenerate_single_form():
    alg = LieAlgebra2(heisenberg())
    assert center(alg).dim == 0
    assert center_dim(alg) == 1


def test_center_of_quaternion_tuple_is_central_series_only():
    alg = LieAlgebra2(quaternion_example())
    assert center(alg).dim == 0
    assert center_dim(alg) == 3


def test_derived_dimension():
    assert derived_dim(LieAlgebra2(random_tuple(4, 3, 9, 9))) == 3
    psi12 = AlternatingForm.standard(QQ, 3, 0, 1)
    doubled = AlternatingForm(psi12.matrix.scale(QQ.of(2)))
    dependent = LieAlgebra2(FormTuple([psi12, doubled]), check=False)
    assert derived_dim(dependent) == 1


def test_dependent_tuple_rejected_unless_unchecked():
    psi12 = AlternatingForm.standard(QQ, 3, 0, 1)
    with pytest.raises(ValueError):
        LieAlgebra2(FormTuple([psi12, psi12]))
    assert LieAlgebra2(FormTuple([psi12, psi12]), check=False).t == 2


def test_generic_center_prediction_values():
    assert theorem1_predict(5, 1) == 2
    assert theorem1_predict(4, 1) == 1
    assert theorem1_predict(6, 3) == 3
    assert theorem1_predict(3, 1) == 2


def test_quotient_by_zero_subspace_preserves_span():
    phi = random_tuple(4, 2, 9, 21)
    alg = LieAlgebra2(phi)
    out = quotient_central(alg, Subspace.zero(QQ, 2))
    assert spans_equal(out.phi, phi)


def test_quotient_by_whole_derived_subalgebra_rejected():
    alg = LieAlgebra2(heisenberg())
    with pytest.raises(ValueError):
        quotient_central(alg, Subspace.full(QQ, 1))


def test_quotient_drops_one_central_direction():
    phi = std_tuple(4, (0, 1), (2, 3))
    alg = LieAlgebra2(phi)
    h = Subspace.from_vectors(QQ, 2, [basis_vector(QQ, 2, 1)])
    out = quotient_central(alg, h)
    assert out.t == 1
    assert spans_equal(out.phi, std_tuple(4, (0, 1)))


def test_quotient_output_stays_independent():
    rng = random.Random(33)
    phi = random_tuple(5, 3, 9, rng)
    alg = LieAlgebra2(phi)
    h = random_subspace(QQ, 3, 1, 5, rng)
    while h.dim != 1:
        h = random_subspace(QQ, 3, 1, 5, rng)
    out = quotient_central(alg, h)
    assert (out.n, out.t) == (5, 2)
    assert is_independent(out.phi)


def test_certificate_true_when_span_is_everything():
    alg = LieAlgebra2(std_tuple(3, (0, 1), (0, 2), (1, 2)))
    rng = random.Random(6)
    for _ in range(5):
        u = random_subspace(QQ, 3, 1, 5, rng)
        while u.dim != 1:
            u = random_subspace(QQ, 3, 1, 5, rng)
        assert ms_certificate(alg, u, 2, 1)


def test_certificate_false_for_nondegenerate_single_form():
    phi = std_tuple(4, (0, 1), (2, 3))
    combined = FormTuple([AlternatingForm(phi.forms[0].matrix.add(phi.forms[1].matrix))])
    alg = LieAlgebra2(combined)
    rng = random.Random(7)
    for _ in range(5):
        u = random_subspace(QQ, 4, 2, 5, rng)
        while u.dim != 2:
            u = random_subspace(QQ, 4, 2, 5, rng)
        assert not ms_certificate(alg, u, 2, 1)


def test_certificate_respects_dimension_preconditions():
    alg = LieAlgebra2(std_tuple(4, (0, 1)))
    u_wrong = Subspace.from_vectors(QQ, 4, [basis_vector(QQ, 4, 0)])
    with pytest.raises(ValueError):
        ms_certificate(alg, u_wrong, 2, 1)
    with pytest.raises(ValueError):
        ms_certificate(alg, random_subspace(QQ, 4, 2, 5, random.Random(1)), 2, 2)


def test_certificate_depends_only_on_span():
    rng = random.Random(8)
    phi = random_tuple(4, 2, 9, rng)
    alg = LieAlgebra2(phi)
    c = Matrix(QQ, [[QQ.of(2), QQ.of(1)], [QQ.of(1), QQ.of(1)]])
    changed = LieAlgebra2(change_basis_tuple(phi, c))
    for _ in range(8):
        u = random_subspace(QQ, 4, 2, 5, rng)
        while u.dim != 2:
            u = random_subspace(QQ, 4, 2, 5, rng)
        assert ms_certificate(alg, u, 2, 1) == ms_certificate(changed, u, 2, 1)


def test_guaranteed_regime_certifies_every_witness():
    # t at or above the guarantee threshold makes every u of the right dim work
    phi = std_tuple(3, (0, 1), (0, 2), (1, 2))
    alg = LieAlgebra2(phi)
    _, guaranteed = ms_thresholds(3, 2, 1)
    assert alg.t >= guaranteed
    phi3 = reduce_tuple_mod_p(phi, 3)
    alg3 = LieAlgebra2(phi3)
    seen = 0
    for u in enumerate_subspaces_fp(3, 1, 3):
        seen += 1
        assert ms_certificate(alg3, u, 2, 1)
    assert seen == 13
    rng = random.Random(9)
    for _ in range(10):
        u = random_subspace(QQ, 3, 1, 5, rng)
        while u.dim != 1:
            u = random_subspace(QQ, 3, 1, 5, rng)
        assert ms_certificate(alg, u, 2, 1)


def test_search_exhaustive_finds_witness_in_guaranteed_regime():
    alg = LieAlgebra2(std_tuple(3, (0, 1), (0, 2), (1, 2)))
    found = ms_search(alg, 2, 1, ExhaustiveFp(5))
    assert found is not None
    assert found.field == GF(5)
    alg5 = LieAlgebra2(reduce_tuple_mod_p(alg.phi, 5))
    assert ms_certificate(alg5, found, 2, 1)


def test_search_exhaustive_reports_absence_for_nondegenerate_form():
    phi = std_tuple(4, (0, 1), (2, 3))
    combined = FormTuple([AlternatingForm(phi.forms[0].matrix.add(phi.forms[1].matrix))])
    alg = LieAlgebra2(combined)
    assert ms_search(alg, 2, 1, ExhaustiveFp(3)) is None


def test_search_randomized_finds_witness_and_verifies():
    alg = LieAlgebra2(std_tuple(3, (0, 1), (0, 2), (1, 2)))
    found = ms_search(alg, 2, 1, RandomizedQ(trials=50, seed=0))
    assert found is not None
    assert found.field == QQ
    assert ms_certificate(alg, found, 2, 1)


def test_search_with_full_quotient_dimension():
    alg = LieAlgebra2(std_tuple(3, (0, 1)))
    zero = ms_search(alg, 3, 1, ExhaustiveFp(3))
    assert zero == Subspace.zero(alg.field, 3)
    assert ms_search(alg, 3, 2, ExhaustiveFp(3)) is None


def test_search_errors_when_reduction_degenerates():
    psi12 = AlternatingForm.standard(QQ, 3, 0, 1)
    tripled = AlternatingForm(
        psi12.matrix.add(AlternatingForm.standard(QQ, 3, 0, 2).matrix.scale(QQ.of(3)))
    )
    alg = LieAlgebra2(FormTuple([psi12, tripled]))
    with pytest.raises(StrategyError):
        ms_search(alg, 2, 1, ExhaustiveFp(3))


def test_search_validates_parameters():
    alg = LieAlgebra2(std_tuple(3, (0, 1)))
    with pytest.raises(ValueError):
        ms_search(alg, 4, 1, ExhaustiveFp(3))
    with pytest.raises(ValueError):
        ms_search(alg, 2, 2, ExhaustiveFp(3))


def test_threshold_values():
    assert ms_thresholds(4, 2, 1) == (Fraction(2), Fraction(6))
    assert ms_thresholds(3, 2, 1) == (Fraction(1), Fraction(3))
    absence, guaranteed = ms_thresholds(4, 4, 2)
    assert guaranteed == 2
    assert absence <= guaranteed
    with pytest.raises(ValueError):
        ms_thresholds(4, 2, 2)


def test_threshold_gap_is_nonnegative_everywhere():
    for n in range(2, 9):
        for n0 in range(2, n + 1):
            for t0 in range(1, n0 * (n0 - 1) // 2 + 1):
                absence, guaranteed = ms_thresholds(n, n0, t0)
                assert guaranteed - absence == Fraction(n0 * (n - n0), t0)


def test_dimension_corollary_values():
    assert corollary_bound(5, 3) == 4
    assert corollary_bound(4, 3) == 2
    assert corollary_bound(4, 3) == Fraction(2)
    with pytest.raises(ValueError):
        corollary_bound(4, 4)
    with pytest.raises(ValueError):
        corollary_bound(4, 5)
