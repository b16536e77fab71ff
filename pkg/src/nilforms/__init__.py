"""Exact arithmetic for alternating form tuples and the 2-step nilpotent
Lie algebras and torsion-free groups they define, plus seeded genericity
experiments with verified certificates."""

from .fields import GF, QQ, FieldError, PrimeField, Rationals, is_prime
from .forms import (
    AlternatingForm,
    FormTuple,
    change_basis_tuple,
    dump_tuple,
    first_good_prime,
    form_space_dim,
    is_independent,
    load_tuple,
    n0_space,
    random_tuple,
    reduce_tuple_mod_p,
    spans_equal,
    standard_pairs,
    tuple_from_json_dict,
    tuple_to_json_dict,
)
from .grassmann import (
    PluckerPoint,
    basis_from_plucker,
    check_plucker_relations,
    dim_grassmannian,
    fiber_dim,
    gs_dim,
    gs_member,
    plucker,
    schubert_dim,
    variety_d_dim,
)
from .groups import (
    GroupElement,
    GroupPresentation,
    MalcevElement,
    bch_mul,
    center_rank,
    commutator,
    format_element,
    inverse,
    malcev_map,
    multiply,
    parse_element,
)
from .isotropy import (
    IsotropicCertificate,
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
from .lie import (
    ExhaustiveFp,
    LieAlgebra2,
    LieElement,
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
from .linalg import (
    DEFAULT_ENUM_CAP,
    EnumerationCapError,
    Matrix,
    Subspace,
    enumerate_subspaces_fp,
    gaussian_binomial,
    intersect_spans,
    kernel_basis,
    pfaffian,
    rank,
    rref,
    sum_spans,
)
from .seeding import derive_rng, derive_seed

__version__ = "0.1.0"
