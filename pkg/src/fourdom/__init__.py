"""Decision engine and invariant calculator for degree-one maps between
closed orientable 4-manifolds with cyclic fundamental group.

Exact algebra throughout: unimodular integer forms, GF(2) forms, hermitian
forms over the Laurent ring, manifold descriptors, and three-valued
domination decisions with machine-checkable certificates.
"""

from .domination import (
    Chi4,
    Decision,
    EulerCheck,
    FiniteAbelianBound,
    GroupDescriptor,
    GroupKind,
    Outcome,
    RigidityReport,
    StableTargetZ,
    chi4,
    dominates,
    enumerate_simply_connected,
    enumerate_stable_targets_Z,
    enumerate_targets_Zn,
    euler_check,
    finite_abelian_targets_bound,
    finite_cyclic_group,
    finite_abelian_group,
    infinite_cyclic_group,
    minimal_target,
    other_group,
    rhs_realizable,
    rigidity,
    stably_dominates,
    trivial_group,
    universal_dominator_Z,
    verify_certificate,
)
from .intforms import (
    EmbeddingResult,
    FormClass,
    IntForm,
    Parity,
    SplitDecision,
    Ternary,
    classify,
    diag_form,
    direct_sum,
    e8_form,
    embedding_oracle,
    exists_unimodular,
    hyperbolic_plane,
    is_isomorphic,
    make_form,
    mod2_reduction,
    named_form,
    rank_zero_form,
    split_off,
)
from .laurent import (
    HermitianLambdaForm,
    LaurentPoly,
    augment,
    conjugate,
    determinant,
    extend_from_integer,
    ht_matrix_A,
    is_nonsingular,
    make_hermitian_form,
    verify_extension_witness,
)
from .manifolds import (
    FiniteCyclic,
    InfiniteCyclic,
    ManifoldDescriptor,
    SigmaLabel,
    SimplyConnected,
    W2,
    betti,
    chi,
    connected_sum,
    decompose,
    named_manifold,
    parse_manifold_expression,
    rhs_catalog,
    stabilize,
    validate,
    z2_form,
)
from .modtwo import (
    ModTwoForm,
    characteristic_element,
    classify_z2,
    direct_sum_z2,
    make_mod2_form,
    split_off_z2,
)

__version__ = "0.1.0"
