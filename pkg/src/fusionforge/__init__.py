"""Fusion rings of affine Lie algebras, alpha-induction and extensions of conformal nets."""

__version__ = "0.1.0"

from .errors import (
    AmbiguityError,
    AxiomError,
    CapacityError,
    ClosureError,
    DomainError,
    FactorizationError,
    FusionForgeError,
    IdentityError,
    IntegralityError,
    LocalityError,
    NumericalError,
    RingMismatchError,
)
from .kacmoody import (
    AlgebraId,
    Weight,
    central_charge,
    color,
    conformal_weight,
    conjugate,
    enumerate_weights,
    orbit,
    parse_weight,
    simple_current,
    spin,
    su,
)
from .modular import (
    SMatrix,
    TMatrix,
    modular_invariants,
    mu_index,
    quantum_dimension_weyl,
    quantum_dimensions_weyl,
    s_matrix,
    t_matrix,
)
from .fusionring import (
    FusionRing,
    ProductRing,
    Sector,
    TableRing,
    fibonacci_ring,
    inner_product,
    pointed_ring,
    product_ring,
    table_ring,
    verlinde_ring,
    weight_ring,
)
from .gram import factor_gram, unique_factorization
from .extension import (
    ExtensionSpec,
    InductionReport,
    branching_from_invariant,
    ambient_from_branching,
    decompose_induction,
    index_and_mu,
    induction_inner_product,
    intermediate_check,
    locality_precheck,
    normality_check,
    orbifold_identity,
    simple_current_extension,
)
from .graphs import BipartiteGraph, EvenEnvironment, FusionGraph, emit, fusion_graph, induced_environment, principal_graph
from .permtools import Permutation, PermutationGroup, closure, pairing_to_permutation
from .config import build, load_config
