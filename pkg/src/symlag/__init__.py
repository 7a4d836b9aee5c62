"""Symmetry analysis for multivariate Lagrange interpolation.

Decides which node-set symmetries are admissible for a symmetric polynomial
basis (via the exact linear system V X = r), whether two symmetric node sets
carry equivalent coordinate-permutation actions, and whether a concrete
(basis, nodes) pair is unisolvent — all in exact rational arithmetic.
"""

from .charmat import (
    KMatrix,
    VMatrix,
    class_size,
    fixed_point_count,
    k_matrix,
    v_entry_burnside,
    v_matrix,
)
from .errors import (
    CapacityError,
    DimensionMismatchError,
    DuplicatePointError,
    NotSymmetricError,
    SingularMatrixError,
    SizeMismatchError,
    SymlagError,
)
from .interp import (
    BasisFunction,
    BasisSet,
    ConstraintSystem,
    Monomial,
    NecessaryConditionsReport,
    UnisolvenceReport,
    act_on_function,
    basis_from_json,
    basis_orbit_count_under_stabilizer,
    check_necessary_conditions,
    load_basis,
    monomial_from_string,
    r_vector,
    solve_constraints,
    validate_symmetric_basis,
    vandermonde,
    vandermonde_matrix,
    verify_linear_independence,
)
from .nodeset import (
    EquivalenceResult,
    NodeSet,
    Orbit,
    Point,
    SnapEvent,
    canonical_arrangement,
    classify_point,
    equivalent,
    expand_orbit,
    load_node_set,
    matching_permutation,
    node_set_from_json,
    orbit_vector,
    parse_rational,
    simplest_rational_between,
    subgroup_orbit_count,
    validate_symmetric,
)
from .symcore import (
    DEFAULT_ENUM_LIMIT,
    OrbitType,
    Permutation,
    apply_to_point,
    canonical_point,
    compare_types,
    cycle_type,
    enumerate_types,
    orbit_size,
    stabilizer_elements,
    stabilizer_generators,
    stabilizer_order,
    type_rank,
)

__version__ = "0.1.0"
