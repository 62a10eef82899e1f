"""Cellular chain complexes and homology of real flag manifolds."""

__version__ = "0.1.0"

from .boundary import (
    PLUS_ONE_POLICY,
    ChainComplex,
    CoveringEdge,
    SignPolicy,
    assemble,
    coefficient,
    covering_edges,
    kappa,
    orientation_policy,
    phi,
    select_policy,
    sigma,
)
from .chevalley import ChevalleyBasis, chevalley_basis
from .errors import (
    CheckFailed,
    ComplexInvalid,
    CorruptCache,
    FlagHomError,
    GroupTooLarge,
    InvalidSpec,
    MissingRoot,
    NotARoot,
    NotMinimalRepresentative,
    NotProportional,
    OrbitInconsistent,
    SignInconsistency,
)
from .homology import (
    HomologyGroup,
    IntegerMatrix,
    SmithNormalFormResult,
    euler_characteristic,
    homology_groups,
    poincare_table,
    smith_normal_form,
)
from .root_system import (
    MultiplicityMap,
    RootSystem,
    RootSystemSpec,
    build_root_system,
    killing_number,
    multiplicity_map,
    reflect,
    root_system,
)
from .signs import sign_freedom, solve_signs
from .weyl import (
    CosetRep,
    ThetaSubset,
    WeylElement,
    WeylGroup,
    bruhat_leq,
    canonical_reduced_word,
    cell_dimension,
    generate_weyl_group,
    inversion_set,
    minimal_coset_representatives,
    principal_involution,
    theta_subset,
)
