"""Exact desk-scale simulator and verifier for symmetry-reduced QAOA on qudits."""

from .combinatorics import (
    Box,
    Partition,
    Tableau,
    canonical_tableau,
    character,
    content,
    cycle_type,
    dim_symmetric_irrep,
    dim_unitary_irrep,
    enumerate_tableaux,
    hook_length,
    partitions,
)
from .errors import (
    ConfigError,
    ConstructionFailureError,
    DimensionCapError,
    SectorInadmissibleError,
    SectorQaoaError,
    ShapeMismatchError,
    SymmetryViolationError,
    UnsupportedDimensionError,
)
from .hamiltonians import (
    BlockStructure,
    ProblemSpec,
    ZForm,
    block_commutant_check,
    default_epsilon,
    eigenvalue_blocks,
    problem_hamiltonian,
    reduced_mixer,
    standard_mixer,
    tau_site,
    z_form,
    z_form_values,
)
from .qaoa_engine import (
    QaoaParams,
    QaoaResult,
    SectorMinima,
    SectorRunReport,
    expectation,
    optimize,
    qaoa_state,
    run_reduced,
    sample,
    sector_minima_table,
    sector_minimum,
)
from .schur_weyl import (
    SectorState,
    SectorTable,
    ground_state,
    sector_basis,
    sector_preservation_report,
    sector_projector,
    sector_table,
    young_symmetrizer,
)
from .symmetry import (
    OrbitSet,
    PermGroup,
    invariant_vectors,
    orbit_count,
    orbit_invariance_check,
    orbits,
    site_permutation_action,
)
from .tensor_ops import (
    Operator,
    PFReport,
    SpectralDecomposition,
    StateVector,
    basis_state,
    evolve,
    permutation_rep,
    pf_check,
    site_lift,
    spectral,
    uniform_state,
    yjm,
)

__version__ = "0.1.0"
