"""Hierarchical correlation spectra of local measurement statistics.

The pipeline: build a mixed multi-qubit state, measure each qubit with
a local projector pair, and decompose the resulting joint outcome
distribution into per-order correlation contributions I^(k) (bits) via
information projections onto bounded-interaction-order families.
"""

from .distributions import (
    JointDistribution,
    binary_entropy,
    kl_divergence,
    load_distribution,
    marginalize,
    multi_information,
    save_distribution,
    shannon_entropy,
    total_variation,
    uniform_distribution,
)
from .errors import (
    ConvergenceError,
    HierqError,
    InvalidArgumentError,
    NumericalError,
)
from .kernels import backend_name
from .maxent import max_entropy_projection
from .measurement import (
    LocalProjectorBasis,
    bloch_rotation,
    born_statistics,
    computational_basis_projectors,
    rotated_basis_projectors,
    validate_projector_set,
)
from .projection import (
    HierarchySpectrum,
    ProjectionResult,
    hierarchy_spectrum,
    interaction_subsets,
    ipf_project,
)
from .states import (
    DensityOperator,
    StateVector,
    ghz_state,
    load_state_file,
    maximally_mixed,
    mix_with_maximally_mixed,
    pure_to_density,
    save_state_file,
    validate_density,
    validate_state,
    w_state,
)
from .sweep import (
    FamilySpec,
    MonotoneReport,
    SweepRow,
    SweepTable,
    check_monotone,
    default_alpha_grid,
    emit_csv,
    emit_plot_script,
    family_distribution,
    find_interior_maximum,
    render_csv,
    render_plot_script,
    run_sweep,
    sweep_row,
)
from .validation import CheckResult, ValidationReport

__version__ = "0.1.0"

__all__ = [
    "CheckResult",
    "ConvergenceError",
    "DensityOperator",
    "FamilySpec",
    "HierarchySpectrum",
    "HierqError",
    "InvalidArgumentError",
    "JointDistribution",
    "LocalProjectorBasis",
    "MonotoneReport",
    "NumericalError",
    "ProjectionResult",
    "StateVector",
    "SweepRow",
    "SweepTable",
    "ValidationReport",
    "backend_name",
    "binary_entropy",
    "bloch_rotation",
    "born_statistics",
    "check_monotone",
    "computational_basis_projectors",
    "default_alpha_grid",
    "emit_csv",
    "emit_plot_script",
    "family_distribution",
    "find_interior_maximum",
    "ghz_state",
    "hierarchy_spectrum",
    "interaction_subsets",
    "ipf_project",
    "kl_divergence",
    "load_distribution",
    "load_state_file",
    "marginalize",
    "max_entropy_projection",
    "maximally_mixed",
    "mix_with_maximally_mixed",
    "multi_information",
    "pure_to_density",
    "render_csv",
    "render_plot_script",
    "rotated_basis_projectors",
    "run_sweep",
    "save_distribution",
    "save_state_file",
    "shannon_entropy",
    "sweep_row",
    "total_variation",
    "uniform_distribution",
    "validate_density",
    "validate_projector_set",
    "validate_state",
    "w_state",
]
