"""graphshift - the shift (adjacency) operator on lp spaces of infinite graphs.

Provides:
- Neighbor oracles for lattices, tessellations, tail graphs and rooted trees
- BFS truncations, coordination sequences and Rayleigh-ratio witnesses
- Certified norm brackets and kernel elements on trees
- Exact polynomial root isolation and point spectra of graphs with a tail

Example:
    >>> from shift import make_homogeneous, gamma_sequence
    >>> gamma_sequence(make_homogeneous("lattice", d=2), 3).counts
    (1, 4, 8, 12)

    >>> from shift import Kite, full_spectrum
    >>> [round(x, 6) for x in full_spectrum(Kite(2)).union()]
    [2.236068]
"""

from .config import Settings, get_settings, override_settings
from .errors import (
    ErrorCode, ErrorInfo, Severity, ErrorList,
    ShiftError, EncodingError, ResourceError, DomainError, CertificationError, UsageError,
    collect_errors, errors_to_response, has_fatal, error_summary, diagnostic_line,
)
from .vertices import (
    ROOT, LadderPoint, LatticePoint, PlanarPoint, TailRole, TailVertex, TreePath, U, V, VertexId, W,
    parse, render,
)
from .graph import (
    GammaSequence, GraphFamily, Truncation, degree_bounds, euclidean_ratio, gamma_sequence,
    lattice_gamma_closed_form, neighbors, truncate,
)
from .families import (
    AlmostRegularTree, AlternatingTree, CombWithTail, ExplicitBeta, FlySwatter, InfiniteComb, Kite,
    StretchedTree, TailGraph, TailKind, TailShape, TreeFamily, TreeSpec,
    make_homogeneous, make_infinite_comb, make_tail_graph, make_tree,
)
from .lp import (
    BallIndicator, Exponent, LpFunction, NormBracket, PointMass, TreeWeight,
    apply_shift, lp_norm, lp_power_sum, norm_bounds, pairing, power_iteration_norm,
    radial_rayleigh_ratio, rayleigh_ratio, tree_norm_bound, witness_function,
)
from .kernel import (
    BranchingBounds, KernelClass, KernelResidual, LevelPowerSums, SandwichReport, Verdict,
    alternating_kernel, classify_kernel, inductive_kernel, kernel_residual, level_power_sums, sandwich_bounds,
    stretched_partial_sums, tree_bounds,
)
from .poly import (
    CombH, KiteP, Polynomial, comb_determinant, count_roots_exact, family_polynomial,
    roots_in_open_interval,
)
from .spectra import (
    Branch, Membership, Spectrum, TailEigenpair, finite_section_eigenvalues, full_spectrum,
    infinite_comb_spectrum, synthesize_eigenvector, tail_branch_eigenvalues, tail_parameter,
    zero_branch_eigenvalues,
)
from .schemas import SCHEMA_REFERENCE, get_json_schema, parse_tree_spec, validate_record

__version__ = "0.1.0"


__all__ = [
    # Configuration
    "Settings", "get_settings", "override_settings",
    # Errors
    "ErrorCode", "ErrorInfo", "Severity", "ErrorList",
    "ShiftError", "EncodingError", "ResourceError", "DomainError", "CertificationError", "UsageError",
    "collect_errors", "errors_to_response", "has_fatal", "error_summary", "diagnostic_line",
    # Vertices
    "ROOT", "LadderPoint", "LatticePoint", "PlanarPoint", "TailRole", "TailVertex", "TreePath",
    "U", "V", "W", "VertexId", "parse", "render",
    # Graphs
    "GammaSequence", "GraphFamily", "Truncation", "degree_bounds", "euclidean_ratio",
    "gamma_sequence", "lattice_gamma_closed_form", "neighbors", "truncate",
    # Families
    "AlmostRegularTree", "AlternatingTree", "CombWithTail", "ExplicitBeta", "FlySwatter",
    "InfiniteComb", "Kite", "StretchedTree", "TailGraph", "TailKind", "TailShape", "TreeFamily",
    "TreeSpec", "make_homogeneous", "make_infinite_comb", "make_tail_graph", "make_tree",
    # lp calculus
    "BallIndicator", "Exponent", "LpFunction", "NormBracket", "PointMass", "TreeWeight",
    "apply_shift", "lp_norm", "lp_power_sum", "norm_bounds", "pairing", "power_iteration_norm",
    "radial_rayleigh_ratio", "rayleigh_ratio", "tree_norm_bound", "witness_function",
    # Kernels
    "BranchingBounds", "KernelClass", "KernelResidual", "LevelPowerSums", "SandwichReport", "Verdict",
    "alternating_kernel", "classify_kernel", "inductive_kernel", "kernel_residual", "level_power_sums",
    "sandwich_bounds", "stretched_partial_sums", "tree_bounds",
    # Polynomials
    "CombH", "KiteP", "Polynomial", "comb_determinant", "count_roots_exact", "family_polynomial",
    "roots_in_open_interval",
    # Spectra
    "Branch", "Membership", "Spectrum", "TailEigenpair", "finite_section_eigenvalues",
    "full_spectrum", "infinite_comb_spectrum", "synthesize_eigenvector",
    "tail_branch_eigenvalues", "tail_parameter", "zero_branch_eigenvalues",
    # Schemas
    "SCHEMA_REFERENCE", "get_json_schema", "parse_tree_spec", "validate_record",
    "__version__",
]
