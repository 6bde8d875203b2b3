"""Ihara zeta functions of finite multigraphs, covering towers built from
voltage assignments, and L2 zeta functions of infinite abelian covers.

The central objects: a zeta function attached to a finite multigraph via
its vertex determinant formula, cover towers whose normalized zetas
converge on a slit disk, and the torus-quadrature evaluator for the limit.
"""

from .convergence import (
    ConvergenceReport,
    GridSpec,
    LevelReport,
    cdf_convergence,
    deitmar_residual,
    tower_convergence,
    write_convergence_report,
)
from .covers import (
    DEFAULT_SIZE_CAP,
    Tower,
    TowerLevel,
    VoltageAssignment,
    covering_projection,
    cyclic_tower,
    derived_graph,
    homology_tower,
    lattice_tower,
    load_tower_spec,
    load_voltages,
    spanning_tree_edges,
    tower_from_spec,
    validate_cover,
    voltage_from_json,
)
from .errors import (
    DomainError,
    GraphZetaError,
    InputError,
    NumericError,
    ResourceError,
    UnsupportedError,
)
from .graphs import (
    MultiGraph,
    RegularityInfo,
    SpectrumData,
    bouquet_graph,
    build_graph,
    complete_graph,
    cycle_graph,
    graph_from_json,
    graph_to_json,
    load_graph,
    path_graph,
    petersen_graph,
    regularity,
    save_graph,
    spectrum,
)
from .l2 import (
    L2Zeta,
    SpectralCDF,
    TorusSymbol,
    empirical_cdf,
    equivariant_walk_counts,
    l2_log_det,
    l2_series_oracle,
    l2_zeta_abelian,
    symbol_spectral_cdf,
    torus_l2,
    torus_symbol,
    tree_l2_reference,
)
from .polynomials import IntPolynomial
from .region import (
    RegionOmega,
    distance_to_C,
    omega_contains,
    set_c_polyline,
    slit_distance,
)
from .zeta import (
    ZeroReport,
    ZetaFunction,
    ZetaZero,
    det_poly,
    euler_log_coeffs,
    functional_equation_residual,
    functional_equation_sides,
    normalized_zeta,
    nth_root_det,
    transfer_operator,
    zeta_eval,
    zeta_function,
    zeta_log_coeffs,
    zeta_zeros,
)

__version__ = "0.1.0"

__all__ = [
    "ConvergenceReport",
    "DEFAULT_SIZE_CAP",
    "DomainError",
    "GraphZetaError",
    "GridSpec",
    "InputError",
    "IntPolynomial",
    "L2Zeta",
    "LevelReport",
    "MultiGraph",
    "NumericError",
    "RegionOmega",
    "RegularityInfo",
    "ResourceError",
    "SpectralCDF",
    "SpectrumData",
    "TorusSymbol",
    "Tower",
    "TowerLevel",
    "UnsupportedError",
    "VoltageAssignment",
    "ZeroReport",
    "ZetaFunction",
    "ZetaZero",
    "bouquet_graph",
    "build_graph",
    "cdf_convergence",
    "complete_graph",
    "covering_projection",
    "cycle_graph",
    "cyclic_tower",
    "deitmar_residual",
    "derived_graph",
    "det_poly",
    "distance_to_C",
    "empirical_cdf",
    "equivariant_walk_counts",
    "euler_log_coeffs",
    "functional_equation_residual",
    "functional_equation_sides",
    "graph_from_json",
    "graph_to_json",
    "homology_tower",
    "l2_log_det",
    "l2_series_oracle",
    "l2_zeta_abelian",
    "lattice_tower",
    "load_graph",
    "load_tower_spec",
    "load_voltages",
    "normalized_zeta",
    "nth_root_det",
    "omega_contains",
    "path_graph",
    "petersen_graph",
    "regularity",
    "save_graph",
    "set_c_polyline",
    "slit_distance",
    "spanning_tree_edges",
    "spectrum",
    "symbol_spectral_cdf",
    "torus_l2",
    "torus_symbol",
    "tower_convergence",
    "tower_from_spec",
    "transfer_operator",
    "tree_l2_reference",
    "validate_cover",
    "voltage_from_json",
    "write_convergence_report",
    "zeta_eval",
    "zeta_function",
    "zeta_log_coeffs",
    "zeta_zeros",
]
