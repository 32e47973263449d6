"""Curvature, mass, and rigidity diagnostics on weighted grid-like graphs.

The package computes the edge curvature of weighted graphs through an
exact integer-potential enumeration, evaluates closed forms for it on
weighted lattice windows and quotient tori, sums shell contributions
into a discrete mass functional, and runs a staged rigidity pipeline
that decides whether a nonnegatively curved, asymptotically flat graph
is a relabeled standard grid.

Everything runs in one of two numeric modes: exact rational arithmetic
(the default, bit-reproducible) or floating point (for procedural weight
fields with irrational values).
"""

from .numeric import EXACT, FLOAT, NumericMode
from .errors import (
    BudgetExceededError,
    DisconnectedGraphError,
    GridmassError,
    InputError,
    OutOfWindowError,
    VertexNotFoundError,
)
from .graph import (
    Boundaries,
    LipschitzReport,
    PotentialFunction,
    WeightedGraph,
    ball,
    boundaries,
    distance,
    gradient,
    graph_from_json,
    graph_to_json,
    is_lipschitz,
    laplacian,
)
from .ollivier import CurvatureResult, edge_curvature, scalar_curvature
from .grid import (
    FieldWeights,
    FlatnessReport,
    GridWindow,
    MassEstimate,
    ShellSums,
    StrongDecayReport,
    TableWeights,
    abs_term,
    flatness_diagnostics,
    kappa_grid,
    line_concavity_check,
    log_model_field,
    mass_estimate,
    mass_gap,
    scalar_grid,
    schwarzschild_field,
    shell_sums,
    standard_window,
    strong_decay_check,
    window_from_json,
    window_to_json,
)
from .torus import (
    TorusGraph,
    TorusSpec,
    TotalCurvature,
    build_torus,
    closed_form_distance_condition,
    cycle_sum,
    distance_condition,
    torus_kappa,
    torus_spec_from_json,
    torus_spec_to_json,
    total_scalar_curvature,
)
from .salami import (
    AsymptoticallyFlatGraph,
    PropagationReport,
    RigidityResult,
    SalamiPartition,
    afg_from_json,
    afg_to_json,
    extremal_extension,
    harmonicity_propagation_check,
    make_partition,
    rigidity_check,
    standard_afg,
)
from .instances import build_instance, instance_json, instance_names
from .acceptance import run_all, run_criterion

__version__ = "0.1.0"

__all__ = [
    "EXACT",
    "FLOAT",
    "NumericMode",
    "GridmassError",
    "InputError",
    "VertexNotFoundError",
    "DisconnectedGraphError",
    "OutOfWindowError",
    "BudgetExceededError",
    "WeightedGraph",
    "PotentialFunction",
    "Boundaries",
    "LipschitzReport",
    "distance",
    "ball",
    "boundaries",
    "laplacian",
    "gradient",
    "is_lipschitz",
    "graph_to_json",
    "graph_from_json",
    "CurvatureResult",
    "edge_curvature",
    "scalar_curvature",
    "GridWindow",
    "TableWeights",
    "FieldWeights",
    "standard_window",
    "schwarzschild_field",
    "log_model_field",
    "kappa_grid",
    "abs_term",
    "scalar_grid",
    "shell_sums",
    "ShellSums",
    "mass_gap",
    "mass_estimate",
    "MassEstimate",
    "flatness_diagnostics",
    "FlatnessReport",
    "strong_decay_check",
    "StrongDecayReport",
    "line_concavity_check",
    "window_to_json",
    "window_from_json",
    "TorusSpec",
    "TorusGraph",
    "build_torus",
    "distance_condition",
    "closed_form_distance_condition",
    "torus_kappa",
    "cycle_sum",
    "total_scalar_curvature",
    "TotalCurvature",
    "torus_spec_to_json",
    "torus_spec_from_json",
    "SalamiPartition",
    "make_partition",
    "extremal_extension",
    "harmonicity_propagation_check",
    "PropagationReport",
    "AsymptoticallyFlatGraph",
    "standard_afg",
    "rigidity_check",
    "RigidityResult",
    "afg_to_json",
    "afg_from_json",
    "build_instance",
    "instance_json",
    "instance_names",
    "run_criterion",
    "run_all",
    "__version__",
]
