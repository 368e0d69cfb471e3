"""Weighted-graph side of the package: calculus, distance, spectra."""

from .core import (
    EdgeFunction,
    VertexFunction,
    WeightedGraph,
    build_graph,
    lipschitz_energy,
    norm_p,
    one_sided_gradient,
    weighted_divergence,
    weighted_gradient,
)
from .distance import (
    DistanceField,
    SaturationReport,
    gradient_saturation,
    graph_distance,
    ground_state,
    shortest_path_count,
)
from .generators import (
    graph_from_mesh_edges,
    grid_graph,
    path_graph,
    random_connected_graph,
)
from .io import (
    certificate_to_dict,
    dump_graph_json,
    format_float,
    load_graph_json,
    write_certificate_json,
    write_trajectory_csv,
)
from .spectral import (
    CertificateInfeasibility,
    EigenCertificate,
    ExtremePointResult,
    FlowTrajectory,
    SubgradientDiagnostics,
    asymptotic_profile,
    eigen_certificate,
    extreme_point_check,
    gradient_flow,
    prox_lipschitz_energy,
    subgradient_membership,
)

__all__ = [
    "EdgeFunction",
    "VertexFunction",
    "WeightedGraph",
    "build_graph",
    "lipschitz_energy",
    "norm_p",
    "one_sided_gradient",
    "weighted_divergence",
    "weighted_gradient",
    "DistanceField",
    "SaturationReport",
    "gradient_saturation",
    "graph_distance",
    "ground_state",
    "shortest_path_count",
    "graph_from_mesh_edges",
    "grid_graph",
    "path_graph",
    "random_connected_graph",
    "certificate_to_dict",
    "dump_graph_json",
    "format_float",
    "load_graph_json",
    "write_certificate_json",
    "write_trajectory_csv",
    "CertificateInfeasibility",
    "EigenCertificate",
    "ExtremePointResult",
    "FlowTrajectory",
    "SubgradientDiagnostics",
    "asymptotic_profile",
    "eigen_certificate",
    "extreme_point_check",
    "gradient_flow",
    "prox_lipschitz_energy",
    "subgradient_membership",
]
