"""Planner and verifier for orientation-preserving quadratic curved meshes
around cavities. Thin wrapper over the compiled extension."""

from _cavmesh import (  # noqa: F401
    GDerivedRoots,
    LayerPlan,
    LayerSpec,
    LayerTooThickError,
    MaterialParams,
    Mesh,
    PlanningError,
    RadialSamples,
    RadialSolution,
    SolverError,
    affine_n,
    affine_n_identity,
    build_layer,
    build_mesh,
    check_mesh,
    check_type_a,
    check_type_b,
    coarsen_split,
    deformation_n,
    g_roots,
    g_roots_for,
    mesh_validity_n,
    phi,
    phi_partials,
    solve,
    thresholds,
    validate_mesh,
    verdict,
)

__all__ = [
    "GDerivedRoots",
    "LayerPlan",
    "LayerSpec",
    "LayerTooThickError",
    "MaterialParams",
    "Mesh",
    "PlanningError",
    "RadialSamples",
    "RadialSolution",
    "SolverError",
    "affine_n",
    "affine_n_identity",
    "build_layer",
    "build_mesh",
    "check_mesh",
    "check_type_a",
    "check_type_b",
    "coarsen_split",
    "deformation_n",
    "g_roots",
    "g_roots_for",
    "mesh_validity_n",
    "phi",
    "phi_partials",
    "solve",
    "thresholds",
    "validate_mesh",
    "verdict",
]

__version__ = "0.1.0"
