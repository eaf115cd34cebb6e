"""Exact calculator for the Jordan block structure of Milnor
monodromies of Newton non-degenerate complete intersection
singularities, driven purely by polyhedral combinatorics over the
rationals."""

__version__ = "0.1.0"

from .latticecount import EigenvalueClass
from .pipeline import (
    ThetaPackage,
    ThetaPackages,
    JordanReport,
    enumerate_theta_packages,
    eigenvalue_candidates,
    motivic_beta,
    jordan_blocks,
    jordan_max_count,
    jordan_second_count,
    spectrum,
)
from .betapoly import BasedPolytope, beta_recursive, beta_padded
from .geometry import NewtonPolyhedron, Polytope, mixed_volume
from .oracles import run_all

__all__ = [
    "__version__",
    "EigenvalueClass",
    "ThetaPackage",
    "ThetaPackages",
    "JordanReport",
    "enumerate_theta_packages",
    "eigenvalue_candidates",
    "motivic_beta",
    "jordan_blocks",
    "jordan_max_count",
    "jordan_second_count",
    "spectrum",
    "BasedPolytope",
    "beta_recursive",
    "beta_padded",
    "NewtonPolyhedron",
    "Polytope",
    "mixed_volume",
    "run_all",
]
