"""Multi-condition multi-objective optimization engine.

Thin Python layer over the C++ core: problem-space utilities, Chebyshev
scalarization, Pareto/hypervolume analysis, the Kursawe benchmark with its
sampled ground-truth front, Karman-Trefftz airfoil geometry, and the
high-level optimize/analyze drivers.
"""

from ._core import (
    BoxSpace,
    DenseNetwork,
    airfoil_objectives,
    chebyshev,
    dominates,
    hypervolume_2d,
    kt_airfoil,
    kursawe,
    kursawe_g,
    kursawe_oracle_front,
    mock_aero,
    pareto_filter,
    reward,
    run_analyze,
    run_optimize,
    sample_weight,
    trailing_edge_angle,
)

__all__ = [
    "BoxSpace",
    "DenseNetwork",
    "airfoil_objectives",
    "chebyshev",
    "dominates",
    "hypervolume_2d",
    "kt_airfoil",
    "kursawe",
    "kursawe_g",
    "kursawe_oracle_front",
    "mock_aero",
    "pareto_filter",
    "reward",
    "run_analyze",
    "run_optimize",
    "sample_weight",
    "trailing_edge_angle",
]

__version__ = "0.1.0"
