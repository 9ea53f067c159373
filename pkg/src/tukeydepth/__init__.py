"""Exact halfspace (Tukey) depth for point clouds in any dimension.

The depth of a query point z with respect to n data points is the smallest
number of points contained in a closed halfspace with z on its boundary
hyperplane, reported both as the integer count ``nhd`` and the fraction
``hd = nhd / n``.  All algorithms here are exact, handle data that are not
in general position, and tolerate ties, duplicates, and points coinciding
with the query.

Typical use::

    import numpy as np
    from tukeydepth import halfspace_depth

    cloud = np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]])
    result = halfspace_depth(cloud, [0.0, 0.0])
    result.nhd   # 2
    result.hd    # 0.5
"""

from .algorithms import (
    AUTO,
    COMB,
    COMB2,
    GENERIC,
    REC,
    AlgorithmOptions,
    SubsetSelection,
    halfspace_depth,
    make_selection,
    nhd_comb,
    nhd_comb2,
    nhd_generic_k,
    nhd_rec,
)
from .bench import BenchPlan, BenchRecord, run_bench, write_csv
from .core import (
    DEFAULT_TOL,
    DependentInput,
    DepthError,
    DepthResult,
    DimensionMismatch,
    DirectionCounts,
    EmptyCloud,
    InvalidK,
    OriginPointPresent,
    PointCloud,
    ToleranceParams,
    TooLarge,
    ZeroDirection,
    classify_sign,
    count_sides,
)
from .datagen import GRID, NORMAL, GeneratorSpec, SplitMix64, generate
from .linalg import (
    is_linearly_independent,
    orthogonal_complement,
    project,
    rank_and_basis,
    reduce_to_span,
)
from .lowdim import nhd1, nhd2
from .oracle import oracle_depth, oracle_nhd

__version__ = "0.1.0"

__all__ = [
    "AUTO",
    "COMB",
    "COMB2",
    "GENERIC",
    "REC",
    "GRID",
    "NORMAL",
    "AlgorithmOptions",
    "BenchPlan",
    "BenchRecord",
    "DEFAULT_TOL",
    "DependentInput",
    "DepthError",
    "DepthResult",
    "DimensionMismatch",
    "DirectionCounts",
    "EmptyCloud",
    "GeneratorSpec",
    "InvalidK",
    "OriginPointPresent",
    "PointCloud",
    "SplitMix64",
    "SubsetSelection",
    "ToleranceParams",
    "TooLarge",
    "ZeroDirection",
    "classify_sign",
    "count_sides",
    "generate",
    "halfspace_depth",
    "is_linearly_independent",
    "make_selection",
    "nhd1",
    "nhd2",
    "nhd_comb",
    "nhd_comb2",
    "nhd_generic_k",
    "nhd_rec",
    "oracle_depth",
    "oracle_nhd",
    "orthogonal_complement",
    "project",
    "rank_and_basis",
    "reduce_to_span",
    "run_bench",
    "write_csv",
]
