"""Shared domain types, tolerance policy, and sign-classification primitives.

Every algorithm in this package reduces to counting how many data points fall
on each side of a hyperplane through the origin.  All counts and depths are
exact integers; floating point enters only through the classification of a
dot product as negative, zero, or positive.  That single decision is
centralised here so that every code path (the fast variants, the generic
reduction, and the brute-force oracle) agrees on what "zero" means.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

NEGATIVE = -1
ZERO = 0
POSITIVE = 1

#: Scale modes for zero classification.
ABSOLUTE = "absolute"
RELATIVE = "relative"


class DepthError(Exception):
    """Base class for errors raised by this package."""


class DimensionMismatch(DepthError):
    pass


class EmptyCloud(DepthError):
    pass


class ZeroDirection(DepthError):
    pass


class OriginPointPresent(DepthError):
    pass


class DependentInput(DepthError):
    pass


class InvalidK(DepthError):
    pass


class TooLarge(DepthError):
    pass


@dataclass(frozen=True)
class ToleranceParams:
    """Zero-classification threshold and scaling policy for sign decisions.

    In relative mode a value ``s`` measured at magnitude ``scale`` counts as
    zero when ``|s| <= eps_zero * max(1, scale)``; in absolute mode when
    ``|s| <= eps_zero``.  Relative mode with ``scale = |p| * |x|`` makes the
    classification of ``p . x`` invariant to rescaling of the direction and
    of the data.
    """

    eps_zero: float = 1e-10
    scale_mode: str = RELATIVE

    def __post_init__(self) -> None:
        if self.eps_zero < 0:
            raise ValueError("eps_zero must be nonnegative")
        if self.scale_mode not in (ABSOLUTE, RELATIVE):
            raise ValueError(f"unknown scale_mode: {self.scale_mode!r}")

    def threshold(self, scale) -> float:
        """Magnitude below which a value at the given scale is zero."""
        if self.scale_mode == ABSOLUTE:
            return self.eps_zero
        return self.eps_zero * np.maximum(1.0, scale)


DEFAULT_TOL = ToleranceParams()


class PointCloud:
    """n labeled points in R^d as a dense (n, d) float64 matrix.

    Indices 0..n-1 are stable for the lifetime of a computation.  The
    underlying array is marked read-only; all operations treat clouds as
    immutable and are safe to call concurrently.
    """

    __slots__ = ("points",)

    def __init__(self, points) -> None:
        arr = np.array(points, dtype=np.float64, copy=True)
        if arr.ndim != 2:
            raise DimensionMismatch(
                f"points must form a 2-d matrix, got shape {arr.shape}"
            )
        if arr.shape[1] < 1:
            raise DimensionMismatch("point dimension must be at least 1")
        if not np.all(np.isfinite(arr)):
            raise ValueError("points must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "points", arr)

    def __setattr__(self, name, value):
        raise AttributeError("PointCloud is immutable")

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"PointCloud(n={self.n}, d={self.d})"


def as_points(cloud, d: int | None = None) -> np.ndarray:
    """Coerce a PointCloud or array-like to a read-only (n, d) float matrix."""
    if isinstance(cloud, PointCloud):
        arr = cloud.points
    else:
        arr = np.asarray(cloud, dtype=np.float64)
        if arr.ndim != 2:
            raise DimensionMismatch(
                f"expected an (n, d) matrix, got shape {arr.shape}"
            )
    if d is not None and arr.shape[1] != d:
        raise DimensionMismatch(f"expected dimension {d}, got {arr.shape[1]}")
    return arr


def as_query_point(z, d: int) -> np.ndarray:
    """Coerce a query point to a length-d vector."""
    arr = np.asarray(z, dtype=np.float64).reshape(-1)
    if arr.shape[0] != d:
        raise DimensionMismatch(
            f"query point has dimension {arr.shape[0]}, cloud has {d}"
        )
    if not np.all(np.isfinite(arr)):
        raise ValueError("query point must be finite")
    return arr


@dataclass(frozen=True)
class DepthResult:
    """Exact integer depth together with bookkeeping from the wrapper.

    ``hd`` is always derived from the integer ``nhd`` as ``nhd / n``; it is
    never computed independently.
    """

    nhd: int
    hd: float
    n: int
    d: int
    zeros_absorbed: int
    variant: str
    elapsed: float
    reduced_dim: int


@dataclass
class DirectionCounts:
    """Partition of point indices by the sign of their dot product with p."""

    n_plus: int
    n_zero: int
    n_minus: int
    i_plus: np.ndarray = field(repr=False)
    i_zero: np.ndarray = field(repr=False)
    i_minus: np.ndarray = field(repr=False)


def classify_sign(s: float, scale: float, tol: ToleranceParams = DEFAULT_TOL) -> int:
    """Classify a scalar as NEGATIVE, ZERO, or POSITIVE at the given scale.

    ``scale`` is the magnitude at which ``s`` was computed (for a dot product
    ``p . x`` this is ``|p| * |x|``);  it must be nonnegative.
    """
    if scale < 0:
        raise ValueError("scale must be nonnegative")
    if abs(s) <= tol.threshold(scale):
        return ZERO
    return POSITIVE if s > 0 else NEGATIVE


def count_sides(cloud, p, tol: ToleranceParams = DEFAULT_TOL) -> DirectionCounts:
    """Partition the cloud's indices by the sign of ``p . x_i``.

    Raises ZeroDirection when ``p`` is numerically zero.
    """
    pts = as_points(cloud)
    p = np.asarray(p, dtype=np.float64).reshape(-1)
    if p.shape[0] != pts.shape[1]:
        raise DimensionMismatch(
            f"direction has dimension {p.shape[0]}, cloud has {pts.shape[1]}"
        )
    p_norm = float(np.sqrt(p @ p))
    if p_norm <= tol.eps_zero:
        raise ZeroDirection("direction vector is numerically zero")
    dots = pts @ p
    scales = p_norm * np.sqrt(np.einsum("ij,ij->i", pts, pts))
    thr = tol.threshold(scales)
    zero = np.abs(dots) <= thr
    plus = dots > thr
    minus = ~zero & ~plus
    return DirectionCounts(
        n_plus=int(plus.sum()),
        n_zero=int(zero.sum()),
        n_minus=int(minus.sum()),
        i_plus=np.flatnonzero(plus),
        i_zero=np.flatnonzero(zero),
        i_minus=np.flatnonzero(minus),
    )


def row_norms(pts: np.ndarray) -> np.ndarray:
    """Euclidean norm of each row."""
    return np.sqrt(np.einsum("ij,ij->i", pts, pts))


def zero_rows(pts: np.ndarray, scales, tol: ToleranceParams = DEFAULT_TOL) -> np.ndarray:
    """Boolean mask of rows whose every component is zero at the given scales.

    This is the single test used both for removing points that coincide with
    the query and for deciding span membership after projecting onto an
    orthonormal complement basis (unit columns, so component scale equals the
    original point norm).
    """
    thr = np.asarray(tol.threshold(scales), dtype=np.float64)
    if pts.shape[1] == 0:
        return np.ones(pts.shape[0], dtype=bool)
    return np.max(np.abs(pts), axis=1) <= thr
