"""Exact base-case kernels: univariate depth in O(n), bivariate in O(n log n).

The bivariate kernel is an angular sweep.  For a direction at angle t, the
closed halfplane count equals the number of points whose polar angle lies in
the closed arc [t - pi/2, t + pi/2].  Each point therefore contributes one
inclusion arc of length exactly pi, and the count as a function of t changes
only at arc endpoints ("events").  At an event angle the count is never
smaller than in the adjacent open intervals (the arcs are closed), so the
minimum is attained between events and it suffices to evaluate one candidate
per maximal event-free interval.

Event angles are computed as the polar angles of exactly negated or swapped
coordinates, never by adding pi/2 in floating point.  Points that are equal,
antipodal, or scaled by powers of two then produce bit-identical events, and
remaining tie noise (for instance projections of exactly dependent points)
is absorbed by grouping events closer than the zero-classification tolerance
in angle, which for unit directions coincides with the dot-product tolerance.
"""

from __future__ import annotations

import numpy as np

from .core import (
    DEFAULT_TOL,
    DimensionMismatch,
    OriginPointPresent,
    ToleranceParams,
    row_norms,
)

TWO_PI = 2.0 * np.pi


def nhd1(values, tol: ToleranceParams = DEFAULT_TOL) -> int:
    """Depth of the origin for points on the real line.

    Equals ``min(#positive, #negative) + #zero``: the closed halfline in the
    less crowded direction picks up every zero.
    """
    v = np.asarray(values, dtype=np.float64).reshape(-1)
    if v.size == 0:
        return 0
    thr = tol.threshold(np.abs(v))
    pos = int(np.count_nonzero(v > thr))
    neg = int(np.count_nonzero(v < -thr))
    return min(pos, neg) + (v.size - pos - neg)


def sweep_min_counts(
    x: np.ndarray, y: np.ndarray, valid: np.ndarray, eps: float
) -> np.ndarray:
    """Minimum closed-halfplane count for each row of 2-d point sets.

    ``x``, ``y`` are (R, n) coordinate matrices and ``valid`` marks the
    points that take part in each row; rows with no valid points yield 0.
    ``eps`` is the angular grouping tolerance for tied events.
    """
    x = np.ascontiguousarray(x, dtype=np.float64)
    y = np.ascontiguousarray(y, dtype=np.float64)
    rows, n = x.shape
    out = np.zeros(rows, dtype=np.int64)
    if n == 0:
        return out
    live = valid.any(axis=1)
    if not live.all():
        if not live.any():
            return out
        x, y, valid = x[live], y[live], valid[live]

    # Inclusion arc of a point (x, y): opens at the angle of (y, -x),
    # closes at the angle of (-y, x).  atan2 maps negatives to (-pi, 0);
    # shift those to [pi, 2pi).  -0.0 is deliberately left in place.
    ang = np.concatenate(
        [np.arctan2(-x, y), np.arctan2(x, -y)], axis=1
    )
    ang = np.where(ang < 0.0, ang + TWO_PI, ang)
    both = np.concatenate([valid, valid], axis=1)
    delta = np.where(both, np.concatenate(
        [np.ones_like(x, dtype=np.int64), -np.ones_like(x, dtype=np.int64)],
        axis=1), 0)
    # Invalid slots borrow an existing event angle with delta 0 so that every
    # row sorts over the same number of finite, harmless entries.
    pad = np.where(both, ang, np.inf).min(axis=1)
    ang = np.where(both, ang, pad[:, None])

    order = np.argsort(ang, axis=1, kind="stable")
    a = np.take_along_axis(ang, order, axis=1)
    s = np.take_along_axis(delta, order, axis=1)
    prefix = np.cumsum(s, axis=1)

    gaps = np.empty_like(a)
    gaps[:, :-1] = a[:, 1:] - a[:, :-1]
    gaps[:, -1] = a[:, 0] + TWO_PI - a[:, -1]

    # Anchor the running count in the middle of the widest gap, where every
    # point is classified by a plain comparison with a safe margin.
    p0 = np.argmax(gaps, axis=1)
    take = p0[:, None]
    theta0 = (np.take_along_axis(a, take, axis=1)
              + np.take_along_axis(gaps, take, axis=1) / 2.0)[:, 0]
    dots = x * np.cos(theta0)[:, None] + y * np.sin(theta0)[:, None]
    c_init = ((dots >= 0.0) & valid).sum(axis=1)
    base = c_init - np.take_along_axis(prefix, take, axis=1)[:, 0]

    # Counts after crossing event k equal base + prefix[k] cyclically (the
    # deltas sum to zero), and only positions followed by a genuine gap are
    # realizable candidate intervals.
    candidates = np.where(gaps > eps, prefix, np.iinfo(np.int64).max)
    out[live] = base + candidates.min(axis=1)
    return out


def nhd2(points, tol: ToleranceParams = DEFAULT_TOL) -> int:
    """Depth of the origin for a bivariate cloud, by angular sweep.

    The caller guarantees no point coincides with the origin; ties between
    point angles (duplicates, antipodal pairs, collinear points) are handled
    exactly.
    """
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise DimensionMismatch(f"expected an (n, 2) cloud, got {pts.shape}")
    if pts.shape[0] == 0:
        return 0
    if np.min(row_norms(pts)) <= tol.eps_zero:
        raise OriginPointPresent("a data point coincides with the origin")
    valid = np.ones((1, pts.shape[0]), dtype=bool)
    return int(sweep_min_counts(pts[None, :, 0], pts[None, :, 1],
                                valid, tol.eps_zero)[0])
