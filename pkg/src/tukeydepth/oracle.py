"""Brute-force reference for the depth of the origin.

This module exists to check the production algorithms, so it deliberately
shares nothing with them beyond the sign-classification primitives of
:mod:`tukeydepth.core`: it keeps its own span reduction, its own null-vector
construction, and re-evaluates every candidate direction from scratch.

The enumeration follows the defining minimisation directly.  Candidate
directions are the normals of all independent (d-1)-point subsets, taken
with both signs.  A normal whose boundary hyperplane carries more points
than the subset itself (possible only for tied or degenerate data) is
refined by recursing on those boundary points, which live in a strictly
lower-dimensional span.  In the plane an additional dense sweep over
direction-interval midpoints double-checks the enumeration.
"""

from __future__ import annotations

import math
from itertools import combinations

import numpy as np

from .core import DEFAULT_TOL, ToleranceParams, TooLarge, as_points, row_norms

#: Enumeration guard: refuse instances with more candidate subsets than this.
MAX_SUBSETS = 200_000


def _own_span_basis(pts: np.ndarray, eps: float) -> np.ndarray:
    """Orthonormal basis of the row span by greedy largest-residual selection."""
    residual = pts.astype(np.float64, copy=True)
    scale = max(1.0, float(row_norms(pts).max(initial=0.0)))
    basis: list[np.ndarray] = []
    for _ in range(min(pts.shape)):
        norms = row_norms(residual)
        pick = int(np.argmax(norms))
        if norms[pick] <= eps * scale:
            break
        b = residual[pick] / norms[pick]
        basis.append(b)
        residual = residual - np.outer(residual @ b, b)
    if not basis:
        return np.empty((0, pts.shape[1]))
    return np.array(basis)


def _own_normal(sub: np.ndarray, eps: float) -> np.ndarray | None:
    """Unit normal of the hyperplane spanned by d-1 points, or None if dependent."""
    basis = _own_span_basis(sub, eps)
    if basis.shape[0] < sub.shape[0]:
        return None
    d = sub.shape[1]
    residuals = np.eye(d) - basis.T @ basis
    norms = row_norms(residuals)
    pick = int(np.argmax(norms))
    if norms[pick] <= eps:
        return None
    return residuals[pick] / norms[pick]


def _closed_counts(dots, thr, n):
    zero = int(np.count_nonzero(np.abs(dots) <= thr))
    pos = int(np.count_nonzero(dots > thr))
    return pos, zero, n - pos - zero


def _sweep_check_2d(pts: np.ndarray, tol: ToleranceParams) -> int:
    """Independent planar check: evaluate one direction per angular interval.

    Candidate boundary directions are the perpendiculars of the data angles;
    evaluating each perpendicular and each midpoint between consecutive
    perpendiculars touches every interval of constant count.
    """
    angles = np.arctan2(pts[:, 1], pts[:, 0])
    perp = np.concatenate([angles + np.pi / 2.0, angles - np.pi / 2.0])
    perp = np.sort(np.mod(perp, 2.0 * np.pi))
    gaps = np.diff(perp, append=perp[0] + 2.0 * np.pi)
    candidates = np.concatenate([perp, perp + gaps / 2.0])
    thr = tol.threshold(row_norms(pts))
    best = pts.shape[0]
    for theta in candidates:
        p = np.array([math.cos(theta), math.sin(theta)])
        pos, zero, _ = _closed_counts(pts @ p, thr, pts.shape[0])
        best = min(best, pos + zero)
    return best


def oracle_nhd(cloud, tol: ToleranceParams = DEFAULT_TOL) -> int:
    """Depth of the origin by exhaustive candidate enumeration.

    The cloud must not contain the origin.  Raises TooLarge when the subset
    count exceeds MAX_SUBSETS.
    """
    pts = as_points(cloud)
    n = pts.shape[0]
    if n == 0:
        return 0
    eps = tol.eps_zero

    basis = _own_span_basis(pts, eps)
    if basis.shape[0] == 0:
        # Every point is numerically zero; any halfspace contains them all.
        return n
    if basis.shape[0] < pts.shape[1]:
        pts = pts @ basis.T
    d = pts.shape[1]

    if d == 1:
        v = pts[:, 0]
        thr = tol.threshold(np.abs(v))
        nonneg = int(np.count_nonzero(v >= -thr))
        nonpos = int(np.count_nonzero(v <= thr))
        return min(nonneg, nonpos)

    if math.comb(n, d - 1) > MAX_SUBSETS:
        raise TooLarge(
            f"C({n}, {d - 1}) exceeds the oracle bound of {MAX_SUBSETS}"
        )

    point_thr = tol.threshold(row_norms(pts))
    best = n
    for idx in combinations(range(n), d - 1):
        sub = pts[list(idx)]
        p = _own_normal(sub, eps)
        if p is None:
            continue
        dots = pts @ p
        pos, zero, neg = _closed_counts(dots, point_thr, n)
        cand = min(pos, neg)
        if zero > d - 1:
            boundary = pts[np.abs(dots) <= point_thr]
            cand += oracle_nhd(boundary, tol)
        best = min(best, cand)

    if d == 2:
        swept = _sweep_check_2d(pts, tol)
        if swept != best:
            raise AssertionError(
                f"planar cross-check disagrees: sweep={swept}, subsets={best}"
            )
    return best


def oracle_depth(cloud, z, tol: ToleranceParams = DEFAULT_TOL) -> int:
    """Depth of an arbitrary query point: translate, strip coincident points,
    add their count to the depth of the origin among the rest."""
    pts = as_points(cloud)
    zv = np.asarray(z, dtype=np.float64).reshape(-1)
    shifted = pts - zv
    scales = row_norms(pts) + math.sqrt(zv @ zv)
    thr = tol.threshold(scales)
    coincident = np.max(np.abs(shifted), axis=1) <= thr
    m = int(np.count_nonzero(coincident))
    return m + oracle_nhd(shifted[~coincident], tol)
