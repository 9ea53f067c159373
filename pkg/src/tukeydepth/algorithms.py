"""Exact depth of a query point by combinatorial dimension reduction.

Every variant evaluates the same quantity: the minimum over subsets I of k
independent data points of

    depth(projection onto the orthogonal complement of span(X_I),
          points outside span(X_I))
    + depth(projection onto span(X_I), points inside span(X_I)),

where each inner depth is again an exact integer depth in lower dimension.
The span term vanishes when span(X_I) contains no data points beyond I
itself, which is always the case for data in general position.

Variants differ only in the choice of k:

* ``comb``  (k = d-1): hyperplane normals, inner depth is univariate.
* ``comb2`` (k = d-2): inner depth is the bivariate angular sweep.
* ``rec``   (k = 1):   project along single points, recurse in dimension d-1.
* ``generic`` (any k): direct transcription of the reduction, used as a
  readable reference and for cross-checking the specialised variants.

The outer subset loop of each variant is a data-parallel map combined by an
integer min-reduction: workers share the read-only cloud, own their scratch
buffers, and the reduction is order-independent, so results are identical
for any worker count.  Early exit abandons remaining subsets once the
running minimum reaches zero, which cannot change the result.
"""

from __future__ import annotations

import math
import os
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, islice
from typing import Iterator

import numpy as np

from .core import (
    DEFAULT_TOL,
    DepthResult,
    EmptyCloud,
    InvalidK,
    ToleranceParams,
    as_points,
    as_query_point,
    row_norms,
    zero_rows,
)
from .linalg import orthogonal_complement, reduce_to_span
from .lowdim import nhd1, nhd2, sweep_min_counts

REC = "rec"
COMB2 = "comb2"
COMB = "comb"
GENERIC = "generic"
AUTO = "auto"

#: Target bytes for one chunk's projection matrix in the batched loops.
_CHUNK_BYTES = 48 * 2**20


@dataclass(frozen=True)
class AlgorithmOptions:
    """Variant selection and execution options for :func:`halfspace_depth`.

    ``variant`` is one of ``rec``, ``comb2``, ``comb``, ``generic`` (which
    requires ``k``), or ``auto``.  ``workers`` may be a positive integer,
    ``"auto"`` for the CPU count, or None for sequential execution.
    ``unit_norm`` rescales every translated point to unit length before
    dispatch; the depth is unaffected, magnitudes become uniform.
    """

    variant: str = AUTO
    k: int | None = None
    early_exit: bool = False
    tol: ToleranceParams = field(default_factory=ToleranceParams)
    workers: int | str | None = None
    unit_norm: bool = False


@dataclass
class SubsetSelection:
    """A subset I of k independent points with its span closure.

    ``closure`` lists every index j whose point lies in span(X_I), decided
    by the complement test ``A.T @ x_j == 0`` within tolerance; it always
    contains ``indices``.  ``complement_basis`` is the (d, d-k) orthonormal
    complement of the span and ``span_basis`` the (d, k) matrix of the
    selected points themselves.
    """

    indices: tuple[int, ...]
    closure: np.ndarray
    n_closure: int
    complement_basis: np.ndarray
    span_basis: np.ndarray


def _resolve_workers(workers) -> int:
    if workers in (None, 0, 1):
        return 1
    if workers == "auto":
        return max(1, os.cpu_count() or 1)
    count = int(workers)
    if count < 1:
        raise ValueError("workers must be positive, or 'auto'")
    return count


def _min_reduce(units: Iterator, process, start: int, workers: int,
                early_exit: bool) -> int:
    """Minimum of ``process(unit)`` over all units, optionally in parallel.

    Workers pull units from the shared iterator under a lock; the min is
    associative and commutative so the schedule cannot affect the result.
    The cancellation flag only ever skips work after a zero was found.
    """
    best = start
    if workers <= 1:
        for unit in units:
            value = process(unit)
            if value < best:
                best = value
            if early_exit and best == 0:
                break
        return best

    lock = threading.Lock()
    cancel = threading.Event()

    def pull() -> int:
        local = start
        while not (early_exit and cancel.is_set()):
            with lock:
                unit = next(units, None)
            if unit is None:
                break
            value = process(unit)
            if value < local:
                local = value
            if early_exit and local == 0:
                cancel.set()
                break
        return local

    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(pull) for _ in range(workers)]
        for fut in futures:
            best = min(best, fut.result())
    return best


def _subset_chunks(n: int, k: int, rows_per_chunk: int) -> Iterator[np.ndarray]:
    """Yield (C, k) index arrays covering all k-subsets of range(n) in
    lexicographic order."""
    if k == 1:
        for a in range(0, n, rows_per_chunk):
            yield np.arange(a, min(n, a + rows_per_chunk),
                            dtype=np.int64)[:, None]
        return
    if k == 2:
        block: list[np.ndarray] = []
        size = 0
        for i in range(n - 1):
            js = np.arange(i + 1, n, dtype=np.int64)
            pair = np.column_stack([np.full(js.shape, i, dtype=np.int64), js])
            block.append(pair)
            size += len(js)
            if size >= rows_per_chunk:
                yield np.concatenate(block)
                block, size = [], 0
        if block:
            yield np.concatenate(block)
        return
    source = combinations(range(n), k)
    while True:
        batch = list(islice(source, rows_per_chunk))
        if not batch:
            return
        yield np.array(batch, dtype=np.int64)


def _batched_det(mats: np.ndarray) -> np.ndarray:
    """Determinants of a stack of small square matrices.

    Closed forms up to 3x3; Gaussian elimination with partial pivoting,
    vectorised across the stack, beyond that.
    """
    size = mats.shape[-1]
    if size == 1:
        return mats[:, 0, 0].copy()
    if size == 2:
        return mats[:, 0, 0] * mats[:, 1, 1] - mats[:, 0, 1] * mats[:, 1, 0]
    if size == 3:
        a, b, c = mats[:, 0, 0], mats[:, 0, 1], mats[:, 0, 2]
        d, e, f = mats[:, 1, 0], mats[:, 1, 1], mats[:, 1, 2]
        g, h, i = mats[:, 2, 0], mats[:, 2, 1], mats[:, 2, 2]
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    work = np.array(mats, dtype=np.float64, copy=True)
    count = work.shape[0]
    det = np.ones(count)
    rows = np.arange(count)
    for col in range(size):
        rel = np.argmax(np.abs(work[:, col:, col]), axis=1)
        piv = col + rel
        swap = piv != col
        if swap.any():
            tmp = work[rows, piv].copy()
            work[rows, piv] = work[rows, col]
            work[rows, col] = tmp
            det[swap] = -det[swap]
        pivot = work[:, col, col]
        det = det * pivot
        with np.errstate(divide="ignore", invalid="ignore"):
            factors = np.where(pivot[:, None] != 0.0,
                               work[:, col + 1:, col] / pivot[:, None], 0.0)
        work[:, col + 1:, col:] -= factors[:, :, None] * work[:, col, col:][:, None, :]
    return det


def _batched_cross(blocks: np.ndarray) -> np.ndarray:
    """Generalised cross product of d-1 row vectors per block.

    Returns one vector per block orthogonal to all its rows; the output is
    numerically zero exactly when the rows are dependent.
    """
    count, k, d = blocks.shape
    if k != d - 1:
        raise ValueError("blocks must hold d-1 vectors in dimension d")
    if d == 3:
        return np.cross(blocks[:, 0, :], blocks[:, 1, :])
    out = np.empty((count, d))
    cols = np.arange(d)
    for j in range(d):
        minor = blocks[:, :, cols != j]
        out[:, j] = _batched_det(minor) * (-1.0 if j % 2 else 1.0)
    return out


def _batched_complement_pair(
    blocks: np.ndarray, eps: float
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Orthonormal 2-d complement bases for stacks of d-2 independent rows.

    Probes each coordinate axis: appending axis e_j to a block and taking
    the generalised cross yields a complement vector orthogonal to e_j; the
    probe results span the whole 2-d complement, so the largest one and the
    largest residual against it form the basis.  Returns (a1, a2, ok) where
    ok flags blocks whose rows were independent.
    """
    count, k, d = blocks.shape
    candidates = np.empty((d, count, d))
    aug = np.empty((count, k + 1, d))
    aug[:, :k, :] = blocks
    for j in range(d):
        axis = np.zeros(d)
        axis[j] = 1.0
        aug[:, k, :] = axis
        candidates[j] = _batched_cross(aug)
    norms = np.sqrt(np.einsum("jcd,jcd->jc", candidates, candidates))
    scale = np.prod(
        np.sqrt(np.einsum("ckd,ckd->ck", blocks, blocks)), axis=1
    ) if k else np.ones(count)
    ok = norms.max(axis=0) > eps * np.maximum(1.0, scale)

    first = np.argmax(norms, axis=0)
    arange = np.arange(count)
    a1 = candidates[first, arange, :]
    a1 = a1 / np.maximum(norms[first, arange], np.finfo(float).tiny)[:, None]

    coeff = np.einsum("jcd,cd->jc", candidates, a1)
    residuals = candidates - coeff[:, :, None] * a1[None, :, :]
    rnorms = np.sqrt(np.einsum("jcd,jcd->jc", residuals, residuals))
    second = np.argmax(rnorms, axis=0)
    a2 = residuals[second, arange, :]
    a2 = a2 / np.maximum(rnorms[second, arange], np.finfo(float).tiny)[:, None]
    return a1, a2, ok


def _rows_per_chunk(n: int) -> int:
    return max(256, _CHUNK_BYTES // (8 * max(n, 1)))


def nhd_comb(cloud, tol: ToleranceParams = DEFAULT_TOL, *,
             early_exit: bool = False, workers=None) -> int:
    """Depth of the origin with k = d-1: one hyperplane per subset.

    Requires an origin-free cloud spanning its ambient space (the wrapper
    guarantees both).  Dependent subsets are skipped; hyperplanes carrying
    more than d-1 points trigger the span recursion.
    """
    pts = as_points(cloud)
    n, d = pts.shape
    if n == 0:
        return 0
    if d == 1:
        return nhd1(pts[:, 0], tol)
    norms = row_norms(pts)
    eps = tol.eps_zero

    def process(idx: np.ndarray) -> int:
        blocks = pts[idx]
        normals = _batched_cross(blocks)
        nnorm = row_norms(normals)
        scale = np.prod(norms[idx], axis=1)
        ok = nnorm > eps * np.maximum(1.0, scale)
        if not ok.any():
            return n
        idx_ok = idx[ok]
        dirs = normals[ok]
        dots = dirs @ pts.T
        thr = tol.threshold(np.outer(nnorm[ok], norms))
        pos = (dots > thr).sum(axis=1)
        neg = (dots < -thr).sum(axis=1)
        zero = n - pos - neg
        base = np.minimum(pos, neg)
        for r in np.flatnonzero(zero > d - 1):
            on_plane = np.abs(dots[r]) <= thr[r]
            span_pts = pts[on_plane] @ pts[idx_ok[r]].T
            base[r] += nhd_comb(span_pts, tol, early_exit=early_exit)
        return int(base.min())

    chunks = _subset_chunks(n, d - 1, _rows_per_chunk(n))
    return _min_reduce(chunks, process, n, _resolve_workers(workers),
                       early_exit)


def nhd_comb2(cloud, tol: ToleranceParams = DEFAULT_TOL, *,
              early_exit: bool = False, workers=None) -> int:
    """Depth of the origin with k = d-2: project subsets to the plane and
    run the bivariate sweep, recursing on span-resident points."""
    pts = as_points(cloud)
    n, d = pts.shape
    if n == 0:
        return 0
    if d == 1:
        return nhd1(pts[:, 0], tol)
    if d == 2:
        return nhd2(pts, tol)
    norms = row_norms(pts)
    eps = tol.eps_zero
    point_thr = tol.threshold(norms)

    def process(idx: np.ndarray) -> int:
        a1, a2, ok = _batched_complement_pair(pts[idx], eps)
        if not ok.any():
            return n
        idx_ok = idx[ok]
        u = a1[ok] @ pts.T
        v = a2[ok] @ pts.T
        in_span = (np.abs(u) <= point_thr) & (np.abs(v) <= point_thr)
        values = sweep_min_counts(u, v, ~in_span, eps)
        for r in np.flatnonzero(in_span.sum(axis=1) > d - 2):
            span_pts = pts[in_span[r]] @ pts[idx_ok[r]].T
            values[r] += nhd_comb2(span_pts, tol, early_exit=early_exit)
        return int(values.min())

    chunks = _subset_chunks(n, d - 2, _rows_per_chunk(n))
    return _min_reduce(chunks, process, n, _resolve_workers(workers),
                       early_exit)


def _rec_3d(pts: np.ndarray, norms: np.ndarray, tol: ToleranceParams,
            early_exit: bool, workers: int) -> int:
    """k = 1 in dimension 3, batched: all complement planes, projections,
    and sweeps are evaluated chunk-wise without a Python inner loop."""
    n = pts.shape[0]
    eps = tol.eps_zero
    point_thr = tol.threshold(norms)

    def process(span) -> int:
        a, b = span
        a1, a2, _ = _batched_complement_pair(pts[a:b, None, :], eps)
        u = a1 @ pts.T
        v = a2 @ pts.T
        collinear = (np.abs(u) <= point_thr) & (np.abs(v) <= point_thr)
        line = pts[a:b] @ pts.T
        line_thr = tol.threshold(np.outer(norms[a:b], norms))
        pos = ((line > line_thr) & collinear).sum(axis=1)
        neg = ((line < -line_thr) & collinear).sum(axis=1)
        inner = sweep_min_counts(u, v, ~collinear, eps)
        return int((inner + np.minimum(pos, neg)).min())

    rows = _rows_per_chunk(n)
    spans = iter([(a, min(n, a + rows)) for a in range(0, n, rows)])
    return _min_reduce(spans, process, n, workers, early_exit)


def nhd_rec(cloud, tol: ToleranceParams = DEFAULT_TOL, *,
            early_exit: bool = False, workers=None) -> int:
    """Depth of the origin with k = 1: project along each data point onto
    its orthogonal hyperplane and recurse, totalling the points collinear
    with the projection direction separately."""
    pts = as_points(cloud)
    n, d = pts.shape
    if n == 0:
        return 0
    if d == 1:
        return nhd1(pts[:, 0], tol)
    if d == 2:
        return nhd2(pts, tol)
    norms = row_norms(pts)
    if d == 3:
        return _rec_3d(pts, norms, tol, early_exit, _resolve_workers(workers))
    point_thr = tol.threshold(norms)

    def process(i: int) -> int:
        basis = orthogonal_complement(pts[i: i + 1], tol)
        proj = pts @ basis
        collinear = np.max(np.abs(proj), axis=1) <= point_thr
        line = pts @ pts[i]
        line_thr = tol.threshold(norms[i] * norms)
        pos = int(np.count_nonzero((line > line_thr) & collinear))
        neg = int(np.count_nonzero((line < -line_thr) & collinear))
        inner = nhd_rec(proj[~collinear], tol, early_exit=early_exit)
        return inner + min(pos, neg)

    return _min_reduce(iter(range(n)), process, n, _resolve_workers(workers),
                       early_exit)


def _inner_depth(pts: np.ndarray, tol: ToleranceParams,
                 early_exit: bool) -> int:
    d = pts.shape[1]
    if pts.shape[0] == 0:
        return 0
    if d == 1:
        return nhd1(pts[:, 0], tol)
    if d == 2:
        return nhd2(pts, tol)
    return nhd_rec(pts, tol, early_exit=early_exit)


def make_selection(pts: np.ndarray, indices: tuple[int, ...],
                   tol: ToleranceParams = DEFAULT_TOL) -> SubsetSelection | None:
    """Build the SubsetSelection for an index tuple, or None if dependent."""
    pts = as_points(pts)
    sub = pts[list(indices)]
    try:
        basis = orthogonal_complement(sub, tol)
    except Exception:
        return None
    proj = pts @ basis
    closure = np.flatnonzero(zero_rows(proj, row_norms(pts), tol))
    return SubsetSelection(
        indices=tuple(indices),
        closure=closure,
        n_closure=int(closure.size),
        complement_basis=basis,
        span_basis=sub.T.copy(),
    )


def nhd_generic_k(cloud, k: int, tol: ToleranceParams = DEFAULT_TOL, *,
                  early_exit: bool = False, workers=None) -> int:
    """Depth of the origin for an arbitrary reduction step 1 <= k < d.

    Plain transcription of the reduction: for each independent k-subset,
    add the depth of the complement projection of the points outside the
    span closure to the depth of the span projection of the points inside
    it.  Inner depths recurse with k = 1.
    """
    pts = as_points(cloud)
    n, d = pts.shape
    if not 1 <= k < d:
        raise InvalidK(f"k must satisfy 1 <= k < d, got k={k}, d={d}")
    if n == 0:
        return 0
    norms = row_norms(pts)

    def process(indices: tuple[int, ...]) -> int:
        sel = make_selection(pts, indices, tol)
        if sel is None:
            return n
        proj = pts @ sel.complement_basis
        in_span = np.zeros(n, dtype=bool)
        in_span[sel.closure] = True
        outside = _inner_depth(proj[~in_span], tol, early_exit)
        if sel.n_closure > k:
            span_pts = pts[in_span] @ sel.span_basis
            outside += _inner_depth(span_pts, tol, early_exit)
        return outside

    units = iter(combinations(range(n), k))
    return _min_reduce(units, process, n, _resolve_workers(workers),
                       early_exit)


def _resolve_variant(variant: str, r: int, n: int) -> str:
    if variant == AUTO:
        if r <= 3:
            return REC
        return COMB if n <= 100 else COMB2
    return variant


def halfspace_depth(cloud, z, options: AlgorithmOptions | None = None) -> DepthResult:
    """Exact depth of ``z`` with respect to the cloud.

    Preprocessing: translate so the query sits at the origin, strip the
    points that coincide with it (their count is added back to the result),
    map the rest onto their span when it is a proper subspace, optionally
    rescale to unit norms, then dispatch the selected variant.  ``hd`` is
    ``nhd / n`` with the original n.
    """
    started = time.perf_counter()
    opts = options if options is not None else AlgorithmOptions()
    pts = as_points(cloud)
    n, d = pts.shape
    if n == 0:
        raise EmptyCloud("cannot compute depth with respect to no points")
    zv = as_query_point(z, d)
    tol = opts.tol

    if opts.variant == GENERIC:
        if opts.k is None or not 1 <= opts.k < d:
            raise InvalidK(
                f"generic variant needs 1 <= k < d, got k={opts.k}, d={d}"
            )
    elif opts.variant not in (REC, COMB2, COMB, AUTO):
        raise ValueError(f"unknown variant: {opts.variant!r}")

    shifted = pts - zv
    coincident = zero_rows(shifted, row_norms(pts) + float(np.sqrt(zv @ zv)), tol)
    absorbed = int(np.count_nonzero(coincident))
    remaining = shifted[~coincident]

    if remaining.shape[0] == 0:
        return DepthResult(nhd=n, hd=1.0, n=n, d=d, zeros_absorbed=absorbed,
                           variant="none", elapsed=time.perf_counter() - started,
                           reduced_dim=0)

    reduced, rank = reduce_to_span(remaining, tol)
    if opts.unit_norm:
        reduced = reduced / row_norms(reduced)[:, None]

    name = _resolve_variant(opts.variant, rank, reduced.shape[0])
    if name == GENERIC:
        # The requested k may exceed what the reduced span admits.
        name = f"k={min(opts.k, max(rank - 1, 1))}"
    if rank == 1:
        value = nhd1(reduced[:, 0], tol)
    elif name.startswith("k="):
        value = nhd_generic_k(reduced, int(name[2:]), tol,
                              early_exit=opts.early_exit, workers=opts.workers)
    elif name == REC:
        value = nhd_rec(reduced, tol, early_exit=opts.early_exit,
                        workers=opts.workers)
    elif name == COMB2:
        value = nhd_comb2(reduced, tol, early_exit=opts.early_exit,
                          workers=opts.workers)
    else:
        value = nhd_comb(reduced, tol, early_exit=opts.early_exit,
                         workers=opts.workers)

    total = value + absorbed
    return DepthResult(nhd=total, hd=total / n, n=n, d=d,
                       zeros_absorbed=absorbed, variant=name,
                       elapsed=time.perf_counter() - started, reduced_dim=rank)
