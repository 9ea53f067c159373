"""Dense linear algebra for the depth algorithms.

Only what the reduction framework needs: rank and independence tests,
orthonormal bases of spans and orthogonal complements, and projections.
The eliminations and orthogonalisations are written out here rather than
delegated to a factorisation library; numpy supplies array arithmetic only.
All bases returned are orthonormal, which keeps the zero-classification
thresholds of :mod:`tukeydepth.core` meaningful after projection.
"""

from __future__ import annotations

import numpy as np

from .core import DEFAULT_TOL, DependentInput, DimensionMismatch, ToleranceParams, as_points


def _echelon(mat: np.ndarray, eps: float) -> tuple[int, np.ndarray, list[int]]:
    """Reduce a copy of ``mat`` to row echelon form with complete pivoting.

    The pivot at each step is the largest-magnitude entry among the untouched
    rows; a pivot counts as nonzero only if it exceeds ``eps`` times the
    largest initial row norm.  Returns (rank, reduced matrix, pivot columns).
    """
    m = np.array(mat, dtype=np.float64, copy=True)
    rows, cols = m.shape
    if rows == 0 or cols == 0:
        return 0, m, []
    norms = np.sqrt(np.einsum("ij,ij->i", m, m))
    limit = eps * max(1.0, float(norms.max(initial=0.0)))
    free_cols = list(range(cols))
    pivot_cols: list[int] = []
    r = 0
    while r < rows and free_cols:
        sub = np.abs(m[r:, free_cols])
        i, j = np.unravel_index(np.argmax(sub), sub.shape)
        if sub[i, j] <= limit:
            break
        col = free_cols[j]
        if i != 0:
            m[[r, r + i]] = m[[r + i, r]]
        # Gauss-Jordan: clear the pivot column everywhere else.
        piv = m[r, col]
        others = np.arange(rows) != r
        m[others] -= np.outer(m[others, col] / piv, m[r])
        pivot_cols.append(col)
        free_cols.remove(col)
        r += 1
    return r, m, pivot_cols


def _orthonormalise(vectors: np.ndarray, count: int) -> np.ndarray:
    """Modified Gram-Schmidt with one re-orthogonalisation pass.

    ``vectors`` must contain at least ``count`` linearly independent rows in
    order; returns a (count, d) matrix with orthonormal rows.
    """
    basis = np.empty((count, vectors.shape[1]), dtype=np.float64)
    k = 0
    for v in vectors:
        if k == count:
            break
        w = v.astype(np.float64, copy=True)
        for _ in range(2):
            if k:
                w -= basis[:k].T @ (basis[:k] @ w)
        norm = np.sqrt(w @ w)
        if norm == 0.0:
            continue
        basis[k] = w / norm
        k += 1
    if k < count:
        raise DependentInput("could not extract an independent basis")
    return basis


def rank_and_basis(
    vectors, tol: ToleranceParams = DEFAULT_TOL
) -> tuple[int, np.ndarray]:
    """Rank of the input vectors and an orthonormal basis of their span.

    Rank 0 (all-zero input) is valid and yields an empty basis.
    """
    mat = as_points(vectors)
    rank, reduced, _ = _echelon(mat, tol.eps_zero)
    if rank == 0:
        return 0, np.empty((0, mat.shape[1]))
    return rank, _orthonormalise(reduced[:rank], rank)


def is_linearly_independent(vectors, tol: ToleranceParams = DEFAULT_TOL) -> bool:
    """True iff the vectors are linearly independent (vacuously for none)."""
    mat = np.asarray(vectors, dtype=np.float64)
    if mat.size == 0:
        return True
    mat = as_points(mat)
    if mat.shape[0] > mat.shape[1]:
        return False
    rank, _, _ = _echelon(mat, tol.eps_zero)
    return rank == mat.shape[0]


def orthogonal_complement(
    selected, tol: ToleranceParams = DEFAULT_TOL
) -> np.ndarray:
    """Orthonormal basis of the orthogonal complement of span(selected).

    ``selected`` holds k independent vectors in R^d with 1 <= k < d; the
    result is a (d, d-k) matrix A with orthonormal columns satisfying
    ``A.T @ x = 0`` for every input vector x.  Raises DependentInput when the
    vectors are dependent.
    """
    mat = as_points(selected)
    k, d = mat.shape
    if not 1 <= k < d:
        raise DimensionMismatch(f"need 1 <= k < d, got k={k}, d={d}")
    rank, reduced, pivot_cols = _echelon(mat, tol.eps_zero)
    if rank < k:
        raise DependentInput("selected vectors are linearly dependent")
    # Null space of the row span: one vector per free column, built from the
    # reduced rows (unit entry at the free column, back-filled pivots).
    pivots = dict(zip(pivot_cols, range(rank)))
    free = [c for c in range(d) if c not in pivots]
    null_vecs = np.zeros((d - k, d))
    for idx, f in enumerate(free):
        null_vecs[idx, f] = 1.0
        for col, row in pivots.items():
            null_vecs[idx, col] = -reduced[row, f] / reduced[row, col]
    return _orthonormalise(null_vecs, d - k).T


def project(cloud, basis: np.ndarray) -> np.ndarray:
    """Project a cloud onto the columns of ``basis``: rows become B.T @ x_i."""
    pts = as_points(cloud)
    basis = np.asarray(basis, dtype=np.float64)
    if basis.ndim != 2 or basis.shape[0] != pts.shape[1]:
        raise DimensionMismatch(
            f"basis must have {pts.shape[1]} rows, got shape {basis.shape}"
        )
    return pts @ basis


def reduce_to_span(
    cloud, tol: ToleranceParams = DEFAULT_TOL
) -> tuple[np.ndarray, int]:
    """Map the cloud isometrically onto an orthonormal basis of its span.

    Returns ``(reduced, r)`` where r is the rank; when the cloud already has
    full rank it is returned unchanged.
    """
    pts = as_points(cloud)
    r, basis = rank_and_basis(pts, tol)
    if r == pts.shape[1]:
        return pts, r
    return pts @ basis.T, r
