"""
Truncated SVD of the weighted matrix and projection onto U_k Sigma_k.

Matrices up to `dense_limit` cells go through LAPACK; larger ones through
ARPACK's Lanczos iteration (scipy's `svds`) started from a fixed vector so
reruns agree. Singular values below `tol * sigma_max` count as zero, so the
effective k never exceeds the numerical rank.
"""
from __future__ import annotations

import logging
from pathlib import Path
from typing import FrozenSet, Optional, Tuple, Union

import numpy as np
import scipy.linalg
from scipy import sparse
from scipy.sparse.linalg import ArpackNoConvergence, svds

from framework.artifacts import read_meta_and_blob, write_meta_and_blob
from framework.errors import ContractViolation, ConvergenceError, IndexFormatError
from models.matrix import PairPatternMatrix, RowMap
from models.space import ProjectedSpace, SvdResult

logger = logging.getLogger(__name__)

SPACE_MAGIC = b"LRAPRJ1\n"
SPACE_VERSION = 1

PairKey = Tuple[str, str]


def _dense_svd(values: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    try:
        return scipy.linalg.svd(values, full_matrices=False, lapack_driver="gesdd")
    except np.linalg.LinAlgError:
        logger.warning("gesdd did not converge, retrying with gesvd")
    try:
        return scipy.linalg.svd(values, full_matrices=False, lapack_driver="gesvd")
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"dense SVD did not converge: {exc}") from exc


def _lanczos_svd(values: sparse.spmatrix, k: int, tol: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    v0 = np.full(min(values.shape), 1.0 / np.sqrt(min(values.shape)))
    try:
        U, s, Vt = svds(values, k=k, tol=tol, v0=v0, which="LM", solver="arpack")
    except ArpackNoConvergence as exc:
        converged = 0 if exc.eigenvalues is None else len(exc.eigenvalues)
        raise ConvergenceError(f"ARPACK converged on {converged} of {k} singular triplets (tol {tol:.1e})") from exc
    order = np.argsort(-s, kind="stable")
    U, s, Vt = U[:, order], s[order], Vt[order, :]

    residual = np.linalg.norm(values @ Vt.T - U * s, axis=0)
    worst = float(residual.max() / s[0]) if s.size and s[0] > 0 else 0.0
    if worst > max(tol, 1e-8) * 1e3:
        raise ConvergenceError("Lanczos singular triplets failed the residual check", worst)
    return U, s, Vt


def _fix_signs(U: np.ndarray, V: np.ndarray) -> None:
    """Make the largest-magnitude entry of each U column positive, flipping V to match."""
    for j in range(U.shape[1]):
        i = int(np.argmax(np.abs(U[:, j])))
        if U[i, j] < 0:
            U[:, j] *= -1.0
            V[:, j] *= -1.0


def truncated_svd(
    matrix: Union[PairPatternMatrix, sparse.spmatrix, np.ndarray],
    k: int,
    tol: float = 1e-10,
    dense_limit: int = 4_000_000,
) -> SvdResult:
    if k < 1:
        raise ContractViolation(f"k must be >= 1, got {k}")
    values = matrix.values if isinstance(matrix, PairPatternMatrix) else matrix
    rows, cols = values.shape
    if rows == 0 or cols == 0:
        raise ContractViolation("cannot decompose an empty matrix")

    limit = min(k, rows, cols)
    if sparse.issparse(values) and values.nnz == 0:
        U, s, Vt = np.zeros((rows, 0)), np.zeros(0), np.zeros((0, cols))
    elif rows * cols <= dense_limit or limit >= min(rows, cols) - 1:
        dense = values.toarray() if sparse.issparse(values) else np.asarray(values, dtype=np.float64)
        U, s, Vt = _dense_svd(dense)
        U, s, Vt = U[:, :limit], s[:limit], Vt[:limit, :]
    else:
        U, s, Vt = _lanczos_svd(sparse.csr_matrix(values, dtype=np.float64), limit, tol)

    if s.size:
        keep = s > max(tol, np.finfo(np.float64).eps * max(rows, cols)) * s[0]
        U, s, Vt = U[:, keep], s[keep], Vt[keep, :]

    U = np.ascontiguousarray(U, dtype=np.float64)
    V = np.ascontiguousarray(Vt.T, dtype=np.float64)
    _fix_signs(U, V)
    logger.info("SVD of %d x %d: requested k=%d, effective k=%d", rows, cols, k, s.size)
    return SvdResult(U=U, singular_values=np.asarray(s, dtype=np.float64), V=V, requested_k=k)


def project(
    svd_result: SvdResult, row_map: RowMap, dropped: FrozenSet[PairKey] = frozenset()
) -> ProjectedSpace:
    """Scale U_k column-wise by the singular values."""
    vectors = svd_result.U * svd_result.singular_values
    return ProjectedSpace(
        vectors=np.ascontiguousarray(vectors), row_map=row_map, dropped=dropped,
        singular_values=svd_result.singular_values,
    )


def unprojected_space(matrix: PairPatternMatrix) -> ProjectedSpace:
    """The weighted rows themselves, for runs that skip the decomposition."""
    return ProjectedSpace(
        vectors=np.ascontiguousarray(matrix.values.toarray(), dtype=np.float64),
        row_map=matrix.row_map,
        dropped=matrix.dropped,
    )


def save_space(space: ProjectedSpace, path: Union[str, Path]) -> bytes:
    vectors = np.ascontiguousarray(space.vectors, dtype="<f8")
    meta = {
        "version": SPACE_VERSION,
        "shape": list(vectors.shape),
        "rows": [list(key) for key in space.row_map.keys],
        "dropped": sorted(list(key) for key in space.dropped),
        "singular_values": None if space.singular_values is None else [float(x) for x in space.singular_values],
    }
    return write_meta_and_blob(path, SPACE_MAGIC, meta, vectors.tobytes())


def load_space(path: Union[str, Path]) -> ProjectedSpace:
    meta, blob = read_meta_and_blob(path, SPACE_MAGIC)
    if meta.get("version") != SPACE_VERSION:
        raise IndexFormatError(f"{path}: unsupported projection version {meta.get('version')!r}")
    shape = tuple(meta["shape"])
    expected = int(np.prod(shape)) * 8
    if len(blob) != expected:
        raise IndexFormatError(f"{path}: expected {expected} bytes of vectors, found {len(blob)}")
    vectors = np.frombuffer(blob, dtype="<f8").reshape(shape).astype(np.float64)
    singular_values = meta.get("singular_values")
    return ProjectedSpace(
        vectors=vectors,
        row_map=RowMap(keys=[tuple(key) for key in meta["rows"]]),
        dropped=frozenset(tuple(key) for key in meta["dropped"]),
        singular_values=None if singular_values is None else np.asarray(singular_values, dtype=np.float64),
    )
