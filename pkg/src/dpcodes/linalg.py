"""Gauss-Jordan elimination over a finite field, vectorized over stacks of matrices."""

from __future__ import annotations

import numpy as np

from .gf import FiniteField


def rref_stack(M, field: FiniteField) -> tuple[np.ndarray, np.ndarray]:
    """Reduced row-echelon form of every matrix in a ``(B, r, c)`` stack.

    Returns ``(R, ranks)``.  Each batch entry picks its own pivot columns, so the
    stack may mix matrices of different rank.
    """
    R = field.array(M).copy()
    if R.ndim == 2:
        R2, ranks = rref_stack(R[None], field)
        return R2[0], ranks[0]
    B, rows, cols = R.shape
    piv = np.zeros(B, dtype=np.int64)
    batch = np.arange(B)
    row_idx = np.arange(rows)
    for j in range(cols):
        live = piv < rows
        if not live.any():
            break
        cand = (R[:, :, j] != 0) & (row_idx[None, :] >= piv[:, None])
        has = cand.any(axis=1) & live
        if not has.any():
            continue
        b = batch[has]
        src = np.argmax(cand[has], axis=1)
        dst = piv[has]
        src_rows = R[b, src].copy()
        R[b, src] = R[b, dst]
        inv = field.inv(src_rows[:, j])
        pivot_rows = field.mul(src_rows, inv[:, None])
        R[b, dst] = pivot_rows
        # clear column j from every other row
        factors = R[b, :, j].copy()
        factors[np.arange(len(b)), dst] = 0
        R[b] = field.sub(R[b], field.mul(factors[:, :, None], pivot_rows[:, None, :]))
        piv[has] += 1
    return R, piv


def rref(M, field: FiniteField) -> tuple[np.ndarray, list[int]]:
    """RREF of a single matrix with its pivot columns."""
    R, r = rref_stack(np.asarray(M)[None], field)
    R = R[0][: int(r[0])]
    pivots = [int(np.flatnonzero(row)[0]) for row in R]
    return R, pivots


def rank(M, field: FiniteField) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return int(rref_stack(M[None], field)[1][0])


def inverse_stack(A, field: FiniteField) -> tuple[np.ndarray, np.ndarray]:
    """Inverses of a ``(B, n, n)`` stack; returns ``(inv, invertible_mask)``.

    Entries of ``inv`` for singular matrices are meaningless.
    """
    A = field.array(A)
    B, n, _ = A.shape
    eye = np.broadcast_to(np.eye(n, dtype=np.int64), (B, n, n))
    R, ranks = rref_stack(np.concatenate([A, eye], axis=2), field)
    ok = np.all(R[:, :, :n] == np.eye(n, dtype=np.int64), axis=(1, 2))
    return R[:, :, n:], ok


def inverse(A, field: FiniteField) -> np.ndarray:
    inv, ok = inverse_stack(np.asarray(A)[None], field)
    if not ok[0]:
        raise np.linalg.LinAlgError("matrix is singular over the field")
    return inv[0]


def nullspace(M, field: FiniteField) -> np.ndarray:
    """Basis (as rows) of ``{x : M x^t = 0}``."""
    M = field.array(M)
    cols = M.shape[1]
    R, pivots = rref(M, field)
    free = [j for j in range(cols) if j not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for i, p in enumerate(pivots):
            basis[t, p] = field.neg(R[i, f])
    return basis


def same_row_space(X, Y, field: FiniteField) -> bool:
    rx, _ = rref(X, field)
    ry, _ = rref(Y, field)
    return rx.shape == ry.shape and bool(np.array_equal(rx, ry))
