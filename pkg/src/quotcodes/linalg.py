"""Dense linear algebra over GF(p^n) on numpy arrays of element codes."""

from __future__ import annotations

import numpy as np

from .gf import GF


def as_codes(M) -> np.ndarray:
    return np.array(M, dtype=np.int64, ndmin=2)


def rref(F: GF, M, *, reverse: bool = False) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and the pivot columns.

    Pivots are taken column by column; the pivot row is the lowest-index
    remaining row with a nonzero entry (the highest-index one when
    ``reverse`` is set, which gives an independent second pass).
    """
    R = as_codes(M).copy()
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for col in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, col])
        if nz.size == 0:
            continue
        pr = r + int(nz[-1] if reverse else nz[0])
        if pr != r:
            R[[r, pr]] = R[[pr, r]]
        R[r] = F.vmul(R[r], F.inv(int(R[r, col])))
        others = np.flatnonzero(R[:, col])
        others = others[others != r]
        if others.size:
            factors = F.neg_table[R[others, col]]
            R[others] = F.vadd(R[others], F.vmul(factors[:, None], R[r][None, :]))
        pivots.append(col)
        r += 1
    return R, pivots


def rank(F: GF, M, *, reverse: bool = False) -> int:
    M = as_codes(M)
    if M.size == 0:
        return 0
    return len(rref(F, M, reverse=reverse)[1])


def nullspace(F: GF, M, ncols: int | None = None) -> np.ndarray:
    """Basis (as rows) of ``{x : M x = 0}``, one row per free column."""
    M = as_codes(M)
    if M.size == 0:
        n = ncols if ncols is not None else M.shape[1]
        return np.eye(n, dtype=np.int64)
    R, pivots = rref(F, M)
    n = R.shape[1]
    free = [c for c in range(n) if c not in set(pivots)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, pc in enumerate(pivots):
            basis[i, pc] = F.neg(int(R[r, f]))
    return basis


def row_basis(F: GF, M) -> np.ndarray:
    """Nonzero rows of the RREF: a canonical basis of the row space."""
    M = as_codes(M)
    if M.shape[0] == 0:
        return M
    R, pivots = rref(F, M)
    return R[: len(pivots)]


def independent_rows(F: GF, M) -> list[int]:
    """Indices of a greedy maximal independent subset of rows, in order."""
    M = as_codes(M)
    keep: list[int] = []
    basis = np.zeros((0, M.shape[1]), dtype=np.int64)
    pivots: list[int] = []
    for i, row in enumerate(M):
        v = row.copy()
        for b, pc in zip(basis, pivots):
            if v[pc]:
                v = F.vsub(v, F.vmul(int(v[pc]), b))
        nz = np.flatnonzero(v)
        if nz.size == 0:
            continue
        v = F.vmul(v, F.inv(int(v[nz[0]])))
        # keep the basis reduced at the new pivot
        for bi in range(len(basis)):
            if basis[bi, nz[0]]:
                basis[bi] = F.vsub(basis[bi], F.vmul(int(basis[bi, nz[0]]), v))
        basis = np.vstack([basis, v])
        pivots.append(int(nz[0]))
        keep.append(i)
    return keep


def rowspace_contains(F: GF, A, B) -> bool:
    """True iff every row of ``B`` lies in the row space of ``A``."""
    A, B = as_codes(A), as_codes(B)
    if B.shape[0] == 0:
        return True
    if A.shape[0] == 0:
        return not B.any()
    return rank(F, np.vstack([A, B])) == rank(F, A)


def same_rowspace(F: GF, A, B) -> bool:
    return rowspace_contains(F, A, B) and rowspace_contains(F, B, A)


def scale_columns(F: GF, M, x) -> np.ndarray:
    return F.vmul(as_codes(M), np.asarray(x, dtype=np.int64)[None, :])
