"""Fraction-free linear algebra over multivariate polynomial rings.

One-step Bareiss elimination keeps every intermediate entry a minor of the
input matrix, so all divisions are exact and nothing leaves the ring.  The
kernel routine back-substitutes through the echelon with the free entry
normalized to the last pivot (a maximal minor): every solved entry is then
itself a minor and one exact division per pivot row recovers it.
"""

from __future__ import annotations

from typing import List, Sequence

from .multipoly import MultiPoly, exact_divide


def bareiss_echelon(rows: Sequence[Sequence[MultiPoly]]):
    """Fraction-free row echelon form.

    Returns (matrix, pivot_cols, swaps).  Pivots are chosen as the sparsest
    candidate entry, deterministically; swaps counts row exchanges (for
    determinant signs).
    """
    M = [list(r) for r in rows]
    if not M:
        return M, [], 0
    nrows, ncols = len(M), len(M[0])
    ctx = M[0][0].ctx
    zero = MultiPoly.zero(ctx)
    prev = MultiPoly.const(ctx, 1)
    piv_row = 0
    pivot_cols: List[int] = []
    swaps = 0
    for col in range(ncols):
        if piv_row >= nrows:
            break
        best = None
        for r in range(piv_row, nrows):
            e = M[r][col]
            if not e.is_zero:
                key = (len(e.terms), r)
                if best is None or key < best[0]:
                    best = (key, r)
        if best is None:
            continue
        r = best[1]
        if r != piv_row:
            M[piv_row], M[r] = M[r], M[piv_row]
            swaps += 1
        piv = M[piv_row][col]
        prow = M[piv_row]
        for r2 in range(piv_row + 1, nrows):
            t = M[r2][col]
            if t.is_zero:
                for c2 in range(col + 1, ncols):
                    if M[r2][c2].is_zero:
                        continue
                    q = exact_divide(piv * M[r2][c2], prev)
                    assert q is not None, "Bareiss division failed"
                    M[r2][c2] = q
            else:
                for c2 in range(col + 1, ncols):
                    if M[r2][c2].is_zero and prow[c2].is_zero:
                        continue
                    q = exact_divide(piv * M[r2][c2] - t * prow[c2], prev)
                    assert q is not None, "Bareiss division failed"
                    M[r2][c2] = q
                M[r2][col] = zero
        prev = piv
        pivot_cols.append(col)
        piv_row += 1
    return M, pivot_cols, swaps


def determinant(rows: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Determinant of a square polynomial matrix by Bareiss elimination."""
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise ValueError("determinant needs a square matrix")
    ctx = rows[0][0].ctx
    M, pivots, swaps = bareiss_echelon(rows)
    if len(pivots) < n:
        return MultiPoly.zero(ctx)
    det = M[n - 1][pivots[-1]]
    return -det if swaps % 2 else det


def kernel_basis(rows: Sequence[Sequence[MultiPoly]]):
    """Basis of the right kernel, with polynomial entries.

    With the free coordinate set to the last pivot (the determinant of the
    pivot block), Cramer's rule makes every solved coordinate a signed
    maximal minor, so the division in each back-substitution step is exact.
    Returns (vectors, pivot_cols, swaps); vectors are unnormalized.
    """
    M = [list(r) for r in rows]
    nrows, ncols = len(M), len(M[0])
    ctx = M[0][0].ctx
    zero = MultiPoly.zero(ctx)
    U, pivot_cols, swaps = bareiss_echelon(M)
    rank = len(pivot_cols)
    free_cols = [c for c in range(ncols) if c not in pivot_cols]
    d = U[rank - 1][pivot_cols[-1]] if rank else MultiPoly.const(ctx, 1)
    vectors = []
    for fc in free_cols:
        v = [zero] * ncols
        v[fc] = d
        for i in range(rank - 1, -1, -1):
            pc = pivot_cols[i]
            s = zero
            for c in range(pc + 1, ncols):
                if v[c].is_zero or U[i][c].is_zero:
                    continue
                s = s + U[i][c] * v[c]
            if s.is_zero:
                continue
            q = exact_divide(s, U[i][pc])
            assert q is not None, "back substitution division failed"
            v[pc] = -q
        vectors.append(v)
    return vectors, pivot_cols, swaps
