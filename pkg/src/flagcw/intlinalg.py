"""Exact integer matrix machinery: Hermite/Smith forms, kernels, lattices.

Everything here is pure integer row reduction; no rational arithmetic.
Matrices are lists of row lists.  Lattices are handled through their
canonical row Hermite normal form, so two generating sets span the same
lattice iff their HNFs are equal as nested lists.
"""

from __future__ import annotations


def identity(n: int):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_vec(mat, v):
    return [sum(r[j] * v[j] for j in range(len(v))) for r in mat]


def transpose(mat):
    if not mat:
        return []
    return [[row[j] for row in mat] for j in range(len(mat[0]))]


def hnf(rows):
    """Canonical row Hermite normal form of the lattice spanned by rows.

    Pivots are positive, entries above a pivot lie in [0, pivot), zero
    rows are dropped.  The result is unique for the lattice, so equality
    of HNFs decides equality of lattices.
    """
    work = [list(r) for r in rows if any(r)]
    if not work:
        return []
    ncols = len(work[0])
    result = []
    col = 0
    while work and col < ncols:
        sel = [r for r in work if r[col]]
        rest = [r for r in work if not r[col]]
        if sel:
            while len(sel) > 1:
                sel.sort(key=lambda r: abs(r[col]))
                r0 = sel[0]
                p = r0[col]
                survivors = [r0]
                for r in sel[1:]:
                    q = r[col] // p
                    if q:
                        for j in range(col, ncols):
                            r[j] -= q * r0[j]
                    if r[col]:
                        survivors.append(r)
                    elif any(r):
                        rest.append(r)
                sel = survivors
            pivot_row = sel[0]
            if pivot_row[col] < 0:
                for j in range(col, ncols):
                    pivot_row[j] = -pivot_row[j]
            result.append(pivot_row)
        work = rest
        col += 1
    # reduce entries above each pivot into [0, pivot)
    pivots = [next(j for j, c in enumerate(r) if c) for r in result]
    for i in range(len(result) - 1, -1, -1):
        p = pivots[i]
        pv = result[i][p]
        for k in range(i):
            q = result[k][p] // pv
            if q:
                for j in range(p, len(result[k])):
                    result[k][j] -= q * result[i][j]
    return result


def hnf_with_pivots(rows):
    h = hnf(rows)
    return h, [next(j for j, c in enumerate(r) if c) for r in h]


def row_rank(rows) -> int:
    return len(hnf(rows))


def lattice_eq(gens_a, gens_b) -> bool:
    return hnf(gens_a) == hnf(gens_b)


def lattice_contains(hnf_rows, pivots, v) -> bool:
    """Membership of v in the lattice given by its HNF rows."""
    v = list(v)
    for row, p in zip(hnf_rows, pivots):
        if v[p]:
            q, r = divmod(v[p], row[p])
            if r:
                return False
            for j in range(p, len(v)):
                v[j] -= q * row[j]
    return not any(v)


def lattice_coords(hnf_rows, pivots, v):
    """Integer coordinates of v over the HNF rows; None if not in the lattice."""
    v = list(v)
    coords = []
    for row, p in zip(hnf_rows, pivots):
        q, r = divmod(v[p], row[p]) if v[p] else (0, 0)
        if r:
            return None
        coords.append(q)
        if q:
            for j in range(p, len(v)):
                v[j] -= q * row[j]
    return coords if not any(v) else None


def kernel_basis(mat, ncols=None):
    """Basis of the integer kernel {v : mat . v = 0} as rows.

    The kernel of an integer matrix is a saturated sublattice, and the
    result is a basis of it (computed by row-reducing [A^T | I]).
    """
    m = len(mat)
    if ncols is None:
        ncols = len(mat[0]) if m else 0
    n = ncols
    if n == 0:
        return []
    if m == 0:
        return identity(n)
    aug = [
        [mat[i][j] for i in range(m)] + [1 if k == j else 0 for k in range(n)]
        for j in range(n)
    ]
    reduced = hnf(aug)
    return [r[m:] for r in reduced if not any(r[:m])]


def smith_normal_form(mat):
    """Smith normal form with left transforms: returns (diag, U, Uinv).

    U is unimodular with (U . mat . V) diagonal for a suitable unimodular
    V (not returned); diag lists the invariant factors (positive, each
    dividing the next).  Uinv is the inverse of U, maintained alongside.
    """
    S = [list(r) for r in mat]
    m = len(S)
    n = len(S[0]) if m else 0
    U = identity(m)
    Uinv = identity(m)

    def row_op(i, k, q):
        # row_i -= q * row_k  (on S and U); Uinv gets the inverse column op
        for j in range(n):
            S[i][j] -= q * S[k][j]
        for j in range(m):
            U[i][j] -= q * U[k][j]
        for r in range(m):
            Uinv[r][k] += q * Uinv[r][i]

    def row_swap(i, k):
        S[i], S[k] = S[k], S[i]
        U[i], U[k] = U[k], U[i]
        for r in range(m):
            Uinv[r][i], Uinv[r][k] = Uinv[r][k], Uinv[r][i]

    def col_op(j, k, q):
        for i in range(m):
            S[i][j] -= q * S[i][k]

    def col_swap(j, k):
        for i in range(m):
            S[i][j], S[i][k] = S[i][k], S[i][j]

    t = 0
    while t < min(m, n):
        # locate a nonzero pivot of minimal absolute value
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if S[i][j] and (pivot is None or abs(S[i][j]) < abs(S[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        row_swap(t, pivot[0])
        col_swap(t, pivot[1])
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, m):
                if S[i][t]:
                    q = S[i][t] // S[t][t]
                    row_op(i, t, q)
                    if S[i][t]:
                        row_swap(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if S[t][j]:
                    q = S[t][j] // S[t][t]
                    col_op(j, t, q)
                    if S[t][j]:
                        col_swap(t, j)
                        dirty = True
        t += 1
    # sign normalization and divisibility chain
    rank = sum(1 for i in range(min(m, n)) if S[i][i])
    for i in range(rank):
        if S[i][i] < 0:
            for j in range(n):
                S[i][j] = -S[i][j]
            for j in range(m):
                U[i][j] = -U[i][j]
            for r in range(m):
                Uinv[r][i] = -Uinv[r][i]
    changed = True
    while changed:
        changed = False
        for i in range(rank - 1):
            a, b = S[i][i], S[i + 1][i + 1]
            if b % a:
                # fold the pair (a, b) into (gcd, lcm) via elementary moves
                col_op(i, i + 1, -1)          # col_i += col_{i+1}
                q = S[i + 1][i] // a
                row_op(i + 1, i, q)
                while S[i + 1][i]:
                    row_swap(i, i + 1)
                    # re-clear the 2x2 block
                    q = S[i + 1][i] // S[i][i]
                    row_op(i + 1, i, q)
                for j in range(i + 1, n):
                    if S[i][j]:
                        q = S[i][j] // S[i][i]
                        col_op(j, i, q)
                if S[i][i] < 0:
                    for j in range(n):
                        S[i][j] = -S[i][j]
                    for j in range(m):
                        U[i][j] = -U[i][j]
                    for r in range(m):
                        Uinv[r][i] = -Uinv[r][i]
                if S[i + 1][i + 1] < 0:
                    for j in range(n):
                        S[i + 1][j] = -S[i + 1][j]
                    for j in range(m):
                        U[i + 1][j] = -U[i + 1][j]
                    for r in range(m):
                        Uinv[r][i + 1] = -Uinv[r][i + 1]
                changed = True
    diag = [S[i][i] for i in range(rank)]
    return diag, U, Uinv
