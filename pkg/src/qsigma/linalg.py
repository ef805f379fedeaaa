"""Exact sparse linear algebra over a field (Q(q) or Q).

Matrices are kept sparse: a row/column is a dict index -> nonzero entry,
a matrix is a dict column-index -> column.  All routines are generic over
any field elements supporting +, -, *, /, unary minus and truthiness.
"""

from __future__ import annotations


def rref(rows, one):
    """Reduced row echelon form of a list of sparse rows.

    Returns a dict pivot-column -> row, where each row has entry `one` at
    its pivot and zeros at every other pivot column.
    """
    pivot_rows = {}
    for row in rows:
        row = dict(row)
        while row:
            lead = min(row)
            if lead in pivot_rows:
                factor = row.pop(lead)
                for c, v in pivot_rows[lead].items():
                    if c == lead:
                        continue
                    w = row.get(c)
                    w = -factor * v if w is None else w - factor * v
                    if w:
                        row[c] = w
                    else:
                        row.pop(c, None)
            else:
                inv = one / row[lead]
                row = {c: v * inv for c, v in row.items()}
                row[lead] = one
                pivot_rows[lead] = row
                break
    # back-substitution: clear pivot columns from the other rows
    for p in sorted(pivot_rows, reverse=True):
        prow = pivot_rows[p]
        for p2, row in pivot_rows.items():
            if p2 == p or p not in row:
                continue
            factor = row.pop(p)
            for c, v in prow.items():
                if c == p:
                    continue
                w = row.get(c)
                w = -factor * v if w is None else w - factor * v
                if w:
                    row[c] = w
                else:
                    row.pop(c, None)
    return pivot_rows


def rank(rows, one):
    return len(rref(rows, one))


def kernel_basis(rows, ncols, one):
    """Basis of the solution space of (rows)·v = 0, v indexed by 0..ncols-1.

    Vectors come out with entry `one` at their free column, ordered by
    free column index.
    """
    pivots = rref(rows, one)
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        vec = {free: one}
        for p, row in pivots.items():
            v = row.get(free)
            if v:
                vec[p] = -v
        basis.append(vec)
    return basis


def mat_vec(cols, vec):
    """Apply a column-sparse matrix to a sparse vector."""
    out = {}
    for c, v in vec.items():
        col = cols.get(c)
        if not col:
            continue
        for r, m in col.items():
            w = out.get(r)
            w = m * v if w is None else w + m * v
            if w:
                out[r] = w
            else:
                out.pop(r, None)
    return out


def mat_mul(a_cols, b_cols):
    """Product A·B of two column-sparse matrices."""
    return {c: col for c in b_cols
            if (col := mat_vec(a_cols, b_cols[c]))}


def mat_equal(a_cols, b_cols) -> bool:
    cols = set(a_cols) | set(b_cols)
    for c in cols:
        if a_cols.get(c, {}) != b_cols.get(c, {}):
            return False
    return True


def transpose_to_rows(cols):
    rows = {}
    for c, col in cols.items():
        for r, v in col.items():
            rows.setdefault(r, {})[c] = v
    return rows


def dense_inverse(matrix, one):
    """Gauss-Jordan inverse of a dense square matrix (list of lists).

    Returns None when the matrix is singular.
    """
    n = len(matrix)
    zero = one - one
    aug = [list(row) + [one if i == j else zero for j in range(n)]
           for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = one / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]
