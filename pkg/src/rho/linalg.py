"""Dense exact linear algebra over Q or Q(i).

Matrices are lists of row lists; vectors are plain lists.  Everything is
deterministic: pivots are the first nonzero entries in column order, so
canonical bases (reduced row echelon form) come out identical run to run.
"""

from __future__ import annotations


def zeros(rows, cols, field):
    z = field.zero
    return [[z] * cols for _ in range(rows)]


def identity(n, field):
    m = zeros(n, n, field)
    for k in range(n):
        m[k][k] = field.one
    return m


def transpose(m):
    if not m:
        return []
    return [list(col) for col in zip(*m)]

def conj_transpose(m, field):
    return [[field.conj(x) for x in col] for col in zip(*m)] if m else []


def mat_vec(m, v, field):
    return [sum((row[j] * v[j] for j in range(len(v))), field.zero) for row in m]


def mat_mul(a, b, field):
    if not a or not b:
        return []
    bt = transpose(b)
    return [
        [sum((ra[k] * cb[k] for k in range(len(ra))), field.zero) for cb in bt]
        for ra in a
    ]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, a):
    return [[c * x for x in row] for row in a]


def vec_add(u, v):
    return [x + y for x, y in zip(u, v)]


def vec_sub(u, v):
    return [x - y for x, y in zip(u, v)]


def vec_scale(c, v):
    return [c * x for x in v]


def is_zero_vec(v):
    return all(not bool(x) for x in v)


def is_zero_mat(m):
    return all(is_zero_vec(row) for row in m)


def rref(mat, field):
    """Reduced row echelon form.  Returns (rows, pivot_columns)."""
    m = [list(row) for row in mat]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for k in range(r, nrows):
            if m[k][c]:
                pr = k
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = field.one / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for k in range(nrows):
            if k != r and m[k][c]:
                f = m[k][c]
                m[k] = [x - f * y for x, y in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m[:r] + [[field.zero] * ncols for _ in range(nrows - r)], pivots


def rank(mat, field):
    if not mat or not mat[0]:
        return 0
    return len(rref(mat, field)[1])


def row_space(mat, field):
    """Canonical (rref) basis of the row span."""
    if not mat or not mat[0]:
        return []
    rows, pivots = rref(mat, field)
    return rows[: len(pivots)]


def column_space(mat, field):
    """Canonical basis of the column span, as vectors."""
    return row_space(transpose(mat), field)


def nullspace(mat, ncols, field):
    """Canonical kernel basis of the column action v -> mat @ v."""
    if ncols == 0:
        return []
    if not mat:
        return [e for e in identity(ncols, field)]
    rows, pivots = rref(mat, field)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][fc]
        basis.append(v)
    return basis


def solve(mat, rhs, field):
    """One solution of mat @ x = rhs (free variables zero), or None."""
    nrows = len(mat)
    ncols = len(mat[0]) if nrows else 0
    if nrows == 0:
        return [field.zero] * ncols
    aug = [list(row) + [rhs[k]] for k, row in enumerate(mat)]
    rows, pivots = rref(aug, field)
    if ncols in pivots:
        return None
    x = [field.zero] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = rows[r][ncols]
    return x


def inverse(mat, field):
    n = len(mat)
    if n == 0:
        return []
    aug = [list(row) + ident_row for row, ident_row in zip(mat, identity(n, field))]
    rows, pivots = rref(aug, field)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in rows[:n]]


def in_span(v, basis, field):
    """Coordinates of v in span(basis), or None if not a member."""
    if not basis:
        return [] if is_zero_vec(v) else None
    cols = transpose(basis)
    return solve(cols, v, field)


def subspace_intersection(basis1, basis2, field):
    """Canonical basis of span(basis1) & span(basis2)."""
    if not basis1 or not basis2:
        return []
    dim = len(basis1[0])
    block = [list(b1) for b1 in basis1]
    # solve c1*basis1 = c2*basis2: nullspace of [basis1^T | -basis2^T]
    cols = transpose(basis1 + [vec_scale(-field.one, b) for b in basis2])
    ker = nullspace(cols, len(basis1) + len(basis2), field)
    vecs = []
    for coeffs in ker:
        v = [field.zero] * dim
        for c, b in zip(coeffs[: len(basis1)], block):
            if c:
                v = vec_add(v, vec_scale(c, b))
        vecs.append(v)
    return row_space(vecs, field) if vecs else []


def complement_mod(sub_basis, space_basis, field):
    """Canonical complement of span(sub) inside span(space); sub must lie in space.

    Each returned vector has zero coordinates at the sub-basis pivot columns,
    so the result is deterministic and reduction against it is stable.
    """
    sub_rows = row_space(sub_basis, field) if sub_basis else []
    out = [reduce_mod(v, sub_rows, field) for v in space_basis]
    return row_space(out, field) if out else []


def reduce_mod(v, basis_rref, field):
    """Reduce v against an rref basis (in place semantics, returns new vector)."""
    w = list(v)
    for row in basis_rref:
        pc = next((j for j, x in enumerate(row) if x), None)
        if pc is not None and w[pc]:
            f = w[pc]
            w = [x - f * y for x, y in zip(w, row)]
    return w


def gram_positive_definite(g, field):
    """Sylvester test on a Hermitian Gram matrix; minors must be positive rationals."""
    n = len(g)
    for i in range(n):
        for j in range(n):
            if g[i][j] != field.conj(g[j][i]):
                return False
    for k in range(1, n + 1):
        minor = [row[:k] for row in g[:k]]
        d = det(minor, field)
        if not field.is_positive_real(d):
            return False
    return True


def det(mat, field):
    """Exact determinant by fraction-free-ish Gaussian elimination."""
    n = len(mat)
    if n == 0:
        return field.one
    m = [list(row) for row in mat]
    sign = field.one
    acc = field.one
    for c in range(n):
        pr = None
        for k in range(c, n):
            if m[k][c]:
                pr = k
                break
        if pr is None:
            return field.zero
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            sign = -sign
        piv = m[c][c]
        acc = acc * piv
        for k in range(c + 1, n):
            if m[k][c]:
                f = m[k][c] / piv
                m[k] = [x - f * y for x, y in zip(m[k], m[c])]
    return sign * acc
