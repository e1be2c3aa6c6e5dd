"""Dense exact linear algebra over a field or an exact integral domain."""


def _is_zero(a):
    return not a


def bareiss_det(matrix):
    """Determinant by fraction-free Bareiss elimination.

    Entries must support ``+ - *`` and exact division (``exquo`` for
    polynomials, ``/`` otherwise). Every division in the algorithm is exact,
    so no fractions of polynomials are ever formed.
    """
    n = len(matrix)
    if n == 0:
        return 1
    if any(len(row) != n for row in matrix):
        raise ValueError("determinant of a non-square matrix")
    a = [list(row) for row in matrix]
    sign = 1
    prev = None
    for k in range(n - 1):
        if _is_zero(a[k][k]):
            for i in range(k + 1, n):
                if not _is_zero(a[i][k]):
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return a[k][k] * 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                v = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                if prev is not None:
                    v = v.exquo(prev) if hasattr(v, "exquo") else v / prev
                a[i][j] = v
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


def row_echelon(matrix):
    """Gauss-Jordan elimination over a field. Returns (reduced rows, pivot columns)."""
    a = [list(row) for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if not _is_zero(a[i][c])), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for i in range(rows):
            if i != r and not _is_zero(a[i][c]):
                f = a[i][c]
                a[i] = [vi - f * vr for vi, vr in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(matrix):
    if not matrix:
        return 0
    return len(row_echelon(matrix)[1])


def kernel_basis(matrix, ncols=None, zero=0, one=1):
    """Basis of the right null space {v : matrix v = 0}."""
    if not matrix:
        n = ncols or 0
        return [[one if i == j else zero for i in range(n)] for j in range(n)]
    n = len(matrix[0])
    reduced, pivots = row_echelon(matrix)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for fcol in free:
        v = [zero] * n
        v[fcol] = one
        for row, pc in zip(reduced, pivots):
            v[pc] = -row[fcol]
        basis.append(v)
    return basis
