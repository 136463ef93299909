"""Dense exact linear algebra over Q(xi).

Matrices are lists of rows of :class:`CycScalar`.  Everything here is small
(weight spaces of a baby Verma module have dimension at most a few dozen), so
plain Gaussian elimination is used throughout.
"""

from __future__ import annotations

from .cyclotomic import CyclotomicField, CycScalar


def _eliminate(rows, ncols, limit=None):
    """In-place reduced row echelon form. Returns the pivot columns.

    Only the first ``limit`` columns are used as pivot candidates.
    """
    limit = ncols if limit is None else limit
    pivots = []
    r = 0
    nrows = len(rows)
    for col in range(limit):
        piv = None
        for k in range(r, nrows):
            if rows[k][col]:
                piv = k
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        inv = prow[col].inverse()
        prow = [x * inv if x else x for x in prow]
        rows[r] = prow
        nz = [j for j in range(col, ncols) if prow[j]]
        for k in range(nrows):
            if k == r:
                continue
            row = rows[k]
            c = row[col]
            if c:
                for j in nz:
                    row[j] = row[j] - c * prow[j]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return pivots


def rref(matrix, ncols=None):
    """Return (reduced rows without zero rows, pivot columns)."""
    rows = [list(r) for r in matrix]
    if not rows:
        return [], []
    ncols = len(rows[0]) if ncols is None else ncols
    pivots = _eliminate(rows, ncols)
    return rows[: len(pivots)], pivots


def rank(matrix) -> int:
    return len(rref(matrix)[1])


def nullspace(matrix, ncols, field: CyclotomicField):
    """Basis of {x : matrix x = 0}, one vector per free column (canonical)."""
    rows, pivots = rref(matrix, ncols) if matrix else ([], [])
    free = [j for j in range(ncols) if j not in set(pivots)]
    basis = []
    for f in free:
        vec = [field.zero] * ncols
        vec[f] = field.one
        for row, p in zip(rows, pivots):
            if row[f]:
                vec[p] = -row[f]
        basis.append(vec)
    return basis


def solve(columns_matrix, rhs, field: CyclotomicField):
    """Canonical solution z of A z = rhs (free variables zero), or None.

    ``columns_matrix`` is given row-wise as usual (shape m x n).
    """
    n = len(columns_matrix[0]) if columns_matrix else 0
    aug = [list(row) + [b] for row, b in zip(columns_matrix, rhs)]
    if not aug:
        return [field.zero] * n
    pivots = _eliminate(aug, n + 1)
    if n in pivots:
        return None
    z = [field.zero] * n
    for row, p in zip(aug, pivots):
        z[p] = row[n]
    return z


def inverse(square, field: CyclotomicField):
    n = len(square)
    aug = [list(row) + [field.one if i == j else field.zero for j in range(n)] for i, row in enumerate(square)]
    pivots = _eliminate(aug, 2 * n, limit=n)
    if len(pivots) != n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in aug]


def matmul(a, b, field: CyclotomicField):
    if not a:
        return []
    if not b:
        return [[] for _ in a]
    ncols = len(b[0])
    zero = field.zero
    out = []
    brows = b
    for row in a:
        acc = [zero] * ncols
        for k, x in enumerate(row):
            if x:
                bk = brows[k]
                for j in range(ncols):
                    y = bk[j]
                    if y:
                        acc[j] = acc[j] + x * y
        out.append(acc)
    return out


def matvec(a, v, field: CyclotomicField):
    zero = field.zero
    out = []
    for row in a:
        acc = zero
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return out


def transpose(a, ncols=None):
    if not a:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*a)]


def is_zero_matrix(a) -> bool:
    return all(not x for row in a for x in row)


class EchelonSpace:
    """Incrementally grown subspace of Q(xi)^n kept in reduced echelon form."""

    def __init__(self, n: int, field: CyclotomicField):
        self.n = n
        self.field = field
        self.rows: list[list[CycScalar]] = []
        self.pivots: list[int] = []

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec):
        vec = list(vec)
        for row, p in zip(self.rows, self.pivots):
            c = vec[p]
            if c:
                for j in range(p, self.n):
                    if row[j]:
                        vec[j] = vec[j] - c * row[j]
        return vec

    def contains(self, vec) -> bool:
        return not any(self.reduce(vec))

    def add(self, vec) -> bool:
        """Add a vector; returns True when the span grew."""
        vec = self.reduce(vec)
        p = next((j for j, x in enumerate(vec) if x), None)
        if p is None:
            return False
        inv = vec[p].inverse()
        vec = [x * inv if x else x for x in vec]
        for row in self.rows:
            c = row[p]
            if c:
                for j in range(p, self.n):
                    if vec[j]:
                        row[j] = row[j] - c * vec[j]
        at = 0
        while at < len(self.pivots) and self.pivots[at] < p:
            at += 1
        self.rows.insert(at, vec)
        self.pivots.insert(at, p)
        return True
