"""Exact linear algebra over the constant field.

Entries are FieldElements from the constant subfield (plain rationals,
or rational functions of the parameters in telescoper mode).  The
primary solver is Gauss-Jordan with exact arithmetic; a fraction-free
Bareiss elimination provides an independent consistency check for
refutation certificates.
"""

from .elements import FieldElement, ONE, ZERO


class LinearSystem:
    """Augmented exact system M z = v with named unknowns."""

    def __init__(self, rows, rhs, names):
        self.rows = [list(r) for r in rows]
        self.rhs = list(rhs)
        self.names = list(names)

    @property
    def ncols(self):
        return len(self.names)

    def __len__(self):
        return len(self.rows)

    def solve(self):
        """(solution, consistent): one solution with free unknowns at zero,
        or (None, False)."""
        return solve_affine(self.rows, self.rhs)

    def consistent_fraction_free(self):
        """Bareiss-based rank comparison; independent of solve()."""
        aug = [row + [b] for row, b in zip(self.rows, self.rhs)]
        return _rank(aug) == _rank([r[:-1] for r in aug])

    def to_json(self, ctx):
        return {
            "unknowns": self.names,
            "matrix": [[ctx.render(c) for c in row] for row in self.rows],
            "rhs": [ctx.render(b) for b in self.rhs],
        }


def solve_affine(rows, rhs):
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    n = len(rows[0]) if rows else 0
    pivots = {}
    r = 0
    for c in range(n):
        sel = None
        for i in range(r, len(m)):
            if not m[i][c].is_zero():
                sel = i
                break
        if sel is None:
            continue
        m[r], m[sel] = m[sel], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots[c] = r
        r += 1
    for i in range(r, len(m)):
        if not m[i][n].is_zero():
            return None, False
    sol = [ZERO] * n
    for c, pr in pivots.items():
        sol[c] = m[pr][n]
    return sol, True


def _rank(m):
    if not m or not m[0]:
        return 0
    m = [row[:] for row in m]
    nrows, ncols = len(m), len(m[0])
    rank = 0
    row = 0
    for col in range(ncols):
        sel = None
        for i in range(row, nrows):
            if not m[i][col].is_zero():
                sel = i
                break
        if sel is None:
            continue
        m[row], m[sel] = m[sel], m[row]
        piv = m[row][col]
        for i in range(row + 1, nrows):
            if m[i][col].is_zero():
                continue
            f = m[i][col]
            # fraction-free row update: piv*row_i - f*row_pivot
            m[i] = [piv * a - f * b for a, b in zip(m[i], m[row])]
        rank += 1
        row += 1
    return rank


def nontrivial_kernel_vector(columns):
    """A nonzero solution of sum l_i * columns[i] = 0, or None.

    columns is a list of coordinate vectors (lists of constants) of equal
    length; the returned combination has its last entry nonzero whenever
    possible (the caller grows the list one column at a time)."""
    ncols = len(columns)
    nrows = len(columns[0]) if columns else 0
    rows = [[columns[j][i] for j in range(ncols)] for i in range(nrows)]
    m = [row[:] for row in rows]
    pivots = {}
    r = 0
    for c in range(ncols):
        sel = None
        for i in range(r, len(m)):
            if not m[i][c].is_zero():
                sel = i
                break
        if sel is None:
            continue
        m[r], m[sel] = m[sel], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots[c] = r
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    if not free:
        return None
    # prefer the highest free column so the newest coordinate is active
    fc = free[-1]
    sol = [ZERO] * ncols
    sol[fc] = ONE
    for c, pr in pivots.items():
        sol[c] = -m[pr][fc]
    return sol
