"""Exact rational linear algebra and a small simplex solver.

Everything works on :class:`~fractions.Fraction` (or ``int``) entries; the
problems seen here are tiny (dimension <= 4, a few dozen constraints), so a
dense tableau with Bland's rule is fast enough and never wrong.
"""

from fractions import Fraction
from math import gcd
from functools import reduce


def _frac_matrix(rows):
    return [[Fraction(x) for x in row] for row in rows]


def row_echelon(rows):
    """Reduced row echelon form; returns ``(matrix, pivot_columns)``."""
    m = _frac_matrix(rows)
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows):
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    return len(row_echelon(rows)[1])


def nullspace(rows, ncols=None):
    """Basis of ``{x : rows @ x = 0}`` as a list of Fraction vectors."""
    rows = [list(r) for r in rows]
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    m, pivots = row_echelon(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][f]
        basis.append(v)
    return basis


def det(matrix):
    """Determinant by fraction-free (Bareiss) elimination."""
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num // prev if isinstance(num, int) and isinstance(prev, int) else num / prev
        prev = a[k][k]
    d = sign * a[n - 1][n - 1]
    return int(d) if isinstance(d, Fraction) and d.denominator == 1 else d


def solve(matrix, rhs):
    """Solve a square nonsingular system exactly; ``None`` if singular."""
    n = len(matrix)
    aug = [list(matrix[i]) + [rhs[i]] for i in range(n)]
    m, pivots = row_echelon(aug)
    if pivots != list(range(n)):
        return None
    return [m[i][n] for i in range(n)]


def adjugate(matrix):
    """Integer adjugate so that ``adj @ A = det(A) * I``."""
    n = len(matrix)
    if n == 1:
        return [[1]]
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(matrix) if k != i]
            adj[j][i] = (-1) ** (i + j) * det(minor)
    return adj


def integer_scale(vector):
    """Smallest integer multiple of a rational vector with gcd 1 (sign kept)."""
    v = [Fraction(x) for x in vector]
    den = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for x in v), 1)
    ints = [int(x * den) for x in v]
    g = reduce(gcd, (abs(x) for x in ints), 0)
    if g == 0:
        return ints
    return [x // g for x in ints]


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


# -- linear programming ------------------------------------------------------

class LPResult:
    __slots__ = ("status", "x", "value")

    def __init__(self, status, x=None, value=None):
        self.status = status
        self.x = x
        self.value = value

    @property
    def success(self):
        return self.status == "optimal"

    def __repr__(self):
        return "LPResult(%s, value=%s)" % (self.status, self.value)


def _pivot(tab, z, r, c):
    prow = tab[r]
    inv = 1 / prow[c]
    prow[:] = [x * inv for x in prow]
    for i, row in enumerate(tab):
        if i != r and row[c] != 0:
            f = row[c]
            row[:] = [a - f * b for a, b in zip(row, prow)]
    if z[c] != 0:
        f = z[c]
        z[:] = [a - f * b for a, b in zip(z, prow)]


def _simplex(tab, z, basis, allowed):
    """Minimise with reduced-cost row ``z``; Bland's rule.  Returns status."""
    while True:
        enter = next((j for j in allowed if z[j] < 0), None)
        if enter is None:
            return "optimal"
        best = None
        for i, row in enumerate(tab):
            if row[enter] > 0:
                ratio = row[-1] / row[enter]
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return "unbounded"
        r = best[1]
        _pivot(tab, z, r, enter)
        basis[r] = enter


def linprog(c, A_ub=(), b_ub=(), A_eq=(), b_eq=()):
    """Minimise ``c @ x`` subject to ``A_ub x <= b_ub``, ``A_eq x = b_eq``, ``x >= 0``.

    Exact two-phase simplex.  Returns an :class:`LPResult` whose ``status``
    is ``"optimal"``, ``"infeasible"`` or ``"unbounded"``.
    """
    c = [Fraction(v) for v in c]
    nx = len(c)
    A_ub = [list(map(Fraction, r)) for r in A_ub]
    A_eq = [list(map(Fraction, r)) for r in A_eq]
    b_ub = [Fraction(v) for v in b_ub]
    b_eq = [Fraction(v) for v in b_eq]
    ns = len(A_ub)
    rows = []
    rhs = []
    for k, (row, b) in enumerate(zip(A_ub, b_ub)):
        slack = [Fraction(0)] * ns
        slack[k] = Fraction(1)
        rows.append(row + slack)
        rhs.append(b)
    for row, b in zip(A_eq, b_eq):
        rows.append(row + [Fraction(0)] * ns)
        rhs.append(b)
    m = len(rows)
    ntot = nx + ns
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-x for x in rows[i]]
            rhs[i] = -rhs[i]
    # phase 1: one artificial per row
    tab = []
    for i in range(m):
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        tab.append(rows[i] + art + [rhs[i]])
    basis = [ntot + i for i in range(m)]
    width = ntot + m
    z = [Fraction(0)] * (width + 1)
    for i in range(m):
        for j in range(ntot):
            z[j] -= tab[i][j]
        z[-1] -= tab[i][-1]
    _simplex(tab, z, basis, range(ntot))
    if -z[-1] != 0:
        return LPResult("infeasible")
    # drive artificials out of the basis, dropping redundant rows
    keep = []
    for i in range(len(tab)):
        if basis[i] >= ntot:
            col = next((j for j in range(ntot) if tab[i][j] != 0), None)
            if col is None:
                continue
            _pivot(tab, z, i, col)
            basis[i] = col
        keep.append(i)
    tab = [tab[i][:ntot] + [tab[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]
    # phase 2
    cost = c + [Fraction(0)] * ns
    z = cost + [Fraction(0)]
    for i, bi in enumerate(basis):
        cb = cost[bi]
        if cb != 0:
            z = [a - cb * b for a, b in zip(z, tab[i])]
    status = _simplex(tab, z, basis, range(ntot))
    if status == "unbounded":
        return LPResult("unbounded")
    x = [Fraction(0)] * ntot
    for i, bi in enumerate(basis):
        x[bi] = tab[i][-1]
    x = x[:nx]
    return LPResult("optimal", x, dot(c, x))


def in_conic_hull(point, generators):
    """Is ``point`` a nonnegative combination of ``generators``?  Exact LP."""
    n = len(point)
    k = len(generators)
    if k == 0:
        return all(p == 0 for p in point)
    A_eq = [[generators[j][i] for j in range(k)] for i in range(n)]
    return linprog([0] * k, A_eq=A_eq, b_eq=list(point)).success
