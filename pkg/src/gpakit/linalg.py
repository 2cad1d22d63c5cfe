"""Exact linear algebra over number fields (or plain rationals).

Dense routines (rref, solve, inverse, charpoly) serve the small block matrices
of connections; the sparse nullspace handles cap/rotation and flatness systems
whose rows touch only a handful of unknowns.  Pivoting is deterministic so
reports are byte-stable.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class _RationalOps:
    zero = Fraction(0)
    one = Fraction(1)


RATIONAL = _RationalOps()


def _is_zero(x) -> bool:
    if hasattr(x, "is_zero"):
        return x.is_zero()
    return x == 0


class Matrix:
    """Dense exact matrix over a field-like object exposing .zero and .one."""

    def __init__(self, rows: Sequence[Sequence], field):
        self.rows = [list(r) for r in rows]
        self.field = field
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0

    @classmethod
    def from_rows(cls, rows, field) -> "Matrix":
        return cls(rows, field)

    @classmethod
    def from_rows_rational(cls, rows) -> "Matrix":
        return cls([[Fraction(x) for x in r] for r in rows], RATIONAL)

    @classmethod
    def identity(cls, n, field) -> "Matrix":
        return cls([[field.one if i == j else field.zero for j in range(n)]
                    for i in range(n)], field)

    def copy(self) -> "Matrix":
        return Matrix([list(r) for r in self.rows], self.field)

    def transpose(self) -> "Matrix":
        return Matrix([[self.rows[i][j] for i in range(self.nrows)]
                       for j in range(self.ncols)], self.field)

    def __mul__(self, other: "Matrix") -> "Matrix":
        assert self.ncols == other.nrows
        z = self.field.zero
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = z
                for k in range(self.ncols):
                    a = self.rows[i][k]
                    if not _is_zero(a):
                        acc = acc + a * other.rows[k][j]
                row.append(acc)
            out.append(row)
        return Matrix(out, self.field)

    def rref(self) -> tuple["Matrix", list[int]]:
        """Reduced row echelon form with the pivot column list."""
        m = self.copy()
        pivots: list[int] = []
        r = 0
        for c in range(m.ncols):
            pivot = next((i for i in range(r, m.nrows) if not _is_zero(m.rows[i][c])), None)
            if pivot is None:
                continue
            m.rows[r], m.rows[pivot] = m.rows[pivot], m.rows[r]
            inv = _inv(m.rows[r][c], self.field)
            m.rows[r] = [x * inv for x in m.rows[r]]
            for i in range(m.nrows):
                if i != r and not _is_zero(m.rows[i][c]):
                    f = m.rows[i][c]
                    m.rows[i] = [a - f * b for a, b in zip(m.rows[i], m.rows[r])]
            pivots.append(c)
            r += 1
            if r == m.nrows:
                break
        return m, pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> list[list]:
        """Basis of the right nullspace, pivots normalized to one."""
        red, pivots = self.rref()
        free = [c for c in range(self.ncols) if c not in pivots]
        basis = []
        for fc in free:
            v = [self.field.zero] * self.ncols
            v[fc] = self.field.one
            for r, pc in enumerate(pivots):
                v[pc] = -red.rows[r][fc]
            basis.append(v)
        return basis

    def left_nullspace(self) -> list[list]:
        return self.transpose().nullspace()

    def solve(self, rhs: Sequence):
        """One solution of self * x = rhs, or None if inconsistent."""
        aug = Matrix([list(r) + [b] for r, b in zip(self.rows, rhs)], self.field)
        red, pivots = aug.rref()
        if self.ncols in pivots:
            return None
        x = [self.field.zero] * self.ncols
        for r, pc in enumerate(pivots):
            x[pc] = red.rows[r][self.ncols]
        return x

    def inverse(self) -> "Matrix | None":
        if self.nrows != self.ncols:
            return None
        aug = Matrix([list(r) + list(e) for r, e in
                      zip(self.rows, Matrix.identity(self.nrows, self.field).rows)], self.field)
        red, pivots = aug.rref()
        if pivots != list(range(self.nrows)):
            return None
        return Matrix([r[self.nrows:] for r in red.rows], self.field)

    def det(self):
        assert self.nrows == self.ncols
        m = self.copy()
        f = self.field
        acc = f.one
        for c in range(m.ncols):
            pivot = next((i for i in range(c, m.nrows) if not _is_zero(m.rows[i][c])), None)
            if pivot is None:
                return f.zero
            if pivot != c:
                m.rows[c], m.rows[pivot] = m.rows[pivot], m.rows[c]
                acc = -acc
            acc = acc * m.rows[c][c]
            inv = _inv(m.rows[c][c], f)
            for i in range(c + 1, m.nrows):
                if not _is_zero(m.rows[i][c]):
                    fac = m.rows[i][c] * inv
                    m.rows[i] = [a - fac * b for a, b in zip(m.rows[i], m.rows[c])]
        return acc

    def trace(self):
        acc = self.field.zero
        for i in range(self.nrows):
            acc = acc + self.rows[i][i]
        return acc

    def charpoly(self) -> list:
        """Characteristic polynomial det(xI - A), ascending coefficients,
        via Faddeev-LeVerrier."""
        n = self.nrows
        assert n == self.ncols
        f = self.field
        coeffs = [f.zero] * (n + 1)
        coeffs[n] = f.one
        m = Matrix.identity(n, f)
        c = f.one
        for k in range(1, n + 1):
            m = self * m
            c = -_div_int(m.trace(), k, f)
            coeffs[n - k] = c
            for i in range(n):
                m.rows[i][i] = m.rows[i][i] + c
        return coeffs


def _inv(x, field):
    if hasattr(x, "inverse"):
        return x.inverse()
    return field.one / x


def _div_int(x, k: int, field):
    if isinstance(x, Fraction):
        return x / k
    return x / (field.one * k)


def sparse_nullspace(rows: list[dict[int, object]], ncols: int, field) -> list[list]:
    """Right nullspace of a sparse system; rows are {column: coefficient}.

    Elimination pivots on the sparsest available row to limit fill-in; the
    residual dense block is handed to Matrix.nullspace.  Column order of the
    returned vectors matches the input indexing.
    """
    work = [dict((c, v) for c, v in row.items() if not _is_zero(v)) for row in rows]
    work = [r for r in work if r]
    # eliminations[c] = row dict expressing pivot column c (coefficient one)
    eliminations: dict[int, dict[int, object]] = {}
    order: list[int] = []

    def reduce_row(row: dict) -> dict:
        changed = True
        while changed:
            changed = False
            for c in list(row.keys()):
                if c in eliminations and not _is_zero(row.get(c, field.zero)):
                    coef = row.pop(c)
                    for cc, vv in eliminations[c].items():
                        nv = row.get(cc, field.zero) - coef * vv
                        if _is_zero(nv):
                            row.pop(cc, None)
                        else:
                            row[cc] = nv
                    changed = True
        return row

    work.sort(key=lambda r: (len(r), sorted(r.keys())))
    queue = list(work)
    while queue:
        queue.sort(key=lambda r: (len(r), sorted(r.keys())))
        row = reduce_row(queue.pop(0))
        if not row:
            continue
        c = min(row.keys())
        inv = _inv(row[c], field)
        expr = {cc: vv * inv for cc, vv in row.items() if cc != c}
        # substitute into existing eliminations that mention c
        # (x_pc = -sum pexpr*x; replacing x_c = -sum expr*x flips the sign)
        for pc, pexpr in eliminations.items():
            if c in pexpr:
                coef = pexpr.pop(c)
                for cc, vv in expr.items():
                    nv = pexpr.get(cc, field.zero) - coef * vv
                    if _is_zero(nv):
                        pexpr.pop(cc, None)
                    else:
                        pexpr[cc] = nv
        eliminations[c] = expr
        order.append(c)

    free = [c for c in range(ncols) if c not in eliminations]
    basis = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        for pc in reversed(order):
            acc = field.zero
            for cc, vv in eliminations[pc].items():
                if not _is_zero(v[cc]):
                    acc = acc + vv * v[cc]
            v[pc] = -acc
        basis.append(v)
    return basis
