"""Dense exact matrices over the fields of :mod:`quivar.fields`.

Everything is small and dense on purpose: the objects of interest are
desk-scale, and dense Gauss-Jordan over an exact field is auditable.
Matrices are immutable after construction; all operations return new ones.
"""

from __future__ import annotations

from itertools import combinations, product

from .fields import Field, FieldError, PrimeField


class Mat:
    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: Field, data, rows=None, cols=None):
        data = [list(r) for r in data]
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if len(data) != rows or any(len(r) != cols for r in data):
            raise FieldError("ragged matrix data")
        self.field = field
        self.rows = rows
        self.cols = cols
        self.data = tuple(tuple(r) for r in data)

    # -- constructors --------------------------------------------------
    @staticmethod
    def zeros(field, rows, cols):
        z = field.zero()
        return Mat(field, [[z] * cols for _ in range(rows)], rows, cols)

    @staticmethod
    def identity(field, n):
        z, o = field.zero(), field.one()
        return Mat(field, [[o if i == j else z for j in range(n)] for i in range(n)])

    @staticmethod
    def from_ints(field, data):
        return Mat(field, [[field.from_int(x) for x in r] for r in data],
                   len(data), len(data[0]) if data else 0)

    @staticmethod
    def column(field, entries):
        return Mat(field, [[e] for e in entries], len(entries), 1)

    # -- basic ops -----------------------------------------------------
    def __eq__(self, other):
        return (isinstance(other, Mat) and self.field == other.field
                and self.data == other.data
                and (self.rows, self.cols) == (other.rows, other.cols))

    def __hash__(self):
        return hash((self.field, self.rows, self.cols, self.data))

    def __repr__(self):
        body = "; ".join(" ".join(self.field.to_str(x) for x in r) for r in self.data)
        return f"Mat[{self.rows}x{self.cols}]({body})"

    def _check_same_field(self, other):
        if self.field != other.field:
            raise FieldError("matrices over different fields")

    def __add__(self, other):
        self._check_same_field(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise FieldError("shape mismatch in addition")
        f = self.field
        return Mat(f, [[f.add(a, b) for a, b in zip(ra, rb)]
                       for ra, rb in zip(self.data, other.data)])

    def __sub__(self, other):
        return self + other.scale(self.field.from_int(-1))

    def scale(self, c):
        f = self.field
        return Mat(f, [[f.mul(c, x) for x in r] for r in self.data],
                   self.rows, self.cols)

    def __matmul__(self, other):
        self._check_same_field(other)
        if self.cols != other.rows:
            raise FieldError("shape mismatch in product")
        f = self.field
        z = f.zero()
        bt = [tuple(other.data[r][c] for r in range(other.rows))
              for c in range(other.cols)]
        out = []
        for r in self.data:
            row = []
            for c in bt:
                acc = z
                for a, b in zip(r, c):
                    acc = f.add(acc, f.mul(a, b))
                row.append(acc)
            out.append(row)
        return Mat(f, out, self.rows, other.cols)

    def transpose(self):
        return Mat(self.field, list(zip(*self.data)) if self.data else
                   [[] for _ in range(self.cols)], self.cols, self.rows)

    def trace(self):
        f = self.field
        acc = f.zero()
        for i in range(min(self.rows, self.cols)):
            acc = f.add(acc, self.data[i][i])
        return acc

    def is_zero(self):
        f = self.field
        return all(f.is_zero(x) for r in self.data for x in r)

    def hstack(self, other):
        self._check_same_field(other)
        if self.rows != other.rows:
            raise FieldError("row mismatch in hstack")
        return Mat(self.field, [list(a) + list(b) for a, b in zip(self.data, other.data)],
                   self.rows, self.cols + other.cols)

    def submatrix(self, row_idx, col_idx):
        return Mat(self.field, [[self.data[i][j] for j in col_idx] for i in row_idx],
                   len(row_idx), len(col_idx))

    def col(self, j):
        return Mat(self.field, [[r[j]] for r in self.data], self.rows, 1)

    # -- elimination ---------------------------------------------------
    def rref(self):
        """Reduced row-echelon form.

        Returns ``(rank, pivot_columns, reduced)``; the reduced form is the
        unique RREF over the field.
        """
        f = self.field
        m = [list(r) for r in self.data]
        pivots = []
        r = 0
        for c in range(self.cols):
            pr = None
            for i in range(r, self.rows):
                if not f.is_zero(m[i][c]):
                    pr = i
                    break
            if pr is None:
                continue
            m[r], m[pr] = m[pr], m[r]
            piv = f.inv(m[r][c])
            m[r] = [f.mul(piv, x) for x in m[r]]
            for i in range(self.rows):
                if i != r and not f.is_zero(m[i][c]):
                    factor = m[i][c]
                    m[i] = [f.sub(a, f.mul(factor, b)) for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return r, pivots, Mat(f, m, self.rows, self.cols)

    def rank(self):
        return self.rref()[0]

    def kernel_basis(self):
        """Columns form a basis of the null space; shape cols x (cols - rank)."""
        f = self.field
        rank, pivots, red = self.rref()
        free = [c for c in range(self.cols) if c not in pivots]
        cols = []
        for fc in free:
            v = [f.zero()] * self.cols
            v[fc] = f.one()
            for r, pc in enumerate(pivots):
                v[pc] = f.neg(red.data[r][fc])
            cols.append(v)
        return Mat(f, list(zip(*cols)) if cols else [[] for _ in range(self.cols)],
                   self.cols, len(cols))

    def image_basis(self):
        """Columns of the original matrix at the pivot positions of its RREF."""
        _, pivots, _ = self.rref()
        return self.submatrix(range(self.rows), pivots)

    def solve(self, b: "Mat"):
        """One solution x of self @ x = b, or None if inconsistent."""
        self._check_same_field(b)
        if b.rows != self.rows:
            raise FieldError("shape mismatch in solve")
        f = self.field
        aug = self.hstack(b)
        rank, pivots, red = aug.rref()
        if any(p >= self.cols for p in pivots):
            return None
        sol = [[f.zero()] * b.cols for _ in range(self.cols)]
        for r, pc in enumerate(pivots):
            for j in range(b.cols):
                sol[pc][j] = red.data[r][self.cols + j]
        return Mat(f, sol, self.cols, b.cols)

    def det(self):
        """Determinant by fraction-free-ish Gaussian elimination."""
        if self.rows != self.cols:
            raise FieldError("determinant of non-square matrix")
        f = self.field
        m = [list(r) for r in self.data]
        n = self.rows
        det = f.one()
        for c in range(n):
            pr = None
            for i in range(c, n):
                if not f.is_zero(m[i][c]):
                    pr = i
                    break
            if pr is None:
                return f.zero()
            if pr != c:
                m[c], m[pr] = m[pr], m[c]
                det = f.neg(det)
            det = f.mul(det, m[c][c])
            inv = f.inv(m[c][c])
            for i in range(c + 1, n):
                if not f.is_zero(m[i][c]):
                    factor = f.mul(m[i][c], inv)
                    m[i] = [f.sub(a, f.mul(factor, b)) for a, b in zip(m[i], m[c])]
        return det


# -- subspaces ---------------------------------------------------------
# A subspace of F^d is carried as a d x k matrix whose columns are a basis,
# in canonical column-echelon form (so equal subspaces compare equal).

def col_span(m: Mat) -> Mat:
    """Canonical column-reduced basis of the column span."""
    rank, _, red = m.transpose().rref()
    return red.submatrix(range(rank), range(m.rows)).transpose()


def subspace_sum(a: Mat, b: Mat) -> Mat:
    return col_span(a.hstack(b))


def subspace_intersect(a: Mat, b: Mat) -> Mat:
    if a.cols == 0 or b.cols == 0:
        return col_span(Mat.zeros(a.field, a.rows, 0))
    ker = a.hstack(b.scale(a.field.from_int(-1))).kernel_basis()
    coeffs = ker.submatrix(range(a.cols), range(ker.cols))
    return col_span(a @ coeffs)


def annihilator_rows(s: Mat) -> Mat:
    """Matrix N with {x : N x = 0} = column span of s."""
    return s.transpose().kernel_basis().transpose()


def subspace_contains(big: Mat, small: Mat) -> bool:
    n = annihilator_rows(big)
    return (n @ small).is_zero()


def preimage(a: Mat, s: Mat) -> Mat:
    """Canonical basis of {x : a @ x in span(s)}."""
    n = annihilator_rows(s)
    return col_span((n @ a).kernel_basis())


def enumerate_subspaces(p: int, d: int):
    """All subspaces of F_p^d as canonical column-basis matrices.

    Enumerates reduced row-echelon bases, so each subspace appears once.
    """
    field = PrimeField(p)
    out = []
    for k in range(d + 1):
        for pivots in combinations(range(d), k):
            free_pos = []
            for r, pc in enumerate(pivots):
                for c in range(pc + 1, d):
                    if c not in pivots:
                        free_pos.append((r, c))
            for vals in product(range(p), repeat=len(free_pos)):
                rows = [[0] * d for _ in range(k)]
                for r, pc in enumerate(pivots):
                    rows[r][pc] = 1
                for (r, c), v in zip(free_pos, vals):
                    rows[r][c] = v
                out.append(Mat.from_ints(field, rows).transpose() if k else
                           Mat.zeros(field, d, 0))
    return out


def gaussian_binomial_total(p: int, d: int) -> int:
    """Total number of subspaces of F_p^d (sum of Gaussian binomials)."""
    total = 0
    for k in range(d + 1):
        num = den = 1
        for i in range(k):
            num *= p ** (d - i) - 1
            den *= p ** (k - i) - 1
        total += num // den
    return total
