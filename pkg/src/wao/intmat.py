"""Exact integer matrices: Smith normal form, kernels, linear solving.

Everything here works with Python ints, so there is no overflow, ever.
Matrices are immutable once constructed; the algorithms copy into lists
internally.  The Smith normal form uses a fixed pivoting rule (smallest
nonzero absolute value, ties broken by row-then-column position) so that
the transforms U, D, V are identical across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Iterator, Sequence


class IntMatrix:
    """Immutable integer matrix stored as a tuple of row tuples."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Iterable[Iterable[int]], rows: int | None = None,
                 cols: int | None = None):
        rws = tuple(tuple(int(x) for x in row) for row in data)
        if rows is None:
            rows = len(rws)
        if cols is None:
            cols = len(rws[0]) if rws else 0
        if len(rws) != rows or any(len(r) != cols for r in rws):
            raise ValueError("ragged or mis-sized matrix data")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "data", rws)

    def __setattr__(self, *a):
        raise AttributeError("IntMatrix is immutable")

    @staticmethod
    def zeros(rows: int, cols: int) -> "IntMatrix":
        return IntMatrix([[0] * cols for _ in range(rows)], rows, cols)

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def diagonal(entries: Sequence[int], rows: int | None = None,
                 cols: int | None = None) -> "IntMatrix":
        n = len(entries)
        rows = n if rows is None else rows
        cols = n if cols is None else cols
        m = [[0] * cols for _ in range(rows)]
        for i, e in enumerate(entries):
            if i < rows and i < cols:
                m[i][i] = int(e)
        return IntMatrix(m, rows, cols)

    @staticmethod
    def column(vec: Sequence[int]) -> "IntMatrix":
        return IntMatrix([[int(x)] for x in vec], len(vec), 1)

    def __eq__(self, other) -> bool:
        return (isinstance(other, IntMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.data == other.data)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.data))

    def __repr__(self) -> str:
        if self.rows <= 6 and self.cols <= 10:
            body = "; ".join(" ".join(str(x) for x in row) for row in self.data)
            return f"IntMatrix({self.rows}x{self.cols}: {body})"
        return f"IntMatrix({self.rows}x{self.cols})"

    def __getitem__(self, ij) -> int:
        i, j = ij
        return self.data[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.data[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.data)

    def transpose(self) -> "IntMatrix":
        return IntMatrix([[self.data[i][j] for i in range(self.rows)]
                          for j in range(self.cols)], self.cols, self.rows)

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        bt = other.transpose().data
        out = []
        for r in self.data:
            out.append([sum(a * b for a, b in zip(r, c) if a) for c in bt])
        return IntMatrix(out, self.rows, other.cols)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in matrix sum")
        return IntMatrix([[a + b for a, b in zip(r, s)]
                          for r, s in zip(self.data, other.data)],
                         self.rows, self.cols)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix([[-a for a in r] for r in self.data], self.rows, self.cols)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix([[c * a for a in r] for r in self.data], self.rows, self.cols)

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        """Matrix times column vector."""
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * x for a, x in zip(r, vec) if a) for r in self.data)

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        return IntMatrix([r + s for r, s in zip(self.data, other.data)],
                         self.rows, self.cols + other.cols)

    def vstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.cols:
            raise ValueError("column mismatch in vstack")
        return IntMatrix(self.data + other.data, self.rows + other.rows, self.cols)

    def is_zero(self) -> bool:
        return all(all(a == 0 for a in r) for r in self.data)

    def nonzero(self) -> Iterator[tuple[int, int, int]]:
        for i, r in enumerate(self.data):
            for j, a in enumerate(r):
                if a:
                    yield i, j, a

    @staticmethod
    def from_columns(cols: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        if not cols:
            return IntMatrix.zeros(rows, 0)
        return IntMatrix(list(zip(*cols)), rows, len(cols))


@dataclass(frozen=True)
class SmithForm:
    """U*M*V = D with U, V unimodular and D diagonal, d_i | d_{i+1} >= 0."""

    U: IntMatrix
    Uinv: IntMatrix
    V: IntMatrix
    Vinv: IntMatrix
    diag: tuple[int, ...]
    rows: int
    cols: int

    @property
    def D(self) -> IntMatrix:
        return IntMatrix.diagonal(self.diag, self.rows, self.cols)

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diag if d)


def _swap_rows(m, i, j):
    m[i], m[j] = m[j], m[i]


def _swap_cols(m, i, j):
    for r in m:
        r[i], r[j] = r[j], r[i]


def _addmul_row(m, dst, src, c):
    if c:
        rd, rs = m[dst], m[src]
        for k in range(len(rd)):
            rd[k] += c * rs[k]


def _addmul_col(m, dst, src, c):
    if c:
        for r in m:
            r[dst] += c * r[src]


def smith_normal_form(M: IntMatrix) -> SmithForm:
    """Smith normal form with tracked transforms and their inverses.

    Pivot rule: among the active submatrix entries, pick the nonzero entry
    of smallest absolute value, breaking ties by (row, column).  This makes
    the output deterministic, which downstream report hashing relies on.
    """
    R, C = M.rows, M.cols
    a = [list(r) for r in M.data]
    u = [[1 if i == j else 0 for j in range(R)] for i in range(R)]
    uinv = [[1 if i == j else 0 for j in range(R)] for i in range(R)]
    v = [[1 if i == j else 0 for j in range(C)] for i in range(C)]
    vinv = [[1 if i == j else 0 for j in range(C)] for i in range(C)]

    def row_op(dst, src, c):
        # row_dst += c*row_src on a and u; inverse op on uinv columns
        _addmul_row(a, dst, src, c)
        _addmul_row(u, dst, src, c)
        _addmul_col(uinv, src, dst, -c)

    def col_op(dst, src, c):
        _addmul_col(a, dst, src, c)
        _addmul_col(v, dst, src, c)
        _addmul_row(vinv, src, dst, -c)

    n = min(R, C)
    t = 0
    while t < n:
        # deterministic pivot selection
        best = None
        for i in range(t, R):
            row = a[i]
            for j in range(t, C):
                x = row[j]
                if x:
                    ax = -x if x < 0 else x
                    if best is None or ax < best[0]:
                        best = (ax, i, j)
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            _swap_rows(a, pi, t)
            _swap_rows(u, pi, t)
            _swap_cols(uinv, pi, t)
        if pj != t:
            _swap_cols(a, pj, t)
            _swap_cols(v, pj, t)
            _swap_rows(vinv, pj, t)
        while True:
            # clear column t below the pivot
            dirty = False
            for i in range(t + 1, R):
                x = a[i][t]
                if x:
                    p = a[t][t]
                    q = x // p
                    row_op(i, t, -q)
                    if a[i][t]:
                        # remainder became the smaller pivot: swap up
                        _swap_rows(a, i, t)
                        _swap_rows(u, i, t)
                        _swap_cols(uinv, i, t)
                        dirty = True
            for j in range(t + 1, C):
                x = a[t][j]
                if x:
                    p = a[t][t]
                    q = x // p
                    col_op(j, t, -q)
                    if a[t][j]:
                        _swap_cols(a, j, t)
                        _swap_cols(v, j, t)
                        _swap_rows(vinv, j, t)
                        dirty = True
            if not dirty:
                # also make the pivot divide the rest of the submatrix
                p = a[t][t]
                off = None
                for i in range(t + 1, R):
                    row = a[i]
                    for j in range(t + 1, C):
                        if row[j] % p:
                            off = i
                            break
                    if off is not None:
                        break
                if off is None:
                    break
                row_op(t, off, 1)
        if a[t][t] < 0:
            for j in range(C):
                a[t][j] = -a[t][j]
            for j in range(R):
                u[t][j] = -u[t][j]
            for i in range(R):
                uinv[i][t] = -uinv[i][t]
        t += 1

    diag = tuple(a[i][i] for i in range(n))
    return SmithForm(IntMatrix(u, R, R), IntMatrix(uinv, R, R),
                     IntMatrix(v, C, C), IntMatrix(vinv, C, C), diag, R, C)


def snf_triple(M: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """(U, D, V) with U*M*V = D, for callers that only need the classic triple."""
    s = smith_normal_form(M)
    return s.U, s.D, s.V


class ColumnEchelon:
    """Integer column echelon form with a tracked right transform.

    Built from the columns of a matrix A; records V with A*V = E where each
    nonzero column of E has its topmost nonzero entry ("pivot") in a row no
    other column pivots on.  Zero columns of E give a kernel basis of A
    through V.  solve() answers A*x = b exactly over the integers.

    Columns are held sparsely, so this is the workhorse for the large
    cochain-level systems where dense Smith form would be wasteful.
    """

    def __init__(self, columns: Sequence[dict[int, int]], nrows: int):
        self.nrows = nrows
        self.ncols = len(columns)
        cols = [dict(c) for c in columns]
        trans = [{i: 1} for i in range(self.ncols)]
        pivots: dict[int, int] = {}  # row -> column index
        order = list(range(self.ncols))
        for ci in order:
            col = cols[ci]
            while col:
                r = min(col)
                if r not in pivots:
                    pivots[r] = ci
                    break
                pj = pivots[r]
                pcol = cols[pj]
                x, p = col[r], pcol[r]
                if x % p == 0:
                    q = x // p
                    _sparse_addmul(col, pcol, -q)
                    _sparse_addmul(trans[ci], trans[pj], -q)
                else:
                    g, s, t = _xgcd(p, x)
                    # rotate: pivot col <- s*pcol + t*col ; col <- combo killing row r
                    pq, xq = p // g, x // g
                    new_p = _sparse_combo(pcol, s, col, t)
                    new_c = _sparse_combo(pcol, -xq, col, pq)
                    cols[pj], cols[ci] = new_p, new_c
                    tp = _sparse_combo(trans[pj], s, trans[ci], t)
                    tc = _sparse_combo(trans[pj], -xq, trans[ci], pq)
                    trans[pj], trans[ci] = tp, tc
                    col = cols[ci]
        self._cols = cols
        self._trans = trans
        self._pivots = pivots

    @staticmethod
    def from_matrix(A: IntMatrix) -> "ColumnEchelon":
        cols = [dict() for _ in range(A.cols)]
        for i, j, x in A.nonzero():
            cols[j][i] = x
        return ColumnEchelon(cols, A.rows)

    def kernel_basis(self) -> list[tuple[int, ...]]:
        """Basis of the integer kernel lattice, as coordinate vectors."""
        out = []
        for ci in range(self.ncols):
            if not self._cols[ci]:
                t = self._trans[ci]
                out.append(tuple(t.get(i, 0) for i in range(self.ncols)))
        return out

    def solve(self, b: Sequence[int]) -> tuple[int, ...] | None:
        """One integer solution x of A*x = b, or None if there is none."""
        rem = {i: x for i, x in enumerate(b) if x}
        coeff: dict[int, int] = {}
        while rem:
            r = min(rem)
            pj = self._pivots.get(r)
            if pj is None:
                return None
            p = self._cols[pj][r]
            x = rem[r]
            if x % p:
                return None
            q = x // p
            _sparse_addmul(rem, self._cols[pj], -q)
            coeff[pj] = coeff.get(pj, 0) + q
        x = [0] * self.ncols
        for pj, c in coeff.items():
            for i, t in self._trans[pj].items():
                x[i] += c * t
        return tuple(x)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """g, s, t with s*a + t*b = g = gcd(a, b), g > 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _sparse_addmul(dst: dict[int, int], src: dict[int, int], c: int):
    if not c:
        return
    for i, x in src.items():
        y = dst.get(i, 0) + c * x
        if y:
            dst[i] = y
        else:
            dst.pop(i, None)


def _sparse_combo(a: dict[int, int], ca: int, b: dict[int, int], cb: int) -> dict[int, int]:
    out: dict[int, int] = {}
    if ca:
        for i, x in a.items():
            out[i] = ca * x
    if cb:
        for i, x in b.items():
            y = out.get(i, 0) + cb * x
            if y:
                out[i] = y
            else:
                out.pop(i, None)
    return out


def kernel_basis(A: IntMatrix) -> list[tuple[int, ...]]:
    return ColumnEchelon.from_matrix(A).kernel_basis()


def solve(A: IntMatrix, b: Sequence[int]) -> tuple[int, ...] | None:
    return ColumnEchelon.from_matrix(A).solve(b)


def gcd_of_minors(M: IntMatrix, k: int) -> int:
    """gcd of all k x k minors; independent oracle for Smith invariants."""
    from itertools import combinations

    if k == 0:
        return 1
    g = 0
    rows = list(range(M.rows))
    cols = list(range(M.cols))
    for rs in combinations(rows, k):
        for cs in combinations(cols, k):
            g = gcd(g, _det([[M.data[i][j] for j in cs] for i in rs]))
    return abs(g)


def _det(m: list[list[int]]) -> int:
    """Fraction-free Gaussian determinant (Bareiss) for small matrices."""
    n = len(m)
    if n == 0:
        return 1
    m = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]
