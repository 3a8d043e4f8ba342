"""Exact rational and integer linear algebra.

Scalars are ``gmpy2.mpq`` values (always in lowest terms with a positive
denominator).  Two matrix shapes are used throughout the package:

* dense matrices, plain ``list[list]`` in row-major order, for the small
  public helpers (:func:`kernel_basis`, :func:`solve`, :func:`smith_normal_form`);
* sparse vectors ``dict[int, mpq]`` (column -> nonzero value) for the large
  linear systems that arise from Hom computations, handled by :class:`Echelon`
  and :func:`sparse_kernel`.

Pivoting is deterministic: the pivot of a reduced vector is its leftmost
nonzero column, so every basis produced here is reproducible.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Iterable, Sequence

import gmpy2

Q = gmpy2.mpq
ZERO = Q(0)
ONE = Q(1)

SparseVec = dict  # dict[int, mpq]


class NotUnimodular(ValueError):
    """Raised when an integer matrix has determinant other than +1 or -1."""


def to_q(x) -> "gmpy2.mpq":
    """Coerce ints, Fractions, mpq and ``"p/q"`` strings to an exact rational."""
    if isinstance(x, str):
        s = x.strip()
        if "/" in s:
            num, den = s.split("/", 1)
            den_v = int(den)
            if den_v == 0:
                raise ZeroDivisionError(f"zero denominator in {x!r}")
            return Q(int(num), den_v)
        return Q(int(s))
    if isinstance(x, Fraction):
        return Q(x.numerator, x.denominator)
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted")
    return Q(x)


def q_str(x) -> str:
    """Serialize a rational as ``"p"`` or ``"p/q"``."""
    x = to_q(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def to_fraction(x) -> Fraction:
    x = to_q(x)
    return Fraction(int(x.numerator), int(x.denominator))


# ---------------------------------------------------------------------------
# sparse vectors


def sparse_axpy(y: SparseVec, a, x: SparseVec) -> None:
    """In place ``y += a * x`` dropping zeros."""
    for k, v in x.items():
        nv = y.get(k, ZERO) + a * v
        if nv:
            y[k] = nv
        else:
            y.pop(k, None)


def sparse_scale(x: SparseVec, a) -> SparseVec:
    if not a:
        return {}
    return {k: a * v for k, v in x.items()}


class Echelon:
    """Incrementally maintained row echelon form of a span of sparse vectors.

    Each stored row is normalized so its pivot (leftmost nonzero column) is 1
    and every other entry lies strictly to the right of the pivot.
    """

    def __init__(self, vectors: Iterable[SparseVec] = ()):
        self.rows: dict[int, SparseVec] = {}
        for v in vectors:
            self.add(v)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: SparseVec) -> SparseVec:
        w = {k: val for k, val in v.items() if val}
        rows = self.rows
        heap = [k for k in w if k in rows]
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap)
            coef = w.get(c)
            if coef is None:
                continue
            row = rows[c]
            del w[c]
            for k, val in row.items():
                if k == c:
                    continue
                nv = w.get(k, ZERO) - coef * val
                if nv:
                    if k not in w and k in rows:
                        heapq.heappush(heap, k)
                    w[k] = nv
                else:
                    w.pop(k, None)
        return w

    def add(self, v: SparseVec) -> SparseVec | None:
        """Add ``v`` to the span; return the new normalized row or ``None``."""
        w = self.reduce(v)
        if not w:
            return None
        p = min(w)
        inv = ONE / w[p]
        if inv != ONE:
            w = {k: val * inv for k, val in w.items()}
        self.rows[p] = w
        return w

    def contains(self, v: SparseVec) -> bool:
        return not self.reduce(v)

    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def rref(self) -> dict[int, SparseVec]:
        """Return fully reduced rows (zero in every other pivot column)."""
        out: dict[int, SparseVec] = {}
        for p in sorted(self.rows, reverse=True):
            row = dict(self.rows[p])
            for c in [k for k in row if k != p and k in out]:
                coef = row.get(c)
                if coef:
                    sparse_axpy(row, -coef, out[c])
            out[p] = row
        return out


def sparse_kernel(rows: Iterable[SparseVec], ncols: int) -> list[SparseVec]:
    """Basis of ``{x : r . x = 0 for every row r}`` in RREF-normalized form.

    One basis vector per free column, in increasing column order; the vector
    for free column ``f`` has a 1 at ``f`` and zeros at the other free columns.
    """
    ech = Echelon(rows)
    red = ech.rref()
    kernel: dict[int, SparseVec] = {f: {f: ONE} for f in range(ncols) if f not in red}
    for p, row in red.items():
        for c, val in row.items():
            if c != p:
                kernel[c][p] = -val
    return [kernel[f] for f in sorted(kernel)]


# ---------------------------------------------------------------------------
# dense rational matrices


def rat_matrix(rows: Sequence[Sequence]) -> list[list]:
    return [[to_q(x) for x in row] for row in rows]


def _dense_rows_to_sparse(m: Sequence[Sequence]) -> list[SparseVec]:
    return [{j: to_q(x) for j, x in enumerate(row) if x} for row in m]


def _ncols(m: Sequence[Sequence], ncols: int | None) -> int:
    if ncols is not None:
        return ncols
    if not m:
        raise ValueError("column count of an empty matrix is ambiguous")
    return len(m[0])


def rank(m: Sequence[Sequence]) -> int:
    return Echelon(_dense_rows_to_sparse(m)).rank


def kernel_basis(m: Sequence[Sequence], ncols: int | None = None) -> list[list]:
    """Right null space basis of a dense rational matrix, as column vectors (lists).

    One vector per free column of the reduced row echelon form, scaled so
    that its first nonzero entry is 1.
    """
    n = _ncols(m, ncols)
    out = []
    for v in sparse_kernel(_dense_rows_to_sparse(m), n):
        lead = v[min(v)]
        out.append([v.get(j, ZERO) / lead for j in range(n)])
    return out


def solve(m: Sequence[Sequence], b: Sequence, ncols: int | None = None):
    """Solve ``m x = b``.

    Returns ``(particular, kernel)`` or ``None`` when the system is
    inconsistent.  The particular solution has zeros in every free column.
    """
    n = _ncols(m, ncols)
    if len(b) != len(m):
        raise ValueError("right-hand side has the wrong length")
    rows = []
    for row, bi in zip(m, b):
        r = {j: to_q(x) for j, x in enumerate(row) if x}
        bq = to_q(bi)
        if bq:
            r[n] = bq
        rows.append(r)
    red = Echelon(rows).rref()
    if n in red:
        return None
    x = [ZERO] * n
    for p, row in red.items():
        x[p] = row.get(n, ZERO)
    return x, kernel_basis(m, n)


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum((a[i][k] * b[k][j] for k in range(inner)), 0) for j in range(cols)] for i in range(len(a))]


def identity(n: int, one=1) -> list[list]:
    return [[one if i == j else 0 * one for j in range(n)] for i in range(n)]


def transpose(m: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*m)]


def det(m: Sequence[Sequence]):
    """Exact determinant by fraction Gaussian elimination."""
    n = len(m)
    a = [[to_q(x) for x in row] for row in m]
    sign = 1
    result = ONE
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return ZERO
        if p != c:
            a[c], a[p] = a[p], a[c]
            sign = -sign
        piv = a[c][c]
        result *= piv
        for r in range(c + 1, n):
            f = a[r][c] / piv
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return result * sign


def rat_inverse(m: Sequence[Sequence]) -> list[list]:
    n = len(m)
    a = [[to_q(x) for x in row] + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            raise ZeroDivisionError("matrix is singular")
        a[c], a[p] = a[p], a[c]
        inv = ONE / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def int_det(m: Sequence[Sequence[int]]) -> int:
    return int(det(m))


def int_inverse(m: Sequence[Sequence[int]]) -> list[list[int]]:
    """Inverse of a unimodular integer matrix; raises :class:`NotUnimodular`."""
    if len(m) == 0:
        return []
    if any(len(row) != len(m) for row in m):
        raise NotUnimodular("matrix is not square")
    d = det(m)
    if d not in (1, -1):
        raise NotUnimodular(f"determinant is {d}")
    return [[int(x) for x in row] for row in rat_inverse(m)]


# ---------------------------------------------------------------------------
# Smith normal form


def smith_normal_form(m: Sequence[Sequence[int]]):
    """Return ``(U, D, V)`` with ``U @ m @ V == D``.

    ``U`` and ``V`` are unimodular, ``D`` is diagonal with nonnegative entries
    and each diagonal entry divides the next.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    d = [[int(x) for x in row] for row in m]
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):
        # row_dst += f * row_src
        d[dst] = [a + f * b for a, b in zip(d[dst], d[src])]
        u[dst] = [a + f * b for a, b in zip(u[dst], u[src])]

    def add_col(dst, src, f):
        for row in d:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if d[i][j] and (best is None or abs(d[i][j]) < abs(d[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            piv = d[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if d[i][t]:
                    add_row(i, t, -(d[i][t] // piv))
                    dirty = dirty or d[i][t] != 0
            for j in range(t + 1, cols):
                if d[t][j]:
                    add_col(j, t, -(d[t][j] // piv))
                    dirty = dirty or d[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if d[i][j] % piv),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return u, d, v


def smith_diagonal(m: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors of ``m``."""
    if not m or not m[0]:
        return []
    _, d, _ = smith_normal_form(m)
    return [d[i][i] for i in range(min(len(d), len(d[0]))) if d[i][i]]


class SpanCoordinates:
    """Coordinates of vectors with respect to a fixed linearly independent list.

    Each basis vector is tagged with an extra column beyond ``width``; after
    reducing an untagged vector, the tag columns of the remainder carry the
    negated coordinates.
    """

    def __init__(self, basis: Sequence[SparseVec], width: int):
        self.width = width
        self.size = len(basis)
        self._ech = Echelon()
        for t, v in enumerate(basis):
            tagged = dict(v)
            tagged[width + t] = ONE
            self._ech.add(tagged)
        # a dependent basis shows up as a row without real pivot
        if any(p >= width for p in self._ech.rows):
            raise ValueError("basis vectors are linearly dependent")

    def coords(self, v: SparseVec, strict: bool = True) -> list:
        rem = self._ech.reduce(v)
        if strict and any(k < self.width for k in rem):
            raise ValueError("vector is not in the span")
        out = [ZERO] * self.size
        for k, val in rem.items():
            if k >= self.width:
                out[k - self.width] = -val
        return out

    def contains(self, v: SparseVec) -> bool:
        return all(k >= self.width for k in self._ech.reduce(v))
