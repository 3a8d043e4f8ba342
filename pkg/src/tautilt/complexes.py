"""Complexes of projective modules in the homotopy category ``K^b(proj A)``.

A complex stores, for each degree, the list of vertex indices of its
indecomposable projective terms and, for each degree ``k``, the differential
``C^k -> C^(k+1)`` as a matrix over ``A`` whose rows are indexed by the terms
of ``C^(k+1)`` and columns by the terms of ``C^k``.  The entry in row ``r``,
column ``c`` lies in ``Hom(P_a, P_b) = e_b A e_a``; composition of maps is
matrix multiplication in the natural order (``g o f`` is ``G @ F``).

Shift convention: ``X[1]^k = X^(k+1)`` with differential ``-d``.  Signs never
affect the Hom spaces computed here, so shifted differentials are stored
unsigned and only cones carry the ``-d`` block.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebra import BoundQuiverAlgebra
from .exact import ONE, ZERO, Echelon, sparse_axpy, sparse_kernel

Matrix = list  # list[list[dict]]


def zero_matrix(rows: int, cols: int) -> Matrix:
    return [[{} for _ in range(cols)] for _ in range(rows)]


def mat_mul(alg: BoundQuiverAlgebra, g: Matrix, f: Matrix, inner: int | None = None) -> Matrix:
    """Composite ``g o f`` of maps between sums of projectives."""
    rows = len(g)
    k = inner if inner is not None else (len(f))
    cols = len(f[0]) if f else 0
    out = zero_matrix(rows, cols)
    for r in range(rows):
        grow = g[r]
        for s in range(k):
            gs = grow[s]
            if not gs:
                continue
            fs = f[s]
            for c in range(cols):
                if fs[c]:
                    sparse_axpy(out[r][c], ONE, alg.mul(gs, fs[c]))
    return out


def mat_add(a: Matrix, b: Matrix, scale=ONE) -> Matrix:
    out = [[dict(x) for x in row] for row in a]
    for r, row in enumerate(b):
        for c, x in enumerate(row):
            if x:
                sparse_axpy(out[r][c], scale, x)
    return out


def mat_is_zero(m: Matrix) -> bool:
    return all(not x for row in m for x in row)


class Complex:
    """A bounded complex of projectives (general length); used for cones."""

    def __init__(self, terms: dict[int, Sequence[int]], diffs: dict[int, Matrix]):
        self.terms = {k: list(v) for k, v in terms.items() if len(v)}
        self.diffs = {}
        for k, m in diffs.items():
            if self.terms.get(k) and self.terms.get(k + 1):
                self.diffs[k] = [[dict(x) for x in row] for row in m]

    def diff(self, k: int) -> Matrix:
        m = self.diffs.get(k)
        if m is None:
            return zero_matrix(len(self.terms.get(k + 1, ())), len(self.terms.get(k, ())))
        return m

    def degrees(self) -> list[int]:
        return sorted(self.terms)

    def minimize(self, alg: BoundQuiverAlgebra) -> "Complex":
        """Remove contractible summands ``P --unit--> P`` by Gaussian elimination."""
        terms = {k: list(v) for k, v in self.terms.items()}
        diffs = {k: [[dict(x) for x in row] for row in self.diff(k)] for k in terms if k + 1 in terms}
        while True:
            hit = _find_unit(terms, diffs)
            if hit is None:
                break
            k, r, c = hit
            _eliminate(alg, terms, diffs, k, r, c)
        return Complex(terms, diffs)


def _find_unit(terms, diffs):
    for k in sorted(diffs):
        m = diffs[k]
        src = terms[k]
        tgt = terms[k + 1]
        for r, row in enumerate(m):
            for c, x in enumerate(row):
                if x and src[c] == tgt[r] and x.get(src[c]):
                    return k, r, c
    return None


def _eliminate(alg, terms, diffs, k, r, c):
    """Gaussian elimination of the unit entry ``(r, c)`` of ``d^k``."""
    d = diffs[k]
    v = terms[k][c]
    uinv = alg.inverse_local(d[r][c], v)
    rows_keep = [i for i in range(len(d)) if i != r]
    cols_keep = [j for j in range(len(d[0])) if j != c]
    b_row = d[r]
    new = []
    for i in rows_keep:
        col_entry = d[i][c]
        left = alg.mul(col_entry, uinv) if col_entry else {}
        row = []
        for j in cols_keep:
            x = dict(d[i][j])
            if left and b_row[j]:
                sparse_axpy(x, -ONE, alg.mul(left, b_row[j]))
            row.append(x)
        new.append(row)
    diffs[k] = new
    if k - 1 in diffs:
        diffs[k - 1] = [row for i, row in enumerate(diffs[k - 1]) if i != c]
    if k + 1 in diffs:
        diffs[k + 1] = [[x for j, x in enumerate(row) if j != r] for row in diffs[k + 1]]
    del terms[k][c]
    del terms[k + 1][r]
    for deg in (k, k + 1):
        if not terms[deg]:
            del terms[deg]
            diffs.pop(deg, None)
            diffs.pop(deg - 1, None)


class NotMinimal(ValueError):
    pass


class MutationFailed(RuntimeError):
    pass


@dataclass(eq=False)
class TwoTermComplex:
    """``P^-1 --d--> P^0``; ``p1``/``p0`` list the vertex indices of the terms."""

    p1: tuple[int, ...]
    p0: tuple[int, ...]
    d: Matrix = field(default_factory=list)

    def __post_init__(self):
        self.p1 = tuple(self.p1)
        self.p0 = tuple(self.p0)
        if not self.d or len(self.d) != len(self.p0):
            if self.d and self.p0:
                raise ValueError("differential has the wrong number of rows")
            self.d = self.d if self.d else zero_matrix(len(self.p0), len(self.p1))
        if any(len(row) != len(self.p1) for row in self.d):
            raise ValueError("differential has the wrong number of columns")

    @classmethod
    def stalk(cls, vertices: Sequence[int]) -> "TwoTermComplex":
        """``0 -> P`` with ``P = sum of P_i``."""
        return cls((), tuple(vertices), zero_matrix(len(vertices), 0))

    @classmethod
    def shifted(cls, vertices: Sequence[int]) -> "TwoTermComplex":
        """``P -> 0``, i.e. ``P[1]``."""
        return cls(tuple(vertices), (), [])

    @classmethod
    def from_complex(cls, c: Complex) -> "TwoTermComplex":
        if any(k not in (-1, 0) for k in c.terms):
            raise ValueError(f"complex has terms in degrees {c.degrees()}")
        p1 = tuple(c.terms.get(-1, ()))
        p0 = tuple(c.terms.get(0, ()))
        return cls(p1, p0, c.diff(-1) if p1 and p0 else zero_matrix(len(p0), len(p1)))

    def to_complex(self) -> Complex:
        return Complex({-1: self.p1, 0: self.p0}, {-1: self.d})

    def is_zero(self) -> bool:
        return not self.p1 and not self.p0

    def is_minimal(self, alg: BoundQuiverAlgebra) -> bool:
        return all(alg.is_radical(x) for row in self.d for x in row)

    def minimize(self, alg: BoundQuiverAlgebra) -> "TwoTermComplex":
        return TwoTermComplex.from_complex(self.to_complex().minimize(alg))

    def g_vector(self, n: int) -> tuple[int, ...]:
        g = [0] * n
        for v in self.p0:
            g[v] += 1
        for v in self.p1:
            g[v] -= 1
        return tuple(g)

    def direct_sum(self, other: "TwoTermComplex") -> "TwoTermComplex":
        return direct_sum([self, other])

    def describe(self, alg: BoundQuiverAlgebra) -> str:
        labels = alg.quiver.vertices

        def side(vs):
            if not vs:
                return "0"
            return "+".join(f"P{labels[v]}" for v in vs)

        text = f"{side(self.p1)} -> {side(self.p0)}"
        if self.p1 and self.p0:
            entries = "; ".join(",".join(alg.element_str(x) for x in row) for row in self.d)
            text += f" [{entries}]"
        return text

    def to_json(self, alg: BoundQuiverAlgebra) -> dict:
        from .exact import q_str

        return {
            "deg_minus1": [alg.quiver.vertices[v] for v in self.p1],
            "deg0": [alg.quiver.vertices[v] for v in self.p0],
            "differential": [
                [{alg.path_label(b): q_str(c) for b, c in sorted(x.items())} for x in row] for row in self.d
            ],
        }


def direct_sum(parts: Sequence[TwoTermComplex]) -> TwoTermComplex:
    p1 = tuple(v for x in parts for v in x.p1)
    p0 = tuple(v for x in parts for v in x.p0)
    d = zero_matrix(len(p0), len(p1))
    r0 = c0 = 0
    for x in parts:
        for r, row in enumerate(x.d):
            for c, e in enumerate(row):
                if e:
                    d[r0 + r][c0 + c] = dict(e)
        r0 += len(x.p0)
        c0 += len(x.p1)
    return TwoTermComplex(p1, p0, d)


def g_vector(x: TwoTermComplex, n: int) -> tuple[int, ...]:
    return x.g_vector(n)


def minimize(alg: BoundQuiverAlgebra, x: TwoTermComplex) -> TwoTermComplex:
    return x.minimize(alg)


# ---------------------------------------------------------------------------
# Hom spaces between sums of projectives


class Layout:
    """Coordinates on ``Hom(sum P_src[c], sum P_tgt[r])`` (matrices over ``A``)."""

    def __init__(self, alg: BoundQuiverAlgebra, src: Sequence[int], tgt: Sequence[int]):
        self.alg = alg
        self.src = tuple(src)
        self.tgt = tuple(tgt)
        self.pos: dict[tuple[int, int], dict[int, int]] = {}
        self.coords: list[tuple[int, int, int]] = []
        for r, b in enumerate(self.tgt):
            for c, a in enumerate(self.src):
                block = {}
                for beta in alg.hom_space(a, b):
                    block[beta] = len(self.coords)
                    self.coords.append((r, c, beta))
                self.pos[(r, c)] = block

    @property
    def dim(self) -> int:
        return len(self.coords)

    def to_vec(self, m: Matrix, offset: int = 0) -> dict:
        v = {}
        for r, row in enumerate(m):
            for c, x in enumerate(row):
                if x:
                    block = self.pos[(r, c)]
                    for beta, coef in x.items():
                        v[block[beta] + offset] = coef
        return v

    def to_matrix(self, v: dict, offset: int = 0) -> Matrix:
        m = zero_matrix(len(self.tgt), len(self.src))
        for k, coef in v.items():
            k -= offset
            if 0 <= k < len(self.coords):
                r, c, beta = self.coords[k]
                m[r][c][beta] = coef
        return m


def _left_images(alg, d: Matrix, lin: Layout, lout: Layout, offset: int = 0) -> list[dict]:
    """Images of the basis of ``lin`` under ``h -> d o h``."""
    out = []
    cache: dict = {}  # (r, beta) -> [(r2, product)]; independent of the column
    for r, c, beta in lin.coords:
        prods = cache.get((r, beta))
        if prods is None:
            prods = []
            for r2 in range(len(d)):
                x = d[r2][r]
                if x:
                    prod = alg.mul(x, {beta: ONE})
                    if prod:
                        prods.append((r2, prod))
            cache[(r, beta)] = prods
        img = {}
        for r2, prod in prods:
            block = lout.pos[(r2, c)]
            for b, coef in prod.items():
                k = block[b] + offset
                img[k] = img.get(k, ZERO) + coef
        out.append({k: v for k, v in img.items() if v})
    return out


def _right_images(alg, d: Matrix, lin: Layout, lout: Layout, offset: int = 0) -> list[dict]:
    """Images of the basis of ``lin`` under ``h -> h o d``."""
    out = []
    cache: dict = {}  # (c, beta) -> [(c2, product)]; independent of the row
    for r, c, beta in lin.coords:
        prods = cache.get((c, beta))
        if prods is None:
            prods = []
            row = d[c] if c < len(d) else []
            for c2, x in enumerate(row):
                if x:
                    prod = alg.mul({beta: ONE}, x)
                    if prod:
                        prods.append((c2, prod))
            cache[(c, beta)] = prods
        img = {}
        for c2, prod in prods:
            block = lout.pos[(r, c2)]
            for b, coef in prod.items():
                k = block[b] + offset
                img[k] = img.get(k, ZERO) + coef
        out.append({k: v for k, v in img.items() if v})
    return out


def _add_into(a: dict, b: dict, scale=ONE) -> dict:
    out = dict(a)
    sparse_axpy(out, scale, b)
    return out


@dataclass(eq=False)
class ChainMap:
    """Chain map between two-term complexes: ``(f^-1, f^0)``."""

    f1: Matrix
    f0: Matrix


def compose(alg: BoundQuiverAlgebra, g: ChainMap, f: ChainMap) -> ChainMap:
    return ChainMap(mat_mul(alg, g.f1, f.f1), mat_mul(alg, g.f0, f.f0))


class HomK:
    """``Hom_K(X, Y)`` for two-term complexes: chain maps modulo homotopy.

    ``basis`` holds chain-map representatives of a basis of the quotient;
    :meth:`coords` expresses any chain map in that basis.
    """

    def __init__(self, alg: BoundQuiverAlgebra, x: TwoTermComplex, y: TwoTermComplex):
        self.alg = alg
        self.x = x
        self.y = y
        self.l1 = Layout(alg, x.p1, y.p1)
        self.l0 = Layout(alg, x.p0, y.p0)
        n1 = self.l1.dim
        lc = Layout(alg, x.p1, y.p0)
        # unknowns: f^-1 coordinates then f^0 coordinates
        cols = _left_images(alg, y.d, self.l1, lc) + [
            {k: -v for k, v in img.items()} for img in _right_images(alg, x.d, self.l0, lc)
        ]
        rows: dict[int, dict] = {}
        for j, img in enumerate(cols):
            for i, v in img.items():
                rows.setdefault(i, {})[j] = v
        kernel = sparse_kernel(rows.values(), n1 + self.l0.dim)
        # homotopies s: X^0 -> Y^-1 give (s d_X, d_Y s)
        ls = Layout(alg, x.p0, y.p1)
        hs1 = _right_images(alg, x.d, ls, self.l1)
        hs0 = _left_images(alg, y.d, ls, self.l0, offset=n1)
        homotopies = [_add_into(a, b) for a, b in zip(hs1, hs0)]
        total = n1 + self.l0.dim
        self._tag0 = total
        # representatives independent modulo null-homotopic maps
        ech = Echelon(homotopies)
        self.null_rank = ech.rank
        chosen = []
        for z in kernel:
            if ech.add(z) is not None:
                chosen.append(z)
        self._vecs = chosen
        red = Echelon(homotopies)
        for k, z in enumerate(chosen):
            tagged = dict(z)
            tagged[total + k] = ONE
            red.add(tagged)
        self._reducer = red
        self.basis = [self._to_map(z) for z in chosen]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _to_map(self, v: dict) -> ChainMap:
        n1 = self.l1.dim
        return ChainMap(self.l1.to_matrix(v), self.l0.to_matrix(v, offset=n1))

    def to_vec(self, f: ChainMap) -> dict:
        v = self.l1.to_vec(f.f1)
        v.update(self.l0.to_vec(f.f0, offset=self.l1.dim))
        return v

    def coords(self, f: ChainMap) -> list:
        rem = self._reducer.reduce(self.to_vec(f))
        total = self._tag0
        if any(k < total for k in rem):
            raise ValueError("not a chain map")
        out = [ZERO] * len(self._vecs)
        for k, v in rem.items():
            out[k - total] = -v
        return out

    def is_null(self, f: ChainMap) -> bool:
        return not any(self.coords(f))

    def combine(self, coefs: Sequence) -> ChainMap:
        v: dict = {}
        for c, z in zip(coefs, self._vecs):
            if c:
                sparse_axpy(v, c, z)
        return self._to_map(v)


def hom_shift_dim(alg: BoundQuiverAlgebra, x: TwoTermComplex, y: TwoTermComplex) -> int:
    """``dim Hom_K(X, Y[1])`` for two-term complexes.

    Chain maps ``X -> Y[1]`` are arbitrary maps ``X^-1 -> Y^0``; the
    null-homotopic ones are ``h o d_X + d_Y o h'`` with ``h: X^0 -> Y^0`` and
    ``h': X^-1 -> Y^-1``.  ``Hom_K(X, Y[k])`` vanishes for ``k >= 2`` since the
    degrees of ``X`` and ``Y[k]`` do not overlap.
    """
    lc = Layout(alg, x.p1, y.p0)
    if lc.dim == 0:
        return 0
    ech = Echelon()
    for img in _right_images(alg, x.d, Layout(alg, x.p0, y.p0), lc):
        if ech.add(img) is not None and ech.rank == lc.dim:
            return 0
    for img in _left_images(alg, y.d, Layout(alg, x.p1, y.p1), lc):
        if ech.add(img) is not None and ech.rank == lc.dim:
            return 0
    return lc.dim - ech.rank


def hom_shift_basis(alg: BoundQuiverAlgebra, x: TwoTermComplex, y: TwoTermComplex) -> list[Matrix]:
    """Representatives ``X^-1 -> Y^0`` of a basis of ``Hom_K(X, Y[1])``."""
    lc = Layout(alg, x.p1, y.p0)
    ech = Echelon(_right_images(alg, x.d, Layout(alg, x.p0, y.p0), lc))
    for img in _left_images(alg, y.d, Layout(alg, x.p1, y.p1), lc):
        ech.add(img)
    out = []
    for k in range(lc.dim):
        if ech.add({k: ONE}) is not None:
            out.append(lc.to_matrix({k: ONE}))
    return out


def hom_k(alg: BoundQuiverAlgebra, x: TwoTermComplex, y: TwoTermComplex, shift: int = 0):
    """Basis of ``Hom_K(X, Y[shift])`` for ``shift`` in {0, 1} (2 and up are zero)."""
    if shift == 0:
        return HomK(alg, x, y).basis
    if shift == 1:
        return hom_shift_basis(alg, x, y)
    if shift >= 2:
        return []
    raise ValueError("negative shifts are not supported")
