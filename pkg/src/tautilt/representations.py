"""Finite dimensional right ``A``-modules as quiver representations.

A right module ``M`` has vertex spaces ``M e_i``.  An arrow ``a: i -> j`` acts
by ``m -> m a``, a linear map ``M e_i -> M e_j`` stored as a
``dim M e_i x dim M e_j`` matrix acting on row vectors.  A path
``a_1 a_2 ... a_k`` therefore acts by the product of the arrow matrices in
the same left-to-right order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebra import BoundQuiverAlgebra
from .complexes import TwoTermComplex, zero_matrix
from .endo import count_simple_components
from .exact import ONE, ZERO, Echelon, SpanCoordinates, sparse_kernel, to_q


class NotMinimalComplex(ValueError):
    pass


def _mat(rows: int, cols: int) -> list[list]:
    return [[ZERO] * cols for _ in range(rows)]


def _matmul(a, b, inner):
    cols = len(b[0]) if b else 0
    out = _mat(len(a), cols)
    for i, row in enumerate(a):
        for k in range(inner):
            x = row[k]
            if x:
                bk = b[k]
                orow = out[i]
                for j in range(cols):
                    if bk[j]:
                        orow[j] += x * bk[j]
    return out


def _row_times(v: dict, m: list[list]) -> dict:
    out: dict = {}
    for i, x in v.items():
        for j, y in enumerate(m[i]):
            if y:
                out[j] = out.get(j, ZERO) + x * y
    return {j: y for j, y in out.items() if y}


@dataclass(eq=False)
class Representation:
    alg: BoundQuiverAlgebra
    dims: tuple[int, ...]
    maps: list = field(default_factory=list)  # per arrow, dims[s] x dims[t]

    def __post_init__(self):
        self.dims = tuple(self.dims)
        q = self.alg.quiver
        if not self.maps:
            self.maps = []
            for a in q.arrows:
                s, t = q.vertex_index(a.source), q.vertex_index(a.target)
                self.maps.append(_mat(self.dims[s], self.dims[t]))
        self.maps = [[[to_q(x) for x in row] for row in m] for m in self.maps]

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.dim == 0

    def arrow_ends(self, k: int) -> tuple[int, int]:
        a = self.alg.quiver.arrows[k]
        q = self.alg.quiver
        return q.vertex_index(a.source), q.vertex_index(a.target)

    def path_action(self, b: int) -> list[list]:
        """Matrix of the basis path ``b`` acting ``M e_s -> M e_t``."""
        s, arrows = self.alg.basis[b]
        m = [[ONE if i == j else ZERO for j in range(self.dims[s])] for i in range(self.dims[s])]
        cur = s
        for k in arrows:
            _, t = self.arrow_ends(k)
            m = _matmul(m, self.maps[k], self.dims[cur])
            cur = t
        return m

    def satisfies_relations(self) -> bool:
        q = self.alg.quiver
        for rel in self.alg.relations:
            total = None
            for c, path in rel.terms:
                idx = [q.arrow_index(p) for p in path]
                s = self.arrow_ends(idx[0])[0]
                m = [[ONE if i == j else ZERO for j in range(self.dims[s])] for i in range(self.dims[s])]
                cur = s
                for k in idx:
                    m = _matmul(m, self.maps[k], self.dims[cur])
                    cur = self.arrow_ends(k)[1]
                m = [[c * x for x in row] for row in m]
                total = m if total is None else [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(total, m)]
            if total and any(x for row in total for x in row):
                return False
        return True

    def dimension_vector(self) -> tuple[int, ...]:
        return self.dims


def zero_rep(alg: BoundQuiverAlgebra) -> Representation:
    return Representation(alg, (0,) * alg.n)


def simple(alg: BoundQuiverAlgebra, i: int) -> Representation:
    return Representation(alg, tuple(int(j == i) for j in range(alg.n)))


def projective(alg: BoundQuiverAlgebra, i: int) -> Representation:
    """``P_i = e_i A``: vertex ``t`` has basis the paths from ``i`` to ``t``."""
    q = alg.quiver
    bases = [alg.paths_between(i, t) for t in range(alg.n)]
    maps = []
    for k, a in enumerate(q.arrows):
        s, t = q.vertex_index(a.source), q.vertex_index(a.target)
        arrow_b = _arrow_basis(alg, k)
        m = _mat(len(bases[s]), len(bases[t]))
        pos = {b: j for j, b in enumerate(bases[t])}
        for r, p in enumerate(bases[s]):
            for b, c in alg.mul({p: ONE}, {arrow_b: ONE}).items():
                m[r][pos[b]] = c
        maps.append(m)
    return Representation(alg, tuple(len(b) for b in bases), maps)


def injective(alg: BoundQuiverAlgebra, i: int) -> Representation:
    """``I_i = D(A e_i)``: vertex ``t`` is dual to the paths from ``t`` to ``i``."""
    q = alg.quiver
    bases = [alg.paths_between(t, i) for t in range(alg.n)]
    maps = []
    for k, a in enumerate(q.arrows):
        s, t = q.vertex_index(a.source), q.vertex_index(a.target)
        arrow_b = _arrow_basis(alg, k)
        # (phi . a)(x) = phi(a x) for x in e_t A e_i
        m = _mat(len(bases[s]), len(bases[t]))
        pos = {b: l for l, b in enumerate(bases[s])}
        for col, x in enumerate(bases[t]):
            for b, c in alg.mul({arrow_b: ONE}, {x: ONE}).items():
                m[pos[b]][col] = c
        maps.append(m)
    return Representation(alg, tuple(len(b) for b in bases), maps)


def _arrow_basis(alg: BoundQuiverAlgebra, k: int) -> int:
    for b, (s, arrows) in enumerate(alg.basis):
        if arrows == (k,):
            return b
    raise KeyError(k)


def direct_sum(reps: Sequence[Representation]) -> Representation:
    reps = list(reps)
    alg = reps[0].alg
    dims = tuple(sum(r.dims[v] for r in reps) for v in range(alg.n))
    maps = []
    for k in range(len(alg.quiver.arrows)):
        s, t = reps[0].arrow_ends(k)
        m = _mat(dims[s], dims[t])
        r0 = c0 = 0
        for r in reps:
            for i, row in enumerate(r.maps[k]):
                for j, x in enumerate(row):
                    m[r0 + i][c0 + j] = x
            r0 += r.dims[s]
            c0 += r.dims[t]
        maps.append(m)
    return Representation(alg, dims, maps)


# ---------------------------------------------------------------------------
# Hom spaces


@dataclass(eq=False)
class RepHom:
    """A module homomorphism: one matrix per vertex (row-vector convention)."""

    parts: list  # parts[v] is dims_M[v] x dims_N[v]

    def is_zero(self) -> bool:
        return all(not x for m in self.parts for row in m for x in row)


def _hom_layout(m: Representation, n: Representation):
    offsets = []
    total = 0
    for v in range(m.alg.n):
        offsets.append(total)
        total += m.dims[v] * n.dims[v]
    return offsets, total


def hom_vec(m: Representation, n: Representation, f: RepHom) -> dict:
    offsets, _ = _hom_layout(m, n)
    out = {}
    for v in range(m.alg.n):
        for i, row in enumerate(f.parts[v]):
            for j, x in enumerate(row):
                if x:
                    out[offsets[v] + i * n.dims[v] + j] = x
    return out


def _vec_hom(m: Representation, n: Representation, vec: dict) -> RepHom:
    offsets, _ = _hom_layout(m, n)
    parts = []
    for v in range(m.alg.n):
        mat = _mat(m.dims[v], n.dims[v])
        for i in range(m.dims[v]):
            for j in range(n.dims[v]):
                x = vec.get(offsets[v] + i * n.dims[v] + j)
                if x:
                    mat[i][j] = x
        parts.append(mat)
    return RepHom(parts)


def hom_rep(m: Representation, n: Representation) -> list[RepHom]:
    """Basis of ``Hom_A(M, N)``: vertex maps commuting with every arrow."""
    offsets, total = _hom_layout(m, n)
    rows = []
    for k in range(len(m.alg.quiver.arrows)):
        s, t = m.arrow_ends(k)
        am, bn = m.maps[k], n.maps[k]
        # (A_a phi_t - phi_s B_a)[i][j] = 0
        for i in range(m.dims[s]):
            for j in range(n.dims[t]):
                r: dict = {}
                for l in range(m.dims[t]):
                    x = am[i][l]
                    if x:
                        key = offsets[t] + l * n.dims[t] + j
                        r[key] = r.get(key, ZERO) + x
                for l in range(n.dims[s]):
                    x = bn[l][j]
                    if x:
                        key = offsets[s] + i * n.dims[s] + l
                        r[key] = r.get(key, ZERO) - x
                r = {a: b for a, b in r.items() if b}
                if r:
                    rows.append(r)
    return [_vec_hom(m, n, v) for v in sparse_kernel(rows, total)]


def compose_hom(m: Representation, f: RepHom, g: RepHom) -> RepHom:
    """``g o f`` for ``f: M -> N`` and ``g: N -> L``."""
    parts = []
    for v in range(m.alg.n):
        inner = len(g.parts[v])
        parts.append(_matmul(f.parts[v], g.parts[v], inner) if f.parts[v] else [])
    return RepHom(parts)


def identity_hom(m: Representation) -> RepHom:
    return RepHom([[[ONE if i == j else ZERO for j in range(d)] for i in range(d)] for d in m.dims])


def end_structure(m: Representation) -> list:
    basis = hom_rep(m, m)
    _, total = _hom_layout(m, m)
    coords = SpanCoordinates([hom_vec(m, m, f) for f in basis], total)
    return [[coords.coords(hom_vec(m, m, compose_hom(m, b, a))) for b in basis] for a in basis]


def count_indec_summands(m: Representation, seed: int = 0) -> int:
    """Number of pairwise non-isomorphic indecomposable direct summands ``|M|``."""
    if m.is_zero():
        return 0
    return count_simple_components(end_structure(m), seed=seed)


# ---------------------------------------------------------------------------
# sub- and quotient modules


def _subrep(m: Representation, spaces: list[list[dict]]) -> Representation:
    """Subrepresentation spanned per vertex by ``spaces`` (assumed closed)."""
    maps = []
    coords = [SpanCoordinates(sp, m.dims[v]) for v, sp in enumerate(spaces)]
    for k in range(len(m.alg.quiver.arrows)):
        s, t = m.arrow_ends(k)
        mat = []
        for vec in spaces[s]:
            img = _row_times(vec, m.maps[k])
            mat.append(coords[t].coords(img))
        maps.append(mat if mat else _mat(0, len(spaces[t])))
    return Representation(m.alg, tuple(len(sp) for sp in spaces), maps)


def _quotient(m: Representation, spaces: list[list[dict]]) -> Representation:
    """``M / U`` for a subrepresentation ``U`` spanned per vertex by ``spaces``."""
    echs = [Echelon(sp) for sp in spaces]
    keep = [[c for c in range(m.dims[v]) if c not in echs[v].rows] for v in range(m.alg.n)]
    pos = [{c: i for i, c in enumerate(kp)} for kp in keep]
    maps = []
    for k in range(len(m.alg.quiver.arrows)):
        s, t = m.arrow_ends(k)
        mat = _mat(len(keep[s]), len(keep[t]))
        for i, c in enumerate(keep[s]):
            img = echs[t].reduce({j: x for j, x in enumerate(m.maps[k][c]) if x})
            for j, x in img.items():
                mat[i][pos[t][j]] = x
        maps.append(mat)
    return Representation(m.alg, tuple(len(kp) for kp in keep), maps)


def radical_spaces(m: Representation) -> list[list[dict]]:
    """Per vertex, a spanning set of ``(M rad A) e_v``: images of the arrows."""
    out = [[] for _ in range(m.alg.n)]
    for k in range(len(m.alg.quiver.arrows)):
        s, t = m.arrow_ends(k)
        for row in m.maps[k]:
            v = {j: x for j, x in enumerate(row) if x}
            if v:
                out[t].append(v)
    return out


def top_generators(m: Representation) -> list[tuple[int, dict]]:
    """``(vertex, vector)`` pairs whose classes form a basis of ``top M``."""
    gens = []
    for v, sp in enumerate(radical_spaces(m)):
        ech = Echelon(sp)
        for c in range(m.dims[v]):
            if ech.add({c: ONE}) is not None:
                gens.append((v, {c: ONE}))
    return gens


def _element_action(m: Representation, vec: dict, b: int) -> dict:
    return _row_times(vec, m.path_action(b))


def _projective_cover(m: Representation, gens: list[tuple[int, dict]]):
    """Surjection ``sum P_{v_j} -> M`` sending ``e_{v_j}`` to generator ``j``.

    Returns the vertex spaces of the map: for each vertex ``s`` the list of
    images (in ``M e_s``) of the basis paths of the cover at ``s``, and the
    block structure ``(j, path)``.
    """
    alg = m.alg
    images = [[] for _ in range(alg.n)]
    labels = [[] for _ in range(alg.n)]
    for j, (v, g) in enumerate(gens):
        for s in range(alg.n):
            for b in alg.paths_between(v, s):
                images[s].append(_element_action(m, g, b))
                labels[s].append((j, b))
    return images, labels


def min_projective_presentation(m: Representation) -> TwoTermComplex:
    """Minimal projective presentation ``P1 -> P0 -> M -> 0`` as a two-term complex."""
    alg = m.alg
    gens = top_generators(m)
    p0 = tuple(v for v, _ in gens)
    images, labels = _projective_cover(m, gens)
    cover = direct_sum([_proj_cached(alg, v) for v in p0]) if p0 else zero_rep(alg)
    # kernel of the cover map at each vertex (row vectors x with x . pi = 0)
    kernel = []
    for s in range(alg.n):
        rows = []
        for c in range(m.dims[s]):
            r = {i: img[c] for i, img in enumerate(images[s]) if img.get(c)}
            if r:
                rows.append(r)
        kernel.append(sparse_kernel(rows, len(images[s])))
    k = _subrep(cover, kernel)
    kgens = top_generators(k)
    p1 = tuple(v for v, _ in kgens)
    d = zero_matrix(len(p0), len(p1))
    for c, (v, g) in enumerate(kgens):
        # vector of P0 e_v in cover coordinates
        vec = {}
        for i, x in g.items():
            for idx, y in kernel[v][i].items():
                vec[idx] = vec.get(idx, ZERO) + x * y
        for idx, x in vec.items():
            if x:
                j, b = labels[v][idx]
                d[j][c][b] = x
    return TwoTermComplex(p1, p0, d)


_PROJ: dict = {}


def _proj_cached(alg, v):
    key = (id(alg), v)
    if key not in _PROJ:
        _PROJ[key] = projective(alg, v)
    return _PROJ[key]


def cokernel(alg: BoundQuiverAlgebra, c: TwoTermComplex) -> Representation:
    """``H^0`` of a two-term complex: the cokernel of ``P^-1 -> P^0``."""
    if not c.p0:
        return zero_rep(alg)
    cover = direct_sum([_proj_cached(alg, v) for v in c.p0])
    # cover coordinates at vertex s: blocks j over paths_between(p0[j], s)
    offsets = []
    for s in range(alg.n):
        off, acc = [], 0
        for v in c.p0:
            off.append(acc)
            acc += len(alg.paths_between(v, s))
        offsets.append(off)
    spaces = [[] for _ in range(alg.n)]
    for col, u in enumerate(c.p1):
        for s in range(alg.n):
            for q in alg.paths_between(u, s):
                vec = {}
                for j, v in enumerate(c.p0):
                    entry = c.d[j][col]
                    if not entry:
                        continue
                    prod = alg.mul(entry, {q: ONE})
                    block = alg.paths_between(v, s)
                    for b, x in prod.items():
                        vec[offsets[s][j] + block.index(b)] = x
                if vec:
                    spaces[s].append(vec)
    return _quotient(cover, spaces)


def nakayama_kernel(alg: BoundQuiverAlgebra, c: TwoTermComplex) -> Representation:
    """Kernel of ``nu P^-1 -> nu P^0`` where ``nu = D Hom_A(-, A)``."""
    if not c.p1:
        return zero_rep(alg)
    source = direct_sum([injective(alg, v) for v in c.p1])
    spaces = []
    for t in range(alg.n):
        # columns: (r, k) over x_k in e_t A e_{p0[r]}; rows: (c, l) over y_l in e_t A e_{p1[c]}
        row_index = []
        for col, u in enumerate(c.p1):
            for l, y in enumerate(alg.paths_between(t, u)):
                row_index.append((col, y))
        pos = {key: i for i, key in enumerate(row_index)}
        eqs = []
        for r, v in enumerate(c.p0):
            for x in alg.paths_between(t, v):
                eq = {}
                for col, u in enumerate(c.p1):
                    entry = c.d[r][col]
                    if not entry:
                        continue
                    for b, val in alg.mul({x: ONE}, entry).items():
                        eq[pos[(col, b)]] = eq.get(pos[(col, b)], ZERO) + val
                eq = {a: b for a, b in eq.items() if b}
                if eq:
                    eqs.append(eq)
        spaces.append(sparse_kernel(eqs, len(row_index)))
    return _subrep(source, spaces)


def tau(m: Representation) -> Representation:
    """Auslander-Reiten translate via the Nakayama functor on a minimal presentation."""
    if m.is_zero():
        return zero_rep(m.alg)
    return nakayama_kernel(m.alg, min_projective_presentation(m))


# ---------------------------------------------------------------------------
# tau-rigidity and Fac


@dataclass(eq=False)
class TauRigidResult:
    ok: bool
    witness: str = ""
    certificate: RepHom | None = None

    def __bool__(self):
        return self.ok


def is_tau_rigid_pair(m: Representation, support: Sequence[int] = ()) -> TauRigidResult:
    """``Hom(M, tau M) = 0`` and ``Hom(P, M) = 0`` for ``P = sum P_i, i in support``."""
    alg = m.alg
    for i in sorted(set(support)):
        if m.dims[i]:
            h = hom_rep(_proj_cached(alg, i), m)
            return TauRigidResult(False, f"Hom(P{alg.quiver.vertices[i]}, M) != 0", h[0])
    if m.is_zero():
        return TauRigidResult(True)
    tm = tau(m)
    if tm.is_zero():
        return TauRigidResult(True)
    h = hom_rep(m, tm)
    if h:
        return TauRigidResult(False, "Hom(M, tau M) != 0", h[0])
    return TauRigidResult(True)


def trace_spaces(m: Representation, n: Representation) -> list[Echelon]:
    """Per vertex, the span of all images of homomorphisms ``M -> N``."""
    echs = [Echelon() for _ in range(n.alg.n)]
    for f in hom_rep(m, n):
        for v in range(n.alg.n):
            for row in f.parts[v]:
                vec = {j: x for j, x in enumerate(row) if x}
                if vec:
                    echs[v].add(vec)
    return echs


def fac_contains(m: Representation, n: Representation) -> bool:
    """``N`` in ``Fac M``: the trace of ``M`` in ``N`` is all of ``N``."""
    if n.is_zero():
        return True
    echs = trace_spaces(m, n)
    return all(echs[v].rank == n.dims[v] for v in range(n.alg.n))


# ---------------------------------------------------------------------------
# bridge from two-term complexes


@dataclass(eq=False)
class TauRigidPair:
    module: Representation
    support: tuple[int, ...]


def h0_pair(alg: BoundQuiverAlgebra, summands: Sequence[TwoTermComplex]) -> TauRigidPair:
    """Pair ``(H^0 C, P)`` of a two-term complex given by its summands.

    ``P`` collects the summands ``P_i -> 0``; the module part is the cokernel
    of the differential.  Raises if a summand is not minimal.
    """
    mods = []
    support = []
    for c in summands:
        if not c.is_minimal(alg):
            raise NotMinimalComplex("differential has an invertible entry")
        if not c.p0:
            support.extend(c.p1)
            continue
        mods.append(cokernel(alg, c))
    module = direct_sum(mods) if mods else zero_rep(alg)
    return TauRigidPair(module, tuple(support))


def isomorphic_reps(m: Representation, n: Representation) -> bool:
    """Exact isomorphism test for indecomposables with local endomorphism rings."""
    if m.dims != n.dims:
        return False
    if m.is_zero():
        return True
    for f in hom_rep(m, n):
        # an injective map between equal-dimensional modules is an isomorphism
        if all(Echelon({j: x for j, x in enumerate(row) if x} for row in f.parts[v]).rank == m.dims[v] for v in range(m.alg.n)):
            return True
    return False
