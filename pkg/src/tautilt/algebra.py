"""Bound quiver algebras ``A = KQ/I`` over the rationals.

Conventions (inherited by every other module):

* paths are written left to right: ``xy`` means "first ``x``, then ``y``",
  so ``xy`` is nonzero only when ``target(x) == source(y)``;
* modules are right modules and ``P_i = e_i A`` is spanned by the paths
  starting at ``i``;
* ``Hom_A(P_i, P_j)`` is identified with ``e_j A e_i`` (paths from ``j`` to
  ``i``) acting by left multiplication, so composing ``P_i -> P_j -> P_k``
  given by ``p`` and then ``q`` is the product ``q * p``.

Algebra elements are sparse vectors ``dict[int, mpq]`` over the basis of
residue paths.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .exact import ONE, ZERO, Echelon, sparse_axpy, to_q


class NotFiniteDimensional(ValueError):
    pass


class QuiverError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(Arrow(*a) if not isinstance(a, Arrow) else a for a in self.arrows))
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("vertex labels must be unique")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise QuiverError("arrow names must be unique")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise QuiverError(f"arrow {a.name!r} uses an undeclared vertex")

    @property
    def n(self) -> int:
        return len(self.vertices)

    def vertex_index(self, label: str) -> int:
        return self.vertices.index(label)

    def arrow_index(self, name: str) -> int:
        for k, a in enumerate(self.arrows):
            if a.name == name:
                return k
        raise QuiverError(f"unknown arrow {name!r}")


@dataclass(frozen=True)
class Relation:
    """A linear combination ``sum coeff * path`` of paths of length >= 2."""

    terms: tuple[tuple, ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple((to_q(c), tuple(p)) for c, p in self.terms))

    def check(self, quiver: Quiver) -> None:
        if not self.terms:
            raise QuiverError("empty relation")
        ends = set()
        for _, path in self.terms:
            if len(path) < 2:
                raise QuiverError(f"relation path {path} has length < 2 (not admissible)")
            arrows = [quiver.arrows[quiver.arrow_index(name)] for name in path]
            for a, b in zip(arrows, arrows[1:]):
                if a.target != b.source:
                    raise QuiverError(f"path {'.'.join(path)} is not composable")
            ends.add((arrows[0].source, arrows[-1].target))
        if len(ends) != 1:
            raise QuiverError("paths in one relation must share source and target")


# A path is (source vertex index, tuple of arrow indices).
Path = tuple


@dataclass
class BoundQuiverAlgebra:
    quiver: Quiver
    relations: tuple[Relation, ...]
    basis: list[Path]
    nilpotency: int
    _src: list[int] = field(repr=False, default_factory=list)
    _tgt: list[int] = field(repr=False, default_factory=list)
    _mult: dict = field(repr=False, default_factory=dict)
    _between: dict = field(repr=False, default_factory=dict)

    @property
    def n(self) -> int:
        return self.quiver.n

    @property
    def dim(self) -> int:
        return len(self.basis)

    def source(self, b: int) -> int:
        return self._src[b]

    def target(self, b: int) -> int:
        return self._tgt[b]

    def idempotent(self, i: int) -> int:
        """Basis index of ``e_i`` (the trivial paths come first)."""
        return i

    def paths_between(self, i: int, j: int) -> list[int]:
        """Basis indices of ``e_i A e_j`` (paths from ``i`` to ``j``)."""
        return self._between.get((i, j), [])

    def hom_space(self, i: int, j: int) -> list[int]:
        """Basis of ``Hom_A(P_i, P_j)``, i.e. of ``e_j A e_i``."""
        return self.paths_between(j, i)

    def path_label(self, b: int) -> str:
        s, arrows = self.basis[b]
        if not arrows:
            return f"e{self.quiver.vertices[s]}"
        names = [self.quiver.arrows[a].name for a in arrows]
        return ("" if all(len(x) == 1 for x in names) else ".").join(names)

    def element_str(self, x: dict) -> str:
        if not x:
            return "0"
        parts = []
        for b in sorted(x):
            c = x[b]
            lab = self.path_label(b)
            parts.append(lab if c == 1 else f"{c}*{lab}")
        return " + ".join(parts)

    def mult_basis(self, a: int, b: int) -> dict:
        return self._mult.get((a, b), {})

    def mul(self, x: dict, y: dict) -> dict:
        out: dict = {}
        if not x or not y:
            return out
        mult = self._mult
        for a, ca in x.items():
            for b, cb in y.items():
                prod = mult.get((a, b))
                if prod:
                    sparse_axpy(out, ca * cb, prod)
        return out

    def unit(self) -> dict:
        return {i: ONE for i in range(self.n)}

    def idempotent_coefficient(self, x: dict, i: int):
        return x.get(i, ZERO)

    def is_radical(self, x: dict) -> bool:
        return all(b >= self.n for b in x)

    def inverse_local(self, x: dict, i: int) -> dict:
        """Inverse of a unit ``x`` of the local ring ``e_i A e_i``."""
        lam = x.get(i, ZERO)
        if not lam:
            raise ZeroDivisionError("element is not a unit of e_i A e_i")
        inv_lam = ONE / lam
        nil = {b: -c * inv_lam for b, c in x.items() if b != i}
        # (lam (e - n'))^{-1} = lam^{-1} (e + n' + n'^2 + ...), n' = -nil / lam
        term = {i: ONE}
        total = {i: ONE}
        for _ in range(self.nilpotency + 1):
            term = self.mul(term, nil)
            if not term:
                break
            sparse_axpy(total, ONE, term)
        return {b: c * inv_lam for b, c in total.items()}

    def check_associativity(self, samples: int | None = None, seed: int = 0) -> bool:
        """Check ``(ab)c == a(bc)`` on basis triples (all, or a seeded sample)."""
        d = self.dim
        triples: Iterable
        if samples is None:
            triples = ((a, b, c) for a in range(d) for b in range(d) for c in range(d))
        else:
            rng = random.Random(seed)
            triples = ((rng.randrange(d), rng.randrange(d), rng.randrange(d)) for _ in range(samples))
        for a, b, c in triples:
            if self.mul(self.mul({a: ONE}, {b: ONE}), {c: ONE}) != self.mul({a: ONE}, self.mul({b: ONE}, {c: ONE})):
                return False
        return True


def build_algebra(quiver: Quiver, relations: Sequence[Relation] = (), max_len: int | None = None) -> BoundQuiverAlgebra:
    """Compute a basis of residue paths and the multiplication table of ``KQ/I``.

    Works modulo ``J^N`` for growing ``N`` (``J`` the arrow ideal): the ideal
    ``(I + J^N)/J^N`` is the closure of the relations under left and right
    multiplication by arrows.  When every path of length ``N - 1`` lies in
    it, ``J^(N-1)`` is contained in ``I`` and the residue paths of length
    below ``N - 1`` form a basis of ``A``.
    """
    relations = tuple(relations)
    for r in relations:
        r.check(quiver)
    cap = 32 if max_len is None else max_len
    n = quiver.n
    arrow_src = [quiver.vertex_index(a.source) for a in quiver.arrows]
    arrow_tgt = [quiver.vertex_index(a.target) for a in quiver.arrows]

    # all paths by length
    strata: list[list[Path]] = [[(i, ()) for i in range(n)]]
    strata.append([(arrow_src[k], (k,)) for k in range(len(quiver.arrows))])

    def extend(paths: list[Path]) -> list[Path]:
        out = []
        for s, arrows in paths:
            t = arrow_tgt[arrows[-1]]
            for k in range(len(quiver.arrows)):
                if arrow_src[k] == t:
                    out.append((s, arrows + (k,)))
        return out

    rel_terms = [[(c, (arrow_src[quiver.arrow_index(p[0])], tuple(quiver.arrow_index(a) for a in p))) for c, p in r.terms] for r in relations]

    for N in range(2, cap + 2):
        while len(strata) < N:
            strata.append(extend(strata[-1]))
        # columns ordered longest first so pivots prefer long paths
        ordered = [p for length in range(N - 1, -1, -1) for p in strata[length]]
        col = {p: k for k, p in enumerate(ordered)}

        def vec(terms) -> dict:
            v: dict = {}
            for c, p in terms:
                k = col.get(p)
                if k is not None:
                    v[k] = v.get(k, ZERO) + c
            return {k: c for k, c in v.items() if c}

        def mult_arrow(v: dict, k: int, left: bool) -> dict:
            out: dict = {}
            for idx, c in v.items():
                s, arrows = ordered[idx]
                if left:
                    if arrow_tgt[k] != s:
                        continue
                    p = (arrow_src[k], (k,) + arrows)
                else:
                    if arrow_src[k] != _target(s, arrows):
                        continue
                    p = (s, arrows + (k,))
                j = col.get(p)
                if j is not None:
                    out[j] = c
            return out

        def _target(s, arrows):
            return arrow_tgt[arrows[-1]] if arrows else s

        ech = Echelon()
        queue = [vec(t) for t in rel_terms]
        while queue:
            v = queue.pop()
            row = ech.add(v)
            if row is None:
                continue
            for k in range(len(quiver.arrows)):
                for left in (True, False):
                    w = mult_arrow(row, k, left)
                    if w:
                        queue.append(w)
        top = strata[N - 1]
        if all(ech.contains({col[p]: ONE}) for p in top):
            L = N - 1
            normal = [p for p in ordered if col[p] not in ech.rows]
            normal.sort(key=lambda p: (len(p[1]), p[1], p[0]))
            return _finish(quiver, relations, normal, L, ech, col, ordered, arrow_src, arrow_tgt)
    raise NotFiniteDimensional(f"no vanishing path stratum up to length {cap}")


def _finish(quiver, relations, normal, L, ech, col, ordered, arrow_src, arrow_tgt) -> BoundQuiverAlgebra:
    index = {p: k for k, p in enumerate(normal)}
    src = [p[0] for p in normal]
    tgt = [arrow_tgt[p[1][-1]] if p[1] else p[0] for p in normal]

    def normal_form(path: Path) -> dict:
        if len(path[1]) >= L:
            return {}
        k = index.get(path)
        if k is not None:
            return {k: ONE}
        rem = ech.reduce({col[path]: ONE})
        return {index[ordered[c]]: v for c, v in rem.items()}

    mult = {}
    for a, pa in enumerate(normal):
        for b, pb in enumerate(normal):
            if tgt[a] != src[b]:
                continue
            if not pa[1]:
                prod = {b: ONE}
            elif not pb[1]:
                prod = {a: ONE}
            else:
                prod = normal_form((pa[0], pa[1] + pb[1]))
            if prod:
                mult[(a, b)] = prod
    between: dict = {}
    for k in range(len(normal)):
        between.setdefault((src[k], tgt[k]), []).append(k)
    alg = BoundQuiverAlgebra(quiver, relations, normal, L, src, tgt, mult, between)
    if alg.dim <= 24:
        ok = alg.check_associativity()
    else:
        ok = alg.check_associativity(samples=4000)
    if not ok:
        raise AssertionError("multiplication table is not associative")
    return alg


def algebra_from_data(vertices, arrows, relations=(), max_len=None) -> BoundQuiverAlgebra:
    """Convenience builder: ``arrows`` as ``(name, source, target)`` triples and
    ``relations`` as lists of ``(coeff, [arrow names])``."""
    q = Quiver(tuple(vertices), tuple(Arrow(*a) for a in arrows))
    rels = tuple(Relation(tuple((c, tuple(p)) for c, p in r)) for r in relations)
    return build_algebra(q, rels, max_len)


# ---------------------------------------------------------------------------
# radicals of finite dimensional matrix algebras


def radical_from_structure(struct: Sequence[Sequence[Sequence]]) -> list[list]:
    """Jacobson radical of an algebra given by structure constants.

    Uses the trace form of the left regular representation,
    ``rad = {x : tr(L_{xy}) = 0 for all y}``, valid in characteristic 0.
    """
    from .exact import kernel_basis

    m = len(struct)
    if m == 0:
        return []
    # trace of left multiplication by basis element k: L_k[l][j] = struct[k][j][l]
    tr = [sum((to_q(struct[k][j][j]) for j in range(m)), ZERO) for k in range(m)]
    gram = [[sum((to_q(struct[i][j][k]) * tr[k] for k in range(m)), ZERO) for j in range(m)] for i in range(m)]
    return kernel_basis(gram, m)


def radical_of_endo(basis: Sequence[Sequence[Sequence]]) -> list[list]:
    """Radical of a multiplicatively closed matrix algebra containing the identity.

    The matrices act faithfully, so in characteristic 0 the radical is the
    kernel of ``(x, y) -> tr(xy)``.  Returns coordinate vectors with respect
    to ``basis``.
    """
    from .exact import kernel_basis

    m = len(basis)
    if m == 0:
        return []
    mats = [[[to_q(x) for x in row] for row in b] for b in basis]
    size = len(mats[0])

    def tr_prod(a, b):
        return sum((a[i][k] * b[k][i] for i in range(size) for k in range(size)), ZERO)

    gram = [[tr_prod(mats[i], mats[j]) for j in range(m)] for i in range(m)]
    return kernel_basis(gram, m)
