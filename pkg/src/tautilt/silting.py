"""Two-term presilting and silting complexes: tests, g-vectors, mutation, order.

A basic two-term silting object is stored as a :class:`SiltingObject`, a
tuple of ``n`` indecomposable minimal two-term complexes.  Its canonical key
is its G-matrix with columns sorted lexicographically; g-vectors determine
indecomposable presilting complexes up to isomorphism, so the key identifies
the object.

All Hom computations go through a :class:`SiltContext`, which caches
``Hom_K`` spaces and endomorphism radicals by object identity.  Objects are
therefore interned per context by g-vector (:meth:`SiltContext.intern`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .algebra import BoundQuiverAlgebra, radical_from_structure
from .complexes import (
    ChainMap,
    Complex,
    HomK,
    MutationFailed,
    TwoTermComplex,
    compose,
    hom_shift_dim,
    zero_matrix,
)
from .endo import count_simple_components, is_local
from .exact import ONE, Echelon, int_inverse

GVector = tuple


class EmptyPool(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class SiltingObject:
    summands: tuple[TwoTermComplex, ...]
    n: int

    @property
    def gvectors(self) -> tuple[GVector, ...]:
        return tuple(x.g_vector(self.n) for x in self.summands)

    @property
    def key(self) -> tuple[GVector, ...]:
        return tuple(sorted(self.gvectors))

    def gmatrix(self) -> list[list[int]]:
        """n x n integer matrix whose columns are the sorted g-vectors."""
        cols = self.key
        return [[cols[j][i] for j in range(len(cols))] for i in range(self.n)]

    def index_of(self, g: GVector) -> int:
        return self.gvectors.index(tuple(g))

    def __len__(self) -> int:
        return len(self.summands)


def gmatrix_from_key(key: Sequence[GVector], n: int) -> list[list[int]]:
    return [[key[j][i] for j in range(len(key))] for i in range(n)]


def is_sign_coherent(vectors: Iterable[Sequence[int]]) -> bool:
    vectors = list(vectors)
    if not vectors:
        return True
    for i in range(len(vectors[0])):
        if any(v[i] > 0 for v in vectors) and any(v[i] < 0 for v in vectors):
            return False
    return True


class SiltContext:
    """Hom caches and silting operations for one algebra."""

    def __init__(self, alg: BoundQuiverAlgebra, validate: bool = False):
        self.alg = alg
        self.n = alg.n
        self.validate = validate
        self._registry: dict[GVector, TwoTermComplex] = {}
        self._homk: dict[tuple[int, int], HomK] = {}
        self._ext: dict[tuple[int, int], int] = {}
        self._rad: dict[int, list[ChainMap]] = {}
        self.stats = {"mutations": 0, "left": 0, "right": 0}

    # -- objects -----------------------------------------------------------
    def intern(self, x: TwoTermComplex) -> TwoTermComplex:
        g = x.g_vector(self.n)
        have = self._registry.get(g)
        if have is None:
            self._registry[g] = x
            return x
        if self.validate and have is not x and not self.isomorphic(have, x):
            raise AssertionError(f"two non-isomorphic presilting complexes share g-vector {g}")
        return have

    def projective(self, i: int) -> TwoTermComplex:
        return self.intern(TwoTermComplex.stalk([i]))

    def shifted_projective(self, i: int) -> TwoTermComplex:
        return self.intern(TwoTermComplex.shifted([i]))

    def stalk_a(self) -> SiltingObject:
        return SiltingObject(tuple(self.projective(i) for i in range(self.n)), self.n)

    def shifted_a(self) -> SiltingObject:
        return SiltingObject(tuple(self.shifted_projective(i) for i in range(self.n)), self.n)

    def silting(self, summands: Sequence[TwoTermComplex]) -> SiltingObject:
        return SiltingObject(tuple(self.intern(x) for x in summands), self.n)

    # -- Hom spaces ----------------------------------------------------------
    def homk(self, x: TwoTermComplex, y: TwoTermComplex) -> HomK:
        key = (id(x), id(y))
        h = self._homk.get(key)
        if h is None:
            h = HomK(self.alg, x, y)
            self._homk[key] = h
        return h

    def ext(self, x: TwoTermComplex, y: TwoTermComplex) -> int:
        """``dim Hom_K(X, Y[1])``."""
        key = (id(x), id(y))
        e = self._ext.get(key)
        if e is None:
            e = hom_shift_dim(self.alg, x, y)
            self._ext[key] = e
        return e

    def end_structure(self, x: TwoTermComplex) -> list:
        h = self.homk(x, x)
        return [[h.coords(compose(self.alg, a, b)) for b in h.basis] for a in h.basis]

    def rad_end(self, x: TwoTermComplex) -> list[ChainMap]:
        """Chain-map representatives of a basis of ``rad End_K(X)``; X must be local."""
        r = self._rad.get(id(x))
        if r is None:
            h = self.homk(x, x)
            struct = self.end_structure(x)
            rad = radical_from_structure(struct)
            if len(struct) - len(rad) != 1:
                raise MutationFailed(
                    f"End_K of {x.g_vector(self.n)} is not local with residue field K "
                    f"(dim {len(struct)}, radical {len(rad)})"
                )
            r = [h.combine(v) for v in rad]
            self._rad[id(x)] = r
        return r

    def rad_hom(self, u: TwoTermComplex, v: TwoTermComplex) -> list[ChainMap]:
        """Radical morphisms between indecomposables (all maps when non-isomorphic)."""
        if u is v:
            return self.rad_end(u)
        return self.homk(u, v).basis

    def isomorphic(self, x: TwoTermComplex, y: TwoTermComplex) -> bool:
        """Isomorphism test for indecomposables: some ``X -> Y -> X`` is invertible."""
        if x.g_vector(self.n) != y.g_vector(self.n):
            return False
        hx = self.homk(x, x)
        rad = Echelon()
        struct = self.end_structure(x)
        for r in radical_from_structure(struct):
            rad.add({k: v for k, v in enumerate(r) if v})
        for f in self.homk(x, y).basis:
            for g in self.homk(y, x).basis:
                c = hx.coords(compose(self.alg, g, f))
                if not rad.contains({k: v for k, v in enumerate(c) if v}):
                    return True
        return False

    # -- presilting / silting ---------------------------------------------
    def is_presilting_summands(self, xs: Sequence[TwoTermComplex]) -> bool:
        return all(self.ext(a, b) == 0 for a in xs for b in xs)

    def is_silting(self, obj: SiltingObject) -> bool:
        return len(set(obj.gvectors)) == self.n and self.is_presilting_summands(obj.summands)

    def order_geq(self, m: SiltingObject, n: SiltingObject) -> bool:
        """``M >= N`` iff ``Hom_K(M, N[1]) = 0`` (higher shifts vanish for two-term)."""
        return all(self.ext(a, b) == 0 for a in m.summands for b in n.summands)

    # -- approximations ------------------------------------------------------
    def left_approximation(self, x: TwoTermComplex, us: Sequence[TwoTermComplex]):
        """Minimal left ``add(us)``-approximation ``X -> U'``.

        The multiplicity of ``U_j`` is the dimension of ``Hom_K(X, U_j)``
        modulo the maps factoring through radical maps ``U_l -> U_j``.
        Returns ``(components, maps)``: the list of targets (with repetition)
        and the chain maps ``X -> target``.
        """
        targets, maps = [], []
        for j, uj in enumerate(us):
            h = self.homk(x, uj)
            if h.dim == 0:
                continue
            ech = Echelon()
            for l, ul in enumerate(us):
                hl = self.homk(x, ul)
                for phi in self.rad_hom(ul, uj):
                    for f in hl.basis:
                        c = h.coords(compose(self.alg, phi, f))
                        ech.add({k: v for k, v in enumerate(c) if v})
            for k in range(h.dim):
                if ech.add({k: ONE}) is not None:
                    targets.append(uj)
                    maps.append(h.basis[k])
        return targets, maps

    def right_approximation(self, x: TwoTermComplex, us: Sequence[TwoTermComplex]):
        """Minimal right ``add(us)``-approximation ``U'' -> X``."""
        sources, maps = [], []
        for j, uj in enumerate(us):
            h = self.homk(uj, x)
            if h.dim == 0:
                continue
            ech = Echelon()
            for l, ul in enumerate(us):
                hl = self.homk(ul, x)
                for phi in self.rad_hom(uj, ul):
                    for f in hl.basis:
                        c = h.coords(compose(self.alg, f, phi))
                        ech.add({k: v for k, v in enumerate(c) if v})
            for k in range(h.dim):
                if ech.add({k: ONE}) is not None:
                    sources.append(uj)
                    maps.append(h.basis[k])
        return sources, maps

    def left_mutation_cone(self, x: TwoTermComplex, us: Sequence[TwoTermComplex]) -> Complex:
        targets, maps = self.left_approximation(x, us)
        return left_cone(self.alg, x, targets, maps).minimize(self.alg)

    def right_mutation_cocone(self, x: TwoTermComplex, us: Sequence[TwoTermComplex]) -> Complex:
        sources, maps = self.right_approximation(x, us)
        return right_cocone(self.alg, x, sources, maps).minimize(self.alg)

    # -- mutation ---------------------------------------------------------
    def mutate(self, m: SiltingObject, k: int) -> tuple[SiltingObject, str]:
        """Exchange the ``k``-th summand; returns ``(new object, "left"|"right")``.

        Left mutation (cone of the minimal left approximation) is tried first;
        when its minimized cone is not two-term the right mutation is used.
        """
        x = m.summands[k]
        us = [u for i, u in enumerate(m.summands) if i != k]
        self.stats["mutations"] += 1
        y = None
        cone = self.left_mutation_cone(x, us)
        direction = "left"
        if set(cone.terms) <= {-1, 0} and cone.terms:
            y = TwoTermComplex.from_complex(cone)
        else:
            cocone = self.right_mutation_cocone(x, us)
            direction = "right"
            if set(cocone.terms) <= {-1, 0} and cocone.terms:
                y = TwoTermComplex.from_complex(cocone)
            else:
                raise MutationFailed(
                    f"neither mutation of summand {x.g_vector(self.n)} is two-term "
                    f"(cone degrees {cone.degrees()}, cocone degrees {cocone.degrees()})"
                )
        self.stats[direction] += 1
        y = self.intern(y)
        if self.validate:
            if not is_local(self.end_structure(y)):
                raise MutationFailed(f"mutation produced a decomposable complex {y.g_vector(self.n)}")
        new = SiltingObject(tuple(y if i == k else u for i, u in enumerate(m.summands)), self.n)
        if new.key == m.key:
            raise MutationFailed("mutation returned the original object")
        if len(set(new.gvectors)) != self.n:
            raise MutationFailed(f"mutation produced a repeated summand {y.g_vector(self.n)}")
        if self.ext(y, y) or any(self.ext(y, u) or self.ext(u, y) for u in us):
            raise MutationFailed(f"mutation at {x.g_vector(self.n)} is not presilting")
        return new, direction

    # -- summands -------------------------------------------------------------
    def _section_pair(self, z: TwoTermComplex, x: TwoTermComplex):
        hx = self.homk(x, x)
        rad = Echelon()
        for r in radical_from_structure(self.end_structure(x)):
            rad.add({k: v for k, v in enumerate(r) if v})
        for f in self.homk(z, x).basis:
            for g in self.homk(x, z).basis:
                c = hx.coords(compose(self.alg, f, g))
                if not rad.contains({k: v for k, v in enumerate(c) if v}):
                    return g, f
        return None

    def split_off(self, z: TwoTermComplex, x: TwoTermComplex) -> TwoTermComplex | None:
        """Complement of one copy of ``X`` in ``Z``, or ``None`` if ``X`` is not a summand.

        A section ``g: X -> Z`` (with ``f o g`` invertible for some ``f``) is
        split, so ``Z = X + cone(g)`` and the complement is the minimized cone.
        """
        pair = self._section_pair(z, x)
        if pair is None:
            return None
        g, _ = pair
        c = left_cone(self.alg, x, [z], [g]).minimize(self.alg)
        if not set(c.terms) <= {-1, 0}:
            raise AssertionError("cone of a split monomorphism is not two-term")
        return TwoTermComplex.from_complex(c)

    def summand_multiplicity(self, z: TwoTermComplex, x: TwoTermComplex) -> int:
        count = 0
        rest = z
        while not rest.is_zero():
            nxt = self.split_off(rest, x)
            if nxt is None:
                break
            count += 1
            rest = nxt
        return count

    def count_summands(self, z: TwoTermComplex) -> int:
        """Number of pairwise non-isomorphic indecomposable summands of ``Z``."""
        if z.is_zero():
            return 0
        return count_simple_components(self.end_structure(z))


def left_cone(alg: BoundQuiverAlgebra, x: TwoTermComplex, targets: Sequence[TwoTermComplex], maps: Sequence[ChainMap]) -> Complex:
    """Cone of ``X -> sum targets``: degrees -2, -1, 0."""
    u1 = [v for t in targets for v in t.p1]
    u0 = [v for t in targets for v in t.p0]
    n1, n0 = len(x.p1), len(x.p0)
    # d^-2 : X^-1 -> X^0 + U^-1, blocks [-d_X ; f^-1]
    d2 = zero_matrix(n0 + len(u1), n1)
    for r in range(n0):
        for c in range(n1):
            if x.d[r][c]:
                d2[r][c] = {b: -v for b, v in x.d[r][c].items()}
    row = n0
    for t, f in zip(targets, maps):
        for r in range(len(t.p1)):
            for c in range(n1):
                if f.f1[r][c]:
                    d2[row + r][c] = dict(f.f1[r][c])
        row += len(t.p1)
    # d^-1 : X^0 + U^-1 -> U^0, blocks [f^0 | d_U]
    d1 = zero_matrix(len(u0), n0 + len(u1))
    r0 = 0
    c0 = n0
    for t, f in zip(targets, maps):
        for r in range(len(t.p0)):
            for c in range(n0):
                if f.f0[r][c]:
                    d1[r0 + r][c] = dict(f.f0[r][c])
            for c in range(len(t.p1)):
                if t.d[r][c]:
                    d1[r0 + r][c0 + c] = dict(t.d[r][c])
        r0 += len(t.p0)
        c0 += len(t.p1)
    return Complex({-2: x.p1, -1: list(x.p0) + u1, 0: u0}, {-2: d2, -1: d1})


def right_cocone(alg: BoundQuiverAlgebra, x: TwoTermComplex, sources: Sequence[TwoTermComplex], maps: Sequence[ChainMap]) -> Complex:
    """Cocone of ``sum sources -> X``: degrees -1, 0, 1."""
    u1 = [v for s in sources for v in s.p1]
    u0 = [v for s in sources for v in s.p0]
    n1, n0 = len(x.p1), len(x.p0)
    # d^-1 : U^-1 -> U^0 + X^-1, blocks [-d_U ; g^-1]
    dm1 = zero_matrix(len(u0) + n1, len(u1))
    r0 = c0 = 0
    for s, g in zip(sources, maps):
        for r in range(len(s.p0)):
            for c in range(len(s.p1)):
                if s.d[r][c]:
                    dm1[r0 + r][c0 + c] = {b: -v for b, v in s.d[r][c].items()}
        for r in range(n1):
            for c in range(len(s.p1)):
                if g.f1[r][c]:
                    dm1[len(u0) + r][c0 + c] = dict(g.f1[r][c])
        r0 += len(s.p0)
        c0 += len(s.p1)
    # d^0 : U^0 + X^-1 -> X^0, blocks [g^0 | d_X]
    d0 = zero_matrix(n0, len(u0) + n1)
    c0 = 0
    for s, g in zip(sources, maps):
        for r in range(n0):
            for c in range(len(s.p0)):
                if g.f0[r][c]:
                    d0[r][c0 + c] = dict(g.f0[r][c])
        c0 += len(s.p0)
    for r in range(n0):
        for c in range(n1):
            if x.d[r][c]:
                d0[r][len(u0) + c] = dict(x.d[r][c])
    return Complex({-1: u1, 0: u0 + list(x.p1), 1: x.p0}, {-1: dm1, 0: d0})


# ---------------------------------------------------------------------------
# G-matrices


def g_inverse(gmat: Sequence[Sequence[int]]) -> list[list[int]]:
    """``G(M, S)``: coordinates of the projectives in the summand basis of ``M``."""
    return int_inverse(gmat)


def bongartz_complete(ctx: SiltContext, u: Sequence[TwoTermComplex], pool: Sequence[SiltingObject]) -> SiltingObject:
    """Order-maximum silting object of ``pool`` having every summand of ``u``."""
    if not pool:
        raise EmptyPool("pool is empty")
    want = {x.g_vector(ctx.n) for x in u}
    cands = [t for t in pool if want <= set(t.gvectors)]
    if not cands:
        raise EmptyPool("no silting object in the pool contains the given summands")
    tops = [t for t in cands if all(ctx.order_geq(t, s) for s in cands)]
    if len(tops) != 1:
        raise AssertionError(f"expected a unique maximum, found {len(tops)}")
    return tops[0]
