"""Brute-force enumeration of two-term silting objects.

Independent of mutation: every two-term complex with per-projective
multiplicities at most ``max_mult`` whose differential entries are 0/1
combinations of radical basis paths is generated; the presilting ones are
kept through a dense rank computation of ``Hom_K(X, X[1])`` written
separately from the sparse solver used elsewhere.
"""

from __future__ import annotations

from itertools import combinations, product

from .algebra import BoundQuiverAlgebra
from .complexes import TwoTermComplex
from .endo import is_local
from .exact import ONE, rank
from .silting import SiltContext


def _rad_paths(alg: BoundQuiverAlgebra, r: int, c: int) -> list[int]:
    """Radical basis paths of ``Hom(P_c, P_r) = e_r A e_c``."""
    return [b for b in alg.hom_space(c, r) if b >= alg.n]


def _hom_blocks(alg, src, tgt):
    """Coordinate blocks for maps ``sum P_src -> sum P_tgt``: ``(row, col, path)``."""
    return [(r, c, b) for r, v in enumerate(tgt) for c, u in enumerate(src) for b in alg.hom_space(u, v)]


def _apply(alg, left, right):
    """Product of two sparse block matrices given as dicts ``(r, c) -> element``."""
    out = {}
    for (r, k), x in left.items():
        for (k2, c), y in right.items():
            if k != k2:
                continue
            for b, v in alg.mul(x, y).items():
                key = (r, c, b)
                out[key] = out.get(key, 0) + v
    return out


def ext_dim(alg: BoundQuiverAlgebra, x: TwoTermComplex, y: TwoTermComplex) -> int:
    """``dim Hom_K(X, Y[1])`` as ``dim Hom(X^-1, Y^0)`` minus the rank of the null maps."""
    target = _hom_blocks(alg, x.p1, y.p0)
    if not target:
        return 0
    pos = {t: i for i, t in enumerate(target)}
    dx = {(r, c): e for r, row in enumerate(x.d) for c, e in enumerate(row) if e}
    dy = {(r, c): e for r, row in enumerate(y.d) for c, e in enumerate(row) if e}
    rows = []
    for r, c, b in _hom_blocks(alg, x.p0, y.p0):  # h : X^0 -> Y^0, contributes h d_X
        img = _apply(alg, {(r, c): {b: ONE}}, dx)
        rows.append(_dense(img, pos))
    for r, c, b in _hom_blocks(alg, x.p1, y.p1):  # h' : X^-1 -> Y^-1, contributes d_Y h'
        img = _apply(alg, dy, {(r, c): {b: ONE}})
        rows.append(_dense(img, pos))
    return len(target) - (rank(rows) if rows else 0)


def _dense(img, pos):
    v = [0] * len(pos)
    for key, val in img.items():
        if val:
            v[pos[key]] += val
    return v


def _multisets(n: int, max_mult: int):
    for mult in product(range(max_mult + 1), repeat=n):
        yield tuple(v for v in range(n) for _ in range(mult[v]))


def enumerate_complexes(alg: BoundQuiverAlgebra, max_mult: int = 2):
    """All minimal two-term complexes in the search space (nonzero ones)."""
    n = alg.n
    for p1 in _multisets(n, max_mult):
        for p0 in _multisets(n, max_mult):
            if not p1 and not p0:
                continue
            slots = [(r, c, b) for r, v in enumerate(p0) for c, u in enumerate(p1) for b in _rad_paths(alg, v, u)]
            for bits in product((0, 1), repeat=len(slots)):
                d = [[{} for _ in p1] for _ in p0]
                for on, (r, c, b) in zip(bits, slots):
                    if on:
                        d[r][c][b] = ONE
                yield TwoTermComplex(p1, p0, d)


def oracle_silting_keys(alg: BoundQuiverAlgebra, max_mult: int = 2) -> dict:
    """Indecomposable presilting g-vectors and the silting keys they assemble into."""
    ctx = SiltContext(alg)
    n = alg.n
    reps: dict[tuple, TwoTermComplex] = {}
    examined = 0
    for x in enumerate_complexes(alg, max_mult):
        examined += 1
        g = x.g_vector(n)
        if g in reps:
            continue
        if ext_dim(alg, x, x):
            continue
        if not is_local(ctx.end_structure(x)):
            continue
        reps[g] = x
    gs = sorted(reps)
    compatible = {
        (a, b): ext_dim(alg, reps[a], reps[b]) == 0 and ext_dim(alg, reps[b], reps[a]) == 0
        for a in gs
        for b in gs
    }
    keys = []
    for sub in combinations(gs, n):
        if all(compatible[(a, b)] for a, b in combinations(sub, 2)):
            keys.append(tuple(sorted(sub)))
    return {"indecomposables": gs, "silting_keys": sorted(keys), "examined": examined}
