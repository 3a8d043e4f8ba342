"""The g-vector fan: simplicial cones of two-term silting objects over Q."""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .exact import ZERO, int_inverse, kernel_basis, rank, solve, to_q
from .explorer import Key, MutationGraph
from .silting import SiltContext, SiltingObject, left_cone, right_cocone

INSIDE = "inside"
BOUNDARY = "boundary"
OUTSIDE = "outside"


@dataclass(frozen=True)
class Cone:
    """Cone spanned by the columns of a unimodular integer matrix."""

    generators: tuple[tuple[int, ...], ...]  # the g-vectors (columns)

    @classmethod
    def from_key(cls, key: Key) -> "Cone":
        return cls(tuple(tuple(v) for v in key))

    @property
    def n(self) -> int:
        return len(self.generators)

    def gmatrix(self) -> list[list[int]]:
        return [[g[i] for g in self.generators] for i in range(self.n)]

    def normals(self) -> list[list[int]]:
        """Facet normals: the rows of ``G^-1`` (so normal ``i`` pairs to ``delta_ij`` with generator ``j``)."""
        return int_inverse(self.gmatrix())


def _pair(u, x):
    return sum((to_q(a) * to_q(b) for a, b in zip(u, x)), ZERO)


def membership(c: Cone, x: Sequence) -> str:
    vals = [_pair(u, x) for u in c.normals()]
    if any(v < 0 for v in vals):
        return OUTSIDE
    if all(v > 0 for v in vals):
        return INSIDE
    return BOUNDARY


def _primitive(v: Sequence) -> tuple[int, ...]:
    """Primitive integer vector on the ray of a rational vector."""
    qs = [to_q(x) for x in v]
    den = 1
    for q in qs:
        den = den * int(q.denominator) // math.gcd(den, int(q.denominator))
    ints = [int(q * den) for q in qs]
    g = 0
    for a in ints:
        g = math.gcd(g, abs(a))
    return tuple(a // g for a in ints) if g else tuple(ints)


def extreme_rays(normals: Sequence[Sequence[int]], n: int) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone ``{x : u.x >= 0 for all normals u}``."""
    rays = set()
    for sub in combinations(range(len(normals)), n - 1):
        rows = [normals[i] for i in sub]
        if rows and rank(rows) != n - 1:
            continue
        ker = kernel_basis(rows, n) if rows else [[1 if i == j else 0 for i in range(n)] for j in range(n)]
        if len(ker) != 1:
            continue
        for sign in (1, -1):
            r = [sign * to_q(x) for x in ker[0]]
            if all(_pair(u, r) >= 0 for u in normals):
                rays.add(_primitive(r))
    return sorted(rays)


def cone_intersection_check(m: Key, n_: Key) -> dict:
    """``C(M) & C(N) = C(X)`` with ``add X = add M & add N``, via extreme rays."""
    cm, cn = Cone.from_key(m), Cone.from_key(n_)
    dim = cm.n
    common = sorted(set(m) & set(n_))
    rays = extreme_rays(cm.normals() + cn.normals(), dim)
    want = sorted(_primitive(v) for v in common)
    ok = rays == want
    out = {"ok": ok, "common": common, "rays": rays}
    if not ok:
        out["witness"] = sorted(set(rays) ^ set(want))
    return out


def fan_coverage_sample(g: MutationGraph, samples: int = 1000, seed: int = 0, radius: int = 20) -> dict:
    """Sample integer vectors and locate them in the cones of ``g``."""
    rng = random.Random(seed)
    cones = [(k, Cone.from_key(k)) for k in g.sorted_keys()]
    normals = [(k, c.normals()) for k, c in cones]
    covered = 0
    interior_clash = []
    uncovered = []
    for _ in range(samples):
        while True:
            x = [rng.randint(-radius, radius) for _ in range(g.n)]
            if any(x):
                break
        inside = boundary = 0
        for _, ns in normals:
            vals = [_pair(u, x) for u in ns]
            if any(v < 0 for v in vals):
                continue
            if all(v > 0 for v in vals):
                inside += 1
            else:
                boundary += 1
        if inside + boundary:
            covered += 1
        else:
            uncovered.append(tuple(x))
        if inside > 1 or (inside == 1 and boundary):
            interior_clash.append(tuple(x))
    ok = not interior_clash and (not g.finite or covered == samples)
    return {
        "ok": ok,
        "samples": samples,
        "covered": covered,
        "fraction": f"{covered}/{samples}",
        "interior_clash": interior_clash[:5],
        "uncovered": uncovered[:5] if g.finite else [],
    }


def halfspace_report(g: MutationGraph, sign: int) -> dict:
    """Every g-vector ``v`` of the graph satisfies ``sign * sum(v) >= 0``."""
    bad = [v for v in g.summand_keys() if sign * sum(v) < 0]
    return {"ok": not bad, "bad": bad[:5]}


# ---------------------------------------------------------------------------
# order versus cones


def in_cone_sum(vectors: Sequence[Sequence[int]], gens: Sequence[Sequence[int]]) -> bool:
    """Is every vector a nonnegative combination of ``gens``?

    By Caratheodory a feasible point lies in the cone of a linearly
    independent subset; since ``gens`` spans, it suffices to try the bases
    among ``gens``.
    """
    n = len(gens[0])
    bases = []
    for sub in combinations(range(len(gens)), n):
        cols = [gens[i] for i in sub]
        m = [[cols[j][i] for j in range(n)] for i in range(n)]
        if rank(m) == n:
            bases.append(m)
    for v in vectors:
        hit = False
        for m in bases:
            res = solve(m, list(v), n)
            if res is not None and all(to_q(x) >= 0 for x in res[0]):
                hit = True
                break
        if not hit:
            return False
    return True


def _stalk_only(c, degree: int) -> bool:
    return {k for k, v in c.terms.items() if v} <= {degree}


def _subfamilies(k: int, cap: int = 10):
    """Index subsets of the approximation components, full family first."""
    full = tuple(range(k))
    yield full
    if k > cap:
        return
    for size in range(k - 1, -1, -1):
        yield from combinations(full, size)


def _witness_1(ctx: SiltContext, m: SiltingObject, nobj: SiltingObject) -> bool:
    """``N in (add M) * (add SA)``, witnessed summand-wise.

    Candidate maps ``M' -> X`` are the minimal right ``add M``-approximation
    and its restrictions to sub-collections of components; a candidate works
    when its minimized cone lies in ``add A[1]`` (its cocone is a stalk in
    degree 0).
    """
    for x in nobj.summands:
        sources, maps = ctx.right_approximation(x, list(m.summands))
        for sub in _subfamilies(len(sources)):
            cocone = right_cocone(ctx.alg, x, [sources[i] for i in sub], [maps[i] for i in sub]).minimize(ctx.alg)
            if _stalk_only(cocone, 0):
                break
        else:
            return False
    return True


def _witness_5(ctx: SiltContext, m: SiltingObject, nobj: SiltingObject) -> bool:
    """``M in (add A) * (add N)``, dually through left ``add N``-approximations."""
    for x in m.summands:
        targets, maps = ctx.left_approximation(x, list(nobj.summands))
        for sub in _subfamilies(len(targets)):
            cone = left_cone(ctx.alg, x, [targets[i] for i in sub], [maps[i] for i in sub]).minimize(ctx.alg)
            if _stalk_only(cone, -1):
                break
        else:
            return False
    return True


def order_cone_probe(ctx: SiltContext, m: SiltingObject, nobj: SiltingObject) -> dict:
    """Conditions (1)-(3) and (5)-(7) for a pair ``M, N`` of silting objects.

    (1) and (5) are witness-based: ``True`` means a triangle was exhibited,
    ``False`` only that the canonical approximation triangle does not work.
    (4) and (8) coincide with (3) and (7) and are not recomputed.
    """
    n = ctx.n
    eye = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    neg = [[-x for x in row] for row in eye]
    c3 = ctx.order_geq(m, nobj)
    c2 = in_cone_sum(nobj.gvectors, list(m.gvectors) + neg)
    c6 = in_cone_sum(m.gvectors, list(nobj.gvectors) + eye)
    c1 = _witness_1(ctx, m, nobj)
    c5 = _witness_5(ctx, m, nobj)
    violations = []
    if c1 and not c2:
        violations.append("(1)=>(2)")
    if c2 and not c3:
        violations.append("(2)=>(3)")
    if c5 and not c6:
        violations.append("(5)=>(6)")
    if c6 and not c3:
        violations.append("(6)=>(7)")
    converse = []
    if c3 and not c2:
        converse.append("(3) without (2)")
    if c3 and not c1:
        converse.append("(3) without (1)-witness")
    if c3 and not c6:
        converse.append("(7) without (6)")
    if c3 and not c5:
        converse.append("(7) without (5)-witness")
    return {
        "c1": c1, "c2": c2, "c3": c3, "c4": c3,
        "c5": c5, "c6": c6, "c7": c3, "c8": c3,
        "violations": violations,
        "converse_gaps": converse,
    }


def probe_all(ctx: SiltContext, g: MutationGraph) -> dict:
    keys = g.sorted_keys()
    rows = []
    violations = []
    gaps = 0
    for a in keys:
        for b in keys:
            r = order_cone_probe(ctx, g.nodes[a], g.nodes[b])
            rows.append({"M": [list(v) for v in a], "N": [list(v) for v in b], **r})
            if r["violations"]:
                violations.append((a, b, r["violations"]))
            gaps += bool(r["converse_gaps"])
    return {"ok": not violations, "pairs": len(rows), "violations": violations, "pairs_with_converse_gaps": gaps, "rows": rows}


# ---------------------------------------------------------------------------
# export


def fan_json(g: MutationGraph) -> dict:
    return {
        "n": g.n,
        "verdict": g.verdict,
        "rays": [list(v) for v in g.summand_keys()],
        "cones": [Cone.from_key(k).gmatrix() for k in g.sorted_keys()],
    }


def fan_dumps(g: MutationGraph) -> str:
    return json.dumps(fan_json(g), indent=2, sort_keys=True)


def fan_off(g: MutationGraph) -> str:
    """OFF text of the unit-sphere cross-section (``n = 3`` only)."""
    if g.n != 3:
        raise ValueError("OFF export needs exactly three simples")
    rays = g.summand_keys()
    index = {v: i for i, v in enumerate(rays)}
    faces = [[index[v] for v in k] for k in g.sorted_keys()]
    lines = ["OFF", f"{len(rays)} {len(faces)} 0"]
    for v in rays:
        norm = math.sqrt(sum(x * x for x in v))
        lines.append(" ".join(f"{x / norm:.6f}" for x in v))
    for f in faces:
        lines.append("3 " + " ".join(str(i) for i in f))
    return "\n".join(lines) + "\n"


__all__ = [
    "BOUNDARY",
    "Cone",
    "INSIDE",
    "OUTSIDE",
    "cone_intersection_check",
    "extreme_rays",
    "fan_coverage_sample",
    "fan_dumps",
    "fan_json",
    "fan_off",
    "halfspace_report",
    "in_cone_sum",
    "membership",
    "order_cone_probe",
    "probe_all",
]
