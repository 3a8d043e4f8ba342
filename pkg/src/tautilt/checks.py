"""Property suites run on an explored mutation graph.

Each function returns a dict with an ``ok`` flag and, on failure, a witness.
"""

from __future__ import annotations

import random

from .complexes import TwoTermComplex
from .exact import identity, int_inverse, mat_mul, NotUnimodular
from .explorer import Key, MutationGraph, involution_report, longest_path_stats, regularity_report
from .representations import (
    count_indec_summands,
    direct_sum,
    fac_contains,
    h0_pair,
    is_tau_rigid_pair,
    zero_rep,
    cokernel,
)
from .silting import SiltContext, SiltingObject, is_sign_coherent, right_cocone


def g_identity_report(g: MutationGraph) -> dict:
    """``G(S,M) G(M,S) = G(M,S) G(S,M) = 1`` with ``G(M,S)`` from the integer inverse."""
    n = g.n
    eye = identity(n)
    for key in g.sorted_keys():
        gm = g.nodes[key].gmatrix()
        try:
            inv = int_inverse(gm)
        except NotUnimodular:
            return {"ok": False, "node": key, "reason": "G-matrix is not unimodular"}
        if mat_mul(gm, inv) != eye or mat_mul(inv, gm) != eye:
            return {"ok": False, "node": key, "reason": "inverse check failed"}
    return {"ok": True, "nodes": len(g.nodes)}


def relative_gmatrix(ctx: SiltContext, m: SiltingObject, l: SiltingObject) -> list[list[int]] | None:
    """``G(M, L)`` for ``M >= L``, read off approximation triangles ``M1 -> M0 -> L_j``.

    The cocone of the minimal right ``add M``-approximation of ``L_j`` lies in
    ``add M``; multiplicities of the summands of ``M`` are found by splitting.
    Columns follow the key order of ``L``; rows the key order of ``M``.
    """
    n = ctx.n
    ms = sorted(m.summands, key=lambda x: x.g_vector(n))
    ls = sorted(l.summands, key=lambda x: x.g_vector(n))
    cols = []
    for x in ls:
        sources, maps = ctx.right_approximation(x, ms)
        col = [0] * len(ms)
        for s in sources:
            col[ms.index(s)] += 1
        coc = right_cocone(ctx.alg, x, sources, maps).minimize(ctx.alg)
        if {k for k, v in coc.terms.items() if v} - {-1, 0}:
            return None
        rest = TwoTermComplex.from_complex(coc)
        for i, u in enumerate(ms):
            k = ctx.summand_multiplicity(rest, u)
            for _ in range(k):
                rest = ctx.split_off(rest, u)
            col[i] -= k
        if not rest.is_zero():
            return None
        cols.append(col)
    return [[cols[j][i] for j in range(len(cols))] for i in range(len(ms))]


def transitivity_report(ctx: SiltContext, g: MutationGraph, samples: int = 60, seed: int = 0) -> dict:
    """``G(K, L) = G(K, M) G(M, L)`` on sampled chains ``K >= M >= L`` (``K = A`` included)."""
    rng = random.Random(seed)
    keys = g.sorted_keys()
    a = g.roots.get("A")
    chains = []
    for mk in keys:
        for lk in keys:
            if ctx.order_geq(g.nodes[mk], g.nodes[lk]):
                chains.append((a, mk, lk))
    extra = []
    for _ in range(samples):
        kk, mk, lk = (rng.choice(keys) for _ in range(3))
        if ctx.order_geq(g.nodes[kk], g.nodes[mk]) and ctx.order_geq(g.nodes[mk], g.nodes[lk]):
            extra.append((kk, mk, lk))
    chains = chains[: samples] + extra
    cache: dict[tuple[Key, Key], list] = {}

    def rel(x, y):
        if (x, y) not in cache:
            cache[(x, y)] = relative_gmatrix(ctx, g.nodes[x], g.nodes[y])
        return cache[(x, y)]

    for kk, mk, lk in chains:
        gkm, gml, gkl = rel(kk, mk), rel(mk, lk), rel(kk, lk)
        if gkm is None or gml is None or gkl is None:
            return {"ok": False, "chain": (kk, mk, lk), "reason": "approximation cocone not in add M"}
        if mat_mul(gkm, gml) != gkl:
            return {"ok": False, "chain": (kk, mk, lk), "reason": "G(K,M)G(M,L) != G(K,L)"}
    # with K = A the relative matrix must be the absolute G-matrix; rows of
    # the relative one follow A's sorted key (e_n first), so reorder
    for key in keys:
        if a is None:
            break
        absolute = g.nodes[key].gmatrix()
        expected = [absolute[e.index(1)] for e in a]
        if rel(a, key) != expected:
            return {"ok": False, "node": key, "reason": "G(A, M) differs from the g-vector matrix"}
    return {"ok": True, "chains": len(chains)}


def sign_coherence_report(g: MutationGraph) -> dict:
    bad = [k for k in g.sorted_keys() if not is_sign_coherent(k)]
    return {"ok": not bad, "bad": bad[:5]}


def source_sink_report(g: MutationGraph) -> dict:
    src, snk = g.sources(), g.sinks()
    ok = src == [g.roots.get("A")] and snk == [g.roots.get("A[1]")]
    return {"ok": ok, "sources": src, "sinks": snk}


class _H0Cache:
    def __init__(self, ctx: SiltContext):
        self.ctx = ctx
        self._mods: dict[int, object] = {}

    def module(self, x: TwoTermComplex):
        if id(x) not in self._mods:
            self._mods[id(x)] = cokernel(self.ctx.alg, x) if x.p0 else zero_rep(self.ctx.alg)
        return self._mods[id(x)]

    def of(self, obj: SiltingObject):
        mods = [self.module(x) for x in obj.summands if x.p0]
        return direct_sum(mods) if mods else zero_rep(self.ctx.alg)


def h0_bridge_report(ctx: SiltContext, g: MutationGraph, seed: int = 0) -> dict:
    """``H^0`` of every silting object is a support tau-tilting pair."""
    for key in g.sorted_keys():
        obj = g.nodes[key]
        pair = h0_pair(ctx.alg, obj.summands)
        res = is_tau_rigid_pair(pair.module, pair.support)
        if not res:
            return {"ok": False, "node": key, "reason": res.witness}
        m = count_indec_summands(pair.module, seed=seed)
        p = len(set(pair.support))
        if m + p != ctx.n:
            return {"ok": False, "node": key, "reason": f"|M| + |P| = {m} + {p} != {ctx.n}"}
    return {"ok": True, "nodes": len(g.nodes)}


def fac_order_report(ctx: SiltContext, g: MutationGraph) -> dict:
    """``M >= N`` in the silting order iff ``Fac H^0 M`` contains ``H^0 N``."""
    cache = _H0Cache(ctx)
    keys = g.sorted_keys()
    for a in keys:
        ma = cache.of(g.nodes[a])
        for b in keys:
            silt = ctx.order_geq(g.nodes[a], g.nodes[b])
            fac = all(fac_contains(ma, cache.module(x)) for x in g.nodes[b].summands if x.p0)
            if silt != fac:
                return {"ok": False, "pair": (a, b), "silting_order": silt, "fac_order": fac}
    return {"ok": True, "pairs": len(keys) ** 2}


def property_suite(ctx: SiltContext, g: MutationGraph, samples: int = 1000, seed: int = 0) -> dict[str, dict]:
    """All graph-level property checks for a finite exploration."""
    from .fan import cone_intersection_check, fan_coverage_sample, probe_all

    g.require_finite()
    keys = g.sorted_keys()
    out: dict[str, dict] = {}
    out["g_identities"] = g_identity_report(g)
    out["g_transitivity"] = transitivity_report(ctx, g, seed=seed)
    out["sign_coherence"] = sign_coherence_report(g)
    out["mutation_involution"] = involution_report(ctx, g)
    out["regularity"] = regularity_report(g)
    out["source_sink"] = source_sink_report(g)
    lp = longest_path_stats(g)
    out["path_bound"] = {"ok": lp["ok"], **lp}
    out["h0_bridge"] = h0_bridge_report(ctx, g, seed=seed)
    out["fac_order"] = fac_order_report(ctx, g)
    bad = [(a, b) for a in keys for b in keys if not cone_intersection_check(a, b)["ok"]]
    out["cone_intersections"] = {"ok": not bad, "pairs": len(keys) ** 2, "bad": bad[:3]}
    out["fan_coverage"] = fan_coverage_sample(g, samples, seed)
    probe = probe_all(ctx, g)
    probe.pop("rows")
    out["order_cone_probe"] = probe
    return out
