"""Breadth-first exploration of the two-term silting mutation graph."""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import BoundQuiverAlgebra
from .silting import GVector, SiltContext, SiltingObject

FINITE = "Finite"
BUDGET_EXHAUSTED = "BudgetExhausted"

Key = tuple  # sorted tuple of g-vectors


class NotFinite(RuntimeError):
    pass


class IncomparableMutation(AssertionError):
    pass


@dataclass
class MutationGraph:
    n: int
    start: str
    nodes: dict[Key, SiltingObject] = field(default_factory=dict)
    depth: dict[Key, int] = field(default_factory=dict)
    edges: set[frozenset] = field(default_factory=set)
    hasse: list[tuple[Key, Key, int]] = field(default_factory=list)
    expanded: set = field(default_factory=set)
    roots: dict[str, Key] = field(default_factory=dict)
    verdict: str = BUDGET_EXHAUSTED

    @property
    def finite(self) -> bool:
        return self.verdict == FINITE

    def require_finite(self) -> None:
        if not self.finite:
            raise NotFinite("exploration did not close; the silting set may be infinite")

    def sorted_keys(self) -> list[Key]:
        return sorted(self.nodes)

    def neighbours(self, key: Key) -> list[Key]:
        return sorted(next(iter(e - {key})) for e in self.edges if key in e)

    def degree(self, key: Key) -> int:
        return sum(1 for e in self.edges if key in e)

    def summand_keys(self) -> list[GVector]:
        """All indecomposable summands (by g-vector) occurring in some node."""
        return sorted({g for k in self.nodes for g in k})

    def edge_label(self, a: Key, b: Key) -> int:
        """Position in ``a``'s sorted key of the summand exchanged along ``a - b``."""
        (gone,) = set(a) - set(b)
        return a.index(gone)

    def sources(self) -> list[Key]:
        targets = {t for _, t, _ in self.hasse}
        return [k for k in self.sorted_keys() if k not in targets]

    def sinks(self) -> list[Key]:
        srcs = {s for s, _, _ in self.hasse}
        return [k for k in self.sorted_keys() if k not in srcs]

    def successors(self, key: Key) -> list[Key]:
        return sorted(t for s, t, _ in self.hasse if s == key)

    def to_json(self, alg: BoundQuiverAlgebra | None = None) -> dict:
        index = {k: i for i, k in enumerate(self.sorted_keys())}
        nodes = []
        for k in self.sorted_keys():
            rec = {"id": index[k], "gmatrix": [list(r) for r in _gmatrix(k, self.n)], "depth": self.depth[k]}
            if alg is not None:
                rec["summands"] = [x.to_json(alg) for x in sorted(self.nodes[k].summands, key=lambda x: x.g_vector(self.n))]
            nodes.append(rec)
        return {
            "n": self.n,
            "start": self.start,
            "verdict": self.verdict,
            "roots": {name: index[k] for name, k in sorted(self.roots.items()) if k in index},
            "nodes": nodes,
            "edges": sorted([index[a], index[b], self.edge_label(a, b)] for a, b in map(sorted, self.edges)),
            "hasse": sorted([index[s], index[t], lab] for s, t, lab in self.hasse),
        }

    def dumps(self, alg: BoundQuiverAlgebra | None = None) -> str:
        return json.dumps(self.to_json(alg), indent=2, sort_keys=True)


def _gmatrix(key: Key, n: int) -> list[list[int]]:
    return [[key[j][i] for j in range(len(key))] for i in range(n)]


def key_from_gmatrix(gmat: Sequence[Sequence[int]]) -> Key:
    n = len(gmat)
    cols = len(gmat[0]) if n else 0
    return tuple(sorted(tuple(int(gmat[i][j]) for i in range(n)) for j in range(cols)))


def load_graph_keys(doc: dict | str) -> dict:
    """Canonical keys, edges and verdict of a JSON graph dump."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    keys = {rec["id"]: key_from_gmatrix(rec["gmatrix"]) for rec in doc["nodes"]}
    return {
        "n": doc["n"],
        "verdict": doc["verdict"],
        "keys": sorted(keys.values()),
        "edges": sorted(tuple(sorted((keys[a], keys[b]))) for a, b, _ in doc["edges"]),
        "hasse": sorted((keys[s], keys[t]) for s, t, _ in doc["hasse"]),
    }


def explore(
    alg: BoundQuiverAlgebra | SiltContext,
    start: str = "A",
    budget: int = 10000,
    max_depth: int | None = None,
) -> MutationGraph:
    """Breadth-first search over mutations, deduplicating by canonical key.

    Layers are expanded in sorted key order so that the result does not
    depend on discovery order.  The verdict is ``Finite`` only when the
    frontier empties; hitting the node budget or ``max_depth`` leaves a
    partial graph with verdict ``BudgetExhausted``.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    ctx = alg if isinstance(alg, SiltContext) else SiltContext(alg)
    n = ctx.n
    if start == "A":
        root = ctx.stalk_a()
    elif start == "A[1]":
        root = ctx.shifted_a()
    else:
        raise ValueError(f"start must be 'A' or 'A[1]', not {start!r}")

    g = MutationGraph(n=n, start=start)
    g.nodes[root.key] = root
    g.depth[root.key] = 0
    g.roots[start] = root.key
    layer = [root.key]
    exhausted = False
    d = 0
    while layer and not exhausted:
        if max_depth is not None and d >= max_depth:
            exhausted = True
            break
        nxt: list[Key] = []
        for key in sorted(layer):
            m = g.nodes[key]
            found = []
            for k in range(n):
                new, _ = ctx.mutate(m, k)
                found.append(new)
            for new in sorted(found, key=lambda s: s.key):
                if new.key not in g.nodes:
                    if len(g.nodes) >= budget:
                        exhausted = True
                        break
                    g.nodes[new.key] = new
                    g.depth[new.key] = d + 1
                    nxt.append(new.key)
                g.edges.add(frozenset((key, new.key)))
            if exhausted:
                break
            g.expanded.add(key)
        layer = nxt
        d += 1
    g.verdict = BUDGET_EXHAUSTED if exhausted else FINITE
    for other, name in ((ctx.stalk_a(), "A"), (ctx.shifted_a(), "A[1]")):
        if other.key in g.nodes:
            g.roots[name] = other.key
    _orient(ctx, g)
    return g


def _orient(ctx: SiltContext, g: MutationGraph) -> None:
    arrows = []
    for e in g.edges:
        a, b = sorted(e)
        ma, mb = g.nodes[a], g.nodes[b]
        ab, ba = ctx.order_geq(ma, mb), ctx.order_geq(mb, ma)
        if ab == ba:
            raise IncomparableMutation(f"mutation pair {a} / {b} is not strictly comparable")
        s, t = (a, b) if ab else (b, a)
        arrows.append((s, t, g.edge_label(s, t)))
    g.hasse = sorted(arrows)


def longest_path_stats(g: MutationGraph) -> dict:
    """Longest directed path from ``A`` and the resulting size bound."""
    g.require_finite()
    memo: dict[Key, int] = {}
    order = _topological(g)
    for k in reversed(order):
        memo[k] = max((1 + memo[t] for t in g.successors(k)), default=0)
    ell = memo[g.roots.get("A", order[0])]
    bound = sum(g.n ** i for i in range(ell + 1))
    return {"ell": ell, "nodes": len(g.nodes), "bound": bound, "ok": len(g.nodes) <= bound}


def _topological(g: MutationGraph) -> list[Key]:
    """Linear extension of the Hasse order (larger first), ties broken by key."""
    indeg = {k: 0 for k in g.nodes}
    for _, t, _ in g.hasse:
        indeg[t] += 1
    heap = [k for k, v in indeg.items() if v == 0]
    heapq.heapify(heap)
    out = []
    while heap:
        k = heapq.heappop(heap)
        out.append(k)
        for t in g.successors(k):
            indeg[t] -= 1
            if indeg[t] == 0:
                heapq.heappush(heap, t)
    if len(out) != len(g.nodes):
        raise AssertionError("Hasse quiver has a directed cycle")
    return out


def _key_label(key: Key) -> str:
    return " ".join("(" + ",".join(str(x) for x in v) + ")" for v in key)


def hasse_dot(g: MutationGraph) -> str:
    keys = g.sorted_keys()
    index = {k: i for i, k in enumerate(keys)}
    lines = ["digraph hasse {", "  rankdir=TB;"]
    for k in keys:
        extra = ""
        for name, rk in sorted(g.roots.items()):
            if rk == k:
                extra = f", xlabel=\"{name}\""
        lines.append(f"  n{index[k]} [label=\"{_key_label(k)}\"{extra}];")
    for s, t, lab in g.hasse:
        lines.append(f"  n{index[s]} -> n{index[t]} [label=\"{lab}\"];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def regularity_report(g: MutationGraph) -> dict:
    bad = [k for k in g.expanded if g.degree(k) != g.n]
    return {"ok": not bad, "bad": sorted(bad)}


def involution_report(ctx: SiltContext, g: MutationGraph, limit: int | None = None) -> dict:
    """``mu_k'(mu_k(M)) = M`` where ``k'`` indexes the incoming summand."""
    bad = []
    for key in g.sorted_keys()[:limit]:
        m = g.nodes[key]
        for k in range(g.n):
            new, _ = ctx.mutate(m, k)
            back, _ = ctx.mutate(new, k)
            if back.key != key:
                bad.append((key, k))
    return {"ok": not bad, "bad": bad}


def gvector_sums(g: MutationGraph) -> list[int]:
    return [sum(v) for v in g.summand_keys()]


__all__ = [
    "BUDGET_EXHAUSTED",
    "FINITE",
    "IncomparableMutation",
    "MutationGraph",
    "NotFinite",
    "explore",
    "gvector_sums",
    "hasse_dot",
    "involution_report",
    "key_from_gmatrix",
    "load_graph_keys",
    "longest_path_stats",
    "regularity_report",
]
