"""The simplicial complex Delta(A) of two-term presilting complexes.

Vertices are the indecomposable summands (identified by g-vector) that occur
in the explored silting objects, and the maximal faces are the summand sets
of the silting objects.  Every subset of a silting summand set is presilting,
so the complex is the downward closure of its maximal faces.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .exact import rank, smith_diagonal
from .explorer import Key, MutationGraph


class ShellingFailed(AssertionError):
    def __init__(self, msg: str, position: int, face: tuple):
        super().__init__(msg)
        self.position = position
        self.face = face


Face = tuple  # sorted tuple of vertex indices


@dataclass
class SimplicialComplex:
    n: int
    vertices: list  # g-vectors
    max_faces: list[Face]
    labels: list[Key] = field(default_factory=list)  # canonical key per max face

    def faces_of_size(self, k: int) -> list[Face]:
        if k < 0:
            return []
        return sorted({sub for f in self.max_faces for sub in combinations(f, k)})

    def face_counts(self) -> list[int]:
        """``f_0, f_1, ...``: number of faces of each dimension."""
        return [len(self.faces_of_size(k + 1)) for k in range(self.n)]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "vertices": [list(v) for v in self.vertices],
            "max_faces": [list(f) for f in self.max_faces],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def build_delta(g: MutationGraph) -> SimplicialComplex:
    g.require_finite()
    verts = g.summand_keys()
    index = {v: i for i, v in enumerate(verts)}
    keys = g.sorted_keys()
    faces = [tuple(sorted(index[v] for v in k)) for k in keys]
    return SimplicialComplex(g.n, verts, faces, keys)


def check_pure_nonbranching(d: SimplicialComplex) -> dict:
    """Purity (all maximal faces have ``n`` vertices) and the closed pseudomanifold condition."""
    for f in d.max_faces:
        if len(f) != d.n:
            return {"ok": False, "reason": "impure", "face": f}
    count: dict[Face, int] = {}
    for f in d.max_faces:
        for sub in combinations(f, d.n - 1):
            count[sub] = count.get(sub, 0) + 1
    for sub in sorted(count):
        if count[sub] != 2:
            return {"ok": False, "reason": "boundary" if count[sub] == 1 else "branching", "face": sub, "count": count[sub]}
    return {"ok": True, "codim1": len(count)}


def _boundary(lower: list[Face], upper: list[Face]) -> list[list[int]]:
    """Matrix of the simplicial boundary ``C(upper) -> C(lower)`` (rows: lower faces)."""
    pos = {f: i for i, f in enumerate(lower)}
    m = [[0] * len(upper) for _ in lower]
    for j, f in enumerate(upper):
        for k in range(len(f)):
            m[pos[f[:k] + f[k + 1:]]][j] = (-1) ** k
    return m


def euler_and_homology(d: SimplicialComplex) -> dict:
    """Euler characteristic and reduced integral homology ``H~_0 .. H~_{n-1}``.

    Uses the augmented chain complex (the empty face in degree -1), so the
    result is reduced homology.  Torsion comes from Smith normal forms.
    """
    chains = [d.faces_of_size(k) for k in range(d.n + 1)]  # chains[k] = faces of dimension k-1
    chi = sum((-1) ** k * len(chains[k + 1]) for k in range(d.n))
    ranks = [0] * (d.n + 2)
    torsion: list[list[int]] = [[] for _ in range(d.n + 2)]
    # bd[k]: C_k -> C_{k-1}, k = dimension, k from 0 (to the empty face) to n-1
    for k in range(d.n):
        m = _boundary(chains[k], chains[k + 1])
        if not m or not m[0]:
            continue
        diag = smith_diagonal(m)
        ranks[k] = len(diag)
        torsion[k] = [x for x in diag if x > 1]
    homology = []
    for k in range(d.n):
        betti = len(chains[k + 1]) - ranks[k] - ranks[k + 1]
        homology.append({"rank": betti, "torsion": torsion[k + 1]})
    sphere = all(h["torsion"] == [] for h in homology) and [h["rank"] for h in homology] == [0] * (d.n - 1) + [1]
    return {"chi": chi, "homology": homology, "sphere": sphere, "face_counts": [len(c) for c in chains[1:]]}


def homology_string(h: dict) -> str:
    parts = []
    for x in h["homology"]:
        s = "0" if x["rank"] == 0 else ("Z" if x["rank"] == 1 else f"Z^{x['rank']}")
        for t in x["torsion"]:
            s = f"Z/{t}" if s == "0" else s + f"+Z/{t}"
        parts.append(s)
    return "(" + ", ".join(parts) + ")"


def shelling_order(g: MutationGraph) -> list[Key]:
    """Linear extension of the silting order with smaller objects first, ties by key."""
    indeg = {k: 0 for k in g.nodes}
    preds: dict[Key, list[Key]] = {k: [] for k in g.nodes}
    for s, t, _ in g.hasse:
        indeg[s] += 1
        preds[t].append(s)
    heap = [k for k, v in indeg.items() if v == 0]
    heapq.heapify(heap)
    out = []
    while heap:
        k = heapq.heappop(heap)
        out.append(k)
        for s in preds[k]:
            indeg[s] -= 1
            if indeg[s] == 0:
                heapq.heappush(heap, s)
    if len(out) != len(g.nodes):
        raise AssertionError("Hasse quiver has a directed cycle")
    return out


def verify_shelling(d: SimplicialComplex, order: Sequence[Face]) -> None:
    """Raise :class:`ShellingFailed` unless ``order`` is a shelling.

    For each ``j >= 1`` the faces ``alpha_j & beta`` (``beta`` earlier) must
    have their maximal members all of size ``n - 1``.
    """
    order = list(order)
    for j in range(1, len(order)):
        f = set(order[j])
        meets = {tuple(sorted(f & set(b))) for b in order[:j]}
        maximal = [m for m in meets if not any(set(m) < set(o) for o in meets)]
        bad = [m for m in maximal if len(m) != d.n - 1]
        if bad:
            raise ShellingFailed(
                f"face {order[j]} meets the earlier faces in {sorted(bad)[0]} of size {len(sorted(bad)[0])}",
                j,
                order[j],
            )


def shelling_from_order(d: SimplicialComplex, g: MutationGraph) -> list[Face]:
    face_of = dict(zip(d.labels, d.max_faces))
    order = [face_of[k] for k in shelling_order(g)]
    verify_shelling(d, order)
    return order


# ---------------------------------------------------------------------------
# dual graph and rank-2 cycles


@dataclass
class DualGraphWithPolygons:
    nodes: list[Face]
    edges: list[tuple[int, int]]
    polygons: dict[Face, list[int]]  # codim-2 face -> cyclic list of node indices


def dual_graph(d: SimplicialComplex) -> DualGraphWithPolygons:
    nodes = list(d.max_faces)
    by_ridge: dict[Face, list[int]] = {}
    for i, f in enumerate(nodes):
        for sub in combinations(f, d.n - 1):
            by_ridge.setdefault(sub, []).append(i)
    edges = sorted({tuple(sorted(v)) for v in by_ridge.values() if len(v) == 2})
    polygons: dict[Face, list[int]] = {}
    if d.n >= 2:
        for tau in d.faces_of_size(d.n - 2):
            members = [i for i, f in enumerate(nodes) if set(tau) <= set(f)]
            mset = set(members)
            adj = {i: [] for i in members}
            for a, b in edges:
                if a in mset and b in mset:
                    adj[a].append(b)
                    adj[b].append(a)
            polygons[tau] = _cycle(adj)
    return DualGraphWithPolygons(nodes, edges, polygons)


def _cycle(adj: dict[int, list[int]]) -> list[int]:
    """Cyclic order of a 2-regular connected graph, or ``[]`` if it is not one."""
    if not adj or any(len(v) != 2 for v in adj.values()):
        return []
    start = min(adj)
    cyc = [start]
    prev, cur = start, min(adj[start])
    while cur != start:
        cyc.append(cur)
        a, b = adj[cur]
        prev, cur = cur, (b if a == prev else a)
    return cyc if len(cyc) == len(adj) else []


def _connected(nv: int, edges: Sequence[tuple[int, int]]) -> bool:
    if nv == 0:
        return True
    adj: dict[int, list[int]] = {i: [] for i in range(nv)}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = {0}
    stack = [0]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == nv


def rank2_cycle_check(dg: DualGraphWithPolygons) -> dict:
    """Do the polygon boundaries span the cycle space of the dual graph (over Q)?"""
    nv, ne = len(dg.nodes), len(dg.edges)
    if not _connected(nv, dg.edges):
        return {"ok": False, "reason": "dual graph is disconnected"}
    cycle_rank = ne - nv + 1
    broken = [tau for tau, cyc in dg.polygons.items() if not cyc]
    if broken:
        return {"ok": False, "reason": "polygon is not a single cycle", "face": broken[0]}
    epos = {e: i for i, e in enumerate(dg.edges)}
    rows = []
    for cyc in dg.polygons.values():
        v = [0] * ne
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            v[epos[(min(a, b), max(a, b))]] += 1 if a < b else -1
        rows.append(v)
    r = rank(rows) if rows else 0
    return {"ok": r == cycle_rank, "cycle_rank": cycle_rank, "polygon_rank": r, "polygons": len(rows)}


def dual_dot(d: SimplicialComplex, dg: DualGraphWithPolygons) -> str:
    lines = ["graph dual {"]
    for i, f in enumerate(dg.nodes):
        label = " ".join("(" + ",".join(str(x) for x in d.vertices[v]) + ")" for v in f)
        lines.append(f"  f{i} [label=\"{label}\"];")
    for a, b in dg.edges:
        lines.append(f"  f{a} -- f{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def delta_report(g: MutationGraph) -> dict:
    d = build_delta(g)
    pn = check_pure_nonbranching(d)
    h = euler_and_homology(d)
    try:
        shelling_from_order(d, g)
        shell = {"ok": True}
    except ShellingFailed as e:
        shell = {"ok": False, "position": e.position, "face": list(e.face), "message": str(e)}
    r2 = rank2_cycle_check(dual_graph(d)) if d.n >= 2 else {"ok": True, "cycle_rank": 0, "polygon_rank": 0, "polygons": 0}
    return {
        "ok": pn["ok"] and h["sphere"] and shell["ok"] and r2["ok"],
        "vertices": len(d.vertices),
        "max_faces": len(d.max_faces),
        "codim1_faces": len(d.faces_of_size(d.n - 1)),
        "face_counts": h["face_counts"],
        "chi": h["chi"],
        "homology": homology_string(h),
        "sphere": h["sphere"],
        "pure_nonbranching": pn["ok"],
        "shelling": shell["ok"],
        "rank2": r2["ok"],
        "details": {"pure_nonbranching": pn, "shelling": shell, "rank2": r2},
    }
