"""Command line interface: ``tautilt COMMAND (--example NAME | --algebra FILE) [options]``.

Exit codes: 0 all checks passed, 1 a check failed, 2 usage or parse error,
3 the exploration did not close but the command needed the whole silting set.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .algebra import NotFiniteDimensional, QuiverError
from .checks import fac_order_report, property_suite, source_sink_report
from .complexes import MutationFailed
from .delta import (
    ShellingFailed,
    build_delta,
    check_pure_nonbranching,
    delta_report,
    dual_dot,
    dual_graph,
)
from .explorer import explore, hasse_dot, longest_path_stats, regularity_report
from .fan import cone_intersection_check, fan_coverage_sample, fan_dumps, fan_off, halfspace_report, probe_all
from .representations import count_indec_summands, h0_pair, is_tau_rigid_pair
from .spec import BUNDLED, ParseError, bundled, parse_spec
from .silting import SiltContext

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
COMMANDS = ("explore", "delta", "fan", "modules", "probe-order", "report")


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tautilt", description="Two-term silting complexes of bound quiver algebras.")
    p.add_argument("command", choices=COMMANDS)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--algebra", metavar="FILE", help="algebra-spec JSON file")
    src.add_argument("--example", metavar="NAME", help=f"bundled example: {', '.join(sorted(BUNDLED))}")
    p.add_argument("--budget", type=int, default=10000, help="maximum number of silting objects (default 10000)")
    p.add_argument("--max-depth", type=int, default=None, help="stop after this many mutation steps")
    p.add_argument("--start", choices=("A", "A[1]"), default="A")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=1000, help="fan coverage samples (default 1000)")
    p.add_argument("--out", metavar="PREFIX", help="write artifacts to PREFIX.json / PREFIX.dot / PREFIX.off")
    p.add_argument("--json", action="store_true", help="emit JSON")
    p.add_argument("--dot", action="store_true", help="emit DOT")
    p.add_argument("--validate", action="store_true", help="cross-check isomorphism and indecomposability")
    return p


class _Emitter:
    def __init__(self, args):
        self.args = args
        self.lines: list[str] = []

    def say(self, text: str = "") -> None:
        self.lines.append(text)

    def artifact(self, suffix: str, text: str) -> None:
        if self.args.out:
            Path(f"{self.args.out}.{suffix}").write_text(text)
            self.say(f"wrote {self.args.out}.{suffix}")
        else:
            sys.stdout.write(text if text.endswith("\n") else text + "\n")

    def flush(self) -> None:
        quiet = (self.args.json or self.args.dot) and not self.args.out
        out = sys.stderr if quiet else sys.stdout
        for line in self.lines:
            print(line, file=out)


def _load(args):
    if args.example:
        spec = bundled(args.example)
    else:
        try:
            text = Path(args.algebra).read_text()
        except OSError as e:
            raise ParseError(f"{args.algebra}: {e.strerror}") from None
        spec = parse_spec(text, name=Path(args.algebra).stem)
    return spec, spec.build()


def _key_str(key) -> str:
    return "{" + ", ".join("(" + ",".join(str(x) for x in v) + ")" for v in key) + "}"


def _check_line(em: _Emitter, name: str, ok: bool, detail: str = "") -> bool:
    em.say(f"  [{'pass' if ok else 'FAIL'}] {name}{(': ' + detail) if detail else ''}")
    return ok


def run_command(argv: list[str] | None = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    if args.budget < 1:
        print("error: --budget must be positive", file=sys.stderr)
        return EXIT_USAGE
    em = _Emitter(args)
    t0 = time.perf_counter()
    try:
        spec, alg = _load(args)
        code = _dispatch(args, spec, alg, em)
    except (ParseError, QuiverError, NotFiniteDimensional) as e:
        em.flush()
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (MutationFailed, ShellingFailed, AssertionError) as e:
        em.say(f"check failed: {e}")
        em.flush()
        return EXIT_CHECK
    em.flush()
    # timing goes to stderr so that stdout artifacts stay byte-identical
    print(f"time {time.perf_counter() - t0:.2f}s", file=sys.stderr)
    return code


def _dispatch(args, spec, alg, em: _Emitter) -> int:
    ctx = SiltContext(alg, validate=args.validate)
    name = spec.name or "algebra"
    em.say(f"algebra {name}: n = {alg.n}, dim = {alg.dim}, Loewy bound L = {alg.nilpotency}")
    g = explore(ctx, start=args.start, budget=args.budget, max_depth=args.max_depth)
    em.say(f"{g.verdict}, {len(g.nodes)} nodes, {len(g.edges)} edges")
    cmd = args.command
    if cmd == "explore":
        return _explore(args, ctx, g, em)
    if cmd == "modules":
        return _modules(args, ctx, g, em)
    if cmd == "fan" and not g.finite:
        return _fan_partial(args, g, em)
    if not g.finite:
        em.say("the exploration did not close; this command needs the whole silting set")
        return EXIT_BUDGET
    if cmd == "delta":
        return _delta(args, g, em)
    if cmd == "fan":
        return _fan(args, g, em)
    if cmd == "probe-order":
        return _probe(args, ctx, g, em)
    return _report(args, ctx, g, em)


def _explore(args, ctx, g, em) -> int:
    ok = True
    if g.finite:
        lp = longest_path_stats(g)
        em.say(f"l(A) = {lp['ell']}, bound {lp['nodes']} <= {lp['bound']}")
        ok &= _check_line(em, "n-regular", regularity_report(g)["ok"])
        ok &= _check_line(em, "unique source A and sink A[1]", source_sink_report(g)["ok"])
        ok &= _check_line(em, "path-length bound", lp["ok"])
    for k in g.sorted_keys()[:60]:
        em.say(f"  depth {g.depth[k]:>3}  {_key_str(k)}")
    if len(g.nodes) > 60:
        em.say(f"  ... {len(g.nodes) - 60} more")
    if args.json:
        em.artifact("json", g.dumps(ctx.alg))
    if args.dot:
        em.artifact("dot", hasse_dot(g))
    if not ok:
        return EXIT_CHECK
    return EXIT_OK if g.finite else EXIT_BUDGET


def _delta(args, g, em) -> int:
    r = delta_report(g)
    em.say(f"Delta: {r['vertices']} vertices, {r['max_faces']} max faces, {r['codim1_faces']} codim-1 faces")
    em.say(f"face counts {r['face_counts']}, chi = {r['chi']}, reduced homology {r['homology']}")
    ok = _check_line(em, "pure and non-branching", r["pure_nonbranching"])
    ok &= _check_line(em, "sphere homology", r["sphere"])
    ok &= _check_line(em, "shelling from the silting order", r["shelling"])
    ok &= _check_line(em, "rank-2 cycles span the dual cycle space", r["rank2"])
    d = build_delta(g)
    if args.json:
        em.artifact("json", d.dumps())
    if args.dot:
        em.artifact("dot", dual_dot(d, dual_graph(d)))
    return EXIT_OK if ok else EXIT_CHECK


def _fan(args, g, em) -> int:
    keys = g.sorted_keys()
    bad = [(a, b) for a in keys for b in keys if not cone_intersection_check(a, b)["ok"]]
    cov = fan_coverage_sample(g, args.samples, args.seed)
    ok = _check_line(em, "cone intersections", not bad, f"{len(keys) ** 2} pairs")
    ok &= _check_line(em, "fan coverage", cov["ok"], cov["fraction"])
    if args.json:
        em.artifact("json", fan_dumps(g))
    if args.out and g.n == 3:
        em.artifact("off", fan_off(g))
    return EXIT_OK if ok else EXIT_CHECK


def _fan_partial(args, g, em) -> int:
    sign = 1 if args.start == "A" else -1
    hs = halfspace_report(g, sign)
    cov = fan_coverage_sample(g, args.samples, args.seed)
    rel = ">=" if sign > 0 else "<="
    ok = _check_line(em, f"every g-vector has coordinate sum {rel} 0", hs["ok"])
    ok &= _check_line(em, "no sampled point interior to two cones", cov["ok"], f"{cov['covered']} of {cov['samples']} samples in explored cones")
    if args.json:
        em.artifact("json", fan_dumps(g))
    return EXIT_CHECK if not ok else EXIT_BUDGET


def _modules(args, ctx, g, em) -> int:
    ok = True
    rows = []
    for k in g.sorted_keys():
        pair = h0_pair(ctx.alg, g.nodes[k].summands)
        rigid = is_tau_rigid_pair(pair.module, pair.support)
        m = count_indec_summands(pair.module, seed=args.seed)
        p = len(set(pair.support))
        good = bool(rigid) and m + p == ctx.n
        ok &= good
        support = ",".join(ctx.alg.quiver.vertices[i] for i in sorted(set(pair.support)))
        em.say(f"  {_key_str(k)}: dim H0 = {list(pair.module.dims)}, P = {{{support}}}, |M|+|P| = {m}+{p}{'' if good else '  FAIL ' + rigid.witness}")
        rows.append({"gmatrix_key": [list(v) for v in k], "module_dims": list(pair.module.dims), "support": sorted(set(pair.support)), "summands": m, "tau_rigid": bool(rigid)})
    fo = fac_order_report(ctx, g)
    ok &= _check_line(em, "H0 gives support tau-tilting pairs", ok)
    ok &= _check_line(em, "silting order agrees with Fac order", fo["ok"])
    if args.json:
        em.artifact("json", json.dumps({"pairs": rows, "fac_order": fo["ok"]}, indent=2, sort_keys=True))
    return EXIT_OK if ok else EXIT_CHECK


def _probe(args, ctx, g, em) -> int:
    r = probe_all(ctx, g)
    em.say(f"probed {r['pairs']} ordered pairs; pairs with a converse gap: {r['pairs_with_converse_gaps']}")
    ok = _check_line(em, "proved implications (1)=>(2)=>(3), (5)=>(6)=>(7)", r["ok"])
    for a, b, v in r["violations"][:5]:
        em.say(f"    M = {_key_str(a)}, N = {_key_str(b)}: {v}")
    if args.json:
        rows = r["rows"]
        em.artifact("json", json.dumps({"pairs": rows, "ok": r["ok"]}, indent=2, sort_keys=True))
    return EXIT_OK if ok else EXIT_CHECK


def _report(args, ctx, g, em) -> int:
    lp = longest_path_stats(g)
    dr = delta_report(g)
    em.say(f"l(A) = {lp['ell']}")
    em.say(f"Delta: V = {dr['vertices']}, max faces = {dr['max_faces']}, codim-1 faces = {dr['codim1_faces']}, chi = {dr['chi']}, reduced homology {dr['homology']}")
    checks = {
        "pure_nonbranching": dr["pure_nonbranching"],
        "sphere_homology": dr["sphere"],
        "shelling": dr["shelling"],
        "rank2_cycles": dr["rank2"],
    }
    suite = property_suite(ctx, g, samples=args.samples, seed=args.seed)
    checks.update({k: v["ok"] for k, v in suite.items()})
    for k, v in checks.items():
        _check_line(em, k, v)
    d = build_delta(g)
    report = {
        "algebra": {"name": em.args.example or Path(em.args.algebra).stem, "n": ctx.n, "dim": ctx.alg.dim},
        "verdict": g.verdict,
        "nodes": len(g.nodes),
        "edges": len(g.edges),
        "ell": lp["ell"],
        "delta": {
            "vertices": dr["vertices"],
            "gvectors": [list(v) for v in d.vertices],
            "face_counts": dr["face_counts"],
            "max_faces": dr["max_faces"],
            "codim1_faces": dr["codim1_faces"],
            "chi": dr["chi"],
            "homology": dr["homology"],
            "pure_nonbranching": check_pure_nonbranching(d)["ok"],
        },
        "checks": checks,
    }
    if args.json:
        em.artifact("json", json.dumps(report, indent=2, sort_keys=True))
    if args.dot:
        em.artifact("dot", hasse_dot(g))
    return EXIT_OK if all(checks.values()) else EXIT_CHECK


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
