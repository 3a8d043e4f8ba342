import json

import pytest

from tautilt.explorer import (
    BUDGET_EXHAUSTED,
    FINITE,
    NotFinite,
    explore,
    gvector_sums,
    hasse_dot,
    involution_report,
    key_from_gmatrix,
    load_graph_keys,
    longest_path_stats,
    regularity_report,
)
from tautilt.oracle import oracle_silting_keys
from tautilt.spec import bundled_algebra

from conftest import FINITE_EXAMPLES, context, graph

PENTAGON = [
    ((-1, 0), (0, -1)),
    ((-1, 0), (0, 1)),
    ((0, -1), (1, -1)),
    ((0, 1), (1, 0)),
    ((1, -1), (1, 0)),
]


def test_pentagon():
    g = graph("a2-path")
    assert g.verdict == FINITE
    assert g.sorted_keys() == PENTAGON
    assert len(g.edges) == 5 and all(g.degree(k) == 2 for k in g.nodes)
    assert g.sources() == [((0, 1), (1, 0))]
    assert g.sinks() == [((-1, 0), (0, -1))]
    assert len(g.hasse) == 5


def test_pentagon_hasse_is_two_chains():
    g = graph("a2-path")
    a = g.roots["A"]
    lengths = sorted(len(_chain(g, s)) for s in g.successors(a))
    assert lengths == [2, 3]


def _chain(g, k):
    out = [k]
    while g.successors(out[-1]):
        (nxt,) = g.successors(out[-1])
        out.append(nxt)
    return out


def test_same_nodes_from_both_roots():
    for name in FINITE_EXAMPLES:
        a, b = graph(name, "A"), graph(name, "A[1]")
        assert a.sorted_keys() == b.sorted_keys()
        assert sorted(a.hasse) == sorted(b.hasse)


def test_deterministic_dump():
    alg = bundled_algebra("a3-rel")
    first = explore(alg).dumps(alg)
    second = explore(alg).dumps(alg)
    assert first == second


def test_json_round_trip():
    g = graph("a3-rel")
    doc = load_graph_keys(g.dumps())
    assert doc["keys"] == g.sorted_keys()
    assert len(doc["edges"]) == len(g.edges) == 18
    assert doc["hasse"] == sorted((s, t) for s, t, _ in g.hasse)
    assert json.loads(g.dumps())["verdict"] == FINITE


def test_key_from_gmatrix():
    assert key_from_gmatrix([[1, 1], [0, -1]]) == ((1, -1), (1, 0))


def test_dot_output():
    dot = hasse_dot(graph("a2-path"))
    assert dot.startswith("digraph hasse {") and dot.count("->") == 5
    assert 'xlabel="A"' in dot and 'xlabel="A[1]"' in dot


def test_a3_counts():
    g = graph("a3-rel")
    assert len(g.nodes) == 12 and len(g.edges) == 18 and len(g.summand_keys()) == 8
    lp = longest_path_stats(g)
    assert lp["ok"] and lp["ell"] == 5


@pytest.mark.parametrize("name", FINITE_EXAMPLES)
def test_regular_and_involutive(name):
    g = graph(name)
    assert regularity_report(g)["ok"]
    assert involution_report(context(name), g)["ok"]


@pytest.mark.parametrize("name", FINITE_EXAMPLES)
def test_matches_oracle(name):
    oracle = oracle_silting_keys(bundled_algebra(name))
    assert oracle["silting_keys"] == graph(name).sorted_keys()


def test_budget_exhausted():
    g = explore(context("sym-local"), budget=40)
    assert g.verdict == BUDGET_EXHAUSTED and len(g.nodes) == 40
    with pytest.raises(NotFinite):
        longest_path_stats(g)


def test_sym_local_branches():
    ga = explore(context("sym-local"), budget=40)
    xs = {(1 - i, i) for i in range(-30, 30)}
    assert all(set(k) <= xs for k in ga.nodes)
    gb = explore(context("sym-local"), start="A[1]", budget=40)
    ys = {(i - 1, -i) for i in range(-30, 30)}
    assert all(set(k) <= ys for k in gb.nodes)
    assert not set(ga.nodes) & set(gb.nodes)


def test_max_depth():
    g = explore(context("jacobian-b"), max_depth=2)
    assert g.verdict == BUDGET_EXHAUSTED
    assert len(g.nodes) == 1 + 3 + 6
    assert min(gvector_sums(g)) >= 0


def test_one_simple():
    g = graph("one-simple")
    assert g.sorted_keys() == [((-1,),), ((1,),)]
    assert g.hasse == [(((1,),), ((-1,),), 0)]


def test_budget_validation():
    with pytest.raises(ValueError):
        explore(context("a2-path"), budget=0)
    with pytest.raises(ValueError):
        explore(context("a2-path"), start="B")
