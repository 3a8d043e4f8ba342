import pytest

from tautilt.complexes import Complex, TwoTermComplex, hom_k, hom_shift_dim
from tautilt.exact import ONE
from tautilt.oracle import ext_dim
from tautilt.silting import EmptyPool, SiltContext, bongartz_complete, is_sign_coherent
from tautilt.spec import bundled_algebra

from conftest import context, graph


def _arrow(alg, src, tgt):
    (b,) = alg.paths_between(src, tgt)
    return b


def _x(alg):
    """``P2 -> P1`` along the arrow, the complex with g-vector (1, -1)."""
    return TwoTermComplex((1,), (0,), [[{_arrow(alg, 0, 1): ONE}]])


def test_stalk_and_shift_gvectors():
    assert TwoTermComplex.stalk([0, 0, 2]).g_vector(3) == (2, 0, 1)
    assert TwoTermComplex.shifted([1]).g_vector(3) == (0, -1, 0)


def test_hom_between_projectives(a2):
    p1, p2 = TwoTermComplex.stalk([0]), TwoTermComplex.stalk([1])
    assert len(hom_k(a2, p2, p1)) == 1
    assert len(hom_k(a2, p1, p2)) == 0
    assert hom_k(a2, p1, p2, shift=2) == []
    with pytest.raises(ValueError):
        hom_k(a2, p1, p2, shift=-1)


def test_shift_hom(a2):
    x = _x(a2)
    p2 = TwoTermComplex.stalk([1])
    assert hom_shift_dim(a2, x, x) == 0
    assert hom_shift_dim(a2, x, p2) == 1  # P2 -> P2 identity is not null-homotopic
    # Hom_K(P2[1], P1[1]) = Hom(P2, P1) is one-dimensional
    assert hom_shift_dim(a2, TwoTermComplex.shifted([1]), TwoTermComplex.stalk([0])) == 1
    assert hom_shift_dim(a2, TwoTermComplex.shifted([0]), TwoTermComplex.stalk([1])) == 0


def test_minimize_contractible(a2):
    c = TwoTermComplex((0,), (0,), [[{0: ONE}]])
    assert not c.is_minimal(a2)
    assert c.minimize(a2).is_zero()


def test_minimize_keeps_radical_part(a2):
    c = TwoTermComplex((0, 1), (0,), [[{0: ONE}, {_arrow(a2, 0, 1): ONE}]])
    m = c.minimize(a2)
    assert m.g_vector(2) == c.g_vector(2) == (0, -1)
    assert m.p1 == (1,) and m.p0 == ()


def test_complex_minimize_three_terms(a2):
    c = Complex({-2: (0,), -1: (0,), 0: (1,)}, {-2: [[{0: ONE}]], -1: [[{}]]})
    m = c.minimize(a2)
    assert {k: tuple(v) for k, v in m.terms.items() if v} == {0: (1,)}


@pytest.mark.parametrize("name", ["a2-path", "a3-rel", "preproj-a2", "sym-local", "jacobian-b"])
def test_ext_agrees_with_dense(name):
    alg = bundled_algebra(name)
    ctx = SiltContext(alg)
    objs = [ctx.projective(i) for i in range(alg.n)] + [ctx.shifted_projective(i) for i in range(alg.n)]
    a = ctx.stalk_a()
    for k in range(alg.n):
        new, _ = ctx.mutate(a, k)
        objs.append(new.summands[k])
    for x in objs:
        for y in objs:
            assert ctx.ext(x, y) == ext_dim(alg, x, y)


def test_mutate_a2(a2):
    ctx = SiltContext(a2, validate=True)
    a = ctx.stalk_a()
    m1, d1 = ctx.mutate(a, 0)
    assert m1.key == ((-1, 0), (0, 1)) and d1 == "left"
    m2, _ = ctx.mutate(a, 1)
    assert m2.key == ((1, -1), (1, 0))
    assert ctx.is_silting(m1) and ctx.is_silting(m2)
    assert ctx.order_geq(a, m1) and not ctx.order_geq(m1, a)


def test_mutation_is_an_involution(a3):
    ctx = SiltContext(a3)
    a = ctx.stalk_a()
    for k in range(3):
        m, _ = ctx.mutate(a, k)
        back, direction = ctx.mutate(m, k)
        assert back.key == a.key and direction == "right"


def test_shifted_a_mutates_right(a2):
    ctx = SiltContext(a2)
    m, direction = ctx.mutate(ctx.shifted_a(), 0)
    assert direction == "right"
    assert ctx.order_geq(m, ctx.shifted_a())


def test_sym_local_first_mutation():
    ctx = context("sym-local")
    m, _ = ctx.mutate(ctx.stalk_a(), 0)
    assert (-1, 2) in m.gvectors


def test_left_approximation_of_p2(a2):
    ctx = SiltContext(a2)
    p1, p2 = ctx.projective(0), ctx.projective(1)
    targets, maps = ctx.left_approximation(p2, [p1])
    assert targets == [p1] and len(maps) == 1
    assert ctx.left_approximation(p1, [p2]) == ([], [])


def test_split_off_and_multiplicity(a2):
    ctx = SiltContext(a2)
    p1, p2 = ctx.projective(0), ctx.projective(1)
    z = TwoTermComplex.stalk([0, 1])
    assert ctx.summand_multiplicity(z, p1) == 1
    rest = ctx.split_off(z, p1)
    assert rest.g_vector(2) == (0, 1)
    x = _x(a2)
    assert ctx.summand_multiplicity(x, p2) == 0
    assert ctx.split_off(x, p2) is None
    assert ctx.summand_multiplicity(TwoTermComplex.stalk([0, 0, 1]), p1) == 2


def test_count_summands(a2):
    ctx = SiltContext(a2)
    assert ctx.count_summands(TwoTermComplex.stalk([0, 0, 1])) == 2
    assert ctx.count_summands(_x(a2).direct_sum(TwoTermComplex.stalk([0]))) == 2
    assert ctx.count_summands(TwoTermComplex((), (), [])) == 0


def test_isomorphic(a2):
    ctx = SiltContext(a2)
    x = _x(a2)
    y = TwoTermComplex((1,), (0,), [[{_arrow(a2, 0, 1): ONE * 3}]])
    assert ctx.isomorphic(x, y)
    assert not ctx.isomorphic(x, TwoTermComplex.stalk([0]))


def test_bongartz(a2):
    ctx = context("a2-path")
    g = graph("a2-path")
    pool = list(g.nodes.values())
    p2 = ctx.projective(1)
    top = bongartz_complete(ctx, [p2], pool)
    assert top.key == g.roots["A"]
    sx = ctx.intern(_x(ctx.alg))
    top = bongartz_complete(ctx, [sx], pool)
    assert top.key == ((1, -1), (1, 0))
    with pytest.raises(EmptyPool):
        bongartz_complete(ctx, [p2], [])


def test_sign_coherence_helper():
    assert is_sign_coherent([(1, 0), (1, -1)])
    assert not is_sign_coherent([(1, 0), (-1, 1)])
