import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tautilt.algebra import (
    Arrow,
    NotFiniteDimensional,
    Quiver,
    QuiverError,
    Relation,
    algebra_from_data,
    build_algebra,
    radical_of_endo,
)
from tautilt.exact import ONE, Q
from tautilt.spec import BUNDLED, bundled_algebra


def labels(alg):
    return sorted(alg.path_label(b) for b in range(alg.dim))


def test_path_algebra_a2():
    alg = bundled_algebra("a2-path")
    assert alg.dim == 3
    assert labels(alg) == ["a", "e1", "e2"]


def test_a3_with_zero_relation():
    alg = bundled_algebra("a3-rel")
    assert alg.dim == 5
    assert labels(alg) == ["e1", "e2", "e3", "x", "y"]
    assert alg.nilpotency == 2


def test_symmetric_local_algebra_dimension():
    alg = bundled_algebra("sym-local")
    assert alg.dim == 8
    lengths = sorted(len(p) for _, p in alg.basis)
    assert lengths == [0, 0, 1, 1, 1, 1, 2, 2]
    assert alg.nilpotency == 3


def test_jacobian_algebra_dimension():
    alg = bundled_algebra("jacobian-b")
    # each e_i A e_j is 4-dimensional
    assert alg.dim == 36
    assert all(len(alg.paths_between(i, j)) == 4 for i in range(3) for j in range(3))


def test_hom_spaces_right_module_convention():
    a2 = bundled_algebra("a2-path")
    assert len(a2.hom_space(1, 0)) == 1  # Hom(P2, P1) holds the arrow
    assert len(a2.hom_space(0, 1)) == 0
    a3 = bundled_algebra("a3-rel")
    assert len(a3.hom_space(1, 0)) == 1  # the class of x, Hom(P2, P1)
    assert len(a3.hom_space(0, 1)) == 0
    for i in range(a3.n):
        assert i in a3.hom_space(i, i)


@pytest.mark.parametrize("name", sorted(BUNDLED))
def test_structure_invariants(name):
    alg = bundled_algebra(name)
    assert alg.dim == sum(len(alg.paths_between(i, j)) for i in range(alg.n) for j in range(alg.n))
    assert alg.check_associativity(samples=300)
    unit = alg.unit()
    for b in range(alg.dim):
        assert alg.mul(unit, {b: ONE}) == {b: ONE} == alg.mul({b: ONE}, unit)
    for i in range(alg.n):
        for j in range(alg.n):
            assert alg.mul({i: ONE}, {j: ONE}) == ({i: ONE} if i == j else {})
    # arrows are nilpotent: any product of L radical basis elements vanishes
    for b in range(alg.n, alg.dim):
        x = {b: ONE}
        for _ in range(alg.nilpotency):
            x = alg.mul(x, {b: ONE})
        assert x == {}


def test_loop_without_relations_is_infinite():
    q = Quiver(("1",), (Arrow("x", "1", "1"),))
    with pytest.raises(NotFiniteDimensional):
        build_algebra(q, (), max_len=6)


def test_loop_with_square_zero():
    alg = algebra_from_data(["1"], [("x", "1", "1")], [[(1, ["x", "x"])]])
    assert alg.dim == 2


def test_relation_admissibility():
    q = Quiver(("1", "2"), (Arrow("a", "1", "2"),))
    with pytest.raises(QuiverError):
        build_algebra(q, (Relation(((ONE, ("a",)),)),))


def test_relation_composability():
    q = Quiver(("1", "2", "3"), (Arrow("x", "1", "2"), Arrow("y", "2", "3")))
    with pytest.raises(QuiverError):
        build_algebra(q, (Relation(((ONE, ("y", "x")),)),))


def test_quiver_validation():
    with pytest.raises(QuiverError):
        Quiver(("1", "1"), ())
    with pytest.raises(QuiverError):
        Quiver(("1",), (Arrow("a", "1", "2"),))
    with pytest.raises(QuiverError):
        Quiver(("1", "2"), (Arrow("a", "1", "2"), Arrow("a", "2", "1")))


def test_commutativity_relation_identifies_paths():
    alg = bundled_algebra("sym-local")
    q = alg.quiver
    x1, y1, x2, y2 = (q.arrow_index(n) for n in ("x1", "y1", "x2", "y2"))
    basis = {p: b for b, (_, p) in enumerate(alg.basis)}

    def path(*arrows):
        out = None
        for a in arrows:
            elem = {basis[(a,)]: ONE}
            out = elem if out is None else alg.mul(out, elem)
        return out

    assert path(x1, y2) == path(y1, x2) != {}
    assert path(x1, x2) == {}


def test_radical_of_endo_examples():
    assert radical_of_endo([[[1]]]) == []
    upper = [[[1, 0], [0, 0]], [[0, 0], [0, 1]], [[0, 1], [0, 0]]]
    assert radical_of_endo(upper) == [[0, 0, 1]]
    full = [[[1, 0], [0, 0]], [[0, 1], [0, 0]], [[0, 0], [1, 0]], [[0, 0], [0, 1]]]
    assert radical_of_endo(full) == []


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_random_associativity(data):
    alg = bundled_algebra(data.draw(st.sampled_from(["jacobian-b", "sym-local", "preproj-a2"])))
    coeff = st.integers(-2, 2)
    def elem():
        return {b: Q(c) for b in range(alg.dim) if (c := data.draw(coeff))}
    a, b, c = elem(), elem(), elem()
    assert alg.mul(alg.mul(a, b), c) == alg.mul(a, alg.mul(b, c))
