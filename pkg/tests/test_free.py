from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nilmult import catalog
from nilmult.algebra import abelian, check_leibniz, kernel_of
from nilmult.errors import LevelTooSmall, NotNilpotent, ResourceLimit
from nilmult.exactlin import Subspace
from nilmult.free import evaluation_hom, free_dim, free_truncation, word_bracket
from oracles import closed_form_bracket


def test_dimensions():
    assert free_truncation(2, 2).dim == 6
    assert free_dim(3, 3) == 39
    with pytest.raises(ResourceLimit):
        free_truncation(3, 9)
    assert free_truncation(3, 9, max_dim=10 ** 5).dim == free_dim(3, 9)


def test_one_generator_brackets():
    trunc = free_truncation(1, 3)
    A = trunc.algebra
    x, xx, xxx = ({i: 1} for i in range(3))
    assert A.bracket_sparse(x, x) == xx
    assert A.bracket_sparse(xx, x) == xxx
    assert A.bracket_sparse(x, xx) == {}
    assert A.bracket_sparse(xx, xx) == {}
    assert A.bracket_sparse(xxx, x) == {}


def test_free_1_4_is_g_b(g_b):
    trunc = free_truncation(1, 4)
    assert trunc.algebra.sc == g_b.sc


def test_word_bracket_examples():
    assert word_bracket((0,), (0,), 2) == {(0, 0): 1}
    assert word_bracket((0,), (0, 0), 3) == {}
    # [xy, yx] = xyyx - xyxy
    assert word_bracket((0, 1), (1, 0), 4) == {(0, 1, 1, 0): 1, (0, 1, 0, 1): -1}
    assert word_bracket((0, 1), (1, 0), 3) == {}


@pytest.mark.parametrize("d,m", [(1, 5), (2, 3), (2, 4), (3, 3)])
def test_free_truncations_pass_identity(d, m):
    assert check_leibniz(free_truncation(d, m).algebra)


@pytest.mark.parametrize("d,m", [(2, 5), (3, 4)])
def test_recursion_matches_closed_form(d, m):
    words = [w for n in range(1, m + 1) for w in product(range(d), repeat=n)]
    for u in words:
        for v in words:
            if len(u) + len(v) <= m:
                assert word_bracket(u, v, m) == closed_form_bracket(u, v, m), (u, v)


def test_grading():
    trunc = free_truncation(2, 4)
    for (i, j), v in trunc.algebra.sc.items():
        for k in v:
            assert trunc.degree(k) == trunc.degree(i) + trunc.degree(j)


def test_evaluation_examples(q2, g_a):
    trunc = free_truncation(1, 2)
    f = evaluation_hom(trunc, [(1,)], abelian(1))
    assert kernel_of(f).space == Subspace(2, [{1: 1}])
    trunc = free_truncation(1, 4)
    f = evaluation_hom(trunc, [(0, 1)], q2)
    assert f.columns[:2] == ({1: 1}, {0: 1})
    assert kernel_of(f).space == Subspace(4, [{2: 1}, {3: 1}])
    trunc = free_truncation(2, 4)
    f = evaluation_hom(trunc, [(1, 0, 0, 0), (0, 1, 0, 0)], g_a)
    assert f.is_surjective()
    assert kernel_of(f).dim == 30 - 4


def test_evaluation_rejections(q2):
    nonab = catalog.get("heisenberg")
    with pytest.raises(LevelTooSmall):
        evaluation_hom(free_truncation(1, 1), [(0, 1)], q2)
    from nilmult.algebra import from_table

    r2 = from_table("r2", 2, {(1, 2): {2: 1}, (2, 1): {2: -1}})
    with pytest.raises(NotNilpotent):
        evaluation_hom(free_truncation(2, 3), [(1, 0), (0, 1)], r2)
    assert evaluation_hom(free_truncation(2, 2), [(1, 0, 0), (0, 1, 0)], nonab).is_hom


targets = st.sampled_from(["q2", "g_a", "g_b", "heisenberg", "q2+K", "abelian(2)"])


@given(targets, st.integers(1, 2), st.data())
def test_universal_property(name, d, data):
    A = catalog.get(name)
    m = 4
    imgs = [tuple(data.draw(st.integers(-2, 2)) for _ in range(A.dim)) for _ in range(d)]
    f = evaluation_hom(free_truncation(d, m), imgs, A)
    assert f.is_hom
