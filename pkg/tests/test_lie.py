import pytest
from hypothesis import given
from hypothesis import strategies as st

from nilmult import catalog
from nilmult.algebra import LeibnizAlgebra, abelian, certify_ideal, from_table
from nilmult.exactlin import Subspace
from nilmult.lie import (
    absolute_class,
    ann,
    is_maximal_lie_class,
    lie_center,
    lie_centralizer,
    lie_class,
    lie_commutator,
    liezation,
    lower_central_series,
    lower_lie_series,
    lower_term,
    upper_lie_series,
    upper_term,
)

CATALOG = ["q2", "g_a", "g_b", "heisenberg", "q2+K", "abelian(1)", "abelian(3)", "free(1,4)", "free(2,3)"]


def span(n, *vecs):
    return Subspace.span(n, vecs)


def test_ann_examples(q2, g_b):
    assert ann(abelian(3)).dim == 0
    assert ann(q2).space == span(2, (1, 0))
    assert ann(g_b).space == span(4, (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))


def test_liezation_examples(q2, g_b):
    h = catalog.get("heisenberg")
    lie, _ = liezation(h)
    assert lie.dim == 3 and lie.sc == h.sc
    assert liezation(q2)[0].dim == 1 and not liezation(q2)[0].sc
    assert liezation(g_b)[0].dim == 1


def test_commutator_examples(q2, g_a):
    assert lie_commutator(q2, Subspace.zero(2), Subspace.full(2)).dim == 0
    assert lie_commutator(q2, Subspace.full(2), Subspace.full(2)) == span(2, (1, 0))
    assert lie_commutator(g_a, Subspace.full(4), Subspace.full(4)) == span(4, (0, 0, 1, 0), (0, 0, 0, 1))


def test_centralizer_examples(q2, g_a):
    assert lie_centralizer(q2, Subspace.zero(2), Subspace.zero(2)) == Subspace.full(2)
    assert lie_center(q2) == span(2, (1, 0))
    assert lie_center(g_a) == span(4, (0, 0, 0, 1))


def test_lower_series_examples(q2, g_a, g_b):
    s = lower_lie_series(q2)
    assert s.dims == [2, 1, 0] and s.cls == 2
    assert s.terms[1] == span(2, (1, 0))
    s = lower_lie_series(g_b)
    assert s.dims == [4, 3, 2, 1, 0] and s.cls == 4
    assert s.terms[2] == span(4, (0, 0, 1, 0), (0, 0, 0, 1))
    assert s.terms[3] == span(4, (0, 0, 0, 1))
    s = lower_lie_series(g_a)
    assert s.dims == [4, 2, 1, 0] and s.cls == 3
    assert s.terms[1] == span(4, (0, 0, 1, 0), (0, 0, 0, 1))
    assert s.terms[2] == span(4, (0, 0, 0, 1))


def test_relative_series(g_b):
    rel = span(4, (0, 0, 1, 0), (0, 0, 0, 1))
    s = lower_lie_series(g_b, rel)
    assert s.dims == [2, 1, 0]
    assert lower_term(g_b, 1, rel) == rel


def test_upper_series_examples(g_a):
    s = upper_lie_series(abelian(2))
    assert s.dims == [0, 2] and s.cls == 1
    s = upper_lie_series(g_a)
    assert s.terms[1] == span(4, (0, 0, 0, 1))
    assert s.terms[2] == span(4, (0, 0, 1, 0), (0, 0, 0, 1))
    assert s.terms[3] == Subspace.full(4) and s.cls == 3


def test_lie_nilpotent_but_not_nilpotent():
    # every Lie algebra has Lie-class at most 1, even the non-nilpotent 2-dim one
    nonab = from_table("r2", 2, {(1, 2): {2: 1}, (2, 1): {2: -1}})
    assert lie_class(nonab) == 1
    assert upper_lie_series(nonab).cls == 1
    assert absolute_class(nonab) is None


def test_zero_algebra_has_class_zero():
    zero = LeibnizAlgebra("0", 0, {})
    assert lie_class(zero) == 0
    assert absolute_class(zero) == 0


def test_maximal_class(q2, g_a, g_b):
    assert is_maximal_lie_class(g_a)
    assert not is_maximal_lie_class(g_b)
    assert not is_maximal_lie_class(q2)
    assert not is_maximal_lie_class(abelian(2))  # class 1 is excluded


@pytest.mark.parametrize("name", CATALOG)
def test_class_agreement_and_ann(name):
    A = catalog.get(name)
    assert lower_lie_series(A).cls == upper_lie_series(A).cls
    assert lower_term(A, 2) == ann(A).space


@pytest.mark.parametrize("name", CATALOG)
def test_series_terms_are_ideals_and_monotone(name):
    A = catalog.get(name)
    low = lower_lie_series(A).terms
    up = upper_lie_series(A).terms
    for t in low + up:
        certify_ideal(A, t)
    assert all(b <= a for a, b in zip(low, low[1:]))
    assert all(a <= b for a, b in zip(up, up[1:]))


def test_upper_terms_mirror_lower_terms_for_maximal_class(g_a):
    c = lie_class(g_a)
    for i in range(c + 1):
        assert upper_term(g_a, i) == lower_term(g_a, c - i + 1)


@pytest.mark.parametrize("d,m", [(1, 5), (2, 3), (2, 4), (3, 3)])
def test_free_absolute_series_closed_form(d, m):
    trunc = catalog.get(f"free({d},{m})")
    words = [label for label in trunc.labels]
    terms = lower_central_series(trunc)
    for k, t in enumerate(terms, start=1):
        expected = Subspace(trunc.dim, ({i: 1} for i, w in enumerate(words) if len(w) >= k))
        assert t == expected
    assert absolute_class(trunc) == m


@given(st.sampled_from(CATALOG), st.integers(1, 4))
def test_centralizer_of_lower_term_contains_upper(name, c):
    A = catalog.get(name)
    # ζ_c is exactly the set killed into 0 by c iterated Lie-commutators
    z = upper_term(A, c)
    assert lower_term(A, c + 1, z).dim == 0
