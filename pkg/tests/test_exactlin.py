from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nilmult.errors import InclusionViolated
from nilmult.exactlin import (
    Mat,
    Subspace,
    complement,
    intersect,
    kernel,
    quotient_data,
    rank,
    rref,
    solve_affine,
    subspace_sum,
)
from oracles import nullspace, rref_rows


def span(n, *vecs):
    return Subspace.span(n, vecs)


def e(n, i):
    return tuple(1 if k == i else 0 for k in range(n))


# worked examples


def test_rref_examples():
    assert rref(Mat.of([[2, 0], [0, 3]])).tolist() == [[1, 0], [0, 1]]
    assert rref(Mat.of([[1, 2], [2, 4]])).tolist() == [[1, 2]]
    assert rref(Mat.of([[0, 1], [1, 1]])).tolist() == [[1, 0], [0, 1]]


def test_kernel_examples():
    assert kernel(Mat.identity(3)).dim == 0
    assert kernel(Mat.zeros(2, 2)) == Subspace.full(2)
    k = kernel(Mat.of([[1, 1, 0]]))
    assert k == span(3, (1, -1, 0), (0, 0, 1))


def test_sum_examples():
    a = span(3, (1, 2, 3))
    assert subspace_sum(a, Subspace.zero(3)) == a
    assert subspace_sum(span(3, e(3, 0)), span(3, e(3, 1))) == span(3, e(3, 0), e(3, 1))
    assert subspace_sum(span(2, (1, 1)), span(2, (1, -1))) == Subspace.full(2)


def test_intersect_examples():
    a = span(3, (1, 2, 3), (0, 1, 1))
    assert intersect(a, Subspace.full(3)) == a
    assert intersect(span(3, e(3, 0), e(3, 1)), span(3, e(3, 1), e(3, 2))) == span(3, e(3, 1))
    assert intersect(span(2, (1, 1)), span(2, (1, 0))).dim == 0


def test_quotient_examples():
    a = span(2, e(2, 0), e(2, 1))
    assert quotient_data(a, a).dim == 0
    qd = quotient_data(a, span(2, e(2, 1)))
    assert qd.coset_reps.tolist() == [[1, 0]]
    qd = quotient_data(span(2, (1, 0), (1, 1)), span(2, (1, 1)))
    assert qd.dim == 1
    assert any(qd.project((1, 0)))
    assert not any(qd.project((1, 1)))


def test_quotient_rejects_non_inclusion():
    with pytest.raises(InclusionViolated):
        quotient_data(span(2, (1, 0)), span(2, (0, 1)))
    with pytest.raises(InclusionViolated):
        complement(span(2, (1, 0)), span(2, (0, 1)))


def test_complement_examples():
    big = span(3, (1, 0, 0), (0, 1, 1))
    assert complement(big, Subspace.zero(3)) == big
    assert complement(span(2, e(2, 0), e(2, 1)), span(2, e(2, 0))) == span(2, e(2, 1))
    small = span(3, (1, 1, 0))
    c = complement(Subspace.full(3), small)
    assert c.dim == 2
    assert subspace_sum(c, small) == Subspace.full(3)
    assert intersect(c, small).dim == 0
    # the canonical pivot of small is its first coordinate; the others are kept
    assert c == span(3, e(3, 1), e(3, 2))


def test_solve_affine():
    assert solve_affine([({0: 1, 1: 1}, 3), ({1: 1}, 1)], 2) == {0: 2, 1: 1}
    assert solve_affine([({0: 1}, 1), ({0: 1}, 2)], 1) is None


def test_rationals_are_exact():
    m = Mat.of([[Fraction(1, 3), Fraction(1, 6)], [1, Fraction(1, 2)]])
    assert rank(m) == 1
    assert rref(m).tolist() == [[1, Fraction(1, 2)]]


# properties

small_int = st.integers(-3, 3)


@st.composite
def vectors(draw, n, count=None):
    k = draw(st.integers(0, n + 1)) if count is None else count
    return [tuple(draw(small_int) for _ in range(n)) for _ in range(k)]


@st.composite
def subspace_pairs(draw):
    n = draw(st.integers(1, 6))
    a = Subspace.span(n, draw(vectors(n)))
    b = Subspace.span(n, draw(vectors(n)))
    return a, b


@given(subspace_pairs())
def test_dimension_law(pair):
    a, b = pair
    assert subspace_sum(a, b).dim + intersect(a, b).dim == a.dim + b.dim
    assert intersect(a, b) <= a and intersect(a, b) <= b
    assert a <= subspace_sum(a, b) and b <= subspace_sum(a, b)


@given(subspace_pairs())
def test_equality_is_mutual_containment(pair):
    a, b = pair
    assert (a == b) == (a <= b and b <= a)
    assert (a == b) == (a.basis == b.basis)


@given(st.integers(1, 5).flatmap(lambda n: vectors(n)))
def test_rref_matches_oracle_and_is_idempotent(rows):
    if not rows:
        return
    m = Mat.of(rows)
    r = rref(m)
    assert rref(r) == r
    assert r.tolist() == rref_rows([list(x) for x in rows])
    assert kernel(m).dim == m.ncols - rank(m)
    assert kernel(m).dim == len(nullspace([list(x) for x in rows], m.ncols))


@given(subspace_pairs())
def test_quotient_complement_consistency(pair):
    a, b = pair
    big = subspace_sum(a, b)
    small = b
    qd = quotient_data(big, small)
    c = complement(big, small)
    assert qd.dim == big.dim - small.dim == c.dim
    images = [qd.project_sparse(v) for v in c.vectors()]
    assert Subspace(qd.dim, images).dim == qd.dim
    for v in small.vectors():
        assert not qd.project_sparse(v)
    for v in qd.reps_sparse():
        assert v in big


def test_explicit_zero_entries_are_ignored():
    assert Subspace(3, [{0: 0, 1: 3}]) == span(3, (0, 1, 0))
    assert Subspace(2, [{0: 0}]).dim == 0
