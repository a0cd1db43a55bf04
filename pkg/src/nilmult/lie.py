"""Operators relative to the Liezation functor, plus the absolute lower central series."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Ideal, LeibnizAlgebra, Morphism, certify_ideal, ideal_closure, quotient
from .errors import AssertionFail, NotAnIdeal
from .exactlin import Subspace, relations

# brackets of subspaces beyond this many pairs skip the redundant square check
_SQUARE_CHECK_LIMIT = 4096


def _space(x: Ideal | Subspace) -> Subspace:
    return x.space if isinstance(x, Ideal) else x


def ann(A: LeibnizAlgebra) -> Ideal:
    """Span of all squares ``[x, x]``, via ``[b_i, b_i]`` and polarizations."""
    vecs = []
    for i in range(A.dim):
        vecs.append(A.sc.get((i, i), {}))
        for j in range(i + 1, A.dim):
            vecs.append(A.lie_bracket_sparse({i: 1}, {j: 1}))
    return certify_ideal(A, Subspace(A.dim, (v for v in vecs if v)))


def liezation(A: LeibnizAlgebra) -> tuple[LeibnizAlgebra, Morphism]:
    lie_quot, proj = quotient(A, ann(A), name=f"{A.name}_Lie")
    if not lie_quot.is_lie():
        raise AssertionFail("Liezation is not antisymmetric")
    return lie_quot, proj


def lie_commutator(A: LeibnizAlgebra, first: Ideal | Subspace, second: Ideal | Subspace) -> Subspace:
    """Raw span of ``[u, v] + [v, u]`` over basis pairs of the two subspaces."""
    ms, ns = _space(first).vectors(), _space(second).vectors()
    return Subspace(A.dim, (A.lie_bracket_sparse(m, n) for m in ms for n in ns))


def commutator_with_algebra(A: LeibnizAlgebra, ideal: Ideal | Subspace) -> Subspace:
    """``[ideal, A]_Lie``.

    When ``A`` records a generating set, this is the ideal generated by
    ``[i, g]_Lie`` with ``g`` a generator, because
    ``[z, [u, v]]_Lie = [[z, u]_Lie, v]_Lie - [[z, v], u]_Lie`` for ``z`` in an ideal.
    Without generators the raw span over basis pairs is returned.
    """
    sp = _space(ideal)
    if A.generators is None:
        return lie_commutator(A, sp, Subspace.full(A.dim))
    seed = (A.lie_bracket_sparse(v, g) for v in sp.vectors() for g in A.generators)
    return ideal_closure(A, [w for w in seed if w]).space


def lie_centralizer(A: LeibnizAlgebra, acting: Ideal | Subspace, target: Ideal | Subspace) -> Subspace:
    """``{q : [q, m] + [m, q] in target for all m in acting}``."""
    ms = _space(acting).vectors()
    ns = _space(target)
    if not ms:
        return Subspace.full(A.dim)
    width = A.dim
    columns = []
    for i in range(A.dim):
        col = {}
        for b, m in enumerate(ms):
            r = ns.normal_form(A.lie_bracket_sparse({i: 1}, m))
            for k, x in r.items():
                col[b * width + k] = x
        columns.append(col)
    return Subspace(A.dim, relations(columns, width * len(ms)))


def lie_center(A: LeibnizAlgebra) -> Subspace:
    return lie_centralizer(A, Subspace.full(A.dim), Subspace.zero(A.dim))


@dataclass
class SeriesReport:
    kind: str
    terms: list[Subspace]
    cls: int | None
    stabilized: bool
    relative_to: Subspace | None = None

    @property
    def dims(self) -> list[int]:
        return [t.dim for t in self.terms]


def _check_ideal(A: LeibnizAlgebra, sp: Subspace, what: str) -> None:
    try:
        certify_ideal(A, sp)
    except NotAnIdeal as exc:
        raise AssertionFail(f"{what} is not a two-sided ideal") from exc


def lower_lie_series(A: LeibnizAlgebra, relative: Ideal | Subspace | None = None) -> SeriesReport:
    """``γ_1 = relative`` (default ``A``), ``γ_{i+1} = [γ_i, A]_Lie``; terms listed until the first repeat."""
    start = Subspace.full(A.dim) if relative is None else _space(relative)
    if relative is not None:
        _check_ideal(A, start, "relative ideal")
    terms = [start]
    while True:
        cur = terms[-1]
        nxt = commutator_with_algebra(A, cur)
        _check_ideal(A, nxt, f"term {len(terms) + 1} of the lower Lie-central series")
        if not nxt <= cur:
            raise AssertionFail("lower Lie-central series is not decreasing")
        if cur.dim * cur.dim <= _SQUARE_CHECK_LIMIT and cur.dim:
            if not lie_commutator(A, cur, cur) <= nxt:
                raise AssertionFail("consecutive Lie-central layer is not Lie-abelian")
        if nxt.dim == cur.dim:
            break
        terms.append(nxt)
    # class k means the (k+1)-st term is the first zero one
    cls = len(terms) - 1 if terms[-1].dim == 0 else None
    return SeriesReport("lower", terms, cls, True, None if relative is None else start)


def upper_lie_series(A: LeibnizAlgebra) -> SeriesReport:
    full = Subspace.full(A.dim)
    terms = [Subspace.zero(A.dim)]
    while True:
        nxt = lie_centralizer(A, full, terms[-1])
        _check_ideal(A, nxt, f"term {len(terms)} of the upper Lie-central series")
        if nxt.dim == terms[-1].dim:
            break
        terms.append(nxt)
    cls = len(terms) - 1 if terms[-1].dim == A.dim else None
    return SeriesReport("upper", terms, cls, True)


def upper_term(A: LeibnizAlgebra, c: int) -> Subspace:
    """``ζ_c^Lie(A)``."""
    full = Subspace.full(A.dim)
    z = Subspace.zero(A.dim)
    for _ in range(c):
        nz = lie_centralizer(A, full, z)
        if nz.dim == z.dim:
            break
        z = nz
    return z


def lower_term(A: LeibnizAlgebra, c: int, relative: Ideal | Subspace | None = None) -> Subspace:
    """The ``c``-th term of the lower Lie-central series relative to ``relative`` (``c = 1`` gives it back)."""
    sp = Subspace.full(A.dim) if relative is None else _space(relative)
    for _ in range(c - 1):
        if sp.dim == 0:
            break
        sp = commutator_with_algebra(A, sp)
    return sp


def lie_class(A: LeibnizAlgebra) -> int | None:
    return lower_lie_series(A).cls


def is_maximal_lie_class(A: LeibnizAlgebra) -> bool:
    s = lower_lie_series(A)
    c = s.cls
    if c is None or c < 2:
        return False
    d = s.dims
    if A.dim - d[1] != 2:
        return False
    return all(d[j - 1] - d[j] == 1 for j in range(2, c + 1))


# absolute (one-sided) series


def lower_central_series(A: LeibnizAlgebra, limit: int | None = None) -> list[Subspace]:
    """``γ_1 = A``, ``γ_{i+1} = [γ_i, A] + [A, γ_i]``, until the first repeat."""
    terms = [Subspace.full(A.dim)]
    gens = A.generator_vectors()
    while limit is None or len(terms) <= limit:
        cur = terms[-1]
        vecs = []
        for v in cur.vectors():
            for g in gens:
                vecs.append(A.bracket_sparse(v, g))
                vecs.append(A.bracket_sparse(g, v))
        if A.generators is None:
            nxt = Subspace(A.dim, (w for w in vecs if w))
        else:
            nxt = ideal_closure(A, [w for w in vecs if w]).space
        if nxt.dim == cur.dim:
            break
        terms.append(nxt)
    return terms


def absolute_class(A: LeibnizAlgebra) -> int | None:
    """Least ``k`` with ``γ_{k+1}(A) = 0``; ``None`` if not nilpotent."""
    t = lower_central_series(A)
    if t[-1].dim != 0:
        return None
    return len(t) - 1
