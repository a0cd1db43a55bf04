"""Exact rational linear algebra over sparse coordinate vectors.

Vectors are dicts ``{column: coefficient}`` with ``int`` or ``Fraction``
coefficients and no explicit zeros.  The workhorse is :class:`Echelon`, an
incremental fraction-free echelon basis whose pivot is each row's largest
column.  :class:`Subspace` wraps a finished echelon and exposes the canonical
reduced row echelon form (smallest-column pivots, pivots equal to one) on
demand, which is what equality, hashing and deterministic complements use.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Callable, Iterable, Iterator, Sequence, Union

from .errors import AmbientMismatch, InclusionViolated

Coeff = Union[int, Fraction]
SVec = dict[int, Coeff]

Rational = Fraction


def rational(x) -> Coeff:
    """Normalize to an ``int`` when integral, else a reduced ``Fraction``."""
    if isinstance(x, int):
        return x
    q = Fraction(x)
    return q.numerator if q.denominator == 1 else q


def sparse(seq: Sequence) -> SVec:
    return {i: rational(x) for i, x in enumerate(seq) if x}


def dense(v: SVec, n: int) -> tuple:
    out = [0] * n
    for i, x in v.items():
        out[i] = x
    return tuple(out)


def add_into(acc: SVec, v: SVec, scale: Coeff = 1) -> SVec:
    for i, x in v.items():
        y = acc.get(i, 0) + scale * x
        if y:
            acc[i] = y
        else:
            acc.pop(i, None)
    return acc


def combine(terms: Iterable[tuple[Coeff, SVec]]) -> SVec:
    acc: SVec = {}
    for s, v in terms:
        if s:
            add_into(acc, v, s)
    return acc


def scale(v: SVec, s: Coeff) -> SVec:
    if not s:
        return {}
    return {i: s * x for i, x in v.items()}


def primitive(v: SVec) -> dict[int, int]:
    """Integer multiple of ``v`` with content 1 and positive top entry."""
    den = 1
    for x in v.values():
        if isinstance(x, Fraction) and x.denominator != 1:
            den = lcm(den, x.denominator)
    if den != 1:
        w = {i: int(x * den) for i, x in v.items() if x}
    else:
        w = {i: int(x) for i, x in v.items() if x}
    if not w:
        return w
    g = gcd(*w.values())
    if w[max(w)] < 0:
        g = -g
    if g != 1:
        w = {i: x // g for i, x in w.items()}
    return w


class Echelon:
    """Incremental echelon basis; rows are primitive integer vectors.

    Each row is keyed by its largest column and has no entries beyond it.
    Rows are never modified after insertion, so membership and insertion
    only need to clear the top entry repeatedly.
    """

    __slots__ = ("n", "rows")

    def __init__(self, n: int, vectors: Iterable[SVec] = ()):
        self.n = n
        self.rows: dict[int, dict[int, int]] = {}
        for v in vectors:
            self.add(v)

    def __len__(self) -> int:
        return len(self.rows)

    def copy(self) -> Echelon:
        e = Echelon(self.n)
        e.rows = dict(self.rows)
        return e

    def _top_reduce(self, v: SVec) -> dict[int, int]:
        rows = self.rows
        w = primitive(v) if v else {}
        if not w:
            return w
        heap = [-c for c in w]
        heapq.heapify(heap)
        scaled = False
        while heap:
            c = -heapq.heappop(heap)
            x = w.get(c)
            if x is None:
                continue
            row = rows.get(c)
            if row is None:
                break
            a = row[c]
            if a == 1:
                f = x
            else:
                g = gcd(a, x)
                s, f = a // g, x // g
                if s != 1:
                    for k in w:
                        w[k] *= s
                    scaled = True
            for k, y in row.items():
                old = w.get(k)
                if old is None:
                    w[k] = -f * y
                    heapq.heappush(heap, -k)
                else:
                    nv = old - f * y
                    if nv:
                        w[k] = nv
                    else:
                        del w[k]
            if scaled and w:
                g = gcd(*w.values())
                if g > 1:
                    for k in w:
                        w[k] //= g
                scaled = False
        return w

    def add(self, v: SVec) -> bool:
        """Insert ``v``; return True when it enlarged the span."""
        w = self._top_reduce(v)
        if not w:
            return False
        p = max(w)
        g = gcd(*w.values())
        if w[p] < 0:
            g = -g
        if g != 1:
            w = {k: x // g for k, x in w.items()}
        self.rows[p] = w
        return True

    def contains(self, v: SVec) -> bool:
        return not self._top_reduce(v)

    def normal_form(self, v: SVec) -> SVec:
        """Exact remainder of ``v`` with every pivot column cleared (linear in ``v``)."""
        rows = self.rows
        w: SVec = dict(v)
        heap = [-c for c in w if c in rows]
        heapq.heapify(heap)
        while heap:
            c = -heapq.heappop(heap)
            x = w.get(c)
            if x is None:
                continue
            row = rows[c]
            a = row[c]
            f = x if a == 1 else Fraction(x, a) if isinstance(x, int) else x / a
            for k, y in row.items():
                old = w.get(k)
                if old is None:
                    w[k] = -f * y
                    if k in rows:
                        heapq.heappush(heap, -k)
                else:
                    nv = old - f * y
                    if nv:
                        w[k] = rational(nv) if isinstance(nv, Fraction) else nv
                    else:
                        del w[k]
        return w


def relations(columns: Sequence[SVec], n_target: int) -> list[dict[int, int]]:
    """Basis of ``{a : sum a_j columns[j] = 0}`` as sparse vectors over ``range(len(columns))``."""
    k = len(columns)
    ech = Echelon(k + n_target)
    for j, col in enumerate(columns):
        v = {k + i: x for i, x in col.items()}
        v[j] = 1
        ech.add(v)
    return [row for p, row in ech.rows.items() if p < k]


def _canonical_rows(ech: Echelon) -> tuple[tuple[int, tuple[tuple[int, Coeff], ...]], ...]:
    """Reduced row echelon form with smallest-column pivots, as sorted sparse rows."""
    top = ech.n - 1
    rev = Echelon(ech.n, ({top - k: x for k, x in r.items()} for r in ech.rows.values()))
    red: dict[int, SVec] = {}
    for p in sorted(rev.rows):
        row = rev.rows[p]
        v: SVec = {k: Fraction(x, row[p]) for k, x in row.items()}
        for q in [c for c in row if c != p and c in rev.rows]:
            x = v.get(q)
            if x:
                add_into(v, red[q], -x)
        red[p] = v
    out = []
    for p, v in red.items():
        out.append((top - p, tuple(sorted((top - k, rational(x)) for k, x in v.items()))))
    out.sort()
    return tuple(out)


@dataclass(frozen=True)
class Mat:
    """Dense rectangular matrix of exact rationals."""

    rows: tuple[tuple[Coeff, ...], ...]
    ncols: int

    @classmethod
    def of(cls, rows: Iterable[Sequence], ncols: int | None = None) -> Mat:
        rs = tuple(tuple(rational(x) for x in r) for r in rows)
        if ncols is None:
            if not rs:
                raise ValueError("column count needed for an empty matrix")
            ncols = len(rs[0])
        for r in rs:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
        return cls(rs, ncols)

    @classmethod
    def from_sparse(cls, vecs: Iterable[SVec], ncols: int) -> Mat:
        return cls(tuple(dense(v, ncols) for v in vecs), ncols)

    @classmethod
    def identity(cls, n: int) -> Mat:
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @classmethod
    def zeros(cls, r: int, c: int) -> Mat:
        return cls(tuple((0,) * c for _ in range(r)), c)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    def sparse_rows(self) -> list[SVec]:
        return [sparse(r) for r in self.rows]

    def column(self, j: int) -> tuple[Coeff, ...]:
        return tuple(r[j] for r in self.rows)

    def sparse_columns(self) -> list[SVec]:
        cols: list[SVec] = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, x in enumerate(r):
                if x:
                    cols[j][i] = x
        return cols

    def transpose(self) -> Mat:
        return Mat(tuple(zip(*self.rows)) if self.rows else (), len(self.rows))

    def __iter__(self) -> Iterator[tuple[Coeff, ...]]:
        return iter(self.rows)

    def tolist(self) -> list[list[Coeff]]:
        return [list(r) for r in self.rows]


class Subspace:
    """Immutable subspace of the rational space of dimension ``ambient_dim``."""

    __slots__ = ("ambient_dim", "_ech", "_canon")

    def __init__(self, ambient_dim: int, vectors: Iterable[SVec] = (), *, _ech: Echelon | None = None):
        self.ambient_dim = ambient_dim
        if _ech is None:
            _ech = Echelon(ambient_dim)
            for v in vectors:
                _ech.add(v)
        self._ech = _ech
        self._canon = None

    @classmethod
    def zero(cls, n: int) -> Subspace:
        return cls(n)

    @classmethod
    def full(cls, n: int) -> Subspace:
        return cls(n, ({i: 1} for i in range(n)))

    @classmethod
    def span(cls, n: int, vectors: Iterable[Sequence | SVec]) -> Subspace:
        return cls(n, (v if isinstance(v, dict) else sparse(v) for v in vectors))

    @classmethod
    def from_mat(cls, m: Mat) -> Subspace:
        return cls(m.ncols, m.sparse_rows())

    @property
    def dim(self) -> int:
        return len(self._ech)

    def vectors(self) -> list[dict[int, int]]:
        """Internal basis (primitive integer rows), ordered by pivot column."""
        rows = self._ech.rows
        return [rows[p] for p in sorted(rows)]

    def echelon(self) -> Echelon:
        """A fresh mutable copy of the internal echelon."""
        return self._ech.copy()

    def canonical(self) -> tuple:
        if self._canon is None:
            self._canon = _canonical_rows(self._ech)
        return self._canon

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.canonical())

    @property
    def basis(self) -> Mat:
        n = self.ambient_dim
        out = []
        for _, items in self.canonical():
            row = [0] * n
            for k, x in items:
                row[k] = x
            out.append(tuple(row))
        return Mat(tuple(out), n)

    def basis_sparse(self) -> list[SVec]:
        return [dict(items) for _, items in self.canonical()]

    def __contains__(self, v) -> bool:
        if not isinstance(v, dict):
            v = sparse(v)
        return self._ech.contains(v)

    def contains_all(self, vectors: Iterable[SVec]) -> bool:
        return all(self._ech.contains(v) for v in vectors)

    def __le__(self, other: Subspace) -> bool:
        _check_ambient(self, other)
        return self.dim <= other.dim and other.contains_all(self._ech.rows.values())

    def __ge__(self, other: Subspace) -> bool:
        return other <= self

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient_dim == other.ambient_dim and self.dim == other.dim
                and other.contains_all(self._ech.rows.values()))

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.canonical()))

    def __add__(self, other: Subspace) -> Subspace:
        return subspace_sum(self, other)

    def __and__(self, other: Subspace) -> Subspace:
        return intersect(self, other)

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def normal_form(self, v: SVec) -> SVec:
        return self._ech.normal_form(v)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def _check_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise AmbientMismatch(f"ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}")


def rref(m: Mat) -> Mat:
    return Subspace.from_mat(m).basis


def rank(m: Mat) -> int:
    return Subspace.from_mat(m).dim


def kernel(m: Mat) -> Subspace:
    """Null space ``{v : m v = 0}``."""
    rels = relations(m.sparse_columns(), m.nrows)
    return Subspace(m.ncols, rels)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    if a.dim < b.dim:
        a, b = b, a
    e = a.echelon()
    for v in b.vectors():
        e.add(v)
    return Subspace(a.ambient_dim, _ech=e)


sum_ = subspace_sum


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Zassenhaus: rows ``(u | u)`` for ``u`` in ``a`` and ``(v | 0)`` for ``v`` in ``b``."""
    _check_ambient(a, b)
    n = a.ambient_dim
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(n)
    if a.dim == n:
        return b
    if b.dim == n:
        return a
    e = Echelon(2 * n)
    for u in a.vectors():
        v = {n + i: x for i, x in u.items()}
        v.update(u)
        e.add(v)
    for u in b.vectors():
        e.add({n + i: x for i, x in u.items()})
    return Subspace(n, (row for p, row in e.rows.items() if p < n))


def intersect_kernel(space: Subspace, images: Callable[[SVec], SVec], n_target: int) -> Subspace:
    """``space ∩ ker f`` for a linear map given by ``images``, via relations among images of the basis."""
    vecs = space.vectors()
    rels = relations([images(v) for v in vecs], n_target)
    out = []
    for r in rels:
        out.append(combine((x, vecs[j]) for j, x in r.items()))
    return Subspace(space.ambient_dim, out)


def _require_inclusion(big: Subspace, small: Subspace) -> None:
    _check_ambient(big, small)
    if not small <= big:
        raise InclusionViolated("subspace is not contained in the ambient subspace")


@dataclass(frozen=True)
class QuotientData:
    """Coset representatives of ``big/small`` and the coordinate projection."""

    coset_reps: Mat
    _big_pivots: tuple[int, ...]
    _small_coords: Echelon
    _free: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self._free)

    def project_sparse(self, v: SVec) -> SVec:
        t = {k: v[p] for k, p in enumerate(self._big_pivots) if p in v}
        t = self._small_coords.normal_form(t)
        return {j: t[k] for j, k in enumerate(self._free) if k in t}

    def project(self, v) -> tuple:
        if not isinstance(v, dict):
            v = sparse(v)
        return dense(self.project_sparse(v), self.dim)

    def reps_sparse(self) -> list[SVec]:
        return self.coset_reps.sparse_rows()


def quotient_data(big: Subspace, small: Subspace, *, check: bool = True) -> QuotientData:
    if check:
        _require_inclusion(big, small)
    canon = big.canonical()
    pivots = tuple(p for p, _ in canon)
    small_coords = []
    for s in small.vectors():
        t = {k: s[p] for k, p in enumerate(pivots) if p in s}
        small_coords.append(t)
    # canonical smallest-index pivots of the small part in big's coordinates
    sc = Subspace(len(pivots), small_coords)
    taken = set(sc.pivots)
    free = tuple(k for k in range(len(pivots)) if k not in taken)
    # the normal form must clear the canonical pivots, so build on reversed columns
    rev = Echelon(len(pivots))
    r = len(pivots) - 1
    for _, items in sc.canonical():
        rev.add({r - k: x for k, x in items})
    nf_ech = _ReversedEchelon(rev, r)
    reps = tuple(dense(dict(canon[k][1]), big.ambient_dim) for k in free)
    return QuotientData(Mat(reps, big.ambient_dim), pivots, nf_ech, free)


class _ReversedEchelon:
    """Normal form against an echelon built on reversed column indices."""

    def __init__(self, ech: Echelon, top: int):
        self._ech = ech
        self._top = top

    def normal_form(self, v: SVec) -> SVec:
        t = self._top
        w = self._ech.normal_form({t - k: x for k, x in v.items()})
        return {t - k: x for k, x in w.items()}


def complement(big: Subspace, small: Subspace) -> Subspace:
    """Deterministic complement of ``small`` inside ``big``."""
    q = quotient_data(big, small)
    return Subspace(big.ambient_dim, q.reps_sparse())


def greedy_complement(big: Subspace, small: Subspace) -> list[dict[int, int]]:
    """Basis vectors of ``big`` independent modulo ``small``; cheap, no canonical forms."""
    e = small.echelon()
    out = []
    for v in big.vectors():
        if e.add(v):
            out.append(v)
    return out


def solve_affine(equations: Iterable[tuple[SVec, Coeff]], n: int) -> dict[int, Coeff] | None:
    """Solve ``lhs . u = rhs`` for all equations; ``None`` when infeasible.

    Free unknowns are set to zero, so the answer is determined by the
    canonical echelon form of the augmented system.
    """
    rows = []
    for lhs, rhs in equations:
        v = dict(lhs)
        if rhs:
            v[n] = rational(rhs)
        if v:
            rows.append(v)
    aug = Subspace(n + 1, rows)
    sol: dict[int, Coeff] = {}
    for p, items in aug.canonical():
        if p == n:
            return None
        rhs = dict(items).get(n, 0)
        if rhs:
            sol[p] = rhs
    return sol
