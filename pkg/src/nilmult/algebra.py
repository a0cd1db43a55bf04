"""Leibniz algebras given by structure constants, with the right identity

    [x, [y, z]] = [[x, y], z] - [[x, z], y].

Structure constants are stored sparsely: ``sc[(i, j)]`` is the coordinate
vector of ``[b_i, b_j]`` and absent pairs bracket to zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import NotAnIdeal
from .exactlin import (
    Echelon,
    Mat,
    SVec,
    Subspace,
    add_into,
    combine,
    dense,
    quotient_data,
    rational,
    relations,
    sparse,
)


def _clean(v: Mapping[int, object]) -> SVec:
    return {i: rational(x) for i, x in v.items() if x}


class LeibnizAlgebra:
    """Finite-dimensional Leibniz algebra over the rationals.

    ``generators`` optionally records vectors that generate the algebra as an
    algebra; several routines then work with far fewer brackets.
    """

    def __init__(
        self,
        name: str,
        dim: int,
        sc: Mapping[tuple[int, int], Mapping[int, object]],
        labels: Sequence[str] | None = None,
        generators: Sequence[SVec] | None = None,
    ):
        self.name = name
        self.dim = dim
        table: dict[tuple[int, int], SVec] = {}
        for (i, j), v in sc.items():
            w = _clean(v)
            if w:
                table[(i, j)] = w
        self.sc = table
        self.labels = tuple(labels) if labels is not None else tuple(f"e{i + 1}" for i in range(dim))
        if len(self.labels) != dim:
            raise ValueError("label count does not match dimension")
        self.generators = None if generators is None else tuple(dict(g) for g in generators)
        left: dict[int, list[tuple[int, SVec]]] = {}
        right: dict[int, dict[int, SVec]] = {}
        for (i, j), v in self.sc.items():
            left.setdefault(i, []).append((j, v))
            right.setdefault(j, {})[i] = v
        self._left = left
        self._right = right

    def __repr__(self) -> str:
        return f"LeibnizAlgebra({self.name!r}, dim={self.dim})"

    # brackets

    def bracket_sparse(self, x: SVec, y: SVec) -> SVec:
        if not x or not y:
            return {}
        sc = self.sc
        left = self._left
        acc: SVec = {}
        cost_scan = sum(len(left.get(i, ())) for i in x)
        if cost_scan <= len(x) * len(y):
            for i, a in x.items():
                for j, v in left.get(i, ()):
                    b = y.get(j)
                    if b:
                        add_into(acc, v, a * b)
        else:
            for i, a in x.items():
                for j, b in y.items():
                    v = sc.get((i, j))
                    if v:
                        add_into(acc, v, a * b)
        return acc

    def bracket(self, x: Sequence, y: Sequence) -> tuple:
        return dense(self.bracket_sparse(sparse(x), sparse(y)), self.dim)

    def lie_bracket_sparse(self, x: SVec, y: SVec) -> SVec:
        """``[x, y] + [y, x]``."""
        return add_into(self.bracket_sparse(x, y), self.bracket_sparse(y, x))

    def basis_vector(self, i: int) -> SVec:
        return {i: 1}

    def generator_vectors(self) -> list[SVec]:
        if self.generators is not None:
            return [dict(g) for g in self.generators]
        return [{i: 1} for i in range(self.dim)]

    def structure_matrix(self) -> list[list[tuple]]:
        return [[dense(self.sc.get((i, j), {}), self.dim) for j in range(self.dim)] for i in range(self.dim)]

    def key(self) -> tuple:
        """Hashable fingerprint of the structure constants."""
        return (self.dim, tuple(sorted((k, tuple(sorted(v.items()))) for k, v in self.sc.items())))

    def same_structure(self, other: LeibnizAlgebra) -> bool:
        return self.dim == other.dim and self.sc == other.sc

    def opposite(self, name: str | None = None) -> LeibnizAlgebra:
        """The algebra with ``[x, y]_op = [y, x]``; turns left Leibniz tables into right ones."""
        table = {(j, i): v for (i, j), v in self.sc.items()}
        return LeibnizAlgebra(name or self.name, self.dim, table, self.labels)

    def is_lie(self) -> bool:
        for (i, j), v in self.sc.items():
            if add_into(dict(v), self.sc.get((j, i), {})):
                return False
        for i in range(self.dim):
            if (i, i) in self.sc:
                return False
        return True

    def format_vector(self, v: SVec | Sequence) -> str:
        if not isinstance(v, dict):
            v = sparse(v)
        if not v:
            return "0"
        parts = []
        for i in sorted(v):
            x = v[i]
            lab = self.labels[i]
            if x == 1:
                parts.append(f"+{lab}")
            elif x == -1:
                parts.append(f"-{lab}")
            else:
                s = str(x)
                parts.append(f"{s if s.startswith('-') else '+' + s}*{lab}")
        out = "".join(parts)
        return out[1:] if out.startswith("+") else out


@dataclass(frozen=True)
class LeibnizCheck:
    ok: bool
    triple: tuple[int, int, int] | None = None
    residual: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def leibniz_residual(A: LeibnizAlgebra, x: SVec, y: SVec, z: SVec) -> SVec:
    br = A.bracket_sparse
    lhs = br(x, br(y, z))
    add_into(lhs, br(br(x, y), z), -1)
    add_into(lhs, br(br(x, z), y), 1)
    return lhs


def check_leibniz(A: LeibnizAlgebra) -> LeibnizCheck:
    """Check the identity on every basis triple in lexicographic order (1-based witness)."""
    n = A.dim
    sc = A.sc
    br = A.bracket_sparse
    for i in range(n):
        for j in range(n):
            xy = sc.get((i, j), {})
            for k in range(n):
                yz = sc.get((j, k), {})
                xz = sc.get((i, k), {})
                r = br({i: 1}, yz) if yz else {}
                if xy:
                    add_into(r, br(xy, {k: 1}), -1)
                if xz:
                    add_into(r, br(xz, {j: 1}), 1)
                if r:
                    return LeibnizCheck(False, (i + 1, j + 1, k + 1), dense(r, n))
    return LeibnizCheck(True)


@dataclass(frozen=True, eq=False)
class Ideal:
    algebra: LeibnizAlgebra
    space: Subspace
    two_sided: bool

    @property
    def dim(self) -> int:
        return self.space.dim


def _is_ideal(A: LeibnizAlgebra, space: Subspace) -> bool:
    gens = A.generator_vectors()
    for v in space.vectors():
        for g in gens:
            if not space.__contains__(A.bracket_sparse(v, g)):
                return False
            if not space.__contains__(A.bracket_sparse(g, v)):
                return False
    return True


def certify_ideal(A: LeibnizAlgebra, space: Subspace) -> Ideal:
    """Certify ``space`` as two-sided; multiplication by generators suffices.

    If ``space`` is closed under both-sided multiplication by a generating set
    then, by the identity, it is closed under multiplication by all brackets
    of generators, hence by the whole algebra.
    """
    if space.ambient_dim != A.dim:
        raise ValueError("subspace does not live in this algebra")
    if not _is_ideal(A, space):
        raise NotAnIdeal(f"subspace of dim {space.dim} is not a two-sided ideal of {A.name}")
    return Ideal(A, space, True)


def ideal_closure(A: LeibnizAlgebra, seed: Subspace | Iterable[SVec]) -> Ideal:
    """Smallest two-sided ideal containing ``seed``."""
    ech = Echelon(A.dim)
    work = []
    vecs = seed.vectors() if isinstance(seed, Subspace) else seed
    for v in vecs:
        if ech.add(v):
            work.append(v)
    gens = A.generator_vectors()
    br = A.bracket_sparse
    while work:
        v = work.pop()
        for g in gens:
            for w in (br(v, g), br(g, v)):
                if w and ech.add(w):
                    work.append(w)
    return Ideal(A, Subspace(A.dim, _ech=ech), True)


def zero_ideal(A: LeibnizAlgebra) -> Ideal:
    return Ideal(A, Subspace.zero(A.dim), True)


def whole(A: LeibnizAlgebra) -> Ideal:
    return Ideal(A, Subspace.full(A.dim), True)


class Morphism:
    """Linear map stored by the images of the domain basis (sparse columns)."""

    def __init__(self, domain: LeibnizAlgebra, codomain: LeibnizAlgebra, columns: Sequence[SVec],
                 is_hom: bool = False, witness: tuple[int, int] | None = None):
        if len(columns) != domain.dim:
            raise ValueError("one image per domain basis vector is required")
        self.domain = domain
        self.codomain = codomain
        self.columns = tuple(dict(c) for c in columns)
        self.is_hom = is_hom
        self.witness = witness

    @property
    def matrix(self) -> Mat:
        rows = [[0] * self.domain.dim for _ in range(self.codomain.dim)]
        for j, col in enumerate(self.columns):
            for i, x in col.items():
                rows[i][j] = x
        return Mat(tuple(tuple(r) for r in rows), self.domain.dim)

    def apply_sparse(self, v: SVec) -> SVec:
        cols = self.columns
        return combine((x, cols[j]) for j, x in v.items())

    def __call__(self, v) -> tuple:
        if not isinstance(v, dict):
            v = sparse(v)
        return dense(self.apply_sparse(v), self.codomain.dim)

    def compose(self, first: Morphism) -> Morphism:
        """``self ∘ first``."""
        cols = [self.apply_sparse(c) for c in first.columns]
        return Morphism(first.domain, self.codomain, cols, self.is_hom and first.is_hom)

    def image_of_subspace(self, s: Subspace) -> Subspace:
        return Subspace(self.codomain.dim, (self.apply_sparse(v) for v in s.vectors()))

    def preimage(self, s: Subspace) -> Subspace:
        """``{v : f(v) in s}``."""
        qd = quotient_data(Subspace.full(self.codomain.dim), s, check=False)
        cols = [qd.project_sparse(c) for c in self.columns]
        return Subspace(self.domain.dim, relations(cols, qd.dim))

    def is_surjective(self) -> bool:
        return image_of(self).dim == self.codomain.dim

    def __repr__(self) -> str:
        return f"Morphism({self.domain.name} -> {self.codomain.name}, is_hom={self.is_hom})"


def _hom_witness(A: LeibnizAlgebra, B: LeibnizAlgebra, cols: Sequence[SVec]) -> tuple[int, int] | None:
    f = lambda v: combine((x, cols[j]) for j, x in v.items())
    if A.generators is None:
        for i in range(A.dim):
            for j in range(A.dim):
                lhs = f(A.sc.get((i, j), {}))
                rhs = B.bracket_sparse(cols[i], cols[j])
                if lhs != rhs and add_into(dict(lhs), rhs, -1):
                    return (i + 1, j + 1)
        return None
    # right multiplication by generators suffices: the set of y with
    # f([x, y]) = [f x, f y] for all x is a subalgebra
    for g_idx, g in enumerate(A.generators):
        fg = f(g)
        for i in range(A.dim):
            lhs = f(A.bracket_sparse({i: 1}, g))
            rhs = B.bracket_sparse(cols[i], fg)
            if add_into(dict(lhs), rhs, -1):
                return (i + 1, -(g_idx + 1))
    return None


def hom(A: LeibnizAlgebra, B: LeibnizAlgebra, matrix: Mat | Sequence[Sequence] | Sequence[SVec]) -> Morphism:
    """Linear map from ``matrix`` (columns are images of ``A``'s basis), certified if it is a homomorphism.

    Never raises on a non-homomorphism: the result has ``is_hom`` False and a
    1-based witness pair.
    """
    if isinstance(matrix, Mat):
        if matrix.shape != (B.dim, A.dim):
            raise ValueError(f"matrix shape {matrix.shape} does not match {(B.dim, A.dim)}")
        cols = matrix.sparse_columns()
    elif matrix and isinstance(matrix[0], dict):
        cols = [_clean(c) for c in matrix]
    else:
        m = Mat.of(matrix, A.dim) if matrix else Mat.zeros(B.dim, A.dim)
        if m.shape != (B.dim, A.dim):
            raise ValueError(f"matrix shape {m.shape} does not match {(B.dim, A.dim)}")
        cols = m.sparse_columns()
    if len(cols) != A.dim:
        raise ValueError("one image per domain basis vector is required")
    w = _hom_witness(A, B, cols)
    return Morphism(A, B, cols, w is None, w)


def kernel_of(f: Morphism) -> Ideal:
    sp = Subspace(f.domain.dim, relations(f.columns, f.codomain.dim))
    return Ideal(f.domain, sp, f.is_hom)


def image_of(f: Morphism) -> Subspace:
    return Subspace(f.codomain.dim, f.columns)


def identity_map(A: LeibnizAlgebra) -> Morphism:
    return Morphism(A, A, [{i: 1} for i in range(A.dim)], True)


def quotient(A: LeibnizAlgebra, ideal: Ideal | Subspace, name: str | None = None) -> tuple[LeibnizAlgebra, Morphism]:
    """Quotient algebra on canonical coset representatives, with the certified projection."""
    space = ideal.space if isinstance(ideal, Ideal) else ideal
    if not (isinstance(ideal, Ideal) and ideal.two_sided):
        certify_ideal(A, space)
    qd = quotient_data(Subspace.full(A.dim), space, check=False)
    reps = qd.reps_sparse()
    n = qd.dim
    sc = {}
    for a in range(n):
        for b in range(n):
            v = qd.project_sparse(A.bracket_sparse(reps[a], reps[b]))
            if v:
                sc[(a, b)] = v
    labels = []
    for r in reps:
        (i,) = [k for k in r]  # reps are standard basis vectors of the full space
        labels.append(A.labels[i])
    cols = [qd.project_sparse({i: 1}) for i in range(A.dim)]
    gens = None
    if A.generators is not None:
        gens = [g for g in (qd.project_sparse(g) for g in A.generators) if g]
    quot = LeibnizAlgebra(name or f"{A.name}/ideal", n, sc, labels, gens)
    proj = Morphism(A, quot, cols, True)
    return quot, proj


def direct_sum(A: LeibnizAlgebra, B: LeibnizAlgebra, name: str | None = None) -> LeibnizAlgebra:
    n = A.dim
    sc = dict(A.sc)
    for (i, j), v in B.sc.items():
        sc[(i + n, j + n)] = {k + n: x for k, x in v.items()}
    labels = list(A.labels) + list(B.labels)
    if len(set(labels)) != len(labels):
        labels = [f"{l}_1" for l in A.labels] + [f"{l}_2" for l in B.labels]
    return LeibnizAlgebra(name or f"{A.name}+{B.name}", n + B.dim, sc, labels)


def abelian(n: int) -> LeibnizAlgebra:
    return LeibnizAlgebra(f"abelian({n})", n, {})


def from_table(name: str, dim: int, entries: Mapping[tuple[int, int], Mapping[int, object]],
               labels: Sequence[str] | None = None) -> LeibnizAlgebra:
    """Build from a 1-based bracket table ``{(i, j): {k: coeff}}``."""
    sc = {(i - 1, j - 1): {k - 1: x for k, x in v.items()} for (i, j), v in entries.items()}
    return LeibnizAlgebra(name, dim, sc, labels)
