"""Extensions: central, stem and stem-cover classification, and the stem-cover builder."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import Ideal, LeibnizAlgebra, Morphism, hom, kernel_of, quotient
from .baer import (
    CHECKS,
    DEFAULT_MAX_DIM,
    _record,
    induced_multiplier_map,
    level_data,
    multiplier,
    relative_gamma,
)
from .errors import AgreementFail, AssertionFail, NoIdealComplement, NotAHomomorphism, NotCentral, ResourceLimit
from .exactlin import Echelon, SVec, Subspace, complement, solve_affine
from .lie import absolute_class, lie_class, lower_term, upper_term


@dataclass(eq=False)
class Extension:
    """A surjective homomorphism ``total -> base`` together with its kernel."""

    total: LeibnizAlgebra
    base: LeibnizAlgebra
    pi: Morphism
    kernel: Ideal

    def __post_init__(self):
        if not self.pi.is_hom:
            raise NotAHomomorphism("extension map is not a homomorphism", witness=self.pi.witness)
        if self.total.dim != self.base.dim + self.kernel.dim:
            raise AssertionFail("extension map is not surjective")


def extension(pi: Morphism) -> Extension:
    if not pi.is_hom:
        raise NotAHomomorphism(f"map is not a homomorphism; failing pair {pi.witness}", witness=pi.witness)
    if not pi.is_surjective():
        raise NotAHomomorphism("map is not surjective")
    return Extension(pi.domain, pi.codomain, pi, kernel_of(pi))


def extension_from_matrix(total: LeibnizAlgebra, base: LeibnizAlgebra, matrix) -> Extension:
    return extension(hom(total, base, matrix))


def quotient_extension(total: LeibnizAlgebra, ideal: Ideal | Subspace) -> Extension:
    base, proj = quotient(total, ideal)
    return Extension(total, base, proj, kernel_of(proj))


def is_c_lie_central(ext: Extension, c: int) -> bool:
    """Relative series of the kernel vanishes at step ``c + 1``; checked against ``kernel ⊆ ζ_c^Lie(total)``."""
    total, kernel = ext.total, ext.kernel.space
    by_series = relative_gamma(total, kernel, c).dim == 0
    by_center = kernel <= upper_term(total, c)
    CHECKS["central dual route"] += 1
    if by_series != by_center:
        CHECKS["central dual route:fail"] += 1
        raise AgreementFail("relative series and upper series disagree on centrality",
                            c=c, by_series=by_series, by_center=by_center)
    return by_series


def is_c_lie_stem(ext: Extension, c: int) -> bool:
    if not is_c_lie_central(ext, c):
        raise NotCentral(f"extension is not {c}-Lie-central")
    total, base, kernel = ext.total, ext.base, ext.kernel.space
    stem = kernel <= lower_term(total, c + 1)
    same_top = total.dim - lower_term(total, c + 1).dim == base.dim - lower_term(base, c + 1).dim
    CHECKS["stem dual route"] += 1
    if stem != same_top:
        CHECKS["stem dual route:fail"] += 1
        raise AgreementFail("stem criterion and quotient-dimension criterion disagree", c=c)
    return stem


@dataclass
class StemCoverReport:
    central: bool
    stem: bool
    kernel_dim: int
    multiplier_dim: int | None
    multiplier_stabilized: bool | None
    induced_rank: int | None
    cover: bool

    def as_dict(self) -> dict:
        return dict(self.__dict__, induced_map_evaluated=self.induced_rank is not None)


def stem_cover_report(ext: Extension, c: int, **policy) -> StemCoverReport:
    central = is_c_lie_central(ext, c)
    stem = central and is_c_lie_stem(ext, c)
    mdim = mstab = rank = None
    if stem:
        rep = multiplier(ext.base, c, with_basis=False, **policy)
        mdim, mstab = rep.dim, rep.stabilized
        if absolute_class(ext.total) is not None and ext.total.dim:
            g_rep = multiplier(ext.total, c, with_basis=False, **policy)
            im = induced_multiplier_map(ext.total, ext.kernel, c, level=g_rep.level, with_matrix=False,
                                        mode=g_rep.mode, max_dim=policy.get("max_dim", DEFAULT_MAX_DIM))
            rank = im.rank
    cover = stem and mdim == ext.kernel.dim
    if cover and rank is not None:
        _record("stem cover induced map is zero", rank == 0,
                "induced map on multipliers is nonzero for a stem cover", rank=rank)
    return StemCoverReport(central, stem, ext.kernel.dim, mdim, mstab, rank, cover)


def is_c_lie_stem_cover(ext: Extension, c: int, **policy) -> bool:
    return stem_cover_report(ext, c, **policy).cover


@dataclass(eq=False)
class StemCover:
    cover: LeibnizAlgebra
    extension: Extension
    level: int
    multiplier_dim: int
    stabilized: bool


class _Coordinates:
    """Exact coordinates of vectors in the span of a fixed independent list."""

    def __init__(self, basis: Sequence[SVec], n: int):
        self.k = len(basis)
        self.n = n
        self.ech = Echelon(self.k + n)
        for i, b in enumerate(basis):
            v = {self.k + j: x for j, x in b.items()}
            v[i] = 1
            if not self.ech.add(v):
                raise ValueError("coordinate basis is dependent")

    def __call__(self, v: SVec) -> SVec:
        r = self.ech.normal_form({self.k + j: x for j, x in v.items()})
        if any(j >= self.k for j in r):
            raise ValueError("vector outside the span")
        return {i: -x for i, x in r.items()}


def _try_level(base: LeibnizAlgebra, c: int, m: int, mode: str, max_dim: int):
    ld = level_data(base, c, m, mode, max_dim)
    trunc = ld.pres.free
    A = trunc.algebra
    rel_space = ld.pres.kernel.space
    comp = complement(rel_space, ld.x).basis_sparse()
    mreps = complement(ld.x, ld.y).basis_sparse()
    ybasis = ld.y.vectors()
    nc, nm = len(comp), len(mreps)
    coords = _Coordinates(comp + mreps + ybasis, A.dim)

    def split(v: SVec) -> tuple[SVec, SVec]:
        t = coords(v)
        alpha = {i: x for i, x in t.items() if i < nc}
        mu = {i - nc: x for i, x in t.items() if nc <= i < nc + nm}
        return alpha, mu

    # unknown phi[k][j] lives at index k * nm + j
    eqs = []
    gens = A.generator_vectors()
    for g in gens:
        mu_right = []
        for x in mreps:
            a, mu = split(A.bracket_sparse(x, g))
            if a:
                raise AssertionFail("multiplier representative leaves the multiplier under brackets")
            mu_right.append(mu)
            if A.bracket_sparse(g, x):
                raise AssertionFail("multiplier representative is not annihilated on the left")
        for i, ci in enumerate(comp):
            for w, extra in ((A.bracket_sparse(ci, g), True), (A.bracket_sparse(g, ci), False)):
                alpha, mu = split(w)
                # need mu + sum_j phi[i][j] mu_right[j] (right side only) = sum_k alpha_k phi[k]
                for t in range(nm):
                    lhs: dict[int, object] = {}
                    if extra:
                        for j in range(nm):
                            y = mu_right[j].get(t)
                            if y:
                                lhs[i * nm + j] = lhs.get(i * nm + j, 0) + y
                    for k, a in alpha.items():
                        key = k * nm + t
                        lhs[key] = lhs.get(key, 0) - a
                    lhs = {u: x for u, x in lhs.items() if x}
                    rhs = -mu.get(t, 0)
                    if lhs or rhs:
                        eqs.append((lhs, rhs))
    sol = solve_affine(eqs, nc * nm)
    if sol is None:
        return ld, None
    s_vecs = list(ybasis)
    for i, ci in enumerate(comp):
        v = dict(ci)
        for j, x in enumerate(mreps):
            f = sol.get(i * nm + j, 0)
            if f:
                for col, y in x.items():
                    nv = v.get(col, 0) + f * y
                    if nv:
                        v[col] = nv
                    else:
                        v.pop(col, None)
        s_vecs.append(v)
    return ld, Subspace(A.dim, s_vecs)


def stem_cover_construct(base: LeibnizAlgebra, c: int, m_start: int | None = None, m_max: int | None = None,
                         mode: str = "minimal", max_dim: int = DEFAULT_MAX_DIM, levels: int = 2) -> StemCover:
    """Build a stem cover as ``free_m`` modulo an ideal complement of the multiplier.

    Raises ``NoIdealComplement`` when the linear system for the complement is
    infeasible at every tried level (the stabilized level and the next
    ``levels - 1`` ones).
    """
    rep = multiplier(base, c, m_start=m_start, m_max=m_max, mode=mode, max_dim=max_dim, with_basis=False)
    if base.dim == 0:
        raise NoIdealComplement("the zero algebra is its own cover", trivial=True)
    tried = []
    for m in range(rep.level, rep.level + levels):
        try:
            ld, ideal_comp = _try_level(base, c, m, mode, max_dim)
        except ResourceLimit:
            if not tried:
                raise
            break
        tried.append(m)
        if ideal_comp is None:
            continue
        A = ld.pres.free.algebra
        cover, proj = quotient(A, Ideal(A, ideal_comp, True), name=f"cover({base.name},c={c})")
        taken = set(ideal_comp.pivots)
        cols = [ld.pres.rho.columns[w] for w in range(A.dim) if w not in taken]
        pi = hom(cover, base, cols)
        ext = extension(pi)
        if cover.dim != base.dim + ld.dim_m:
            raise AssertionFail("cover has the wrong dimension", cover_dim=cover.dim, expected=base.dim + ld.dim_m)
        if not is_c_lie_stem_cover(ext, c, mode=mode, max_dim=max_dim):
            raise AssertionFail("constructed extension is not a stem cover")
        return StemCover(cover, ext, m, ld.dim_m, rep.stabilized)
    raise NoIdealComplement(
        f"no ideal complement of the multiplier exists at levels {tried}",
        levels=tried, scope="window" if len(tried) > 1 else "level",
        multiplier_dim=rep.dim, stabilized=rep.stabilized, c=c, lie_class=lie_class(base),
    )
