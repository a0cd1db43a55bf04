"""Baer invariants through truncated free presentations.

For an absolutely nilpotent algebra of class ``k`` and a level ``m >= k`` the
free algebra is replaced by its truncation ``free_m`` (words of length at most
``m``); the kernel of the evaluation map then contains every word of length
``m + 1`` so nothing is lost by cutting there.  With

    gamma = γ_{c+1}^Lie(free_m),   y = γ_{c+1}^Lie(free_m, rel),   x = rel ∩ gamma

the level value of the multiplier is ``dim x - dim y``.  It equals the true
multiplier modulo the part of ``x`` made of words longer than ``m``, so level values are lower bounds that
never decrease with ``m``; two equal consecutive levels count as stabilized.
"""

from __future__ import annotations

from collections import Counter, OrderedDict
from dataclasses import dataclass
from typing import Callable

from .algebra import Ideal, LeibnizAlgebra, Morphism, certify_ideal, ideal_closure, kernel_of, quotient
from .errors import AgreementFail, AssertionFail, LevelTooSmall, NotNilpotent
from .exactlin import SVec, Subspace, complement, greedy_complement, intersect_kernel, quotient_data, subspace_sum
from .free import DEFAULT_MAX_DIM, FreeTruncation, evaluation_hom, free_dim, free_truncation
from .lie import absolute_class, lower_central_series, lower_term, upper_term

# how often each internal identity was checked; failures raise instead of counting
CHECKS: Counter = Counter()


def _record(name: str, ok: bool, message: str, **table) -> None:
    CHECKS[name] += 1
    if not ok:
        CHECKS[name + ":fail"] += 1
        raise AssertionFail(message, check=name, **table)


class _LRU(OrderedDict):
    def __init__(self, size: int):
        super().__init__()
        self.size = size

    def get_or(self, key, make: Callable):
        if key in self:
            self.move_to_end(key)
            return self[key]
        val = make()
        self[key] = val
        if len(self) > self.size:
            self.popitem(last=False)
        return val


_PRES = _LRU(64)
_GAMMA = _LRU(64)
_LEVEL = _LRU(128)


@dataclass(eq=False)
class Presentation:
    target: LeibnizAlgebra
    free: FreeTruncation
    rho: Morphism
    kernel: Ideal
    mode: str

    @property
    def level(self) -> int:
        return self.free.m

    @property
    def d(self) -> int:
        return self.free.d


def generator_images(alg: LeibnizAlgebra, mode: str = "minimal") -> list[SVec]:
    """Lifts of a basis of ``alg/γ_2(alg)`` (minimal) or the whole basis (full)."""
    if mode == "full":
        return [{i: 1} for i in range(alg.dim)]
    if mode != "minimal":
        raise ValueError(f"unknown presentation mode {mode!r}")
    series = lower_central_series(alg)
    derived = series[1] if len(series) > 1 else Subspace.zero(alg.dim)
    return complement(Subspace.full(alg.dim), derived).basis_sparse()


def _class_or_raise(alg: LeibnizAlgebra) -> int:
    k = absolute_class(alg)
    if k is None:
        raise NotNilpotent(f"{alg.name} is not (absolutely) nilpotent; Baer invariants are unsupported")
    return k


def presentation(alg: LeibnizAlgebra, mode: str = "minimal", m: int | None = None,
                 max_dim: int = DEFAULT_MAX_DIM) -> Presentation:
    k = _class_or_raise(alg)
    if m is None:
        m = max(k, 1)
    if m < k:
        raise LevelTooSmall(f"level {m} is below the nilpotency class {k} of {alg.name}", cls=k, level=m)
    if alg.dim == 0:
        raise ValueError("the zero algebra has no generators to present")
    imgs = generator_images(alg, mode)
    trunc = free_truncation(len(imgs), m, max_dim)
    key = (alg.key(), mode, m)

    def make():
        rho = evaluation_hom(trunc, imgs, alg)
        if not rho.is_surjective():
            raise AssertionFail("evaluation map is not surjective")
        return Presentation(alg, trunc, rho, kernel_of(rho), mode)

    return _PRES.get_or(key, make)


def relative_gamma(A: LeibnizAlgebra, ideal: Ideal | Subspace, c: int) -> Subspace:
    """``γ_{c+1}^Lie(A, ideal)``: ``c`` iterated Lie-commutators with ``A``."""
    return lower_term(A, c + 1, ideal)


def _free_gamma(trunc: FreeTruncation, c: int) -> Subspace:
    return _GAMMA.get_or((trunc.d, trunc.m, c), lambda: relative_gamma(trunc.algebra, Subspace.full(trunc.dim), c))


@dataclass(eq=False)
class LevelData:
    level: int
    c: int
    pres: Presentation
    gamma: Subspace
    y: Subspace
    x: Subspace

    @property
    def dim_m(self) -> int:
        return self.x.dim - self.y.dim

    @property
    def dim_gamma_star(self) -> int:
        return self.gamma.dim - self.y.dim


def level_data(alg: LeibnizAlgebra, c: int, m: int, mode: str = "minimal",
               max_dim: int = DEFAULT_MAX_DIM) -> LevelData:
    pres = presentation(alg, mode, m, max_dim)

    def make():
        trunc = pres.free
        gamma = _free_gamma(trunc, c)
        y = relative_gamma(trunc.algebra, pres.kernel.space, c)
        x = intersect_kernel(gamma, pres.rho.apply_sparse, alg.dim)
        if not y <= x:
            raise AssertionFail("relative term is not inside the intersection")
        ld = LevelData(m, c, pres, gamma, y, x)
        gq = lower_term(alg, c + 1).dim
        _record("multiplier plus gamma identity", ld.dim_gamma_star == ld.dim_m + gq,
                "multiplier plus lower term differs from gamma over y",
                level=m, c=c, dim_M=ld.dim_m, dim_gamma_Q=gq, dim_gamma_star=ld.dim_gamma_star)
        return ld

    return _LEVEL.get_or((alg.key(), mode, m, c), make)


@dataclass
class MultiplierReport:
    c: int
    level: int
    dim: int
    basis_words: list[dict[str, object]]
    dim_gamma_star: int
    dim_gamma_c1_Q: int
    stabilized: bool
    per_level: list[tuple[int, int, int]]
    mode: str = "minimal"
    z_star: Subspace | None = None
    stop_reason: str = ""

    @property
    def dim_M(self) -> int:
        return self.dim

    @property
    def per_level_dims(self) -> list[int]:
        return [d for _, d, _ in self.per_level]


def level_window(alg: LeibnizAlgebra, c: int, m_start: int | None = None, m_max: int | None = None) -> tuple[int, int]:
    k = _class_or_raise(alg)
    lo = max(k + c if m_start is None else m_start, k, 1)
    hi = k + c + 3 if m_max is None else m_max
    return lo, max(hi, lo)


def _zero_report(c: int, mode: str) -> MultiplierReport:
    return MultiplierReport(c, 0, 0, [], 0, 0, True, [], mode, Subspace.zero(0), "zero algebra")


def multiplier(alg: LeibnizAlgebra, c: int, m_start: int | None = None, m_max: int | None = None,
               mode: str = "minimal", max_dim: int = DEFAULT_MAX_DIM, level: int | None = None,
               with_basis: bool = True) -> MultiplierReport:
    """Multiplier of class ``c`` through the level sweep (or at one fixed ``level``)."""
    if c < 1:
        raise ValueError("c must be at least 1")
    if alg.dim == 0:
        return _zero_report(c, mode)
    if level is not None:
        lo = hi = level
    else:
        lo, hi = level_window(alg, c, m_start, m_max)
    d = len(generator_images(alg, mode))
    per: list[tuple[int, int, int]] = []
    last: LevelData | None = None
    stabilized = False
    reason = "window exhausted"
    for m in range(lo, hi + 1):
        if free_dim(d, m) > max_dim:
            reason = f"level {m} exceeds the dimension cap {max_dim}"
            break
        ld = level_data(alg, c, m, mode, max_dim)
        if per and ld.dim_m < per[-1][1]:
            raise AssertionFail("level values decreased", per_level=per + [(m, ld.dim_m, ld.dim_gamma_star)])
        per.append((m, ld.dim_m, ld.dim_gamma_star))
        last = ld
        if len(per) >= 2 and per[-1][1] == per[-2][1]:
            stabilized = True
            reason = "two consecutive levels agree"
            break
    if last is None:
        raise LevelTooSmall(f"no level in {lo}..{hi} fits under the dimension cap {max_dim}")
    if level is not None:
        reason = "fixed level"
    words = []
    if with_basis:
        trunc = last.pres.free
        words = [trunc.word_vector(v) for v in greedy_complement(last.x, last.y)]
    gq = lower_term(alg, c + 1).dim
    return MultiplierReport(c, last.level, last.dim_m, words, last.dim_gamma_star, gq,
                            stabilized, per, mode, None, reason)


@dataclass
class GammaStarReport:
    c: int
    level: int
    dim: int
    dim_M: int
    dim_gamma_c1_Q: int
    stabilized: bool
    coset_words: list[dict[str, object]]


def gamma_star(alg: LeibnizAlgebra, c: int, level: int | None = None, **policy) -> GammaStarReport:
    rep = multiplier(alg, c, level=level, with_basis=False, **policy)
    words: list = []
    if alg.dim:
        ld = level_data(alg, c, rep.level, rep.mode, policy.get("max_dim", DEFAULT_MAX_DIM))
        trunc = ld.pres.free
        words = [trunc.word_vector(v) for v in greedy_complement(ld.gamma, ld.y)]
    return GammaStarReport(c, rep.level, rep.dim_gamma_star, rep.dim, rep.dim_gamma_c1_Q, rep.stabilized, words)


def stabilized_level(alg: LeibnizAlgebra, c: int, **policy) -> int:
    rep = multiplier(alg, c, with_basis=False, **policy)
    return rep.level


# relative constructions over one presentation


@dataclass(eq=False)
class PairData:
    """Everything the four-term sequence needs for an algebra, an ideal and one level."""

    base: LevelData
    ideal: Subspace
    s: Subspace
    y_s: Subspace
    x_s: Subspace

    @property
    def dims(self) -> dict[str, int]:
        b = self.base
        return {"X_R": b.x.dim, "Y_R": b.y.dim, "X_S": self.x_s.dim, "Y_S": self.y_s.dim,
                "Gamma": b.gamma.dim}


def _pair_data(alg: LeibnizAlgebra, ideal: Ideal | Subspace, c: int, level: int, mode: str,
               max_dim: int) -> PairData:
    n_sp = ideal.space if isinstance(ideal, Ideal) else ideal
    base = level_data(alg, c, level, mode, max_dim)
    pres = base.pres
    s = pres.rho.preimage(n_sp)
    qd = quotient_data(Subspace.full(alg.dim), n_sp, check=False)
    to_quot = lambda v: qd.project_sparse(pres.rho.apply_sparse(v))
    y_s = relative_gamma(pres.free.algebra, s, c)
    x_s = intersect_kernel(base.gamma, to_quot, qd.dim)
    return PairData(base, n_sp, s, y_s, x_s)


def _resolve_level(alg: LeibnizAlgebra, c: int, level: int | None, mode: str, max_dim: int) -> int:
    if level is not None:
        k = _class_or_raise(alg)
        if level < k:
            raise LevelTooSmall(f"level {level} is below the nilpotency class {k}", cls=k, level=level)
        return level
    return stabilized_level(alg, c, mode=mode, max_dim=max_dim)


def _require_ideal(alg: LeibnizAlgebra, ideal: Ideal | Subspace) -> Subspace:
    if isinstance(ideal, Ideal) and ideal.two_sided:
        return ideal.space
    return certify_ideal(alg, ideal.space if isinstance(ideal, Ideal) else ideal).space


@dataclass
class InducedMap:
    level: int
    dim_source: int
    dim_target: int
    rank: int
    kernel_dim: int
    matrix: list[list] | None = None


def induced_multiplier_map(alg: LeibnizAlgebra, ideal: Ideal | Subspace, c: int, level: int | None = None,
                           mode: str = "minimal", max_dim: int = DEFAULT_MAX_DIM,
                           with_matrix: bool = True) -> InducedMap:
    """The natural map from the multiplier of ``alg`` to that of ``alg/ideal`` at one level."""
    n_sp = _require_ideal(alg, ideal)
    if alg.dim == 0:
        return InducedMap(0, 0, 0, 0, 0, [])
    level = _resolve_level(alg, c, level, mode, max_dim)
    pd = _pair_data(alg, n_sp, c, level, mode, max_dim)
    b = pd.base
    image = subspace_sum(b.x, pd.y_s)
    rank = image.dim - pd.y_s.dim
    dim_src = b.dim_m
    dim_tgt = pd.x_s.dim - pd.y_s.dim
    matrix = None
    if with_matrix:
        reps = greedy_complement(b.x, b.y)
        qd = quotient_data(pd.x_s, pd.y_s)
        cols = [qd.project(r) for r in reps]
        matrix = [[cols[j][i] for j in range(len(cols))] for i in range(qd.dim)]
    return InducedMap(level, dim_src, dim_tgt, rank, dim_src - rank, matrix)


@dataclass
class FourTermReport:
    level: int
    c: int
    terms: dict[str, int]
    relations: dict[str, bool]
    central: bool

    @property
    def ok(self) -> bool:
        return all(self.relations.values())


def four_term_check(alg: LeibnizAlgebra, ideal: Ideal | Subspace, c: int, level: int | None = None,
                    mode: str = "minimal", max_dim: int = DEFAULT_MAX_DIM) -> FourTermReport:
    """Dimensions of the four-term exact sequence and the relations derived from it.

    Raises ``AssertionFail`` with the full table if any relation fails.
    """
    n_sp = _require_ideal(alg, ideal)
    if alg.dim == 0:
        return FourTermReport(0, c, {}, {}, True)
    level = _resolve_level(alg, c, level, mode, max_dim)
    pd = _pair_data(alg, n_sp, c, level, mode, max_dim)
    b = pd.base
    pres = b.pres
    r_cap_ys = intersect_kernel(pd.y_s, pres.rho.apply_sparse, alg.dim)
    t1 = r_cap_ys.dim - b.y.dim
    mq = b.dim_m
    mqn = pd.x_s.dim - pd.y_s.dim
    gq = lower_term(alg, c + 1)
    n_cap_g = (n_sp & gq).dim
    g_qn = relative_gamma(alg, n_sp, c).dim
    t4 = n_cap_g - g_qn
    rank = subspace_sum(b.x, pd.y_s).dim - pd.y_s.dim
    ys_over_yr = pd.y_s.dim - b.y.dim
    central = g_qn == 0
    lie_top = alg.dim - lower_term(alg, 2).dim
    terms = {"kernel_term": t1, "multiplier": mq, "quotient_multiplier": mqn, "cokernel_term": t4,
             "ideal_dim": n_sp.dim, "ideal_meet_gamma": n_cap_g, "relative_gamma": g_qn,
             "relative_gamma_growth": ys_over_yr, "induced_rank": rank, "liezation_dim": lie_top}
    rel = {
        "alternating sum": t1 - mq + mqn - t4 == 0,
        "kernel = first term": mq - rank == t1,
        "quotient multiplier bound": mqn <= mq + t4,
        "intersection balance": mq + n_cap_g == mqn + g_qn + t1,
        "relative gamma balance": mq + n_cap_g == mqn + ys_over_yr,
    }
    if central:
        rel["central bound"] = mq + n_cap_g <= mqn + n_sp.dim * lie_top ** c
    # the quotient's own identity at this level
    gq_quot = pd.x_s.dim - pd.y_s.dim + _quotient_gamma_dim(alg, n_sp, c)
    _record("multiplier plus gamma identity", b.gamma.dim - pd.y_s.dim == gq_quot,
            "multiplier plus gamma identity fails for the quotient presentation", level=level, c=c, **terms)
    for name, ok in rel.items():
        CHECKS["four-term " + name] += 1
        if not ok:
            CHECKS["four-term " + name + ":fail"] += 1
    report = FourTermReport(level, c, terms, rel, central)
    if not report.ok:
        bad = [k for k, v in rel.items() if not v]
        raise AssertionFail(f"four-term relations failed: {', '.join(bad)}", table=terms, failed=bad)
    return report


def _quotient_gamma_dim(alg: LeibnizAlgebra, n_sp: Subspace, c: int) -> int:
    """``dim γ_{c+1}^Lie(alg/ideal)`` computed in the quotient algebra itself."""
    Qn, _ = quotient(alg, n_sp)
    return lower_term(Qn, c + 1).dim


# Z* and capability


@dataclass
class ZStarReport:
    c: int
    space: Subspace
    level: int
    stabilized: bool
    per_level: list[tuple[int, int]]

    @property
    def dim(self) -> int:
        return self.space.dim


def _z_star_level(alg: LeibnizAlgebra, c: int, m: int, mode: str, max_dim: int) -> Subspace:
    ld = level_data(alg, c, m, mode, max_dim)
    trunc = ld.pres.free
    reduced, _ = quotient(trunc.algebra, Ideal(trunc.algebra, ld.y, True))
    z = upper_term(reduced, c)
    # coset representatives of the reduced algebra are the non-pivot basis words, so the induced map reads off rho
    taken = set(ld.y.pivots)
    cols = [ld.pres.rho.columns[w] for w in range(trunc.dim) if w not in taken]
    img = []
    for v in z.vectors():
        acc: dict = {}
        for j, x in v.items():
            for i, y in cols[j].items():
                acc[i] = acc.get(i, 0) + x * y
        img.append({i: t for i, t in acc.items() if t})
    return Subspace(alg.dim, img)


def z_star(alg: LeibnizAlgebra, c: int, m_start: int | None = None, m_max: int | None = None,
           mode: str = "minimal", max_dim: int = DEFAULT_MAX_DIM, post_check: bool = True) -> ZStarReport:
    """Image of ``ζ_c^Lie(free_m/y)`` in ``alg``; decreasing upper bounds in ``m``."""
    if alg.dim == 0:
        return ZStarReport(c, Subspace.zero(0), 0, True, [])
    lo, hi = level_window(alg, c, m_start, m_max)
    d = len(generator_images(alg, mode))
    per: list[tuple[int, int]] = []
    prev: Subspace | None = None
    stabilized = False
    level = lo
    for m in range(lo, hi + 1):
        if free_dim(d, m) > max_dim:
            break
        z = _z_star_level(alg, c, m, mode, max_dim)
        if prev is not None and not z <= prev:
            raise AssertionFail("level upper bounds for Z* are not decreasing")
        per.append((m, z.dim))
        level = m
        if prev is not None and z == prev:
            stabilized = True
            prev = z
            break
        prev = z
    if prev is None:
        raise LevelTooSmall(f"no level in {lo}..{hi} fits under the dimension cap {max_dim}")
    rep = ZStarReport(c, prev, level, stabilized, per)
    if post_check:
        _z_star_post_checks(alg, c, rep, mode, max_dim)
    return rep


def _z_star_post_checks(alg: LeibnizAlgebra, c: int, rep: ZStarReport, mode: str, max_dim: int) -> None:
    zc = upper_term(alg, c)
    _record("Z* inside upper term", rep.space <= zc, "Z* is not inside the upper Lie-central term")
    if 0 < rep.dim < alg.dim:
        Qz, _ = quotient(alg, rep.space)
        inner = z_star(Qz, c, mode=mode, max_dim=max_dim, post_check=False)
        _record("Z* of the quotient by Z* vanishes", inner.dim == 0, "Z* of the quotient by Z* is not zero",
                dim=inner.dim)
    else:
        CHECKS["Z* of the quotient by Z* vanishes"] += 1


def is_c_lie_capable(alg: LeibnizAlgebra, c: int, cross_check: bool = False, **policy) -> bool:
    cap = z_star(alg, c, **policy).dim == 0
    if cross_check:
        routes = capability_routes(alg, c, **policy)
        if routes.complete and routes.per_vector != cap:
            raise AgreementFail("capability routes disagree", z_star=cap, per_vector=routes.per_vector)
    return cap


@dataclass
class CapabilityRoutes:
    z_star_dim: int
    z_star_capable: bool
    per_vector: bool
    complete: bool
    injective_vectors: list[tuple]
    dimension_route: bool


def capability_routes(alg: LeibnizAlgebra, c: int, **policy) -> CapabilityRoutes:
    """Both capability routes side by side.

    The per-vector route applies the kernel test to the ideal generated by each
    canonical basis vector of ``ζ_c^Lie(alg)``.  A vector with injective induced
    map proves non-capability; finding none is conclusive only when the upper
    term is at most one-dimensional.
    """
    zs = z_star(alg, c, **policy)
    mode = policy.get("mode", "minimal")
    max_dim = policy.get("max_dim", DEFAULT_MAX_DIM)
    zc = upper_term(alg, c)
    injective = []
    # both routes at the level where Z* settled, where they are equivalent exactly
    level = zs.level
    for v in zc.basis_sparse():
        gen = ideal_closure(alg, [v]).space
        im = induced_multiplier_map(alg, gen, c, level=level, mode=mode, max_dim=max_dim, with_matrix=False)
        if im.kernel_dim == 0:
            injective.append(tuple(v.get(i, 0) for i in range(alg.dim)))
    per_vector = not injective
    complete = bool(injective) or zc.dim <= 1
    # dimension route: Z* satisfies the equality of the dimension formula
    dim_ok = True
    if zs.dim:
        ft = four_term_check(alg, zs.space, c, level=level, mode=mode, max_dim=max_dim)
        t = ft.terms
        dim_ok = t["quotient_multiplier"] == t["multiplier"] + t["ideal_meet_gamma"]
        _record("dimension formula for Z*", dim_ok, "dimension formula fails for the ideal Z*", **t)
    return CapabilityRoutes(zs.dim, zs.dim == 0, per_vector, complete, injective, dim_ok)
