"""Command-line interface: ``nilmult <command> ...``.

Exit codes: 0 success (including the no-ideal-complement outcome of
``stemcover``), 2 internal identity or agreement failure, 3 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Callable

from . import catalog
from .algebra import LeibnizAlgebra, certify_ideal, check_leibniz, hom
from .baer import (
    CHECKS,
    capability_routes,
    four_term_check,
    gamma_star,
    multiplier,
    z_star,
)
from .errors import AgreementFail, IdentityFail, InputError, NilmultError, NoIdealComplement
from .exactlin import Subspace
from .extensions import extension, is_c_lie_central, stem_cover_construct, stem_cover_report
from .fileio import algebra_to_obj, format_rational, parse_algebra, parse_ideal, parse_map, read_bytes, serialize_algebra
from .free import DEFAULT_MAX_DIM
from .lie import absolute_class, ann, lie_center, liezation, lower_lie_series, upper_lie_series

SCHEMA = "nilmult.report/1"

NONEXISTENCE_NOTE = (
    "no ideal complement of the multiplier exists in the relation module; when c exceeds the "
    "Lie-class and the multiplier is nonzero this is the predicted absence of a c-Lie-covering, "
    "which stands against the general existence claim for coverings"
)


class Ctx:
    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.check = not args.no_check
        self.max_dim = args.max_dim

    def algebra(self, ref: str) -> LeibnizAlgebra:
        if ref.startswith("catalog:"):
            return catalog.get(ref[len("catalog:"):], self.max_dim)
        return parse_algebra(read_bytes(ref), check=self.check)


# formatting helpers


def _vec(v) -> list[str]:
    return [format_rational(x) for x in v]


def space_obj(sp: Subspace) -> dict:
    return {"dim": sp.dim, "basis": [_vec(r) for r in sp.basis.rows]}


def space_text(A: LeibnizAlgebra, sp: Subspace) -> str:
    if sp.dim == 0:
        return "0"
    if sp.dim == A.dim:
        return f"everything (dim {A.dim})"
    return "span(" + ", ".join(A.format_vector(v) for v in sp.basis_sparse()) + ")"


def _words_text(words: list[dict]) -> str:
    parts = []
    for w in words:
        parts.append(" + ".join(f"{format_rational(x)}*{k}" if x != 1 else k for k, x in w.items()))
    return "[" + ", ".join(parts) + "]"


def _words_obj(words: list[dict]) -> list[dict]:
    return [{k: format_rational(x) for k, x in w.items()} for w in words]


# commands; each returns (json-able dict, text)


def cmd_check(ctx: Ctx):
    A = _load_unchecked(ctx, ctx.args.alg)
    chk = check_leibniz(A)
    if not chk:
        raise IdentityFail(f"Leibniz identity fails at basis triple {chk.triple}",
                           triple=list(chk.triple), residual=_vec(chk.residual))
    return {"name": A.name, "dim": A.dim, "ok": True, "is_lie": A.is_lie()}, \
        f"{A.name}: Leibniz identity holds on all {A.dim ** 3} basis triples" + (" (Lie algebra)" if A.is_lie() else "")


def _load_unchecked(ctx: Ctx, ref: str) -> LeibnizAlgebra:
    if ref.startswith("catalog:"):
        return catalog.get(ref[len("catalog:"):], ctx.max_dim)
    return parse_algebra(read_bytes(ref), check=False)


def _load_ideal(ctx: Ctx, A: LeibnizAlgebra, path: str) -> Subspace:
    sp = parse_ideal(read_bytes(path), A.dim)
    certify_ideal(A, sp)
    return sp


def cmd_series(ctx: Ctx):
    a = ctx.args
    A = ctx.algebra(a.alg)
    if a.upper:
        rep = upper_lie_series(A)
    else:
        rel = _load_ideal(ctx, A, a.relative) if a.relative else None
        rep = lower_lie_series(A, rel)
    label = "upper" if a.upper else "lower"
    out = {"name": A.name, "kind": rep.kind, "dims": rep.dims, "class": rep.cls,
           "terms": [space_obj(t) for t in rep.terms], "absolute_class": absolute_class(A)}
    if rep.relative_to is not None:
        out["relative_to"] = space_obj(rep.relative_to)
    lines = [f"{label} Lie-central series of {A.name}{' relative to the given ideal' if a.relative else ''}"]
    for i, t in enumerate(rep.terms):
        idx = i if a.upper else i + 1
        lines.append(f"  {'zeta' if a.upper else 'gamma'}_{idx}: dim {t.dim}  {space_text(A, t)}")
    lines.append(f"dims {rep.dims}, class {rep.cls if rep.cls is not None else 'none (not Lie-nilpotent)'}")
    return out, "\n".join(lines)


def cmd_center(ctx: Ctx):
    A = ctx.algebra(ctx.args.alg)
    z = lie_center(A)
    return {"name": A.name, "lie_center": space_obj(z)}, f"Lie-center of {A.name}: {space_text(A, z)}"


def cmd_ann(ctx: Ctx):
    A = ctx.algebra(ctx.args.alg)
    squares = ann(A).space
    return {"name": A.name, "ann": space_obj(squares)}, f"span of squares in {A.name}: {space_text(A, squares)}"


def cmd_liezation(ctx: Ctx):
    A = ctx.algebra(ctx.args.alg)
    lie_quot, _ = liezation(A)
    return {"name": A.name, "liezation": algebra_to_obj(lie_quot)}, \
        f"Liezation of {A.name}: dim {lie_quot.dim}\n" + serialize_algebra(lie_quot).rstrip()


def _policy(ctx: Ctx) -> dict:
    a = ctx.args
    p = {"mode": a.mode, "max_dim": ctx.max_dim}
    if getattr(a, "m_start", None) is not None:
        p["m_start"] = a.m_start
    if getattr(a, "m_max", None) is not None:
        p["m_max"] = a.m_max
    return p


def cmd_multiplier(ctx: Ctx):
    a = ctx.args
    A = ctx.algebra(a.alg)
    p = _policy(ctx)
    if a.level is not None:
        p.pop("m_start", None), p.pop("m_max", None)
        rep = multiplier(A, a.c, level=a.level, **p)
    else:
        rep = multiplier(A, a.c, **p)
    out = {"name": A.name, "c": a.c, "dim": rep.dim, "level": rep.level, "stabilized": rep.stabilized,
           "mode": rep.mode, "per_level": [{"level": m, "dim": d, "dim_gamma_star": g} for m, d, g in rep.per_level],
           "basis_words": _words_obj(rep.basis_words), "dim_gamma_star": rep.dim_gamma_star,
           "dim_gamma_c1": rep.dim_gamma_c1_Q, "stop_reason": rep.stop_reason,
           "note": "level values are lower bounds; a value counts as settled only when stabilized"}
    text = (f"multiplier of {A.name}, c={a.c}: dim {rep.dim} at level {rep.level} "
            f"({'stabilized' if rep.stabilized else 'NOT stabilized'}; {rep.stop_reason})\n"
            f"  per level: {[(m, d) for m, d, _ in rep.per_level]}\n"
            f"  coset representatives: {_words_text(rep.basis_words)}")
    return out, text


def cmd_gammastar(ctx: Ctx):
    a = ctx.args
    A = ctx.algebra(a.alg)
    p = _policy(ctx)
    rep = gamma_star(A, a.c, level=a.level, **p)
    out = {"name": A.name, "c": a.c, "dim": rep.dim, "dim_multiplier": rep.dim_M,
           "dim_gamma_c1": rep.dim_gamma_c1_Q, "level": rep.level, "stabilized": rep.stabilized,
           "coset_words": _words_obj(rep.coset_words)}
    text = (f"gamma* of {A.name}, c={a.c}: dim {rep.dim} = {rep.dim_M} (multiplier) + "
            f"{rep.dim_gamma_c1_Q} (lower term) at level {rep.level}"
            f" ({'stabilized' if rep.stabilized else 'NOT stabilized'})")
    return out, text


def cmd_zstar(ctx: Ctx):
    a = ctx.args
    A = ctx.algebra(a.alg)
    rep = z_star(A, a.c, **_policy(ctx))
    out = {"name": A.name, "c": a.c, "dim": rep.dim, "z_star": space_obj(rep.space), "level": rep.level,
           "stabilized": rep.stabilized, "per_level": [{"level": m, "dim": d} for m, d in rep.per_level]}
    text = (f"Z* of {A.name}, c={a.c}: {space_text(A, rep.space)} at level {rep.level} "
            f"({'stabilized' if rep.stabilized else 'NOT stabilized'})")
    return out, text


def cmd_capable(ctx: Ctx):
    a = ctx.args
    A = ctx.algebra(a.alg)
    p = _policy(ctx)
    zs = z_star(A, a.c, **p)
    out = {"name": A.name, "c": a.c, "capable": zs.dim == 0, "z_star_dim": zs.dim, "level": zs.level,
           "stabilized": zs.stabilized}
    text = f"{A.name} is {'' if zs.dim == 0 else 'not '}{a.c}-Lie-capable (dim Z* = {zs.dim}, level {zs.level})"
    if a.cross_check:
        r = capability_routes(A, a.c, **p)
        out["routes"] = {"per_vector_capable": r.per_vector, "per_vector_complete": r.complete,
                         "injective_vectors": [_vec(v) for v in r.injective_vectors],
                         "dimension_route": r.dimension_route}
        agree = (not r.complete) or r.per_vector == (zs.dim == 0)
        out["routes"]["agree"] = agree
        text += (f"\n  per-vector route: {'capable' if r.per_vector else 'not capable'}"
                 f" ({'conclusive' if r.complete else 'inconclusive'}); dimension route holds: {r.dimension_route}")
        if not agree:
            raise AgreementFail("capability routes disagree", **out["routes"])
    return out, text


def cmd_extcheck(ctx: Ctx):
    a = ctx.args
    total = ctx.algebra(a.total)
    base = ctx.algebra(a.base)
    mat = parse_map(read_bytes(a.map), base.dim, total.dim)
    ext = extension(hom(total, base, mat))
    central = is_c_lie_central(ext, a.c)
    out = {"total": total.name, "base": base.name, "c": a.c, "kernel": space_obj(ext.kernel.space), "central": central}
    lines = [f"{total.name} -> {base.name}, kernel dim {ext.kernel.dim}", f"  {a.c}-Lie-central: {central}"]
    if central:
        rep = stem_cover_report(ext, a.c, **_policy(ctx))
        out.update({"stem": rep.stem, "stem_cover": rep.cover, "multiplier_dim": rep.multiplier_dim,
                    "stabilized": rep.multiplier_stabilized, "induced_rank": rep.induced_rank,
                    "induced_map_evaluated": rep.induced_rank is not None})
        lines.append(f"  {a.c}-Lie-stem: {rep.stem}")
        if rep.stem:
            lines.append(f"  stem cover: {rep.cover} (kernel dim {rep.kernel_dim}, multiplier dim "
                         f"{rep.multiplier_dim}{'' if rep.multiplier_stabilized else ', NOT stabilized'})")
            lines.append("  induced map on multipliers: " + (
                "not evaluated" if rep.induced_rank is None else f"rank {rep.induced_rank}"))
    return out, "\n".join(lines)


def cmd_stemcover(ctx: Ctx):
    a = ctx.args
    A = ctx.algebra(a.alg)
    try:
        sc = stem_cover_construct(A, a.c, mode=a.mode, max_dim=ctx.max_dim)
    except NoIdealComplement as exc:
        out = {"name": A.name, "c": a.c, "result": exc.code, "detail": str(exc), "note": NONEXISTENCE_NOTE}
        out.update({k: v for k, v in exc.details.items()})
        out.setdefault("level", (exc.details.get("levels") or [None])[-1])
        return out, f"{exc.code}: {exc}\n  {NONEXISTENCE_NOTE}"
    cover = algebra_to_obj(sc.cover)
    if a.output:
        Path(a.output).write_text(serialize_algebra(sc.cover))
    out = {"name": A.name, "c": a.c, "result": "STEM_COVER", "dim": sc.cover.dim,
           "multiplier_dim": sc.multiplier_dim, "level": sc.level, "stabilized": sc.stabilized, "cover": cover,
           "projection": [_vec(r) for r in sc.extension.pi.matrix.rows]}
    text = (f"stem cover of {A.name}, c={a.c}: dim {sc.cover.dim} = {A.dim} + {sc.multiplier_dim} "
            f"(level {sc.level}, {'stabilized' if sc.stabilized else 'NOT stabilized'})\n"
            + serialize_algebra(sc.cover).rstrip())
    return out, text


def cmd_fourterm(ctx: Ctx):
    a = ctx.args
    A = ctx.algebra(a.alg)
    ideal = _load_ideal(ctx, A, a.ideal)
    level, stabilized = a.level, False
    if level is None and A.dim:
        m = multiplier(A, a.c, mode=a.mode, max_dim=ctx.max_dim, with_basis=False)
        level, stabilized = m.level, m.stabilized
    rep = four_term_check(A, ideal, a.c, level=level, mode=a.mode, max_dim=ctx.max_dim)
    out = {"name": A.name, "c": a.c, "level": rep.level, "stabilized": stabilized,
           "terms": rep.terms, "relations": rep.relations, "central": rep.central, "ok": rep.ok}
    lines = [f"four-term sequence for {A.name}, c={a.c}, level {rep.level}"]
    lines += [f"  {k}: {v}" for k, v in rep.terms.items()]
    lines += [f"  {k}: {'ok' if v else 'FAIL'}" for k, v in rep.relations.items()]
    return out, "\n".join(lines)


def cmd_catalog(ctx: Ctx):
    a = ctx.args
    if a.action == "list":
        out = {"entries": [{"name": n, "description": catalog.describe(n)} for n in catalog.names()]}
        return out, "\n".join(f"{n:12s} {catalog.describe(n)}" for n in catalog.names())
    if not a.name:
        raise InputError("catalog show needs a name")
    A = catalog.get(a.name, ctx.max_dim)
    return {"algebra": algebra_to_obj(A)}, serialize_algebra(A).rstrip()


# parser


class _Parser(argparse.ArgumentParser):
    """Usage errors are input errors, so they exit with 3 rather than argparse's 2."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(3, f"{self.prog}: error: {message}\n")


def _common() -> argparse.ArgumentParser:
    p = _Parser(add_help=False)
    p.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    p.add_argument("--no-check", action="store_true", default=argparse.SUPPRESS,
                   help="skip the Leibniz identity check when loading files")
    p.add_argument("--max-dim", type=int, default=argparse.SUPPRESS,
                   help=f"cap on free truncation dimension (default {DEFAULT_MAX_DIM})")
    return p


def _baer_options(p: argparse.ArgumentParser, level: bool = True) -> None:
    p.add_argument("-c", type=int, required=True, help="class parameter c >= 1")
    p.add_argument("--mode", choices=("minimal", "full"), default="minimal",
                   help="generators of the free presentation")
    if level:
        p.add_argument("--level", type=int, default=None, help="evaluate at one truncation level")
    p.add_argument("--m-start", type=int, default=None)
    p.add_argument("--m-max", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="nilmult", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)
    commands: dict[str, Callable] = {}

    def add(name: str, fn: Callable, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help, parents=[common])
        sp.set_defaults(fn=fn)
        commands[name] = fn
        return sp

    add("check", cmd_check, "check the Leibniz identity").add_argument("alg")
    sp = add("series", cmd_series, "lower or upper Lie-central series")
    sp.add_argument("alg")
    sp.add_argument("--relative", metavar="IDEAL_FILE")
    sp.add_argument("--upper", action="store_true")
    add("center", cmd_center, "Lie-center").add_argument("alg")
    add("ann", cmd_ann, "span of squares").add_argument("alg")
    add("liezation", cmd_liezation, "quotient by the span of squares").add_argument("alg")
    sp = add("multiplier", cmd_multiplier, "c-nilpotent multiplier")
    sp.add_argument("alg")
    _baer_options(sp)
    sp.add_argument("--auto", action="store_true", help="level sweep until stabilization (default)")
    sp = add("gammastar", cmd_gammastar, "companion invariant gamma*")
    sp.add_argument("alg")
    _baer_options(sp)
    sp = add("zstar", cmd_zstar, "c-Lie-characteristic ideal Z*")
    sp.add_argument("alg")
    _baer_options(sp, level=False)
    sp = add("capable", cmd_capable, "c-Lie-capability")
    sp.add_argument("alg")
    _baer_options(sp, level=False)
    sp.add_argument("--cross-check", action="store_true", help="also run the per-vector route")
    sp = add("extcheck", cmd_extcheck, "classify an extension given by a map file")
    sp.add_argument("total")
    sp.add_argument("base")
    sp.add_argument("map")
    _baer_options(sp, level=False)
    sp = add("stemcover", cmd_stemcover, "construct a c-Lie stem cover")
    sp.add_argument("alg")
    _baer_options(sp, level=False)
    sp.add_argument("-o", "--output")
    sp = add("fourterm", cmd_fourterm, "four-term exact sequence bookkeeping")
    sp.add_argument("alg")
    sp.add_argument("ideal")
    _baer_options(sp)
    sp = add("catalog", cmd_catalog, "built-in algebras")
    sp.add_argument("action", choices=("list", "show"))
    sp.add_argument("name", nargs="?")
    return parser


def _emit(ctx: Ctx | None, fmt: str, command: str, payload: dict, text: str, stream=None) -> None:
    stream = stream or sys.stdout
    if fmt == "json":
        doc = {"schema": SCHEMA, "command": command}
        doc.update(payload)
        stream.write(json.dumps(doc, indent=2, default=str) + "\n")
    else:
        stream.write(text + "\n")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for key, default in (("format", "text"), ("no_check", False), ("max_dim", DEFAULT_MAX_DIM)):
        if not hasattr(args, key):
            setattr(args, key, default)
    if hasattr(args, "c") and args.c is not None and args.c < 1:
        parser.error("-c must be at least 1")
    ctx = Ctx(args)
    try:
        payload, text = args.fn(ctx)
    except NilmultError as exc:
        err = exc.as_dict()
        if args.format == "json":
            _emit(ctx, "json", args.command, {"error": err}, "")
        else:
            extra = "".join(f"\n  {k}: {v}" for k, v in exc.details.items())
            sys.stderr.write(f"{exc.code}: {exc}{extra}\n")
        return exc.exit_code
    payload["checks"] = {k: v for k, v in sorted(CHECKS.items())}
    _emit(ctx, args.format, args.command, payload, text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
