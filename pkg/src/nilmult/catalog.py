"""Built-in algebras, addressed as ``catalog:<name>``.

Names: ``q2``, ``g_a``, ``g_b``, ``heisenberg``, ``q2+K``, ``abelian(n)`` and
``free(d,m)``.  The two four-dimensional examples are published as left
Leibniz tables; they are stored here transposed so that they satisfy the
right identity used throughout the package.
"""

from __future__ import annotations

import re
from functools import lru_cache

from .algebra import LeibnizAlgebra, abelian, check_leibniz, direct_sum, from_table
from .errors import IdentityFail, SchemaError
from .free import DEFAULT_MAX_DIM, free_truncation

_A_LABELS = ("a1", "a2", "a3", "a4")


def _left_table(name: str, dim: int, entries, labels) -> LeibnizAlgebra:
    return from_table(name, dim, entries, labels).opposite(name)


def _q2() -> LeibnizAlgebra:
    return from_table("q2", 2, {(2, 2): {1: 1}})


def _g_a() -> LeibnizAlgebra:
    # published as [a1,a2]=a3, [a2,a2]=a4, [a1,a3]=a4
    return _left_table("g_a", 4, {(1, 2): {3: 1}, (2, 2): {4: 1}, (1, 3): {4: 1}}, _A_LABELS)


def _g_b() -> LeibnizAlgebra:
    # published as [a1,a1]=a2, [a1,a2]=a3, [a1,a3]=a4
    return _left_table("g_b", 4, {(1, 1): {2: 1}, (1, 2): {3: 1}, (1, 3): {4: 1}}, _A_LABELS)


def _heisenberg() -> LeibnizAlgebra:
    return from_table("heisenberg", 3, {(1, 2): {3: 1}, (2, 1): {3: -1}}, ("x", "y", "z"))


def _q2_plus_k() -> LeibnizAlgebra:
    return direct_sum(_q2(), LeibnizAlgebra("K", 1, {}, ("k",)), name="q2+K")


_FIXED = {
    "q2": _q2,
    "g_a": _g_a,
    "g_b": _g_b,
    "heisenberg": _heisenberg,
    "q2+K": _q2_plus_k,
}

_DESCRIPTIONS = {
    "q2": "2-dim, [e2,e2]=e1; Lie-class 2",
    "g_a": "4-dim, maximal Lie-class 3 (published left table, stored transposed)",
    "g_b": "4-dim, Lie-class 4, equal to free(1,4) (published left table, stored transposed)",
    "heisenberg": "3-dim Heisenberg Lie algebra",
    "q2+K": "q2 plus a 1-dim abelian summand",
    "abelian(n)": "n-dim abelian",
    "free(d,m)": "free Leibniz algebra on d letters truncated at word length m",
}

_PARAM = re.compile(r"^(abelian|free)\((\d+)(?:,\s*(\d+))?\)$")


def names() -> list[str]:
    return list(_DESCRIPTIONS)


def describe(name: str) -> str:
    return _DESCRIPTIONS.get(name, "")


def get(name: str, max_dim: int = DEFAULT_MAX_DIM) -> LeibnizAlgebra:
    """Look up a built-in algebra; every entry passes ``check_leibniz``."""
    if name in _FIXED:
        return _cached(name)
    m = _PARAM.match(name.strip())
    if not m:
        raise SchemaError(f"unknown catalog entry {name!r}", path="catalog", known=names())
    kind, a, b = m.group(1), int(m.group(2)), m.group(3)
    if kind == "abelian":
        if b is not None:
            raise SchemaError("abelian takes one argument", path="catalog")
        return abelian(a)
    if b is None or a < 1 or int(b) < 1:
        raise SchemaError("free needs two positive arguments: free(d,m)", path="catalog")
    return free_truncation(a, int(b), max_dim).algebra


@lru_cache(maxsize=None)
def _cached(name: str) -> LeibnizAlgebra:
    A = _FIXED[name]()
    chk = check_leibniz(A)
    if not chk:
        raise IdentityFail(f"catalog entry {name} fails the Leibniz identity", triple=chk.triple)
    return A
