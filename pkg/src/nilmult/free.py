"""Free Leibniz algebras truncated at word length ``m``.

A word ``w1 w2 ... wn`` stands for the left-normed bracket
``[[...[w1, w2], ...], wn]``; words longer than ``m`` are zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Sequence

from .algebra import LeibnizAlgebra, Morphism, hom
from .errors import LevelTooSmall, NotNilpotent, ResourceLimit
from .exactlin import SVec, sparse
from .lie import absolute_class

Word = tuple[int, ...]

DEFAULT_MAX_DIM = 20000

_MEMO: dict[tuple[Word, Word], dict[Word, int]] = {}


def word_bracket(u: Word, v: Word, m: int) -> dict[Word, int]:
    """Bracket of two basis words as a combination of words, zero beyond length ``m``.

    ``[u, z] = uz`` for a letter ``z``; otherwise ``v = v'z`` and
    ``[u, v'z] = [[u, v'], z] - [[u, z], v']``.
    """
    if len(u) + len(v) > m:
        return {}
    return dict(_bracket(tuple(u), tuple(v)))


def _bracket(u: Word, v: Word) -> dict[Word, int]:
    # results never depend on the truncation once |u| + |v| <= m
    key = (u, v)
    hit = _MEMO.get(key)
    if hit is not None:
        return hit
    if len(v) == 1:
        res = {u + v: 1}
    else:
        head, z = v[:-1], v[-1:]
        res: dict[Word, int] = {}
        for w, a in _bracket(u, head).items():
            res[w + z] = res.get(w + z, 0) + a
        for w, a in _bracket(u + z, head).items():
            res[w] = res.get(w, 0) - a
        res = {w: a for w, a in res.items() if a}
    _MEMO[key] = res
    return res


def free_dim(d: int, m: int) -> int:
    return sum(d ** i for i in range(1, m + 1))


def _label(w: Word, d: int) -> str:
    if d <= 4:
        return "".join("xyzw"[a] for a in w)
    return ".".join(f"x{a + 1}" for a in w)


@dataclass(eq=False)
class FreeTruncation:
    d: int
    m: int
    words: tuple[Word, ...]
    index: dict[Word, int]
    algebra: LeibnizAlgebra

    @property
    def dim(self) -> int:
        return len(self.words)

    def word_vector(self, v: SVec) -> dict[str, object]:
        return {_label(self.words[i], self.d): x for i, x in sorted(v.items())}

    def degree(self, i: int) -> int:
        return len(self.words[i])


def free_truncation(d: int, m: int, max_dim: int = DEFAULT_MAX_DIM) -> FreeTruncation:
    if d < 1 or m < 1:
        raise ValueError("free_truncation needs d >= 1 and m >= 1")
    n = free_dim(d, m)
    if n > max_dim:
        raise ResourceLimit(f"free truncation ({d},{m}) has dimension {n} > cap {max_dim}", dim=n, cap=max_dim)
    return _free_truncation(d, m)


@lru_cache(maxsize=16)
def _free_truncation(d: int, m: int) -> FreeTruncation:
    words: list[Word] = []
    for length in range(1, m + 1):
        words.extend(product(range(d), repeat=length))
    index = {w: i for i, w in enumerate(words)}
    sc = {}
    for iu, u in enumerate(words):
        room = m - len(u)
        if room <= 0:
            break
        for iv, v in enumerate(words):
            if len(v) > room:
                break
            r = _bracket(u, v)
            if r:
                sc[(iu, iv)] = {index[w]: a for w, a in r.items()}
    labels = [_label(w, d) for w in words]
    gens = [{a: 1} for a in range(d)]
    A = LeibnizAlgebra(f"free({d},{m})", len(words), sc, labels, gens)
    return FreeTruncation(d, m, tuple(words), index, A)


def evaluation_hom(trunc: FreeTruncation, images: Sequence, target: LeibnizAlgebra) -> Morphism:
    """The homomorphism sending letter ``a`` to ``images[a]`` and words to left-normed brackets."""
    if len(images) != trunc.d:
        raise ValueError(f"need {trunc.d} images, got {len(images)}")
    k = absolute_class(target)
    if k is None:
        raise NotNilpotent(f"{target.name} is not nilpotent")
    if k > trunc.m:
        raise LevelTooSmall(f"{target.name} has class {k} > truncation level {trunc.m}", cls=k, level=trunc.m)
    imgs = [g if isinstance(g, dict) else sparse(g) for g in images]
    cols: list[SVec] = []
    for w in trunc.words:
        if len(w) == 1:
            cols.append(dict(imgs[w[0]]))
        else:
            cols.append(target.bracket_sparse(cols[trunc.index[w[:-1]]], imgs[w[-1]]))
    f = hom(trunc.algebra, target, cols)
    if not f.is_hom:
        raise AssertionError(f"evaluation map failed the homomorphism check at {f.witness}")
    return f
