"""Independent brute-force oracles.

Nothing here imports the production linear algebra or bracket code: words are
tuples, vectors are dense lists of Fractions and spans are computed by a
plain Gauss-Jordan elimination written for this file.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product


def rref_rows(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    rows = [list(map(Fraction, r)) for r in rows if any(r)]
    if not rows:
        return []
    ncols = len(rows[0])
    out: list[list[Fraction]] = []
    col = 0
    while rows and col < ncols:
        piv = next((r for r in rows if r[col] != 0), None)
        if piv is None:
            col += 1
            continue
        rows.remove(piv)
        piv = [x / piv[col] for x in piv]
        rows = [[a - r[col] * b for a, b in zip(r, piv)] for r in rows]
        rows = [r for r in rows if any(r)]
        out = [[a - r[col] * b for a, b in zip(r, piv)] for r in out]
        out.append(piv)
        col += 1
    out.sort(key=lambda r: next(i for i, x in enumerate(r) if x))
    return out


def span_dim(rows) -> int:
    return len(rref_rows(list(rows)))


def nullspace(matrix: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of ``{v : matrix v = 0}``."""
    red = rref_rows(matrix)
    pivots = [next(i for i, x in enumerate(r) if x) for r in red]
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in zip(red, pivots):
            v[p] = -r[f]
        basis.append(v)
    return basis


# free Leibniz algebra: closed form for the bracket of words


def lam(word: tuple[int, ...]) -> dict[tuple[int, ...], int]:
    """Associative expansion of the left-normed commutator ``[...[w1, w2], ..., wn]``."""
    poly = {word[:1]: 1}
    for z in word[1:]:
        nxt: dict = {}
        for w, a in poly.items():
            nxt[w + (z,)] = nxt.get(w + (z,), 0) + a
            nxt[(z,) + w] = nxt.get((z,) + w, 0) - a
        poly = {w: a for w, a in nxt.items() if a}
    return poly


def closed_form_bracket(u, v, m):
    """``[u, v] = u * lam(v)``, truncated beyond length ``m``."""
    if len(u) + len(v) > m:
        return {}
    return {tuple(u) + w: a for w, a in lam(tuple(v)).items()}


class FreeOracle:
    def __init__(self, d: int, m: int):
        self.d, self.m = d, m
        self.words = [w for n in range(1, m + 1) for w in product(range(d), repeat=n)]
        self.index = {w: i for i, w in enumerate(self.words)}
        self.n = len(self.words)

    def bracket(self, x: list, y: list) -> list:
        out = [Fraction(0)] * self.n
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                for w, c in closed_form_bracket(self.words[i], self.words[j], self.m).items():
                    out[self.index[w]] += a * b * c
        return out

    def lie(self, x, y):
        return [a + b for a, b in zip(self.bracket(x, y), self.bracket(y, x))]

    def unit(self, i):
        v = [Fraction(0)] * self.n
        v[i] = Fraction(1)
        return v


def table_bracket(table, dim, x, y):
    """Bracket from a 0-based table ``{(i, j): {k: coeff}}``."""
    out = [Fraction(0)] * dim
    for (i, j), val in table.items():
        if x[i] and y[j]:
            for k, c in val.items():
                out[k] += x[i] * y[j] * Fraction(c)
    return out


def _commutator_steps(fr: FreeOracle, start, slots):
    """Left-normed Lie-commutator chain: ``[[start, s_1]_Lie, ..., s_c]_Lie`` spans."""
    cur = rref_rows(start)
    for slot in slots:
        vecs = [fr.lie(t, s) for t in cur for s in slot]
        cur = rref_rows(vecs)
    return cur


def multiplier_oracle(table, dim, images, c, m, all_positions=False):
    """Level-``m`` multiplier of the algebra given by ``table`` via explicit spans.

    ``images`` lists target vectors for the free generators.  With
    ``all_positions`` the relative term sums chains with the relation module
    in any slot instead of only the first one.
    """
    d = len(images)
    fr = FreeOracle(d, m)
    cols = []
    for w in fr.words:
        v = [Fraction(x) for x in images[w[0]]]
        for a in w[1:]:
            v = table_bracket(table, dim, v, [Fraction(x) for x in images[a]])
        cols.append(v)
    eval_matrix = [[cols[j][i] for j in range(fr.n)] for i in range(dim)]
    rel = nullspace(eval_matrix, fr.n)
    full = [fr.unit(i) for i in range(fr.n)]
    gamma = _commutator_steps(fr, full, [full] * c)
    if all_positions:
        pieces = []
        for p in range(c + 1):
            start = rel if p == 0 else full
            slots = [rel if i == p else full for i in range(1, c + 1)]
            pieces.extend(_commutator_steps(fr, start, slots))
        y = rref_rows(pieces)
    else:
        y = _commutator_steps(fr, rel, [full] * c)
    meet = len(rel) + len(gamma) - span_dim(rel + gamma)
    return meet - len(y)
