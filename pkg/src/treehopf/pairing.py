"""The Hopf pairing on planar forests and the dual basis.

Three independent evaluations are provided:

* ``pairing_recursive`` follows the characterising identities
  <1, x> = e(x), <xy, z> = <y (x) x, Delta(z)>, <B+(x), y> = <x, gamma(y)>;
* ``pairing_bijection`` tests the only candidate order-reversing bijection
  between the vertex sets against the four order conditions;
* ``pairing_tamari`` checks m(G) <= F in the forest poset.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import Element, TensorElement
from .forest import (
    DOT,
    Forest,
    as_forest,
    enumerate_forests,
    order_tables,
    split_at_biideal,
)

METHODS = ("bijection", "recursive", "tamari")


class SingularMatrixError(ArithmeticError):
    pass


def gamma(x) -> Element:
    """Remove a leading single-vertex tree; forests starting otherwise go to 0."""

    def on_forest(f: Forest) -> Element:
        if f.trees and f.trees[0] == DOT:
            return Element.of(Forest(f.trees[1:]))
        return Element()

    return Element.coerce(x).map(on_forest)


def gamma_prime(x) -> Element:
    """Remove a trailing single-vertex tree; forests ending otherwise go to 0."""

    def on_forest(f: Forest) -> Element:
        if f.trees and f.trees[-1] == DOT:
            return Element.of(Forest(f.trees[:-1]))
        return Element()

    return Element.coerce(x).map(on_forest)


def _gamma_forest(f: Forest) -> Forest | None:
    if f.trees and f.trees[0] == DOT:
        return Forest(f.trees[1:])
    return None


@lru_cache(maxsize=None)
def _pair_recursive(f: Forest, g: Forest) -> int:
    if f.weight != g.weight:
        return 0
    if f.is_one():
        return 1 if g.is_one() else 0
    if len(f) >= 2:
        # <x y, z> = <y (x) x, Delta(z)>, y the last tree; only the biideal
        # of weight(y) survives by homogeneity
        x, y = Forest(f.trees[:-1]), Forest(f.trees[-1:])
        p, r = split_at_biideal(g, y.weight)
        left = _pair_recursive(y, p)
        return left and left * _pair_recursive(x, r)
    h = _gamma_forest(g)
    if h is None:
        return 0
    return _pair_recursive(Forest(f.trees[0].children), h)


def _bilinear(fn, x, y) -> Fraction:
    x, y = Element.coerce(x), Element.coerce(y)
    total = Fraction(0)
    for f, c in x.items():
        for g, d in y.items():
            if f.weight == g.weight:
                v = fn(f, g)
                if v:
                    total += c * d * v
    return total


def pairing_recursive(x, y) -> Fraction:
    return _bilinear(_pair_recursive, x, y)


@lru_cache(maxsize=None)
def _pair_bijection(f: Forest, g: Forest) -> int:
    n = f.weight
    if n != g.weight:
        return 0
    if n == 0:
        return 1
    tf, tg = order_tables(f), order_tables(g)

    def sigma(p):
        return n - 1 - p

    for x in range(n):
        sx = sigma(x)
        for y in range(n):
            if x == y:
                continue
            sy = sigma(y)
            # x <=_high y  =>  sigma(x) >=_left sigma(y)
            if tf.high[y][x] and not tg.left[sx][sy]:
                return 0
            # x <=_left y  =>  sigma(x) >=_hl sigma(y)
            if tf.left[y][x] and not (tg.high[sx][sy] or tg.left[sx][sy]):
                return 0
            # sigma(x) <=_high sigma(y)  =>  x >=_left y
            if tg.high[sy][sx] and not tf.left[x][y]:
                return 0
            # sigma(x) <=_left sigma(y)  =>  x >=_hl y
            if tg.left[sy][sx] and not (tf.high[x][y] or tf.left[x][y]):
                return 0
    return 1


def pairing_bijection(x, y) -> Fraction:
    return _bilinear(_pair_bijection, x, y)


def _pair_tamari(f: Forest, g: Forest) -> int:
    from .tamari import less_eq, m_involution

    if f.weight != g.weight:
        return 0
    return 1 if less_eq(m_involution(g), f) else 0


def pairing_tamari(x, y) -> Fraction:
    return _bilinear(_pair_tamari, x, y)


_BY_NAME = {
    "bijection": pairing_bijection,
    "recursive": pairing_recursive,
    "tamari": pairing_tamari,
}


def pairing(x, y, method: str = "bijection") -> Fraction:
    try:
        fn = _BY_NAME[method]
    except KeyError:
        raise ValueError(f"unknown pairing method {method!r}") from None
    return fn(x, y)


def pair_tensors(u: TensorElement, v: TensorElement, method: str = "bijection") -> Fraction:
    """Factorwise pairing of two tensors of the same rank."""
    total = Fraction(0)
    for ku, c in u.items():
        for kv, d in v.items():
            term = c * d
            for a, b in zip(ku, kv):
                if not term:
                    break
                term *= pairing(a, b, method)
            total += term
    return total


@lru_cache(maxsize=None)
def _pair_prime(f: Forest, g: Forest) -> int:
    if f.weight != g.weight:
        return 0
    if f.is_one():
        return 1 if g.is_one() else 0
    if len(f) >= 2:
        # <x y, z>' = <x (x) y, Delta(z)>'
        x, y = Forest(f.trees[:-1]), Forest(f.trees[-1:])
        p, r = split_at_biideal(g, x.weight)
        left = _pair_prime(x, p)
        return left and left * _pair_prime(y, r)
    if not (g.trees and g.trees[-1] == DOT):
        return 0
    return _pair_prime(Forest(f.trees[0].children), Forest(g.trees[:-1]))


def pairing_prime(x, y) -> Fraction:
    """The (degenerate) pairing built on the trailing-vertex map gamma'."""
    return _bilinear(_pair_prime, x, y)


# ---------------------------------------------------------------------------
# Gram matrices and the dual basis


@dataclass(frozen=True)
class GramMatrix:
    n: int
    forests: tuple[Forest, ...]
    entries: tuple[tuple[int, ...], ...]

    def __getitem__(self, key) -> int:
        f, g = key
        idx = {h: k for k, h in enumerate(self.forests)}
        return self.entries[idx[as_forest(f)]][idx[as_forest(g)]]

    def reordered(self, order) -> GramMatrix:
        """Rows and columns permuted to follow ``order`` (a listing of F(n))."""
        order = tuple(as_forest(f) for f in order)
        idx = {h: k for k, h in enumerate(self.forests)}
        perm = [idx[f] for f in order]
        return GramMatrix(
            self.n, order, tuple(tuple(self.entries[a][b] for b in perm) for a in perm)
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([""] + [str(f) for f in self.forests])
        for f, row in zip(self.forests, self.entries):
            w.writerow([str(f)] + list(row))
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps(
            {"weight": self.n, "forests": [str(f) for f in self.forests],
             "entries": [list(r) for r in self.entries]},
            indent=None,
        )


def gram_matrix(n: int, method: str = "bijection") -> GramMatrix:
    forests = enumerate_forests(n)
    fn = {"bijection": _pair_bijection, "recursive": _pair_recursive, "tamari": _pair_tamari}[method]
    entries = tuple(tuple(fn(f, g) for g in forests) for f in forests)
    return GramMatrix(n, forests, entries)


def determinant(matrix) -> int:
    """Exact determinant of an integer matrix (Bareiss elimination)."""
    a = [list(map(int, row)) for row in matrix]
    size = len(a)
    if size == 0:
        return 1
    sign, prev = 1, 1
    for k in range(size - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, size) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


def inverse(matrix) -> list[list[Fraction]]:
    """Exact inverse over the rationals by Gauss-Jordan elimination."""
    size = len(matrix)
    a = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(size)]
         for i, row in enumerate(matrix)]
    for col in range(size):
        pivot = next((r for r in range(col, size) if a[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrixError("Gram matrix is singular")
        a[col], a[pivot] = a[pivot], a[col]
        pv = a[col][col]
        if pv != 1:
            a[col] = [v / pv for v in a[col]]
        for r in range(size):
            if r != col and a[r][col] != 0:
                factor = a[r][col]
                rc = a[col]
                a[r] = [v - factor * w for v, w in zip(a[r], rc)]
    return [row[size:] for row in a]


@lru_cache(maxsize=None)
def dual_basis_via_gram(n: int) -> dict[Forest, Element]:
    """f_F for every F of weight n, from the inverse of the Gram matrix."""
    gram = gram_matrix(n)
    inv = inverse(gram.entries)
    out = {}
    for f, row in zip(gram.forests, inv):
        if any(c.denominator != 1 for c in row):
            raise ArithmeticError(f"non-integral dual basis coefficient for {f}")
        out[f] = Element(zip(gram.forests, row))
    return out


def dual_element_via_gram(f) -> Element:
    f = as_forest(f)
    return dual_basis_via_gram(f.weight)[f]


def dual_basis_to_json(basis: dict[Forest, Element]) -> str:
    from .algebra import element_to_json

    return json.dumps({str(f): element_to_json(x) for f, x in basis.items()})
