"""Planar rooted trees and forests.

A forest is an ordered sequence of planar rooted trees; the empty forest is
the unit ``1`` of the algebra.  Vertices are never labelled: a vertex of a
forest ``F`` of weight ``n`` is addressed by its rank ``i`` in ``1..n`` in the
total order s_1 > s_2 > ... > s_n, which is the left-to-right post-order
traversal of ``F``.

Text form::

    forest := "1" | tree (" " tree)*
    tree   := "[" inner "]"
    inner  := "" | tree (" " tree)*
"""
from __future__ import annotations

import enum
import math
from functools import lru_cache
from typing import Iterable, NamedTuple


class Tree:
    """A planar rooted tree, given by the ordered tuple of its root's subtrees."""

    __slots__ = ("children", "weight", "_hash")

    def __init__(self, children: Iterable[Tree] = ()):
        self.children: tuple[Tree, ...] = tuple(children)
        self.weight: int = 1 + sum(c.weight for c in self.children)
        self._hash = hash(("T", self.children))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Tree):
            return NotImplemented
        return self._hash == other._hash and self.children == other.children

    def __hash__(self):
        return self._hash

    def __str__(self):
        return "[" + " ".join(str(c) for c in self.children) + "]"

    def __repr__(self):
        return f"Tree('{self}')"


class Forest:
    """An ordered sequence of planar rooted trees (possibly empty)."""

    __slots__ = ("trees", "weight", "_hash")

    def __init__(self, trees: Iterable[Tree] = ()):
        self.trees: tuple[Tree, ...] = tuple(trees)
        self.weight: int = sum(t.weight for t in self.trees)
        self._hash = hash(("F", self.trees))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Forest):
            return NotImplemented
        return self._hash == other._hash and self.trees == other.trees

    def __hash__(self):
        return self._hash

    def __len__(self):
        return len(self.trees)

    def __iter__(self):
        return iter(self.trees)

    def __mul__(self, other):
        # concatenation, the product of monomials
        if isinstance(other, Forest):
            return Forest(self.trees + other.trees)
        if isinstance(other, Tree):
            return Forest(self.trees + (other,))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Tree):
            return Forest((other,) + self.trees)
        return NotImplemented

    def is_one(self) -> bool:
        return not self.trees

    def is_tree(self) -> bool:
        return len(self.trees) == 1

    def __str__(self):
        return print_forest(self)

    def __repr__(self):
        return f"Forest('{self}')"


ONE = Forest()
DOT = Tree()


def as_forest(x: Forest | Tree | str) -> Forest:
    if isinstance(x, Forest):
        return x
    if isinstance(x, Tree):
        return Forest((x,))
    if isinstance(x, str):
        return parse_forest(x)
    raise TypeError(f"cannot interpret {x!r} as a planar forest")


# ---------------------------------------------------------------------------
# text form


class ForestSyntaxError(ValueError):
    """Malformed forest text; ``offset`` is the 0-based position of the fault."""

    def __init__(self, message: str, text: str, offset: int):
        super().__init__(f"{message} at offset {offset} in {text!r}")
        self.message = message
        self.text = text
        self.offset = offset


def parse_forest(text: str) -> Forest:
    """Parse the bracket notation, e.g. ``"[[]] []"`` or ``"1"``."""
    pos = _skip_ws(text, 0)
    if pos < len(text) and text[pos] == "1":
        end = _skip_ws(text, pos + 1)
        if end != len(text):
            raise ForestSyntaxError(f"unexpected {text[end]!r} after '1'", text, end)
        return ONE
    trees, pos = _parse_trees(text, pos)
    if pos != len(text):
        raise ForestSyntaxError(f"unexpected {text[pos]!r}", text, pos)
    if not trees:
        raise ForestSyntaxError("empty input (the empty forest is written '1')", text, pos)
    return Forest(trees)


def parse_tree(text: str) -> Tree:
    f = parse_forest(text)
    if not f.is_tree():
        raise ForestSyntaxError("expected a single tree", text, 0)
    return f.trees[0]


def _skip_ws(text: str, pos: int) -> int:
    while pos < len(text) and text[pos].isspace():
        pos += 1
    return pos


def _parse_trees(text: str, pos: int) -> tuple[list[Tree], int]:
    trees = []
    while pos < len(text) and text[pos] == "[":
        children, pos = _parse_trees(text, _skip_ws(text, pos + 1))
        if pos >= len(text):
            raise ForestSyntaxError("unbalanced '[', expected ']'", text, pos)
        if text[pos] != "]":
            raise ForestSyntaxError(f"unexpected {text[pos]!r}, expected '[' or ']'", text, pos)
        trees.append(Tree(children))
        pos = _skip_ws(text, pos + 1)
    return trees, pos


def print_forest(f: Forest) -> str:
    if not f.trees:
        return "1"
    return " ".join(str(t) for t in f.trees)


# ---------------------------------------------------------------------------
# grafting


def b_plus(f: Forest) -> Tree:
    """Graft the roots of ``f`` on a common new root."""
    return Tree(as_forest(f).trees)


def b_minus(t: Tree) -> Forest:
    """Delete the root of ``t``."""
    if isinstance(t, Forest):
        if not t.is_tree():
            raise ValueError(f"b_minus expects a tree, got {t}")
        t = t.trees[0]
    return Forest(t.children)


def dots(n: int) -> Forest:
    """The forest of ``n`` single-vertex trees."""
    return Forest((DOT,) * n)


def ladder(n: int) -> Forest:
    """The linear tree with ``n`` vertices (``1`` when n = 0)."""
    f = ONE
    for _ in range(n):
        f = Forest((b_plus(f),))
    return f


# ---------------------------------------------------------------------------
# enumeration


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


@lru_cache(maxsize=None)
def enumerate_forests(n: int) -> tuple[Forest, ...]:
    """All planar forests of weight ``n`` in canonical order.

    Each non-empty forest is uniquely ``B+(F1) F2``; forests are listed by
    weight(F1) ascending, then by the rank of F1, then by the rank of F2.
    """
    if n < 0:
        raise ValueError("weight must be non-negative")
    if n == 0:
        return (ONE,)
    out = []
    for w in range(n):
        for f1 in enumerate_forests(w):
            head = b_plus(f1)
            for f2 in enumerate_forests(n - 1 - w):
                out.append(Forest((head,) + f2.trees))
    return tuple(out)


def enumerate_trees(n: int) -> tuple[Forest, ...]:
    return tuple(f for f in enumerate_forests(n) if f.is_tree())


@lru_cache(maxsize=None)
def forest_rank(f: Forest) -> int:
    """Index of ``f`` in ``enumerate_forests(f.weight)``, computed directly."""
    n = f.weight
    if n == 0:
        return 0
    f1 = Forest(f.trees[0].children)
    f2 = Forest(f.trees[1:])
    w = f1.weight
    offset = sum(catalan(v) * catalan(n - 1 - v) for v in range(w))
    return offset + forest_rank(f1) * catalan(n - 1 - w) + forest_rank(f2)


# ---------------------------------------------------------------------------
# vertices and their orders


class Vertices(NamedTuple):
    """Post-order vertex table of a forest (0-based positions).

    ``addresses[p]`` is the path of child indices from the forest level down
    to vertex s_{p+1}: (tree index, child index, child index, ...).
    """

    addresses: tuple[tuple[int, ...], ...]
    parents: tuple[int, ...]  # -1 for roots


@lru_cache(maxsize=4096)
def vertices(f: Forest) -> Vertices:
    addresses: list[tuple[int, ...]] = []

    def walk(t: Tree, addr: tuple[int, ...]) -> None:
        for k, c in enumerate(t.children):
            walk(c, addr + (k,))
        addresses.append(addr)

    for i, t in enumerate(f.trees):
        walk(t, (i,))
    index = {a: p for p, a in enumerate(addresses)}
    parents = tuple(index[a[:-1]] if len(a) > 1 else -1 for a in addresses)
    return Vertices(tuple(addresses), parents)


def _high_geq(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    # a >=_high b: b lies on the path from a root to a
    return len(a) >= len(b) and a[: len(b)] == b


def _left_geq(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    # a >=_left b for >=_high-incomparable a, b: same tree -> recurse below the root,
    # i.e. compare at the first differing coordinate
    for x, y in zip(a, b):
        if x != y:
            return x < y
    return False


class OrderTables(NamedTuple):
    """Strict relations between vertices: ``high[p][q]`` iff s_{p+1} >_high s_{q+1}."""

    high: tuple[tuple[bool, ...], ...]
    left: tuple[tuple[bool, ...], ...]


@lru_cache(maxsize=4096)
def order_tables(f: Forest) -> OrderTables:
    addrs = vertices(f).addresses
    n = len(addrs)
    high = []
    left = []
    for p in range(n):
        hrow = []
        lrow = []
        for q in range(n):
            if p == q:
                hrow.append(False)
                lrow.append(False)
                continue
            a, b = addrs[p], addrs[q]
            h = _high_geq(a, b)
            comparable = h or _high_geq(b, a)
            hrow.append(h)
            lrow.append(not comparable and _left_geq(a, b))
        high.append(tuple(hrow))
        left.append(tuple(lrow))
    return OrderTables(tuple(high), tuple(left))


class Comparison(enum.Enum):
    GREATER = "greater"
    LESS = "less"
    INCOMPARABLE = "incomparable"
    EQUAL = "equal"


def vertex_compare(f: Forest, i: int, j: int, relation: str = "hl") -> Comparison:
    """Compare s_i and s_j of ``f`` under ``relation`` in {"high", "left", "hl"}."""
    n = f.weight
    if not (1 <= i <= n and 1 <= j <= n):
        raise IndexError(f"vertex index out of range 1..{n}: ({i}, {j})")
    if relation not in ("high", "left", "hl"):
        raise ValueError(f"unknown relation {relation!r}")
    if i == j:
        return Comparison.EQUAL
    tables = order_tables(f)
    p, q = i - 1, j - 1
    if relation == "high":
        gt, lt = tables.high[p][q], tables.high[q][p]
    elif relation == "left":
        gt, lt = tables.left[p][q], tables.left[q][p]
    else:
        gt = tables.high[p][q] or tables.left[p][q]
        lt = tables.high[q][p] or tables.left[q][p]
    if gt:
        return Comparison.GREATER
    if lt:
        return Comparison.LESS
    return Comparison.INCOMPARABLE


# ---------------------------------------------------------------------------
# biideals and cuts


def induced_forest(f: Forest, ids: Iterable[int]) -> Forest:
    """Forest induced on a set of vertex ranks (1-based).

    Edges between kept vertices survive with their planar order; kept vertices
    whose parent is dropped become roots, ordered as they occur in post-order.
    """
    keep = sorted(set(i - 1 for i in ids))
    kept = set(keep)
    parents = vertices(f).parents
    children: dict[int, list[int]] = {p: [] for p in keep}
    roots = []
    for p in keep:
        u = parents[p]
        if u in kept:
            children[u].append(p)
        else:
            roots.append(p)

    def build(p: int) -> Tree:
        return Tree(build(c) for c in children[p])

    return Forest(build(r) for r in roots)


@lru_cache(maxsize=8192)
def split_at_biideal(f: Forest, k: int) -> tuple[Forest, Forest]:
    """Return (forest on I_k, forest on the complement) for I_k = {s_1..s_k}."""
    n = f.weight
    if not 0 <= k <= n:
        raise ValueError(f"biideal size {k} out of range 0..{n}")
    if k == 0:
        return ONE, f
    if k == n:
        return f, ONE
    return induced_forest(f, range(1, k + 1)), induced_forest(f, range(k + 1, n + 1))


def is_biideal_brute_force(f: Forest, subset: Iterable[int]) -> bool:
    """Check upward closure of ``subset`` under >=_high and >=_left, pair by pair."""
    members = set(subset)
    n = f.weight
    if any(not 1 <= i <= n for i in members):
        raise IndexError(f"vertex index out of range 1..{n}")
    tables = order_tables(f)
    for i in members:
        for j in range(1, n + 1):
            if j in members:
                continue
            if tables.high[j - 1][i - 1] or tables.left[j - 1][i - 1]:
                return False
    return True


def _left_path_depth(t: Tree) -> int:
    depth = 0
    while t.children:
        t = t.children[0]
        depth += 1
    return depth


def _left_subtree(t: Tree, depth: int) -> Tree:
    for _ in range(depth):
        t = t.children[0]
    return t


def _prune_left(t: Tree, depth: int) -> Tree:
    # remove the vertex at the given depth on the left path, with its subtree
    if depth == 1:
        return Tree(t.children[1:])
    return Tree((_prune_left(t.children[0], depth - 1),) + t.children[1:])


def left_cuts(t: Tree | Forest) -> list[tuple[int, Forest]]:
    """All left cuts of ``t`` as (number of cut edges, W^c(t)).

    Left edges are those on the path from the root to the leftmost leaf;
    bit ``j`` of the enumeration mask cuts the edge entering depth ``j + 1``.
    The pieces of W^c(t) are listed from the top of the left path downwards.
    """
    if isinstance(t, Forest):
        if not t.is_tree():
            raise ValueError(f"left cuts are defined on trees, got {t}")
        t = t.trees[0]
    k = _left_path_depth(t)
    out = []
    for mask in range(1 << k):
        cuts = [j + 1 for j in range(k) if mask >> j & 1]
        pieces = []
        tops = [0] + cuts
        for a, b in zip(tops, tops[1:] + [None]):
            sub = _left_subtree(t, a)
            pieces.append(sub if b is None else _prune_left(sub, b - a))
        out.append((len(cuts), Forest(reversed(pieces))))
    return out
