"""The poset of planar forests, planar binary trees and the Tamari order.

A transformation of a forest detaches the subtree at a vertex s, which must
be the leftmost child of its parent u, and re-inserts it immediately to the
left of u (among u's siblings, or among the roots when u is a root).  It holds
on s = s_i and is labelled i.

Two index rules are available for the restricted orders <=_I.  With
``by="vertex"`` a move counts for I when its label i is in I.  With
``by="cut"`` (the default for orders) it counts when some j with
i <= j < index(u) is in I, i.e. when it crosses one of the biideal cuts I_j
between s and u.  Only the cut rule makes F <=_{k} F1 F2 (weight(F1) = k)
pick out the terms of the coproduct, so the orders default to it.  For the
full order the two rules coincide, and it is isomorphic to the Tamari
lattice.
"""
from __future__ import annotations

import io
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from .algebra import Element, product
from .forest import (
    ONE,
    Forest,
    Tree,
    as_forest,
    b_plus,
    enumerate_forests,
    vertices,
)


RULES = ("cut", "vertex")


def _normalize_indices(indices) -> frozenset[int] | None:
    if indices is None or indices == "all":
        return None
    return frozenset(int(i) for i in indices)


def height_sum(f: Forest) -> int:
    """Sum over the vertices of their distance to the root."""
    return sum(len(a) - 1 for a in vertices(f).addresses)


def _move(trees: tuple[Tree, ...], addr: tuple[int, ...]) -> tuple[Tree, ...]:
    a = addr[0]
    u = trees[a]
    if len(addr) == 2:
        s = u.children[0]
        return trees[:a] + (s, Tree(u.children[1:])) + trees[a + 1:]
    return trees[:a] + (Tree(_move(u.children, addr[1:])),) + trees[a + 1:]


def transformations(f: Forest | str) -> list[tuple[int, range, Forest]]:
    """All (i, js, G): G comes from ``f`` by moving s_i, a j-transformation for j in js."""
    f = as_forest(f)
    vs = vertices(f)
    out = []
    for p, addr in enumerate(vs.addresses):
        if len(addr) == 1 or addr[-1] != 0:
            continue
        u = vs.parents[p]
        out.append((p + 1, range(p + 1, u + 1), Forest(_move(f.trees, addr))))
    return out


def admissible_moves(f: Forest | str, indices=None, by: str = "vertex") -> list[tuple[int, Forest]]:
    """All (i, G) where G comes from ``f`` by the move holding on s_i.

    ``indices`` filters the moves by the rule ``by`` (see the module notes).
    """
    if by not in RULES:
        raise ValueError(f"unknown index rule {by!r}")
    allowed = _normalize_indices(indices)
    out = []
    for i, cuts, g in transformations(f):
        if allowed is None:
            out.append((i, g))
        elif by == "vertex" and i in allowed:
            out.append((i, g))
        elif by == "cut" and any(j in allowed for j in cuts):
            out.append((i, g))
    return out


@dataclass(frozen=True, eq=False)
class ForestPoset:
    """(F(n), <=_I) with its covers, order relation and Moebius function."""

    n: int
    indices: frozenset[int] | None
    by: str
    elements: tuple[Forest, ...]
    covers: tuple[tuple[int, int, int], ...]  # (lower, upper, transformation index)
    up: tuple[frozenset[int], ...]  # up[a] = {b : elements[a] <= elements[b]}
    position: dict = field(repr=False)

    def index(self, f: Forest | str) -> int:
        return self.position[as_forest(f)]

    def leq(self, f, g) -> bool:
        f, g = as_forest(f), as_forest(g)
        if f.weight != self.n or g.weight != self.n:
            return False
        return self.position[g] in self.up[self.position[f]]

    def leq_matrix(self) -> list[list[bool]]:
        size = len(self.elements)
        return [[b in self.up[a] for b in range(size)] for a in range(size)]

    @cached_property
    def linear_extension(self) -> tuple[int, ...]:
        # every move lowers the height sum, so sorting by it descending goes upward
        return tuple(
            sorted(range(len(self.elements)), key=lambda a: (-height_sum(self.elements[a]), a))
        )

    @cached_property
    def mobius_matrix(self) -> tuple[tuple[int, ...], ...]:
        size = len(self.elements)
        order = {a: k for k, a in enumerate(self.linear_extension)}
        mu = [[0] * size for _ in range(size)]
        for a in range(size):
            above = sorted(self.up[a], key=order.__getitem__)
            mu[a][a] = 1
            for b in above[1:]:
                # mu(a, b) = -sum of mu(a, c) over a <= c < b
                mu[a][b] = -sum(mu[a][c] for c in above if c != b and b in self.up[c])
        return tuple(tuple(row) for row in mu)

    def mobius(self, f, g) -> int:
        return self.mobius_matrix[self.index(f)][self.index(g)]

    def minimal(self) -> list[Forest]:
        has_below = {b for _, b, _ in self.covers}
        return [e for k, e in enumerate(self.elements) if k not in has_below]

    def maximal(self) -> list[Forest]:
        has_above = {a for a, _, _ in self.covers}
        return [e for k, e in enumerate(self.elements) if k not in has_above]

    def to_dot(self) -> str:
        out = io.StringIO()
        name = "F%d" % self.n
        out.write(f"digraph {name} {{\n")
        out.write("  rankdir=BT;\n")
        for k, f in enumerate(self.elements):
            out.write(f'  n{k} [label="{f}"];\n')
        for a, b, i in self.covers:
            out.write(f'  n{a} -> n{b} [label="{i}"];\n')
        out.write("}\n")
        return out.getvalue()

    def mobius_csv(self) -> str:
        rows = [[""] + [str(f) for f in self.elements]]
        for f, row in zip(self.elements, self.mobius_matrix):
            rows.append([str(f)] + [str(v) for v in row])
        return "".join(",".join(r) + "\n" for r in rows)


@lru_cache(maxsize=None)
def _build_poset(n: int, indices: frozenset[int] | None, by: str) -> ForestPoset:
    elements = enumerate_forests(n)
    position = {f: k for k, f in enumerate(elements)}
    covers = []
    succ: list[list[int]] = [[] for _ in elements]
    for a, f in enumerate(elements):
        h = height_sum(f)
        for i, g in admissible_moves(f, indices, by):
            if height_sum(g) >= h:
                raise AssertionError(f"transformation {f} -> {g} does not lower the height sum")
            b = position[g]
            covers.append((a, b, i))
            succ[a].append(b)
    # reachability, processed from the top (smallest height sum) down
    up: list[frozenset[int] | None] = [None] * len(elements)
    for a in sorted(range(len(elements)), key=lambda k: height_sum(elements[k])):
        s = {a}
        for b in succ[a]:
            s |= up[b]
        up[a] = frozenset(s)
    for a in range(len(elements)):
        for b in up[a]:
            if b != a and a in up[b]:
                raise AssertionError(f"antisymmetry fails between {elements[a]} and {elements[b]}")
    return ForestPoset(n, indices, by, elements, tuple(covers), tuple(up), position)


def build_poset(n: int, indices=None, by: str = "cut") -> ForestPoset:
    """The poset (F(n), <=_I); ``indices=None`` means every index.

    Covers are the moves counted for I, each labelled by the index of the
    vertex it holds on.
    """
    if by not in RULES:
        raise ValueError(f"unknown index rule {by!r}")
    indices = _normalize_indices(indices)
    if indices is None:
        by = "cut"
    return _build_poset(n, indices, by)


def less_eq(f, g, indices=None, by: str = "cut") -> bool:
    f, g = as_forest(f), as_forest(g)
    if f.weight != g.weight:
        return False
    return build_poset(f.weight, indices, by).leq(f, g)


def mobius(poset: ForestPoset) -> tuple[tuple[int, ...], ...]:
    return poset.mobius_matrix


@lru_cache(maxsize=None)
def m_involution(f: Forest) -> Forest:
    """m(1) = 1 and m(B+(F1) F2) = B+(m(F2)) m(F1)."""
    f = as_forest(f)
    if f.is_one():
        return ONE
    f1 = Forest(f.trees[0].children)
    f2 = Forest(f.trees[1:])
    return Forest((b_plus(m_involution(f2)),) + m_involution(f1).trees)


mirror = m_involution


# ---------------------------------------------------------------------------
# planar binary trees


@dataclass(frozen=True)
class BinaryTree:
    """A planar binary tree: a leaf, or a node with a left and a right subtree."""

    left: BinaryTree | None = None
    right: BinaryTree | None = None

    def __post_init__(self):
        if (self.left is None) != (self.right is None):
            raise ValueError("a node needs both subtrees")

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    @cached_property
    def internal_nodes(self) -> int:
        if self.is_leaf:
            return 0
        return 1 + self.left.internal_nodes + self.right.internal_nodes

    def leaves(self) -> int:
        return self.internal_nodes + 1

    def __str__(self):
        if self.is_leaf:
            return "."
        return f"({self.left}{self.right})"


LEAF = BinaryTree()


def parse_binary(text: str) -> BinaryTree:
    """Parse ``"."`` (leaf) and ``"(" left right ")"``; whitespace is ignored."""
    from .forest import ForestSyntaxError

    def skip(pos):
        while pos < len(text) and text[pos].isspace():
            pos += 1
        return pos

    def tree(pos):
        pos = skip(pos)
        if pos >= len(text):
            raise ForestSyntaxError("unexpected end of binary tree", text, pos)
        if text[pos] == ".":
            return LEAF, pos + 1
        if text[pos] == "(":
            left, pos = tree(pos + 1)
            right, pos = tree(pos)
            pos = skip(pos)
            if pos >= len(text) or text[pos] != ")":
                raise ForestSyntaxError("expected ')'", text, pos)
            return BinaryTree(left, right), pos + 1
        raise ForestSyntaxError(f"unexpected {text[pos]!r}", text, pos)

    t, pos = tree(0)
    pos = skip(pos)
    if pos != len(text):
        raise ForestSyntaxError(f"unexpected {text[pos]!r}", text, pos)
    return t


def vee(t1: BinaryTree, t2: BinaryTree) -> BinaryTree:
    return BinaryTree(t1, t2)


def backslash(t1: BinaryTree, t2: BinaryTree) -> BinaryTree:
    """Graft ``t2`` on the rightmost leaf of ``t1``."""
    if t1.is_leaf:
        return t2
    return BinaryTree(t1.left, backslash(t1.right, t2))


def reflect(t: BinaryTree) -> BinaryTree:
    if t.is_leaf:
        return t
    return BinaryTree(reflect(t.right), reflect(t.left))


@lru_cache(maxsize=None)
def enumerate_binary_trees(n: int) -> tuple[BinaryTree, ...]:
    if n == 0:
        return (LEAF,)
    return tuple(
        BinaryTree(a, b)
        for k in range(n)
        for a in enumerate_binary_trees(k)
        for b in enumerate_binary_trees(n - 1 - k)
    )


@lru_cache(maxsize=None)
def eta(t: BinaryTree) -> Forest:
    """leaf -> 1, t1 v t2 -> B+(eta(t1)) eta(t2)."""
    if t.is_leaf:
        return ONE
    return Forest((b_plus(eta(t.left)),) + eta(t.right).trees)


@lru_cache(maxsize=None)
def eta_inverse(f: Forest) -> BinaryTree:
    f = as_forest(f)
    if f.is_one():
        return LEAF
    return BinaryTree(eta_inverse(Forest(f.trees[0].children)), eta_inverse(Forest(f.trees[1:])))


def rotations(t: BinaryTree) -> list[BinaryTree]:
    """Trees obtained by one rotation (a v b) v c -> a v (b v c) at some node."""
    if t.is_leaf:
        return []
    out = []
    if not t.left.is_leaf:
        a, b, c = t.left.left, t.left.right, t.right
        out.append(BinaryTree(a, BinaryTree(b, c)))
    out.extend(BinaryTree(x, t.right) for x in rotations(t.left))
    out.extend(BinaryTree(t.left, x) for x in rotations(t.right))
    return out


@lru_cache(maxsize=None)
def _tamari_up(n: int) -> dict[BinaryTree, frozenset[BinaryTree]]:
    up: dict[BinaryTree, frozenset[BinaryTree]] = {}

    def visit(t):
        if t not in up:
            s = {t}
            for r in rotations(t):
                s |= visit(r)
            up[t] = frozenset(s)
        return up[t]

    for t in enumerate_binary_trees(n):
        visit(t)
    return up


def tamari_less_eq(t1: BinaryTree, t2: BinaryTree) -> bool:
    if t1.internal_nodes != t2.internal_nodes:
        return False
    return t2 in _tamari_up(t1.internal_nodes)[t1]


# ---------------------------------------------------------------------------
# dual basis by Moebius inversion, and products of dual basis elements


def dual_basis_via_mobius(f: Forest | str) -> Element:
    """f_F = sum over G <= m(F) of mu(G, m(F)) G."""
    f = as_forest(f)
    poset = build_poset(f.weight)
    top = poset.index(m_involution(f))
    mu = poset.mobius_matrix
    return Element(
        (g, mu[k][top]) for k, g in enumerate(poset.elements) if top in poset.up[k]
    )


def forest_in_dual_basis(f: Forest | str) -> list[Forest]:
    """The G with m(G) <= F, so that F is the sum of the f_G."""
    f = as_forest(f)
    poset = build_poset(f.weight)
    return [g for g in poset.elements if poset.leq(m_involution(g), f)]


def dual_product(*factors) -> Element:
    """f_{Fn} ... f_{F1} for factors F1, ..., Fn, in dual-basis coordinates.

    The result maps each G with G <=_I F1...Fn to 1, where I holds the
    cumulative weights of F1, F1F2, ..., F1...F(n-1).
    """
    fs = [as_forest(f) for f in factors]
    if not fs:
        raise ValueError("dual_product needs at least one factor")
    if any(f.is_one() for f in fs):
        raise ValueError("dual_product factors must be non-empty forests")
    cumulative = []
    w = 0
    for f in fs[:-1]:
        w += f.weight
        cumulative.append(w)
    top = Forest(t for f in fs for t in f.trees)
    poset = build_poset(top.weight, frozenset(cumulative))
    return Element((g, 1) for g in poset.elements if poset.leq(g, top))


def expand_dual(x: Element) -> Element:
    """Rewrite a combination of dual basis indices in the forest basis."""
    return x.map(dual_basis_via_mobius)


def dual_product_direct(*factors) -> Element:
    """f_{Fn} ... f_{F1} multiplied out in the forest basis."""
    acc = Element.of(ONE)
    for f in reversed([as_forest(f) for f in factors]):
        acc = product(acc, dual_basis_via_mobius(f))
    return acc
