"""Exhaustive invariant checks, grouped in suites.

Every check walks its domain in increasing weight (canonical order inside a
weight) and returns a description of the first counterexample, or None.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Callable, Iterator

from .algebra import (
    Element,
    TensorElement,
    antipode_left_cut,
    antipode_recursive,
    b_plus_linear,
    convolution_check,
    coproduct,
    coproduct_via_order,
    counit,
    epsilon_product,
    is_primitive,
    primitive_decompose,
    product,
    tensor,
    tensor_map,
)
from .forest import (
    DOT,
    ONE,
    Comparison,
    Forest,
    b_minus,
    b_plus,
    dots,
    enumerate_forests,
    enumerate_trees,
    is_biideal_brute_force,
    ladder,
    order_tables,
    parse_forest,
    split_at_biideal,
    vertex_compare,
)
from .pairing import (
    _pair_bijection,
    _pair_recursive,
    _pair_tamari,
    determinant,
    dual_basis_via_gram,
    gamma,
    gram_matrix,
    pair_tensors,
    pairing,
    pairing_prime,
)
from .tamari import (
    RULES,
    backslash,
    build_poset,
    dual_basis_via_mobius,
    dual_product,
    dual_product_direct,
    enumerate_binary_trees,
    eta,
    eta_inverse,
    expand_dual,
    forest_in_dual_basis,
    height_sum,
    m_involution,
    tamari_less_eq,
    transformations,
    vee,
    LEAF,
)

SUITES = ("coalgebra", "antipode", "pairing", "poset", "dual")


@dataclass(frozen=True)
class Check:
    name: str
    suite: str
    fn: Callable[[int], str | None]
    cap: int | None = None  # never go above this weight
    floor: int | None = None  # always go at least this far

    def weight_for(self, max_weight: int) -> int:
        w = max_weight
        if self.floor is not None:
            w = max(w, self.floor)
        if self.cap is not None:
            w = min(w, self.cap)
        return w

    def run(self, max_weight: int) -> str | None:
        return self.fn(self.weight_for(max_weight))


@dataclass
class Outcome:
    check: Check
    weight: int
    counterexample: str | None
    seconds: float

    @property
    def ok(self) -> bool:
        return self.counterexample is None

    def line(self) -> str:
        head = f"{'PASS' if self.ok else 'FAIL'} {self.check.suite}/{self.check.name} (weight <= {self.weight}, {self.seconds:.2f}s)"
        if self.ok:
            return head
        return f"{head}: {self.counterexample}"


REGISTRY: list[Check] = []


def check(suite: str, cap: int | None = None, floor: int | None = None):
    def deco(fn):
        REGISTRY.append(Check(fn.__name__, suite, fn, cap, floor))
        return fn

    return deco


def forests_upto(n: int, start: int = 0) -> Iterator[Forest]:
    for w in range(start, n + 1):
        yield from enumerate_forests(w)


def pairs_upto(n: int, start: int = 0) -> Iterator[tuple[Forest, Forest]]:
    """Pairs (a, b) with weight(a) + weight(b) <= n, by total weight."""
    for total in range(start, n + 1):
        for k in range(total + 1):
            for a in enumerate_forests(k):
                for b in enumerate_forests(total - k):
                    yield a, b


def same_weight_pairs(n: int, start: int = 0) -> Iterator[tuple[Forest, Forest]]:
    for w in range(start, n + 1):
        fs = enumerate_forests(w)
        for a in fs:
            for b in fs:
                yield a, b


# ---------------------------------------------------------------------------
# forests and the coalgebra


@check("coalgebra", floor=7, cap=7)
def parse_round_trip(n):
    for f in forests_upto(n):
        if parse_forest(str(f)) != f:
            return f"parse(print({f})) differs"
    return None


@check("coalgebra")
def post_order_is_hl_order(n):
    for f in forests_upto(n, 1):
        for i in range(1, f.weight + 1):
            for j in range(i + 1, f.weight + 1):
                if vertex_compare(f, i, j, "hl") is not Comparison.GREATER:
                    return f"{f}: s_{i} is not above s_{j} for >=_hl"
    return None


@check("coalgebra")
def high_left_totality(n):
    for f in forests_upto(n, 1):
        t = order_tables(f)
        for p in range(f.weight):
            for q in range(f.weight):
                if p == q:
                    continue
                high = t.high[p][q] or t.high[q][p]
                left = t.left[p][q] or t.left[q][p]
                if high == left:
                    return f"{f}: vertices {p + 1}, {q + 1}"
    return None


@check("coalgebra", floor=7, cap=7)
def biideals_are_prefixes(n):
    for f in forests_upto(n, 1):
        w = f.weight
        for mask in range(1 << w):
            subset = [i + 1 for i in range(w) if mask >> i & 1]
            expected = subset == list(range(1, len(subset) + 1))
            if is_biideal_brute_force(f, subset) != expected:
                return f"{f}: subset {subset}"
    return None


@check("coalgebra")
def biideal_split_weights(n):
    for f in forests_upto(n):
        for k in range(f.weight + 1):
            p, r = split_at_biideal(f, k)
            if p.weight != k or r.weight != f.weight - k:
                return f"{f}, k={k}"
        if split_at_biideal(f, f.weight) != (f, ONE):
            return f"{f}: the full biideal"
    return None


@check("coalgebra")
def coassociativity(n):
    for f in forests_upto(n):
        d = coproduct(f)
        lhs = tensor_map(d, coproduct, Element.of)
        rhs = tensor_map(d, Element.of, coproduct)
        if lhs != rhs:
            return str(f)
    return None


@check("coalgebra")
def counit_laws(n):
    for f in forests_upto(n):
        d = coproduct(f)
        left = Element()
        right = Element()
        for (a, b), c in d.items():
            left = left + Element.of(b, c * counit(a))
            right = right + Element.of(a, c * counit(b))
        if left != f or right != f:
            return str(f)
    return None


@check("coalgebra")
def grading(n):
    for f in forests_upto(n):
        for (a, b), _ in coproduct(f).items():
            if a.weight + b.weight != f.weight:
                return f"{f}: term {a} (x) {b}"
    return None


@check("coalgebra")
def compatibility(n):
    for a, b in pairs_upto(n):
        lhs = coproduct(a * b)
        # (a (x) 1) D(b) + D(a) (1 (x) b) - a (x) b
        rhs = (
            TensorElement({(a * x, y): c for (x, y), c in coproduct(b).items()})
            + TensorElement({(x, y * b): c for (x, y), c in coproduct(a).items()})
            - tensor(a, b)
        )
        if lhs != rhs:
            return f"a={a}, b={b}"
        if epsilon_product(coproduct(a), coproduct(b)) != lhs:
            return f"a={a}, b={b} (epsilon product)"
    return None


@check("coalgebra")
def b_plus_intertwining(n):
    for f in forests_upto(max(n - 1, 0)):
        t = Forest((b_plus(f),))
        rhs = tensor(t, ONE) + tensor_map(coproduct(f), Element.of, lambda g: Element.of(Forest((b_plus(g),))))
        if coproduct(t) != rhs:
            return str(f)
    return None


@check("coalgebra", cap=6)
def coproduct_via_order_agrees(n):
    for f in forests_upto(n, 1):
        if coproduct_via_order(f) != coproduct(f):
            return str(f)
    return None


# ---------------------------------------------------------------------------
# antipode


@check("antipode")
def antipode_algorithms_agree(n):
    for f in forests_upto(n):
        if antipode_recursive(f) != antipode_left_cut(f):
            return str(f)
    return None


@check("antipode")
def convolution_identities(n):
    for f in forests_upto(n):
        unit = Element.of(ONE, counit(f))
        for side in ("left", "right"):
            for method in ("leftcut", "recursive"):
                if convolution_check(f, side, method) != unit:
                    return f"{f} ({side}, {method})"
    return None


@check("antipode", cap=5)
def antipode_of_products(n):
    for a, b in pairs_upto(n):
        ea, eb = counit(a), counit(b)
        rhs = ea * antipode_left_cut(b) + eb * antipode_left_cut(a) - Element.of(ONE, ea * eb)
        if antipode_left_cut(a * b) != rhs:
            return f"a={a}, b={b}"
    return None


@check("antipode", cap=5)
def coproduct_of_antipode(n):
    for f in forests_upto(n):
        s = antipode_left_cut(f)
        rhs = tensor(s, ONE) + tensor(ONE, s) - tensor(ONE, ONE) * counit(f)
        if coproduct(s) != rhs:
            return str(f)
    return None


@check("antipode", cap=5)
def primitive_decomposition(n):
    for f in forests_upto(n, 1):
        p, q = primitive_decompose(f)
        if not is_primitive(p):
            return f"{f}: -S({f}) is not primitive"
        if any(len(g) < 2 for g in q.support()):
            return f"{f}: remainder {q} has a tree term"
        if p + q != f:
            return f"{f}: parts do not add up"
    return None


# ---------------------------------------------------------------------------
# pairing


@check("pairing")
def three_pairings_agree(n):
    for f, g in same_weight_pairs(n):
        a, b, c = _pair_recursive(f, g), _pair_bijection(f, g), _pair_tamari(f, g)
        if not a == b == c:
            return f"<{f}, {g}>: recursive={a} bijection={b} tamari={c}"
    return None


@check("pairing")
def pairing_symmetry(n):
    for f, g in same_weight_pairs(n):
        if _pair_bijection(f, g) != _pair_bijection(g, f):
            return f"<{f}, {g}>"
    return None


@check("pairing", cap=5)
def pairing_homogeneity(n):
    for f in forests_upto(n):
        for g in forests_upto(n):
            if f.weight != g.weight and (_pair_recursive(f, g) or _pair_bijection(f, g)):
                return f"<{f}, {g}>"
    return None


@check("pairing", cap=5)
def antipode_self_adjoint(n):
    for f, g in same_weight_pairs(n):
        if pairing(antipode_left_cut(f), g) != pairing(f, antipode_left_cut(g)):
            return f"<S {f}, {g}>"
    return None


@check("pairing", cap=5)
def hopf_duality(n):
    for x, y in pairs_upto(n):
        for z in enumerate_forests(x.weight + y.weight):
            lhs = pairing(x * y, z)
            rhs = pair_tensors(tensor(y, x), coproduct(z))
            if lhs != rhs:
                return f"x={x}, y={y}, z={z}"
    return None


@check("pairing", cap=5)
def b_plus_adjoint_to_gamma(n):
    for x in forests_upto(max(n - 1, 0)):
        t = Forest((b_plus(x),))
        for y in enumerate_forests(t.weight):
            if pairing(t, y) != pairing(x, gamma(y)):
                return f"x={x}, y={y}"
    return None


@check("pairing", cap=5)
def gamma_leibniz(n):
    for x, y in pairs_upto(n):
        lhs = gamma(product(x, y))
        rhs = product(gamma(x), y) + counit(x) * gamma(y)
        if lhs != rhs:
            return f"x={x}, y={y}"
    return None


@check("pairing", cap=6)
def gram_unimodular(n):
    for w in range(n + 1):
        d = determinant(gram_matrix(w).entries)
        if abs(d) != 1:
            return f"weight {w}: det = {d}"
    return None


@check("pairing", floor=3, cap=3)
def gamma_prime_degenerate(n):
    witness = Element.of(parse_forest("[[] []]")) - Element.of(parse_forest("[] [[]]"))
    for g in enumerate_forests(3):
        if pairing_prime(witness, g) != 0:
            return f"<cherry - dot ladder2, {g}>' != 0"
    return None


# ---------------------------------------------------------------------------
# poset and binary trees


@check("poset", cap=6)
def order_axioms(n):
    for w in range(1, n + 1):
        labels = range(1, w)
        for r, by in itertools.product(range(len(labels) + 1), RULES):
            for idx in itertools.combinations(labels, r):
                poset = build_poset(w, frozenset(idx), by)
                up = poset.up
                for a in range(len(up)):
                    if a not in up[a]:
                        return f"weight {w}, I={set(idx)}: not reflexive at {poset.elements[a]}"
                    for b in up[a]:
                        if not up[b] <= up[a]:
                            return f"weight {w}, I={set(idx)}: not transitive at {poset.elements[a]}"
                        if b != a and a in up[b]:
                            return f"weight {w}, I={set(idx)}: not antisymmetric"
    return None


@check("poset", cap=6)
def moves_lower_height_sum(n):
    for f in forests_upto(n, 1):
        for i, _, g in transformations(f):
            if height_sum(g) >= height_sum(f):
                return f"{f} -> {g} (i={i})"
    return None


@check("poset", cap=6)
def extremes(n):
    for w in range(1, n + 1):
        poset = build_poset(w)
        if poset.maximal() != [dots(w)] or poset.minimal() != [ladder(w)]:
            return f"weight {w}: max {poset.maximal()}, min {poset.minimal()}"
    return None


@check("poset", cap=5)
def mobius_recurrence(n):
    for w in range(n + 1):
        poset = build_poset(w)
        mu = poset.mobius_matrix
        size = len(poset.elements)
        for a in range(size):
            for h in poset.up[a]:
                s = sum(mu[a][g] for g in poset.up[a] if h in poset.up[g])
                if s != (1 if a == h else 0):
                    return f"{poset.elements[a]}, {poset.elements[h]}"
    return None


@check("poset", cap=5)
def eta_is_order_isomorphism(n):
    for w in range(n + 1):
        trees = enumerate_binary_trees(w)
        if sorted(map(str, (eta(t) for t in trees))) != sorted(map(str, enumerate_forests(w))):
            return f"weight {w}: eta is not onto"
        poset = build_poset(w)
        for t in trees:
            if eta_inverse(eta(t)) != t:
                return f"eta_inverse(eta({t}))"
            for u in trees:
                if tamari_less_eq(t, u) != poset.leq(eta(t), eta(u)):
                    return f"{t} vs {u}"
    return None


@check("poset", cap=5)
def eta_grafting_identities(n):
    for w in range(n + 1):
        for t in enumerate_binary_trees(w):
            if eta(vee(t, LEAF)) != Forest((b_plus(eta(t)),)):
                return f"eta({t} v leaf)"
            for k in range(n - w + 1):
                for u in enumerate_binary_trees(k):
                    if eta(backslash(t, u)) != eta(t) * eta(u):
                        return f"eta({t} \\ {u})"
    return None


@check("poset", cap=4)
def backslash_associative(n):
    for a, b, c in itertools.product(*[[t for w in range(n + 1) for t in enumerate_binary_trees(w)]] * 3):
        if a.internal_nodes + b.internal_nodes + c.internal_nodes > n:
            continue
        if backslash(backslash(a, b), c) != backslash(a, backslash(b, c)):
            return f"{a}, {b}, {c}"
    return None


@check("poset", cap=6)
def m_is_decreasing_involution(n):
    for w in range(n + 1):
        poset = build_poset(w)
        for f in poset.elements:
            if m_involution(m_involution(f)) != f:
                return f"m(m({f}))"
        if m_involution(dots(w)) != ladder(w):
            return f"m of {w} dots"
        for f in poset.elements:
            for g in poset.elements:
                if poset.leq(f, g) != poset.leq(m_involution(g), m_involution(f)):
                    return f"{f} <= {g}"
    return None


# ---------------------------------------------------------------------------
# dual basis


def _dual(f: Forest) -> Element:
    return dual_basis_via_mobius(f)


@check("dual", cap=5)
def mobius_matches_gram(n):
    for w in range(n + 1):
        gram = dual_basis_via_gram(w)
        for f in enumerate_forests(w):
            if _dual(f) != gram[f]:
                return str(f)
    return None


@check("dual", cap=5)
def dual_basis_is_dual(n):
    for f, g in same_weight_pairs(n):
        if pairing(_dual(f), g) != (1 if f == g else 0):
            return f"<f_{f}, {g}>"
    return None


@check("dual", cap=5)
def dual_b_plus_and_gamma(n):
    for f in forests_upto(n):
        if f.weight < n and b_plus_linear(_dual(f)) != _dual(DOT * f):
            return f"B+(f_{f})"
        if f.is_one():
            continue
        expected = _dual(b_minus(f.trees[0])) if f.is_tree() else Element()
        if gamma(_dual(f)) != expected:
            return f"gamma(f_{f})"
    return None


@check("dual", cap=5)
def dual_coproduct(n):
    def dual_or_unit(f):
        return Element.of(ONE) if f.is_one() else _dual(f)

    for f in forests_upto(n, 1):
        expected = TensorElement()
        for k in range(len(f) + 1):
            f1, f2 = Forest(f.trees[:k]), Forest(f.trees[k:])
            expected = expected + tensor(dual_or_unit(f2), dual_or_unit(f1))
        if coproduct(_dual(f)) != expected:
            return f"Delta(f_{f})"
    return None


@check("dual", cap=5)
def dual_trees_primitive(n):
    for w in range(1, n + 1):
        for t in enumerate_trees(w):
            if not is_primitive(_dual(t)):
                return f"f_{t}"
    return None


@check("dual", cap=6)
def dots_sum_of_dual_basis(n):
    for w in range(n + 1):
        total = Element()
        for f in enumerate_forests(w):
            total = total + _dual(f)
        if total != dots(w):
            return f"weight {w}"
    return None


@check("dual", cap=5)
def forest_in_dual_basis_consistent(n):
    for f in forests_upto(n):
        total = Element()
        for g in forest_in_dual_basis(f):
            total = total + _dual(g)
        if total != f:
            return str(f)
    return None


@check("dual", cap=5)
def dual_products_consistent(n):
    for total in range(2, n + 1):
        for parts in (2, 3):
            for ws in itertools.product(range(1, total), repeat=parts):
                if sum(ws) != total:
                    continue
                for fs in itertools.product(*(enumerate_forests(w) for w in ws)):
                    if expand_dual(dual_product(*fs)) != dual_product_direct(*fs):
                        return "f-product of " + ", ".join(map(str, fs))
    return None


# ---------------------------------------------------------------------------


def select(suite: str = "all") -> list[Check]:
    if suite == "all":
        return list(REGISTRY)
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    return [c for c in REGISTRY if c.suite == suite]


def run_checks(max_weight: int = 5, suite: str = "all") -> list[Outcome]:
    out = []
    for c in select(suite):
        start = time.perf_counter()
        ce = c.run(max_weight)
        out.append(Outcome(c, c.weight_for(max_weight), ce, time.perf_counter() - start))
    return out
