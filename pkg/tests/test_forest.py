import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from treehopf.forest import (
    ONE,
    Comparison,
    Forest,
    ForestSyntaxError,
    b_minus,
    b_plus,
    catalan,
    dots,
    enumerate_forests,
    enumerate_trees,
    forest_rank,
    induced_forest,
    is_biideal_brute_force,
    ladder,
    left_cuts,
    parse_forest,
    parse_tree,
    split_at_biideal,
    vertex_compare,
    vertices,
)


def dyck_words(n):
    """Balanced bracket words with n pairs, by brute force over all 2n-strings."""
    for bits in itertools.product("[]", repeat=2 * n):
        depth = 0
        for ch in bits:
            depth += 1 if ch == "[" else -1
            if depth < 0:
                break
        else:
            if depth == 0:
                yield "".join(bits)


forests = st.integers(0, 6).flatmap(lambda n: st.sampled_from(enumerate_forests(n)))


def test_parse_examples():
    assert parse_forest("[]") == Forest([b_plus(ONE)])
    assert parse_forest("1") == ONE
    assert str(parse_forest("[[][]]")) == "[[] []]"
    assert str(parse_forest("  [ [ ] ]   [ ] ")) == "[[]] []"
    assert parse_forest("[[]] []").weight == 3


@pytest.mark.parametrize(
    "text, offset",
    [("", 0), ("[", 1), ("[]]", 2), ("[x]", 1), ("1 []", 2), ("]", 0)],
)
def test_parse_errors_are_located(text, offset):
    with pytest.raises(ForestSyntaxError) as info:
        parse_forest(text)
    assert info.value.offset == offset


def test_parse_tree_rejects_forests():
    assert parse_tree("[[]]").weight == 2
    with pytest.raises(ForestSyntaxError):
        parse_tree("[] []")


@pytest.mark.parametrize("n", range(8))
def test_enumeration_counts_match_dyck_words(n):
    # a forest of weight n is a Dyck word with n bracket pairs
    fs = enumerate_forests(n)
    assert len(fs) == catalan(n) == sum(1 for _ in dyck_words(n))
    if n:
        assert {str(f).replace(" ", "") for f in fs} == set(dyck_words(n))
    assert len(set(fs)) == len(fs)


def test_enumeration_counts():
    assert [len(enumerate_forests(n)) for n in range(8)] == [1, 1, 2, 5, 14, 42, 132, 429]


def test_trees_are_grafted_forests():
    for n in range(1, 7):
        assert [str(t) for t in enumerate_trees(n)] == [
            str(Forest([b_plus(f)])) for f in enumerate_forests(n - 1)
        ]


@pytest.mark.parametrize("n", range(7))
def test_rank_is_position(n):
    for k, f in enumerate(enumerate_forests(n)):
        assert forest_rank(f) == k


@given(forests)
def test_round_trip(f):
    assert parse_forest(str(f)) == f


@given(forests)
def test_b_plus_b_minus(f):
    t = b_plus(f)
    assert t.weight == f.weight + 1
    assert b_minus(t) == f


def test_dots_and_ladder():
    assert str(dots(3)) == "[] [] []"
    assert str(ladder(3)) == "[[[]]]"
    assert dots(0) == ladder(0) == ONE


def test_vertices_post_order():
    # s1 is the deepest vertex of the left branch, the last root comes last
    v = vertices(parse_forest("[[[]] []] []"))
    assert v.addresses == ((0, 0, 0), (0, 0), (0, 1), (0,), (1,))
    assert v.parents == (1, 3, 3, -1, -1)


def test_vertex_compare_examples():
    f = parse_forest("[[[]] []]")
    assert vertex_compare(f, 1, 2, "high") is Comparison.GREATER
    assert vertex_compare(f, 4, 1, "high") is Comparison.LESS
    assert vertex_compare(f, 1, 3, "high") is Comparison.INCOMPARABLE
    assert vertex_compare(f, 1, 3, "left") is Comparison.GREATER
    assert vertex_compare(f, 1, 2, "left") is Comparison.INCOMPARABLE
    assert vertex_compare(f, 2, 2, "hl") is Comparison.EQUAL
    with pytest.raises(IndexError):
        vertex_compare(f, 0, 5)


@given(forests)
def test_post_order_is_the_total_order(f):
    for i in range(1, f.weight + 1):
        for j in range(i + 1, f.weight + 1):
            assert vertex_compare(f, i, j) is Comparison.GREATER
            high = vertex_compare(f, i, j, "high") is not Comparison.INCOMPARABLE
            left = vertex_compare(f, i, j, "left") is not Comparison.INCOMPARABLE
            assert high != left


@settings(max_examples=60)
@given(forests)
def test_biideals_are_exactly_prefixes(f):
    n = f.weight
    accepted = [
        s for r in range(n + 1) for s in itertools.combinations(range(1, n + 1), r)
        if is_biideal_brute_force(f, s)
    ]
    assert accepted == [tuple(range(1, k + 1)) for k in range(n + 1)]


@given(forests)
def test_split_weights(f):
    n = f.weight
    for k in range(n + 1):
        p, r = split_at_biideal(f, k)
        assert (p.weight, r.weight) == (k, n - k)
    assert split_at_biideal(f, n) == (f, ONE)
    with pytest.raises(ValueError):
        split_at_biideal(f, n + 1)


def test_split_example():
    f = parse_forest("[[[]] []]")
    assert split_at_biideal(f, 2) == (parse_forest("[[]]"), parse_forest("[[]]"))
    assert split_at_biideal(f, 3) == (parse_forest("[[]] []"), parse_forest("[]"))


def test_induced_forest_orders_roots():
    f = parse_forest("[[] []]")
    assert induced_forest(f, [1, 2]) == parse_forest("[] []")
    assert induced_forest(f, [2, 3]) == parse_forest("[[]]")


def test_left_cuts():
    cuts = sorted((n, str(w)) for n, w in left_cuts(parse_forest("[[[]]]")))
    assert cuts == [(0, "[[[]]]"), (1, "[[]] []"), (1, "[] [[]]"), (2, "[] [] []")]
    # only the left edge of the cherry is cuttable
    assert sorted((n, str(w)) for n, w in left_cuts(parse_forest("[[] []]"))) == [
        (0, "[[] []]"), (1, "[] [[]]"),
    ]
    with pytest.raises(ValueError):
        left_cuts(parse_forest("[] []"))
