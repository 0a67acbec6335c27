import itertools
import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from golden import ANTIPODE, COPRODUCT
from treehopf.algebra import (
    ZERO,
    Element,
    TensorElement,
    antipode_left_cut,
    antipode_recursive,
    b_plus_linear,
    convolution_check,
    coproduct,
    coproduct_via_order,
    counit,
    element_from_json,
    element_to_json,
    epsilon_product,
    format_element,
    format_tensor,
    is_primitive,
    multiply,
    parse_element,
    primitive_decompose,
    product,
    reduced_coproduct,
    tensor,
    tensor_map,
    tensor_to_json,
)
from treehopf.forest import ONE, ForestSyntaxError, enumerate_forests, is_biideal_brute_force, induced_forest, parse_forest

forests = st.integers(0, 5).flatmap(lambda n: st.sampled_from(enumerate_forests(n)))
small = st.integers(0, 3).flatmap(lambda n: st.sampled_from(enumerate_forests(n)))
coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
elements = st.lists(st.tuples(small, coeffs), max_size=4).map(Element)


def brute_coproduct(f):
    """Sum over every vertex subset that passes the pairwise biideal test."""
    n = f.weight
    terms = {}
    for r in range(n + 1):
        for s in itertools.combinations(range(1, n + 1), r):
            if is_biideal_brute_force(f, s):
                rest = [i for i in range(1, n + 1) if i not in s]
                key = (induced_forest(f, s), induced_forest(f, rest))
                terms[key] = terms.get(key, 0) + 1
    return TensorElement(terms)


def golden_tensor(rows):
    return TensorElement({(a, b): c for c, a, b in rows})


def golden_element(rows):
    return Element((parse_forest(f), c) for c, f in rows)


# --- elements ---------------------------------------------------------------


def test_element_arithmetic():
    x = Element.of("[[]]", 2) - Element.of("[] []")
    assert x.coefficient("[[]]") == 2
    assert (x - x) == ZERO
    assert 3 * x == x + x + x
    assert product(x, "[]") == Element.of("[[]] []", 2) - Element.of("[] [] []")
    assert Element.of("[]", 0) == ZERO
    assert Element.coerce(1) == Element.of(ONE)


@given(elements, elements, elements)
def test_product_is_associative(x, y, z):
    assert product(product(x, y), z) == product(x, product(y, z))


def test_format_and_parse():
    x = parse_element("-1*[[]] + 1*[] []")
    assert format_element(x) == "-1*[[]] + 1*[] []"
    assert format_element(parse_element("1/2*[] - 3*1")) == "1/2*[] - 3*1"
    assert parse_element("0") == ZERO
    assert format_element(ZERO) == "0"
    assert parse_element("[[] []] - [] [[]]") == Element.of("[[] []]") - Element.of("[] [[]]")


def test_parse_element_error_offset():
    with pytest.raises(ForestSyntaxError) as info:
        parse_element("[[]] + [[")
    assert info.value.offset == 9


@given(elements)
def test_text_and_json_round_trip(x):
    assert parse_element(format_element(x)) == x
    assert element_from_json(json.dumps(element_to_json(x))) == x


def test_tensor_json():
    data = tensor_to_json(coproduct(parse_forest("[[]]")))
    assert {"coeff": "1", "forests": ["[]", "[]"]} in data
    assert format_tensor(reduced_coproduct("[[]]")) == "1*[] ⊗ []"


# --- coproduct --------------------------------------------------------------


@pytest.mark.parametrize("forest", list(COPRODUCT))
def test_coproduct_table(forest):
    assert coproduct(parse_forest(forest)) == golden_tensor(COPRODUCT[forest])


@pytest.mark.parametrize("n", range(6))
def test_coproduct_matches_subset_enumeration(n):
    for f in enumerate_forests(n):
        assert coproduct(f) == brute_coproduct(f)


@pytest.mark.parametrize("n", range(1, 7))
def test_coproduct_via_order(n):
    for f in enumerate_forests(n):
        assert coproduct_via_order(f) == coproduct(f), str(f)


def test_coproduct_term_count():
    # one term per biideal
    for f in enumerate_forests(5):
        assert len(coproduct(f)) == f.weight + 1


@given(forests)
def test_coassociative(f):
    d = coproduct(f)
    assert tensor_map(d, coproduct, Element.of) == tensor_map(d, Element.of, coproduct)


@given(forests)
def test_counit(f):
    left = multiply(tensor_map(coproduct(f), lambda g: Element.of(ONE, counit(g)), Element.of))
    right = multiply(tensor_map(coproduct(f), Element.of, lambda g: Element.of(ONE, counit(g))))
    assert left == right == Element.of(f)


@given(small, small)
def test_infinitesimal_compatibility(a, b):
    lhs = coproduct(a * b)
    rhs = (
        TensorElement({(a * x, y): c for (x, y), c in coproduct(b).items()})
        + TensorElement({(x, y * b): c for (x, y), c in coproduct(a).items()})
        - tensor(a, b)
    )
    assert lhs == rhs == epsilon_product(coproduct(a), coproduct(b))


@given(forests)
def test_b_plus_coproduct(f):
    t = b_plus_linear(f)
    expected = tensor(t, ONE) + tensor_map(coproduct(f), Element.of, b_plus_linear)
    assert coproduct(t) == expected


def test_reduced_coproduct_needs_augmentation():
    assert reduced_coproduct(Element.of("[]")) == TensorElement()
    with pytest.raises(ValueError):
        reduced_coproduct(Element.of(ONE) + Element.of("[]"))


# --- antipode ---------------------------------------------------------------


@pytest.mark.parametrize("forest", list(ANTIPODE))
@pytest.mark.parametrize("fn", [antipode_recursive, antipode_left_cut])
def test_antipode_table(forest, fn):
    assert fn(parse_forest(forest)) == golden_element(ANTIPODE[forest])


@pytest.mark.parametrize("n", range(7))
def test_antipode_algorithms_agree(n):
    for f in enumerate_forests(n):
        assert antipode_recursive(f) == antipode_left_cut(f)


@given(forests)
def test_antipode_vanishes_on_products(f):
    if len(f) >= 2:
        assert antipode_left_cut(f) == ZERO


@given(forests, st.sampled_from(["left", "right"]), st.sampled_from(["leftcut", "recursive"]))
def test_convolution(f, side, method):
    assert convolution_check(f, side, method) == Element.of(ONE, counit(f))


def test_convolution_rejects_bad_side():
    with pytest.raises(ValueError):
        convolution_check(Element.of("[]"), side="middle")


@given(small, small)
def test_antipode_of_product(a, b):
    ea, eb = counit(a), counit(b)
    expected = ea * antipode_left_cut(b) + eb * antipode_left_cut(a) - Element.of(ONE, ea * eb)
    assert antipode_left_cut(a * b) == expected


@given(forests)
def test_antipode_is_coprimitive_up_to_counit(f):
    s = antipode_left_cut(f)
    assert coproduct(s) == tensor(s, ONE) + tensor(ONE, s) - tensor(ONE, ONE) * counit(f)


@given(st.lists(st.tuples(st.integers(1, 4).flatmap(lambda n: st.sampled_from(enumerate_forests(n))), coeffs), min_size=1, max_size=4))
def test_primitive_decomposition(terms):
    x = Element(terms)
    p, q = primitive_decompose(x)
    assert is_primitive(p)
    assert all(len(g) >= 2 for g in q.support())
    assert p + q == x


def test_primitive_decomposition_needs_augmentation():
    with pytest.raises(ValueError):
        primitive_decompose(Element.of(ONE))


def test_primitive_example():
    assert is_primitive(Element.of("[[]]") - Element.of("[] []"))
    assert not is_primitive(Element.of("[[]]"))
    assert counit(Fraction(3)) == 3
