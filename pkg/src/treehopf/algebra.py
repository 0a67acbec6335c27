"""The infinitesimal Hopf algebra of planar forests over the rationals.

Elements are finite linear combinations of forests; the product is
concatenation, the coproduct sums over the biideals (prefixes of the
post-order) of a forest, and the antipode is available both through its
defining recursion and through left cuts.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Mapping, Union

from .forest import (
    ONE,
    Forest,
    ForestSyntaxError,
    Tree,
    as_forest,
    b_plus,
    forest_rank,
    left_cuts,
    parse_forest,
    split_at_biideal,
)

Scalar = Union[int, Fraction]


def _coeff(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, str)):
        return Fraction(c)
    raise TypeError(f"coefficients must be exact rationals, got {c!r}")


def _sort_key(f: Forest):
    return (f.weight, forest_rank(f))


class Element:
    """A finite formal sum of planar forests with rational coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Forest, Scalar] | Iterable[tuple[Forest, Scalar]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Forest, Fraction] = {}
        for f, c in items:
            f = as_forest(f)
            acc[f] = acc.get(f, 0) + _coeff(c)
        self._terms = {f: c for f, c in acc.items() if c}

    @classmethod
    def of(cls, f: Forest | Tree | str, coeff: Scalar = 1) -> Element:
        return cls({as_forest(f): coeff})

    @classmethod
    def coerce(cls, x) -> Element:
        if isinstance(x, Element):
            return x
        if isinstance(x, (Forest, Tree)):
            return cls.of(x)
        if isinstance(x, (int, Fraction)):
            return cls({ONE: x})
        if isinstance(x, str):
            return parse_element(x)
        raise TypeError(f"cannot interpret {x!r} as an element")

    # mapping-like access
    def items(self):
        return self._terms.items()

    def support(self) -> list[Forest]:
        return sorted(self._terms, key=_sort_key)

    def coefficient(self, f: Forest | Tree | str) -> Fraction:
        return self._terms.get(as_forest(f), Fraction(0))

    def __getitem__(self, f) -> Fraction:
        return self.coefficient(f)

    def __len__(self):
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[Forest, Fraction]]:
        return iter(self._terms.items())

    def __bool__(self):
        return bool(self._terms)

    # arithmetic
    def __add__(self, other):
        try:
            other = Element.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for f, c in other._terms.items():
            out[f] = out.get(f, 0) + c
        return Element(out)

    __radd__ = __add__

    def __neg__(self):
        return Element({f: -c for f, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = Element.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Element.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Element({f: c * other for f, c in self._terms.items()})
        try:
            other = Element.coerce(other)
        except TypeError:
            return NotImplemented
        return product(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        try:
            other = Element.coerce(other)
        except TypeError:
            return NotImplemented
        return product(other, self)

    def __eq__(self, other):
        try:
            other = Element.coerce(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None

    def is_homogeneous(self) -> bool:
        return len({f.weight for f in self._terms}) <= 1

    def map(self, fn: Callable[[Forest], Element]) -> Element:
        """Extend ``fn`` (defined on forests) linearly."""
        out: dict[Forest, Fraction] = {}
        for f, c in self._terms.items():
            for g, d in Element.coerce(fn(f))._terms.items():
                out[g] = out.get(g, 0) + c * d
        return Element(out)

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"Element('{self}')"


ZERO = Element()


class TensorElement:
    """A finite formal sum of tuples of forests (rank 2 or 3 in practice)."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple, Scalar] | Iterable[tuple[tuple, Scalar]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple[Forest, ...], Fraction] = {}
        for key, c in items:
            key = tuple(as_forest(f) for f in key)
            acc[key] = acc.get(key, 0) + _coeff(c)
        self._terms = {k: c for k, c in acc.items() if c}

    @property
    def rank(self) -> int | None:
        for key in self._terms:
            return len(key)
        return None

    def items(self):
        return self._terms.items()

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def coefficient(self, *factors) -> Fraction:
        return self._terms.get(tuple(as_forest(f) for f in factors), Fraction(0))

    def __add__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return TensorElement(out)

    def __neg__(self):
        return TensorElement({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TensorElement({k: c * other for k, c in self._terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None

    def __str__(self):
        return format_tensor(self)

    def __repr__(self):
        return f"TensorElement('{self}')"


def tensor(*factors) -> TensorElement:
    """Tensor product of elements (forests are promoted)."""
    terms: dict[tuple, Fraction] = {(): Fraction(1)}
    for x in factors:
        x = Element.coerce(x)
        terms = {k + (f,): c * d for k, c in terms.items() for f, d in x.items()}
    return TensorElement(terms)


def tensor_map(u: TensorElement, *maps: Callable[[Forest], Element | TensorElement]) -> TensorElement:
    """Apply one linear map per tensor factor; tensor-valued maps raise the rank."""
    out: dict[tuple, Fraction] = {}
    for key, c in u.items():
        partial: dict[tuple, Fraction] = {(): c}
        for f, fn in zip(key, maps):
            image = fn(f)
            if isinstance(image, TensorElement):
                pieces = list(image.items())
            else:
                pieces = [((g,), d) for g, d in Element.coerce(image).items()]
            partial = {k + kk: a * b for k, a in partial.items() for kk, b in pieces}
        for k, a in partial.items():
            out[k] = out.get(k, 0) + a
    return TensorElement(out)


def multiply(u: TensorElement) -> Element:
    """The multiplication map on tensors of any rank."""
    out: dict[Forest, Fraction] = {}
    for key, c in u.items():
        f = Forest(t for g in key for t in g.trees)
        out[f] = out.get(f, 0) + c
    return Element(out)


# ---------------------------------------------------------------------------
# structure maps


def counit(x) -> Fraction:
    """Coefficient of the empty forest."""
    return Element.coerce(x).coefficient(ONE)


def product(x, y) -> Element:
    x, y = Element.coerce(x), Element.coerce(y)
    out: dict[Forest, Fraction] = {}
    for f, c in x.items():
        for g, d in y.items():
            fg = Forest(f.trees + g.trees)
            out[fg] = out.get(fg, 0) + c * d
    return Element(out)


@lru_cache(maxsize=None)
def _coproduct_forest(f: Forest) -> tuple[tuple[Forest, Forest], ...]:
    return tuple(split_at_biideal(f, k) for k in range(f.weight + 1))


def coproduct(x) -> TensorElement:
    """Sum over the biideals I of each forest F of I (x) (F - I)."""
    out: dict[tuple, Fraction] = {}
    for f, c in Element.coerce(x).items():
        for key in _coproduct_forest(f):
            out[key] = out.get(key, 0) + c
    return TensorElement(out)


def reduced_coproduct(x) -> TensorElement:
    x = Element.coerce(x)
    if counit(x):
        raise ValueError("reduced coproduct is defined on the augmentation ideal only")
    return coproduct(x) - tensor(x, ONE) - tensor(ONE, x)


def coproduct_via_order(f: Forest | str) -> TensorElement:
    """Coproduct of a forest read off the orders <=_{k} of the forest poset."""
    from .forest import enumerate_forests
    from .tamari import build_poset

    f = as_forest(f)
    if f.is_one():
        raise ValueError("coproduct_via_order needs a non-empty forest")
    n = f.weight
    terms: dict[tuple, int] = {(f, ONE): 1, (ONE, f): 1}
    for k in range(1, n):
        poset = build_poset(n, frozenset({k}))
        for f1 in enumerate_forests(k):
            for f2 in enumerate_forests(n - k):
                if poset.leq(f, f1 * f2):
                    terms[(f1, f2)] = 1
    return TensorElement(terms)


def epsilon_product(u: TensorElement, v: TensorElement) -> TensorElement:
    """The product on A (x) A making the coproduct an algebra morphism.

    (a1 (x) b1)(a2 (x) b2) = e(a2) a1 (x) b1 b2 + e(b1) a1 a2 (x) b2 - e(a2) e(b1) a1 (x) b2
    """
    out: dict[tuple, Fraction] = {}

    def add(key, c):
        out[key] = out.get(key, 0) + c

    for (a1, b1), c in u.items():
        e_b1 = b1.is_one()
        for (a2, b2), d in v.items():
            e_a2 = a2.is_one()
            cd = c * d
            if e_a2:
                add((a1, b1 * b2), cd)
            if e_b1:
                add((a1 * a2, b2), cd)
            if e_a2 and e_b1:
                add((a1, b2), -cd)
    return TensorElement(out)


# ---------------------------------------------------------------------------
# antipode


@lru_cache(maxsize=None)
def _antipode_rec_forest(f: Forest) -> Element:
    if f.is_one():
        return Element.of(ONE)
    # S(F) = -F - sum S(F') F'' over the reduced coproduct
    acc = Element.of(f, -1)
    for k in range(1, f.weight):
        p, r = split_at_biideal(f, k)
        acc = acc - _antipode_rec_forest(p) * Element.of(r)
    return acc


def antipode_recursive(x) -> Element:
    return Element.coerce(x).map(_antipode_rec_forest)


@lru_cache(maxsize=None)
def _antipode_cut_forest(f: Forest) -> Element:
    if f.is_one():
        return Element.of(ONE)
    if len(f) >= 2:
        return ZERO
    terms: dict[Forest, int] = {}
    for n_cut, w in left_cuts(f.trees[0]):
        terms[w] = terms.get(w, 0) - (-1) ** n_cut
    return Element(terms)


def antipode_left_cut(x) -> Element:
    return Element.coerce(x).map(_antipode_cut_forest)


antipode = antipode_left_cut


def _antipode_fn(method: str):
    if method == "recursive":
        return antipode_recursive
    if method in ("leftcut", "left_cut"):
        return antipode_left_cut
    raise ValueError(f"unknown antipode method {method!r}")


def convolution_check(x, side: str = "left", method: str = "leftcut") -> Element:
    """m(S (x) Id) Delta (x) for side="left", m(Id (x) S) Delta (x) for side="right"."""
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    s = _antipode_fn(method)
    ident = Element.of
    maps = (s, ident) if side == "left" else (ident, s)
    return multiply(tensor_map(coproduct(x), *maps))


def is_primitive(x) -> bool:
    x = Element.coerce(x)
    return counit(x) == 0 and not reduced_coproduct(x)


def primitive_decompose(x) -> tuple[Element, Element]:
    """Split x in Ker(e) as (primitive part, part in Ker(e)^2); the projector is -S."""
    x = Element.coerce(x)
    if counit(x):
        raise ValueError("primitive_decompose needs an element of the augmentation ideal")
    p = -antipode(x)
    return p, x - p


def b_plus_linear(x) -> Element:
    return Element.coerce(x).map(lambda f: Element.of(b_plus(f)))


# ---------------------------------------------------------------------------
# text and JSON forms


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _print_order(keys):
    # highest (weight, rank) first, which is how the tables list expansions
    return sorted(keys, key=lambda k: tuple(_sort_key(f) for f in k), reverse=True)


def format_element(x: Element) -> str:
    if not x:
        return "0"
    parts = []
    for f in _print_order([(f,) for f, _ in x.items()]):
        c = x.coefficient(f[0])
        sign = "-" if c < 0 else "+"
        body = f"{_format_coeff(abs(c))}*{f[0]}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


def format_tensor(u: TensorElement) -> str:
    if not u:
        return "0"
    parts = []
    for key in _print_order([k for k, _ in u.items()]):
        c = u.coefficient(*key)
        body = f"{_format_coeff(abs(c))}*" + " ⊗ ".join(str(f) for f in key)
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


_SEPARATOR = re.compile(r"\s+([+-])\s+")
_TERM = re.compile(r"\s*([+-]?)\s*(?:(\d+(?:/\d+)?)\s*\*)?\s*")


def parse_element(text: str) -> Element:
    """Parse ``term (" + " term | " - " term)*`` with ``term := [coeff "*"] forest``."""
    if text.strip() == "0":
        return ZERO
    pieces = []
    start, sign = 0, "+"
    for m in _SEPARATOR.finditer(text):
        pieces.append((start, text[start:m.start()], sign))
        start, sign = m.end(), m.group(1)
    pieces.append((start, text[start:], sign))
    terms: list[tuple[Forest, Fraction]] = []
    for offset, chunk, sep_sign in pieces:
        m = _TERM.match(chunk)
        lead, coeff = m.group(1), m.group(2)
        c = Fraction(coeff) if coeff else Fraction(1)
        if (lead == "-") != (sep_sign == "-"):
            c = -c
        body = chunk[m.end():]
        try:
            f = parse_forest(body)
        except ForestSyntaxError as err:
            raise ForestSyntaxError(
                err.message, text, offset + m.end() + err.offset
            ) from None
        terms.append((f, c))
    return Element(terms)


def element_to_json(x: Element) -> list[dict[str, str]]:
    return [
        {"coeff": _format_coeff(x.coefficient(k[0])), "forest": str(k[0])}
        for k in _print_order([(f,) for f, _ in x.items()])
    ]


def element_from_json(data) -> Element:
    if isinstance(data, str):
        data = json.loads(data)
    return Element((parse_forest(item["forest"]), Fraction(str(item["coeff"]))) for item in data)


def tensor_to_json(u: TensorElement) -> list[dict]:
    return [
        {"coeff": _format_coeff(u.coefficient(*k)), "forests": [str(f) for f in k]}
        for k in _print_order([k for k, _ in u.items()])
    ]
