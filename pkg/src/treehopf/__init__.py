"""Planar rooted forests: the infinitesimal Hopf algebra, its pairing and dual basis."""
from .algebra import (
    Element,
    TensorElement,
    antipode,
    antipode_left_cut,
    antipode_recursive,
    coproduct,
    coproduct_via_order,
    counit,
    format_element,
    parse_element,
    product,
    reduced_coproduct,
)
from .forest import (
    ONE,
    Forest,
    ForestSyntaxError,
    Tree,
    b_minus,
    b_plus,
    dots,
    enumerate_forests,
    enumerate_trees,
    ladder,
    parse_forest,
    split_at_biideal,
)
from .pairing import dual_basis_via_gram, gamma, gram_matrix, pairing
from .tamari import (
    BinaryTree,
    build_poset,
    dual_basis_via_mobius,
    dual_product,
    eta,
    eta_inverse,
    less_eq,
    m_involution,
    parse_binary,
)

__version__ = "0.1.0"

__all__ = [
    "Element",
    "TensorElement",
    "antipode",
    "antipode_left_cut",
    "antipode_recursive",
    "coproduct",
    "coproduct_via_order",
    "counit",
    "format_element",
    "parse_element",
    "product",
    "reduced_coproduct",
    "ONE",
    "Forest",
    "ForestSyntaxError",
    "Tree",
    "b_minus",
    "b_plus",
    "dots",
    "enumerate_forests",
    "enumerate_trees",
    "ladder",
    "dual_basis_via_gram",
    "gamma",
    "gram_matrix",
    "pairing",
    "parse_forest",
    "split_at_biideal",
    "BinaryTree",
    "build_poset",
    "dual_basis_via_mobius",
    "dual_product",
    "eta",
    "eta_inverse",
    "less_eq",
    "m_involution",
    "parse_binary",
]
