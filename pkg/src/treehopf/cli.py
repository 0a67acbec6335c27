"""Command-line front end.

Exit status: 0 on success, 1 when a verification or agreement check fails,
2 on usage or parse errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import checks
from .algebra import (
    Element,
    antipode_left_cut,
    antipode_recursive,
    coproduct,
    element_from_json,
    element_to_json,
    format_element,
    format_tensor,
    parse_element,
    reduced_coproduct,
    tensor_to_json,
)
from .forest import ForestSyntaxError, enumerate_forests, enumerate_trees, parse_forest
from .pairing import METHODS, dual_element_via_gram, gram_matrix, pairing
from .tamari import (
    build_poset,
    dual_basis_via_mobius,
    dual_product,
    eta,
    eta_inverse,
    expand_dual,
    forest_in_dual_basis,
    m_involution,
    parse_binary,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _element(text: str) -> Element:
    """An element given as text (``2*[[]] - 1*[] []``) or as a JSON term list."""
    stripped = text.lstrip()
    if stripped.startswith("[") and stripped[1:].lstrip().startswith("{"):
        try:
            return element_from_json(stripped)
        except (ValueError, KeyError, TypeError) as err:
            raise UsageError(f"bad JSON element: {err}") from None
    return parse_element(text)


def _print_element(x: Element, as_json: bool) -> None:
    print(json.dumps(element_to_json(x)) if as_json else format_element(x))


def _indices(text: str | None):
    if text is None:
        return None
    try:
        return frozenset(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise UsageError(f"--indices expects comma-separated integers, got {text!r}") from None


def _weight(value: str) -> int:
    n = int(value)
    if n < 0:
        raise argparse.ArgumentTypeError("weight must be non-negative")
    return n


def cmd_enumerate(args) -> int:
    source = enumerate_trees if args.trees_only else enumerate_forests
    for f in source(args.weight):
        print(f)
    return EXIT_OK


def cmd_coproduct(args) -> int:
    x = _element(args.element)
    d = reduced_coproduct(x) if args.reduced else coproduct(x)
    print(json.dumps(tensor_to_json(d)) if args.json else format_tensor(d))
    return EXIT_OK


def cmd_antipode(args) -> int:
    x = _element(args.element)
    if args.method == "recursive":
        _print_element(antipode_recursive(x), args.json)
        return EXIT_OK
    if args.method == "leftcut":
        _print_element(antipode_left_cut(x), args.json)
        return EXIT_OK
    a, b = antipode_recursive(x), antipode_left_cut(x)
    print(f"recursive: {format_element(a)}")
    print(f"leftcut: {format_element(b)}")
    print("AGREE" if a == b else "DISAGREE")
    return EXIT_OK if a == b else EXIT_FAIL


def _fraction_text(v) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def cmd_pair(args) -> int:
    x, y = _element(args.first), _element(args.second)
    if args.method != "all":
        print(_fraction_text(pairing(x, y, args.method)))
        return EXIT_OK
    values = [pairing(x, y, m) for m in METHODS]
    for m, v in zip(METHODS, values):
        print(f"{m}: {_fraction_text(v)}")
    agree = len(set(values)) == 1
    print("AGREE" if agree else "DISAGREE")
    return EXIT_OK if agree else EXIT_FAIL


def cmd_gram(args) -> int:
    g = gram_matrix(args.weight)
    sys.stdout.write(g.to_json() + "\n" if args.format == "json" else g.to_csv())
    return EXIT_OK


def cmd_dual(args) -> int:
    f = parse_forest(args.forest)
    x = dual_basis_via_mobius(f) if args.method == "mobius" else dual_element_via_gram(f)
    _print_element(x, args.json)
    return EXIT_OK


def cmd_dual_product(args) -> int:
    factors = [parse_forest(t) for t in args.forests]
    if any(f.is_one() for f in factors):
        raise UsageError("dual-product factors must be non-empty forests")
    idx = dual_product(*factors)
    if args.expand:
        _print_element(expand_dual(idx), args.json)
        return EXIT_OK
    for g in sorted(idx.support(), key=lambda h: enumerate_forests(h.weight).index(h)):
        print(f"f_{{{g}}}")
    return EXIT_OK


def cmd_express(args) -> int:
    f = parse_forest(args.forest)
    for g in forest_in_dual_basis(f):
        print(f"f_{{{g}}}")
    return EXIT_OK


def cmd_hasse(args) -> int:
    poset = build_poset(args.weight, _indices(args.indices), args.by)
    if args.format == "dot":
        sys.stdout.write(poset.to_dot())
    else:
        for a, b, i in poset.covers:
            print(f"{poset.elements[a]} -> {poset.elements[b]} [{i}]")
    return EXIT_OK


def cmd_mobius(args) -> int:
    sys.stdout.write(build_poset(args.weight).mobius_csv())
    return EXIT_OK


def cmd_eta(args) -> int:
    print(eta(parse_binary(args.tree)))
    return EXIT_OK


def cmd_eta_inv(args) -> int:
    print(eta_inverse(parse_forest(args.forest)))
    return EXIT_OK


def cmd_mirror(args) -> int:
    print(m_involution(parse_forest(args.forest)))
    return EXIT_OK


def cmd_verify(args) -> int:
    failed = 0
    for outcome in checks.run_checks(args.max_weight, args.suite):
        print(outcome.line(), flush=True)
        failed += not outcome.ok
    total = len(checks.select(args.suite))
    print(f"{total - failed}/{total} checks passed")
    return EXIT_FAIL if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="treehopf", description="Planar rooted forests: Hopf structure, pairing and the forest poset.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(func=fn)
        return sp

    sp = add("enumerate", cmd_enumerate, "list the forests of a weight in canonical order")
    sp.add_argument("--weight", type=_weight, required=True)
    sp.add_argument("--trees-only", action="store_true")

    sp = add("coproduct", cmd_coproduct, "coproduct of an element")
    sp.add_argument("element")
    sp.add_argument("--reduced", action="store_true")
    sp.add_argument("--json", action="store_true")

    sp = add("antipode", cmd_antipode, "antipode of an element")
    sp.add_argument("element")
    sp.add_argument("--method", choices=("recursive", "leftcut", "both"), default="leftcut")
    sp.add_argument("--json", action="store_true")

    sp = add("pair", cmd_pair, "pairing of two elements")
    sp.add_argument("first")
    sp.add_argument("second")
    sp.add_argument("--method", choices=METHODS + ("all",), default="bijection")

    sp = add("gram", cmd_gram, "Gram matrix of the pairing on one weight")
    sp.add_argument("--weight", type=_weight, required=True)
    sp.add_argument("--format", choices=("csv", "json"), default="csv")

    sp = add("dual", cmd_dual, "dual basis element f_F in the forest basis")
    sp.add_argument("--forest", required=True)
    sp.add_argument("--method", choices=("mobius", "gram"), default="mobius")
    sp.add_argument("--json", action="store_true")

    sp = add("dual-product", cmd_dual_product, "f_{Fn}...f_{F1} for arguments F1 ... Fn")
    sp.add_argument("forests", nargs="+")
    sp.add_argument("--expand", action="store_true", help="print the product in the forest basis")
    sp.add_argument("--json", action="store_true")

    sp = add("express", cmd_express, "write a forest as a sum of dual basis elements")
    sp.add_argument("--forest", required=True)

    sp = add("hasse", cmd_hasse, "covers of the forest poset")
    sp.add_argument("--weight", type=_weight, required=True)
    sp.add_argument("--indices", help="comma-separated transformation indices (default: all)")
    sp.add_argument(
        "--by", choices=("cut", "vertex"), default="cut",
        help="how --indices selects moves: by the cuts a move crosses, or by its label only",
    )
    sp.add_argument("--format", choices=("dot", "edges"), default="dot")

    sp = add("mobius", cmd_mobius, "Moebius function of the forest poset as CSV")
    sp.add_argument("--weight", type=_weight, required=True)

    sp = add("eta", cmd_eta, "forest of a planar binary tree, e.g. '((..).)'")
    sp.add_argument("tree")

    sp = add("eta-inv", cmd_eta_inv, "planar binary tree of a forest")
    sp.add_argument("forest")

    sp = add("mirror", cmd_mirror, "the involution m")
    sp.add_argument("forest")

    sp = add("verify", cmd_verify, "run the invariant checks")
    sp.add_argument("--max-weight", type=_weight, default=5)
    sp.add_argument("--suite", choices=("all",) + checks.SUITES, default="all")
    return p


def _report_syntax(err: ForestSyntaxError) -> None:
    print(f"parse error: {err.message} at offset {err.offset}", file=sys.stderr)
    print(f"  {err.text}", file=sys.stderr)
    print("  " + " " * err.offset + "^", file=sys.stderr)


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as err:
        print(err, file=sys.stderr)
        return EXIT_USAGE
    except ForestSyntaxError as err:
        _report_syntax(err)
        return EXIT_USAGE
    except SystemExit as err:  # --help
        return int(err.code or 0)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
