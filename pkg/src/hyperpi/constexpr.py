"""Closed-form constant expressions: exact trees over pi, gamma values,
square roots and rationals, with JSON (de)serialization and
arbitrary-precision evaluation.

Tree node kinds
---------------

* :class:`RationalLeaf` -- an exact rational.
* :class:`PiLeaf` -- the constant pi.
* :class:`GammaLeaf` -- Gamma(arg) for a positive rational argument.
* :class:`SqrtNode` -- square root of a subtree.
* :class:`SumNode` / :class:`ProductNode` -- n-ary sum / product.
* :class:`PowerNode` -- integer power of a subtree.

JSON schema
-----------

Leaves: ``{"rat": "p/q"}``, ``{"pi": e}`` (integer exponent e),
``{"gamma": "p/q", "exp": n}``, ``{"sqrt": <subtree>}``.
Operators: ``{"op": "add"|"sub"|"mul"|"div", "args": [<subtree>, ...]}``.
No floating-point numbers may appear anywhere.

Evaluation error
----------------

``eval_const_expr(expr, prec)`` returns a value with relative error below
``2**(c - prec)`` where the per-node constants are: rational conversion and
multiplication/division/square root at most 1 ulp each, pi at most 1 ulp,
gamma at most ``2**8`` ulp.  Evaluation carries ``GUARD_BITS`` plus a
tree-size allowance of working precision, so for the shallow trees stored
in catalogs the overall constant satisfies ``c <= 10``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from hyperpi.bigfloat import GUARD_BITS, BigFloat, pi_reference, pow_int, sqrt
from hyperpi.errors import DomainError, SchemaError, UnsupportedLhs
from hyperpi.gammafn import gamma_rational


@dataclass(frozen=True)
class RationalLeaf:
    value: Fraction


@dataclass(frozen=True)
class PiLeaf:
    pass


@dataclass(frozen=True)
class GammaLeaf:
    arg: Fraction


@dataclass(frozen=True)
class SqrtNode:
    child: "ConstExpr"


@dataclass(frozen=True)
class SumNode:
    children: tuple["ConstExpr", ...]


@dataclass(frozen=True)
class ProductNode:
    children: tuple["ConstExpr", ...]


@dataclass(frozen=True)
class PowerNode:
    child: "ConstExpr"
    exponent: int


ConstExpr = Union[RationalLeaf, PiLeaf, GammaLeaf, SqrtNode, SumNode, ProductNode, PowerNode]


# ----------------------------------------------------------------------
# parsing / serialization
# ----------------------------------------------------------------------


def parse_rational_string(text: object) -> Fraction:
    """Parse a strict ``"p"`` or ``"p/q"`` rational string."""
    if not isinstance(text, str):
        raise SchemaError(f"expected a rational string, got {text!r}")
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"invalid rational string {text!r}") from exc
    if "." in text or "e" in text.lower():
        raise SchemaError(f"rational strings must be exact integers or p/q: {text!r}")
    return value


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _require_int(value: object, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{what} must be an integer, got {value!r}")
    return value


def parse_const_expr(node: object) -> ConstExpr:
    """Parse the JSON form of a constant expression (strict; no floats)."""
    if not isinstance(node, dict):
        raise SchemaError(f"expression node must be an object, got {node!r}")
    keys = set(node.keys())
    if keys == {"rat"}:
        return RationalLeaf(parse_rational_string(node["rat"]))
    if keys == {"pi"}:
        exponent = _require_int(node["pi"], "pi exponent")
        base: ConstExpr = PiLeaf()
        return base if exponent == 1 else PowerNode(base, exponent)
    if keys == {"gamma", "exp"}:
        arg = parse_rational_string(node["gamma"])
        if arg <= 0:
            raise SchemaError(f"gamma leaf argument must be positive, got {arg}")
        exponent = _require_int(node["exp"], "gamma exponent")
        leaf: ConstExpr = GammaLeaf(arg)
        return leaf if exponent == 1 else PowerNode(leaf, exponent)
    if keys == {"sqrt"}:
        return SqrtNode(parse_const_expr(node["sqrt"]))
    if keys == {"op", "args"}:
        op = node["op"]
        args = node["args"]
        if not isinstance(args, list) or len(args) < 2:
            raise SchemaError("operator node needs a list of at least two arguments")
        parsed = [parse_const_expr(a) for a in args]
        if op == "add":
            return SumNode(tuple(parsed))
        if op == "sub":
            rest = [ProductNode((RationalLeaf(Fraction(-1)), p)) for p in parsed[1:]]
            return SumNode((parsed[0], *rest))
        if op == "mul":
            return ProductNode(tuple(parsed))
        if op == "div":
            rest = [PowerNode(p, -1) for p in parsed[1:]]
            return ProductNode((parsed[0], *rest))
        raise SchemaError(f"unknown operator {op!r}")
    raise SchemaError(f"unrecognized expression node with keys {sorted(keys)}")


def serialize_const_expr(expr: ConstExpr) -> dict:
    """Serialize a tree back to the JSON schema."""
    if isinstance(expr, RationalLeaf):
        return {"rat": format_rational(expr.value)}
    if isinstance(expr, PiLeaf):
        return {"pi": 1}
    if isinstance(expr, GammaLeaf):
        return {"gamma": format_rational(expr.arg), "exp": 1}
    if isinstance(expr, PowerNode):
        if isinstance(expr.child, PiLeaf):
            return {"pi": expr.exponent}
        if isinstance(expr.child, GammaLeaf):
            return {"gamma": format_rational(expr.child.arg), "exp": expr.exponent}
        inner = serialize_const_expr(expr.child)
        if expr.exponent >= 0:
            out = {"op": "mul", "args": [inner] * max(expr.exponent, 2)}
            return inner if expr.exponent == 1 else out
        if expr.exponent == -1:
            return {"op": "div", "args": [{"rat": "1"}, inner]}
        return {
            "op": "div",
            "args": [{"rat": "1"}, {"op": "mul", "args": [inner] * (-expr.exponent)}],
        }
    if isinstance(expr, SqrtNode):
        return {"sqrt": serialize_const_expr(expr.child)}
    if isinstance(expr, SumNode):
        return {"op": "add", "args": [serialize_const_expr(c) for c in expr.children]}
    if isinstance(expr, ProductNode):
        return {"op": "mul", "args": [serialize_const_expr(c) for c in expr.children]}
    raise SchemaError(f"cannot serialize {expr!r}")


# ----------------------------------------------------------------------
# structure queries
# ----------------------------------------------------------------------


def node_count(expr: ConstExpr) -> int:
    if isinstance(expr, (RationalLeaf, PiLeaf, GammaLeaf)):
        return 1
    if isinstance(expr, SqrtNode):
        return 1 + node_count(expr.child)
    if isinstance(expr, PowerNode):
        return 1 + node_count(expr.child)
    if isinstance(expr, (SumNode, ProductNode)):
        return 1 + sum(node_count(c) for c in expr.children)
    raise SchemaError(f"unknown node {expr!r}")


def gamma_leaves(expr: ConstExpr) -> list[tuple[Fraction, int]]:
    """All gamma factors as (argument, exponent) pairs, in tree order."""
    out: list[tuple[Fraction, int]] = []

    def walk(node: ConstExpr, power: int) -> None:
        if isinstance(node, GammaLeaf):
            out.append((node.arg, power))
        elif isinstance(node, PowerNode):
            walk(node.child, power * node.exponent)
        elif isinstance(node, SqrtNode):
            walk(node.child, power)  # exponent halving is not representable;
            # a gamma under sqrt is still reported (callers treat it as present)
        elif isinstance(node, (SumNode, ProductNode)):
            for child in node.children:
                walk(child, power)

    walk(expr, 1)
    return out


def pi_structure(expr: ConstExpr) -> tuple[int, ConstExpr]:
    """Split ``expr`` into ``algebraic * pi**e``.

    The returned algebraic factor contains neither pi nor gamma leaves.
    Raises :class:`UnsupportedLhs` when the expression has gamma factors or
    when pi occurs inside a sum or a square root.
    """
    if isinstance(expr, RationalLeaf):
        return 0, expr
    if isinstance(expr, PiLeaf):
        return 1, RationalLeaf(Fraction(1))
    if isinstance(expr, GammaLeaf):
        raise UnsupportedLhs("closed form contains a gamma factor")
    if isinstance(expr, PowerNode):
        e, alg = pi_structure(expr.child)
        return e * expr.exponent, PowerNode(alg, expr.exponent)
    if isinstance(expr, SqrtNode):
        e, _ = pi_structure(expr.child)
        if e != 0:
            raise UnsupportedLhs("pi under a square root is not solvable here")
        return 0, expr
    if isinstance(expr, SumNode):
        for child in expr.children:
            e, _ = pi_structure(child)
            if e != 0:
                raise UnsupportedLhs("pi inside a sum is not solvable here")
        return 0, expr
    if isinstance(expr, ProductNode):
        total = 0
        factors = []
        for child in expr.children:
            e, alg = pi_structure(child)
            total += e
            factors.append(alg)
        return total, ProductNode(tuple(factors))
    raise SchemaError(f"unknown node {expr!r}")


# ----------------------------------------------------------------------
# evaluation
# ----------------------------------------------------------------------


def eval_const_expr(expr: ConstExpr, prec: int) -> BigFloat:
    """Evaluate the tree at ``prec`` bits (see module docstring for error)."""
    wp = prec + GUARD_BITS + 2 * node_count(expr).bit_length() + 8
    return _eval(expr, wp).round_to(prec)


def _eval(expr: ConstExpr, wp: int) -> BigFloat:
    if isinstance(expr, RationalLeaf):
        return BigFloat.from_fraction(expr.value, wp)
    if isinstance(expr, PiLeaf):
        return pi_reference(max(wp, 64))
    if isinstance(expr, GammaLeaf):
        return gamma_rational(expr.arg, wp)
    if isinstance(expr, SqrtNode):
        inner = _eval(expr.child, wp + 4)
        if inner.man < 0:
            raise DomainError("square root of a negative value in a closed form")
        return sqrt(inner, wp)
    if isinstance(expr, PowerNode):
        return pow_int(_eval(expr.child, wp + 4), expr.exponent, wp)
    if isinstance(expr, SumNode):
        acc = BigFloat.zero(wp)
        for child in expr.children:
            acc = acc.add(_eval(child, wp + 4), wp)
        return acc
    if isinstance(expr, ProductNode):
        acc = BigFloat.from_int(1, wp)
        for child in expr.children:
            acc = acc.mul(_eval(child, wp + 4), wp)
        return acc
    raise SchemaError(f"unknown node {expr!r}")
