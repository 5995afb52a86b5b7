"""Closed-form constant expressions: parsing, classification, evaluation."""

from fractions import Fraction

import pytest

from hyperpi.bigfloat import BigFloat, agrees_to_bits, pi_reference, sqrt
from hyperpi.constexpr import (
    GammaLeaf,
    PiLeaf,
    RationalLeaf,
    SqrtNode,
    eval_const_expr,
    format_rational,
    gamma_leaves,
    node_count,
    parse_const_expr,
    parse_rational_string,
    pi_structure,
    serialize_const_expr,
)
from hyperpi.errors import SchemaError, UnsupportedLhs

INV_PI_SQ = {
    "op": "div",
    "args": [{"rat": "32"}, {"op": "mul", "args": [{"pi": 1}, {"pi": 1}]}],
}


def test_parse_rational_strings():
    assert parse_rational_string("3/2") == Fraction(3, 2)
    assert parse_rational_string("-7") == Fraction(-7)
    for bad in ("1.5", "", "x", 3, None, "1/0"):
        with pytest.raises(SchemaError):
            parse_rational_string(bad)


def test_format_rational():
    assert format_rational(Fraction(3, 2)) == "3/2"
    assert format_rational(Fraction(-1, 3)) == "-1/3"
    assert format_rational(Fraction(14, 2)) == "7"


def test_parse_serialize_round_trip():
    leaf_samples = [
        {"rat": "-5/6"},
        {"pi": -2},
        {"gamma": "1/3", "exp": 3},
        {"sqrt": {"rat": "5"}},
    ]
    for doc in leaf_samples:
        expr = parse_const_expr(doc)
        assert serialize_const_expr(expr) == doc
    # division is normalized into product-of-reciprocal form on parse, so
    # composite expressions round-trip by value rather than by shape
    for doc in (INV_PI_SQ, {"op": "add", "args": [{"rat": "1"}, {"sqrt": {"rat": "2"}}]}):
        expr = parse_const_expr(doc)
        again = parse_const_expr(serialize_const_expr(expr))
        assert agrees_to_bits(eval_const_expr(expr, 200), eval_const_expr(again, 200)) > 190


def test_parse_rejects_malformed_nodes():
    bad_docs = [
        {},
        {"pi": "2"},
        {"pi": 1.0},
        {"gamma": "1/3"},
        {"rat": 3},
        {"op": "pow", "args": [{"rat": "2"}, {"rat": "3"}]},
        {"op": "add", "args": []},
        {"op": "div", "args": [{"rat": "1"}]},
        {"sqrt": []},
        ["rat", "1"],
    ]
    for doc in bad_docs:
        with pytest.raises(SchemaError):
            parse_const_expr(doc)


def test_eval_known_value():
    prec = 300
    value = eval_const_expr(parse_const_expr(INV_PI_SQ), prec)
    pi_val = pi_reference(prec)
    expected = BigFloat.from_int(32, prec).div(pi_val.mul(pi_val, prec), prec)
    assert agrees_to_bits(value, expected) > 290


def test_eval_sqrt_nesting():
    prec = 256
    doc = {
        "op": "mul",
        "args": [
            {"rat": "2"},
            {"sqrt": {"op": "add", "args": [{"rat": "7"}, {"sqrt": {"rat": "4"}}]}},
        ],
    }
    value = eval_const_expr(parse_const_expr(doc), prec)
    expected = BigFloat.from_int(2, prec).mul(
        sqrt(BigFloat.from_int(9, prec), prec), prec
    )
    assert agrees_to_bits(value, expected) > 250


def test_pi_structure_exponents():
    cases = [
        (INV_PI_SQ, -2),
        ({"op": "mul", "args": [{"rat": "4"}, {"pi": 1}]}, 1),
        ({"op": "div", "args": [{"pi": 2}, {"rat": "6"}]}, 2),
        ({"op": "div", "args": [{"rat": "2"}, {"pi": 1}]}, -1),
    ]
    for doc, expected_exp in cases:
        exponent, algebraic = pi_structure(parse_const_expr(doc))
        assert exponent == expected_exp
        assert not gamma_leaves(algebraic)


def test_pi_structure_keeps_algebraic_factor():
    doc = {"op": "mul", "args": [{"rat": "3/4"}, {"pi": 1}, {"sqrt": {"rat": "3"}}]}
    exponent, algebraic = pi_structure(parse_const_expr(doc))
    assert exponent == 1
    value = eval_const_expr(algebraic, 200).to_float()
    assert abs(value - 0.75 * 3**0.5) < 1e-12


def test_pi_structure_rejects_unreducible_shapes():
    bad_docs = [
        {"sqrt": {"pi": 1}},
        {"op": "add", "args": [{"pi": 1}, {"rat": "1"}]},
        {"op": "mul", "args": [{"pi": 1}, {"gamma": "1/3", "exp": 3}]},
    ]
    for doc in bad_docs:
        with pytest.raises(UnsupportedLhs):
            pi_structure(parse_const_expr(doc))


def test_gamma_leaves_collects_powers():
    doc = {
        "op": "div",
        "args": [
            {"op": "mul", "args": [{"pi": 2}, {"gamma": "2/3", "exp": -3}]},
            {"rat": "5"},
        ],
    }
    assert gamma_leaves(parse_const_expr(doc)) == [(Fraction(2, 3), -3)]


def test_node_helpers():
    # 32 / pi^2 parses to mul(32, pow(mul(pi, pi), -1)): six nodes
    expr = parse_const_expr(INV_PI_SQ)
    assert node_count(expr) == 6
    assert isinstance(parse_const_expr({"rat": "1"}), RationalLeaf)
    assert isinstance(parse_const_expr({"pi": 1}), PiLeaf)
    gamma_cubed = parse_const_expr({"gamma": "1/3", "exp": 3})
    assert isinstance(gamma_cubed.child, GammaLeaf) and gamma_cubed.exponent == 3
    assert isinstance(parse_const_expr({"sqrt": {"rat": "2"}}), SqrtNode)
