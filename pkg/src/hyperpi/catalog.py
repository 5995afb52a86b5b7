"""Catalog of base-16 series with closed forms: loading, strict schema
validation, high-precision verification, and matching against the two
infinite-series generator families.

File format
-----------

``catalog.json`` is ``{"version": 1, "entries": [entry, ...]}``.  Every
entry object has exactly these fields (plus an optional ``attribution``):

======================  ======================================================
``id``                  unique string key, e.g. ``"s3.1-ex1"``
``class``               one of the seven closed-form classes below
``theorem``             generator family tag, ``"A"`` or ``"B"``
``params``              four rational strings: the family parameters
``upper`` / ``lower``   rising-factorial parameters as rational strings
``poly``                weight polynomial, ascending coefficients, degree <= 3
``base``                integer geometric base (16 throughout)
``start``               first summation index (nonnegative integer)
``additive``            rational string added to the sum
``sign``                +1 or -1
``lhs``                 closed-form constant expression (see ``constexpr``)
======================  ======================================================

Rational values are always strings ("p" or "p/q"); floating-point literals
anywhere in the file are rejected.  The closed-form classes are
``pi^-2 | pi^2 | pi^-1 | pi | BBP`` (pure pi powers over square-root
algebraics) and ``pi^2/Gamma^3 | Gamma^3/pi^2`` (exactly one cubed gamma
factor at argument 1/3 or 2/3).

``anomalies.json`` is a sidecar list for entries that are knowingly kept in
a deviating state; every item must carry ``"status": "anomaly"`` and is
reported, never silently repaired.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Iterable

from hyperpi.bigfloat import BigFloat
from hyperpi.constexpr import (
    ConstExpr,
    eval_const_expr,
    gamma_leaves,
    parse_const_expr,
    parse_rational_string,
    pi_structure,
    GammaLeaf,
    PiLeaf,
    PowerNode,
    ProductNode,
    RationalLeaf,
    SqrtNode,
    SumNode,
)
from hyperpi.dougall import WellPoisedParams, theorem_term, normalize_theorem_series
from hyperpi.engine import (
    precision_for_digits,
    sum_series,
    sum_series_fraction,
    terms_for_digits,
)
from hyperpi.errors import NoMatch, NoNonzeroTerm, SchemaError, UnsupportedLhs
from hyperpi.factorials import SeriesSpec, term_eval

#: closed-form class -> (pi exponent, gamma exponent or None)
CLASS_SHAPES: dict[str, tuple[int, int | None]] = {
    "pi^-2": (-2, None),
    "pi^2": (2, None),
    "pi^-1": (-1, None),
    "pi": (1, None),
    "BBP": (1, None),
    "pi^2/Gamma^3": (2, -3),
    "Gamma^3/pi^2": (-2, 3),
}

_GAMMA_ARGS = (Fraction(1, 3), Fraction(2, 3))

_REQUIRED_FIELDS = (
    "id",
    "class",
    "theorem",
    "params",
    "upper",
    "lower",
    "poly",
    "base",
    "start",
    "additive",
    "sign",
    "lhs",
)


@dataclass(frozen=True)
class CatalogEntry:
    entry_id: str
    family_class: str
    theorem: str
    params: WellPoisedParams
    spec: SeriesSpec
    lhs: ConstExpr
    attribution: str | None


@dataclass(frozen=True)
class EntryCheck:
    """Outcome of verifying one entry against its closed form."""

    entry_id: str
    digits: int
    terms: int
    precision: int
    passed: bool
    error_exponent: int | None  # ~floor(log10 |difference|); None when exact


@dataclass(frozen=True)
class TheoremMatch:
    """Successful identification of an entry with a generator family."""

    entry_id: str
    tag: str
    mode: str  # "exact" (termwise) or "numeric" (total-value ratio)
    scale: Fraction


# ----------------------------------------------------------------------
# loading
# ----------------------------------------------------------------------


def _reject_float(text: str) -> None:
    raise SchemaError(f"floating-point literal {text!r} is not allowed in catalogs")


def _reject_constant(text: str) -> None:
    raise SchemaError(f"non-finite literal {text!r} is not allowed in catalogs")


def _load_json(path: str | os.PathLike | None, resource: str) -> object:
    if path is None:
        text = resources.files("hyperpi").joinpath(f"data/{resource}").read_text()
    else:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    try:
        return json.loads(
            text, parse_float=_reject_float, parse_constant=_reject_constant
        )
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON in {resource}: {exc}") from exc


def _rational_list(value: object, what: str, length: int | None = None) -> tuple[Fraction, ...]:
    if not isinstance(value, list) or not value:
        raise SchemaError(f"{what} must be a nonempty list of rational strings")
    if length is not None and len(value) != length:
        raise SchemaError(f"{what} must have exactly {length} values, got {len(value)}")
    return tuple(parse_rational_string(item) for item in value)


def _int_field(value: object, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{what} must be an integer, got {value!r}")
    return value


def _pi_exponent_allowing_gamma(expr: ConstExpr) -> int:
    """Net pi exponent of a product-shaped tree that may hold gamma leaves."""
    if isinstance(expr, (RationalLeaf, GammaLeaf)):
        return 0
    if isinstance(expr, PiLeaf):
        return 1
    if isinstance(expr, PowerNode):
        return expr.exponent * _pi_exponent_allowing_gamma(expr.child)
    if isinstance(expr, ProductNode):
        return sum(_pi_exponent_allowing_gamma(child) for child in expr.children)
    if isinstance(expr, (SqrtNode, SumNode)):
        if _contains_pi(expr):
            raise SchemaError("pi inside a square root or sum in a closed form")
        return 0
    raise SchemaError(f"unsupported closed-form node {expr!r}")


def _contains_pi(expr: ConstExpr) -> bool:
    if isinstance(expr, PiLeaf):
        return True
    if isinstance(expr, (SqrtNode, PowerNode)):
        return _contains_pi(expr.child)
    if isinstance(expr, (SumNode, ProductNode)):
        return any(_contains_pi(child) for child in expr.children)
    return False


def _check_class_shape(entry_id: str, family_class: str, lhs: ConstExpr) -> None:
    pi_exp, gamma_exp = CLASS_SHAPES[family_class]
    gammas = gamma_leaves(lhs)
    if gamma_exp is None:
        if gammas:
            raise SchemaError(
                f"entry {entry_id}: class {family_class} must not contain gamma factors"
            )
        try:
            found, _ = pi_structure(lhs)
        except UnsupportedLhs as exc:
            raise SchemaError(f"entry {entry_id}: malformed closed form: {exc}") from exc
        if found != pi_exp:
            raise SchemaError(
                f"entry {entry_id}: class {family_class} needs pi exponent {pi_exp}, "
                f"closed form has {found}"
            )
        return
    if len(gammas) != 1:
        raise SchemaError(
            f"entry {entry_id}: class {family_class} needs exactly one gamma factor, "
            f"found {len(gammas)}"
        )
    arg, exponent = gammas[0]
    if arg not in _GAMMA_ARGS or exponent != gamma_exp:
        raise SchemaError(
            f"entry {entry_id}: class {family_class} needs a gamma factor at 1/3 or "
            f"2/3 with exponent {gamma_exp}, found Gamma({arg})^{exponent}"
        )
    found = _pi_exponent_allowing_gamma(lhs)
    if found != pi_exp:
        raise SchemaError(
            f"entry {entry_id}: class {family_class} needs pi exponent {pi_exp}, "
            f"closed form has {found}"
        )


def _parse_entry(raw: object, seen_ids: set[str]) -> CatalogEntry:
    if not isinstance(raw, dict):
        raise SchemaError(f"catalog entry must be an object, got {raw!r}")
    keys = set(raw.keys())
    missing = [f for f in _REQUIRED_FIELDS if f not in keys]
    if missing:
        raise SchemaError(f"catalog entry missing fields {missing}")
    extra = keys - set(_REQUIRED_FIELDS) - {"attribution"}
    if extra:
        raise SchemaError(f"catalog entry has unknown fields {sorted(extra)}")
    entry_id = raw["id"]
    if not isinstance(entry_id, str) or not entry_id:
        raise SchemaError(f"entry id must be a nonempty string, got {entry_id!r}")
    if entry_id in seen_ids:
        raise SchemaError(f"duplicate entry id {entry_id!r}")
    family_class = raw["class"]
    if family_class not in CLASS_SHAPES:
        raise SchemaError(f"entry {entry_id}: unknown class {family_class!r}")
    tag = raw["theorem"]
    if tag not in ("A", "B"):
        raise SchemaError(f"entry {entry_id}: theorem tag must be 'A' or 'B', got {tag!r}")
    params_values = _rational_list(raw["params"], f"entry {entry_id} params", 4)
    poly = _rational_list(raw["poly"], f"entry {entry_id} poly")
    if len(poly) > 4:
        raise SchemaError(
            f"entry {entry_id}: weight polynomial degree must be at most 3, "
            f"got degree {len(poly) - 1}"
        )
    base = _int_field(raw["base"], f"entry {entry_id} base")
    if base < 2:
        raise SchemaError(f"entry {entry_id}: base must be at least 2, got {base}")
    start = _int_field(raw["start"], f"entry {entry_id} start")
    if start < 0:
        raise SchemaError(f"entry {entry_id}: start must be nonnegative, got {start}")
    sign = _int_field(raw["sign"], f"entry {entry_id} sign")
    if sign not in (1, -1):
        raise SchemaError(f"entry {entry_id}: sign must be +1 or -1, got {sign}")
    attribution = raw.get("attribution")
    if attribution is not None and not isinstance(attribution, str):
        raise SchemaError(f"entry {entry_id}: attribution must be a string or null")
    spec = SeriesSpec(
        upper=_rational_list(raw["upper"], f"entry {entry_id} upper"),
        lower=_rational_list(raw["lower"], f"entry {entry_id} lower"),
        poly=poly,
        base=base,
        start=start,
        additive=parse_rational_string(raw["additive"]),
        sign=sign,
    )
    try:
        spec.validate()
    except Exception as exc:
        raise SchemaError(f"entry {entry_id}: invalid series: {exc}") from exc
    lhs = parse_const_expr(raw["lhs"])
    _check_class_shape(entry_id, family_class, lhs)
    seen_ids.add(entry_id)
    return CatalogEntry(
        entry_id=entry_id,
        family_class=family_class,
        theorem=tag,
        params=WellPoisedParams.make(*params_values),
        spec=spec,
        lhs=lhs,
        attribution=attribution,
    )


def load_catalog(path: str | os.PathLike | None = None) -> list[CatalogEntry]:
    """Load and fully validate a catalog file (package default when ``path``
    is None)."""
    data = _load_json(path, "catalog.json")
    if not isinstance(data, dict) or set(data.keys()) != {"version", "entries"}:
        raise SchemaError("catalog must be an object with exactly 'version' and 'entries'")
    if data["version"] != 1:
        raise SchemaError(f"unsupported catalog version {data['version']!r}")
    if not isinstance(data["entries"], list):
        raise SchemaError("catalog 'entries' must be a list")
    seen: set[str] = set()
    return [_parse_entry(raw, seen) for raw in data["entries"]]


def load_anomalies(path: str | os.PathLike | None = None) -> list[dict]:
    """Load the anomaly sidecar: known deviations that are reported, not fixed."""
    data = _load_json(path, "anomalies.json")
    if not isinstance(data, list):
        raise SchemaError("anomaly sidecar must be a list")
    for item in data:
        if not isinstance(item, dict):
            raise SchemaError(f"anomaly record must be an object, got {item!r}")
        if item.get("status") != "anomaly":
            raise SchemaError(
                f"anomaly record {item.get('id')!r} must carry status 'anomaly'"
            )
        if not isinstance(item.get("id"), str) or not item["id"]:
            raise SchemaError("anomaly record needs a nonempty string id")
    return data


def catalog_index(entries: Iterable[CatalogEntry]) -> dict[str, CatalogEntry]:
    return {entry.entry_id: entry for entry in entries}


# ----------------------------------------------------------------------
# verification
# ----------------------------------------------------------------------


def verify_entry(entry: CatalogEntry, digits: int) -> EntryCheck:
    """Check ``|series - closed form| < 10**-digits`` at working precision."""
    terms = terms_for_digits(digits, entry.spec.base)
    prec = precision_for_digits(digits)
    series_value = sum_series(entry.spec, terms, prec)
    closed_value = eval_const_expr(entry.lhs, prec)
    difference = series_value.sub(closed_value, prec)
    if difference.is_zero():
        return EntryCheck(entry.entry_id, digits, terms, prec, True, None)
    threshold = BigFloat.from_fraction(Fraction(1, 10**digits), 64)
    passed = difference.abs() < threshold
    error_exponent = math.floor(difference.magnitude_exponent() * math.log10(2))
    return EntryCheck(entry.entry_id, digits, terms, prec, passed, error_exponent)


# ----------------------------------------------------------------------
# matching an entry to the generator families
# ----------------------------------------------------------------------

_EXACT_LIMIT = 50
_NUMERIC_DIGITS = 60
_NUMERIC_TOLERANCE = Fraction(1, 10**50)
_SCALE_DENOMINATOR_LIMIT = 10**12


def match_to_theorem(entry: CatalogEntry) -> TheoremMatch:
    """Identify the entry with its stated generator family.

    Exact mode proves termwise proportionality: one rational scale with
    ``entry_term(k) == scale * family_term(k)`` for every index through
    ``_EXACT_LIMIT`` and the additive constant equal to ``scale`` times the
    family terms below the entry's start index.  Entries whose published
    form was restructured (nonzero start or additive constant) may instead
    match in numeric mode: the total values of both series agree under one
    small rational ratio to fifty digits.  Raises :class:`NoMatch` when
    neither applies and :class:`NoNonzeroTerm` when the comparison window
    contains no usable term.
    """
    spec = entry.spec
    params = entry.params
    tag = entry.theorem
    scale: Fraction | None = None
    exact_ok = True
    saw_pair = False
    for k in range(spec.start, _EXACT_LIMIT + 1):
        entry_term = term_eval(spec, k)
        family_term = theorem_term(params, tag, k)
        if scale is None:
            if entry_term == 0 and family_term == 0:
                continue
            if entry_term == 0 or family_term == 0:
                exact_ok = False
                break
            scale = entry_term / family_term
            saw_pair = True
        elif entry_term != scale * family_term:
            exact_ok = False
            break
    if exact_ok and scale is None:
        raise NoNonzeroTerm(
            f"entry {entry.entry_id}: no nonzero term below index {_EXACT_LIMIT}"
        )
    if exact_ok and saw_pair:
        head = sum(
            (theorem_term(params, tag, k) for k in range(spec.start)), Fraction(0)
        )
        if spec.additive == scale * head:
            return TheoremMatch(entry.entry_id, tag, "exact", scale)
        exact_ok = False
    if spec.start == 0 and spec.additive == 0:
        raise NoMatch(
            f"entry {entry.entry_id}: terms are not a rational multiple of "
            f"family {tag} terms at the stated parameters"
        )
    # Restructured entries (shifted start or folded-in constant) are compared
    # by total value: both series must agree under one small rational ratio.
    family_spec = normalize_theorem_series(params, tag)
    terms = terms_for_digits(_NUMERIC_DIGITS, spec.base)
    entry_total = sum_series_fraction(spec, terms)
    family_total = sum_series_fraction(family_spec, terms)
    if family_total == 0:
        raise NoMatch(f"entry {entry.entry_id}: family {tag} sum vanishes")
    ratio = (entry_total / family_total).limit_denominator(_SCALE_DENOMINATOR_LIMIT)
    if ratio == 0:
        raise NoMatch(f"entry {entry.entry_id}: total-value ratio is zero")
    if abs(entry_total - ratio * family_total) >= _NUMERIC_TOLERANCE:
        raise NoMatch(
            f"entry {entry.entry_id}: totals do not stand in a small rational "
            f"ratio to family {tag} (best candidate {ratio})"
        )
    return TheoremMatch(entry.entry_id, tag, "numeric", ratio)
