"""Command line interface.

Subcommands
-----------

* ``verify dougall``   -- random exact trials of the terminating identity
* ``verify inversion`` -- random round-trips of the inverse-pair transforms
* ``verify chain``     -- parity form, dual expansion and their inverse-pair
  derivation, term for term, on random admissible parameters
* ``verify catalog``   -- every catalog entry against its closed form, its
  generator family, and (for digit-extraction entries) the classic templates
* ``derive``           -- instantiate a generator family at given parameters
* ``pi``               -- decimal digits of pi through a catalog entry
* ``bbp``              -- hexadecimal digits of pi at an arbitrary offset
* ``rate``             -- exact consecutive-term ratio of an entry

Exit codes: 0 success, 1 usage error, 2 mathematical failure, 3 all checks
passed but the anomaly sidecar is nonempty.  With ``--format json`` every
command prints a single deterministic JSON report: keys are sorted and the
``timings`` field is always ``null``, so identical inputs give identical
bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from functools import lru_cache

from hyperpi import __version__
from hyperpi.catalog import (
    catalog_index,
    load_anomalies,
    load_catalog,
    match_to_theorem,
    verify_entry,
)
from hyperpi.constexpr import format_rational
from hyperpi.dougall import (
    WellPoisedParams,
    normalize_theorem_series,
    random_finite_params,
    random_parity_params,
    theorem_gamma_args,
    verify_chain,
    verify_dougall,
    verify_dual_relation,
    verify_parity_form,
)
from hyperpi.engine import (
    bbp_hex_digits,
    compute_pi_via,
    convergence_rate,
    precision_for_digits,
    sum_series,
    verify_bbp_equivalence,
)
from hyperpi.errors import (
    DomainError,
    HyperPiError,
    NoMatch,
    RangeError,
    UsageError,
)
from hyperpi.factorials import term_eval
from hyperpi.gammafn import gamma_quotient
from hyperpi.inversion import random_scheme, random_sequence, roundtrip_check
from hyperpi.prng import SplitMix64


class _Parser(argparse.ArgumentParser):
    """Argument parser that reports problems as :class:`UsageError`."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def _rat(value: Fraction) -> str:
    return format_rational(value)


def _params_str(params: WellPoisedParams) -> list[str]:
    return [_rat(v) for v in params.as_tuple()]


def _emit(args: argparse.Namespace, report: dict, human_lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        for line in human_lines:
            print(line)


def _report(command: str, parameters: dict, passed: bool, **extra) -> dict:
    report = {
        "tool": "hyperpi",
        "version": __version__,
        "command": command,
        "parameters": parameters,
        "passed": passed,
        "timings": None,
    }
    report.update(extra)
    return report


# ----------------------------------------------------------------------
# verify subcommands
# ----------------------------------------------------------------------


def _cmd_verify_dougall(args: argparse.Namespace) -> int:
    rng = SplitMix64(args.seed)
    counterexamples = []
    for _ in range(args.trials):
        params = random_finite_params(rng, args.nmax, args.max_coeff)
        degree = rng.randint(0, args.nmax)
        check = verify_dougall(params, degree)
        if not check.passed:
            counterexamples.append(
                {
                    "params": _params_str(params),
                    "n": degree,
                    "sum": _rat(check.lhs),
                    "closed_form": _rat(check.rhs),
                }
            )
    passed = not counterexamples
    report = _report(
        "verify-dougall",
        {"trials": args.trials, "nmax": args.nmax, "seed": args.seed,
         "max_coeff": args.max_coeff},
        passed,
        counterexamples=counterexamples,
    )
    lines = [
        f"terminating identity: {args.trials} random trials, degrees 0..{args.nmax}, "
        f"seed {args.seed}"
    ]
    for ce in counterexamples:
        lines.append(
            f"  COUNTEREXAMPLE params={ce['params']} n={ce['n']} "
            f"sum={ce['sum']} closed={ce['closed_form']}"
        )
    lines.append("PASS" if passed else "FAIL")
    _emit(args, report, lines)
    return 0 if passed else 2


def _cmd_verify_inversion(args: argparse.Namespace) -> int:
    pairs = [p.strip() for p in args.pairs.split(",") if p.strip()]
    for pair in pairs:
        if pair not in ("plain", "extended"):
            raise UsageError(f"unknown inverse pair {pair!r} (use plain, extended)")
    rng = SplitMix64(args.seed)
    failures = []
    for pair in pairs:
        for _ in range(args.trials):
            scheme = random_scheme(rng, args.nmax, extended=(pair == "extended"))
            sequence = random_sequence(rng, args.nmax)
            for message in roundtrip_check(scheme, sequence, args.nmax, pair):
                failures.append({"pair": pair, "detail": message})
    passed = not failures
    report = _report(
        "verify-inversion",
        {"pairs": pairs, "trials": args.trials, "nmax": args.nmax, "seed": args.seed},
        passed,
        counterexamples=failures,
    )
    lines = [
        f"inverse pairs {', '.join(pairs)}: {args.trials} random schemes each, "
        f"n <= {args.nmax}, seed {args.seed}"
    ]
    lines.extend(f"  COUNTEREXAMPLE [{f['pair']}] {f['detail']}" for f in failures)
    lines.append("PASS" if passed else "FAIL")
    _emit(args, report, lines)
    return 0 if passed else 2


def _cmd_verify_chain(args: argparse.Namespace) -> int:
    rng = SplitMix64(args.seed)
    failures = []
    for _ in range(args.trials):
        params = random_parity_params(rng, args.nmax, for_chain=True)
        for degree in range(args.nmax + 1):
            if not verify_parity_form(params, degree).passed:
                failures.append(
                    {"params": _params_str(params), "n": degree, "stage": "parity"}
                )
            if not verify_dual_relation(params, degree).passed:
                failures.append(
                    {"params": _params_str(params), "n": degree, "stage": "dual"}
                )
        for message in verify_chain(params, args.nmax):
            failures.append({"params": _params_str(params), "detail": message})
    passed = not failures
    report = _report(
        "verify-chain",
        {"trials": args.trials, "nmax": args.nmax, "seed": args.seed},
        passed,
        counterexamples=failures,
    )
    lines = [
        f"parity/dual/inverse-pair chain: {args.trials} random parameter sets, "
        f"n <= {args.nmax}, seed {args.seed}"
    ]
    lines.extend(f"  COUNTEREXAMPLE {f}" for f in failures)
    lines.append("PASS" if passed else "FAIL")
    _emit(args, report, lines)
    return 0 if passed else 2


@lru_cache(maxsize=4)
def _cached_catalog(path: str | None):
    entries = load_catalog(path)
    return entries, catalog_index(entries)


def _check_catalog_entry(path: str | None, entry_id: str, digits: int) -> dict:
    _, index = _cached_catalog(path)
    entry = index[entry_id]
    row = {
        "id": entry.entry_id,
        "class": entry.family_class,
        "theorem": entry.theorem,
        "verified": False,
        "error_exponent": None,
        "match_mode": None,
        "scale": None,
        "bbp_family": None,
        "failure": None,
    }
    try:
        check = verify_entry(entry, digits)
        row["verified"] = check.passed
        row["error_exponent"] = check.error_exponent
        if not check.passed:
            row["failure"] = (
                f"series differs from closed form near 10^{check.error_exponent}"
            )
            return row
        match = match_to_theorem(entry)
        row["match_mode"] = match.mode
        row["scale"] = _rat(match.scale)
        if entry.family_class == "BBP":
            cert = verify_bbp_equivalence(entry.spec, entry.lhs)
            row["bbp_family"] = cert.family
    except HyperPiError as exc:
        row["failure"] = f"{type(exc).__name__}: {exc}"
    return row


def _cmd_verify_catalog(args: argparse.Namespace) -> int:
    entries, index = _cached_catalog(args.catalog)
    anomalies = load_anomalies(args.anomalies)
    if args.id is not None:
        if args.id not in index:
            raise UsageError(f"unknown catalog entry id {args.id!r}")
        chosen = [args.id]
    else:
        chosen = [entry.entry_id for entry in entries]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(
                pool.map(
                    _check_catalog_entry,
                    [args.catalog] * len(chosen),
                    chosen,
                    [args.digits] * len(chosen),
                )
            )
    else:
        rows = [_check_catalog_entry(args.catalog, eid, args.digits) for eid in chosen]
    failed = [row for row in rows if row["failure"] is not None]
    passed = not failed
    report = _report(
        "verify-catalog",
        {"id": args.id, "digits": args.digits, "jobs": args.jobs,
         "catalog": args.catalog, "entries": len(rows)},
        passed,
        results=rows,
        anomalies=anomalies,
    )
    lines = [f"catalog: {len(rows)} entries at {args.digits} digits"]
    for row in rows:
        if row["failure"] is not None:
            lines.append(f"  FAIL {row['id']}: {row['failure']}")
        elif args.id is not None or args.verbose:
            bbp_note = f" bbp={row['bbp_family']}" if row["bbp_family"] else ""
            lines.append(
                f"  ok {row['id']} verified@{args.digits} "
                f"match={row['match_mode']} scale={row['scale']}{bbp_note}"
            )
    for anomaly in anomalies:
        lines.append(f"  ANOMALY {anomaly.get('id')}: {anomaly.get('note', '')}")
    lines.append("PASS" if passed else "FAIL")
    _emit(args, report, lines)
    if not passed:
        return 2
    return 3 if anomalies else 0


# ----------------------------------------------------------------------
# derive / pi / bbp / rate
# ----------------------------------------------------------------------


def _parse_params(text: str) -> WellPoisedParams:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 4:
        raise UsageError(f"--params needs four comma-separated rationals, got {text!r}")
    try:
        return WellPoisedParams.make(*(Fraction(p) for p in parts))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"invalid parameter list {text!r}: {exc}") from exc


def _cmd_derive(args: argparse.Namespace) -> int:
    params = _parse_params(args.params)
    spec = normalize_theorem_series(params, args.theorem)
    prec = precision_for_digits(args.digits)
    partial = sum_series(spec, args.terms, prec)
    closed_text = None
    agreement = None
    try:
        closed = gamma_quotient(*theorem_gamma_args(params, args.theorem), prec)
        closed_text = closed.to_decimal_string(args.digits)
        difference = partial.sub(closed, prec).abs().to_float()
        agreement = None if difference == 0.0 else difference
    except DomainError:
        pass  # non-positive gamma argument: series stands on its own
    head = [
        {"k": k, "term": _rat(term_eval(spec, k))}
        for k in range(spec.start, min(spec.start + 8, spec.start + args.terms))
    ]
    report = _report(
        "derive",
        {"theorem": args.theorem, "params": _params_str(params),
         "terms": args.terms, "digits": args.digits},
        True,
        series={
            "upper": [_rat(u) for u in spec.upper],
            "lower": [_rat(v) for v in spec.lower],
            "poly": [_rat(c) for c in spec.poly],
            "base": spec.base,
            "start": spec.start,
            "additive": _rat(spec.additive),
            "sign": spec.sign,
        },
        leading_terms=head,
        partial_sum=partial.to_decimal_string(args.digits),
        closed_form=closed_text,
        absolute_difference=agreement,
    )
    lines = [
        f"family {args.theorem} at parameters ({', '.join(_params_str(params))})",
        f"  upper    : {' '.join(_rat(u) for u in spec.upper)}",
        f"  lower    : {' '.join(_rat(v) for v in spec.lower)}",
        f"  poly     : {' '.join(_rat(c) for c in spec.poly)}",
        f"  base     : {spec.base}   start: {spec.start}   "
        f"additive: {_rat(spec.additive)}   sign: {spec.sign}",
    ]
    lines.extend(f"  term[{h['k']}] = {h['term']}" for h in head)
    lines.append(f"  partial sum ({args.terms} terms) = {report['partial_sum']}")
    if closed_text is None:
        lines.append("  closed form: not evaluatable (non-positive gamma argument)")
    else:
        lines.append(f"  closed form value         = {closed_text}")
        lines.append(f"  |difference| ~ {agreement if agreement is not None else 0}")
    _emit(args, report, lines)
    return 0


def _cmd_pi(args: argparse.Namespace) -> int:
    _, index = _cached_catalog(args.catalog)
    if args.entry not in index:
        raise UsageError(f"unknown catalog entry id {args.entry!r}")
    entry = index[args.entry]
    value = compute_pi_via(entry.spec, entry.lhs, args.digits)
    digits_text = value.to_decimal_string(args.digits)
    report = _report(
        "pi",
        {"entry": args.entry, "digits": args.digits, "catalog": args.catalog},
        True,
        pi=digits_text,
    )
    _emit(args, report, [digits_text])
    return 0


def _cmd_bbp(args: argparse.Namespace) -> int:
    digits = bbp_hex_digits(args.pos, args.count)
    report = _report(
        "bbp",
        {"pos": args.pos, "count": args.count},
        True,
        hex_digits=digits,
    )
    _emit(args, report, [digits])
    return 0


def _cmd_rate(args: argparse.Namespace) -> int:
    _, index = _cached_catalog(args.catalog)
    if args.id not in index:
        raise UsageError(f"unknown catalog entry id {args.id!r}")
    entry = index[args.id]
    ratio = convergence_rate(entry.spec, args.k)
    target = Fraction(1, entry.spec.base)
    deviation = abs(ratio - target) / target
    report = _report(
        "rate",
        {"id": args.id, "k": args.k, "catalog": args.catalog},
        True,
        ratio=_rat(ratio),
        ratio_float=float(ratio),
        geometric_target=_rat(target),
        relative_deviation=float(deviation),
    )
    lines = [
        f"t({args.k + 1})/t({args.k}) = {_rat(ratio)} ~ {float(ratio):.10f}",
        f"geometric target 1/{entry.spec.base}; relative deviation "
        f"{float(deviation):.3e}",
    ]
    _emit(args, report, lines)
    return 0


# ----------------------------------------------------------------------
# parser wiring
# ----------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="hyperpi", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"hyperpi {__version__}")
    sub = parser.add_subparsers(dest="command")

    def common(p: _Parser) -> None:
        p.add_argument("--format", choices=("human", "json"), default="human")

    verify = sub.add_parser("verify", help="run exact/high-precision checks")
    vsub = verify.add_subparsers(dest="target")

    vd = vsub.add_parser("dougall", help="terminating identity, random trials")
    vd.add_argument("--trials", type=int, default=200)
    vd.add_argument("--nmax", type=int, default=20)
    vd.add_argument("--seed", type=int, default=0)
    vd.add_argument("--max-coeff", type=int, default=10)
    common(vd)
    vd.set_defaults(handler=_cmd_verify_dougall)

    vi = vsub.add_parser("inversion", help="inverse-pair round trips")
    vi.add_argument("--pairs", default="plain,extended")
    vi.add_argument("--trials", type=int, default=50)
    vi.add_argument("--nmax", type=int, default=12)
    vi.add_argument("--seed", type=int, default=0)
    common(vi)
    vi.set_defaults(handler=_cmd_verify_inversion)

    vc = vsub.add_parser("chain", help="parity form, dual expansion, inverse-pair chain")
    vc.add_argument("--trials", type=int, default=10)
    vc.add_argument("--nmax", type=int, default=6)
    vc.add_argument("--seed", type=int, default=0)
    common(vc)
    vc.set_defaults(handler=_cmd_verify_chain)

    vcat = vsub.add_parser("catalog", help="catalog entries against closed forms")
    vcat.add_argument("--id", default=None)
    vcat.add_argument("--digits", type=int, default=100)
    vcat.add_argument("--jobs", type=int, default=1)
    vcat.add_argument("--catalog", default=None, help="path to an alternative catalog")
    vcat.add_argument("--anomalies", default=None, help="path to an anomaly sidecar")
    vcat.add_argument("--verbose", action="store_true")
    common(vcat)
    vcat.set_defaults(handler=_cmd_verify_catalog)

    derive = sub.add_parser("derive", help="instantiate a generator family")
    derive.add_argument("--theorem", choices=("A", "B"), required=True)
    derive.add_argument("--params", required=True, help="a,b,c,d as rationals")
    derive.add_argument("--terms", type=int, default=60)
    derive.add_argument("--digits", type=int, default=40)
    common(derive)
    derive.set_defaults(handler=_cmd_derive)

    pi_cmd = sub.add_parser("pi", help="decimal digits of pi via a catalog entry")
    pi_cmd.add_argument("--entry", required=True)
    pi_cmd.add_argument("--digits", type=int, default=50)
    pi_cmd.add_argument("--catalog", default=None)
    common(pi_cmd)
    pi_cmd.set_defaults(handler=_cmd_pi)

    bbp = sub.add_parser("bbp", help="hexadecimal digits of pi at an offset")
    bbp.add_argument("--pos", type=int, required=True)
    bbp.add_argument("--count", type=int, default=16)
    common(bbp)
    bbp.set_defaults(handler=_cmd_bbp)

    rate = sub.add_parser("rate", help="consecutive-term ratio of an entry")
    rate.add_argument("--id", required=True)
    rate.add_argument("--k", type=int, default=500)
    rate.add_argument("--catalog", default=None)
    common(rate)
    rate.set_defaults(handler=_cmd_rate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not hasattr(args, "handler"):
            raise UsageError("missing subcommand (try --help)")
        return args.handler(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except RangeError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except HyperPiError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
