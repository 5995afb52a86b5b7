#!/usr/bin/env python3
"""Extract hexadecimal digits of pi at arbitrary offsets without predecessors.

Prints a window table, demonstrates that overlapping windows agree, and
optionally cross-checks against the full-precision reference (practical for
offsets up to a few hundred thousand).
"""

import argparse
import sys
import time
from dataclasses import dataclass

from hyperpi.bigfloat import pi_reference
from hyperpi.engine import bbp_hex_digits


@dataclass
class ExtractionConfig:
    positions: tuple = (0, 100, 1000, 10**4, 10**5, 10**6)
    count: int = 16
    check_reference_up_to: int = 10**5


def run(config: ExtractionConfig) -> int:
    checkable = [p for p in config.positions if p <= config.check_reference_up_to]
    reference = None
    if checkable:
        top = max(checkable)
        started = time.perf_counter()
        reference = pi_reference(4 * (top + config.count) + 256)
        print(f"reference to offset {top} in {time.perf_counter() - started:.2f}s")
    print(f"{'offset':>10}  {'digits':<{config.count}}  {'time':>8}  check")
    ok = True
    for position in config.positions:
        started = time.perf_counter()
        digits = bbp_hex_digits(position, config.count)
        elapsed = time.perf_counter() - started
        if reference is not None and position in checkable:
            expected = reference.hex_fraction_digits(position, config.count)
            verdict = "ok" if digits == expected else "MISMATCH"
            ok = ok and digits == expected
        else:
            overlap = bbp_hex_digits(position + 4, config.count)
            verdict = "overlap ok" if digits[4:] == overlap[: config.count - 4] else "OVERLAP MISMATCH"
            ok = ok and digits[4:] == overlap[: config.count - 4]
        print(f"{position:>10}  {digits}  {elapsed:7.2f}s  {verdict}")
    return 0 if ok else 2


def parse_config(argv) -> ExtractionConfig:
    parser = argparse.ArgumentParser(description=__doc__)
    defaults = ExtractionConfig()
    parser.add_argument(
        "--positions",
        default=",".join(str(p) for p in defaults.positions),
        help="comma-separated hex-digit offsets",
    )
    parser.add_argument("--count", type=int, default=defaults.count)
    parser.add_argument(
        "--check-reference-up-to", type=int, default=defaults.check_reference_up_to
    )
    args = parser.parse_args(argv)
    return ExtractionConfig(
        positions=tuple(int(p) for p in args.positions.split(",")),
        count=args.count,
        check_reference_up_to=args.check_reference_up_to,
    )


if __name__ == "__main__":
    sys.exit(run(parse_config(sys.argv[1:])))
