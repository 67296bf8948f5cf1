#!/usr/bin/env python3
"""Run every bundled reproduction target and tabulate the RESULT lines.

Default targets finish in a few minutes on a laptop. Pass --allow-long
to also attempt the heavyweight ones (brute-force Q4, dimension-5
reciprocal weights, the 16-arm lollipop); those may end with exit code
3 when they hit the configured node cap.

Usage:
    python scripts/reproduce_results.py [--allow-long] [--threads N]
"""

import argparse
import contextlib
import io
import sys
import time

from pebbling.cli import DEFAULT_TARGETS, LONG_TARGETS, main


def run_target(target, threads, allow_long):
    argv = ["paper", target, "--threads", str(threads)]
    if allow_long:
        argv.append("--allow-long")
    buffer = io.StringIO()
    start = time.monotonic()
    with contextlib.redirect_stdout(buffer):
        code = main(argv)
    elapsed = time.monotonic() - start
    results = [line[len("RESULT ") :] for line in buffer.getvalue().splitlines() if line.startswith("RESULT ")]
    return code, elapsed, results


def main_script():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--allow-long", action="store_true")
    parser.add_argument("--threads", type=int, default=1)
    args = parser.parse_args()

    targets = list(DEFAULT_TARGETS) + (list(LONG_TARGETS) if args.allow_long else [])
    failures = 0
    print(f"{'target':<14} {'exit':<5} {'time':>8}  result")
    for target in targets:
        code, elapsed, results = run_target(target, args.threads, args.allow_long)
        if code != 0:
            failures += 1
        summary = "; ".join(results) if results else "(no RESULT lines)"
        print(f"{target:<14} {code:<5} {elapsed:>7.1f}s  {summary}")
    print(f"\n{len(targets) - failures}/{len(targets)} targets succeeded")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main_script())
