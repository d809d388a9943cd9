#!/usr/bin/env python3
"""Build the 728-vertex hexagon graph, compute every invariant and compare
with the bundled expected-values manifest."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from hexarc.cli import load_expected, reproduce


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--report", type=Path, help="write the full analysis report here")
    args = parser.parse_args(argv)

    report, mismatches = reproduce()
    expected = load_expected()
    data = report.to_dict()
    width = max(map(len, expected))
    for key, value in expected.items():
        flag = "MISMATCH" if any(m.startswith(key + ":") for m in mismatches) else "ok"
        print(f"{key:<{width}}  {json.dumps(value):<32} {flag}")
    print()
    for stage, seconds in sorted(data["timings"].items(), key=lambda kv: -kv[1]):
        print(f"{stage:<{width}}  {seconds:.3f}s")
    if args.report:
        args.report.write_text(report.to_json() + "\n")
    for line in mismatches:
        print("MISMATCH", line, file=sys.stderr)
    return 1 if mismatches else 0


if __name__ == "__main__":
    sys.exit(main())
