#!/usr/bin/env python3
"""Run the acceptance checks and write a JSON summary.

    python scripts/run_acceptance.py --out acceptance.json --workers 4
"""

import argparse
import json
import sys

from d21a import acceptance


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="-", help="output file, '-' for stdout only")
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    results = acceptance.run_all(workers=args.workers)
    for r in results:
        print(r.line(), file=sys.stderr)
    data = {"results": [r.to_dict() for r in results],
            "passed": sum(r.ok for r in results),
            "total": len(results)}
    text = json.dumps(data, indent=2)
    if args.out == "-":
        print(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    return 0 if all(r.ok for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
