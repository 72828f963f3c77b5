"""Run every reproduction claim and print a PASS / FAIL / SKIPPED table.

    python scripts/verify_paper.py [--ks3 FILE] [--workers N] [--skip-enum2d] [--out results.json]
"""
import argparse
import json
import sys
from dataclasses import asdict

from latpoly.reproduce import ReproduceConfig, run_all


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--ks3", help="Kreuzer-Skarke dimension-3 file")
    ap.add_argument("--workers", type=int)
    ap.add_argument("--skip-enum2d", action="store_true")
    ap.add_argument("--out", help="also write the rows as JSON here")
    args = ap.parse_args(argv)

    cfg = ReproduceConfig(ks3=args.ks3, skip_enum2d=args.skip_enum2d, workers=args.workers)
    rows = run_all(cfg)
    for r in rows:
        print(f"{r.status:<7} {r.claim:<24} {r.seconds:7.2f}s  {r.detail}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump({"config": asdict(cfg), "rows": [asdict(r) for r in rows]}, fh, indent=2)
    return 0 if all(r.status != "FAIL" for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
