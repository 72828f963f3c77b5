"""Self-duality census over the 2D classes or a Kreuzer-Skarke file.

    python scripts/census.py                      # the 16 reflexive polygons
    python scripts/census.py --ks FILE --workers 4 [--equivalence]
"""
import argparse
import json
import time
from dataclasses import asdict, dataclass

from latpoly.census import scan, scan_file, summarize
from latpoly.equivalence import enumerate_reflexive_2d


@dataclass
class CensusConfig:
    ks: str | None = None
    workers: int | None = None
    equivalence: bool = False
    details: bool = False


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--ks")
    ap.add_argument("--workers", type=int)
    ap.add_argument("--equivalence", action="store_true")
    ap.add_argument("--details", action="store_true")
    cfg = CensusConfig(**vars(ap.parse_args(argv)))

    t0 = time.perf_counter()
    if cfg.ks:
        summary = scan_file(cfg.ks, equivalence=cfg.equivalence, workers=cfg.workers,
                            keep_records=cfg.details)
    else:
        # equivalence is cheap for polygons, so the 2D run always includes it
        summary = summarize(scan(enumerate_reflexive_2d(), True, cfg.workers),
                            equivalence=True, keep_records=cfg.details)
    for r in summary.records:
        print(r.describe())
    print("\n".join(summary.lines()))
    print(json.dumps({"config": asdict(cfg), "seconds": round(time.perf_counter() - t0, 2)}))


if __name__ == "__main__":
    main()
