"""Table of the self-dual Sylvester simplices: volume, bound, delta-vector.

    python scripts/sylvester_table.py --max-dim 8
"""
import argparse
import time
from dataclasses import dataclass

from latpoly.constructions import nill_bounds_check, sylvester, sylvester_simplex, sylvester_simplex_dual_map
from latpoly.ehrhart import delta_vector_simplex
from latpoly.equivalence import apply_map
from latpoly.polytope import is_reflexive, normalized_volume, polar_dual


@dataclass
class TableConfig:
    min_dim: int = 3
    max_dim: int = 7
    # delta via the parallelepiped enumerates Vol cosets; beyond this it is skipped
    max_delta_volume: int = 10 ** 6


def row(d: int, cfg: TableConfig) -> str:
    t0 = time.perf_counter()
    S = sylvester_simplex(d)
    vol = normalized_volume(S)
    D = polar_dual(S)
    explicit = apply_map(sylvester_simplex_dual_map(d), D) == S
    nill = nill_bounds_check(S)
    dv = " ".join(map(str, delta_vector_simplex(S))) if vol <= cfg.max_delta_volume else "-"
    return (f"{d:>2}  {vol:>12}  {sylvester(d) - 1:>24}  {str(is_reflexive(S)):>9}  "
            f"{str(explicit):>8}  {str(nill.passed):>5}  {time.perf_counter() - t0:6.2f}s  {dv}")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--min-dim", type=int, default=TableConfig.min_dim)
    ap.add_argument("--max-dim", type=int, default=TableConfig.max_dim)
    args = ap.parse_args(argv)
    cfg = TableConfig(min_dim=args.min_dim, max_dim=args.max_dim)
    print(f"{'d':>2}  {'Vol':>12}  {'b_d - 1':>24}  {'reflexive':>9}  {'U maps':>8}  {'Nill':>5}  {'time':>7}  delta")
    for d in range(cfg.min_dim, cfg.max_dim + 1):
        print(row(d, cfg), flush=True)


if __name__ == "__main__":
    main()
