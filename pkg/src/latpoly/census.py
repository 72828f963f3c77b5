"""Self-duality census over a file of polytopes."""
from __future__ import annotations

import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .ehrhart import delta
from .equivalence import are_equivalent
from .ksio import read_native_line, read_polytopes, write_native
from .polytope import is_reflexive, polar_dual

WORKERS_ENV = "LATPOLY_WORKERS"


@dataclass
class RecordResult:
    index: int
    line: str
    reflexive: bool
    delta: tuple | None = None
    dual_delta: tuple | None = None
    delta_equal: bool | None = None
    equivalent: bool | None = None

    def describe(self) -> str:
        if not self.reflexive:
            return f"{self.index}\tnot-reflexive"
        out = (f"{self.index}\tdelta={' '.join(map(str, self.delta))}\t"
               f"dual={' '.join(map(str, self.dual_delta))}\tdelta-self-dual={str(self.delta_equal).lower()}")
        if self.equivalent is not None:
            out += f"\tself-equivalent={str(self.equivalent).lower()}"
        return out


@dataclass
class ScanSummary:
    total: int = 0
    reflexive: int = 0
    delta_self_dual: int = 0
    self_equivalent: int | None = None
    records: list = field(default_factory=list)

    def lines(self) -> list[str]:
        out = [f"total {self.total}", f"reflexive {self.reflexive}",
               f"delta-self-dual {self.delta_self_dual}"]
        if self.self_equivalent is not None:
            out.append(f"self-equivalent {self.self_equivalent}")
        return out

    def as_dict(self) -> dict:
        return {"total": self.total, "reflexive": self.reflexive,
                "delta_self_dual": self.delta_self_dual,
                "self_equivalent": self.self_equivalent}


def classify_line(job: tuple[int, str, bool]) -> RecordResult:
    index, line, equivalence = job
    P = read_native_line(line)
    if not is_reflexive(P):
        return RecordResult(index, line, False)
    D = polar_dual(P)
    dp, dd = delta(P), delta(D)
    res = RecordResult(index, line, True, dp, dd, dp == dd)
    if equivalence:
        res.equivalent = are_equivalent(P, D) is not None
        if res.equivalent and not res.delta_equal:
            raise AssertionError(f"record {index}: equivalent to its dual with different deltas")
    return res


def worker_count(requested: int | None = None) -> int:
    cap = os.environ.get(WORKERS_ENV)
    n = requested if requested else (int(cap) if cap else 1)
    if cap:
        n = min(n, int(cap))
    return max(1, n)


def scan(polytopes: Iterable, equivalence: bool = False, workers: int | None = None) -> Iterator[RecordResult]:
    """Classify each polytope; results come back in input order."""
    jobs = ((i, write_native(P), equivalence) for i, P in enumerate(polytopes))
    n = worker_count(workers)
    if n == 1:
        yield from map(classify_line, jobs)
        return
    with ProcessPoolExecutor(max_workers=n) as pool:
        # pool.map yields in submission order
        yield from pool.map(classify_line, jobs, chunksize=16)


def summarize(results: Iterable[RecordResult], equivalence: bool = False,
              keep_records: bool = False) -> ScanSummary:
    s = ScanSummary(self_equivalent=0 if equivalence else None)
    for r in results:
        s.total += 1
        if r.reflexive:
            s.reflexive += 1
            s.delta_self_dual += bool(r.delta_equal)
            if equivalence:
                s.self_equivalent += bool(r.equivalent)
        if keep_records:
            s.records.append(r)
    return s


def scan_file(path: str, fmt: str = "auto", equivalence: bool = False,
              workers: int | None = None, keep_records: bool = False) -> ScanSummary:
    fh = sys.stdin if path == "-" else open(path, encoding="utf-8")
    try:
        polys = read_polytopes(fh, fmt, strict=True)
        return summarize(scan(polys, equivalence, workers), equivalence, keep_records)
    finally:
        if fh is not sys.stdin:
            fh.close()
