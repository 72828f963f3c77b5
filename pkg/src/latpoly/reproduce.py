"""End-to-end reproduction of the delta-vector / duality results.

Each claim is a function returning ``(passed, detail)``; :func:`run_all`
collects them into table rows.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from . import constructions as C
from .ehrhart import check_delta_properties, delta, delta_vector, delta_vector_simplex, is_symmetric
from .equivalence import (
    UnimodularMap,
    apply_map,
    are_equivalent,
    classify_self_duality,
    enumerate_reflexive_2d,
    gamma_equivalence_transfer_check,
)
from .polytope import Polytope, is_reflexive, make_polytope, normalized_volume, polar_dual

EXAMPLE_1_1_DUAL = {(-1, 0), (1, -2), (1, 1)}
EXAMPLE_1_9_DUAL = {(0, 0, 1), (0, 0, -1), (2, -1, 0), (-1, 2, 0), (-1, -1, 0)}
SYLVESTER_VOLUMES = {3: 16, 4: 64, 5: 384, 6: 5376}


@dataclass(frozen=True)
class ReproduceConfig:
    ks3: str | None = None  # Kreuzer-Skarke dimension-3 file; census row skipped if None
    skip_enum2d: bool = False
    workers: int | None = None  # None defers to LATPOLY_WORKERS
    sylvester_dims: tuple[int, ...] = (3, 4, 5, 6)
    identity_n_max: int = 8


@dataclass
class Row:
    claim: str
    anchor: str
    status: str  # PASS / FAIL / SKIPPED
    detail: str
    seconds: float = 0.0


def reflexive_corpus(polygons: list[Polytope] | None = None) -> dict[str, Polytope]:
    """The 16 reflexive polygons plus reflexive 3- and 4-polytopes."""
    F = C.fixtures()
    polygons = polygons if polygons is not None else enumerate_reflexive_2d()
    out = {f"polygon-{i:02d}": P for i, P in enumerate(polygons)}
    for name in ("example-1-9", "cube-3", "cross-3", "cross-4"):
        out[name] = F[name]
    return out


def transfer_corpus() -> dict[str, Polytope]:
    """Ten polytopes with the origin in the interior, some pairwise equivalent.

    No two members differ by a pure translation; Gamma only sees linear
    structure.
    """
    F = C.fixtures()
    ex11 = F["example-1-1"]
    ex19 = F["example-1-9"]
    rect = make_polytope([(-1, -1), (1, -1), (1, 2), (-1, 2)])
    shear = UnimodularMap([[1, 0], [1, 1]])
    return {
        "example-1-1": ex11,
        "example-1-1-dual": polar_dual(ex11),
        "cube-2": F["cube-2"],
        "cross-2": F["cross-2"],
        "hexagon": F["hexagon"],
        "rect-2x3": rect,
        "rect-2x3-sheared": apply_map(shear, rect),
        "example-1-9": ex19,
        "example-1-9-dual": polar_dual(ex19),
        "cross-3": F["cross-3"],
    }


def claim_example_1_9():
    P = C.fixtures()["example-1-9"]
    D = polar_dual(P)
    dp, dd = delta_vector(P), delta_vector(D)
    eq = are_equivalent(P, D)
    ok = dp == dd == (1, 8, 8, 1) and set(D.vertices) == EXAMPLE_1_9_DUAL and eq is None
    return ok, f"delta(P)={dp} delta(P^v)={dd} dual vertices={len(D.vertices)} equivalent={eq is not None}"


def claim_example_1_1():
    P = C.fixtures()["example-1-1"]
    D = polar_dual(P)
    m = are_equivalent(P, D)
    ok = (set(D.vertices) == EXAMPLE_1_1_DUAL and m is not None and apply_map(m, P) == D
          and delta_vector(P) == (1, 4, 1))
    return ok, f"dual={sorted(D.vertices)} witness={m.matrix if m else None} delta={delta_vector(P)}"


def claim_formulas(corpus: dict[str, Polytope]):
    bad = []
    for name, P in corpus.items():
        dv = delta_vector(P)
        if delta_vector(C.gamma(P)) != C.gamma_delta_formula(dv):
            bad.append(f"gamma({name})")
        if delta_vector(C.prism01(P)) != C.prism_delta_formula(dv):
            bad.append(f"prism01({name})")
        if delta_vector(C.pyramid(P)) != C.pyramid_delta_formula(dv):
            bad.append(f"pyramid({name})")
    return not bad, f"{3 * len(corpus)} comparisons" + (f"; mismatches: {bad}" if bad else "")


def claim_gamma_structure(corpus: dict[str, Polytope]):
    bad = []
    for name, P in corpus.items():
        G = C.gamma(P)
        if not is_reflexive(G):
            bad.append(f"gamma({name}) not reflexive")
            continue
        if len(G.facets) != 2 * len(P.facets) + 1:
            bad.append(f"gamma({name}) facet count")
        if are_equivalent(C.gamma(polar_dual(P)), polar_dual(G)) is None:
            bad.append(f"gamma({name}) duality")
    return not bad, f"{len(corpus)} polytopes" + (f"; failures: {bad}" if bad else "")


def claim_prism_bipyramid_duality(corpus: dict[str, Polytope]):
    bad = []
    for name, P in corpus.items():
        D = polar_dual(P)
        if polar_dual(C.prism_sym(P)) != C.bipyramid(D):
            bad.append(f"A({name})")
        if polar_dual(C.bipyramid(P)) != C.prism_sym(D):
            bad.append(f"B({name})")
    return not bad, f"{len(corpus)} polytopes" + (f"; failures: {bad}" if bad else "")


def claim_transfer(corpus: dict[str, Polytope]):
    names = list(corpus)
    bad = []
    n = 0
    for i, a in enumerate(names):
        for b in names[i:]:
            P, Q = corpus[a], corpus[b]
            if P.dim != Q.dim:
                continue
            n += 1
            rep = gamma_equivalence_transfer_check(P, Q)
            if not rep.passed:
                bad.append(f"({a}, {b}): {rep}")
    return not bad, f"{n} same-dimension pairs" + (f"; failures: {bad}" if bad else "")


def claim_sylvester(dims: Iterable[int] = (3, 4, 5, 6)):
    details = []
    ok = True
    for d in dims:
        S = C.sylvester_simplex(d)
        D = polar_dual(S)
        vol = normalized_volume(S)
        dv = delta_vector_simplex(S)
        m = C.sylvester_simplex_dual_map(d)
        nill = C.nill_bounds_check(S)
        checks = [
            is_reflexive(S),
            set(D.vertices) == {h.normal for h in S.facets},
            apply_map(m, D) == S,
            are_equivalent(S, D) is not None,
            vol == SYLVESTER_VOLUMES.get(d, C.sylvester_volume_formula(d)),
            vol == C.sylvester_volume_formula(d),
            sum(dv) == vol,
            is_symmetric(dv),
            vol < C.sylvester(d) - 1,
            nill.passed,
        ]
        if d <= 4:
            checks.append(delta_vector(S) == dv)
        ok = ok and all(checks)
        details.append(f"d={d}: Vol={vol} < b_d-1={C.sylvester(d) - 1}, delta={dv}, "
                       f"Vol*Vol^v={nill.product}")
    return ok, "; ".join(details)


def claim_sylvester_identity(n_max: int = 8):
    seq = [C.sylvester(i) for i in range(5)]
    ok = seq == [2, 3, 7, 43, 1807]
    for n in range(n_max + 1):
        lhs = sum(Fraction(1, C.sylvester(i)) for i in range(n + 1))
        ok = ok and lhs == 1 - Fraction(1, C.sylvester_product(n))
    return ok, f"b_0..b_4={seq}; identity checked for n<={n_max}"


def claim_census_2d(polygons: list[Polytope]):
    cls = [classify_self_duality(P) for P in polygons]
    n_delta = sum(c.delta_equal for c in cls)
    n_eq = sum(c.equivalent for c in cls)
    same = all(c.delta_equal == c.equivalent for c in cls)
    ok = len(polygons) == 16 and n_delta == 4 and n_eq == 4 and same
    return ok, f"classes={len(polygons)} delta-self-dual={n_delta} self-equivalent={n_eq}"


def claim_census_3d(path: str, workers: int | None = None):
    from .census import scan_file

    summary = scan_file(path, workers=workers, equivalence=False)
    ok = summary.reflexive == summary.total == 4319 and summary.delta_self_dual == 327
    return ok, (f"total={summary.total} reflexive={summary.reflexive} "
                f"delta-self-dual={summary.delta_self_dual}")


def claim_delta_properties(corpus: dict[str, Polytope]):
    bad = [name for name, P in corpus.items() if not check_delta_properties(P).passed]
    sym = [name for name, P in corpus.items() if is_symmetric(delta(P)) != is_reflexive(P)]
    ok = not bad and not sym
    return ok, f"{len(corpus)} polytopes" + (f"; failures: {bad + sym}" if not ok else "")


def _timed(claim: str, anchor: str, fn: Callable, *args) -> Row:
    t0 = time.perf_counter()
    try:
        ok, detail = fn(*args)
        status = "PASS" if ok else "FAIL"
    except Exception as exc:  # a crash is a failed claim, not a crashed harness
        status, detail = "FAIL", f"{type(exc).__name__}: {exc}"
    return Row(claim, anchor, status, detail, time.perf_counter() - t0)


def run_all(config: ReproduceConfig = ReproduceConfig()) -> list[Row]:
    rows = [
        _timed("example-1-9", "3D polytope: equal delta-vectors, inequivalent dual",
               claim_example_1_9),
        _timed("example-1-1", "2D triangle equivalent to its dual", claim_example_1_1),
    ]
    polygons = None
    if config.skip_enum2d:
        rows.append(Row("census-2d", "16 reflexive polygons, 4 delta-self-dual", "SKIPPED",
                        "--skip-enum2d"))
    else:
        t0 = time.perf_counter()
        polygons = enumerate_reflexive_2d()
        row = _timed("census-2d", "16 reflexive polygons, 4 delta-self-dual",
                     claim_census_2d, polygons)
        row.seconds += time.perf_counter() - t0
        rows.append(row)
    if polygons is None:
        # without the enumeration the corpus falls back to the named polygons
        F = C.fixtures()
        polygons = [F[k] for k in ("example-1-1", "cube-2", "cross-2", "simplex-2", "hexagon")]
    corpus = reflexive_corpus(polygons)
    rows += [
        _timed("delta-properties", "delta_0=1, delta_1, delta_d, Hibi bound, symmetry",
               claim_delta_properties, corpus),
        _timed("transform-formulas", "gamma / prism / pyramid delta transforms vs counting",
               claim_formulas, corpus),
        _timed("gamma-structure", "gamma(P) reflexive, gamma(P^v) ~ gamma(P)^v",
               claim_gamma_structure, corpus),
        _timed("prism-bipyramid-duality", "A(P)^v = B(P^v), B(P)^v = A(P^v)",
               claim_prism_bipyramid_duality, corpus),
        _timed("gamma-transfer", "P ~ Q iff gamma(P) ~ gamma(Q); same for delta",
               claim_transfer, transfer_corpus()),
        _timed("sylvester-simplices", "reflexive, self-dual, Vol < b_d - 1, Nill bounds",
               claim_sylvester, config.sylvester_dims),
        _timed("sylvester-identity", "sum 1/b_i = 1 - 1/(b_0...b_n)", claim_sylvester_identity,
               config.identity_n_max),
    ]
    if config.ks3:
        rows.append(_timed("census-3d", "4319 reflexive 3-polytopes, 327 delta-self-dual",
                           claim_census_3d, config.ks3, config.workers))
    else:
        rows.append(Row("census-3d", "4319 reflexive 3-polytopes, 327 delta-self-dual",
                        "SKIPPED", "no Kreuzer-Skarke file given (--ks3)"))
    return rows
