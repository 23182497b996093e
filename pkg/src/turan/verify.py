"""Deterministic check matrix: one named property check per covered result.

Every check draws its randomness from ``numpy.random.default_rng(seed)`` and
reports a fixed set of fields, so equal seeds give equal reports.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import comb, factorial
from typing import Callable

import numpy as np

from . import algebra as alg
from .conjectures import (
    dittert_search,
    hajek_hypergraph,
    hajek_uniform_value,
    korner_marton_check,
)
from .constructions import (
    circ_product,
    cross_product,
    j_augment,
    oplus_join,
    product_point,
    star_product,
    strong_power,
    strong_product,
)
from .hypergraph import (
    RMultigraph,
    blow_up,
    complete_graph,
    contains,
    cycle_graph,
    disjoint_union,
    find_embedding,
    is_homomorphism,
    make_graph,
    single_edge,
)
from .lagrangian import duality_check, evaluate_p, lambda_estimate

RESTARTS = 16


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str

    def to_json(self) -> dict:
        return {"check": self.name, "passed": self.passed, "detail": self.detail}


def _lam(G: RMultigraph, seed: int) -> float:
    return lambda_estimate(G, restarts=RESTARTS, seed=seed).estimate


def random_graph(rng, n: int, r: int, p: float = 0.5, multi: bool = False) -> RMultigraph:
    pool = combinations_with_replacement(range(n), r) if multi else combinations(range(n), r)
    edges = [e for e in pool if rng.random() < p]
    return make_graph(r, n, edges)


def random_point(rng, n: int, denom: int = 12) -> list[Fraction]:
    w = rng.integers(0, denom, size=n) + 1
    return [Fraction(int(v), int(w.sum())) for v in w]


def _nonempty(rng, n, r, multi=False):
    while True:
        G = random_graph(rng, n, r, multi=multi)
        if G.e:
            return G


def check_multigraph_notation(seed: int) -> tuple[bool, str]:
    k23 = blow_up(single_edge(2), [2, 3])
    loop_blow = blow_up(make_graph(2, 1, [(0, 0)]), [4])
    union = disjoint_union(complete_graph(3), cycle_graph(4))
    hom = find_embedding(cycle_graph(5), complete_graph(3), injective=False)
    ok = (
        k23.e == 6
        and loop_blow == complete_graph(4)
        and (union.n, union.e) == (7, 7)
        and hom is not None
        and is_homomorphism(cycle_graph(5), complete_graph(3), hom.assignment)
        and contains(complete_graph(4), complete_graph(3))
        and not contains(cycle_graph(5), complete_graph(3))
    )
    return ok, f"K23 edges={k23.e}, blow-up of a loop is K4={loop_blow == complete_graph(4)}"


def check_single_edge_lagrangian(seed: int) -> tuple[bool, str]:
    errs = [abs(_lam(single_edge(r), seed) - factorial(r) / r**r) for r in range(2, 7)]
    return max(errs) <= 1e-9, f"max error {max(errs):.3e} for r=2..6"


def check_complement_duality(seed: int) -> tuple[bool, str]:
    rng = np.random.default_rng(seed)
    trials = 30
    for _ in range(trials):
        n, r = int(rng.integers(1, 6)), int(rng.integers(1, 4))
        G = random_graph(rng, n, r, multi=True)
        if not duality_check(G, random_point(rng, n)):
            return False, f"failed on r={r} n={n}"
    return True, f"{trials} exact identities"


def check_blowup_density(seed: int) -> tuple[bool, str]:
    rng = np.random.default_rng(seed)
    for _ in range(5):
        G = random_graph(rng, 5, 3)
        sizes = [int(t) for t in rng.integers(1, 4, size=5)]
        N = sum(sizes)
        lhs = Fraction(blow_up(G, sizes).e * 6, N**3)
        if lhs != evaluate_p(G, [Fraction(t, N) for t in sizes], exact=True):
            return False, "edge count of a blow-up differs from the polynomial"
    gaps = []
    for t in (4, 8, 16):
        dens = Fraction(4 * t**3, comb(4 * t, 3))
        gaps.append(float(dens - Fraction(3, 8)))
    ok = gaps[0] > gaps[1] > gaps[2] > 0
    return ok, f"K4^3 blow-up density gaps {[round(g, 6) for g in gaps]}"


def check_split_factor_maximum(seed: int) -> tuple[bool, str]:
    grid = np.linspace(0, 1, 2001)
    for r in range(1, 5):
        for s in range(1, 5):
            x0, val = alg.weight_split_max(r, s)
            f = lambda x: x**r * (1 - x) ** s
            if x0 != Fraction(r, r + s) or f(x0) != val:
                return False, f"({r},{s}) maximizer or value wrong"
            if f(grid).max() > float(val) + 1e-15:
                return False, f"({r},{s}) grid beats the closed form"
    return True, "x0 = r/(r+s) for r, s = 1..4"


def check_star_product_law(seed: int) -> tuple[bool, str]:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(4):
        G = _nonempty(rng, int(rng.integers(2, 4)), int(rng.integers(1, 3)))
        H = _nonempty(rng, int(rng.integers(2, 4)), int(rng.integers(1, 3)))
        pred = _lam(G, seed) * _lam(H, seed) * float(alg.split_factor(G.r, H.r))
        worst = max(worst, abs(_lam(star_product(G, H), seed) - pred))
    return worst <= 1e-5, f"max error {worst:.3e} on 4 pairs"


def check_star_monoid(seed: int) -> tuple[bool, str]:
    rng = np.random.default_rng(seed)
    dens = [alg.Density(Fraction(int(rng.integers(0, 9)), 8), int(rng.integers(1, 4))) for _ in range(6)]
    for a in dens:
        if alg.star_op(alg.UNIT, a) != a:
            return False, "unit law fails"
        for b in dens:
            if alg.star_op(a, b) != alg.star_op(b, a):
                return False, "not commutative"
            for c in dens:
                if alg.star_op(alg.star_op(a, b), c) != alg.star_op(a, alg.star_op(b, c)):
                    return False, "not associative"
                if a.value and b != c and alg.star_op(a, b) == alg.star_op(a, c):
                    return False, "not cancellative"
    ok = alg.star_op(alg.Density(Fraction(1), 1), alg.Density(Fraction(1), 1)) == alg.Density(Fraction(1, 2), 2)
    return ok, "unit, commutativity, associativity and cancellation on 6 exact pairs"


def check_jump_transfer(seed: int) -> tuple[bool, str]:
    a = alg.jump_image(1, 3, 4)
    b = alg.jump_image(Fraction(5, 2), 3, 3)
    ok = a == alg.Density(Fraction(3, 32), 4) and b == alg.Density(Fraction(5, 9), 3)
    for r in range(3, 6):
        for q in range(r, 8):
            c = Fraction(1, 2)
            ok &= alg.jump_image(c, r, q).value == c * Fraction(factorial(q), q**q)
    return ok, f"jump_image(1,3,4) = {a.value}"


def check_g_function(seed: int) -> tuple[bool, str]:
    rng = np.random.default_rng(seed)
    grid = np.linspace(0, 1, 4001)
    worst = 0.0
    for _ in range(20):
        r = int(rng.integers(2, 6))
        a, b = (float(v) for v in rng.random(2))
        x = float(alg.g_argmax(a, b, r))
        top = float(alg.g_func(a, b, r, x))
        if alg.g_func(a, b, r, grid).max() > top + 1e-12:
            return False, "grid beats the closed-form maximizer"
        worst = max(worst, abs(top - float(alg.oplus(a, b, r))))
    return worst <= 1e-12, f"max |g(x*) - oplus| = {worst:.3e}"


def check_oplus_join_law(seed: int) -> tuple[bool, str]:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for r in (2, 3):
        for _ in range(2):
            G = random_graph(rng, int(rng.integers(1, 4)), r, multi=True)
            H = random_graph(rng, int(rng.integers(1, 4)), r, multi=True)
            pred = float(alg.oplus(_lam(G, seed), _lam(H, seed), r))
            worst = max(worst, abs(_lam(oplus_join(G, H), seed) - pred))
    return worst <= 1e-5, f"max error {worst:.3e} on 4 pairs"


def check_lagrangian_monotonicity(seed: int) -> tuple[bool, str]:
    rng = np.random.default_rng(seed)
    G = _nonempty(rng, 6, 3)
    H = make_graph(3, 6, G.edges[: max(1, G.e // 2)])
    sub_ok = _lam(H, seed) <= _lam(G, seed) + 1e-9
    hom_ok = _lam(cycle_graph(5), seed) <= _lam(complete_graph(3), seed) + 1e-9
    A, B = complete_graph(4, 3), single_edge(3)
    union_ok = abs(_lam(disjoint_union(A, B), seed) - max(_lam(A, seed), _lam(B, seed))) <= 1e-9
    return sub_ok and hom_ok and union_ok, f"subgraph={sub_ok} homomorphism={hom_ok} union={union_ok}"


def check_irrational_value(seed: int) -> tuple[bool, str]:
    import mpmath

    worst = mpmath.mpf(0)
    for r in (4, 6):
        got = alg.oplus(Fraction(1, 2), 0, r)
        want = 1 - 1 / (1 + mpmath.mpf(2) ** (mpmath.mpf(1) / (r - 1))) ** (r - 1)
        worst = max(worst, abs(got - want))
    return worst <= 1e-12, f"oplus(1/2, 0, 4) = {mpmath.nstr(alg.oplus(Fraction(1, 2), 0, 4), 15)}"


def check_h_map_additivity(seed: int) -> tuple[bool, str]:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for r in (2, 3, 4, 5):
        for a, b in rng.random((100, 2)):
            lhs = alg.h_map(alg.oplus(a, b, r), r)
            worst = max(worst, float(abs(lhs - alg.h_map(a, r) - alg.h_map(b, r)) / lhs))
    return worst <= 1e-12, f"max relative error {worst:.3e}"


def check_oplus_monotonicity(seed: int) -> tuple[bool, str]:
    rng = np.random.default_rng(seed)
    for _ in range(200):
        r = int(rng.integers(2, 6))
        a, b = (float(v) for v in rng.random(2) * 0.999)
        eps = float(rng.random()) * a
        gain = alg.oplus(a, b, r) - alg.oplus(a - eps, b, r)
        if gain < alg.oplus_increment_bound(a, b, eps, r) - 1e-15:
            return False, "increment bound violated"
    return True, "increment bound holds on 200 random triples"


def check_cross_product(seed: int) -> tuple[bool, str]:
    rng = np.random.default_rng(seed)
    for _ in range(5):
        r = int(rng.integers(2, 4))
        G, H = random_graph(rng, 4, r), random_graph(rng, 3, r)
        X = cross_product(G, H)
        expected = G.e + H.e + comb(7, r) - comb(4, r) - comb(3, r)
        if X.e != expected or not X.simple:
            return False, "edge count mismatch"
    return True, "edge counts match on 5 pairs"


def check_strong_product_bound(seed: int) -> tuple[bool, str]:
    rng = np.random.default_rng(seed)
    worst = float("inf")
    for _ in range(3):
        G, H = _nonempty(rng, 3, 2), _nonempty(rng, 3, 2)
        P = strong_product(G, H)
        a, b = random_point(rng, 3), random_point(rng, 3)
        pg, ph = evaluate_p(G, a, exact=True), evaluate_p(H, b, exact=True)
        if evaluate_p(P, product_point(a, b), exact=True) != pg + ph - pg * ph:
            return False, "product point identity fails"
        lg, lh = _lam(G, seed), _lam(H, seed)
        worst = min(worst, _lam(P, seed) - (lg + lh - lg * lh))
    return worst >= -1e-7, f"min slack {worst:.3e} on 3 pairs"


def check_hajek_uniform_value(seed: int) -> tuple[bool, str]:
    ok = hajek_uniform_value(3, 4) == Fraction(4160, 6561)
    for n, k in ((2, 2), (3, 2), (2, 3), (3, 3), (4, 2)):
        G = hajek_hypergraph(n, k)
        ok &= evaluate_p(G, [Fraction(1, G.n)] * G.n, exact=True) == hajek_uniform_value(n, k)
    return ok, f"(3,4) -> {hajek_uniform_value(3, 4)}"


def check_dittert(seed: int) -> tuple[bool, str]:
    d2, d3 = dittert_search(2, seed=seed), dittert_search(3, seed=seed)
    ok = abs(d2["best_psi"] - 0.375) <= 1e-6 and abs(d3["best_psi"] - 16 / 243) <= 1e-6
    ok &= np.abs(d2["best_A"] - 0.25).max() <= 1e-3 and np.abs(d3["best_A"] - 1 / 9).max() <= 1e-3
    return bool(ok), f"n=2: {d2['best_psi']:.12f}, n=3: {d3['best_psi']:.12f}"


def check_hajek_strong_power(seed: int) -> tuple[bool, str]:
    ok = all(hajek_hypergraph(n, k) == strong_power(single_edge(n), k) for n, k in ((2, 2), (3, 2), (2, 3)))
    return ok, "equal edge sets for (2,2), (3,2), (2,3)"


def check_korner_marton(seed: int) -> tuple[bool, str]:
    lam = lambda_estimate(strong_power(single_edge(3), 2), restarts=4, seed=seed, support_size=0).estimate
    rep = korner_marton_check(3, 2, lam)
    return rep["lower_ok"] and rep["upper_consistent"], f"rate {rep['rate']:.9f} in [{rep['lower_bound']:.9f}, 2/3]"


def check_circ_product_law(seed: int) -> tuple[bool, str]:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(3):
        G = random_graph(rng, 2, int(rng.integers(1, 3)), multi=True)
        H = random_graph(rng, 2, int(rng.integers(1, 3)), multi=True)
        pred = alg.circ_op(alg.Density(_lam(G, seed), G.r), alg.Density(_lam(H, seed), H.r)).value
        worst = max(worst, abs(_lam(circ_product(G, H), seed) - float(pred)))
    pairs = [alg.Density(Fraction(k, 7), k) for k in (1, 2, 3)]
    comm = all(alg.circ_op(a, b) == alg.circ_op(b, a) for a in pairs for b in pairs)
    return worst <= 1e-5 and comm, f"max error {worst:.3e}; commutative={comm}"


def check_apex_map_law(seed: int) -> tuple[bool, str]:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for r in (2, 3):
        for _ in range(2):
            G = random_graph(rng, 3, r, multi=True)
            worst = max(worst, abs(_lam(j_augment(G), seed) - float(alg.j_map(_lam(G, seed), r))))
    orbit, x = [], Fraction(0)
    for _ in range(3):
        x = alg.j_map(x, 2)
        orbit.append(x)
    ok = worst <= 1e-5 and orbit == [Fraction(1, 2), Fraction(2, 3), Fraction(3, 4)]
    return ok, f"max error {worst:.3e}; r=2 orbit {[str(v) for v in orbit]}"


def check_h_group_density(seed: int) -> tuple[bool, str]:
    gens = [float(alg.h_map(Fraction(1, 2), 3)), float(alg.h_map(Fraction(2, 9), 3))]
    gaps = [alg.h_group_gap(gens, m) for m in (2, 5, 10)]
    integral = alg.h_group_gap([float(alg.h_map(Fraction(1, 2), 2))], 5)
    ok = gaps[0] > gaps[1] > gaps[2] and integral == 1.0
    return ok, f"r=3 gaps {[round(g, 6) for g in gaps]}; r=2 gap {integral}"


CHECKS: dict[str, Callable[[int], tuple[bool, str]]] = {
    "multigraph-notation": check_multigraph_notation,
    "single-edge-lagrangian": check_single_edge_lagrangian,
    "complement-duality": check_complement_duality,
    "blowup-density": check_blowup_density,
    "split-factor-maximum": check_split_factor_maximum,
    "star-product-law": check_star_product_law,
    "star-monoid-arithmetic": check_star_monoid,
    "jump-transfer": check_jump_transfer,
    "oplus-g-function": check_g_function,
    "oplus-join-law": check_oplus_join_law,
    "lagrangian-monotonicity": check_lagrangian_monotonicity,
    "irrational-oplus-value": check_irrational_value,
    "h-map-additivity": check_h_map_additivity,
    "oplus-monotonicity": check_oplus_monotonicity,
    "cross-product-construction": check_cross_product,
    "strong-product-lower-bound": check_strong_product_bound,
    "hajek-uniform-value": check_hajek_uniform_value,
    "dittert-small-orders": check_dittert,
    "hajek-strong-power": check_hajek_strong_power,
    "korner-marton-sandwich": check_korner_marton,
    "circ-product-law": check_circ_product_law,
    "apex-map-law": check_apex_map_law,
    "h-group-density": check_h_group_density,
}


def run_suite(seed: int = 1, names: list[str] | None = None) -> list[CheckResult]:
    """Run the named checks (all by default) in a fixed order."""
    names = list(CHECKS) if names is None else names
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise ValueError(f"unknown checks: {', '.join(unknown)}")
    results = []
    for name in names:
        passed, detail = CHECKS[name](seed)
        results.append(CheckResult(name, bool(passed), detail))
    return results
