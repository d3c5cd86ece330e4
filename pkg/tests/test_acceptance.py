"""Acceptance suite: one PASS/FAIL line per criterion, printed at the end of the run."""

import json
import random
import time
from fractions import Fraction
from pathlib import Path

import pytest
import sympy as sp

import conftest
from gsp4hida.boundary import HidaGroupParams, hida_rank
from gsp4hida.bruhat import bruhat_sweep
from gsp4hida.flags import contraction_report, expected_size, siegel_element
from gsp4hida.hecke import (
    char_poly,
    commutativity_sweep,
    evaluation_kernel_check,
    spherical_decomposition_count,
)
from gsp4hida.polygons import polygon_pipeline, symbolic_hodge_vertices, symbolic_newton_vertices
from gsp4hida.roots import BOREL, KLINGEN, SIEGEL, degree_stats, table_data, weyl_group
from gsp4hida.weights import weyl_dimension
from kostant_checks import euler_identity, kostant_character
from oracles.freudenthal import dimension
from oracles.lagrangian import lagrangians
from oracles.sp4_lie import cohomology

GOLDEN = Path(__file__).parent / "golden"
TYPES = [(BOREL, "B"), (SIEGEL, "P"), (KLINGEN, "P*")]


def record(n: int, ok: bool, detail: str, started: float) -> None:
    took = time.perf_counter() - started
    conftest.ACCEPTANCE_LINES[n] = f"CRITERION {n}: {'PASS' if ok else 'FAIL'} - {detail} ({took:.2f}s)"
    assert ok, conftest.ACCEPTANCE_LINES[n]


def test_criterion_01_tables():
    t0 = time.perf_counter()
    pub = json.loads((GOLDEN / "published_tables.json").read_text())
    cells = bad = 0
    for Q in ("B", "P", "P*"):
        data = table_data(Q)
        for r in data["wsets"]:
            cells += 1
            bad += set(r["W"]) != set(pub[Q]["wsets"][r["P_Sigma"]])
        for tab in data["degrees"]:
            expected = pub[Q]["degrees"][tab["P_Sigma"]]
            got = {}
            for r in tab["rows"]:
                got[r["w"]] = [r["n_w"], r["n_w"]] if "n_w" in r else [r["q'_w"], r["q_w"]]
            cells += len(expected)
            bad += sum(got.get(w) != v for w, v in expected.items()) + len(set(got) - set(expected))
    record(1, bad == 0, f"{cells - bad}/{cells} table cells match", t0)


def test_criterion_02_borel_degrees():
    t0 = time.perf_counter()
    bad = [w.name for w in weyl_group() if degree_stats(BOREL, BOREL, w) != (4 - w.length,) * 2]
    record(2, not bad, f"n_w = 4 - length(w) on 8 elements, mismatches {bad}", t0)


def test_criterion_03_contraction():
    t0 = time.perf_counter()
    parts = []
    ok = True
    for Q, tag in TYPES:
        rep = contraction_report(Q, 3, 2, 1)
        n = rep.counts["points"]
        ok &= rep.passed and rep.counts["contracted"] == n == expected_size(Q, 3, 2, 1)
        parts.append(f"{tag} {rep.counts['contracted']}/{n}")
    ok &= parts[0] == "B 2916/2916"
    record(3, ok, "points in marked fibre mod 9: " + ", ".join(parts), t0)


def test_criterion_04_hecke_algebra():
    t0 = time.perf_counter()
    rep = commutativity_sweep(BOREL, 3, 2, 1)
    c = rep.counts
    ok = rep.passed and all(c["commute"].values()) and c["product_d1d2"] and all(c["degrees"].values())
    record(4, ok, f"module {c['module']}, commute {c['commute']}, product {c['product_d1d2']}, "
                  f"{sum(c['degrees'].values())}/6 degree pairs", t0)


def test_criterion_05_idempotent_annihilation():
    t0 = time.perf_counter()
    parts = []
    ok = True
    for Q, tag in TYPES:
        rep = evaluation_kernel_check(Q, 3, 2)
        ok &= rep.passed
        parts.append(f"{tag} kernel {rep.counts['kernel']}")
    record(5, ok, "e K = 0 at p = 3, s = 2: " + ", ".join(parts), t0)


def test_criterion_06_spherical_degree():
    t0 = time.perf_counter()
    count = spherical_decomposition_count(siegel_element(0, 1), 3)["total"]
    brute = len(lagrangians(3))
    record(6, count == brute == 40, f"Iwahori-orbit count {count}, lagrangians {brute}", t0)


def test_criterion_07_kostant():
    t0 = time.perf_counter()
    ce = [(lam, tag) for lam in [(0, 0), (1, 0), (1, 1), (2, 1)] for Q, tag in TYPES
          if kostant_character(Q, tag, lam) == cohomology(tag, lam)]
    euler = [(a, b, tag) for a in range(7) for b in range(a + 1) for Q, tag in TYPES
             if euler_identity(Q, tag, (a, b))]
    ok = len(ce) == 12 and len(euler) == 84
    record(7, ok, f"CE oracle {len(ce)}/12, Euler identity {len(euler)}/84", t0)


def test_criterion_08_weyl_dimension():
    t0 = time.perf_counter()
    lams = [(a, b) for a in range(7) for b in range(a + 1)]
    good = sum(weyl_dimension(lam) == dimension(lam) for lam in lams)
    record(8, good == len(lams) == 28, f"{good}/{len(lams)} weights agree with Freudenthal", t0)


def test_criterion_09_polygons():
    t0 = time.perf_counter()
    b = polygon_pipeline(BOREL, 5, 3, 8)
    s = polygon_pipeline(SIEGEL, 5, 3, 8)
    a_, b_ = sp.Symbol("a", nonnegative=True), sp.Symbol("b", nonnegative=True)
    t0_, t1_ = sp.Symbol("alpha0", real=True), sp.Symbol("alpha1", real=True)
    top = [(0, 0), (1, 0), (2, b_ + 1), (3, a_ + b_ + 3), (4, 2 * a_ + 2 * b_ + 6)]
    symbolic = (
        list(symbolic_hodge_vertices().vertices) == top
        and list(symbolic_newton_vertices(BOREL).vertices) == top
        and list(symbolic_newton_vertices(SIEGEL).vertices)
        == [(0, 0), (1, 0), (2, t1_), (3, a_ + b_ + 3), (4, 2 * a_ + 2 * b_ + 6)]
        and list(symbolic_newton_vertices(KLINGEN).vertices)
        == [(0, 0), (1, t0_), (2, b_ + 1), (3, a_ + b_ + t0_ + 3), (4, 2 * a_ + 2 * b_ + 6)]
    )
    ok = (
        b["hodge"] == b["newton"]
        and b["verdict"]["dualParabolic"] == "Borel"
        and b["verdict"]["stableSubspacesAt"] == [1, 2, 3]
        and s["verdict"]["dualParabolic"] == "Klingen"
        and symbolic
    )
    record(9, ok, f"B dual {b['verdict']['dualParabolic']}, Siegel dual "
                  f"{s['verdict']['dualParabolic']}, symbolic lists {symbolic}", t0)


def test_criterion_10_char_poly_autoduality():
    t0 = time.perf_counter()
    rng = random.Random(0)

    def rat():
        return Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**4))

    good = 0
    for _ in range(1000):
        T, R, S = rat(), rat(), rat()
        q = rat() or Fraction(1)
        _, c3, _, c1, c0 = char_poly(T, R, S, q).coefficients
        good += c1 == c3 * q**3 * S and c0 == (q**3 * S) ** 2
    record(10, good == 1000, f"{good}/1000 seeded cases", t0)


@pytest.mark.xfail(strict=True, reason="the literal length-drop clause has counterexamples")
def test_criterion_11_bruhat():
    t0 = time.perf_counter()
    rep = bruhat_sweep(1000, 3, 8, seed=0)
    c = rep["counts"]
    ok = c["verified"] == c["cases"] == 1000 and c["literal_drop_fails"] == 0
    witness = rep["witnesses"]["literal"][:1]
    record(11, ok, f"{c['verified']}/1000 certificates verified; literal hypothesis held "
                   f"{c['literal_hypothesis']} times, length failed to drop {c['literal_drop_fails']} "
                   f"times (first {witness}); cell hypothesis {c['cell_hypothesis']} times, "
                   f"{c['cell_drop_fails']} failures", t0)


def test_criterion_12_hida_rank():
    t0 = time.perf_counter()
    base = hida_rank(HidaGroupParams(1, 0, ((1, "B"),)))
    good = sum(
        hida_rank(HidaGroupParams(d, delta, ((d, "B"),))) == 2 * d + 1 + delta
        for d in range(1, 6) for delta in range(4)
    )
    record(12, base == 3 and good == 20, f"F = Q gives {base}; {good}/20 all-Borel cases", t0)
