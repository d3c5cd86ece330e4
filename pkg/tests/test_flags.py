import pytest
from hypothesis import given
from hypothesis import strategies as st

from gsp4hida import linalg as la
from gsp4hida.errors import HypothesisViolated, ScaleRefused
from gsp4hida.flags import (
    FlagPoint,
    act,
    borel_element,
    contraction_report,
    enumerate_flags,
    expected_size,
    klingen_element,
    lagrangian_pair,
    left_translate,
    right_translate,
    siegel_element,
    standard_element,
    symplectic_pairing,
)
from gsp4hida.roots import BOREL, KLINGEN, SIEGEL
from gsp4hida.coefficients import CoefficientContext
from gsp4hida.roots import A112
from gsp4hida.symplectic import parahoric_membership, root_element

R3 = CoefficientContext.residue(3, 1)
from oracles.contraction import contracted, lower_group

TYPES = [BOREL, SIEGEL, KLINGEN]


def test_semigroup_cone():
    assert siegel_element(0, 1).exponents == (0, 0, 1, 1)
    assert klingen_element(0, 1).exponents == (0, 1, 2, 1)
    assert borel_element(0, 1, 3).exponents == (0, 1, 3, 2)
    with pytest.raises(HypothesisViolated):
        siegel_element(1, 1)
    with pytest.raises(HypothesisViolated):
        borel_element(2, 1, 4)
    with pytest.raises(HypothesisViolated):
        standard_element(SIEGEL, 2)


@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
def test_semigroup_closed_under_products(a, b, c, d):
    x = borel_element(min(a, b), max(a, b), 2 * max(a, b) + c)
    y = borel_element(0, d, 2 * d)
    z = x * y
    assert z.exponents == tuple(i + j for i, j in zip(x.exponents, y.exponents))
    for root in BOREL.unipotent_roots:
        assert z.root_valuation(root) == x.root_valuation(root) + y.root_valuation(root)
        assert z.root_valuation(root) <= 0


@pytest.mark.parametrize("Q", TYPES)
def test_flag_counts(Q):
    fs = enumerate_flags(Q, 3, 1, 1)
    assert len(fs) == expected_size(Q, 3, 1, 1)
    assert fs.count_distinct() == len(fs)


def test_borel_count_at_level_nine():
    fs = enumerate_flags(BOREL, 3, 2, 1)
    assert len(fs) == 2916 == fs.count_distinct()


@pytest.mark.parametrize("Q,tag", [(BOREL, "B"), (SIEGEL, "P"), (KLINGEN, "P*")])
def test_lower_parts_match_root_vector_oracle(Q, tag):
    fs = enumerate_flags(Q, 3, 2, 1)
    assert {tuple(tuple(x % 9 for x in r) for r in m) for m in fs.lowers} == lower_group(tag, 3, 2, 1)


@pytest.mark.parametrize("Q,tag", [(BOREL, "B"), (SIEGEL, "P"), (KLINGEN, "P*")])
def test_contraction_agrees_with_direct_conjugation(Q, tag):
    report = contraction_report(Q, 3, 2, 1)
    d = standard_element(Q)
    oracle = all(contracted(u, d.exponents, 1, 3, 2) for u in lower_group(tag, 3, 2, 1))
    assert report.passed and oracle
    assert report.counts["contracted"] == report.counts["points"] == expected_size(Q, 3, 2, 1)


def test_contraction_needs_depth():
    # at depth 0 one step of d1 does not reach the marked fibre
    lower = root_element(-A112, 1, 9)
    y = FlagPoint(SIEGEL, lower, (1, 0, 0, 1), 9)
    assert any(act(siegel_element(0, 1), y, 3).x_point)


def test_scale_refused():
    with pytest.raises(ScaleRefused):
        enumerate_flags(BOREL, 7, 1, 1)
    with pytest.raises(ScaleRefused):
        enumerate_flags(BOREL, 3, 3, 1)
    with pytest.raises(HypothesisViolated):
        enumerate_flags(BOREL, 3, 1, 2)


def test_translations_respect_the_model():
    fs = enumerate_flags(BOREL, 3, 1, 1)
    y = next(iter(fs))
    z = right_translate(y, (2, 2))
    assert z.u_minus == y.u_minus and z.levi == (2 * y.levi[0] % 3, 2 * y.levi[1] % 3)
    g = root_element(next(iter(BOREL.unipotent_roots)), 1, 3)
    for y in fs:
        z, D = left_translate(g, y)
        assert la.is_diagonal(D)
        # g y = z N with N upper unipotent
        zi = la.inverse(z.matrix, lambda x: pow(int(x), -1, 3), 3)
        N = la.matmul(zi, la.matmul(g, y.matrix, 3), 3)
        assert parahoric_membership(N, BOREL, 1, R3)
        assert all(N[i][i] % 3 == 1 for i in range(4))


def test_siegel_points_give_lagrangians():
    fs = enumerate_flags(SIEGEL, 3, 1, 1)
    for y in list(fs)[:200]:
        C, A = lagrangian_pair(y)
        cols = [tuple(y.u_minus[i][j] for i in range(4)) for j in range(2)]
        assert symplectic_pairing(cols[0], cols[1], 3) == 0
        assert C == tuple(tuple(y.u_minus[i][j] for j in range(2)) for i in (2, 3))
    with pytest.raises(HypothesisViolated):
        lagrangian_pair(next(iter(enumerate_flags(BOREL, 3, 1, 1))))
