import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gsp4hida import linalg as la
from gsp4hida.bruhat import (
    bruhat_decompose,
    bruhat_sweep,
    cell_length_drop_hypothesis,
    cell_split,
    literal_length_drop_hypothesis,
    random_unipotent,
    upper_unipotent,
    weyl_type_transition,
)
from gsp4hida.errors import HypothesisViolated, PrecisionExhausted
from gsp4hida.roots import POSITIVE_ROOTS, bruhat_leq, by_name, weyl_group
from gsp4hida.symplectic import weyl_lift
from oracles.flag_cell import relative_position

P = 3
W = weyl_group()
cases = st.tuples(st.integers(0, 2**32 - 1), st.sampled_from(W))


def _case(seed):
    return random_unipotent(random.Random(seed), P)


@given(cases)
def test_certificate_remultiplies(case):
    seed, w = case
    u = _case(seed)
    cert = bruhat_decompose(u, w, P)
    assert cert.verify(P)
    assert bruhat_leq(cert.w_prime, w)


@given(cases)
def test_cell_agrees_with_flag_oracle(case):
    seed, w = case
    u = _case(seed)
    cert = bruhat_decompose(u, w, P)
    g = la.matmul(upper_unipotent(u), weyl_lift(w))
    assert relative_position(g, P) == cert.w_prime


@given(cases)
def test_cell_hypothesis_forces_length_drop(case):
    seed, w = case
    u = _case(seed)
    if cell_length_drop_hypothesis(u, w, P):
        assert bruhat_decompose(u, w, P).w_prime.length < w.length


def test_literal_hypothesis_does_not_force_a_drop():
    u = [Fraction(-18), Fraction(-8, 9), Fraction(5, 27), Fraction(0)]
    w = by_name("s1s2")
    assert literal_length_drop_hypothesis(u, w, P)
    assert not cell_length_drop_hypothesis(u, w, P)
    assert bruhat_decompose(u, w, P).w_prime == w


def test_integral_unipotent_keeps_the_cell():
    for w in W:
        cert = bruhat_decompose([1, 2, 0, 5], w, P)
        assert cert.w_prime == w
        assert set(cert.branches) <= {"absorb"}


def test_cell_split_recombines():
    u = [Fraction(1, 3), 2, Fraction(4, 9), 1]
    for w in W:
        y, x = cell_split(u, w)
        assert set(y) == {a for a in POSITIVE_ROOTS if not w.inverse().act_root(a).is_positive()}
        assert set(y) | set(x) == set(POSITIVE_ROOTS)


def test_precision_budget():
    with pytest.raises(PrecisionExhausted):
        bruhat_decompose([Fraction(1, 3**8), 0, 0, 0], by_name("-id"), P, precision=8)


def test_transition_branches():
    t = (0, 1, 3, 2)
    a = weyl_type_transition(by_name("s1"), 1, 3, t, [3, 3, 9, 27], P)
    assert a.branch == "a" and a.w == by_name("s1") and a.depth == 2
    top = weyl_type_transition(by_name("s1"), 2, 3, t, [3, 3, 9, 27], P)
    assert top.depth == float("inf")
    b = weyl_type_transition(by_name("-id"), 0, 3, t, [1, 1, 1, 1], P)
    assert b.branch == "b" and b.certificate.verify(P)
    assert b.length_drop == b.certificate.w.length - b.w.length
    with pytest.raises(HypothesisViolated):
        weyl_type_transition(by_name("s1"), 0, 3, (0, 0, 1, 1), [1, 1, 1, 1], P)


def test_sweep_is_seeded():
    one = bruhat_sweep(50, P, 8, seed=7)
    two = bruhat_sweep(50, P, 8, seed=7)
    assert one == two
    assert one["counts"]["verified"] == 50
    assert one["counts"]["cell_drop_fails"] == 0
