import json
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gsp4hida.errors import UnknownParabolic
from gsp4hida.roots import (
    ALL_ROOTS,
    BOREL,
    KLINGEN,
    POSITIVE_ROOTS,
    SIEGEL,
    bruhat_leq,
    by_name,
    degree_stats,
    double_coset,
    double_cosets,
    dual_parabolic,
    emit_tables,
    from_word,
    length_histogram,
    parabolic,
    partition_counts,
    selector,
    table_data,
    weyl_group,
)

GOLDEN = Path(__file__).parent / "golden"
W = weyl_group()
elements = st.sampled_from(W)


def test_group_order_and_lengths():
    assert len(W) == 8
    assert length_histogram() == {0: 1, 1: 2, 2: 2, 3: 2, 4: 1}


def test_named_elements():
    assert by_name("-s1").word == (2, 1, 2)
    assert by_name("-s2").word == (1, 2, 1)
    assert by_name("-id").act((3, -5)) == (-3, 5)
    assert by_name("s1").act((1, 2)) == (2, 1)
    assert by_name("s2").act((1, 2)) == (1, -2)
    # right to left: s1s2 applies s2 first
    assert by_name("s1s2").act((1, 2)) == by_name("s1").act(by_name("s2").act((1, 2)))


@given(elements, elements, elements)
def test_group_axioms(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * x.inverse() == by_name("id")
    assert (x * y).length <= x.length + y.length


@given(elements)
def test_length_is_inversion_count(w):
    assert w.length == len(w.inversion_set())
    assert from_word(w.word) == w


@given(elements)
def test_weyl_group_permutes_roots(w):
    assert {w.act_root(a) for a in ALL_ROOTS} == set(ALL_ROOTS)


@given(elements, elements)
def test_bruhat_order_is_graded(x, y):
    if bruhat_leq(x, y) and x != y:
        assert x.length < y.length
    if bruhat_leq(x, y) and bruhat_leq(y, x):
        assert x == y


def test_bruhat_extremes():
    for w in W:
        assert bruhat_leq(by_name("id"), w)
        assert bruhat_leq(w, by_name("-id"))
    assert not bruhat_leq(by_name("s1"), by_name("s2"))


def test_parabolic_aliases_and_duals():
    assert parabolic("Siegel") is SIEGEL is parabolic("P")
    assert parabolic("Klingen") is KLINGEN is parabolic("P*")
    assert dual_parabolic(SIEGEL) is KLINGEN
    assert dual_parabolic(BOREL) is BOREL
    with pytest.raises(UnknownParabolic):
        parabolic("X")


def test_unipotent_roots():
    assert SIEGEL.unipotent_roots == frozenset(POSITIVE_ROOTS[1:])
    assert KLINGEN.unipotent_roots == frozenset({POSITIVE_ROOTS[0], POSITIVE_ROOTS[2], POSITIVE_ROOTS[3]})
    assert BOREL.unipotent_roots == frozenset(POSITIVE_ROOTS)


@pytest.mark.parametrize("Q", [BOREL, SIEGEL, KLINGEN])
@pytest.mark.parametrize("S", [BOREL, SIEGEL, KLINGEN])
def test_double_cosets_partition_w(Q, S):
    reps = double_cosets(Q, S)
    cosets = [double_coset(Q, S, w) for w in reps]
    assert sum(len(c) for c in cosets) == 8
    assert set().union(*cosets) == set(W)


@pytest.mark.parametrize("Q", [BOREL, SIEGEL, KLINGEN])
@pytest.mark.parametrize("S", [BOREL, SIEGEL, KLINGEN])
def test_degree_window_and_partition(Q, S):
    for w in double_cosets(Q, S):
        q1, q2 = degree_stats(Q, S, w)
        assert 0 <= q1 <= q2 <= 4
        assert sum(partition_counts(Q, S, w)) == len(S.unipotent_roots)


def test_b_table_identity():
    for w in W:
        assert degree_stats(BOREL, BOREL, w) == (4 - w.length, 4 - w.length)


def test_selector_mirror():
    for S in (SIEGEL, KLINGEN):
        for q in (1, 2, 3, 4):
            assert selector(S, q) == by_name("-id") * selector(S, 5 - q)
            assert degree_stats(BOREL, S, selector(S, q))[0] == q - 1


def _published():
    return json.loads((GOLDEN / "published_tables.json").read_text())


@pytest.mark.parametrize("Q", ["B", "P", "P*"])
def test_tables_match_published(Q):
    pub = _published()[Q]
    data = table_data(Q)
    assert {r["P_Sigma"]: set(r["W"]) for r in data["wsets"]} == {k: set(v) for k, v in pub["wsets"].items()}
    for tab in data["degrees"]:
        got = {}
        for r in tab["rows"]:
            got[r["w"]] = [r["n_w"], r["n_w"]] if "n_w" in r else [r["q'_w"], r["q_w"]]
        assert got == pub["degrees"][tab["P_Sigma"]]
    if "selector" in pub:
        assert {str(r["q"]): [r["w_P"], r["w_P*"]] for r in data["selector"]} == pub["selector"]


@pytest.mark.parametrize("Q,name", [("B", "B"), ("P", "P"), ("P*", "Pstar")])
def test_tables_byte_stable(Q, name):
    assert emit_tables(Q) == (GOLDEN / f"tables_{name}.tsv").read_text()
    assert json.loads(emit_tables(Q, "json")) == table_data(Q)


def test_tables_unknown_parabolic():
    with pytest.raises(UnknownParabolic):
        table_data("G")
