import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import (
    E_INIT,
    FIG,
    PRIMITIVE_FIXTURES,
    TAU4,
    TAU_E,
    W_INIT,
    Z_INIT,
    substitutions,
    w,
)
from substitution_graphs.letter_graphs import (
    EndpointMap,
    NotSegregating,
    Side,
    is_segregating_number,
    is_subfixed,
    l2_fast,
    least_segregating,
    ll_graph,
    ls_graph,
    rl_graph,
    rs_graph,
    segregating_graph,
    subfixing_power,
)
from substitution_graphs.words import is_postfix_free, is_prefix_free, language_n, power


def pairs(*items):
    return {(w(a), w(b)): (w(c), w(d)) for (a, b), (c, d) in items}


def test_letter_graphs_tau4():
    assert ll_graph(TAU4).next == {"0": "1", "1": "0"}
    assert rl_graph(TAU4).next == {"0": "0", "1": "0"}
    assert is_subfixed(rl_graph(TAU4))
    assert not is_subfixed(ll_graph(TAU4))


def test_letter_graphs_other_examples():
    assert ll_graph(FIG).next == {"1": "1", "2": "2"}
    assert rl_graph(Z_INIT).next == {"1": "1", "2": "3", "3": "3", "4": "3", "5": "3"}


def test_subfixed_trivial_maps():
    assert is_subfixed(EndpointMap(("x", "y"), {"x": "x", "y": "y"}))
    assert not is_subfixed(EndpointMap(("x", "y"), {"x": "y", "y": "x"}))


def test_endpoint_map_must_be_total():
    with pytest.raises(ValueError):
        EndpointMap(("x",), {"x": "y"})


def test_least_segregating_tau4():
    left = least_segregating(TAU4, Side.LEFT, 8)
    right = least_segregating(TAU4, Side.RIGHT, 8)
    assert left.least == 1
    assert right.least == 2
    adv = left.advisory
    assert (adv.s, adv.P, adv.Q, adv.value) == (2, 3, 2, 4)


def test_tau_e_has_no_left_segregating_number():
    report = least_segregating(TAU_E, Side.LEFT, 8)
    assert not report.found and report.bound == 8


def test_least_is_least():
    for s in PRIMITIVE_FIXTURES:
        for side in Side:
            r = least_segregating(s, side, 6)
            if r.found:
                assert is_segregating_number(s, r.least, side)
                assert not any(is_segregating_number(s, m, side) for m in range(1, r.least))


def test_ls_rs_tau4():
    ls = ls_graph(TAU4, least_segregating(TAU4, Side.LEFT))
    assert ls.next == pairs((("0", "1"), ("1", "0")), (("1", "0"), ("0", "1")))
    rs = rs_graph(TAU4, least_segregating(TAU4, Side.RIGHT))
    assert rs.next == pairs(
        (("00", "01"), ("01", "10")),
        (("01", "00"), ("10", "01")),
        (("10", "01"), ("01", "10")),
        (("01", "10"), ("10", "01")),
    )
    assert not is_subfixed(ls) and not is_subfixed(rs)


def test_rs_of_tau4_squared():
    rs = segregating_graph(power(TAU4, 2), 2, Side.RIGHT)
    assert rs.next == pairs(
        (("00", "01"), ("10", "01")),
        (("10", "01"), ("10", "01")),
        (("01", "00"), ("01", "10")),
        (("01", "10"), ("01", "10")),
    )
    assert is_subfixed(rs)


def test_segregating_graph_detects_bad_number():
    with pytest.raises(NotSegregating):
        segregating_graph(TAU4, 1, Side.RIGHT)


@pytest.mark.parametrize("s, expected", [(TAU4, 2), (FIG, 1), (Z_INIT, 1), (E_INIT, 1), (W_INIT, 1)])
def test_subfixing_power(s, expected):
    p = subfixing_power(s)
    assert p == expected
    for q in range(1, p):
        sq = power(s, q)
        graphs = [ll_graph(sq), rl_graph(sq),
                  ls_graph(sq, least_segregating(sq, Side.LEFT)),
                  rs_graph(sq, least_segregating(sq, Side.RIGHT))]
        assert not all(is_subfixed(g) for g in graphs)


def test_subfixing_power_needs_segregation():
    with pytest.raises(NotSegregating):
        subfixing_power(TAU_E)


def test_l2_fast_examples():
    z = l2_fast(Z_INIT)
    assert {w("12"), w("32"), w("34")} <= z.words and w("14") not in z
    e = l2_fast(E_INIT)
    inside = {tuple(img[i:i + 2]) for _, img in E_INIT.rules for i in range(len(img) - 1)}
    assert e.words == inside | {w("12")}
    assert w("14") not in e and w("32") not in e


@pytest.mark.parametrize("s", PRIMITIVE_FIXTURES + [power(TAU4, 2)])
def test_l2_fast_matches_closure(s):
    if is_subfixed(ll_graph(s)) and is_subfixed(rl_graph(s)):
        assert l2_fast(s) == language_n(s, 2)
    else:
        with pytest.raises(ValueError):
            l2_fast(s)


@settings(max_examples=200, deadline=None)
@given(substitutions(max_letters=5, max_image=4))
def test_l2_fast_matches_closure_random(s):
    if is_subfixed(ll_graph(s)) and is_subfixed(rl_graph(s)):
        assert l2_fast(s) == language_n(s, 2)


@settings(max_examples=100, deadline=None)
@given(substitutions(max_image=3), st.integers(1, 4))
def test_power_iterates_endpoint_graphs(s, k):
    sk = power(s, k)
    assert ll_graph(sk).next == ll_graph(s).iterate(k).next
    assert rl_graph(sk).next == rl_graph(s).iterate(k).next


@settings(max_examples=100, deadline=None)
@given(substitutions(max_letters=3, max_image=3))
def test_free_implies_segregating_one(s):
    if is_prefix_free(s):
        assert least_segregating(s, Side.LEFT, 2).least == 1
    if is_postfix_free(s):
        assert least_segregating(s, Side.RIGHT, 2).least == 1


def test_remainders_cover_n_on_fixtures():
    # segregating_graph raises if a remainder is shorter than n
    for s in PRIMITIVE_FIXTURES:
        for side in Side:
            r = least_segregating(s, side, 6)
            if r.found:
                segregating_graph(s, r.least, side)
