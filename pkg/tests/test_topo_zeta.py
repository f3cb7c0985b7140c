from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from izeta.corpus import generate_corpus
from izeta.exact_poly import UnivariatePoly
from izeta.graph_model import Component, DualGraph, GraphError, chi_open
from izeta.principalization import principalize
from izeta.topo_zeta import RationalFunctionS, pole_characterization, poles_of, topological_zeta_local

from conftest import CUSP, TWO_IMAGES, load_graph


def direct_sum(g, s):
    """The defining sum evaluated at a rational point, term by term."""
    s = Fraction(s)
    total = Fraction(0)
    over = {c.id for c in g.components if c.over_origin}
    for c in g.exceptional():
        total += Fraction(chi_open(g, c.id)) / (c.nu + s * c.N)
    for a, b in g.edges:
        if a in over or b in over:
            ca, cb = g.component(a), g.component(b)
            total += 1 / ((ca.nu + s * ca.N) * (cb.nu + s * cb.N))
    return total


def values(poles):
    return [p.value for p in poles]


def test_maximal_ideal():
    z = topological_zeta_local(principalize("x, y").graph)
    assert z == RationalFunctionS(UnivariatePoly([2]), ((2, 1, 1),))
    assert z(0) == 1
    assert [(p.value, p.order) for p in poles_of(z)] == [(-2, 1)]


def test_chain_graph_poles():
    assert set(values(poles_of(topological_zeta_local(load_graph("chain"))))) == {Fraction(-1, 2), Fraction(-2, 3)}


def test_two_image_poles():
    z = topological_zeta_local(principalize(TWO_IMAGES).graph)
    assert set(values(poles_of(z))) == {Fraction(-2, 3), Fraction(-5, 8)}


def test_cusp_closed_form():
    g = principalize(CUSP).graph
    z = topological_zeta_local(g)
    assert set(values(poles_of(z))) == {Fraction(-1), Fraction(-5, 6)}
    # (4s + 5) / ((s + 1)(6s + 5)), checked by direct summation
    for s in [0, 1, Fraction(1, 3), 7]:
        assert z(s) == Fraction(4 * s + 5) / ((s + 1) * (6 * s + 5)) == direct_sum(g, s)


def test_constant_has_no_poles():
    assert poles_of(RationalFunctionS(UnivariatePoly([3]))) == []


def test_reduction_cancels_common_factor():
    z = RationalFunctionS.build(UnivariatePoly([2, 2]), {(1, 1): 2, (2, 3): 1})
    assert z.factors == ((1, 1, 1), (2, 3, 1))
    assert z.numerator == UnivariatePoly([2])


def test_json_round_trip():
    z = topological_zeta_local(load_graph("branched"))
    assert RationalFunctionS.from_json(z.to_json()) == z


def test_origin_not_in_support():
    g = DualGraph((Component("W1", "weak", 1, 1, over_origin=False),), ())
    with pytest.raises(GraphError, match="origin not in support"):
        topological_zeta_local(g)


def test_characterization_reasons():
    branched = {p.value: p.conditions for p in pole_characterization(load_graph("branched"))}
    assert branched == {Fraction(-5, 6): ((3, "E3"),), Fraction(-8, 9): ((2, "E6"),)}
    two_images = {p.value: p.conditions for p in pole_characterization(load_graph("two_images"))}
    assert two_images == {Fraction(-2, 3): ((2, "E1"),), Fraction(-5, 8): ((2, "E3"),)}
    mx = pole_characterization(principalize("x, y").graph)
    assert [(p.value, p.conditions) for p in mx] == [(Fraction(-2), ((2, "E1"),))]


CORPUS = generate_corpus(40, seed=5)


@given(st.sampled_from(CORPUS), st.fractions(min_value=0, max_value=20, max_denominator=7))
def test_zeta_matches_direct_summation(text, s):
    g = principalize(text).graph
    assert topological_zeta_local(g)(s) == direct_sum(g, s)


@given(st.sampled_from(CORPUS))
def test_pole_methods_agree_and_poles_are_candidates(text):
    g = principalize(text).graph
    poles = poles_of(topological_zeta_local(g), g)
    assert values(poles) == values(pole_characterization(g))
    for p in poles:
        assert p.components, p
        assert all(Fraction(-g.component(c).nu, g.component(c).N) == p.value for c in p.components)
