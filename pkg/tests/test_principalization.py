from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from izeta.corpus import generate_corpus
from izeta.exact_poly import parse_polynomial
from izeta.graph_model import derive_generic_counts, validate
from izeta.principalization import (
    Ideal,
    IdealError,
    IrrationalCenterError,
    blow_up_point,
    generic_member,
    principalize,
    split_principal_part,
)
from izeta.topo_zeta import topological_zeta_local

from conftest import CUSP, CHAIN, TWO_IMAGES, BRANCHED


def data(res):
    return [(c.id, c.N, c.nu, c.self_intersection, c.n_generic) for c in res.graph.exceptional()]


def test_chain_ideal():
    res = principalize(CHAIN)
    assert data(res) == [("E1", 4, 2, -2, 3), ("E2", 5, 3, -2, 0), ("E3", 6, 4, -1, 1)]
    assert res.graph.edges == (("E1", "E2"), ("E2", "E3"))


def test_two_image_ideal():
    res = principalize(TWO_IMAGES)
    assert data(res) == [("E1", 3, 2, -3, 1), ("E2", 4, 3, -2, 0), ("E3", 8, 5, -1, 1)]
    assert res.graph.edges == (("E1", "E3"), ("E2", "E3"))


def test_branched_ideal_numbering():
    res = principalize(BRANCHED)
    assert [(c.N, c.nu) for c in res.graph.exceptional()] == [(2, 2), (3, 3), (6, 5), (7, 6), (8, 7), (9, 8)]
    assert res.graph.neighbors("E3") == ["E1", "E2", "E4"]


def test_cusp_has_one_weak_branch():
    res = principalize(CUSP)
    weak = res.graph.weak()
    assert [(w.N, w.nu, w.over_origin) for w in weak] == [(1, 1, False)]
    assert res.graph.neighbors(weak[0].id) == ["E3"]


def test_single_blowup_of_the_maximal_ideal():
    res = principalize("x, y")
    assert data(res) == [("E1", 1, 2, -1, 1)]
    assert res.graph.weak() == []


def test_origin_is_always_blown_up():
    # (x) is already principal with smooth support, but the local zeta needs a curve over 0
    res = principalize("x")
    assert data(res) == [("E1", 1, 2, -1, 0)]


def test_split_principal_part():
    h, residual = split_principal_part(Ideal.from_text("x^2*y, x^2*(x+y)"))
    assert h == parse_polynomial("x^2")
    assert [str(g) for g in residual.generators] == ["y", "x + y"]
    h, residual = split_principal_part(Ideal.from_text("x^5"))
    assert residual.generators == (parse_polynomial("1"),)


def test_weak_multiplicity_enters_N():
    res = principalize("x^2*y, x^2*(x+y)")
    assert data(res) == [("E1", 3, 2, -1, 1)]
    assert [(w.N, w.nu) for w in res.graph.weak()] == [(2, 1)]


def test_rejects_unit_and_zero():
    with pytest.raises(IdealError, match="does not vanish at the origin"):
        principalize("1")
    with pytest.raises(IdealError):
        principalize("0")


def test_irrational_center_names_the_polynomial():
    with pytest.raises(IrrationalCenterError, match=r"v\^2 \+ 1"):
        principalize("x^2+y^2, x^3")


def test_irrational_transverse_branches_are_counted():
    # x^2 - 2y^2 has two branches through the origin with irrational slopes; both meet E1 transversally
    res = principalize("x^2 - 2*y^2")
    g = res.graph
    assert data(res) == [("E1", 2, 2, -1, 0)]
    assert len(g.weak()) == 2 and g.neighbors("E1") == ["W1", "W2"]


def test_incremental_N_matches_direct_pullback():
    for text in [CHAIN, TWO_IMAGES, BRANCHED, CUSP, "x^2*y, x^2*(x+y)"]:
        res = principalize(text)
        assert res.direct_multiplicities() == {c.id: c.N for c in res.graph.exceptional()}


def test_generic_member_is_seeded():
    res = principalize(CHAIN)
    a, b = generic_member(res, 17), generic_member(res, 17)
    assert a.coefficients == b.coefficients
    assert a.counts == {"E1": 3, "E2": 0, "E3": 1}


def test_blow_up_free_point_adds_a_minus_one_curve():
    res = principalize(CHAIN)
    chart, point = res.free_point("E1")
    bigger = blow_up_point(res, chart, point)
    new = bigger.graph.exceptional()[-1]
    assert (new.N, new.nu, new.self_intersection) == (4, 3, -1)
    assert bigger.graph.component("E1").self_intersection == -3
    assert topological_zeta_local(bigger.graph) == topological_zeta_local(res.graph)
    # the original snapshot is untouched
    assert len(res.graph.exceptional()) == 3


def test_blow_up_intersection_point():
    res = principalize(CHAIN)
    site = next(s for s in res.sites.values() if set(s.exceptional) == {"E1", "E2"})
    bigger = blow_up_point(res, site.chart, site.point)
    new = bigger.graph.exceptional()[-1]
    assert (new.N, new.nu) == (9, 5)
    assert set(bigger.graph.neighbors(new.id)) == {"E1", "E2"}
    assert "E2" not in bigger.graph.neighbors("E1")
    assert topological_zeta_local(bigger.graph) == topological_zeta_local(res.graph)


def test_blow_up_rejects_points_off_the_exceptional_curve():
    res = principalize(CHAIN)
    rec = res.components["E1"]
    with pytest.raises(ValueError):
        blow_up_point(res, rec.chart1, (Fraction(1), Fraction(0)))
    with pytest.raises(ValueError):
        blow_up_point(res, 0, (Fraction(0), Fraction(0)))


CORPUS = generate_corpus(40, seed=11)


@given(st.sampled_from(CORPUS), st.integers(0, 10**6))
def test_generic_counts_match_graph_for_any_seed(text, seed):
    res = principalize(text)
    assert generic_member(res, seed).counts == derive_generic_counts(res.graph)


exponents = st.tuples(st.integers(0, 6), st.integers(0, 6)).filter(lambda e: e != (0, 0))


@given(st.lists(exponents, min_size=1, max_size=4))
def test_monomial_ideals_principalize_consistently(exps):
    res = principalize(", ".join(f"x^{a}*y^{b}" for a, b in exps))
    assert validate(res.graph).ok
    assert res.direct_multiplicities() == {c.id: c.N for c in res.graph.exceptional()}
