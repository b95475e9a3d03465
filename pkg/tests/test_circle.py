from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from circinf.boundary import (Free, Satellite, Verdict, blow_up, chain, classify_surface, cycle,
                              nodal_cubic_boundary, torus_square, triangle)
from circinf.circle import (EdgePoint, Vertex, circle_table, dual_classes, is_nef_at_level,
                            refine_consistency, sample_weights, transport, z_class, z_kdelta,
                            z_pairing_check, z_self_intersection)
from circinf.errors import DegenerateForm, InvalidPoint, InvalidWeight, NotACycle

HALF = Fraction(1, 2)
weights = st.fractions(min_value=Fraction(1, 50), max_value=10, max_denominator=50)


@st.composite
def refined_cycles(draw, base=None, steps=4):
    g = base if base is not None else draw(st.sampled_from([triangle(), cycle([-1, -1, -2, 0]),
                                                            cycle([1, -3, -1]), nodal_cubic_boundary()]))
    for _ in range(draw(st.integers(0, steps))):
        a, b, _ = draw(st.sampled_from(g.meets))
        g = blow_up(g, Satellite(a, b))
    return g


def test_z_class_triangle():
    g = triangle()
    assert z_class(g, Vertex("E1")).coeffs == (0, HALF, HALF)
    assert z_class(g, EdgePoint("E1", "E2", 1)).coeffs == (HALF, HALF, 1)
    with pytest.raises(DegenerateForm):
        z_class(torus_square(), Vertex("E1"))


def test_point_validation():
    with pytest.raises(InvalidWeight):
        EdgePoint("E1", "E2", 0)
    with pytest.raises(InvalidPoint):
        z_class(chain([1, 1, 1]), EdgePoint("E1", "E3", 1))
    with pytest.raises(InvalidPoint):
        z_class(triangle(), Vertex("E9"))


@given(weights)
def test_pairing_is_local_equation_order(s):
    g = triangle()
    assert z_pairing_check(g, EdgePoint("E1", "E2", s)) == (1, s, 0)
    assert z_pairing_check(g, Vertex("E1")) == (1, 0, 0)


@settings(max_examples=100)
@given(weights)
def test_triangle_z_square_and_kdelta_vanish(s):
    g = triangle()
    for v in (EdgePoint("E1", "E2", s), EdgePoint("E3", "E1", s), Vertex("E2")):
        assert z_self_intersection(g, v) == 0
        assert z_kdelta(g, v) == 0
        assert is_nef_at_level(g, v)


def test_nodal_boundary_values():
    # dual basis of [[5,2],[2,-1]] is (1/9)[[1,2],[2,-5]]
    g = nodal_cubic_boundary()
    assert z_self_intersection(g, Vertex("E1")) == Fraction(1, 9)
    assert z_self_intersection(g, Vertex("E2")) == Fraction(-5, 9)
    assert not is_nef_at_level(g, Vertex("E2"))


def test_free_blow_up_tail_has_positive_kdelta():
    w = blow_up(triangle(), Free("E1"))
    assert z_kdelta(w, Vertex("G1")) == 1
    # refine the tail at its satellite point twice; the value never drops
    y = blow_up(w, Satellite("E1", "G1"))
    assert z_kdelta(y, Vertex("G1")) >= 1
    z = blow_up(y, Satellite("G1", "G2"))
    assert z_kdelta(z, Vertex("G1")) >= 1 and z_kdelta(z, Vertex("G3")) > 0


@settings(max_examples=40)
@given(refined_cycles())
def test_duality(g):
    duals = dual_classes(g)
    for e in g.ids:
        assert duals[e].pairings() == tuple(int(e == f) for f in g.ids)


@settings(max_examples=40)
@given(refined_cycles(base=triangle()), st.data())
def test_markov_type_dual_pairings_positive(g, data):
    assert classify_surface(g).verdict is Verdict.MARKOV_TYPE
    duals = dual_classes(g)
    for e in g.ids:
        for f in g.ids:
            if e != f:
                assert duals[e].dot(duals[f]) > 0


@settings(max_examples=30)
@given(refined_cycles(base=triangle()))
def test_null_duals_not_proportional(g):
    duals = dual_classes(g)
    null = [duals[e] for e in g.ids if duals[e].square() == 0]
    for i, u in enumerate(null):
        for v in null[i + 1:]:
            if u.dot(v) > 0:
                a, b = u.coeffs, v.coeffs
                assert any(a[i] * b[j] != a[j] * b[i] for i in range(len(a)) for j in range(len(a)))


@settings(max_examples=60)
@given(refined_cycles(), weights, st.data())
def test_chart_involution(g, s, data):
    a, b, _ = data.draw(st.sampled_from(g.meets))
    v = EdgePoint(a, b, s)
    assert z_class(g, v) == s * z_class(g, v.flipped())
    assert z_self_intersection(g, v) == s * s * z_self_intersection(g, v.flipped())


@settings(max_examples=60)
@given(refined_cycles(), weights, st.data())
def test_transport_pushes_forward(g, s, data):
    a, b, _ = data.draw(st.sampled_from(g.meets))
    v = EdgePoint(a, b, s)
    t = transport(g, v, (a, b))
    assert t.z_class().pushforward(g) == z_class(g, v)
    assert t.scale ** 2 * z_self_intersection(t.graph, t.point) == z_self_intersection(g, v)


def test_transport_branches():
    g = triangle()
    assert transport(g, EdgePoint("E1", "E2", HALF), ("E1", "E2")).point == EdgePoint("E1", "G1", 1)
    assert transport(g, EdgePoint("E1", "E2", 1), ("E1", "E2")).point == Vertex("G1")
    assert transport(g, EdgePoint("E1", "E2", 3), ("E1", "E2")).point == EdgePoint("G1", "E2", 2)
    assert transport(g, Vertex("E3"), ("E1", "E2")).point == Vertex("E3")


def test_double_refinement():
    # v_{1,2}: one blow-up takes it to weight 1 on (G1, E2), the second to ord_G2
    g = triangle()
    v = EdgePoint("E1", "E2", 2)
    t1 = transport(g, v, ("E1", "E2"))
    assert t1.point == EdgePoint("G1", "E2", 1)
    assert refine_consistency(t1.graph, ("G1", "E2"))
    t2 = transport(t1.graph, t1.point, ("G1", "E2"))
    assert t2.point == Vertex("G2")
    assert t2.z_class().pushforward(g) == z_class(g, v)


def test_refine_consistency_examples():
    assert refine_consistency(triangle(), ("E1", "E2"))
    with pytest.raises(InvalidWeight):
        refine_consistency(triangle(), ("E1", "E2"), s=2)
    with pytest.raises(NotACycle):
        refine_consistency(chain([1, 1]), ("E1", "E2"))


@settings(max_examples=40)
@given(refined_cycles())
def test_refine_consistency_all_edges(g):
    for a, b, _ in g.meets:
        assert refine_consistency(g, (a, b))


def test_sample_weights_deterministic():
    assert sample_weights(3) == [Fraction(1, 3), 1, 3]
    assert sample_weights(2, 2) == [1, 4]
    assert sample_weights(100) == sample_weights(100)


def test_circle_table():
    rows = circle_table(triangle(), ("E1", "E2"), 5)
    assert len(rows) == 7
    assert all(r["z_squared"] == 0 and r["z_kdelta"] == 0 and r["nef"] for r in rows)
    nodal = circle_table(nodal_cubic_boundary(), ("E1", "E2"), 3)
    assert any(r["z_squared"] != 0 for r in nodal)
    with pytest.raises(DegenerateForm):
        circle_table(torus_square(), ("E1", "E2"), 3)
