import math

import pytest

from retlab.graph_core import graph
from retlab.structure import (
    classify_component_shape,
    find_induced_net,
    find_induced_reflexive_cycle,
    find_induced_wr3,
    find_mixed_triangle,
    find_square,
    girth,
    is_square_free,
    recognize_hbis,
    recognize_triangle_extended,
    universal_vertices,
    validate_hbis,
)

from conftest import (
    fig3_left,
    fig3_right,
    fig4,
    fig5,
    fig15,
    irreflexive_path,
    reflexive_clique,
    reflexive_cycle,
    star,
)


def test_square_detection():
    c4 = graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    assert not is_square_free(c4)
    w = find_square(c4)
    assert w.vertices == frozenset(range(4))
    assert is_square_free(reflexive_clique(3))
    assert not is_square_free(reflexive_clique(4))
    # a square as a non-induced subgraph still counts
    k4 = reflexive_clique(4)
    assert find_square(k4) is not None


def test_girth_ignores_loops():
    assert girth(graph(2, [(0, 0), (0, 1)])) == math.inf
    assert girth(graph(3, [(0, 1), (1, 2), (0, 2)])) == 3
    assert girth(graph(5, [(i, (i + 1) % 5) for i in range(5)])) == 5


def test_component_shapes():
    s = classify_component_shape(reflexive_clique(3))
    assert s.reflexive and s.reflexive_clique and s.trivial
    s = classify_component_shape(star(4))
    assert s.irreflexive and s.irreflexive_star and s.trivial
    s = classify_component_shape(irreflexive_path(5))
    assert s.irreflexive_caterpillar and not s.trivial
    s = classify_component_shape(fig3_left())
    assert s.mixed and not s.trivial


def test_mixed_triangle_finder():
    h = fig3_right()
    # fig3-right is all triangles reflexive: no mixed triangle
    assert find_mixed_triangle(h) is None
    m21 = graph(3, [(0, 0), (1, 1), (0, 1), (1, 2), (0, 2)])
    assert find_mixed_triangle(m21).tag == "MixedTriangle21"
    m12 = graph(3, [(0, 0), (0, 1), (1, 2), (0, 2)])
    assert find_mixed_triangle(m12).tag == "MixedTriangle12"


def test_wr3_and_net_finders():
    from retlab.gadget_lab import make_net, make_wr

    assert find_induced_wr3(make_wr(3)) is not None
    assert find_induced_wr3(reflexive_clique(4)) is None
    assert find_induced_net(make_net()) is not None
    assert find_induced_net(make_wr(3)) is None


def test_reflexive_cycle_finder():
    assert find_induced_reflexive_cycle(reflexive_cycle(5)) is not None
    assert find_induced_reflexive_cycle(reflexive_cycle(4)) is None
    # a chord shortens every induced cycle below 5
    chord = graph(
        6,
        [(v, v) for v in range(6)]
        + [(i, (i + 1) % 6) for i in range(6)]
        + [(0, 3)],
    )
    assert find_induced_reflexive_cycle(chord) is None
    assert find_induced_reflexive_cycle(fig15()) is not None
    # unlooped cycles do not count
    assert find_induced_reflexive_cycle(graph(5, [(i, (i + 1) % 5) for i in range(5)])) is None


def test_recognize_hbis_on_figures():
    dec5 = recognize_hbis(fig5())
    assert dec5 is not None
    assert [len(k) for k in dec5.cliques] == [3, 3, 2, 2]
    assert [len(b) for b in dec5.bristles] == [4, 2, 1]
    assert validate_hbis(fig5(), dec5)

    dec4 = recognize_hbis(fig4())
    assert dec4 is not None
    assert sorted(len(k) for k in dec4.cliques) == sorted([2, 3, 2, 3, 4, 2, 2])
    assert sum(len(b) for b in dec4.bristles) == 9
    assert validate_hbis(fig4(), dec4)

    assert recognize_hbis(fig3_right()) is not None
    assert recognize_hbis(fig3_left()) is None


def test_recognize_hbis_rejects_over_bound():
    # reflexive P3 with 2 bristles: bound (2-1)(2-1) = 1 < 2
    assert recognize_hbis(fig3_left()) is None
    # single reflexive edge with an endpoint bristle
    h = graph(3, [(0, 0), (1, 1), (0, 1), (0, 2)])
    assert recognize_hbis(h) is None


def test_recognize_hbis_needs_a_chain():
    # single reflexive cliques are trivial and deliberately not recognized
    assert recognize_hbis(reflexive_clique(3)) is None
    # smallest genuine chain: two reflexive edges sharing a joint
    dec = recognize_hbis(graph(3, [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)]))
    assert dec is not None and dec.q == 1


def test_recognize_triangle_extended():
    dec = recognize_triangle_extended(fig15())
    assert dec is not None
    assert dec.kind == "cycle"
    assert len(dec.core) == 5
    assert len(dec.apex_map) == 3
    dec = recognize_triangle_extended(reflexive_cycle(6))
    assert dec is not None and dec.kind == "cycle" and not dec.apex_map
    assert recognize_triangle_extended(reflexive_clique(4)) is None


def test_universal_vertices():
    assert universal_vertices(reflexive_clique(3)) == frozenset({0, 1, 2})
    h = graph(3, [(0, 0), (0, 1), (0, 2)])
    assert universal_vertices(h) == frozenset({0})
