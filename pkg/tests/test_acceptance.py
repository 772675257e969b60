"""Acceptance gate: one test per criterion; the `pytest -v` line for each
test is the criterion's pass/fail line.  All equalities are exact."""

import math
import random
import time
from fractions import Fraction

import pytest

from retlab.graph_core import common_neighbours, graph, neighbourhood
from retlab.counting import (
    check_stirling_bounds,
    count_list_homs,
    dirichlet_approx,
    naive_count,
)
from retlab.structure import recognize_hbis
from retlab.hbis_encoder import build_instances, vertex_order, verify_hbis_encoding
from retlab.classifier import classify
from retlab.gadget_lab import (
    EmptyIntervalError,
    check_kelk_condition,
    enumerate_maximal_types,
    find_dominance_params,
    make_net,
    make_wr,
    make_x_graph,
    nhat,
    verify_boost_decomposition,
    verify_cycle_gadget,
    verify_degree2_bristle,
    verify_net_zphi,
    verify_pin_neighbourhood,
    verify_two_pin,
    verify_wr3_zphi,
)

from conftest import (
    complete_bipartite,
    fig3_left,
    fig3_right,
    fig4,
    fig5,
    fig15,
    irreflexive_path,
    mutate_hbis,
    random_graph,
    random_hbis,
    random_irreflexive_connected,
    reflexive_clique,
    reflexive_cycle,
    reflexive_p3_with_bristles,
    star,
)


class Deadline:
    def __init__(self, seconds):
        self.start = time.monotonic()
        self.seconds = seconds

    def check(self):
        elapsed = time.monotonic() - self.start
        assert elapsed < self.seconds, "budget %.0fs exceeded: %.1fs" % (
            self.seconds,
            elapsed,
        )


def test_criterion_1_running_example_pipeline():
    deadline = Deadline(1.0)
    h = fig5()
    dec = recognize_hbis(h)
    iv, ie = build_instances(dec)
    # looped vertices left to right: p0=0, r1=1, p1=2, r2=3, p2=4, p3=5, p4=6
    assert iv.constraints == frozenset(
        {(6, 4), (6, 3), (6, 2), (6, 1), (5, 2), (5, 1), (4, 3), (2, 1)}
    )
    order = vertex_order(dec)
    rank = {v: i for i, v in enumerate(order)}
    universe = frozenset(
        (u, v) for u in order[1:] for v in order[1:] if rank[u] > rank[v]
    )
    assert universe - ie.constraints == frozenset({(2, 1), (4, 3)})
    proof = verify_hbis_encoding(h)  # raises on any reconstruction failure
    assert proof.hve.n == 14
    from retlab.hbis_encoder import classify_assignment

    kinds = [classify_assignment(dec, s).kind for s in proof.assignments]
    assert kinds.count("path") == 7 and kinds.count("bristle") == 7
    deadline.check()


def test_criterion_2_randomized_encoding_soundness():
    deadline = Deadline(30.0)
    rng = random.Random(42)
    for _ in range(50):
        h, meta = random_hbis(rng)
        proof = verify_hbis_encoding(h)
        assert proof.hve.n == h.n
    for _ in range(50):
        h, meta = random_hbis(rng)
        bad = mutate_hbis(rng, h, meta)
        assert recognize_hbis(bad) is None
    deadline.check()


def test_criterion_3_counting_oracle_equivalence():
    deadline = Deadline(60.0)
    rng = random.Random(7)
    for _ in range(100):
        g = random_graph(rng, rng.randint(1, 6), loop_prob=0.0)
        h = random_graph(rng, rng.randint(1, 5))
        lists = [
            frozenset(v for v in range(h.n) if rng.random() < 0.7)
            for _ in range(g.n)
        ]
        assert count_list_homs(g, lists, h) == naive_count(g, lists, h)
    deadline.check()


def test_criterion_4_classification_corpus():
    deadline = Deadline(5.0)
    caterpillar = graph(6, [(0, 1), (1, 2), (2, 3), (1, 4), (2, 5)])
    corpus = [
        (reflexive_clique(1), "FP"),
        (reflexive_clique(2), "FP"),
        (reflexive_clique(3), "FP"),
        (star(3), "FP"),
        (star(5), "FP"),
        (complete_bipartite(2, 3), "FP"),
        (irreflexive_path(4), "BIS"),
        (irreflexive_path(5), "BIS"),
        (caterpillar, "BIS"),
        (fig3_right(), "BIS"),
        (fig4(), "BIS"),
        (fig3_left(), "SAT"),
        (make_x_graph(1, 0, 1), "SAT"),
        (make_x_graph(1, 1, 0), "SAT"),
        (make_x_graph(2, 2, 0), "SAT"),
        (make_x_graph(3, 1, 1), "SAT"),
        (make_x_graph(5, 0, 2), "SAT"),
        (make_wr(3), "SAT"),
        (make_net(), "SAT"),
        (reflexive_cycle(5), "SAT"),
        (fig15(), "SAT"),
        (reflexive_p3_with_bristles(1), "BIS"),
        (reflexive_p3_with_bristles(2), "SAT"),
    ]
    assert len(corpus) >= 20
    for h, expected in corpus:
        assert classify(h).cls == expected
    deadline.check()


def test_criterion_5_table_regeneration():
    deadline = Deadline(10.0)

    def sig(t):
        l1, l3 = sorted((len(t.t1), len(t.t3)), reverse=True)
        return (l1, len(t.t2), l3)

    for k1 in range(1, 8):
        types = enumerate_maximal_types(make_x_graph(k1, 0, 1))
        assert len(types) == 6
        expected = {
            (3 + k1, 1, 3 + k1): (3 + k1) * 1 * (3 + k1),
            (3 + k1, 3, 3): (3 + k1) * 3 * 3,
            (3 + k1, 3 + k1, 1): (3 + k1) * (3 + k1) * 1,
            (3, 9, 3): 3 * 9 * 3,
            (3, 9 + k1, 1): 3 * (9 + k1) * 1,
            (1, 9 + 2 * k1, 1): 1 * (9 + 2 * k1) * 1,
        }
        got = {sig(t): nhat(t, 1, 1, 1) for t in types}
        assert got == expected
    for k1 in (3, 4, 5, 6):
        types = enumerate_maximal_types(make_x_graph(k1, 1, 1))
        assert len(types) == 10
        expected = {
            (4 + k1, 1, 4 + k1): (4 + k1) ** 2,
            (4 + k1, 2, 2): (4 + k1) * 4,
            (4 + k1, 3, 3): (4 + k1) * 9,
            (4 + k1, 4 + k1, 1): (4 + k1) ** 2,
            (2, 4, 2): 16,
            (3, 4, 2): 24,
            (2, 6 + k1, 1): 2 * (6 + k1),
            (3, 9, 3): 81,
            (3, 10 + k1, 1): 3 * (10 + k1),
            (1, 12 + 2 * k1, 1): 12 + 2 * k1,
        }
        got = {sig(t): nhat(t, 1, 1, 1) for t in types}
        assert got == expected
    deadline.check()


def test_criterion_6_dominance_certificates():
    deadline = Deadline(5.0)
    for k1 in range(1, 8):
        cert = find_dominance_params("T5", k1)
        assert cert.p >= 1 and cert.q >= 1 and cert.gamma < 1
    for k1 in (3, 4, 5, 6):
        cert = find_dominance_params("T9", k1)
        assert cert.p >= 1 and cert.q >= 1 and cert.gamma < 1
    for k1 in (1, 2):
        with pytest.raises(EmptyIntervalError):
            find_dominance_params("T9", k1)
    deadline.check()


def test_criterion_7_gadget_identity_suite():
    deadline = Deadline(600.0)
    rng = random.Random(11)

    # (a) pin-to-neighbourhood on 10 random (H, u, G)
    done = 0
    while done < 10:
        h = random_graph(rng, rng.randint(2, 5))
        u = rng.randrange(h.n)
        ball = neighbourhood(h, u)
        if not ball:
            continue
        g = random_irreflexive_connected(rng, rng.randint(1, 4))
        lists = [
            frozenset({rng.choice(sorted(ball))}) if rng.random() < 0.5 else ball
            for _ in range(g.n)
        ]
        assert verify_pin_neighbourhood(h, u, g, lists).passed
        done += 1

    # (b) two-pin on 5 instances
    done = 0
    while done < 5:
        h = random_graph(rng, rng.randint(2, 5))
        b1, b2 = rng.randrange(h.n), rng.randrange(h.n)
        cn = common_neighbours(h, [b1, b2])
        if not cn:
            continue
        g = random_irreflexive_connected(rng, rng.randint(1, 3))
        lists = [
            frozenset({rng.choice(sorted(cn))}) if rng.random() < 0.5 else cn
            for _ in range(g.n)
        ]
        assert verify_two_pin(h, b1, b2, g, lists).passed
        done += 1

    # (c) boost for n <= 3, s <= 3
    hp = make_x_graph(1, 1, 1)  # looped leaf 2 has neighbourhood {0, 2}
    pair = frozenset({0, 2})
    instances = [
        graph(1, []),
        graph(2, [(0, 1)]),
        graph(3, [(0, 1), (1, 2), (0, 2)]),
    ]
    for g in instances:
        for s in (1, 2, 3):
            lists = [pair if v % 2 == 0 else frozenset({0}) for v in range(g.n)]
            report = verify_boost_decomposition(hp, 0, 2, g, lists, s)
            assert report.passed, report.details

    # (d) degree-2 bristle on 5 instances
    h1 = graph(3, [(0, 0), (2, 2), (0, 1), (1, 2)])
    h2 = graph(4, [(0, 0), (2, 2), (3, 3), (0, 1), (1, 2), (0, 3)])
    core2 = frozenset({0, 3})
    bristle_instances = [
        (h1, graph(1, []), [frozenset({0})]),
        (h1, graph(2, [(0, 1)]), [frozenset({0})] * 2),
        (h2, graph(1, []), [core2]),
        (h2, graph(2, [(0, 1)]), [core2, frozenset({3})]),
        (h2, graph(3, [(0, 1), (1, 2)]), [core2, frozenset({0}), core2]),
    ]
    for h, g, lists in bristle_instances:
        assert verify_degree2_bristle(h, 0, 1, g, lists).passed

    # (e) the clique-with-chains identity, k in {0, 1}
    tri = graph(3, [(0, 1), (1, 2), (0, 2)])
    for hb in (make_x_graph(0, 0, 3), make_x_graph(1, 0, 3)):
        report = verify_wr3_zphi(hb, 0, tri, [0, 1, 2], 3, 1)
        assert report.passed, report.details

    # (f) the net identity on a 4-vertex instance with t_i <= 2
    h = make_net()
    g = graph(4, [(3, 0), (3, 1), (3, 2)])
    for sizes in ([1, 1, 1], [2, 1, 1]):
        report = verify_net_zphi(h, [0, 1, 2], g, [0, 1, 2], sizes)
        assert report.passed, report.details

    # (g) the cycle gadget: all valid ell on C5, C6 and the extended cycle
    for h, q in ((reflexive_cycle(5), 5), (reflexive_cycle(6), 6), (fig15(), 5)):
        for ell in range(1, q):
            report = verify_cycle_gadget(h, list(range(q)), ell)
            assert report.passed, (q, ell, report.details)

    deadline.check()


def test_criterion_8_kelk_checker():
    deadline = Deadline(5.0)
    for h in (make_x_graph(7, 0, 1), make_x_graph(6, 1, 1), make_x_graph(5, 0, 2)):
        ok, ce = check_kelk_condition(h)
        assert ok and ce is None
    # the pendant blow-up of the looped-path example: a looped center with
    # |Gamma(g)|^s = 4 unlooped pendants
    blow = graph(5, [(0, 0), (0, 1), (0, 2), (0, 3), (0, 4)])
    ok, ce = check_kelk_condition(blow)
    assert ok and ce is None
    bad = make_x_graph(1, 0, 1)
    ok, ce = check_kelk_condition(bad)
    assert not ok and ce is not None
    s, t = ce
    assert s <= common_neighbours(bad, t) and t <= common_neighbours(bad, s)
    assert len(s) * len(t) >= 4  # |F| * |V| = 1 * 4
    deadline.check()


def test_criterion_9_auxiliary_lemmas():
    deadline = Deadline(5.0)
    for b in range(1, 6):
        for a in range(1, 41):
            if a >= 2 * b * math.log(2 * b):
                assert check_stirling_bounds(a, b)
    rng = random.Random(3)
    for _ in range(20):
        d = rng.randint(1, 3)
        lams = [
            Fraction(rng.randint(1, 20), rng.randint(1, 20)) for _ in range(d)
        ]
        n = rng.randint(1, 50)
        r, ts = dirichlet_approx(lams, n)
        assert 1 <= r <= n and len(ts) == d
        for lam, t in zip(lams, ts):
            assert abs(r * lam - t) ** d <= Fraction(1, n)
    deadline.check()
