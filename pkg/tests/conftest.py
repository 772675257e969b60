"""Shared graph builders for the test suite."""

import random

import pytest

from retlab.graph_core import graph


def reflexive_clique(n):
    edges = [(v, v) for v in range(n)]
    edges += [(u, v) for u in range(n) for v in range(u + 1, n)]
    return graph(n, edges)


def reflexive_path(n):
    return graph(n, [(v, v) for v in range(n)] + [(i, i + 1) for i in range(n - 1)])


def reflexive_cycle(q):
    return graph(q, [(v, v) for v in range(q)] + [(i, (i + 1) % q) for i in range(q)])


def irreflexive_path(n):
    return graph(n, [(i, i + 1) for i in range(n - 1)])


def star(n_leaves):
    return graph(n_leaves + 1, [(0, i) for i in range(1, n_leaves + 1)])


def complete_bipartite(a, b):
    return graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def reflexive_p3_with_bristles(count):
    """Looped path 0-1-2 with `count` unlooped pendants on the middle."""
    edges = [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)]
    edges += [(1, 3 + i) for i in range(count)]
    return graph(3 + count, edges)


def fig3_left():
    return reflexive_p3_with_bristles(2)


def fig3_right():
    """Looped pendant 0 on a reflexive triangle 1,2,3, two bristles on 1."""
    edges = [(v, v) for v in range(4)]
    edges += [(0, 1), (1, 2), (2, 3), (1, 3), (1, 4), (1, 5)]
    return graph(6, edges)


def fig4():
    """Chain of reflexive cliques of sizes 2,3,2,3,4,2,2 with 2+4+2+1
    bristles on four of the six joints."""
    looped = list(range(12))
    edges = [(v, v) for v in looped]
    cliques = [
        (0, 1),
        (1, 2, 3),
        (3, 4),
        (4, 5, 6),
        (6, 7, 8, 9),
        (9, 10),
        (10, 11),
    ]
    for k in cliques:
        edges += [(u, v) for i, u in enumerate(k) for v in k[i + 1 :]]
    bristles = {1: 2, 6: 4, 9: 2, 10: 1}
    nxt = 12
    for joint, count in sorted(bristles.items()):
        for _ in range(count):
            edges.append((joint, nxt))
            nxt += 1
    return graph(nxt, edges)


def fig5():
    """Chain of reflexive cliques of sizes 3,3,2,2 with 4+2+1 bristles."""
    edges = [(v, v) for v in range(7)]
    edges += [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4), (4, 5), (5, 6)]
    edges += [(7, 2), (8, 2), (9, 2), (10, 2), (11, 4), (12, 4), (13, 5)]
    return graph(14, edges)


def fig15():
    from retlab.gadget_lab import make_triangle_extended

    return make_triangle_extended("cycle", 5, [1, 3, 4])


def random_hbis(rng):
    """A random chain of reflexive cliques with in-bound bristle counts,
    under a random vertex relabeling.  Returns the graph."""
    big_q = rng.randint(1, 4)
    sizes = [rng.randint(2, 4) for _ in range(big_q + 1)]
    edges = []
    path = [0]
    nxt = 1
    for s in sizes:
        members = [path[-1]] + list(range(nxt, nxt + s - 1))
        nxt += s - 1
        path.append(members[-1])
        edges += [(v, v) for v in members if (v, v) not in edges]
        edges += [(u, v) for i, u in enumerate(members) for v in members[i + 1 :]]
    looped_n = nxt
    edges = [(v, v) for v in range(looped_n)] + [e for e in edges if e[0] != e[1]]
    bristle_joints = []
    for i in range(1, big_q + 1):
        bound = (sizes[i - 1] - 1) * (sizes[i] - 1)
        count = rng.randint(0, bound)
        bristle_joints.append((path[i], count, bound))
        for _ in range(count):
            edges.append((path[i], nxt))
            nxt += 1
    perm = list(range(nxt))
    rng.shuffle(perm)
    g = graph(nxt, [(perm[u], perm[v]) for u, v in edges])
    meta = {
        "joints": [(perm[j], c, b) for j, c, b in bristle_joints],
        "endpoint": perm[0],
    }
    return g, meta


def mutate_hbis(rng, h, meta):
    """Either push one joint's bristle count over its bound or attach a
    bristle to a path endpoint."""
    edges = list(h.edges)
    nxt = h.n
    if meta["joints"] and rng.random() < 0.5:
        joint, count, bound = rng.choice(meta["joints"])
        for _ in range(bound - count + 1):
            edges.append((joint, nxt))
            nxt += 1
    else:
        edges.append((meta["endpoint"], nxt))
        nxt += 1
    return graph(nxt, edges)


def random_graph(rng, n, loop_prob=0.4, edge_prob=0.5):
    edges = []
    for v in range(n):
        if rng.random() < loop_prob:
            edges.append((v, v))
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < edge_prob:
                edges.append((u, v))
    return graph(n, edges)


def random_irreflexive_connected(rng, n):
    """A random connected loop-free graph on n vertices."""
    edges = [(rng.randint(0, v - 1), v) for v in range(1, n)]
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < 0.3:
                edges.append((u, v))
    return graph(n, edges)


@pytest.fixture
def rng():
    return random.Random(20260823)
