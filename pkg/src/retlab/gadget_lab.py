"""Graph families, counting-reduction gadgets, and their exact verification.

Everything here is desk-scale: each gadget identity is checked by exact
integer counting (the generic backtracking counter or explicit
enumeration serves as the oracle; the closed-form side is the claim
under test).  Dominance certificates use exact rational arithmetic.

Type conventions: a "type" of a homomorphism from the four-layer gadget
J(p, q, t) is the triple (image of A, matched image pairs of (B, B'),
image of A').  The matched-pair reading is deliberate: only matched
B-B' pairs are edges of J, so only those pairs carry information.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .graph_core import (
    Graph,
    graph,
    common_neighbours,
    induced_subgraph,
    neighbourhood,
)
from .counting import (
    count_list_homs,
    count_weighted_list_homs,
    full_lists,
    iter_list_homs,
    stirling2,
)

MAX_TYPE_VERTICES = 16


# ---------------------------------------------------------------------------
# graph families


def make_x_graph(k1, k2, k3):
    """Looped center 0 with k1 unlooped leaves, k2 looped leaves and k3
    looped triangle pairs.  Vertex numbering: center, unlooped leaves,
    looped leaves, then triangle pairs (x, y) in order."""
    if k1 < 0 or k2 < 0 or k3 < 0:
        raise ValueError("leaf counts must be non-negative")
    edges = [(0, 0)]
    nxt = 1
    for _ in range(k1):
        edges.append((0, nxt))
        nxt += 1
    for _ in range(k2):
        edges.extend([(0, nxt), (nxt, nxt)])
        nxt += 1
    for _ in range(k3):
        x, y = nxt, nxt + 1
        edges.extend([(0, x), (0, y), (x, y), (x, x), (y, y)])
        nxt += 2
    return graph(nxt, edges)


def make_wr(q):
    """Looped star: center 0 and q looped leaves."""
    if q < 1:
        raise ValueError("need at least one leaf")
    edges = [(0, 0)]
    for v in range(1, q + 1):
        edges.extend([(0, v), (v, v)])
    return graph(q + 1, edges)


def make_net():
    """Reflexive triangle 0, 1, 2 with looped pendants 3, 4, 5."""
    edges = [(v, v) for v in range(6)]
    edges += [(0, 1), (0, 2), (1, 2), (0, 3), (1, 4), (2, 5)]
    return graph(6, edges)


def make_triangle_extended(kind, q, apex_indices):
    """Reflexive cycle (or path) 0..q-1 with, for each i in apex_indices,
    an extra looped apex adjacent to core vertices i and i+1 (mod q for
    cycles).  Apexes are numbered q, q+1, ... in index order."""
    apex_indices = sorted(set(apex_indices))
    if kind == "cycle":
        if q < 3:
            raise ValueError("cycle length must be at least 3")
        if apex_indices and not (0 <= apex_indices[0] and apex_indices[-1] < q):
            raise ValueError("apex index out of range")
        core_edges = [(i, (i + 1) % q) for i in range(q)]
    elif kind == "path":
        if q < 2:
            raise ValueError("path needs at least two vertices")
        if apex_indices and not (0 <= apex_indices[0] and apex_indices[-1] < q - 1):
            raise ValueError("apex index out of range")
        core_edges = [(i, i + 1) for i in range(q - 1)]
    else:
        raise ValueError("kind must be 'cycle' or 'path'")
    edges = [(v, v) for v in range(q)] + core_edges
    nxt = q
    for i in apex_indices:
        edges.extend([(nxt, nxt), (nxt, i), (nxt, (i + 1) % q)])
        nxt += 1
    return graph(nxt, edges)


# ---------------------------------------------------------------------------
# the four-layer gadget J(p, q, t) and homomorphism types


@dataclass(frozen=True)
class JGraph:
    p: int
    q: int
    t: int
    graph: Graph
    a: tuple
    b: tuple
    b2: tuple
    a2: tuple

    @property
    def matching(self):
        return tuple(zip(self.b, self.b2))


def make_j_graph(p, q, t):
    """Independent sets A, B, B', A' of sizes pt, qt, qt, pt with edges
    A x B, a perfect matching between B and B' (i-th to i-th), and
    B' x A'."""
    if p < 1 or q < 1 or t < 1:
        raise ValueError("parameters must be positive")
    a = tuple(range(p * t))
    b = tuple(range(p * t, p * t + q * t))
    b2 = tuple(range(p * t + q * t, p * t + 2 * q * t))
    a2 = tuple(range(p * t + 2 * q * t, 2 * p * t + 2 * q * t))
    edges = [(x, y) for x in a for y in b]
    edges += list(zip(b, b2))
    edges += [(x, y) for x in b2 for y in a2]
    return JGraph(p, q, t, graph(2 * p * t + 2 * q * t, edges), a, b, b2, a2)


@dataclass(frozen=True)
class HType:
    t1: frozenset
    t2: frozenset  # ordered pairs (x, y) with {x, y} an edge of H
    t3: frozenset

    @property
    def b_side(self):
        return frozenset(x for x, _ in self.t2)

    @property
    def b2_side(self):
        return frozenset(y for _, y in self.t2)

    def contains(self, other):
        return (
            other.t1 <= self.t1 and other.t2 <= self.t2 and other.t3 <= self.t3
        )

    def symmetric(self):
        return HType(self.t3, frozenset((y, x) for x, y in self.t2), self.t1)

    def sort_key(self):
        return (sorted(self.t1), sorted(self.t2), sorted(self.t3))


def htype_of(h, j, target):
    """The type of a homomorphism h (indexable by vertex of j.graph)."""
    for u, v in j.graph.edges:
        if not target.has_edge(h[u], h[v]):
            raise ValueError("map is not a homomorphism: edge (%d, %d)" % (u, v))
    return HType(
        frozenset(h[v] for v in j.a),
        frozenset((h[u], h[v]) for u, v in j.matching),
        frozenset(h[v] for v in j.a2),
    )


def is_nonempty_type(t, j, target):
    """The three conditions for a type to be realized by some
    homomorphism from j.graph: all parts non-empty, T1 completely joined
    to the B-side, and the B'-side completely joined to T3."""
    del j  # realizability does not depend on the gadget's dimensions
    if not (t.t1 and t.t2 and t.t3):
        return False
    if any(not target.has_edge(x, y) for x in t.t1 for y in t.b_side):
        return False
    if any(not target.has_edge(x, y) for x in t.b2_side for y in t.t3):
        return False
    return True


def _closed_sets(h):
    """Non-empty vertex sets fixed by applying the common-neighbourhood
    operator twice (and whose common neighbourhood is non-empty)."""
    masks = [0] * h.n
    for v in range(h.n):
        for u in h.neighbours(v):
            masks[v] |= 1 << u
    everything = (1 << h.n) - 1

    def cn(mask):
        out = everything
        m = mask
        while m:
            v = (m & -m).bit_length() - 1
            out &= masks[v]
            m &= m - 1
        return out

    closed = []
    for mask in range(1, 1 << h.n):
        first = cn(mask)
        if first and cn(first) == mask:
            closed.append(mask)
    return closed, cn


def _mask_to_set(mask):
    out = set()
    while mask:
        v = (mask & -mask).bit_length() - 1
        out.add(v)
        mask &= mask - 1
    return frozenset(out)


def enumerate_maximal_types(h):
    """All maximal types for homomorphisms from the four-layer gadget to
    h, deduplicated up to symmetry (swapping the two halves).

    Candidates are pairs (B, B') of common-neighbourhood-closed sets that
    cover each other through edges; each candidate is completed to
    (cn(B), E(B, B'), cn(B')) and maximality is cross-checked by
    pairwise containment.
    """
    if h.n > MAX_TYPE_VERTICES:
        raise ValueError("graph too large for type enumeration")
    closed, cn = _closed_sets(h)
    candidates = []
    for bmask in closed:
        bset = _mask_to_set(bmask)
        for b2mask in closed:
            b2set = _mask_to_set(b2mask)
            if any(not (h.neighbours(x) & b2set) for x in bset):
                continue
            if any(not (h.neighbours(y) & bset) for y in b2set):
                continue
            t2 = frozenset(
                (x, y) for x in bset for y in b2set if h.has_edge(x, y)
            )
            candidates.append(
                HType(_mask_to_set(cn(bmask)), t2, _mask_to_set(cn(b2mask)))
            )
    maximal = [
        t
        for t in candidates
        if not any(t is not u and u.contains(t) and u != t for u in candidates)
    ]
    out = []
    seen = set()
    for t in sorted(maximal, key=HType.sort_key):
        key = min(tuple(map(tuple, t.sort_key())), tuple(map(tuple, t.symmetric().sort_key())))
        if key not in seen:
            seen.add(key)
            out.append(t)
    return out


def nhat(t, p, q, tt):
    """The cardinality-power estimate |T1|^pt |T2|^qt |T3|^pt."""
    return (
        len(t.t1) ** (p * tt) * len(t.t2) ** (q * tt) * len(t.t3) ** (p * tt)
    )


def count_type(t, j, target, budget=10**6):
    """Exact number of homomorphisms from j.graph to target of type t,
    by enumeration."""
    if target.n ** j.graph.n > budget:
        raise ValueError("instance too large to enumerate")
    total = 0
    for h in iter_list_homs(j.graph, full_lists(j.graph, target), target):
        if htype_of(h, j, target) == t:
            total += 1
    return total


# ---------------------------------------------------------------------------
# dominance certificates


class EmptyIntervalError(RuntimeError):
    """No ratio q/p satisfies every row inequality strictly."""


@dataclass(frozen=True)
class DominanceCertificate:
    variant: str
    k1: int
    p: int
    q: int
    gamma: Fraction  # max over rows of the t=1 ratio; strictly below 1
    rows: tuple  # (|T1|*|T3|, |T2|) per table row, dominant first


def _dominance_rows(variant, k1):
    if k1 < 1:
        raise ValueError("k1 must be positive")
    if variant == "T5":
        h = make_x_graph(k1, 0, 1)
        dominant_sig = (3, 9 + k1)
    elif variant == "T9":
        h = make_x_graph(k1, 1, 1)
        dominant_sig = (3, 10 + k1)
    else:
        raise ValueError("variant must be 'T5' or 'T9'")
    rows = [
        (len(t.t1) * len(t.t3), len(t.t2)) for t in enumerate_maximal_types(h)
    ]
    dominant = [r for r in rows if r == dominant_sig]
    if len(dominant) != 1:
        raise AssertionError("dominant row not identified uniquely")
    others = [r for r in rows if r != dominant_sig]
    return dominant_sig, others


def _satisfied(row, dom, p, q):
    a, c = row
    ad, cd = dom
    return a**p * c**q < ad**p * cd**q


def find_dominance_params(variant, k1, max_steps=64):
    """Positive integers p, q making the designated table row dominate
    every other row of its maximal-type table, with the largest t=1
    ratio as an exact certificate.

    The ratio q/p is located by mediant (Stern-Brocot) search, so the
    returned pair minimizes p + q.  All comparisons are exact integer
    power comparisons; an unsatisfiable system raises EmptyIntervalError.
    """
    dom, others = _dominance_rows(variant, k1)
    ad, cd = dom
    lo = (0, 1)  # q/p as (numerator, denominator)
    hi = (1, 0)
    for _ in range(max_steps):
        num, den = lo[0] + hi[0], lo[1] + hi[1]
        p, q = den, num
        need_larger = need_smaller = False
        for a, c in others:
            if _satisfied((a, c), dom, p, q):
                continue
            if c < cd:
                need_larger = True  # ratio too small for this row
            elif c > cd:
                need_smaller = True  # ratio too large for this row
            else:
                # |T2| ties the dominant row; no ratio can ever help.
                raise EmptyIntervalError(
                    "row (%d, %d) can never be dominated" % (a, c)
                )
        if need_larger and need_smaller:
            raise EmptyIntervalError(
                "conflicting bounds at q/p = %d/%d" % (q, p)
            )
        if need_larger:
            lo = (num, den)
        elif need_smaller:
            hi = (num, den)
        else:
            gamma = max(
                Fraction(a**p * c**q, ad**p * cd**q) for a, c in others
            )
            assert gamma < 1
            return DominanceCertificate(
                variant, k1, p, q, gamma, (dom,) + tuple(others)
            )
    raise EmptyIntervalError(
        "no admissible ratio within %d mediant steps" % max_steps
    )


# ---------------------------------------------------------------------------
# neighbourhood-ball decomposition and pinned configurations


@dataclass(frozen=True)
class BallDecomposition:
    """The neighbourhood of a looped center: degree-2 looped neighbours,
    looped triangle pairs, and unlooped pendants (within the ball)."""

    h: Graph  # the ball itself (center universal)
    center: int
    degree2: tuple  # looped neighbours whose only ball-neighbours are
    # themselves and the center
    triangles: tuple  # pairs (x, y) of adjacent looped neighbours
    unlooped: tuple

    @property
    def k(self):
        return len(self.degree2)

    @property
    def q(self):
        return len(self.degree2) + len(self.triangles)

    @property
    def x_vertices(self):
        return self.degree2 + tuple(x for x, _ in self.triangles)

    def state(self, i):
        """The closed neighbourhood of the i-th direction vertex."""
        return frozenset(neighbourhood(self.h, self.x_vertices[i]))


def decompose_ball(h, b):
    """Decompose a graph in which b is a looped universal vertex into
    the center / degree-2 / triangle-pair / unlooped shape.  Raises
    ValueError when the graph is not of that shape."""
    if not h.is_looped(b):
        raise ValueError("center must be looped")
    if neighbourhood(h, b) != frozenset(range(h.n)):
        raise ValueError("center must be adjacent to every vertex")
    unlooped = []
    degree2 = []
    paired = {}
    for v in range(h.n):
        if v == b:
            continue
        nbrs = neighbourhood(h, v)
        if not h.is_looped(v):
            if nbrs != frozenset({b}):
                raise ValueError("unlooped vertex %d has extra neighbours" % v)
            unlooped.append(v)
        elif nbrs == frozenset({v, b}):
            degree2.append(v)
        elif len(nbrs) == 3:
            (w,) = nbrs - {v, b}
            if not h.is_looped(w) or neighbourhood(h, w) != frozenset({w, b, v}):
                raise ValueError("vertex %d is not in a pendant triangle" % v)
            paired[min(v, w)] = max(v, w)
        else:
            raise ValueError("looped vertex %d has degree > 3" % v)
    triangles = tuple(sorted(paired.items()))
    return BallDecomposition(
        h, b, tuple(sorted(degree2)), triangles, tuple(sorted(unlooped))
    )


def pinned_configurations(dec, z):
    """The number of tuples (z, z_1, ..., z_k) with each z_i adjacent to
    both z and the i-th degree-2 vertex, counted structurally."""
    if not 0 <= z < dec.h.n:
        raise ValueError("vertex out of range")
    f = 1
    for x in dec.degree2:
        f *= len(neighbourhood(dec.h, z) & neighbourhood(dec.h, x))
    return f


# ---------------------------------------------------------------------------
# gadget reports


@dataclass(frozen=True)
class GadgetReport:
    name: str
    params: tuple  # ordered (key, value) pairs
    lhs: int
    rhs: int
    passed: bool
    details: tuple = ()

    def format(self):
        return "%s %s lhs=%d rhs=%d" % (
            "PASS" if self.passed else "FAIL",
            self.name,
            self.lhs,
            self.rhs,
        )


def _report(name, params, lhs, rhs, extra_ok=True, details=()):
    return GadgetReport(
        name, tuple(params), lhs, rhs, lhs == rhs and extra_ok, tuple(details)
    )


# ---------------------------------------------------------------------------
# pinning gadgets


def _check_pin_lists(lists, allowed):
    for v, s in enumerate(lists):
        if len(s) != 1 and s != allowed:
            raise ValueError(
                "list of vertex %d must be a singleton or the full ball" % v
            )
        if not s <= allowed:
            raise ValueError("list of vertex %d leaves the ball" % v)


def verify_pin_neighbourhood(h, u, g, lists):
    """One apex joined to all of g and pinned to u restricts every image
    to the neighbourhood of u; both counts must agree exactly.

    The lists use the vertex ids of h and must each be a singleton or
    all of the neighbourhood of u.
    """
    ball = neighbourhood(h, u)
    _check_pin_lists(lists, ball)
    sub, relabel = induced_subgraph(h, ball)
    lhs = count_list_homs(
        g, [frozenset(relabel[x] for x in s) for s in lists], sub
    )
    apex = g.n
    g2 = graph(g.n + 1, list(g.edges) + [(apex, v) for v in range(g.n)])
    everything = frozenset(range(h.n))
    lists2 = [s if len(s) == 1 else everything for s in lists]
    lists2.append(frozenset({u}))
    rhs = count_list_homs(g2, lists2, h)
    return _report("pin-neighbourhood", [("u", u), ("n", g.n)], lhs, rhs)


def verify_two_pin(h, b1, b2, g, lists):
    """Two apexes pinned to b1 and b2 and joined to all of g restrict
    every image to the common neighbourhood of b1 and b2."""
    ball = common_neighbours(h, [b1, b2])
    if ball:
        _check_pin_lists(lists, ball)
        sub, relabel = induced_subgraph(h, ball)
        lhs = count_list_homs(
            g, [frozenset(relabel[x] for x in s) for s in lists], sub
        )
    else:
        lhs = 0 if g.n else 1
    w1, w2 = g.n, g.n + 1
    edges = list(g.edges) + [(w, v) for w in (w1, w2) for v in range(g.n)]
    g2 = graph(g.n + 2, edges)
    everything = frozenset(range(h.n))
    lists2 = [s if len(s) == 1 else everything for s in lists]
    lists2 += [frozenset({b1}), frozenset({b2})]
    rhs = count_list_homs(g2, lists2, h)
    return _report("two-pin", [("b1", b1), ("b2", b2), ("n", g.n)], lhs, rhs)


def verify_boost_decomposition(hp, b, r1, g, lists, s):
    """Per-vertex independent sets joined to a pin on r1 weight each
    image u by |common neighbours of u and r1|^s, which is 2^s exactly
    on {b, r1}.  Checks that the full homomorphisms (images of g inside
    {b, r1}) number exactly 2^{s n} times the two-vertex target count,
    and that full plus non-full equals the total.
    """
    pair = frozenset({b, r1})
    if neighbourhood(hp, r1) != pair or not hp.is_looped(b):
        raise ValueError("r1 must be looped with neighbourhood exactly {b, r1}")
    for u in range(hp.n):
        if u not in pair and len(neighbourhood(hp, u) & pair) > 1:
            raise ValueError(
                "vertex %d shares two neighbours with the pair" % u
            )
    for v, lst in enumerate(lists):
        if not (lst == pair or (len(lst) == 1 and lst <= pair)):
            raise ValueError("list of vertex %d must live on the pair" % v)
    n = g.n
    pin = n
    edges = list(g.edges)
    nxt = n + 1
    for v in range(n):
        for _ in range(s):
            edges.extend([(nxt, v), (nxt, pin)])
            nxt += 1
    g2 = graph(nxt, edges)
    everything = frozenset(range(hp.n))
    lists2 = [lst if len(lst) == 1 else everything for lst in lists]
    lists2.append(frozenset({r1}))
    lists2.extend([everything] * (nxt - n - 1))

    z_full = z_rest = 0
    for h in iter_list_homs(g2, lists2, hp):
        if all(h[v] in pair for v in range(n)):
            z_full += 1
        else:
            z_rest += 1
    sub, relabel = induced_subgraph(hp, pair)
    target = count_list_homs(
        g, [frozenset(relabel[x] for x in lst) for lst in lists], sub
    )
    rhs = 2 ** (s * n) * target
    total = count_list_homs(g2, lists2, hp)
    return _report(
        "boost",
        [("b", b), ("r1", r1), ("n", n), ("s", s)],
        z_full,
        rhs,
        extra_ok=(total == z_full + z_rest),
        details=("z0=%d" % z_rest, "total=%d" % total),
    )


def verify_degree2_bristle(h, b, g_vertex, g, lists):
    """Replacing an unlooped neighbour g_vertex of b (inside the ball of
    b) by |Gamma(g_vertex)|^s pendants is compensated, on the instance
    side, by pins to b and g_vertex plus per-vertex independent sets of
    size s.  Both counts must agree exactly; a weighted recount
    cross-checks the blow-up.
    """
    gamma_g = neighbourhood(h, g_vertex)
    ball = neighbourhood(h, b)
    if h.is_looped(g_vertex) or not h.is_looped(b):
        raise ValueError("need a looped center with an unlooped neighbour")
    if g_vertex not in ball or len(gamma_g) < 2:
        raise ValueError("the unlooped vertex needs at least two neighbours")
    for u in ball - {g_vertex}:
        if len(neighbourhood(h, u) & gamma_g) != 1:
            raise ValueError(
                "vertex %d shares more than the center with the pendant" % u
            )
    # smallest exponent e with |Gamma(g)|^e >= |Gamma(b)|, doubled
    e = 0
    while len(gamma_g) ** e < len(ball):
        e += 1
    s = 2 * e

    keep = sorted(ball - {g_vertex})
    relabel = {v: i for i, v in enumerate(keep)}
    blow = len(gamma_g) ** s
    hp_edges = [
        (relabel[u], relabel[v])
        for u, v in h.edges
        if u in relabel and v in relabel
    ]
    hp_edges += [(relabel[b], len(keep) + i) for i in range(blow)]
    hp = graph(len(keep) + blow, hp_edges)

    core = frozenset(relabel)
    for v, lst in enumerate(lists):
        if not (lst == core or (len(lst) == 1 and lst <= core)):
            raise ValueError("list of vertex %d must live on the kept ball" % v)
    everything_hp = frozenset(range(hp.n))
    lists_hp = [
        frozenset(relabel[x] for x in lst) if len(lst) == 1 else everything_hp
        for lst in lists
    ]
    rhs = count_list_homs(g, lists_hp, hp)

    n = g.n
    beta, gam = n, n + 1
    edges = list(g.edges) + [(beta, v) for v in range(n)]
    nxt = n + 2
    for v in range(n):
        for _ in range(s):
            edges.extend([(nxt, v), (nxt, gam)])
            nxt += 1
    g2 = graph(nxt, edges)
    everything = frozenset(range(h.n))
    lists2 = [lst if len(lst) == 1 else everything for lst in lists]
    lists2 += [frozenset({b}), frozenset({g_vertex})]
    lists2 += [everything] * (nxt - n - 2)
    lhs = count_list_homs(g2, lists2, h)

    # Weighted cross-check over the un-blown ball.
    sub, sub_relabel = induced_subgraph(h, ball)
    weights = [1] * sub.n
    weights[sub_relabel[g_vertex]] = blow
    lists_sub = [
        frozenset(sub_relabel[x] for x in lst)
        if len(lst) == 1
        else frozenset(range(sub.n))
        for lst in lists
    ]
    weighted = count_weighted_list_homs(g, lists_sub, sub, weights)
    return _report(
        "degree2-bristle",
        [("b", b), ("g", g_vertex), ("n", n), ("s", s)],
        lhs,
        rhs,
        extra_ok=(weighted == rhs),
        details=("weighted=%d" % weighted,),
    )


# ---------------------------------------------------------------------------
# the clique-with-pendant-chains reduction (looped star with 3+ directions)


@dataclass(frozen=True)
class Wr3Instance:
    graph: Graph
    lists: tuple
    pins: tuple  # pin vertex per direction
    cliques: dict = field(compare=False)  # G-vertex -> clique vertex ids
    chains: dict = field(compare=False)  # clique vertex -> chain ids per i
    edge_cliques: dict = field(compare=False)  # G-edge -> clique vertex ids


def build_wr3_instance(g, terminals, dec, s, t):
    """The multiterminal-cut encoding: a size-s clique per vertex of g
    (each clique vertex carrying one pendant chain per degree-2
    direction), a size-t clique per edge fully joined to both endpoint
    cliques, and per-direction pins wired to the terminal cliques."""
    terminals = list(terminals)
    if len(terminals) != dec.q:
        raise ValueError("need exactly one terminal per direction")
    k = dec.k
    xs = dec.x_vertices
    edges = []
    pins = tuple(range(dec.q))
    nxt = dec.q

    def clique_with_chains(size):
        nonlocal nxt
        members = list(range(nxt, nxt + size))
        nxt += size
        edges.extend(
            (u, v) for i, u in enumerate(members) for v in members[i + 1 :]
        )
        chain = {}
        for w in members:
            ids = list(range(nxt, nxt + k))
            nxt += k
            chain[w] = ids
            for i, c in enumerate(ids):
                edges.extend([(w, c), (c, pins[i])])
        return members, chain

    cliques = {}
    chains = {}
    for v in range(g.n):
        members, chain = clique_with_chains(s)
        cliques[v] = members
        chains.update(chain)
    edge_cliques = {}
    for e in sorted(g.edges):
        members, chain = clique_with_chains(t)
        edge_cliques[e] = members
        chains.update(chain)
        u, v = e
        edges.extend(
            (w, c) for w in cliques[u] + cliques[v] for c in members
        )
    for i, tau in enumerate(terminals):
        edges.extend((w, pins[i]) for w in cliques[tau])
    j = graph(nxt, edges)
    everything = frozenset(range(dec.h.n))
    lists = [everything] * nxt
    for i in range(dec.q):
        lists[pins[i]] = frozenset({xs[i]})
    return Wr3Instance(j, tuple(lists), pins, cliques, chains, edge_cliques)


def _wr3_full_count(inst, g, phi, dec):
    """Number of homomorphisms that are full and whose per-vertex states
    follow phi, by restricted enumeration.  Restricting each clique to
    its target state loses no such homomorphism."""
    k = dec.k
    xs = dec.x_vertices
    states = {v: dec.state(phi[v] - 1) for v in range(g.n)}
    lists = list(inst.lists)
    for v in range(g.n):
        for w in inst.cliques[v]:
            lists[w] = states[v]
    for e, members in inst.edge_cliques.items():
        shared = states[e[0]] & states[e[1]]
        for w in members:
            lists[w] = shared
    configs = {
        z: set(
            product(
                *[
                    sorted(
                        neighbourhood(dec.h, z) & neighbourhood(dec.h, xs[i])
                    )
                    for i in range(k)
                ]
            )
        )
        for z in range(dec.h.n)
    }
    count = 0
    for h in iter_list_homs(inst.graph, lists, dec.h):
        ok = True
        for v in range(g.n):
            seen = set()
            for w in inst.cliques[v]:
                seen.add((h[w],) + tuple(h[c] for c in inst.chains[w]))
            want = {
                (z,) + cfg for z in states[v] for cfg in configs[z]
            }
            if seen != want:
                ok = False
                break
        if ok:
            count += 1
    return count


def verify_wr3_zphi(hb, b, g, terminals, s, t):
    """For every separating function phi, the number of full
    homomorphisms agreeing with phi must equal the closed form
    surj(s, 2^k+2)^n * (2^k)^(t |Cut|) * (2^k+2)^(t (m - |Cut|))."""
    from .counting import separating_functions, cut_edges

    dec = decompose_ball(hb, b)
    inst = build_wr3_instance(g, terminals, dec, s, t)
    k = dec.k
    n, m = g.n, len(g.edges)
    surj = stirling2(s, 2**k + 2)
    lhs_total = rhs_total = 0
    all_match = True
    details = []
    for phi in separating_functions(g, terminals):
        cut = len(cut_edges(g, phi))
        formula = surj**n * (2**k) ** (t * cut) * (2**k + 2) ** (t * (m - cut))
        observed = _wr3_full_count(inst, g, phi, dec)
        lhs_total += observed
        rhs_total += formula
        if observed != formula:
            all_match = False
        details.append("phi=%s cut=%d z=%d" % ("".join(map(str, phi)), cut, observed))
    return _report(
        "wr3-zphi",
        [("k", k), ("q", dec.q), ("s", s), ("t", t), ("n", n), ("m", m)],
        lhs_total,
        rhs_total,
        extra_ok=all_match,
        details=details,
    )


# ---------------------------------------------------------------------------
# the net reduction


def build_net_instance(g, terminals, h, w_labels, sizes):
    """Per-vertex stars to the three terminals plus, per edge of g,
    three independent sets (of the given sizes) joined to the endpoints
    and to one terminal each."""
    terminals = list(terminals)
    if len(terminals) != 3 or len(w_labels) != 3 or len(sizes) != 3:
        raise ValueError("the construction uses exactly three terminals")
    edges = []
    for v in range(g.n):
        edges.extend((v, tau) for tau in terminals if tau != v)
    nxt = g.n
    blocks = {}
    for e in sorted(g.edges):
        u, v = e
        per_edge = []
        for i in range(3):
            ids = list(range(nxt, nxt + sizes[i]))
            nxt += sizes[i]
            per_edge.append(ids)
            for c in ids:
                edges.extend([(c, u), (c, v), (c, terminals[i])])
        blocks[e] = per_edge
    j = graph(nxt, edges)
    everything = frozenset(range(h.n))
    lists = [everything] * nxt
    for i, tau in enumerate(terminals):
        lists[tau] = frozenset({w_labels[i]})
    return j, tuple(lists), blocks


def verify_net_zphi(h, w_labels, g, terminals, sizes):
    """Per separating function phi, the count with every g-vertex pinned
    to its colour must equal 3^{tm} * prod_i (|Gamma(w_i)|/3)^{t_i |Mon_i|},
    and the unpinned total must equal the sum over phi."""
    from .counting import separating_functions

    j, lists, _ = build_net_instance(g, terminals, h, w_labels, sizes)
    t = sum(sizes)
    m = len(g.edges)
    degrees = [len(neighbourhood(h, w)) for w in w_labels]
    lhs_total = rhs_total = 0
    all_match = True
    details = []
    for phi in separating_functions(g, terminals):
        mono = [0, 0, 0]
        for u, v in g.edges:
            if phi[u] == phi[v]:
                mono[phi[u] - 1] += 1
        formula = Fraction(3) ** (t * m)
        for i in range(3):
            formula *= Fraction(degrees[i], 3) ** (sizes[i] * mono[i])
        if formula.denominator != 1:
            raise AssertionError("per-phi formula is not integral")
        formula = formula.numerator
        pinned = list(lists)
        for v in range(g.n):
            pinned[v] = frozenset({w_labels[phi[v] - 1]})
        observed = count_list_homs(j, pinned, h)
        lhs_total += observed
        rhs_total += formula
        if observed != formula:
            all_match = False
        details.append("phi=%s z=%d" % ("".join(map(str, phi)), observed))
    grand = count_list_homs(j, list(lists), h)
    return _report(
        "net-zphi",
        [("t", tuple(sizes)), ("n", g.n), ("m", m)],
        lhs_total,
        rhs_total,
        extra_ok=all_match and grand == lhs_total,
        details=details + ["total=%d" % grand],
    )


# ---------------------------------------------------------------------------
# the two-list simulation gadget on triangle-extended cycles


@dataclass(frozen=True)
class CycleGadget:
    graph: Graph
    lists: tuple
    anchors: tuple  # the two vertices standing in for the replaced one
    ell: int


def build_cycle_gadget(h, core, ell):
    """The doubled-path gadget whose anchor pair can only map (jointly)
    to c_0 or c_ell of the given reflexive cycle.

    core lists the cycle vertices of h in cyclic order; both arc
    parities are built as mirror images of the construction for one
    parity.  Pins use singleton lists at the arc midpoints.
    """
    q = len(core)
    if not 1 <= ell <= q - 1:
        raise ValueError("ell must be between 1 and q - 1")
    edges = []
    pinned = {}
    nxt = 0

    def fresh():
        nonlocal nxt
        nxt += 1
        return nxt - 1

    def arc(length, midpoints):
        """Pairs 0..half-1 of a doubled path ending in the pinned
        midpoint vertices; returns the anchor pair (index 0)."""
        if length % 2 == 0:
            half = length // 2
            pairs = [(fresh(), fresh()) for _ in range(half)]
            ends = [fresh()]
        else:
            half = length // 2 + 1
            pairs = [(fresh(), fresh()) for _ in range(half)]
            ends = [fresh(), fresh()]
        for a, b in pairs:
            edges.append((a, b))
        for (a, b), (c, d) in zip(pairs, pairs[1:]):
            edges.extend([(a, c), (a, d), (b, c), (b, d)])
        last = pairs[-1]
        for i, e in enumerate(ends):
            pinned[e] = midpoints[i]
            edges.extend([(last[0], e), (last[1], e)])
        return pairs[0]

    if ell % 2 == 0:
        first = arc(ell, [core[ell // 2]])
    else:
        first = arc(ell, [core[(ell + 1) // 2], core[ell // 2]])
    back = q - ell
    if back % 2 == 0:
        mid = [core[((q + ell) // 2) % q]]
    else:
        mid = [core[((q + ell + 1) // 2) % q], core[((q + ell) // 2) % q]]
    second = arc(back, mid)
    # glue: identify the two anchor pairs
    merge = {second[0]: first[0], second[1]: first[1]}
    final_edges = set()
    for a, b in edges:
        final_edges.add((merge.get(a, a), merge.get(b, b)))
    keep = sorted(set(range(nxt)) - set(merge))
    relabel = {v: i for i, v in enumerate(keep)}
    j = graph(
        len(keep), [(relabel[a], relabel[b]) for a, b in final_edges]
    )
    everything = frozenset(range(h.n))
    lists = [everything] * j.n
    for v, target in pinned.items():
        lists[relabel[v]] = frozenset({target})
    anchors = (relabel[first[0]], relabel[first[1]])
    return CycleGadget(j, tuple(lists), anchors, ell)


def verify_cycle_gadget(h, core, ell):
    """Checks the two structural claims by full enumeration: the gadget
    has exactly two list homomorphisms, one sending the anchor pair
    (constantly) to c_0 and one to c_ell; and substituting the gadget
    for a {c_0, c_ell}-listed vertex preserves counts on a small probe
    instance."""
    gadget = build_cycle_gadget(h, core, ell)
    c0, cl = core[0], core[ell]
    homs = list(iter_list_homs(gadget.graph, list(gadget.lists), h))
    a0, a1 = gadget.anchors
    images = sorted(h[a0] for h in homs)
    shape_ok = (
        len(homs) == 2
        and all(hh[a0] == hh[a1] for hh in homs)
        and images == sorted({c0, cl})
    )

    # substitution probe: one constrained vertex adjacent to a pinned one
    probe = graph(2, [(0, 1)])
    probe_lists = [frozenset({c0, cl}), frozenset({c0})]
    direct = count_list_homs(probe, probe_lists, h)
    n0 = gadget.graph.n
    edges = list(gadget.graph.edges)
    pin = n0
    edges.extend([(a0, pin), (a1, pin)])
    combined = graph(n0 + 1, edges)
    combined_lists = list(gadget.lists) + [frozenset({c0})]
    substituted = count_list_homs(combined, combined_lists, h)
    return _report(
        "cycle-gadget",
        [("q", len(core)), ("ell", ell)],
        len(homs),
        2,
        extra_ok=shape_ok and direct == substituted,
        details=(
            "anchor images=%s" % images,
            "probe direct=%d substituted=%d" % (direct, substituted),
        ),
    )


# ---------------------------------------------------------------------------
# the two-dominant-state criterion


def universal_set(h):
    return frozenset(
        v for v in range(h.n) if neighbourhood(h, v) == frozenset(range(h.n))
    )


def check_kelk_condition(h):
    """Exhaustive test of the two-dominant-state criterion.

    Returns (True, None) when every mutually-covering pair (S, T) either
    touches the universal set F or satisfies |S||T| < |F||V|; otherwise
    (False, (S, T)) with a counterexample.  Requires a proper non-empty
    universal set.
    """
    if h.n > MAX_TYPE_VERTICES:
        raise ValueError("graph too large for exhaustive pair scan")
    f = universal_set(h)
    if not f or len(f) == h.n:
        raise ValueError("universal set must be proper and non-empty")
    masks = [0] * h.n
    for v in range(h.n):
        for u in h.neighbours(v):
            masks[v] |= 1 << u
    everything = (1 << h.n) - 1

    def cn(mask):
        out = everything
        m = mask
        while m:
            v = (m & -m).bit_length() - 1
            out &= masks[v]
            m &= m - 1
        return out

    fmask = 0
    for v in f:
        fmask |= 1 << v
    bound = len(f) * h.n
    for smask in range(1, 1 << h.n):
        t_allowed = cn(smask)
        ssize = bin(smask).count("1")
        # Enumerate T as submasks of the common neighbourhood of S.
        tmask = t_allowed
        while tmask:
            if smask & ~cn(tmask) == 0:  # S inside common nbhd of T
                if (
                    smask != fmask
                    and tmask != fmask
                    and ssize * bin(tmask).count("1") >= bound
                ):
                    return False, (_mask_to_set(smask), _mask_to_set(tmask))
            tmask = (tmask - 1) & t_allowed
    return True, None
