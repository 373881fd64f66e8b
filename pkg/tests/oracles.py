"""Slow, obviously-correct reference implementations.

Elements are coordinate tuples and sets are frozensets, so nothing here
shares code with the bitset implementation under test.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import networkx as nx


class Grp:
    def __init__(self, factors):
        self.factors = tuple(factors)
        self.elements = list(itertools.product(*(range(f) for f in self.factors)))
        self.order = len(self.elements)
        self.zero = tuple(0 for _ in self.factors)

    def add(self, a, b):
        return tuple((x + y) % f for x, y, f in zip(a, b, self.factors))

    def neg(self, a):
        return tuple((-x) % f for x, f in zip(a, self.factors))

    def index(self, a):
        i = 0
        for x, f in zip(a, self.factors):
            i = i * f + x
        return i

    def element(self, i):
        out = []
        for f in reversed(self.factors):
            out.append(i % f)
            i //= f
        return tuple(reversed(out))

    def from_bits(self, bits):
        return frozenset(self.element(i) for i in range(self.order) if bits >> i & 1)

    def to_bits(self, s):
        return sum(1 << self.index(a) for a in s)

    def subsets(self):
        for r in range(self.order + 1):
            for c in itertools.combinations(self.elements, r):
                yield frozenset(c)


def sumset(G, A, B):
    return frozenset(G.add(a, b) for a in A for b in B)


def period(G, A):
    return frozenset(g for g in G.elements if frozenset(G.add(a, g) for a in A) == A)


def span(G, A):
    out = {G.zero}
    frontier = set(out)
    while frontier:
        new = {G.add(x, a) for x in frontier for a in A} - out
        out |= new
        frontier = new
    return frozenset(out)


@lru_cache(maxsize=None)
def subgroups(factors):
    G = Grp(factors)
    found = set()
    for A in itertools.chain.from_iterable(itertools.combinations(G.elements, r) for r in range(3)):
        found.add(span(G, A))
    # every subgroup is a join of cyclic ones
    changed = True
    while changed:
        changed = False
        for H in list(found):
            for K in list(found):
                J = span(G, H | K)
                if J not in found:
                    found.add(J)
                    changed = True
    return sorted(found, key=lambda H: (len(H), sorted(G.index(x) for x in H)))


def kappa(G, S, k):
    """min |X+S| - |X| over |X| >= k and |G \\ (X+S)| >= k, over all X."""
    best = None
    for X in G.subsets():
        if len(X) < k:
            continue
        XS = sumset(G, X, S)
        if G.order - len(XS) < k:
            continue
        v = len(XS) - len(X)
        best = v if best is None else min(best, v)
    return best


def fragments(G, S, k):
    kap = kappa(G, S, k)
    out = []
    for X in G.subsets():
        if len(X) < k:
            continue
        XS = sumset(G, X, S)
        if G.order - len(XS) >= k and len(XS) - len(X) == kap:
            out.append(X)
    return out


def atoms(G, S, k):
    fr = fragments(G, S, k)
    m = min(len(F) for F in fr)
    return [F for F in fr if len(F) == m]


def hyper_atoms(G, S):
    k1 = kappa(G, S, 1)
    frag = [H for H in subgroups(G.factors)
            if len(sumset(G, H, S)) < G.order and len(sumset(G, H, S)) - len(H) == k1]
    return [H for H in frag if not any(H < K for K in frag)]


def is_progression(G, A):
    """Some (a, d) with A = {a, a+d, ..., a+(|A|-1)d}; singletons count."""
    if len(A) <= 1:
        return True
    for a in A:
        for d in G.elements:
            x, seen = a, set()
            for _ in range(len(A)):
                seen.add(x)
                x = G.add(x, d)
            if seen == A:
                return True
    return False


def is_vosper(G, S):
    for X in G.subsets():
        if len(X) >= 2 and len(sumset(G, X, S)) < min(G.order - 1, len(X) + len(S)):
            return False
    return True


def cosets(G, H):
    seen, out = set(), []
    for g in G.elements:
        if g in seen:
            continue
        c = frozenset(G.add(g, h) for h in H)
        seen |= c
        out.append(c)
    return out


def quasi_periodic_part(G, A, H):
    non_full = [c & A for c in cosets(G, H) if c & A and c & A != c]
    return non_full[0] if len(non_full) == 1 else None


# -- graphs -------------------------------------------------------------------

def to_nx(n, images):
    g = nx.DiGraph()
    g.add_nodes_from(range(n))
    for u in range(n):
        for v in range(n):
            if u != v and images[u] >> v & 1:
                g.add_edge(u, v)
    return g


def disjoint_path_count(n, images, x, y):
    g = to_nx(n, images)
    if g.has_edge(x, y):
        g.remove_edge(x, y)
        return 1 + (sum(1 for _ in nx.node_disjoint_paths(g, x, y)) if nx.has_path(g, x, y) else 0)
    if not nx.has_path(g, x, y):
        return 0
    return sum(1 for _ in nx.node_disjoint_paths(g, x, y))


def graph_kappa1(n, images):
    best = None
    full = (1 << n) - 1
    for X in range(1, 1 << n):
        img = 0
        for v in range(n):
            if X >> v & 1:
                img |= images[v]
        if img == full:
            continue
        val = bin(img & ~X).count("1")
        best = val if best is None else min(best, val)
    return best


def max_boundary_matching(n, images, X, weights=None):
    """Maximum matching from copies of X into the boundary, via networkx bipartite matching."""
    img = 0
    for v in range(n):
        if X >> v & 1:
            img |= images[v]
    bnd = [v for v in range(n) if img >> v & 1 and not X >> v & 1]
    g = nx.Graph()
    left = []
    for v in range(n):
        if X >> v & 1:
            for c in range((weights or {}).get(v, 1)):
                node = ("x", v, c)
                left.append(node)
                g.add_node(node)
                for y in bnd:
                    if images[v] >> y & 1:
                        g.add_edge(node, ("y", y))
    m = nx.bipartite.maximum_matching(g, top_nodes=left)
    return sum(1 for node in left if node in m)


def lcg_draws(seed, count):
    """Direct transcription of the documented generator, for pinning."""
    a, c, m = 6364136223846793005, 1442695040888963407, 2 ** 64
    x, out = seed % m, []
    for _ in range(count):
        x = (a * x + c) % m
        out.append(x // 2 ** 33)
    return out
