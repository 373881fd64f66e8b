"""Finite digraphs, Cayley graphs, vertex-disjoint paths and boundary matchings."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from . import _kernels
from ._tables import image_table, popcounts
from .errors import (
    HypothesesUnmet,
    InputError,
    NotGenerating,
    OrderCapExceeded,
    ParseError,
    TheoremViolation,
    VertexOutOfRange,
    ZeroNotInS,
)
from .groups import (
    AbelianGroup,
    GroupSubset,
    Subgroup,
    as_subgroup,
    bit_indices,
    default_order_cap,
    is_generating_bits,
    quotient_view,
)

MAX_VERTICES = _kernels.MAX_VERTICES


@dataclass(frozen=True)
class Digraph:
    """Directed graph on vertices ``0..n-1``; ``images[v]`` is the bitset of ``Gamma(v)``."""

    n: int
    images: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VERTICES:
            raise InputError(f"vertex count must be in 1..{MAX_VERTICES}, got {self.n}")
        if len(self.images) != self.n or any(i < 0 or i >> self.n for i in self.images):
            raise VertexOutOfRange("image bitset outside the vertex range")

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> "Digraph":
        imgs = [0] * n
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise VertexOutOfRange(f"arc ({u},{v}) outside 0..{n - 1}")
            imgs[u] |= 1 << v
        return cls(n, tuple(imgs))

    @classmethod
    def parse(cls, text: str) -> "Digraph":
        """First non-empty line: vertex count; then one ``u v`` arc per line."""
        lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines:
            raise ParseError("empty graph description")
        try:
            n = int(lines[0])
            arcs = []
            for ln in lines[1:]:
                u, v = ln.split()
                arcs.append((int(u), int(v)))
        except ValueError as exc:
            raise ParseError(f"bad graph line: {exc}") from None
        return cls.from_arcs(n, arcs)

    def to_text(self) -> str:
        rows = [str(self.n)] + [f"{u} {v}" for u, v in self.arcs()]
        return "\n".join(rows) + "\n"

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bit_indices(self.images[u])]

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.images[u] >> v & 1)

    def valency(self, v: int) -> int:
        return self.images[v].bit_count()

    @property
    def is_reflexive(self) -> bool:
        return all(img >> v & 1 for v, img in enumerate(self.images))

    def image(self, bits: int) -> int:
        out = 0
        for v in bit_indices(bits):
            out |= self.images[v]
        return out

    def boundary(self, bits: int) -> int:
        return self.image(bits) & ~bits

    def _check_vertices(self, *vs: int) -> None:
        for v in vs:
            if not 0 <= v < self.n:
                raise VertexOutOfRange(f"vertex {v} outside 0..{self.n - 1}")

    def _check_set(self, bits: int) -> None:
        if bits < 0 or bits >> self.n:
            raise VertexOutOfRange("vertex set outside the vertex range")

    def image_array(self) -> np.ndarray:
        return np.array(self.images, dtype=np.int64)


def as_vertex_bits(X) -> int:
    if isinstance(X, GroupSubset):
        return X.bits
    if isinstance(X, int):
        return X
    out = 0
    for v in X:
        out |= 1 << v
    return out


def cayley_graph(G: AbelianGroup, S: GroupSubset, require_generating: bool = True) -> Digraph:
    """Arc ``(x, x + s)`` for every ``x`` in ``G`` and ``s`` in ``S``."""
    if not S.bits & 1:
        raise ZeroNotInS(f"{S} does not contain zero")
    if require_generating and not is_generating_bits(G, S.bits):
        raise NotGenerating(f"{S} does not generate {G.name}")
    return Digraph(G.order, tuple(G.translate(S.bits, x) for x in range(G.order)))


def graph_kappa1(graph: Digraph) -> Optional[int]:
    """Minimum ``|Gamma(X) \\ X|`` over nonempty ``X`` with ``Gamma(X) != V``."""
    n = graph.n
    cap = default_order_cap()
    if n > cap:
        raise OrderCapExceeded(f"{n} vertices exceed the exhaustive cap {cap}")
    low = min(n, 16)
    low_tab = image_table(list(graph.images[:low]))
    low_idx = np.arange(1 << low, dtype=np.int64)
    full = (1 << n) - 1
    best = None
    hi_img = [0]
    for i in range(low, n):
        # extend the image table of the high vertices by doubling
        hi_img = hi_img + [g | graph.images[i] for g in hi_img]
    for hi, himg in enumerate(hi_img):
        xs = (hi << low) | low_idx
        gam = low_tab | himg
        ok = (xs != 0) & (gam != full)
        if not ok.any():
            continue
        val = int((popcounts(gam[ok] & ~xs[ok])).min())
        best = val if best is None else min(best, val)
    return best


@dataclass(frozen=True)
class DisjointPathSystem:
    x: int
    y: int
    paths: tuple[tuple[int, ...], ...]

    def is_valid(self, graph: Digraph) -> bool:
        inner = set()
        for p in self.paths:
            if p[0] != self.x or p[-1] != self.y:
                return False
            if any(not graph.has_arc(a, b) for a, b in zip(p, p[1:])):
                return False
            mid = set(p[1:-1])
            if len(mid) != len(p) - 2 or mid & inner or {self.x, self.y} & mid:
                return False
            inner |= mid
        return True


def disjoint_paths(graph: Digraph, x: int, y: int, k: int) -> Optional[DisjointPathSystem]:
    """``k`` openly disjoint x-y paths, or None when fewer exist."""
    graph._check_vertices(x, y)
    if k < 0:
        raise InputError("k must be nonnegative")
    if x == y:
        raise HypothesesUnmet("endpoints must differ")
    if k == 0:
        return DisjointPathSystem(x, y, ())
    buf = np.full((graph.n, graph.n + 1), -1, dtype=np.int64)
    count = _kernels.split_graph_paths(graph.image_array(), x, y, k, buf)
    if count < k:
        return None
    paths = tuple(tuple(int(v) for v in row if v >= 0) for row in buf[:count])
    return DisjointPathSystem(x, y, paths)


def max_disjoint_paths(graph: Digraph, x: int, y: int) -> int:
    graph._check_vertices(x, y)
    if x == y:
        raise HypothesesUnmet("endpoints must differ")
    buf = np.full((graph.n, graph.n + 1), -1, dtype=np.int64)
    return int(_kernels.split_graph_paths(graph.image_array(), x, y, graph.n, buf))


@dataclass(frozen=True)
class BoundaryMatching:
    """Injection ``f`` from ``domain`` into the boundary along arcs, as sorted pairs."""

    pairs: tuple[tuple[int, int], ...]

    @property
    def domain(self) -> tuple[int, ...]:
        return tuple(c for c, _ in self.pairs)

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)


def validate_boundary_matching(graph: Digraph, X: int, pairs, k: int,
                               reuse: Optional[int] = None) -> bool:
    """Independent structural check of a matching (or of a second-form pair list)."""
    bnd = graph.boundary(X)
    ys = [y for _, y in pairs]
    if len(pairs) != k or len(set(ys)) != len(ys):
        return False
    for c, y in pairs:
        if not (X >> c & 1) or not (bnd >> y & 1) or not graph.has_arc(c, y):
            return False
    cs = [c for c, _ in pairs]
    if reuse is None:
        return len(set(cs)) == len(cs)
    others = [c for c in cs if c != reuse]
    return (len(set(others)) == len(others) and set(cs) == set(bit_indices(X))
            and cs.count(reuse) == k - X.bit_count() + 1)


def hall_matching_number(graph: Digraph, X: int) -> int:
    """Largest matching from ``X`` into its boundary, by brute-force Hall deficiency."""
    bnd = graph.boundary(X)
    return X.bit_count() - int(_kernels.hall_deficiency(graph.image_array(), X, bnd, -1, 0))


def _matching_k(graph: Digraph) -> int:
    k = graph_kappa1(graph)
    if k is None:
        raise HypothesesUnmet("the graph has no separating set, so kappa_1 is undefined")
    return k


def sipg_matching(graph: Digraph, X, k: Optional[int] = None) -> BoundaryMatching:
    """``kappa_1``-many vertices of ``X`` matched injectively into ``Gamma(X) \\ X``.

    ``k`` may be passed when already known; it defaults to ``graph_kappa1``.
    """
    xb = as_vertex_bits(X)
    graph._check_set(xb)
    if k is None:
        k = _matching_k(graph)
    if xb.bit_count() < k or xb.bit_count() + k > graph.n:
        raise HypothesesUnmet(f"need k <= |X| <= |V| - k with k={k}")
    pairs = np.zeros((2 * graph.n + 2, 2), dtype=np.int64)
    cnt = _kernels.boundary_matching(graph.image_array(), xb, -1, 0, k, pairs)
    out = tuple(sorted((int(c), int(y)) for c, y in pairs[:cnt]))
    if not validate_boundary_matching(graph, xb, out, k):
        raise TheoremViolation(f"no valid matching for X={sorted(bit_indices(xb))}")
    return BoundaryMatching(out)


def sip2_matching(graph: Digraph, X, x: int, k: Optional[int] = None) -> list[tuple[int, int]]:
    """Second form for small ``X``: ``x`` is reused ``k - |X|`` extra times.

    Pairs for ``X \\ {x}`` come first in vertex order, then those of ``x``
    ordered by boundary vertex.
    """
    xb = as_vertex_bits(X)
    graph._check_set(xb)
    graph._check_vertices(x)
    if not xb >> x & 1:
        raise HypothesesUnmet("x must belong to X")
    if k is None:
        k = _matching_k(graph)
    size = xb.bit_count()
    if size > k or size + k > graph.n:
        raise HypothesesUnmet(f"need |X| <= k and |X| + k <= |V| with k={k}")
    pairs = np.zeros((2 * graph.n + 2, 2), dtype=np.int64)
    cnt = _kernels.boundary_matching(graph.image_array(), xb, x, k - size, k, pairs)
    got = [(int(c), int(y)) for c, y in pairs[:cnt]]
    out = sorted(p for p in got if p[0] != x) + sorted(p for p in got if p[0] == x)
    if not validate_boundary_matching(graph, xb, out, k, reuse=x):
        raise TheoremViolation(f"no valid second-form matching for X={sorted(bit_indices(xb))}")
    return out


def strongip_components(G: AbelianGroup, H, S: GroupSubset, T: GroupSubset
                        ) -> list[tuple[GroupSubset, GroupSubset]]:
    """Component pairs ``(C, D_C)`` whose sums span distinct ``T``-external components of ``T+S``.

    Requires ``0 in S``, ``kappa_1(phi(S)) = |phi(S)| - 1``,
    ``|phi(S)| + |phi(T)| <= |G/H| + 1`` and ``|phi(T)| >= |phi(S)| - 1``.
    """
    H = as_subgroup(H)
    if not S.bits & 1:
        raise ZeroNotInS(f"{S} does not contain zero")
    if not T.bits:
        raise HypothesesUnmet("T must be nonempty")
    q = quotient_view(G, H)
    Q = q.quotient_group
    ps, pt = q.image_bits(S.bits), q.image_bits(T.bits)
    u = ps.bit_count()
    if u == 1:
        return []
    if u + pt.bit_count() > Q.order + 1:
        raise HypothesesUnmet("|phi(S)| + |phi(T)| exceeds |G/H| + 1")
    if pt.bit_count() < u - 1:
        raise HypothesesUnmet("|phi(T)| < |phi(S)| - 1")
    quotient_graph = cayley_graph(Q, GroupSubset(Q, ps), require_generating=False)
    if graph_kappa1(quotient_graph) != u - 1:
        raise HypothesesUnmet("kappa_1 of the image of S differs from |phi(S)| - 1")
    match = sipg_matching(quotient_graph, pt, k=u - 1)
    out = []
    for c, y in match.pairs:
        s_img = Q.sub(y, c)
        C = GroupSubset(G, T.bits & q.coset_bits(c))
        D = GroupSubset(G, S.bits & q.coset_bits(s_img))
        out.append((C, D))
    _validate_components(G, H, T, out)
    return out


def _validate_components(G: AbelianGroup, H: Subgroup, T: GroupSubset, pairs) -> None:
    th = G.sum_bits(T.bits, H.bits)
    spanned = []
    for C, D in pairs:
        cd = G.sum_bits(C.bits, D.bits)
        coset = G.sum_bits(cd, H.bits)
        if coset.bit_count() != H.order or coset & th:
            raise TheoremViolation("a spanned component is not T-external")
        spanned.append(coset)
    if len(set(spanned)) != len(spanned):
        raise TheoremViolation("spanned components are not distinct")


# -- seeded pseudo-random digraphs ----------------------------------------------

LCG_MULTIPLIER = 6364136223846793005
LCG_INCREMENT = 1442695040888963407
_MASK64 = (1 << 64) - 1


def lcg_stream(seed: int):
    """64-bit LCG ``x <- a*x + c mod 2**64``; each draw yields the top 31 bits ``x >> 33``."""
    x = seed & _MASK64
    while True:
        x = (LCG_MULTIPLIER * x + LCG_INCREMENT) & _MASK64
        yield x >> 33


def seeded_digraph(seed: int, index: int, min_vertices: int = 3,
                   max_vertices: int = 10) -> Digraph:
    """Reflexive digraph number ``index`` of the stream started at ``seed + index``.

    Draw order: vertex count ``min + r % (max - min + 1)``, an arc density
    ``p = 20 + r % 61`` percent, then for each ordered pair ``u != v`` in
    row-major order an arc exactly when ``r % 100 < p``.  Every vertex also
    gets a loop and the arc ``u -> u+1 mod n``, so the graph is strongly connected.
    """
    rng = lcg_stream(seed + index)
    n = min_vertices + next(rng) % (max_vertices - min_vertices + 1)
    p = 20 + next(rng) % 61
    imgs = []
    for u in range(n):
        img = (1 << u) | (1 << ((u + 1) % n))
        for v in range(n):
            if v != u and next(rng) % 100 < p:
                img |= 1 << v
        imgs.append(img)
    return Digraph(n, tuple(imgs))
