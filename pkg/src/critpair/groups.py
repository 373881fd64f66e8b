"""Finite abelian groups, bitset-encoded subsets, subgroups and quotients.

Elements are integers in ``[0, order)`` decoded in mixed radix over the
cyclic factors (first factor most significant).  Subsets are Python ints
used as bitsets: bit ``i`` set means element ``i`` is a member.
"""

from __future__ import annotations

import functools
import math
import os
import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .errors import (
    EmptyFactors,
    EmptySet,
    FactorBelowTwo,
    GroupMismatch,
    NotASubgroup,
    OrderCapExceeded,
    ParseError,
)

DEFAULT_ORDER_CAP = 24


def default_order_cap() -> int:
    env = os.environ.get("CPW_ORDER_CAP")
    if env:
        try:
            return int(env)
        except ValueError:
            raise ParseError(f"CPW_ORDER_CAP must be an integer, got {env!r}") from None
    return DEFAULT_ORDER_CAP


def popcount(bits: int) -> int:
    return bits.bit_count()


def bit_indices(bits: int) -> Iterator[int]:
    """Yield the set bit positions of ``bits`` in increasing order."""
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


class AbelianGroup:
    """Direct product of cyclic groups ``Z_f1 x ... x Z_fr``.

    Use :func:`make_group` rather than calling this directly; the
    constructor performs no order-cap check and accepts the empty factor
    list (the trivial group), which only arises as a quotient ``G/G``.
    """

    __slots__ = ("factors", "order", "strides", "full", "_digits", "_add", "_neg",
                 "_tables", "_np_tables", "_cyclic")

    def __init__(self, factors: Iterable[int]):
        factors = tuple(int(f) for f in factors)
        for f in factors:
            if f < 2:
                raise FactorBelowTwo(f"cyclic factor {f} is below 2")
        self.factors = factors
        self.order = math.prod(factors)
        strides = []
        acc = 1
        for f in reversed(factors):
            strides.append(acc)
            acc *= f
        self.strides = tuple(reversed(strides))
        self.full = (1 << self.order) - 1
        self._cyclic = len(factors) == 1
        self._digits = tuple(self._decode(i) for i in range(self.order))
        self._add = tuple(
            tuple(self._encode(tuple((a + b) % f for a, b, f in zip(x, y, factors)))
                  for y in self._digits)
            for x in self._digits
        )
        self._neg = tuple(self._encode(tuple((-a) % f for a, f in zip(x, factors)))
                          for x in self._digits)
        self._tables = None
        self._np_tables = None

    def _decode(self, i: int) -> tuple[int, ...]:
        return tuple((i // s) % f for s, f in zip(self.strides, self.factors))

    def _encode(self, coords: tuple[int, ...]) -> int:
        return sum(a * s for a, s in zip(coords, self.strides))

    # -- identity / pickling ------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, AbelianGroup) and other.factors == self.factors

    def __hash__(self):
        return hash(("AbelianGroup", self.factors))

    def __reduce__(self):
        return (_group_from_factors, (self.factors,))

    def __repr__(self):
        return f"AbelianGroup({self.name})"

    @property
    def name(self) -> str:
        if not self.factors:
            return "Z1"
        return "x".join(f"Z{f}" for f in self.factors)

    @property
    def is_cyclic(self) -> bool:
        return len(self.factors) <= 1

    # -- element arithmetic on indices -------------------------------------

    def decode(self, i: int) -> tuple[int, ...]:
        return self._digits[i]

    def encode(self, coords: Iterable[int]) -> int:
        coords = tuple(coords)
        if len(coords) != len(self.factors):
            raise ParseError(f"element {coords} has wrong arity for {self.name}")
        for a, f in zip(coords, self.factors):
            if not 0 <= a < f:
                raise ParseError(f"coordinate {a} out of range for Z{f}")
        return self._encode(coords)

    def add(self, i: int, j: int) -> int:
        return self._add[i][j]

    def neg(self, i: int) -> int:
        return self._neg[i]

    def sub(self, i: int, j: int) -> int:
        return self._add[i][self._neg[j]]

    def multiple(self, k: int, i: int) -> int:
        coords = self._digits[i]
        return self._encode(tuple((k * a) % f for a, f in zip(coords, self.factors)))

    def element_order(self, i: int) -> int:
        coords = self._digits[i]
        return math.lcm(*(f // math.gcd(a, f) for a, f in zip(coords, self.factors))) if coords else 1

    def element(self, i: int) -> "GroupElement":
        if not 0 <= i < self.order:
            raise ParseError(f"element index {i} out of range for {self.name}")
        return GroupElement(self, i)

    @property
    def zero(self) -> "GroupElement":
        return GroupElement(self, 0)

    def elements(self) -> list["GroupElement"]:
        return [GroupElement(self, i) for i in range(self.order)]

    # -- bitset primitives ---------------------------------------------------

    def _byte_tables(self):
        if self._tables is None:
            n = self.order
            chunks = max(1, (n + 7) // 8)
            tables = []
            for g in range(n):
                per_chunk = []
                for c in range(chunks):
                    tab = [0] * 256
                    for v in range(1, 256):
                        low = (v & -v).bit_length() - 1
                        pos = 8 * c + low
                        img = (1 << self._add[pos][g]) if pos < n else 0
                        tab[v] = tab[v & (v - 1)] | img
                    per_chunk.append(tab)
                tables.append(per_chunk)
            self._tables = tables
        return self._tables

    def translate(self, bits: int, g: int) -> int:
        """Return the bitset of ``A + g`` where ``bits`` encodes ``A``."""
        if g == 0 or bits == 0:
            return bits
        if self._cyclic:
            n = self.order
            return ((bits << g) | (bits >> (n - g))) & self.full
        tabs = self._byte_tables()[g]
        out = 0
        c = 0
        while bits:
            out |= tabs[c][bits & 255]
            bits >>= 8
            c += 1
        return out

    def translate_array(self, arr: np.ndarray, g: int) -> np.ndarray:
        """Vectorized :meth:`translate` over an int64 array of bitsets."""
        if g == 0:
            return arr.copy()
        if self._cyclic:
            n = self.order
            return ((arr << g) | (arr >> (n - g))) & self.full
        if self._np_tables is None:
            self._np_tables = np.array(self._byte_tables(), dtype=np.int64)
        tabs = self._np_tables[g]
        out = tabs[0][arr & 255]
        for c in range(1, tabs.shape[0]):
            out |= tabs[c][(arr >> (8 * c)) & 255]
        return out

    def sum_bits(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        if a.bit_count() > b.bit_count():
            a, b = b, a
        out = 0
        for i in bit_indices(a):
            out |= self.translate(b, i)
        return out

    def neg_bits(self, a: int) -> int:
        out = 0
        for i in bit_indices(a):
            out |= 1 << self._neg[i]
        return out

    def cyclic_bits(self, i: int) -> int:
        out = 1
        x = i
        while x != 0:
            out |= 1 << x
            x = self._add[x][i]
        return out

    def subset(self, items: Iterable = ()) -> "GroupSubset":
        bits = 0
        for x in items:
            if isinstance(x, GroupElement):
                if x.group != self:
                    raise GroupMismatch("element belongs to another group")
                bits |= 1 << x.index
            elif isinstance(x, tuple):
                bits |= 1 << self.encode(x)
            else:
                if not 0 <= x < self.order:
                    raise ParseError(f"element index {x} out of range for {self.name}")
                bits |= 1 << x
        return GroupSubset(self, bits)

    def from_bits(self, bits: int) -> "GroupSubset":
        return GroupSubset(self, bits)

    @property
    def whole(self) -> "GroupSubset":
        return GroupSubset(self, self.full)

    @property
    def empty(self) -> "GroupSubset":
        return GroupSubset(self, 0)

    def format_element(self, i: int) -> str:
        if len(self.factors) == 1:
            return str(i)
        return "(" + ",".join(str(a) for a in self._digits[i]) + ")"

    def format_bits(self, bits: int) -> str:
        return "{" + ",".join(self.format_element(i) for i in bit_indices(bits)) + "}"


def _group_from_factors(factors):
    return _cached_group(tuple(factors))


@functools.lru_cache(maxsize=None)
def _cached_group(factors: tuple[int, ...]) -> AbelianGroup:
    return AbelianGroup(factors)


def make_group(factors: Iterable[int], max_order: int | None = None) -> AbelianGroup:
    """Build ``Z_f1 x ... x Z_fr``; raises on empty/degenerate factors or an order above the cap."""
    factors = tuple(int(f) for f in factors)
    if not factors:
        raise EmptyFactors("a group needs at least one cyclic factor")
    for f in factors:
        if f < 2:
            raise FactorBelowTwo(f"cyclic factor {f} is below 2")
    cap = default_order_cap() if max_order is None else max_order
    order = math.prod(factors)
    if order > cap:
        raise OrderCapExceeded(f"group order {order} exceeds the cap {cap}")
    return _cached_group(factors)


@dataclass(frozen=True, slots=True)
class GroupElement:
    group: AbelianGroup
    index: int

    def _other(self, other) -> int:
        if not isinstance(other, GroupElement):
            return NotImplemented
        if other.group != self.group:
            raise GroupMismatch("elements of different groups")
        return other.index

    def __add__(self, other):
        if isinstance(other, GroupSubset):
            return other + self
        j = self._other(other)
        if j is NotImplemented:
            return NotImplemented
        return GroupElement(self.group, self.group.add(self.index, j))

    def __sub__(self, other):
        j = self._other(other)
        if j is NotImplemented:
            return NotImplemented
        return GroupElement(self.group, self.group.sub(self.index, j))

    def __neg__(self):
        return GroupElement(self.group, self.group.neg(self.index))

    def __mul__(self, k: int):
        return GroupElement(self.group, self.group.multiple(k, self.index))

    __rmul__ = __mul__

    @property
    def coords(self) -> tuple[int, ...]:
        return self.group.decode(self.index)

    @property
    def order(self) -> int:
        return self.group.element_order(self.index)

    def __repr__(self):
        return self.group.format_element(self.index)


@dataclass(frozen=True, slots=True)
class GroupSubset:
    """Immutable subset of a finite abelian group stored as a bitset."""

    group: AbelianGroup
    bits: int

    def __post_init__(self):
        if self.bits < 0 or self.bits > self.group.full:
            raise ValueError("bitset wider than the group")

    def _check(self, other: "GroupSubset") -> int:
        if other.group != self.group:
            raise GroupMismatch(f"{self.group.name} vs {other.group.name}")
        return other.bits

    def __len__(self):
        return self.bits.bit_count()

    def __bool__(self):
        return self.bits != 0

    def __iter__(self) -> Iterator[GroupElement]:
        for i in bit_indices(self.bits):
            yield GroupElement(self.group, i)

    def indices(self) -> list[int]:
        return list(bit_indices(self.bits))

    def __contains__(self, x) -> bool:
        if isinstance(x, GroupElement):
            if x.group != self.group:
                return False
            x = x.index
        elif isinstance(x, tuple):
            x = self.group.encode(x)
        return 0 <= x < self.group.order and bool(self.bits >> x & 1)

    def __or__(self, other):
        return GroupSubset(self.group, self.bits | self._check(other))

    def __and__(self, other):
        return GroupSubset(self.group, self.bits & self._check(other))

    def __xor__(self, other):
        return GroupSubset(self.group, self.bits ^ self._check(other))

    def __invert__(self):
        return GroupSubset(self.group, self.group.full & ~self.bits)

    def __neg__(self):
        return GroupSubset(self.group, self.group.neg_bits(self.bits))

    def __add__(self, other):
        """``A + g`` translates by an element; use :func:`~critpair.sumsets.sumset` for ``A + B``."""
        if isinstance(other, GroupElement):
            if other.group != self.group:
                raise GroupMismatch("element belongs to another group")
            return GroupSubset(self.group, self.group.translate(self.bits, other.index))
        return NotImplemented

    __radd__ = __add__

    def complement(self) -> "GroupSubset":
        return ~self

    def difference(self, other: "GroupSubset") -> "GroupSubset":
        return GroupSubset(self.group, self.bits & ~self._check(other))

    def translate(self, g: GroupElement | int) -> "GroupSubset":
        idx = g.index if isinstance(g, GroupElement) else g
        return GroupSubset(self.group, self.group.translate(self.bits, idx))

    def issubset(self, other: "GroupSubset") -> bool:
        return self.bits & ~self._check(other) == 0

    def isdisjoint(self, other: "GroupSubset") -> bool:
        return self.bits & self._check(other) == 0

    @property
    def is_empty(self) -> bool:
        return self.bits == 0

    def __repr__(self):
        return self.group.format_bits(self.bits)

    def literal(self) -> str:
        return self.group.format_bits(self.bits)


def _is_subgroup_bits(G: AbelianGroup, bits: int) -> bool:
    if not bits & 1:
        return False
    return all(G.translate(bits, h) == bits for h in bit_indices(bits))


@dataclass(frozen=True)
class Subgroup:
    """A subgroup, stored as its element set."""

    elements: GroupSubset

    def __post_init__(self):
        if not _is_subgroup_bits(self.elements.group, self.elements.bits):
            raise NotASubgroup(f"{self.elements} is not closed under addition")

    @classmethod
    def _trusted(cls, G: AbelianGroup, bits: int) -> "Subgroup":
        obj = object.__new__(cls)
        object.__setattr__(obj, "elements", GroupSubset(G, bits))
        return obj

    @property
    def group(self) -> AbelianGroup:
        return self.elements.group

    @property
    def bits(self) -> int:
        return self.elements.bits

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def index_in_group(self) -> int:
        return self.group.order // self.order

    @property
    def is_trivial(self) -> bool:
        return self.bits == 1

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self.elements

    def issubgroup(self, other: "Subgroup") -> bool:
        return self.elements.issubset(other.elements)

    def __repr__(self):
        return f"Subgroup({self.elements})"


def as_subgroup(H) -> Subgroup:
    if isinstance(H, Subgroup):
        return H
    if isinstance(H, GroupSubset):
        return Subgroup(H)
    raise NotASubgroup(f"expected a Subgroup, got {type(H).__name__}")


def generated_subgroup_bits(G: AbelianGroup, bits: int) -> int:
    H = 1
    for i in bit_indices(bits):
        if not H >> i & 1:
            H = G.sum_bits(H, G.cyclic_bits(i))
    return H


def generated_subgroup(A: GroupSubset) -> Subgroup:
    """Smallest subgroup containing ``A``."""
    if not A:
        raise EmptySet("cannot generate from the empty set")
    return Subgroup._trusted(A.group, generated_subgroup_bits(A.group, A.bits))


def trivial_subgroup(G: AbelianGroup) -> Subgroup:
    return Subgroup._trusted(G, 1)


def whole_subgroup(G: AbelianGroup) -> Subgroup:
    return Subgroup._trusted(G, G.full)


@functools.lru_cache(maxsize=None)
def _subgroup_bits(G: AbelianGroup) -> tuple[int, ...]:
    seen = {1}
    queue = [1]
    while queue:
        H = queue.pop()
        for g in range(G.order):
            if H >> g & 1:
                continue
            K = G.sum_bits(H, G.cyclic_bits(g))
            if K not in seen:
                seen.add(K)
                queue.append(K)
    return tuple(sorted(seen, key=lambda b: (b.bit_count(), b)))


def enumerate_subgroups(G: AbelianGroup) -> list[Subgroup]:
    """All subgroups, sorted by (cardinality, bitset value)."""
    return [Subgroup._trusted(G, b) for b in _subgroup_bits(G)]


@functools.lru_cache(maxsize=None)
def maximal_subgroup_bits(G: AbelianGroup) -> tuple[int, ...]:
    proper = [b for b in _subgroup_bits(G) if b != G.full]
    return tuple(b for b in proper if not any(c != b and c & b == b for c in proper))


def is_generating_bits(G: AbelianGroup, bits: int) -> bool:
    return all(bits & ~m for m in maximal_subgroup_bits(G))


def generated_bits_table(G: AbelianGroup, arr: np.ndarray) -> np.ndarray:
    """Vectorized ``<A>`` for an array of bitsets (smallest containing subgroup)."""
    out = np.full(arr.shape, G.full, dtype=np.int64)
    for b in reversed(_subgroup_bits(G)):
        contained = (arr & ~np.int64(b)) == 0
        out = np.where(contained, np.int64(b), out)
    return out


# -- group types -------------------------------------------------------------

def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def abelian_group_types(order: int) -> list[tuple[int, ...]]:
    """Invariant-factor lists ``d1 | d2 | ... | dk`` with product ``order``."""

    def rec(rest, last):
        if rest == 1:
            yield ()
            return
        for d in _divisors(rest):
            if d >= 2 and d % last == 0:
                # every later factor is a multiple of d, so d must divide what remains
                if (rest // d) % d == 0 or rest == d:
                    for tail in rec(rest // d, d):
                        yield (d,) + tail

    if order == 1:
        return [()]
    return sorted(rec(order, 1), key=lambda t: (len(t), t))


def groups_of_orders(orders: Iterable[int], max_order: int | None = None) -> list[AbelianGroup]:
    """Every abelian group (up to isomorphism) whose order lies in ``orders``."""
    out = []
    for n in sorted(set(orders)):
        if n < 2:
            continue
        for t in abelian_group_types(n):
            out.append(make_group(t, max_order=max_order))
    return out


def _order_profile(order_of: Iterable[int]) -> tuple:
    return tuple(sorted(Counter(order_of).items()))


def _spanning_bases(m: int, add, order_of, dims: tuple[int, ...], first_only: bool):
    """Backtracking search for generator tuples realizing ``Z_d1 x ... x Z_dk``.

    Generators are chosen for the largest factor first; each new generator
    must multiply the size of the span by its order (direct sum).
    """
    r = len(dims)
    results = []

    def rec(idx, span, gens):
        if idx < 0:
            results.append(tuple(reversed(gens)))
            return first_only
        d = dims[idx]
        for c in range(m):
            if order_of[c] != d:
                continue
            mult = [0]
            x = c
            for _ in range(d - 1):
                mult.append(x)
                x = add(x, c)
            new_span = {add(s, t) for s in span for t in mult}
            if len(new_span) != len(span) * d:
                continue
            if rec(idx - 1, new_span, gens + [c]):
                return True
        return False

    rec(r - 1, {0}, [])
    return results


@dataclass(frozen=True, eq=False)
class QuotientView:
    """The canonical morphism ``G -> G/H`` with a concrete quotient group."""

    parent: AbelianGroup
    subgroup: Subgroup
    coset_reps: tuple[int, ...]
    quotient_group: AbelianGroup
    coset_of: tuple[int, ...]
    coset_to_quotient: tuple[int, ...]
    quotient_to_coset: tuple[int, ...]

    def phi_index(self, i: int) -> int:
        return self.coset_to_quotient[self.coset_of[i]]

    def phi(self, x: GroupElement | int) -> GroupElement:
        i = x.index if isinstance(x, GroupElement) else x
        return GroupElement(self.quotient_group, self.phi_index(i))

    def image_bits(self, bits: int) -> int:
        out = 0
        for i in bit_indices(bits):
            out |= 1 << self.phi_index(i)
        return out

    def image(self, A: GroupSubset) -> GroupSubset:
        if A.group != self.parent:
            raise GroupMismatch("subset is not in the parent group")
        return GroupSubset(self.quotient_group, self.image_bits(A.bits))

    def coset_bits(self, q: int) -> int:
        rep = self.coset_reps[self.quotient_to_coset[q]]
        return self.parent.translate(self.subgroup.bits, rep)

    def preimage_bits(self, qbits: int) -> int:
        out = 0
        for q in bit_indices(qbits):
            out |= self.coset_bits(q)
        return out

    def preimage(self, Y: GroupSubset) -> GroupSubset:
        if Y.group != self.quotient_group:
            raise GroupMismatch("subset is not in the quotient group")
        return GroupSubset(self.parent, self.preimage_bits(Y.bits))

    def coset(self, x: GroupElement | int) -> GroupSubset:
        i = x.index if isinstance(x, GroupElement) else x
        return GroupSubset(self.parent, self.parent.translate(self.subgroup.bits, i))


@functools.lru_cache(maxsize=4096)
def _quotient(G: AbelianGroup, hbits: int) -> QuotientView:
    n = G.order
    coset_of = [-1] * n
    reps = []
    for x in range(n):
        if coset_of[x] >= 0:
            continue
        c = len(reps)
        reps.append(x)
        for y in bit_indices(G.translate(hbits, x)):
            coset_of[y] = c
    m = len(reps)

    def cadd(a, b):
        return coset_of[G.add(reps[a], reps[b])]

    order_of = []
    for c in range(m):
        k, x = 1, c
        while x != 0:
            x = cadd(x, c)
            k += 1
        order_of.append(k)

    target = _order_profile(order_of)
    dims = ()
    for t in abelian_group_types(m):
        T = AbelianGroup(t)
        if _order_profile(T.element_order(i) for i in range(T.order)) == target:
            dims = t
            break
    Q = _cached_group(dims)
    gens = _spanning_bases(m, cadd, order_of, dims, first_only=True)[0] if dims else ()

    q_to_coset = [0] * m
    for q in range(m):
        c = 0
        for a, g in zip(Q.decode(q), gens):
            for _ in range(a):
                c = cadd(c, g)
        q_to_coset[q] = c
    c_to_q = [0] * m
    for q, c in enumerate(q_to_coset):
        c_to_q[c] = q
    return QuotientView(G, Subgroup._trusted(G, hbits), tuple(reps), Q, tuple(coset_of),
                        tuple(c_to_q), tuple(q_to_coset))


def quotient_view(G: AbelianGroup, H) -> QuotientView:
    """Coset partition of ``G`` by ``H`` and the induced map onto ``G/H``."""
    H = as_subgroup(H)
    if H.group != G:
        raise GroupMismatch("subgroup belongs to another group")
    return _quotient(G, H.bits)


@functools.lru_cache(maxsize=None)
def automorphisms(G: AbelianGroup) -> tuple[tuple[int, ...], ...]:
    """All automorphisms of ``G`` as permutations of element indices."""
    n = G.order
    dims = G.factors
    order_of = [G.element_order(i) for i in range(n)]
    # unit generators e_j may map to any element whose order equals f_j
    # provided the images span a direct sum of the right size
    r = len(dims)
    results = []

    def rec(j, span, imgs):
        if j == r:
            results.append(tuple(imgs))
            return
        d = dims[j]
        for c in range(n):
            if order_of[c] != d:
                continue
            mult = [G.multiple(a, c) for a in range(d)]
            new_span = {G.add(s, t) for s in span for t in mult}
            if len(new_span) != len(span) * d:
                continue
            rec(j + 1, new_span, imgs + [c])

    rec(0, {0}, [])
    perms = []
    for imgs in results:
        perm = []
        for i in range(n):
            x = 0
            for a, y in zip(G.decode(i), imgs):
                x = G.add(x, G.multiple(a, y))
            perm.append(x)
        perms.append(tuple(perm))
    return tuple(sorted(perms))


# -- parsing -----------------------------------------------------------------

_GROUP_RE = re.compile(r"^\s*z\s*(\d+)(\s*x\s*z\s*\d+)*\s*$", re.IGNORECASE)


def parse_group(spec: str, max_order: int | None = None) -> AbelianGroup:
    """Parse ``"Z6"``, ``"Z2xZ4"`` or ``"z2 x z2 x z3"``."""
    if not _GROUP_RE.match(spec or ""):
        raise ParseError(f"cannot parse group spec {spec!r}")
    factors = [int(x) for x in re.findall(r"\d+", spec)]
    return make_group(factors, max_order=max_order)


_TUPLE_RE = re.compile(r"\(([^()]*)\)")


def parse_subset(G: AbelianGroup, literal: str) -> GroupSubset:
    """Parse ``"{0,1,3}"`` (indices) or ``"{(0,0),(1,2)}"`` (coordinates)."""
    text = literal.strip()
    if text.startswith("{") and text.endswith("}"):
        text = text[1:-1]
    text = text.strip()
    if not text:
        return G.empty
    items = []
    if "(" in text:
        rest = _TUPLE_RE.sub("", text)
        if rest.replace(",", "").strip():
            raise ParseError(f"unexpected text in subset literal {literal!r}")
        for body in _TUPLE_RE.findall(text):
            try:
                coords = tuple(int(x) for x in body.split(","))
            except ValueError:
                raise ParseError(f"bad element ({body}) in {literal!r}") from None
            items.append(G.encode(coords))
    else:
        for tok in text.split(","):
            try:
                i = int(tok)
            except ValueError:
                raise ParseError(f"bad element {tok!r} in {literal!r}") from None
            if not 0 <= i < G.order:
                raise ParseError(f"element {i} out of range for {G.name}")
            items.append(i)
    return G.subset(items)


def subset_from_indices(G: AbelianGroup, indices: Iterable[int]) -> GroupSubset:
    return G.subset(indices)


def iter_subsets_containing_zero(G: AbelianGroup) -> Iterator[int]:
    for m in range(1 << (G.order - 1)):
        yield (m << 1) | 1
