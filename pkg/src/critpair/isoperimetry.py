"""Connectivities, fragments, atoms and hyper-atoms of a generating set ``S`` with ``0 in S``.

``kappa_k(S)`` is the minimum of ``|X + S| - |X|`` over finite ``X`` with
``|X| >= k`` and ``|G \\ (X + S)| >= k``.  Because the quantity is
translation invariant, the search only visits sets ``X`` containing zero.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import _tables
from .errors import (
    FragmentOverflow,
    NotAFragment,
    NotGenerating,
    NotSeparable,
    TheoremViolation,
    UnsupportedK,
    ZeroNotInS,
)
from .groups import (
    AbelianGroup,
    GroupSubset,
    Subgroup,
    _subgroup_bits,
    as_subgroup,
    is_generating_bits,
    quotient_view,
)

MAX_FRAGMENTS = 100_000


class SeparationTable:
    """``X + S`` for every ``X`` containing zero, with derived cardinalities."""

    def __init__(self, G: AbelianGroup, s_bits: int):
        self.group = G
        self.s_bits = s_bits
        self.sums = _tables.zero_sum_table(G, s_bits)
        self.sizes = _tables.zero_sizes(G.order)
        sum_sizes = _tables.popcounts(self.sums)
        self.boundary = sum_sizes - self.sizes
        self.co_image = G.order - sum_sizes
        self._kappa = {}

    def _mask(self, k: int) -> np.ndarray:
        return (self.sizes >= k) & (self.co_image >= k)

    def kappa(self, k: int) -> Optional[int]:
        if k not in self._kappa:
            mask = self._mask(k)
            self._kappa[k] = int(self.boundary[mask].min()) if mask.any() else None
        return self._kappa[k]

    def separable(self, k: int) -> bool:
        return self.kappa(k) is not None

    def zero_fragments(self, k: int) -> np.ndarray:
        """Bitsets of the ``k``-fragments that contain zero."""
        kap = self.kappa(k)
        if kap is None:
            return np.empty(0, dtype=np.int64)
        idx = np.nonzero(self._mask(k) & (self.boundary == kap))[0]
        return _tables.zero_sets(self.group.order)[idx]

    def zero_atoms(self, k: int) -> np.ndarray:
        frags = self.zero_fragments(k)
        if frags.size == 0:
            return frags
        sizes = _tables.popcounts(frags)
        return frags[sizes == sizes.min()]


@functools.lru_cache(maxsize=64)
def separation_table(G: AbelianGroup, s_bits: int) -> SeparationTable:
    return SeparationTable(G, s_bits)


def _check_set(S: GroupSubset) -> None:
    if not S.bits & 1:
        raise ZeroNotInS(f"{S} does not contain zero")
    if not is_generating_bits(S.group, S.bits):
        raise NotGenerating(f"{S} does not generate {S.group.name}")


def _check_k(k: int) -> None:
    if k not in (1, 2):
        raise UnsupportedK(f"only k in {{1, 2}} is supported, got {k}")


def is_k_separable(S: GroupSubset, k: int) -> bool:
    """True iff some ``X`` has ``|X| >= k`` and ``|G \\ (X+S)| >= k``."""
    _check_set(S)
    _check_k(k)
    return separation_table(S.group, S.bits).separable(k)


def kappa(S: GroupSubset, k: int) -> Optional[int]:
    """``kappa_k(S)``, or None when ``S`` is not ``k``-separable."""
    _check_set(S)
    _check_k(k)
    return separation_table(S.group, S.bits).kappa(k)


def _translates(G: AbelianGroup, zero_sets: np.ndarray, max_count: int) -> list[int]:
    seen = set()
    for b in zero_sets.tolist():
        for g in range(G.order):
            seen.add(G.translate(b, g))
        if len(seen) > max_count:
            raise FragmentOverflow(f"more than {max_count} fragments")
    return sorted(seen, key=lambda b: (b.bit_count(), b))


def fragments(S: GroupSubset, k: int, max_count: int = MAX_FRAGMENTS) -> list[GroupSubset]:
    """Every ``k``-fragment of ``S`` ordered by (cardinality, bitset)."""
    _check_set(S)
    _check_k(k)
    G = S.group
    table = separation_table(G, S.bits)
    return [GroupSubset(G, b) for b in _translates(G, table.zero_fragments(k), max_count)]


def atoms(S: GroupSubset, k: int, max_count: int = MAX_FRAGMENTS) -> list[GroupSubset]:
    """The minimum-cardinality ``k``-fragments."""
    _check_set(S)
    _check_k(k)
    G = S.group
    table = separation_table(G, S.bits)
    return [GroupSubset(G, b) for b in _translates(G, table.zero_atoms(k), max_count)]


def hyper_atom_bits(G: AbelianGroup, s_bits: int) -> list[int]:
    k1 = separation_table(G, s_bits).kappa(1)
    if k1 is None:
        raise NotSeparable("S equals the whole group")
    cands = []
    for h in _subgroup_bits(G):
        if h == G.full:
            continue
        hs = G.sum_bits(h, s_bits)
        if hs != G.full and hs.bit_count() - h.bit_count() == k1:
            cands.append(h)
    return [h for h in cands if not any(c != h and c & h == h for c in cands)]


def hyper_atoms(S: GroupSubset) -> list[Subgroup]:
    """Inclusion-maximal subgroups that are 1-fragments of ``S``."""
    _check_set(S)
    G = S.group
    return [Subgroup._trusted(G, h) for h in hyper_atom_bits(G, S.bits)]


def subgroup_fragment_bits(G: AbelianGroup, s_bits: int, k: int = 1) -> list[int]:
    """Every subgroup (not only maximal ones) that is a ``k``-fragment."""
    table = separation_table(G, s_bits)
    kap = table.kappa(k)
    if kap is None:
        return []
    out = []
    for h in _subgroup_bits(G):
        hs = G.sum_bits(h, s_bits)
        if h.bit_count() >= k and G.order - hs.bit_count() >= k \
                and hs.bit_count() - h.bit_count() == kap:
            out.append(h)
    return out


def is_vosper_bits(G: AbelianGroup, s_bits: int) -> bool:
    k2 = separation_table(G, s_bits).kappa(2)
    return k2 is None or k2 >= s_bits.bit_count()


def is_vosper(S: GroupSubset) -> bool:
    """Vosper test through the connectivity: not 2-separable, or ``kappa_2 >= |S|``."""
    _check_set(S)
    return is_vosper_bits(S.group, S.bits)


def _is_one_fragment(G: AbelianGroup, s_bits: int, h_bits: int) -> bool:
    kap = separation_table(G, s_bits).kappa(1)
    hs = G.sum_bits(h_bits, s_bits)
    return kap is not None and hs != G.full and hs.bit_count() - h_bits.bit_count() == kap


def lift_fragment_kappa(S: GroupSubset, H) -> int:
    """``kappa_1`` of the image of ``S`` in ``G/H`` for a subgroup 1-fragment ``H``.

    Raises :class:`TheoremViolation` if the value differs from ``|phi_H(S)| - 1``.
    """
    _check_set(S)
    H = as_subgroup(H)
    G = S.group
    if not _is_one_fragment(G, S.bits, H.bits):
        raise NotAFragment(f"{H.elements} is not a 1-fragment of {S}")
    q = quotient_view(G, H)
    image = q.image_bits(S.bits)
    value = separation_table(q.quotient_group, image).kappa(1)
    if value != image.bit_count() - 1:
        raise TheoremViolation(
            f"kappa_1 of the quotient image is {value}, expected {image.bit_count() - 1}")
    return value


def lifted_subgroup_is_two_fragment(S: GroupSubset, H, K) -> bool:
    """Whether ``phi_H^{-1}(K)`` is a 2-fragment of ``S``.

    ``K`` is a subgroup of ``G/H`` that is a 1-fragment of ``phi_H(S)``.
    """
    _check_set(S)
    H = as_subgroup(H)
    K = as_subgroup(K)
    G = S.group
    q = quotient_view(G, H)
    if K.group != q.quotient_group:
        raise NotAFragment("K is not a subgroup of the quotient")
    if not _is_one_fragment(q.quotient_group, q.image_bits(S.bits), K.bits):
        raise NotAFragment(f"{K.elements} is not a 1-fragment of the image of S")
    x = q.preimage_bits(K.bits)
    table = separation_table(G, S.bits)
    k2 = table.kappa(2)
    xs = G.sum_bits(x, S.bits)
    return (k2 is not None and x.bit_count() >= 2 and G.order - xs.bit_count() >= 2
            and xs.bit_count() - x.bit_count() == k2)


@dataclass
class IsoProfile:
    group: AbelianGroup
    S: GroupSubset
    separable: dict[int, bool] = field(default_factory=dict)
    kappa: dict[int, Optional[int]] = field(default_factory=dict)
    fragments: dict[int, list[GroupSubset]] = field(default_factory=dict)
    atoms: dict[int, list[GroupSubset]] = field(default_factory=dict)
    hyper_atoms: list[Subgroup] = field(default_factory=list)

    def to_dict(self, sample: int = 10) -> dict:
        out = {"group": self.group.name, "S": self.S.literal(), "hyper_atoms":
               [H.elements.literal() for H in self.hyper_atoms]}
        for k in sorted(self.kappa):
            out[f"k{k}"] = {
                "separable": self.separable[k],
                "kappa": self.kappa[k],
                "fragment_count": len(self.fragments[k]),
                "fragments_sample": [F.literal() for F in self.fragments[k][:sample]],
                "atom_count": len(self.atoms[k]),
                "atoms": [A.literal() for A in self.atoms[k][:sample]],
            }
        return out


def iso_profile(S: GroupSubset, max_fragments: int = MAX_FRAGMENTS) -> IsoProfile:
    """Compute every isoperimetric object of ``S`` for ``k = 1, 2``."""
    _check_set(S)
    prof = IsoProfile(S.group, S)
    for k in (1, 2):
        prof.separable[k] = is_k_separable(S, k)
        prof.kappa[k] = kappa(S, k)
        prof.fragments[k] = fragments(S, k, max_fragments)
        prof.atoms[k] = atoms(S, k, max_fragments)
    if prof.separable[1]:
        prof.hyper_atoms = hyper_atoms(S)
    return prof


def zero_atom_bits(G: AbelianGroup, s_bits: int, k: int) -> list[int]:
    return separation_table(G, s_bits).zero_atoms(k).tolist()
