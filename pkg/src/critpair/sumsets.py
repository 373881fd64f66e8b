"""Sumsets, periods, boundaries and progression structure."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import EmptySet, GroupMismatch
from .groups import (
    AbelianGroup,
    GroupElement,
    GroupSubset,
    Subgroup,
    as_subgroup,
    bit_indices,
    generated_subgroup_bits,
    quotient_view,
)


def _group_of(*sets: GroupSubset) -> AbelianGroup:
    G = sets[0].group
    for A in sets[1:]:
        if A.group != G:
            raise GroupMismatch(f"{G.name} vs {A.group.name}")
    return G


def _require_nonempty(*sets: GroupSubset) -> None:
    for A in sets:
        if not A.bits:
            raise EmptySet("operation needs nonempty sets")


def sumset(A: GroupSubset, B: GroupSubset) -> GroupSubset:
    """``A + B = {a + b : a in A, b in B}``."""
    G = _group_of(A, B)
    _require_nonempty(A, B)
    return GroupSubset(G, G.sum_bits(A.bits, B.bits))


def difference_set(A: GroupSubset, B: GroupSubset) -> GroupSubset:
    """``A - B``, i.e. the sumset of ``A`` and ``-B``."""
    G = _group_of(A, B)
    _require_nonempty(A, B)
    return GroupSubset(G, G.sum_bits(A.bits, G.neg_bits(B.bits)))


def period_bits(G: AbelianGroup, bits: int) -> int:
    # a period element maps the lowest member onto some member
    a0 = (bits & -bits).bit_length() - 1
    out = 0
    for a in bit_indices(bits):
        g = G.sub(a, a0)
        if G.translate(bits, g) == bits:
            out |= 1 << g
    return out


def period(A: GroupSubset) -> Subgroup:
    """The stabilizer ``{x : A + x = A}``."""
    _require_nonempty(A)
    return Subgroup._trusted(A.group, period_bits(A.group, A.bits))


def is_aperiodic(A: GroupSubset) -> bool:
    _require_nonempty(A)
    return period_bits(A.group, A.bits) == 1


def is_periodic_by(A: GroupSubset, H) -> bool:
    """True when ``A + H = A``."""
    H = as_subgroup(H)
    G = _group_of(A, H.elements)
    return G.sum_bits(A.bits, H.bits) == A.bits


def boundary(X: GroupSubset, S: GroupSubset) -> GroupSubset:
    """``(X + S) \\ X``."""
    G = _group_of(X, S)
    _require_nonempty(X, S)
    return GroupSubset(G, G.sum_bits(X.bits, S.bits) & ~X.bits)


def co_image(X: GroupSubset, S: GroupSubset) -> GroupSubset:
    """``G \\ (X + S)``."""
    G = _group_of(X, S)
    _require_nonempty(X, S)
    return GroupSubset(G, G.full & ~G.sum_bits(X.bits, S.bits))


def boundary_minus(X: GroupSubset, S: GroupSubset) -> GroupSubset:
    """Boundary of ``X`` with respect to ``-S``."""
    return boundary(X, -S)


def co_image_minus(X: GroupSubset, S: GroupSubset) -> GroupSubset:
    """Co-image of ``X`` with respect to ``-S``."""
    return co_image(X, -S)


def is_faithful(X: GroupSubset, S: GroupSubset) -> bool:
    return len(co_image(X, S)) >= len(X)


def t_power(T: GroupSubset, S: GroupSubset) -> GroupSubset:
    """``(T + <S>) \\ (T + S)``."""
    G = _group_of(T, S)
    _require_nonempty(T, S)
    span = generated_subgroup_bits(G, S.bits)
    return GroupSubset(G, G.sum_bits(T.bits, span) & ~G.sum_bits(T.bits, S.bits))


@dataclass(frozen=True)
class HDecomposition:
    subgroup: Subgroup
    components: tuple[GroupSubset, ...]
    full_flags: tuple[bool, ...]

    @property
    def non_full(self) -> tuple[GroupSubset, ...]:
        return tuple(c for c, f in zip(self.components, self.full_flags) if not f)

    @property
    def full(self) -> tuple[GroupSubset, ...]:
        return tuple(c for c, f in zip(self.components, self.full_flags) if f)

    @property
    def is_quasi_periodic(self) -> bool:
        return len(self.non_full) == 1


def h_decompose(A: GroupSubset, H) -> HDecomposition:
    """Split ``A`` into its ``H``-components, ordered by coset representative."""
    H = as_subgroup(H)
    G = _group_of(A, H.elements)
    comps = []
    flags = []
    rest = A.bits
    while rest:
        x = (rest & -rest).bit_length() - 1
        coset = G.translate(H.bits, x)
        comp = A.bits & coset
        comps.append(GroupSubset(G, comp))
        flags.append(comp == coset)
        rest &= ~coset
    return HDecomposition(H, tuple(comps), tuple(flags))


def quasi_periodic_bits(G: AbelianGroup, bits: int, hbits: int) -> Optional[int]:
    """The unique non-full ``H``-component, or None when there is not exactly one."""
    found = None
    rest = bits
    while rest:
        x = (rest & -rest).bit_length() - 1
        coset = G.translate(hbits, x)
        comp = bits & coset
        if comp != coset:
            if found is not None:
                return None
            found = comp
        rest &= ~coset
    return found


def quasi_periodic_part(A: GroupSubset, H) -> Optional[GroupSubset]:
    """``A_0``, the single non-full ``H``-component, if ``A`` is ``H``-quasi-periodic.

    A set with no non-full component (fully ``H``-periodic) is not
    quasi-periodic under this convention.
    """
    H = as_subgroup(H)
    G = _group_of(A, H.elements)
    part = quasi_periodic_bits(G, A.bits, H.bits)
    return None if part is None else GroupSubset(G, part)


@dataclass(frozen=True)
class ProgressionCertificate:
    difference: GroupElement
    first: GroupElement
    length: int

    def members(self) -> GroupSubset:
        G = self.first.group
        return GroupSubset(G, progression_bits(G, self.first.index, self.difference.index, self.length))

    @property
    def last(self) -> GroupElement:
        return self.first + self.difference * (self.length - 1)


def progression_bits(G: AbelianGroup, first: int, d: int, length: int) -> Optional[int]:
    """Bits of ``{first, first+d, ...}`` (``length`` terms), None on a repeated term."""
    out = 0
    x = first
    for _ in range(length):
        if out >> x & 1:
            return None
        out |= 1 << x
        x = G.add(x, d)
    return out


def is_progression_from(G: AbelianGroup, bits: int, first: int, d: int) -> bool:
    if not bits >> first & 1:
        return False
    return progression_bits(G, first, d, bits.bit_count()) == bits


def ap_certificate_bits(G: AbelianGroup, bits: int) -> Optional[tuple[int, int, int]]:
    size = bits.bit_count()
    if size == 0:
        return None
    members = list(bit_indices(bits))
    if size == 1:
        return members[0], 0, 1
    for a in members:
        diffs = sorted(G.sub(b, a) for b in members if b != a)
        for d in diffs:
            if progression_bits(G, a, d, size) == bits:
                return a, d, size
    return None


def ap_certificate(A: GroupSubset) -> Optional[ProgressionCertificate]:
    """A canonical arithmetic-progression certificate for ``A``, if one exists.

    Candidates are ordered by first element index, then difference index.
    One- and two-element sets are always progressions.
    """
    _require_nonempty(A)
    G = A.group
    cert = ap_certificate_bits(G, A.bits)
    if cert is None:
        return None
    first, d, size = cert
    return ProgressionCertificate(GroupElement(G, d), GroupElement(G, first), size)


def is_arithmetic_progression(A: GroupSubset) -> bool:
    return ap_certificate(A) is not None


def modular_progression_certificate(A: GroupSubset, H) -> Optional[ProgressionCertificate]:
    """Certificate for ``phi_H(A)`` in the quotient ``G/H``."""
    _require_nonempty(A)
    H = as_subgroup(H)
    q = quotient_view(A.group, H)
    return ap_certificate(q.image(A))


def similarity_difference(A: GroupSubset, B: GroupSubset, H) -> Optional[GroupElement]:
    """Common quotient difference making ``A`` and ``B`` similar, or None.

    Both images must be progressions with that difference whose first terms
    are the images of the respective non-full components.
    """
    H = as_subgroup(H)
    G = _group_of(A, B, H.elements)
    if not A.bits or not B.bits:
        return None
    a0 = quasi_periodic_bits(G, A.bits, H.bits)
    b0 = quasi_periodic_bits(G, B.bits, H.bits)
    if a0 is None or b0 is None:
        return None
    q = quotient_view(G, H)
    Q = q.quotient_group
    ia, ib = q.image_bits(A.bits), q.image_bits(B.bits)
    fa = q.phi_index((a0 & -a0).bit_length() - 1)
    fb = q.phi_index((b0 & -b0).bit_length() - 1)
    for d in range(Q.order):
        if is_progression_from(Q, ia, fa, d) and is_progression_from(Q, ib, fb, d):
            return GroupElement(Q, d)
    return None


def are_similar(A: GroupSubset, B: GroupSubset, H) -> bool:
    return similarity_difference(A, B, H) is not None


def count_representations(x: GroupElement, A: GroupSubset, B: GroupSubset) -> int:
    """Number of pairs ``(a, b)`` in ``A x B`` with ``a + b = x``."""
    G = _group_of(A, B)
    if x.group != G:
        raise GroupMismatch("element belongs to another group")
    return (A.bits & G.translate(G.neg_bits(B.bits), x.index)).bit_count()
