"""Extremal pairs ``|S + T| = |S| + |T| - 1``: hypothesis gates, witness search and verdicts."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .errors import GroupMismatch, HypothesisViolation, NoWitnessFound, NotACover
from .groups import (
    AbelianGroup,
    GroupElement,
    GroupSubset,
    Subgroup,
    _subgroup_bits,
    generated_subgroup_bits,
    quotient_view,
)
from .isoperimetry import hyper_atom_bits
from .sumsets import ap_certificate_bits, is_progression_from, period_bits, quasi_periodic_bits


class CaseTag(str, Enum):
    SUBGROUP_CONTAINMENT = "i"
    SINGULAR_FACTORIZATION = "ii"
    SIMILAR_PROGRESSIONS = "iii"


# hypothesis clause names, reported by HypothesisViolation.clause
ZERO_IN_BOTH = "zero_in_S_and_T"
S_NOT_PROGRESSION = "S_not_arithmetic_progression"
SIZE_ORDER = "two_le_S_le_T"
S_LE_T = "S_le_T"
UNION_GENERATES = "S_union_T_generates"
S_GENERATES = "S_generates"
CRITICAL = "critical_cardinality"
APERIODIC = "aperiodic_sum"
BOUND_N_MINUS_2 = "sum_at_most_n_minus_2"
BOUND_TWO_THIRDS = "sum_at_most_two_thirds"


def check_singular(A: GroupSubset, B: GroupSubset) -> Optional[GroupElement]:
    """Smallest-index element of ``A + B = G`` with exactly one representation."""
    G = A.group
    if B.group != G:
        raise GroupMismatch(f"{G.name} vs {B.group.name}")
    if not A.bits or not B.bits or G.sum_bits(A.bits, B.bits) != G.full:
        raise NotACover("A + B does not cover the group")
    x = unique_expression_bits(G, A.bits, B.bits)
    return None if x is None else G.element(x)


def unique_expression_bits(G: AbelianGroup, a: int, b: int) -> Optional[int]:
    nb = G.neg_bits(b)
    for x in range(G.order):
        if (a & G.translate(nb, x)).bit_count() == 1:
            return x
    return None


def _n_minus_2_violation(G: AbelianGroup, s: int, t: int) -> Optional[str]:
    n = G.order
    if not (s & t & 1):
        return ZERO_IN_BOTH
    if ap_certificate_bits(G, s) is not None:
        return S_NOT_PROGRESSION
    if not 2 <= s.bit_count() <= t.bit_count():
        return SIZE_ORDER
    if generated_subgroup_bits(G, s | t) != G.full:
        return UNION_GENERATES
    st = G.sum_bits(s, t)
    if st.bit_count() != s.bit_count() + t.bit_count() - 1:
        return CRITICAL
    if period_bits(G, st) != 1:
        return APERIODIC
    if st.bit_count() > n - 2:
        return BOUND_N_MINUS_2
    return None


def _twothird_violation(G: AbelianGroup, s: int, t: int) -> Optional[str]:
    n = G.order
    if not (s & t & 1):
        return ZERO_IN_BOTH
    if ap_certificate_bits(G, s) is not None:
        return S_NOT_PROGRESSION
    if s.bit_count() > t.bit_count():
        return S_LE_T
    if generated_subgroup_bits(G, s) != G.full:
        return S_GENERATES
    st = G.sum_bits(s, t)
    if st.bit_count() != s.bit_count() + t.bit_count() - 1:
        return CRITICAL
    if period_bits(G, st) != 1:
        return APERIODIC
    if 3 * st.bit_count() > 2 * n + 2:
        return BOUND_TWO_THIRDS
    return None


def n_minus_2_violation(S: GroupSubset, T: GroupSubset) -> Optional[str]:
    """Name of the first failing hypothesis clause of the extremal-pair theorem, or None."""
    if S.group != T.group:
        raise GroupMismatch(f"{S.group.name} vs {T.group.name}")
    return _n_minus_2_violation(S.group, S.bits, T.bits)


def twothird_violation(S: GroupSubset, T: GroupSubset) -> Optional[str]:
    if S.group != T.group:
        raise GroupMismatch(f"{S.group.name} vs {T.group.name}")
    return _twothird_violation(S.group, S.bits, T.bits)


@dataclass(frozen=True)
class _Evaluation:
    h: int
    s0: int
    t0: int
    core_aperiodic: bool
    core_critical: bool
    cases: tuple
    difference: Optional[int]
    unique_element: Optional[int]


def _similar_difference(Q: AbelianGroup, ps: int, pt: int, fs: int, ft: int) -> Optional[int]:
    for d in range(Q.order):
        if is_progression_from(Q, ps, fs, d) and is_progression_from(Q, pt, ft, d):
            return d
    return None


def _evaluate(G: AbelianGroup, s: int, t: int, h: int) -> Optional[_Evaluation]:
    """Test subgroup ``h`` as a witness; None unless both sets are ``h``-quasi-periodic."""
    s0 = quasi_periodic_bits(G, s, h)
    if s0 is None:
        return None
    t0 = quasi_periodic_bits(G, t, h)
    if t0 is None:
        return None
    core = G.sum_bits(t0, s0)
    q = quotient_view(G, Subgroup._trusted(G, h))
    Q = q.quotient_group
    ps, pt = q.image_bits(s), q.image_bits(t)
    fs = q.phi_index((s0 & -s0).bit_length() - 1)
    ft = q.phi_index((t0 & -t0).bit_length() - 1)
    cases = []
    if ps == 1:
        cases.append(CaseTag.SUBGROUP_CONTAINMENT)
    unique = None
    if Q.sum_bits(pt, ps) == Q.full:
        c0 = Q.add(fs, ft)
        if (pt & Q.translate(Q.neg_bits(ps), c0)).bit_count() == 1:
            unique = c0
            cases.append(CaseTag.SINGULAR_FACTORIZATION)
    d = _similar_difference(Q, ps, pt, fs, ft)
    if d is not None:
        cases.append(CaseTag.SIMILAR_PROGRESSIONS)
    return _Evaluation(h, s0, t0, period_bits(G, core) == 1,
                       core.bit_count() == t0.bit_count() + s0.bit_count() - 1,
                       tuple(cases), d, unique)


def reconstructed_size(case: CaseTag, G: AbelianGroup, h: int, s: int, t: int,
                       s0: int, t0: int) -> int:
    """``|S + T|`` as predicted by the case structure alone."""
    q = quotient_view(G, Subgroup._trusted(G, h))
    size = h.bit_count()
    core = G.sum_bits(t0, s0).bit_count()
    n_s = q.image_bits(s).bit_count()
    n_t = q.image_bits(t).bit_count()
    if case is CaseTag.SUBGROUP_CONTAINMENT:
        return (n_t - 1) * size + core
    if case is CaseTag.SINGULAR_FACTORIZATION:
        return (q.quotient_group.order - 1) * size + core
    return (n_s + n_t - 2) * size + core


@dataclass(frozen=True)
class CaseVerdict:
    case_tag: CaseTag
    witness_subgroup: Subgroup
    S: GroupSubset
    T: GroupSubset
    s_empty: GroupSubset
    t_empty: GroupSubset
    cases_holding: tuple
    witness_source: str
    difference: Optional[GroupElement] = None
    unique_element: Optional[GroupElement] = None
    checks: dict = field(default_factory=dict)

    @property
    def reconstructed_size(self) -> int:
        G = self.S.group
        return reconstructed_size(self.case_tag, G, self.witness_subgroup.bits, self.S.bits,
                                  self.T.bits, self.s_empty.bits, self.t_empty.bits)

    def recheck(self) -> dict:
        """Re-run the conclusion checks from the stored witnesses only."""
        G = self.S.group
        H = self.witness_subgroup
        h = H.bits
        closed = all(G.translate(h, x) == h for x in range(G.order) if h >> x & 1)
        s0, t0 = self.s_empty.bits, self.t_empty.bits
        core = G.sum_bits(t0, s0)
        q = quotient_view(G, H)
        Q = q.quotient_group
        ps, pt = q.image_bits(self.S.bits), q.image_bits(self.T.bits)
        out = {
            "nonzero_proper_subgroup": bool(h & 1) and closed and 1 < h.bit_count() < G.order,
            "S_quasi_periodic": quasi_periodic_bits(G, self.S.bits, h) == s0,
            "T_quasi_periodic": quasi_periodic_bits(G, self.T.bits, h) == t0,
            "core_aperiodic": period_bits(G, core) == 1,
            "core_critical": core.bit_count() == s0.bit_count() + t0.bit_count() - 1,
        }
        fs = q.phi_index((s0 & -s0).bit_length() - 1)
        ft = q.phi_index((t0 & -t0).bit_length() - 1)
        if self.case_tag is CaseTag.SUBGROUP_CONTAINMENT:
            out["case_condition"] = ps == 1
        elif self.case_tag is CaseTag.SINGULAR_FACTORIZATION:
            c0 = Q.add(fs, ft)
            out["case_condition"] = (
                Q.sum_bits(pt, ps) == Q.full
                and self.unique_element is not None and self.unique_element.index == c0
                and (pt & Q.translate(Q.neg_bits(ps), c0)).bit_count() == 1)
        else:
            d = None if self.difference is None else self.difference.index
            out["case_condition"] = (d is not None and is_progression_from(Q, ps, fs, d)
                                     and is_progression_from(Q, pt, ft, d))
        target = self.S.bits.bit_count() + self.T.bits.bit_count() - 1
        out["reconstructed_size"] = self.reconstructed_size == target
        out["sum_size"] = G.sum_bits(self.S.bits, self.T.bits).bit_count() == target
        return out

    def certify(self) -> bool:
        return all(self.recheck().values())

    def to_dict(self) -> dict:
        return {
            "case": self.case_tag.value,
            "H": self.witness_subgroup.elements.literal(),
            "S_empty": self.s_empty.literal(),
            "T_empty": self.t_empty.literal(),
            "cases_holding": [c.value for c in self.cases_holding],
            "witness_source": self.witness_source,
            "difference": None if self.difference is None else repr(self.difference),
            "unique_element": None if self.unique_element is None else repr(self.unique_element),
            "reconstructed_size": self.reconstructed_size,
            "checks": dict(self.checks),
        }


def _verdict(G: AbelianGroup, S: GroupSubset, T: GroupSubset, ev: _Evaluation, case: CaseTag,
             source: str) -> CaseVerdict:
    q = quotient_view(G, Subgroup._trusted(G, ev.h))
    Q = q.quotient_group
    v = CaseVerdict(
        case_tag=case,
        witness_subgroup=Subgroup._trusted(G, ev.h),
        S=S, T=T,
        s_empty=GroupSubset(G, ev.s0),
        t_empty=GroupSubset(G, ev.t0),
        cases_holding=ev.cases,
        witness_source=source,
        difference=None if ev.difference is None else GroupElement(Q, ev.difference),
        unique_element=None if ev.unique_element is None else GroupElement(Q, ev.unique_element),
    )
    object.__setattr__(v, "checks", v.recheck())
    return v


def candidate_witnesses(G: AbelianGroup, s: int, t: int) -> list[tuple[int, str]]:
    """Subgroups to try, following the constructions of the structure proof first."""
    out = []
    span = generated_subgroup_bits(G, s)
    if t & ~span:
        out.append((span, "span_of_S"))
    else:
        ts = G.full & ~G.sum_bits(t, s)
        u = generated_subgroup_bits(G, G.sum_bits(ts, G.neg_bits(ts))) if ts else G.full
        if u != G.full:
            out.append((u, "span_of_TS_differences"))
        elif s.bit_count() <= ts.bit_count():
            out.extend((h, "hyper_atom_of_S") for h in hyper_atom_bits(G, s))
        else:
            a = (ts & -ts).bit_length() - 1
            shifted = G.translate(ts, G.neg(a))
            out.extend((h, "hyper_atom_of_TS") for h in hyper_atom_bits(G, shifted))
    out.extend((h, "subgroup_search") for h in _subgroup_bits(G))
    return out


def classify_bits(G: AbelianGroup, s: int, t: int) -> Optional[tuple[_Evaluation, str]]:
    """Witness search without hypothesis gating; None when no subgroup works."""
    seen = set()
    for h, source in candidate_witnesses(G, s, t):
        if h in seen or h == 1 or h == G.full:
            continue
        seen.add(h)
        ev = _evaluate(G, s, t, h)
        if ev is not None and ev.cases and ev.core_aperiodic and ev.core_critical:
            return ev, source
    return None


def classify_extremal_pair(S: GroupSubset, T: GroupSubset) -> CaseVerdict:
    """Find a nonzero proper subgroup witnessing one of the three structure cases."""
    G = S.group
    clause = n_minus_2_violation(S, T)
    if clause is not None:
        raise HypothesisViolation(clause, f"hypothesis {clause} fails for S={S}, T={T}")
    found = classify_bits(G, S.bits, T.bits)
    if found is None:
        raise NoWitnessFound(f"no subgroup witnesses the structure for S={S}, T={T}")
    ev, source = found
    return _verdict(G, S, T, ev, ev.cases[0], source)


def check_twothird(S: GroupSubset, T: GroupSubset) -> CaseVerdict:
    """Every hyper-atom of ``S`` makes ``S`` and ``T`` similar quasi-periodic progressions.

    Returns the verdict for the first hyper-atom in canonical order; every
    other hyper-atom is checked too and a failure raises NoWitnessFound.
    """
    G = S.group
    clause = twothird_violation(S, T)
    if clause is not None:
        raise HypothesisViolation(clause, f"hypothesis {clause} fails for S={S}, T={T}")
    verdicts = []
    for h in hyper_atom_bits(G, S.bits):
        ev = _evaluate(G, S.bits, T.bits, h)
        if h == 1 or ev is None or CaseTag.SIMILAR_PROGRESSIONS not in ev.cases:
            raise NoWitnessFound(
                f"hyper-atom {G.format_bits(h)} does not make S={S}, T={T} similar")
        verdicts.append(_verdict(G, S, T, ev, CaseTag.SIMILAR_PROGRESSIONS, "hyper_atom_of_S"))
    return verdicts[0]
