"""One checker per auxiliary statement.

Each checker takes a group plus bitsets and returns a :class:`LemmaResult`.
When the instance misses the hypotheses the result is vacuously true and
tagged ``applicable=False`` so sweeps can count coverage honestly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .errors import GroupMismatch, ParseError, UnknownTheorem
from .groups import (
    AbelianGroup,
    GroupSubset,
    Subgroup,
    _subgroup_bits,
    bit_indices,
    generated_subgroup_bits,
    quotient_view,
)
from .isoperimetry import (
    hyper_atom_bits,
    is_vosper_bits,
    separation_table,
    subgroup_fragment_bits,
)
from .sumsets import (
    ap_certificate_bits,
    is_progression_from,
    period_bits,
    quasi_periodic_bits,
)
from .structure import _similar_difference


@dataclass
class LemmaResult:
    lemma: str
    holds: bool
    applicable: bool
    detail: str = ""
    observations: dict = field(default_factory=dict)

    def __bool__(self):
        return self.holds


def _na(lemma: str, why: str) -> LemmaResult:
    return LemmaResult(lemma, True, False, f"hypothesis not met: {why}")


def _result(lemma: str, failures: list[str], obs: Optional[dict] = None) -> LemmaResult:
    return LemmaResult(lemma, not failures, True, "; ".join(failures), obs or {})


def _generating_with_zero(G: AbelianGroup, s: int) -> bool:
    return bool(s & 1) and generated_subgroup_bits(G, s) == G.full


def _all_translates(G: AbelianGroup, zero_sets) -> list[int]:
    out = set()
    for b in zero_sets:
        for g in range(G.order):
            out.add(G.translate(int(b), g))
    return sorted(out)


# -- individual statements ----------------------------------------------------

def prehistorical(G: AbelianGroup, a: int, b: int, t: Optional[int] = None) -> LemmaResult:
    """``|A| + |B| >= |G| + t`` forces ``t`` representations of every element."""
    if t is None:
        t = a.bit_count() + b.bit_count() - G.order
    if t < 1 or a.bit_count() + b.bit_count() < G.order + t:
        return _na("prehistorical", "|A|+|B| < |G|+t with t >= 1")
    nb = G.neg_bits(b)
    bad = [x for x in range(G.order) if (a & G.translate(nb, x)).bit_count() < t]
    return _result("prehistorical", [f"x={G.format_element(x)} has fewer than {t} representations"
                                     for x in bad])


def apc(G: AbelianGroup, p: int, x: int, d: Optional[int] = None) -> LemmaResult:
    """Progression lower bound and the two rigidity conditions.

    ``d`` defaults to every generator for which ``P`` is a progression.
    ``|P| >= 2`` is required: singletons make the rigidity claim false.
    """
    n = G.order
    if not x:
        return _na("APC", "X empty")
    if p.bit_count() < 2:
        return _na("APC", "|P| < 2")
    gens = [d] if d is not None else [g for g in range(n) if G.element_order(g) == n]
    diffs = [g for g in gens if G.element_order(g) == n
             and any(is_progression_from(G, p, f, g) for f in bit_indices(p))]
    if not diffs:
        return _na("APC", "no generator d makes P a progression")
    xp = G.sum_bits(x, p)
    size = xp.bit_count()
    fails = []
    if size < min(n, x.bit_count() + p.bit_count() - 1):
        fails.append("lower bound")
    obs = {}
    if size == x.bit_count() + p.bit_count() - 1:
        np_ = G.neg_bits(p)
        cond1 = size <= n - 1 or p.bit_count() == 2
        cond2 = any((G.translate(np_, y) & x).bit_count() == 1 for y in bit_indices(xp))
        for g in diffs:
            is_ap = any(is_progression_from(G, x, f, g) for f in bit_indices(x))
            if cond1 and not is_ap:
                fails.append(f"condition (i) holds but X is not a progression with d={g}")
            if cond2 and not is_ap:
                fails.append(f"condition (ii) holds but X is not a progression with d={g}")
                obs["condition_ii_failures"] = obs.get("condition_ii_failures", 0) + 1
    return _result("APC", fails, obs)


def lee(G: AbelianGroup, x: int, s: int) -> LemmaResult:
    if not _generating_with_zero(G, s):
        return _na("lee", "0 not in S or S not generating")
    ns = G.neg_bits(s)
    co = G.full & ~G.sum_bits(x, s) if x else G.full
    back = G.full & ~G.sum_bits(co, ns) if co else G.full
    lhs = G.sum_bits(back, s) if back else 0
    rhs = G.sum_bits(x, s) if x else 0
    return _result("lee", [] if lhs == rhs else ["identity fails"])


def negative(G: AbelianGroup, s: int, k: int) -> LemmaResult:
    if not _generating_with_zero(G, s):
        return _na("negative", "0 not in S or S not generating")
    tab = separation_table(G, s)
    if not tab.separable(k):
        return _na("negative", f"S not {k}-separable")
    ns = G.neg_bits(s)
    ntab = separation_table(G, ns)
    fails = []
    kap = tab.kappa(k)
    if ntab.kappa(k) != kap:
        fails.append("(i) kappa(S) != kappa(-S)")
    for f in _all_translates(G, tab.zero_fragments(k).tolist()):
        co = G.full & ~G.sum_bits(f, s)
        coco = G.full & ~G.sum_bits(co, ns)
        ok = (co.bit_count() >= k and coco.bit_count() >= k
              and G.sum_bits(co, ns).bit_count() - co.bit_count() == kap)
        if not ok:
            fails.append(f"(ii) co-image of {G.format_bits(f)} is not a fragment of -S")
            break
    for a in tab.zero_atoms(k).tolist():
        if G.order - G.sum_bits(a, s).bit_count() < a.bit_count():
            fails.append(f"(iii) atom {G.format_bits(a)} is not faithful")
    return _result("negative", fails)


def degenkappa(G: AbelianGroup, s: int) -> LemmaResult:
    if not _generating_with_zero(G, s):
        return _na("degenkappa", "0 not in S or S not generating")
    if s == G.full:
        return _na("degenkappa", "S = G")
    tab = separation_table(G, s)
    k1, k2 = tab.kappa(1), tab.kappa(2)
    size = s.bit_count()
    fails = []
    if k1 > size - 1:
        fails.append("(i) kappa_1 > |S|-1")
    if k2 is not None and k2 <= size - 1 and k2 != k1:
        fails.append("(ii) kappa_2 != kappa_1")
    if k1 <= size - 2:
        if k2 is None:
            fails.append("(iii) S not 2-separable")
        else:
            f1, f2 = tab.zero_fragments(1).tolist(), tab.zero_fragments(2).tolist()
            a1, a2 = tab.zero_atoms(1).tolist(), tab.zero_atoms(2).tolist()
            if sorted(f1) != sorted(f2) or sorted(a1) != sorted(a2):
                fails.append("(iii) 1- and 2-fragments differ")
    return _result("degenkappa", fails)


def inter2frag(G: AbelianGroup, s: int, k: int) -> LemmaResult:
    if not _generating_with_zero(G, s):
        return _na("inter2frag", "0 not in S or S not generating")
    tab = separation_table(G, s)
    if not tab.separable(k):
        return _na("inter2frag", f"S not {k}-separable")
    frags = _all_translates(G, tab.zero_fragments(k).tolist())
    atoms = _all_translates(G, tab.zero_atoms(k).tolist())
    fails = []
    # translation invariance: atoms through zero against all fragments suffice
    for a in (a for a in atoms if a & 1):
        for f in frags:
            if (a & f).bit_count() >= k and a & ~f:
                fails.append(f"atom {G.format_bits(a)} meets {G.format_bits(f)} but is not inside")
                break
    for a in atoms:
        if not a & 1:
            continue
        for b in atoms:
            if b != a and (a & b).bit_count() > k - 1:
                fails.append("two atoms share k points")
                break
    return _result("inter2frag", fails)


def cay_olson(G: AbelianGroup, s: int, t: Optional[int] = None) -> LemmaResult:
    """Atom through zero is a subgroup and ``kappa_1 >= |S|/2``.

    With ``t`` given, the component inequality is evaluated and reported as an
    observation only.
    """
    if not _generating_with_zero(G, s) or s == G.full:
        return _na("cay_olson", "S must contain 0, generate G and differ from G")
    tab = separation_table(G, s)
    k1 = tab.kappa(1)
    fails = []
    zero_atoms = tab.zero_atoms(1).tolist()
    if len(zero_atoms) != 1:
        fails.append(f"{len(zero_atoms)} one-atoms contain zero")
    for h in zero_atoms:
        if period_bits(G, h) != h:
            fails.append(f"atom {G.format_bits(h)} is not a subgroup")
    if 2 * k1 < s.bit_count():
        fails.append("kappa_1 < |S|/2")
    obs = {}
    if t and not fails:
        h = zero_atoms[0]
        comps = []
        rest = t
        while rest:
            c = G.translate(h, (rest & -rest).bit_length() - 1) & t
            comps.append(c)
            rest &= ~c
        small = [c for c in comps if G.sum_bits(c, s).bit_count() < h.bit_count()]
        bound2 = 2 * (len(comps) - len(small)) * h.bit_count() \
            + 2 * sum(c.bit_count() for c in small) + len(small) * s.bit_count()
        obs["olson_checked"] = 1
        if 2 * G.sum_bits(t, s).bit_count() < bound2:
            obs["olson_inequality_failures"] = 1
    return _result("cay_olson", fails, obs)


def two_atom(G: AbelianGroup, s: int) -> LemmaResult:
    if not _generating_with_zero(G, s):
        return _na("two_atom", "0 not in S or S not generating")
    tab = separation_table(G, s)
    k2 = tab.kappa(2)
    if k2 is None or k2 > s.bit_count() - 1:
        return _na("two_atom", "not 2-separable or kappa_2 >= |S|")
    fails = [f"2-atom {G.format_bits(a)} is neither a subgroup nor of size 2"
             for a in tab.zero_atoms(2).tolist()
             if a.bit_count() != 2 and period_bits(G, a) != a]
    return _result("two_atom", fails)


def _vosper_hypotheses(G: AbelianGroup, s: int) -> Optional[str]:
    if not _generating_with_zero(G, s):
        return "0 not in S or S not generating"
    if 2 * s.bit_count() > G.order + 1:
        return "|S| > (|G|+1)/2"
    k2 = separation_table(G, s).kappa(2)
    if k2 is None or k2 > s.bit_count() - 1:
        return "not 2-separable or kappa_2 >= |S|"
    return None


def corollary_vosper(G: AbelianGroup, s: int) -> LemmaResult:
    why = _vosper_hypotheses(G, s)
    if why is None and ap_certificate_bits(G, s) is not None:
        why = "S is an arithmetic progression"
    if why:
        return _na("corollary_vosper", why)
    found = subgroup_fragment_bits(G, s, 2)
    return _result("corollary_vosper", [] if found else ["no subgroup is a 2-fragment"])


def _lift_failures(G: AbelianGroup, s: int, h: int) -> list[str]:
    fails = []
    tab = separation_table(G, s)
    if G.order - G.sum_bits(h, s).bit_count() < h.bit_count():
        fails.append(f"H={G.format_bits(h)} not faithful")
    H = Subgroup._trusted(G, h)
    q = quotient_view(G, H)
    Q = q.quotient_group
    img = q.image_bits(s)
    if separation_table(Q, img).kappa(1) != img.bit_count() - 1:
        fails.append(f"quotient kappa_1 mismatch for H={G.format_bits(h)}")
    if h != 1:
        k2 = tab.kappa(2)
        for kb in subgroup_fragment_bits(Q, img, 1):
            x = q.preimage_bits(kb)
            xs = G.sum_bits(x, s)
            if not (k2 is not None and G.order - xs.bit_count() >= 2
                    and xs.bit_count() - x.bit_count() == k2):
                fails.append(f"preimage of {Q.format_bits(kb)} is not a 2-fragment")
    return fails


def quotient_eq4(G: AbelianGroup, s: int, h: Optional[int] = None) -> LemmaResult:
    """Quotient connectivity identity for subgroup 1-fragments (all of them when ``h`` is None)."""
    if not _generating_with_zero(G, s) or s == G.full:
        return _na("quotient_eq4", "S must contain 0, generate G and differ from G")
    frags = subgroup_fragment_bits(G, s, 1)
    if h is not None:
        if h not in frags:
            return _na("quotient_eq4", "H is not a subgroup 1-fragment")
        frags = [h]
    fails = []
    for f in frags:
        fails.extend(_lift_failures(G, s, f))
    return _result("quotient_eq4", fails, {"subgroup_fragments": len(frags)})


def hyperatom_thm(G: AbelianGroup, s: int) -> LemmaResult:
    why = _vosper_hypotheses(G, s)
    if why:
        return _na("hyperatom_thm", why)
    fails = []
    atoms = hyper_atom_bits(G, s)
    lifts = subgroup_fragment_bits(G, s, 1)
    trivial = 0
    for h in atoms:
        if h.bit_count() < 2:
            fails.append("hyper-atom is trivial")
            trivial += 1
            continue
        q = quotient_view(G, Subgroup._trusted(G, h))
        img = q.image_bits(s)
        Q = q.quotient_group
        if ap_certificate_bits(Q, img) is None and not is_vosper_bits(Q, img):
            fails.append(f"image under H={G.format_bits(h)} is neither a progression nor Vosper")
    lift_fails = 0
    for f in lifts:
        if _lift_failures(G, s, f):
            lift_fails += 1
    obs = {f"hyper_atoms_{len(atoms)}": 1, "quotient_eq4_checks": len(lifts),
           "quotient_eq4_failures": lift_fails}
    if trivial:
        key = "trivial_hyper_atom_" + ("progression" if ap_certificate_bits(G, s) else "other")
        obs[key] = trivial
    return _result("hyperatom_thm", fails, obs)


def nongenerating(G: AbelianGroup, s: int, t: int) -> LemmaResult:
    """Quasi-periodicity modulo ``<S - S>``; ``|S| >= 2`` is added (singletons break it)."""
    if not s or not t or not t & 1:
        return _na("nongenerating", "S, T nonempty with 0 in T")
    if s.bit_count() < 2:
        return _na("nongenerating", "|S| < 2")
    st = G.sum_bits(s, t)
    if st.bit_count() != s.bit_count() + t.bit_count() - 1 or period_bits(G, st) != 1:
        return _na("nongenerating", "S+T not critical and aperiodic")
    m = generated_subgroup_bits(G, G.sum_bits(s, G.neg_bits(s)))
    if not t & ~m:
        return _na("nongenerating", "T inside <S-S>")
    t0 = quasi_periodic_bits(G, t, m)
    if t0 is None:
        return _result("nongenerating", ["T is not <S-S>-quasi-periodic"])
    core = G.sum_bits(t0, s)
    fails = []
    if period_bits(G, core) != 1:
        fails.append("T_0+S periodic")
    if core.bit_count() != t0.bit_count() + s.bit_count() - 1:
        fails.append("|T_0+S| != |T_0|+|S|-1")
    return _result("nongenerating", fails)


def _qp_progression_subgroups(G: AbelianGroup, s: int) -> list[int]:
    out = []
    for h in _subgroup_bits(G):
        if h == 1:
            continue
        if quasi_periodic_bits(G, s, h) is None:
            continue
        q = quotient_view(G, Subgroup._trusted(G, h))
        if ap_certificate_bits(q.quotient_group, q.image_bits(s)) is not None:
            out.append(h)
    return out


def transfer(G: AbelianGroup, s: int, t: int, h: Optional[int] = None) -> LemmaResult:
    """A critical aperiodic partner of a quasi-periodic modular progression is similar to it."""
    if not _generating_with_zero(G, s) or not t:
        return _na("transfer", "S must contain 0 and generate G; T nonempty")
    st = G.sum_bits(s, t)
    if st.bit_count() != s.bit_count() + t.bit_count() - 1 or period_bits(G, st) != 1:
        return _na("transfer", "S+T not critical and aperiodic")
    hs = _qp_progression_subgroups(G, s)
    if h is not None:
        hs = [h] if h in hs else []
    if not hs:
        return _na("transfer", "S is not a quasi-periodic modular progression")
    fails = []
    for hb in hs:
        s0 = quasi_periodic_bits(G, s, hb)
        t0 = quasi_periodic_bits(G, t, hb)
        if t0 is None:
            fails.append(f"T not quasi-periodic for H={G.format_bits(hb)}")
            continue
        q = quotient_view(G, Subgroup._trusted(G, hb))
        fs = q.phi_index((s0 & -s0).bit_length() - 1)
        ft = q.phi_index((t0 & -t0).bit_length() - 1)
        if _similar_difference(q.quotient_group, q.image_bits(s), q.image_bits(t), fs, ft) is None:
            fails.append(f"T not similar to S for H={G.format_bits(hb)}")
    return _result("transfer", fails, {"subgroups_checked": len(hs)})


def tpowers(G: AbelianGroup, s: int, t: int) -> LemmaResult:
    if not (s & t & 1) or generated_subgroup_bits(G, s) != G.full:
        return _na("tpowers", "0 not in S and T, or S not generating")
    st = G.sum_bits(s, t)
    if st.bit_count() != s.bit_count() + t.bit_count() - 1 or period_bits(G, st) != 1:
        return _na("tpowers", "S+T not critical and aperiodic")
    ts = G.full & ~st
    d = G.sum_bits(ts, G.neg_bits(s))
    fails = []
    if period_bits(G, d) != 1:
        fails.append("T^S - S periodic")
    if d.bit_count() != ts.bit_count() + s.bit_count() - 1:
        fails.append("|T^S - S| != |T^S|+|S|-1")
    return _result("tpowers", fails)


# -- public dispatcher --------------------------------------------------------

def _bits(inst: dict, key: str, default=None):
    v = inst.get(key, default)
    if isinstance(v, GroupSubset):
        return v.bits
    if isinstance(v, Subgroup):
        return v.bits
    return v


_CHECKERS: dict[str, Callable[[AbelianGroup, dict], LemmaResult]] = {
    "prehistorical": lambda G, i: prehistorical(G, _bits(i, "A"), _bits(i, "B"), i.get("t")),
    "APC": lambda G, i: apc(G, _bits(i, "P"), _bits(i, "X"),
                            None if i.get("d") is None else _elem(i["d"])),
    "lee": lambda G, i: lee(G, _bits(i, "X"), _bits(i, "S")),
    "negative": lambda G, i: negative(G, _bits(i, "S"), i.get("k", 1)),
    "degenkappa": lambda G, i: degenkappa(G, _bits(i, "S")),
    "inter2frag": lambda G, i: inter2frag(G, _bits(i, "S"), i.get("k", 1)),
    "cay_olson": lambda G, i: cay_olson(G, _bits(i, "S"), _bits(i, "T")),
    "two_atom": lambda G, i: two_atom(G, _bits(i, "S")),
    "corollary_vosper": lambda G, i: corollary_vosper(G, _bits(i, "S")),
    "quotient_eq4": lambda G, i: quotient_eq4(G, _bits(i, "S"), _bits(i, "H")),
    "hyperatom_thm": lambda G, i: hyperatom_thm(G, _bits(i, "S")),
    "nongenerating": lambda G, i: nongenerating(G, _bits(i, "S"), _bits(i, "T")),
    "transfer": lambda G, i: transfer(G, _bits(i, "S"), _bits(i, "T"), _bits(i, "H")),
    "tpowers": lambda G, i: tpowers(G, _bits(i, "S"), _bits(i, "T")),
}

LEMMA_IDS = tuple(_CHECKERS)


def _elem(d) -> int:
    return d if isinstance(d, int) else d.index


def check_lemma(lemma_id: str, instance: dict) -> LemmaResult:
    """Evaluate one statement on ``instance`` (a mapping of named sets).

    The group is taken from the first GroupSubset value found.
    """
    if lemma_id not in _CHECKERS:
        raise UnknownTheorem(f"unknown lemma {lemma_id!r}; choose from {', '.join(LEMMA_IDS)}")
    G = instance.get("G")
    if G is None:
        for v in instance.values():
            if isinstance(v, (GroupSubset, Subgroup)):
                G = v.group
                break
    if G is None:
        raise ParseError("instance carries no group")
    for v in instance.values():
        if isinstance(v, (GroupSubset, Subgroup)) and v.group != G:
            raise GroupMismatch("instance mixes groups")
    return _CHECKERS[lemma_id](G, instance)
