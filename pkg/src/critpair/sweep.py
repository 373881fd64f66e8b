"""Exhaustive theorem sweeps.

Every sweep walks the subsets containing zero of each group in a fixed
order, cut into fixed-size chunks.  Chunks are evaluated independently
(optionally in worker processes) and merged in chunk order, so the report
does not depend on the worker count.
"""

from __future__ import annotations

import functools
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Optional, Sequence

import numpy as np

from . import _kernels
from ._tables import (
    aperiodic_mask,
    all_sum_table,
    image_table,
    popcounts,
    zero_sets,
    zero_sizes,
    zero_sum_table,
)
from .errors import InputError, NoWitnessFound, OrderCapExceeded, UnknownTheorem
from .graphs import Digraph, cayley_graph, graph_kappa1, seeded_digraph
from .groups import (
    AbelianGroup,
    GroupSubset,
    automorphisms,
    default_order_cap,
    groups_of_orders,
    is_generating_bits,
    make_group,
    parse_group,
)
from .isoperimetry import hyper_atom_bits, separation_table
from .lemmas import (
    LemmaResult,
    apc,
    cay_olson,
    corollary_vosper,
    degenkappa,
    hyperatom_thm,
    inter2frag,
    negative,
    nongenerating,
    quotient_eq4,
    transfer,
    tpowers,
    two_atom,
)
from .report import GroupTally, VerificationReport
from .structure import (
    _n_minus_2_violation,
    _twothird_violation,
    check_twothird,
    classify_extremal_pair,
)
from .sumsets import ap_certificate_bits

CHUNK_SIZE = 64
GRAPH_CHUNK = 8
RANDOM_GRAPHS = 200
RANDOM_LABEL = "seeded_digraphs"


@dataclass
class Partial:
    """Counts and failures of one chunk."""

    hypothesis_count: int = 0
    verified_count: int = 0
    counterexamples: list = field(default_factory=list)
    observations: Counter = field(default_factory=Counter)

    def tally(self, checked: int, failures: Sequence[dict] = ()) -> None:
        self.hypothesis_count += checked
        self.verified_count += checked - len(failures)
        self.counterexamples.extend(failures)

    def lemma(self, G: AbelianGroup, s: int, t: Optional[int], r: LemmaResult) -> None:
        if not r.applicable:
            self.observations["excluded"] += 1
            return
        self.tally(1, [] if r.holds else [_cx(G.name, G.format_bits(s), _fmt(G, t), r.detail)])
        self.observations.update(r.observations)

    def merge(self, other: "Partial") -> None:
        self.hypothesis_count += other.hypothesis_count
        self.verified_count += other.verified_count
        self.counterexamples.extend(other.counterexamples)
        self.observations.update(other.observations)


def _cx(group: str, s: Optional[str], t: Optional[str], detail: str) -> dict:
    return {"group": group, "S": s, "T": t, "detail": detail}


def _fmt(G: AbelianGroup, bits: Optional[int]) -> Optional[str]:
    return None if bits is None else G.format_bits(bits)


# -- automorphism reduction ---------------------------------------------------

def _generators(perms: Sequence[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """A small generating set, chosen greedily in canonical order."""
    n = len(perms[0])
    ident = tuple(range(n))
    closure = {ident}
    gens = []
    for p in perms:
        if p in closure:
            continue
        gens.append(p)
        frontier = list(closure)
        while frontier:
            nxt = []
            for q in frontier:
                for g in gens:
                    r = tuple(g[q[i]] for i in range(n))
                    if r not in closure:
                        closure.add(r)
                        nxt.append(r)
            frontier = nxt
    return gens


@functools.lru_cache(maxsize=16)
def orbit_representatives(G: AbelianGroup) -> np.ndarray:
    """Mask over zero-set indices: True for the smallest set of each automorphism orbit."""
    n = G.order
    sets = zero_sets(n)
    label = np.arange(len(sets), dtype=np.int64)
    maps = []
    for g in _generators(automorphisms(G)):
        img = image_table([1 << g[i] for i in range(n)])[sets]
        maps.append(img >> 1)
    changed = True
    while changed:
        changed = False
        for m in maps:
            new = np.minimum(label, label[m])
            np.minimum.at(new, m, label)
            new = new[new]
            if not np.array_equal(new, label):
                label = new
                changed = True
    return label == np.arange(len(sets))


def _outer_sets(G: AbelianGroup, lo: int, hi: int, reduce: bool) -> Iterator[int]:
    if reduce:
        keep = orbit_representatives(G)
        for m in range(lo, hi):
            if keep[m]:
                yield (m << 1) | 1
    else:
        for m in range(lo, hi):
            yield (m << 1) | 1


# -- vectorized helpers -------------------------------------------------------

def critical_partners(G: AbelianGroup, s: int, min_size: int = 1,
                      max_sum: Optional[int] = None) -> tuple[np.ndarray, np.ndarray]:
    """Sets ``T`` containing zero with ``|S+T| = |S|+|T|-1`` and ``S+T`` aperiodic.

    Returns the matching ``T`` bitsets and their sums ``S+T``.
    """
    n = G.order
    sums = zero_sum_table(G, s)
    tsz = zero_sizes(n)
    pc = popcounts(sums)
    mask = (pc == s.bit_count() + tsz - 1) & (tsz >= min_size)
    if max_sum is not None:
        mask &= pc <= max_sum
    idx = np.nonzero(mask)[0]
    idx = idx[aperiodic_mask(G, sums[idx])]
    return zero_sets(n)[idx], sums[idx]


@functools.lru_cache(maxsize=4)
def _negation_table(G: AbelianGroup) -> np.ndarray:
    return image_table([1 << G.neg(i) for i in range(G.order)])


# -- theorem runners ----------------------------------------------------------
# each runner receives (G, outer sets, options, partial)

def _kneser(G, sets, opts, out):
    n = G.order
    tsz = zero_sizes(n)
    bs = zero_sets(n)
    for a in sets:
        sums = zero_sum_table(G, a)
        ap = aperiodic_mask(G, sums)
        pc = popcounts(sums)
        bad = np.nonzero(ap & (pc < a.bit_count() + tsz - 1))[0]
        out.tally(int(ap.sum()), [
            _cx(G.name, G.format_bits(a), G.format_bits(int(bs[i])),
                f"|A+B|={int(pc[i])} < |A|+|B|-1") for i in bad])


def _lee(G, sets, opts, out):
    n = G.order
    for s in sets:
        if not is_generating_bits(G, s):
            out.observations["excluded"] += 1
            continue
        tab = all_sum_table(G, s)
        ntab = all_sum_table(G, G.neg_bits(s))
        rhs = tab[1:]
        co = G.full ^ rhs
        back = G.full ^ ntab[co]
        bad = np.nonzero(tab[back] != rhs)[0]
        out.tally((1 << n) - 1, [
            _cx(G.name, G.format_bits(s), None, f"identity fails for X={G.format_bits(int(i) + 1)}")
            for i in bad])


def _prehistorical(G, sets, opts, out):
    n = G.order
    bs = zero_sets(n)
    nb = _negation_table(G)[bs]
    tsz = zero_sizes(n)
    for a in sets:
        t = a.bit_count() + tsz - n
        live = t >= 1
        short = np.zeros(len(bs), dtype=bool)
        for x in range(n):
            reps = popcounts(a & G.translate_array(nb, x))
            short |= live & (reps < t)
        out.tally(int(live.sum()), [
            _cx(G.name, G.format_bits(a), G.format_bits(int(bs[i])),
                "some element has fewer than |A|+|B|-|G| representations")
            for i in np.nonzero(short)[0]])


def _apc(G, sets, opts, out):
    if not G.is_cyclic:
        return
    xs = zero_sets(G.order).tolist()
    for p in sets:
        if p.bit_count() < 2 or ap_certificate_bits(G, p) is None:
            continue
        for x in xs:
            out.lemma(G, p, x, apc(G, p, x))


def _single(check: Callable, ks: Sequence[Optional[int]] = (None,),
            max_size: Optional[Callable[[int], int]] = None, skip_progressions: bool = False):
    def run(G, sets, opts, out):
        limit = None if max_size is None else max_size(G.order)
        for s in sets:
            if limit is not None and s.bit_count() > limit:
                out.observations["excluded"] += len(ks)
                continue
            if skip_progressions and ap_certificate_bits(G, s) is not None:
                out.observations["excluded:progression"] += len(ks)
                continue
            for k in ks:
                out.lemma(G, s, None, check(G, s) if k is None else check(G, s, k))
    return run


def _pair_lemma(check: Callable):
    def run(G, sets, opts, out):
        for s in sets:
            ts, _ = critical_partners(G, s)
            for t in ts.tolist():
                out.lemma(G, s, t, check(G, s, t))
    return run


def _twothird(G, sets, opts, out):
    n = G.order
    for s in sets:
        if not is_generating_bits(G, s) or ap_certificate_bits(G, s) is not None:
            continue
        ts, _ = critical_partners(G, s, min_size=s.bit_count(), max_sum=(2 * n + 2) // 3)
        for t in ts.tolist():
            clause = _twothird_violation(G, s, t)
            if clause is not None:
                out.observations[f"excluded:{clause}"] += 1
                continue
            S, T = GroupSubset(G, s), GroupSubset(G, t)
            try:
                v = check_twothird(S, T)
            except NoWitnessFound as exc:
                out.tally(1, [_cx(G.name, str(S), str(T), str(exc))])
                continue
            h = v.witness_subgroup.bits
            ok = v.certify() and h.bit_count() >= 2
            out.tally(1, [] if ok else [_cx(G.name, str(S), str(T), f"verdict fails checks {v.checks}")])
            out.observations[f"hyper_atoms:{len(hyper_atom_bits(G, s))}"] += 1


def _n_minus_2(G, sets, opts, out):
    n = G.order
    for s in sets:
        if s.bit_count() < 2 or ap_certificate_bits(G, s) is not None:
            continue
        ts, _ = critical_partners(G, s, min_size=s.bit_count(), max_sum=n - 2)
        for t in ts.tolist():
            clause = _n_minus_2_violation(G, s, t)
            if clause is not None:
                out.observations[f"excluded:{clause}"] += 1
                continue
            S, T = GroupSubset(G, s), GroupSubset(G, t)
            try:
                v = classify_extremal_pair(S, T)
            except NoWitnessFound as exc:
                out.tally(1, [_cx(G.name, str(S), str(T), str(exc))])
                continue
            target = s.bit_count() + t.bit_count() - 1
            ok = v.certify() and v.reconstructed_size == target
            out.tally(1, [] if ok else [_cx(G.name, str(S), str(T), f"verdict fails checks {v.checks}")])
            out.observations[f"case:{v.case_tag.value}"] += 1
            out.observations["cases_holding:" + "+".join(c.value for c in v.cases_holding)] += 1
            out.observations[f"witness_source:{v.witness_source}"] += 1


def _cayley_kappa(G, sets, opts, out):
    for s in sets:
        if not is_generating_bits(G, s):
            continue
        graph_k = graph_kappa1(cayley_graph(G, GroupSubset(G, s)))
        group_k = separation_table(G, s).kappa(1)
        out.tally(1, [] if graph_k == group_k else [
            _cx(G.name, G.format_bits(s), None, f"graph kappa_1={graph_k}, group kappa_1={group_k}")])


def _matching_failures(graph: Digraph, k: int, second_form: bool) -> tuple[int, list[tuple[int, int]]]:
    images = graph.image_array()
    fails = np.zeros(16, dtype=np.int64)
    inputs, _, _, nfail = _kernels.matching_sweep(images, k, second_form, fails)
    if nfail > len(fails):
        fails = np.zeros(nfail, dtype=np.int64)
        _kernels.matching_sweep(images, k, second_form, fails)
    decoded = [(int(f) >> 6, int(f) & 63) for f in fails[:nfail]]
    return inputs, decoded


def _vertex_list(bits: int) -> str:
    return "{" + ",".join(str(v) for v in range(bits.bit_length()) if bits >> v & 1) + "}"


def _matching_runner(second_form: bool):
    form = "SIP2" if second_form else "SIPG"

    def run(G, sets, opts, out):
        for s in sets:
            if s == G.full or not is_generating_bits(G, s):
                continue
            graph = cayley_graph(G, GroupSubset(G, s))
            k = separation_table(G, s).kappa(1)
            inputs, fails = _matching_failures(graph, k, second_form)
            out.tally(inputs, [
                _cx(G.name, G.format_bits(s), None,
                    f"{form} matching fails for X={G.format_bits(x)}"
                    + (f", x={G.format_element(v)}" if second_form else ""))
                for x, v in fails])
            out.observations["graphs"] += 1
    return run


def _sipg_random(graphs: Iterable[tuple[int, Digraph]], opts, out):
    for index, graph in graphs:
        k = graph_kappa1(graph)
        if k is None:
            out.observations["graphs_not_separable"] += 1
            continue
        out.observations["graphs"] += 1
        for second_form in (False, True):
            form = "SIP2" if second_form else "SIPG"
            inputs, fails = _matching_failures(graph, k, second_form)
            out.tally(inputs, [
                _cx(f"digraph#{index}", None, None,
                    f"{form} matching fails for X={_vertex_list(x)}"
                    + (f", x={v}" if second_form else "") + f"; graph: {graph.images}")
                for x, v in fails])
            out.observations[f"{form}_inputs"] += inputs


@dataclass(frozen=True)
class Theorem:
    name: str
    runner: Callable
    summary: str
    space: str = "sets"


THEOREMS: dict[str, Theorem] = {t.name: t for t in [
    Theorem("kneser", _kneser, "|A+B| >= |A|+|B|-1 whenever A+B is aperiodic"),
    Theorem("prehistorical", _prehistorical, "|A|+|B| >= |G|+t gives t representations everywhere"),
    Theorem("apc", _apc, "progression lower bound and rigidity in cyclic groups"),
    Theorem("lee", _lee, "co-image of the co-image identity"),
    Theorem("negative", _single(negative, (1, 2)), "kappa_k(S) = kappa_k(-S) and fragment duality"),
    Theorem("degenkappa", _single(degenkappa), "kappa_1 versus kappa_2 degeneracy"),
    Theorem("inter2frag", _single(inter2frag, (1, 2)), "atoms meeting a fragment in k points lie inside it"),
    Theorem("cay", _single(cay_olson), "1-atom through zero is a subgroup and kappa_1 >= |S|/2"),
    Theorem("two_atom", _single(two_atom), "2-atom through zero is a subgroup or has two elements"),
    Theorem("corollary_vosper", _single(corollary_vosper, max_size=lambda n: (n + 1) // 2),
            "a non-progression non-Vosper set has a subgroup 2-fragment"),
    Theorem("quotient_eq4", _single(quotient_eq4), "kappa_1 of the image modulo a subgroup 1-fragment"),
    Theorem("hyperatom", _single(hyperatom_thm, max_size=lambda n: (n + 1) // 2),
            "hyper-atoms are nontrivial with progression or Vosper images"),
    Theorem("hyperatom_nonprogression",
            _single(hyperatom_thm, max_size=lambda n: (n + 1) // 2, skip_progressions=True),
            "the hyper-atom statement restricted to sets that are not progressions"),
    Theorem("nongenerating", _pair_lemma(nongenerating), "quasi-periodicity modulo <S-S>"),
    Theorem("transfer", _pair_lemma(transfer), "partners of quasi-periodic modular progressions are similar"),
    Theorem("tpowers", _pair_lemma(tpowers), "T^S - S is critical and aperiodic"),
    Theorem("twothird", _twothird, "small critical pairs are similar modular progressions"),
    Theorem("n_minus_2", _n_minus_2, "extremal pairs fall into one of three structure cases"),
    Theorem("cayley_kappa", _cayley_kappa, "graph and group connectivities agree on Cayley graphs"),
    Theorem("sipg", _matching_runner(False), "boundary matchings on Cayley graphs"),
    Theorem("sip2", _matching_runner(True), "boundary matchings with a repeated vertex on Cayley graphs"),
    Theorem("sipg_random", _sipg_random, "both matching forms on seeded random digraphs", "digraphs"),
]}


# -- configuration and driver -------------------------------------------------

@dataclass(frozen=True)
class SweepConfig:
    theorem: str
    groups: tuple[str, ...] = ()
    workers: int = 1
    order_cap: Optional[int] = None
    automorphism_reduction: bool = False
    seed: int = 0
    graph_count: int = RANDOM_GRAPHS
    output: Optional[str] = None
    cache_dir: Optional[str] = None

    def __post_init__(self):
        if self.theorem not in THEOREMS:
            raise UnknownTheorem(f"unknown theorem {self.theorem!r}; choose from {', '.join(THEOREMS)}")
        if self.workers < 1:
            raise InputError("worker count must be at least 1")
        if self.order_cap is None:
            object.__setattr__(self, "order_cap", default_order_cap())
        object.__setattr__(self, "groups", tuple(G.name for G in self.resolved_groups()))

    @property
    def is_graph_sweep(self) -> bool:
        return THEOREMS[self.theorem].space == "digraphs"

    def resolved_groups(self) -> list[AbelianGroup]:
        if self.is_graph_sweep:
            return []
        out = []
        for spec in self.groups:
            G = spec if isinstance(spec, AbelianGroup) else parse_group(str(spec), max_order=self.order_cap)
            if G.order > self.order_cap:
                raise OrderCapExceeded(f"group order {G.order} exceeds the cap {self.order_cap}")
            if G not in out:
                out.append(G)
        return out

    def snapshot(self) -> dict:
        """Settings that determine the report; workers and paths are excluded."""
        d = {"theorem": self.theorem, "order_cap": self.order_cap,
             "automorphism_reduction": self.automorphism_reduction}
        if self.is_graph_sweep:
            d.update(seed=self.seed, graph_count=self.graph_count)
        else:
            d["groups"] = list(self.groups)
        return d


def groups_in_range(lo: int, hi: int, order_cap: Optional[int] = None) -> list[AbelianGroup]:
    cap = default_order_cap() if order_cap is None else order_cap
    if hi > cap:
        raise OrderCapExceeded(f"order {hi} exceeds the cap {cap}")
    if lo > hi:
        raise InputError(f"empty order range {lo}..{hi}")
    return groups_of_orders(range(lo, hi + 1), max_order=cap)


def _units(cfg: SweepConfig) -> list[tuple]:
    if cfg.is_graph_sweep:
        return [("graphs", lo, min(lo + GRAPH_CHUNK, cfg.graph_count))
                for lo in range(0, cfg.graph_count, GRAPH_CHUNK)]
    units = []
    for G in cfg.resolved_groups():
        total = 1 << (G.order - 1)
        units.extend((G.factors, lo, min(lo + CHUNK_SIZE, total)) for lo in range(0, total, CHUNK_SIZE))
    return units


def _run_unit(args) -> Partial:
    theorem, factors, lo, hi, reduce, seed = args
    out = Partial()
    thm = THEOREMS[theorem]
    if factors == "graphs":
        thm.runner(((i, seeded_digraph(seed, i)) for i in range(lo, hi)), {}, out)
    else:
        G = make_group(factors, max_order=1 << 30)
        thm.runner(G, _outer_sets(G, lo, hi, reduce), {}, out)
    return out


def run_sweep(cfg: SweepConfig) -> VerificationReport:
    start = time.perf_counter()
    units = _units(cfg)
    jobs = [(cfg.theorem, f, lo, hi, cfg.automorphism_reduction, cfg.seed) for f, lo, hi in units]
    if cfg.workers == 1 or len(jobs) <= 1:
        parts = [_run_unit(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            parts = list(pool.map(_run_unit, jobs))
    total = Partial()
    tallies: dict[str, GroupTally] = {}
    labels = [RANDOM_LABEL] if cfg.is_graph_sweep else list(cfg.groups)
    for label in labels:
        tallies[label] = GroupTally(label)
    for (f, _, _), part in zip(units, parts):
        label = RANDOM_LABEL if f == "graphs" else make_group(f, max_order=1 << 30).name
        g = tallies[label]
        g.hypothesis_count += part.hypothesis_count
        g.verified_count += part.verified_count
        g.counterexample_count += len(part.counterexamples)
        total.merge(part)
    return VerificationReport(
        theorem=cfg.theorem,
        groups=labels,
        hypothesis_count=total.hypothesis_count,
        verified_count=total.verified_count,
        counterexamples=total.counterexamples,
        elapsed_ms=round((time.perf_counter() - start) * 1000, 3),
        config=cfg.snapshot(),
        per_group=list(tallies.values()),
        observations=dict(sorted(total.observations.items())),
    )


def sweep(theorem_id: str, groups: Iterable = (), *, orders: Optional[tuple[int, int]] = None,
          workers: int = 1, order_cap: Optional[int] = None, automorphism_reduction: bool = False,
          seed: int = 0, graph_count: int = RANDOM_GRAPHS) -> VerificationReport:
    """Sweep ``theorem_id`` over ``groups`` (specs or groups) and/or an inclusive order range."""
    specs = [g if isinstance(g, AbelianGroup) else str(g) for g in groups]
    if orders is not None:
        specs.extend(groups_in_range(orders[0], orders[1], order_cap))
    cfg = SweepConfig(theorem_id, tuple(specs), workers, order_cap, automorphism_reduction,
                      seed, graph_count)
    return run_sweep(cfg)
