import itertools

import pytest

import oracles
from critpair.errors import InputError, OrderCapExceeded, UnknownTheorem
from critpair.groups import automorphisms, make_group
from critpair.sweep import (
    THEOREMS,
    Partial,
    SweepConfig,
    groups_in_range,
    orbit_representatives,
    sweep,
)


def _oracle_kneser_count(factors):
    O = oracles.Grp(factors)
    zs = [A for A in O.subsets() if O.zero in A]
    return sum(1 for A, B in itertools.product(zs, repeat=2)
               if len(oracles.period(O, oracles.sumset(O, A, B))) == 1)


@pytest.mark.parametrize("factors", [(4,), (2, 2), (6,)])
def test_kneser_hypothesis_count_matches_oracle(factors):
    G = make_group(factors)
    r = sweep("kneser", [G])
    assert r.ok and r.consistent()
    assert r.hypothesis_count == _oracle_kneser_count(factors)


def test_n_minus_2_count_matches_classifier_enumeration():
    from critpair.structure import n_minus_2_violation
    G = make_group([8])
    want = sum(1 for a, b in itertools.product(range(1, G.full + 1, 2), repeat=2)
               if G.sum_bits(a, b).bit_count() == a.bit_count() + b.bit_count() - 1
               and n_minus_2_violation(G.from_bits(a), G.from_bits(b)) is None)
    r = sweep("n_minus_2", ["Z8"])
    assert r.ok and r.hypothesis_count == want > 0


def test_worker_count_does_not_change_the_report():
    one = sweep("n_minus_2", ["Z12", "Z2xZ4"], workers=1)
    two = sweep("n_minus_2", ["Z12", "Z2xZ4"], workers=2)
    assert one.to_json(timing=False) == two.to_json(timing=False)
    assert one.hypothesis_count > 0


def test_random_digraph_sweep_is_seeded():
    a = sweep("sipg_random", seed=3, graph_count=20)
    b = sweep("sipg_random", seed=3, graph_count=20, workers=2)
    assert a.to_json(timing=False) == b.to_json(timing=False)
    assert a.ok and a.hypothesis_count > 0 and a.groups == ["seeded_digraphs"]


@pytest.mark.parametrize("factors", [(6,), (8,), (2, 4), (2, 2, 2), (3, 3)])
def test_orbit_representatives_pick_one_set_per_orbit(factors):
    G = make_group(factors)
    auts = automorphisms(G)
    keep = orbit_representatives(G)
    reps = set()
    for m in range(1 << (G.order - 1)):
        bits = (m << 1) | 1
        orbit = {sum(1 << p[i] for i in range(G.order) if bits >> i & 1) for p in auts}
        reps.add(min(orbit))
    assert sorted(((i << 1) | 1) for i in range(len(keep)) if keep[i]) == sorted(reps)


def test_automorphism_reduction_preserves_verdicts():
    full = sweep("cay", ["Z2xZ4", "Z12"])
    reduced = sweep("cay", ["Z2xZ4", "Z12"], automorphism_reduction=True)
    assert full.ok and reduced.ok
    assert 0 < reduced.hypothesis_count < full.hypothesis_count


def test_configuration_errors(monkeypatch):
    with pytest.raises(UnknownTheorem):
        SweepConfig("nope", ("Z6",))
    with pytest.raises(InputError):
        SweepConfig("kneser", ("Z6",), workers=0)
    with pytest.raises(OrderCapExceeded):
        sweep("kneser", ["Z32"])
    with pytest.raises(OrderCapExceeded):
        groups_in_range(2, 30)
    monkeypatch.setenv("CPW_ORDER_CAP", "6")
    with pytest.raises(OrderCapExceeded):
        sweep("kneser", ["Z8"])


def test_snapshot_excludes_run_only_settings():
    a = SweepConfig("kneser", ("Z6",), workers=1, output="/tmp/a")
    b = SweepConfig("kneser", ("Z6",), workers=4, output="/tmp/b", cache_dir="/tmp/c")
    assert a.snapshot() == b.snapshot()
    assert SweepConfig("kneser", ("Z6", "Z6")).groups == ("Z6",)


def test_partial_bookkeeping():
    p = Partial()
    p.tally(5, [{"group": "Z6", "S": "{0}", "T": None, "detail": "x"}])
    q = Partial()
    q.tally(3)
    q.observations["excluded"] += 2
    p.merge(q)
    assert (p.hypothesis_count, p.verified_count, len(p.counterexamples)) == (8, 7, 1)
    assert p.observations["excluded"] == 2


def test_every_registered_sweep_runs_on_a_small_group():
    for name, thm in THEOREMS.items():
        r = sweep(name, graph_count=4) if thm.space == "digraphs" else sweep(name, ["Z6"])
        assert r.consistent(), name
        if name not in ("apc", "hyperatom"):
            assert r.ok, (name, r.counterexamples[:2])


def test_progression_rigidity_sweep_reports_the_known_counterexample():
    r = sweep("apc", ["Z5"])
    assert not r.ok
    assert any(c["S"] == "{0,1,2}" and c["T"] == "{0,2,4}" for c in r.counterexamples)
