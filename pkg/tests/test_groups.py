import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from critpair.errors import (
    EmptyFactors,
    EmptySet,
    FactorBelowTwo,
    GroupMismatch,
    NotASubgroup,
    OrderCapExceeded,
    ParseError,
)
from critpair.groups import (
    Subgroup,
    abelian_group_types,
    automorphisms,
    enumerate_subgroups,
    generated_subgroup,
    groups_of_orders,
    make_group,
    parse_group,
    parse_subset,
    quotient_view,
)

FACTORS = [(2,), (5,), (6,), (2, 2), (2, 4), (3, 3), (2, 2, 2), (12,), (2, 6)]


def test_cyclic_and_product_construction():
    Z6 = make_group([6])
    assert Z6.order == 6 and Z6.is_cyclic and Z6.name == "Z6"
    G = make_group([2, 4])
    assert G.order == 8 and not G.is_cyclic
    assert G.element(G.encode((1, 3))).coords == (1, 3)


@pytest.mark.parametrize("factors, exc", [([], EmptyFactors), ([1], FactorBelowTwo),
                                          ([4, 0], FactorBelowTwo), ([32], OrderCapExceeded)])
def test_construction_errors(factors, exc):
    with pytest.raises(exc):
        make_group(factors)


def test_order_cap_env_override(monkeypatch):
    monkeypatch.setenv("CPW_ORDER_CAP", "40")
    assert make_group([32]).order == 32
    monkeypatch.setenv("CPW_ORDER_CAP", "8")
    with pytest.raises(OrderCapExceeded):
        make_group([12])


@pytest.mark.parametrize("factors", FACTORS)
def test_indexing_matches_mixed_radix_oracle(factors):
    G = make_group(factors)
    O = oracles.Grp(factors)
    for i in range(G.order):
        assert G.element(i).coords == O.element(i)
        for j in range(G.order):
            assert G.add(i, j) == O.index(O.add(O.element(i), O.element(j)))
        assert G.neg(i) == O.index(O.neg(O.element(i)))


@given(st.sampled_from(FACTORS), st.data())
@settings(max_examples=60, deadline=None)
def test_translate_and_sumset_bits_match_oracle(factors, data):
    G = make_group(factors)
    O = oracles.Grp(factors)
    a = data.draw(st.integers(0, G.full))
    b = data.draw(st.integers(0, G.full))
    g = data.draw(st.integers(0, G.order - 1))
    A, B = O.from_bits(a), O.from_bits(b)
    assert G.translate(a, g) == O.to_bits({O.add(x, O.element(g)) for x in A})
    assert G.sum_bits(a, b) == O.to_bits(oracles.sumset(O, A, B))
    assert G.neg_bits(a) == O.to_bits({O.neg(x) for x in A})


def test_generated_subgroup_examples():
    Z6 = make_group([6])
    assert generated_subgroup(Z6.subset([2])).elements.indices() == [0, 2, 4]
    assert generated_subgroup(Z6.subset([1])).order == 6
    G = make_group([2, 4])
    H = generated_subgroup(G.subset([(1, 0), (0, 2)]))
    O = oracles.Grp((2, 4))
    assert set(H.elements.indices()) == {O.index(x) for x in oracles.span(O, {(1, 0), (0, 2)})}
    assert {e.coords for e in H} == {(0, 0), (1, 0), (0, 2), (1, 2)}
    with pytest.raises(EmptySet):
        generated_subgroup(Z6.subset([]))


@pytest.mark.parametrize("factors, count", [((6,), 4), ((2, 2), 5), ((2, 4), 8)])
def test_subgroup_counts(factors, count):
    assert len(enumerate_subgroups(make_group(factors))) == count


@pytest.mark.parametrize("factors", FACTORS + [(4, 4), (2, 8), (16,), (2, 2, 4)])
def test_subgroup_lattice_matches_closure_oracle(factors):
    G = make_group(factors)
    O = oracles.Grp(factors)
    got = sorted(H.bits for H in enumerate_subgroups(G))
    want = sorted(O.to_bits(H) for H in oracles.subgroups(factors))
    assert got == want


def test_subgroup_rejects_non_closed_sets():
    Z6 = make_group([6])
    with pytest.raises(NotASubgroup):
        Subgroup(Z6.subset([0, 1]))


def test_quotient_examples():
    Z6 = make_group([6])
    q = quotient_view(Z6, Subgroup(Z6.subset([0, 3])))
    assert q.quotient_group.order == 3
    assert q.image(Z6.subset([0, 1, 3])).indices() == [0, 1]
    ident = quotient_view(Z6, Subgroup(Z6.subset([0])))
    assert ident.quotient_group.order == 6
    assert all(ident.phi_index(i) == i for i in range(6))
    assert quotient_view(Z6, Subgroup(Z6.whole)).quotient_group.order == 1


@pytest.mark.parametrize("factors", [(12,), (2, 4), (2, 2, 2), (4, 4), (2, 6)])
def test_quotient_is_a_homomorphism_with_coset_fibres(factors):
    G = make_group(factors)
    for H in enumerate_subgroups(G):
        q = quotient_view(G, H)
        Q = q.quotient_group
        assert Q.order * H.order == G.order
        for i in range(G.order):
            assert q.preimage_bits(1 << q.phi_index(i)) == G.translate(H.bits, i)
            for j in range(G.order):
                assert q.phi_index(G.add(i, j)) == Q.add(q.phi_index(i), q.phi_index(j))


def test_group_types_and_listing():
    assert abelian_group_types(8) == [(8,), (2, 4), (2, 2, 2)]
    assert abelian_group_types(12) == [(12,), (2, 6)]
    assert [G.name for G in groups_of_orders([4, 9])] == ["Z4", "Z2xZ2", "Z9", "Z3xZ3"]


@pytest.mark.parametrize("factors, count", [((8,), 4), ((2, 4), 8), ((2, 2, 2), 168),
                                            ((12,), 4), ((3, 3), 48)])
def test_automorphism_group_orders(factors, count):
    G = make_group(factors)
    auts = automorphisms(G)
    assert len(auts) == count
    for p in auts:
        assert sorted(p) == list(range(G.order))
        assert all(p[G.add(i, j)] == G.add(p[i], p[j]) for i in range(G.order) for j in range(G.order))


def test_parsing():
    assert parse_group("Z2xZ4") == make_group([2, 4])
    assert parse_group("z2 x z2 x z3").order == 12
    G = make_group([2, 8])
    S = parse_subset(G, "{(0,0),(1,0),(0,4)}")
    assert S.indices() == sorted([0, 8, 4])
    assert parse_subset(make_group([6]), "{0, 1, 3}").indices() == [0, 1, 3]
    assert parse_subset(make_group([6]), "{}").bits == 0
    for bad in ["Z", "6", "Z2*Z3", ""]:
        with pytest.raises(ParseError):
            parse_group(bad)
    assert parse_subset(make_group([6]), "0,1").indices() == [0, 1]
    for bad in ["{0,9}", "{(0,9)}", "{a}", "{0,,1}"]:
        with pytest.raises(ParseError):
            parse_subset(make_group([6]), bad)
    for bad in ["{(0,9)}", "{(2,0)}", "{(0,0,0)}", "{(0,0) x}"]:
        with pytest.raises(ParseError):
            parse_subset(make_group([2, 4]), bad)


def test_literal_round_trip():
    for factors in [(6,), (2, 4)]:
        G = make_group(factors)
        for bits in range(0, G.full + 1, 7):
            S = G.from_bits(bits)
            assert parse_subset(G, S.literal()) == S


def test_mixing_groups_is_rejected():
    A = make_group([6]).subset([0])
    B = make_group([2, 3]).subset([0])
    with pytest.raises(GroupMismatch):
        A | B
