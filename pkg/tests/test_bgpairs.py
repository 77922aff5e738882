from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

import oracles as O
from mvpairs import catalog
from mvpairs.bgpairs import (
    BGPair,
    CapExceeded,
    Group,
    NotMvPair,
    PhiMismatch,
    all_subgroups,
    apply,
    build_quotient_mv,
    check_mvp1,
    check_mvp2,
    compose,
    full_aut,
    identity,
    invert,
    kernel_equality_check,
    kernel_partition,
    lower_sets,
    max_transport_check,
    meet_identity_witness,
    mv_pair_verdict,
    orbit_partition,
    phi_preserving_group,
    phi_swap,
    subgroup_closure,
    verify_representation,
)
from mvpairs.effect import NotMvEffect, check_congruence, find_isomorphism, is_mv_effect, mv_characterizations, riesz_properties
from mvpairs.rgen import BooleanAlg, rgenerate

CYCLE = (1, 2, 0)
MV = [e for e in catalog.effect_algebras() if is_mv_effect(e)]


def pair(n, gens=(), full=False):
    g = full_aut(n) if full else subgroup_closure(list(gens), n)
    return BGPair(BooleanAlg(n), g)


def every_pair(max_atoms=3):
    for n in range(1, max_atoms + 1):
        for h in all_subgroups(n):
            yield BGPair(BooleanAlg(n), h)


ALL3 = list(every_pair(3))


# -- groups -----------------------------------------------------------------------

def test_full_aut_sizes():
    assert full_aut(1).perms == ((0,),)
    assert len(full_aut(3)) == 6
    g4 = full_aut(4)
    assert len(g4) == 24 and g4.is_group()


def test_full_aut_cap():
    with pytest.raises(CapExceeded):
        full_aut(9)
    with pytest.raises(CapExceeded):
        full_aut(4, cap=3)


def test_subgroup_closure_examples():
    assert subgroup_closure([], 3).perms == (identity(3),)
    c = subgroup_closure([CYCLE], 3)
    assert set(c.perms) == {(0, 1, 2), (1, 2, 0), (2, 0, 1)}
    assert subgroup_closure([(1, 0, 2), CYCLE], 3) == full_aut(3)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.permutations(range(n)), max_size=3).map(lambda g: (n, g))))
def test_closure_matches_oracle_and_is_group(ng):
    n, gens = ng
    g = subgroup_closure([tuple(p) for p in gens], n)
    assert set(g.perms) == O.closure([tuple(p) for p in gens], n)
    assert g.is_group()
    for p, q in product(g.perms[:6], repeat=2):
        assert compose(p, q) in g and invert(p) in g


def test_action_is_atomwise_image():
    p = pair(3, [CYCLE])
    for i, perm in enumerate(p.g.perms):
        for x in p.b.elements():
            assert p.apply(i, x) == O.act(perm, x) == apply(perm, x)


def test_subgroup_counts():
    # S1: 1, S2: 2, S3: 6 subgroups (trivial, three C2, C3, S3), S4: 30
    assert [len(all_subgroups(n)) for n in (1, 2, 3, 4)] == [1, 2, 6, 30]


# -- orbits and lower sets -----------------------------------------------------------

def test_trivial_group_orbits_are_singletons():
    p = pair(3)
    assert orbit_partition(p).blocks == [[x] for x in range(8)]


def test_s3_orbits_by_cardinality():
    blocks = orbit_partition(pair(3, full=True)).blocks
    assert sorted(sorted(bin(x).count("1") for x in b) for b in blocks) == [[0], [1, 1, 1], [2, 2, 2], [3]]


def test_cyclic_orbits():
    blocks = orbit_partition(catalog.cyclic3_pair()).blocks
    assert blocks == [[0], [1, 2, 4], [3, 5, 6], [7]]


@pytest.mark.parametrize("p", ALL3, ids=lambda p: f"n{p.b.atom_count}-g{len(p.g)}")
def test_orbits_match_oracle(p):
    want = O.orbits(p.b.atom_count, p.g.perms)
    assert [frozenset(b) for b in orbit_partition(p).blocks] == want


def test_lower_sets_trivial_group():
    p = pair(3)
    ls = lower_sets(p, 0b011, 0b110)
    assert ls.L == (0b010,) and ls.maxL == (0b010,)


def test_lower_sets_s3_example():
    ls = lower_sets(pair(3, full=True), 0b001, 0b010)
    assert ls.L == (0, 0b001) and ls.maxL == (0b001,)


@pytest.mark.parametrize("p", ALL3, ids=lambda p: f"n{p.b.atom_count}-g{len(p.g)}")
def test_lplus_is_literal_double_image_set(p):
    for a, b in product(p.b.elements(), repeat=2):
        ls = lower_sets(p, a, b)
        lp = O.lplus(p.g.perms, a, b)
        assert set(ls.Lplus) == lp
        assert set(ls.L) <= lp
        assert all(O.act(h, x) in lp for h in p.g.perms for x in lp)


# -- MVP1 / MVP2 -----------------------------------------------------------------------

def test_s3_and_trivial_are_mv_pairs():
    assert check_mvp1(pair(3, full=True)).holds
    assert check_mvp2(pair(3, full=True)).holds
    for n in (1, 2, 3, 4):
        assert mv_pair_verdict(pair(n)).is_mv_pair


def test_cyclic_counterexample_witness():
    c = check_mvp1(catalog.cyclic3_pair())
    assert not c.holds
    a, b, f = c.witness
    assert (a, b, f) == (0b001, 0b011, CYCLE)  # a1, complement of a3, f
    assert check_mvp2(catalog.cyclic3_pair()).holds
    assert c.consistent


@pytest.mark.parametrize("p", ALL3 + list(catalog.enumerate_bg_pairs(4)),
                         ids=lambda p: f"n{p.b.atom_count}-g{len(p.g)}")
def test_mvp_verdicts_match_oracle(p):
    k = p.b.atom_count
    v = mv_pair_verdict(p)
    assert v.mvp1 == O.mvp1(k, p.g.perms)
    assert v.mvp2 == O.mvp2(k, p.g.perms)
    assert v.charmvp1.consistent
    assert v.is_mv_pair == (v.mvp1 and v.mvp2)


def test_mvp1_witness_is_genuine():
    for p in ALL3:
        c = check_mvp1(p)
        if c.holds:
            continue
        a, b, f = c.witness
        fa = O.act(f, a)
        assert a & ~b == 0 and fa & ~b == 0
        assert not any(O.act(h, a) == fa and O.act(h, b) == b for h in p.g.perms)


def test_max_transport_examples():
    assert max_transport_check(pair(2, full=True))
    assert max_transport_check(pair(3, full=True))
    assert max_transport_check(pair(3))
    with pytest.raises(NotMvPair):
        max_transport_check(catalog.cyclic3_pair())


# -- quotients -----------------------------------------------------------------------------

def test_quotients():
    assert find_isomorphism(build_quotient_mv(pair(3, full=True)), catalog.luka(4)) is not None
    assert find_isomorphism(build_quotient_mv(pair(2, full=True)), catalog.luka(3)) is not None
    for n in (1, 2, 3):
        assert find_isomorphism(build_quotient_mv(pair(n)), catalog.boolean(n)) is not None
    with pytest.raises(NotMvPair):
        build_quotient_mv(catalog.cyclic3_pair())


@pytest.mark.parametrize("p", [p for p in ALL3 if mv_pair_verdict(p).is_mv_pair],
                         ids=lambda p: f"n{p.b.atom_count}-g{len(p.g)}")
def test_forward_direction(p):
    assert check_congruence(p.b.as_effect_algebra(), p.orbits).is_congruence
    q = build_quotient_mv(p)
    assert q.is_lattice_ordered and riesz_properties(q).rdp
    assert mv_characterizations(q).all_true
    assert meet_identity_witness(p, q) is None


def test_meet_class_is_maximal_part_of_lplus():
    """The meet class is the set of maximal elements of L+(a,b); L+ itself can
    be larger (it is closed downward along the orbit of a ^ f(b))."""
    p = pair(2, full=True)
    q = build_quotient_mv(p)
    assert meet_identity_witness(p, q, literal=True) == (1, 1)
    ls = lower_sets(p, 1, 1)
    ids = p.orbits.ids
    assert p.orbits.blocks[q.meet(ids[1], ids[1])] == [1, 2]
    assert set(ls.Lplus) == {0, 1, 2}


# -- G(M), phi_swap, representation ----------------------------------------------------------

@pytest.mark.parametrize("e", MV, ids=lambda e: e.name)
def test_phi_preserving_group_matches_brute(e):
    r = rgenerate(e)
    g = phi_preserving_group(r)
    assert set(g.perms) == O.phi_preserving(dict(enumerate(r.phi_table)), r.bool_alg.atom_count)
    assert g.is_group()


def test_phi_preserving_group_examples():
    assert len(phi_preserving_group(rgenerate(catalog.boolean(3)))) == 1
    assert set(phi_preserving_group(rgenerate(catalog.luka(3))).perms) == {(0, 1), (1, 0)}
    assert len(phi_preserving_group(rgenerate(catalog.boolean(2)))) == 1
    with pytest.raises(CapExceeded):
        phi_preserving_group(rgenerate(catalog.luka(5)), cap=3)


def test_phi_swap_examples():
    r = rgenerate(catalog.luka(3))
    assert phi_swap(r, 0b01, 0b01) == identity(2)
    assert phi_swap(r, 0b01, 0b10) == (1, 0)
    with pytest.raises(PhiMismatch):
        phi_swap(r, 0b01, 0b11)


@pytest.mark.parametrize("e", [e for e in MV if e.n <= 9], ids=lambda e: e.name)
def test_phi_swap_everywhere(e):
    r = rgenerate(e)
    k = r.bool_alg.atom_count
    brute = O.phi_preserving(dict(enumerate(r.phi_table)), k)
    for u, v in product(r.bool_alg.elements(), repeat=2):
        if r.phi(u) != r.phi(v):
            continue
        f = phi_swap(r, u, v)
        assert f in brute
        assert O.act(f, u) == v and O.act(f, v) == u
        rest = r.bool_alg.top & ~(u | v)
        assert all(O.act(f, x) == x for x in range(1 << k) if x & ~rest == 0)
        assert compose(f, f) == identity(k)


def test_verify_representation_examples():
    rep = verify_representation(catalog.luka(3))
    assert rep.ok and len(rep.group) == 2
    assert find_isomorphism(rep.quotient, catalog.luka(3)) is not None
    rep = verify_representation(catalog.boolean(2))
    assert rep.ok and len(rep.group) == 1 and rep.rgen.bool_alg.size == 4
    assert verify_representation(product_l2l3 := catalog.builtin("luka2xluka3").instance()).ok
    assert product_l2l3.n == 6
    with pytest.raises(NotMvEffect):
        verify_representation(catalog.mo2())


@pytest.mark.parametrize("e", MV, ids=lambda e: e.name)
def test_kernel_equality(e):
    r = rgenerate(e)
    assert kernel_equality_check(r)
    brute_g = O.phi_preserving(dict(enumerate(r.phi_table)), r.bool_alg.atom_count)
    orbit_sets = O.orbits(r.bool_alg.atom_count, sorted(brute_g))
    assert [frozenset(b) for b in kernel_partition(r).blocks] == orbit_sets


def test_group_order_golden():
    got = {e.name: len(phi_preserving_group(rgenerate(e))) for e in MV}
    assert got == {"luka2": 1, "luka3": 2, "luka4": 6, "luka5": 24, "luka6": 120,
                   "boolean1": 1, "boolean2": 1, "boolean3": 1, "boolean4": 1,
                   "luka2xluka3": 2, "luka3xluka3": 4}
