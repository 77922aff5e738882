from itertools import combinations

import pytest

import oracles as O
from mvpairs import catalog
from mvpairs.bgpairs import BGPair
from mvpairs.effect import EffectAlgebra, find_isomorphism, validate_effect_algebra


def test_builtin_lookup():
    l3 = catalog.builtin("luka3").instance()
    assert l3.n == 3 and l3.plus(1, 1) == 2
    with pytest.raises(catalog.UnknownName):
        catalog.builtin("nope")


def test_cyclic_entry_is_the_three_cycle():
    p = catalog.builtin("cyclic3-nonmvpair").instance()
    assert set(p.g.perms) == {(0, 1, 2), (1, 2, 0), (2, 0, 1)}
    # the image table: a1 -> a2, a2 -> a3, a3 -> a1, complements follow
    f = (1, 2, 0)
    images = {x: O.act(f, x) for x in range(8)}
    assert images == {0: 0, 1: 2, 2: 4, 4: 1, 6: 5, 5: 3, 3: 6, 7: 7}


def test_boolean3_full_entry():
    p = catalog.builtin("boolean3-full").instance()
    assert isinstance(p, BGPair) and len(p.g) == 6


def test_required_instances_present():
    names = set(catalog.CATALOG)
    want = {f"luka{n}" for n in range(2, 7)} | {f"boolean{k}" for k in range(1, 5)}
    want |= {"luka2xluka3", "luka3xluka3", "mo2", "cyclic3-nonmvpair"}
    want |= {f"boolean{n}-full" for n in range(1, 5)} | {f"boolean{n}-trivial" for n in range(1, 5)}
    assert want <= names


def test_catalog_expectations_recomputed():
    assert catalog.check_catalog() == {}


def test_enumerate_two():
    algs = list(catalog.enumerate_effect_algebras(2))
    assert len(algs) == 1 and algs[0].n == 2


def test_enumerate_three_contains_luka3():
    algs = [e for e in catalog.enumerate_effect_algebras(3) if e.n == 3]
    assert len(algs) == 1
    assert find_isomorphism(algs[0], catalog.luka(3)) is not None


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_enumeration_matches_brute_force(n):
    ours = [e for e in catalog.enumerate_effect_algebras(n) if e.n == n]
    brute = O.all_effect_algebras(n)
    assert len(ours) == len(brute)
    for T in brute:
        e = EffectAlgebra.from_table(T, 0, n - 1)
        assert sum(find_isomorphism(e, f) is not None for f in ours) == 1


def test_enumeration_counts_golden():
    counts = {}
    for e in catalog.enumerate_effect_algebras(6):
        counts[e.n] = counts.get(e.n, 0) + 1
    assert counts == {2: 1, 3: 1, 4: 3, 5: 4, 6: 10}


def test_enumeration_has_no_duplicates():
    algs = list(catalog.enumerate_effect_algebras(6))
    for a, b in combinations(algs, 2):
        if a.n == b.n:
            assert find_isomorphism(a, b) is None
    assert all(validate_effect_algebra(e).ok for e in algs)


def test_sampled_sizes_are_seeded():
    a = [e.sum for e in catalog.enumerate_effect_algebras(7, seed=3, samples=4) if e.n == 7]
    b = [e.sum for e in catalog.enumerate_effect_algebras(7, seed=3, samples=4) if e.n == 7]
    assert a == b and 0 < len(a) <= 4
    assert all(validate_effect_algebra(EffectAlgebra(7, s, 0, 6)).ok for s in a)


def test_bg_pair_enumeration():
    by_n = {}
    for p in catalog.enumerate_bg_pairs(4):
        assert p.g.is_group()
        by_n.setdefault(p.b.atom_count, []).append(len(p.g))
    assert sorted(by_n[2]) == [1, 2]
    assert sorted(by_n[3]) == [1, 2, 3, 6]
    assert len(by_n[4]) == 11  # conjugacy classes of subgroups of S4
    with pytest.raises(ValueError):
        list(catalog.enumerate_bg_pairs(5))
