"""Boolean algebras with automorphism groups (BG-pairs).

Automorphisms of a finite Boolean algebra are exactly the permutations of its
atoms, so a group is stored as a sorted tuple of atom-image tuples and its
action on elements is tabulated once per pair.
"""
from __future__ import annotations

import itertools
from array import array
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .effect import (
    EAMorphism,
    EffectAlgebra,
    NotMvEffect,
    Partition,
    check_congruence,
    find_isomorphism,
    is_mv_effect,
    mv_characterizations,
    quotient,
    riesz_properties,
    validate_morphism,
)
from .order import bits
from .rgen import BooleanAlg, RGen, iso_between, rgenerate

DEFAULT_MAX_ATOMS = 8


class CapExceeded(Exception):
    pass


class NotMvPair(Exception):
    pass


class PhiMismatch(Exception):
    pass


Perm = tuple  # atom images: perm[k] is the image of atom k


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(p: Perm, q: Perm) -> Perm:
    """``p`` after ``q``."""
    return tuple(p[i] for i in q)


def invert(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def apply(p: Perm, x: int) -> int:
    y = 0
    for k in bits(x):
        y |= 1 << p[k]
    return y


def is_perm(p: Sequence[int], n: int) -> bool:
    return len(p) == n and sorted(p) == list(range(n))


@dataclass(frozen=True)
class Group:
    n: int
    perms: tuple[Perm, ...]

    @classmethod
    def of(cls, n, perms: Iterable[Sequence[int]]) -> "Group":
        return cls(n, tuple(sorted({tuple(p) for p in perms})))

    def __len__(self):
        return len(self.perms)

    def __contains__(self, p) -> bool:
        return tuple(p) in self._members

    def __iter__(self):
        return iter(self.perms)

    @cached_property
    def _members(self) -> frozenset:
        return frozenset(self.perms)

    def is_group(self) -> bool:
        if identity(self.n) not in self._members:
            return False
        for p in self.perms:
            if not is_perm(p, self.n) or invert(p) not in self._members:
                return False
            for q in self.perms:
                if compose(p, q) not in self._members:
                    return False
        return True


def full_aut(b: BooleanAlg | int, cap: int = DEFAULT_MAX_ATOMS) -> Group:
    n = b if isinstance(b, int) else b.atom_count
    if n > cap:
        raise CapExceeded(f"{n} atoms exceeds cap {cap}")
    return Group(n, tuple(itertools.permutations(range(n))))


def subgroup_closure(gens: Iterable[Sequence[int]], n: int) -> Group:
    gens = [tuple(g) for g in gens]
    for g in gens:
        if not is_perm(g, n):
            raise ValueError(f"{g} is not a permutation of {n} atoms")
    elems = {identity(n)}
    frontier = [identity(n)]
    while frontier:
        new = []
        for p in frontier:
            for g in gens:
                q = compose(g, p)
                if q not in elems:
                    elems.add(q)
                    new.append(q)
        frontier = new
    return Group.of(n, elems)


def all_subgroups(n: int) -> list[Group]:
    """Every subgroup of the symmetric group on ``n`` atoms (small ``n``)."""
    sym = list(itertools.permutations(range(n)))
    found = {frozenset([identity(n)])}
    frontier = list(found)
    while frontier:
        new = []
        for h in frontier:
            for g in sym:
                if g in h:
                    continue
                k = frozenset(subgroup_closure(list(h) + [g], n).perms)
                if k not in found:
                    found.add(k)
                    new.append(k)
        frontier = new
    return sorted((Group.of(n, h) for h in found), key=lambda g: (len(g), g.perms))


def conjugacy_key(g: Group) -> tuple:
    best = None
    for s in itertools.permutations(range(g.n)):
        si = invert(s)
        conj = tuple(sorted(compose(compose(s, p), si) for p in g.perms))
        if best is None or conj < best:
            best = conj
    return best


def subgroups_up_to_conjugacy(n: int) -> list[Group]:
    seen = {}
    for g in all_subgroups(n):
        seen.setdefault(conjugacy_key(g), g)
    return sorted(seen.values(), key=lambda g: (len(g), g.perms))


@dataclass(frozen=True, eq=False)
class BGPair:
    b: BooleanAlg
    g: Group
    name: str = ""

    def __post_init__(self):
        if self.g.n != self.b.atom_count:
            raise ValueError("group does not act on the atoms of the Boolean algebra")

    @cached_property
    def action(self) -> list[array]:
        """``action[i][x]`` is the image of element ``x`` under ``g.perms[i]``."""
        size = self.b.size
        out = []
        for p in self.g.perms:
            row = array("I", [0]) * size
            for x in range(1, size):
                low = x & -x
                row[x] = row[x ^ low] | (1 << p[low.bit_length() - 1])
            out.append(row)
        return out

    @cached_property
    def stabilizers(self) -> list[list[int]]:
        act = self.action
        return [[i for i, row in enumerate(act) if row[x] == x] for x in self.b.elements()]

    @cached_property
    def orbits(self) -> Partition:
        return Partition.from_ids(min(row[x] for row in self.action) for x in self.b.elements())

    def apply(self, i: int, x: int) -> int:
        return self.action[i][x]


def orbit_partition(p: BGPair) -> Partition:
    return p.orbits


def maximal(elements: Iterable[int]) -> list[int]:
    """Maximal elements of a set of masks under inclusion."""
    s = sorted(set(elements))
    return [m for m in s if not any(y != m and m & ~y == 0 for y in s)]


@dataclass(frozen=True)
class LowerSets:
    L: tuple[int, ...]
    Lplus: tuple[int, ...]
    maxL: tuple[int, ...]
    maxLplus: tuple[int, ...]


def lower_sets(p: BGPair, a: int, b: int) -> LowerSets:
    L = sorted({a & row[b] for row in p.action})
    ids = p.orbits.ids
    classes = {ids[x] for x in L}
    Lp = sorted(x for x in p.b.elements() if ids[x] in classes)
    return LowerSets(tuple(L), tuple(Lp), tuple(maximal(L)), tuple(maximal(Lp)))


@dataclass
class Mvp1Check:
    holds: bool
    witness: tuple | None
    char_b: bool
    char_b_witness: tuple | None
    char_c: bool
    char_c_witness: tuple | None

    @property
    def consistent(self) -> bool:
        return self.holds == self.char_b == self.char_c


def check_mvp1(p: BGPair) -> Mvp1Check:
    """Exhaustive MVP1 together with its two reformulations.

    Witnesses are ``(a, b, f)`` with ``f`` an atom-image tuple.
    """
    act, stab, perms = p.action, p.stabilizers, p.g.perms
    elems = p.b.elements()
    w1 = wb = wc = None
    for a in elems:
        for b in elems:
            if w1 is None and a & ~b == 0:
                reach = {act[h][a] for h in stab[b]}
                for i, row in enumerate(act):
                    fa = row[a]
                    if fa & ~b == 0 and fa not in reach:
                        w1 = (a, b, perms[i])
                        break
            if wb is None and a & ~b == 0:
                reach = {act[h][b] for h in stab[a]}
                for i, row in enumerate(act):
                    fb = row[b]
                    if a & ~fb == 0 and fb not in reach:
                        wb = (a, b, perms[i])
                        break
            if wc is None and a & b == 0:
                reach = {act[h][b] for h in stab[a]}
                for i, row in enumerate(act):
                    fb = row[b]
                    if a & fb == 0 and fb not in reach:
                        wc = (a, b, perms[i])
                        break
        if w1 and wb and wc:
            break
    return Mvp1Check(w1 is None, w1, wb is None, wb, wc is None, wc)


@dataclass
class Mvp2Check:
    holds: bool
    witness: tuple | None


def check_mvp2(p: BGPair) -> Mvp2Check:
    act = p.action
    for a in p.b.elements():
        for b in p.b.elements():
            L = {a & row[b] for row in act}
            mx = maximal(L)
            for x in sorted(L):
                if not any(x & ~m == 0 for m in mx):
                    return Mvp2Check(False, (a, b, x))
    return Mvp2Check(True, None)


@dataclass
class MvPairVerdict:
    mvp1: bool
    mvp1_witness: tuple | None
    mvp2: bool
    mvp2_witness: tuple | None
    charmvp1: Mvp1Check | None = None

    @property
    def is_mv_pair(self) -> bool:
        return self.mvp1 and self.mvp2


def mv_pair_verdict(p: BGPair) -> MvPairVerdict:
    c1 = check_mvp1(p)
    c2 = check_mvp2(p)
    return MvPairVerdict(c1.holds, c1.witness, c2.holds, c2.witness, c1)


def max_transport_check(p: BGPair, verdict: MvPairVerdict | None = None) -> bool:
    """Images of maximal elements of L(a,b) are maximal in L+(a,b), and
    mx L(a,b) is contained in mx L+(a,b)."""
    verdict = verdict or mv_pair_verdict(p)
    if not verdict.is_mv_pair:
        raise NotMvPair(p.name)
    act = p.action
    for a in p.b.elements():
        for b in p.b.elements():
            ls = lower_sets(p, a, b)
            mxp = set(ls.maxLplus)
            for m in ls.maxL:
                if m not in mxp:
                    return False
                if any(row[m] not in mxp for row in act):
                    return False
    return True


def meet_identity_witness(p: BGPair, q: EffectAlgebra, literal: bool = False) -> tuple | None:
    """First ``(a, b)`` where the quotient meet class of ``[a], [b]`` differs
    from the maximal elements of L+(a,b), or from all of L+(a,b) when
    ``literal`` is set."""
    ids = p.orbits.ids
    blocks = p.orbits.blocks
    for a in p.b.elements():
        for b in p.b.elements():
            meet_class = blocks[q.meet(ids[a], ids[b])]
            ls = lower_sets(p, a, b)
            want = ls.Lplus if literal else ls.maxLplus
            if sorted(meet_class) != list(want):
                return (a, b)
    return None


def build_quotient_mv(p: BGPair, verdict: MvPairVerdict | None = None) -> EffectAlgebra:
    verdict = verdict or mv_pair_verdict(p)
    if not verdict.is_mv_pair:
        raise NotMvPair(f"{p.name or 'pair'} fails MVP1/MVP2")
    e = p.b.as_effect_algebra(p.name)
    q = quotient(e, p.orbits, name=f"A({p.name})" if p.name else "")
    if not q.is_lattice_ordered or not mv_characterizations(q).all_true:
        raise AssertionError("quotient of an MV-pair is not an MV-effect algebra")
    w = meet_identity_witness(p, q)
    if w is not None:
        raise AssertionError(f"meet class differs from mx L+ at {w}")
    return q


def phi_preserving_group(r: RGen, cap: int = DEFAULT_MAX_ATOMS) -> Group:
    """All atom permutations ``f`` with ``phi(f(x)) = phi(x)``.

    phi is additive over disjoint joins, so such ``f`` permute atoms within
    fibers of phi; candidates come from that product and each is then
    checked on every element.
    """
    n = r.bool_alg.atom_count
    if n > cap:
        raise CapExceeded(f"{n} join-irreducibles exceeds cap {cap}")
    fibers: dict[int, list[int]] = {}
    for k in range(n):
        fibers.setdefault(r.phi(1 << k), []).append(k)
    blocks = list(fibers.values())
    perms = []
    for choice in itertools.product(*(itertools.permutations(b) for b in blocks)):
        img = [0] * n
        for src, dst in zip(blocks, choice):
            for s, d in zip(src, dst):
                img[s] = d
        img = tuple(img)
        if all(r.phi(apply(img, x)) == r.phi(x) for x in r.bool_alg.elements()):
            perms.append(img)
    g = Group.of(n, perms)
    if not g.is_group():
        raise AssertionError("phi-preserving permutations do not form a group")
    return g


def _swap_disjoint(r: RGen, u: int, v: int) -> Perm:
    psi = iso_between(r, u, v)
    psi_inv = psi.inverse()
    rest = r.bool_alg.top & ~(u | v)
    n = r.bool_alg.atom_count

    def f(x):
        return psi_inv(x & v) | psi(x & u) | (x & rest)

    img = []
    for k in range(n):
        y = f(1 << k)
        if y & (y - 1) or y == 0:
            raise AssertionError("swap map does not send atoms to atoms")
        img.append(y.bit_length() - 1)
    perm = tuple(img)
    if not is_perm(perm, n):
        raise AssertionError("swap map is not a bijection on atoms")
    for x in r.bool_alg.elements():
        if f(x) != apply(perm, x) or f(f(x)) != x:
            raise AssertionError("swap map is not an involutive Boolean automorphism")
    return perm


def phi_swap(r: RGen, u: int, v: int) -> Perm:
    """phi-preserving automorphism exchanging ``u`` and ``v`` and fixing
    everything below the complement of ``u | v``."""
    if r.phi(u) != r.phi(v):
        raise PhiMismatch(f"phi({r.fmt(u)}) != phi({r.fmt(v)})")
    common = u & v
    perm = _swap_disjoint(r, u & ~common, v & ~common)
    if apply(perm, u) != v or apply(perm, v) != u:
        raise AssertionError("swap does not exchange u and v")
    if any(r.phi(apply(perm, x)) != r.phi(x) for x in r.bool_alg.elements()):
        raise AssertionError("swap is not phi-preserving")
    return perm


def kernel_partition(r: RGen) -> Partition:
    return Partition.from_ids(r.phi_table)


def kernel_equality_check(r: RGen, g: Group | None = None) -> bool:
    """Orbits of G(M) coincide with the fibers of phi, and every ``u`` lies
    in the orbit of ``embed(phi(u))``."""
    g = g or phi_preserving_group(r)
    p = BGPair(r.bool_alg, g)
    if p.orbits != kernel_partition(r):
        return False
    return all(p.orbits.same(u, r.embed[r.phi(u)]) for u in r.bool_alg.elements())


@dataclass
class RepresentationReport:
    ok: bool
    algebra: EffectAlgebra
    rgen: RGen
    group: Group
    verdict: MvPairVerdict
    quotient: EffectAlgebra | None
    iso: EAMorphism | None
    search_iso: EAMorphism | None
    kernel_equal: bool
    notes: list[str] = field(default_factory=list)

    @property
    def join_irreducible_count(self) -> int:
        return self.rgen.bool_alg.atom_count


def verify_representation(m: EffectAlgebra, cap: int = DEFAULT_MAX_ATOMS) -> RepresentationReport:
    """Rebuild ``m`` as ``B(M)`` modulo its phi-preserving automorphisms."""
    if not is_mv_effect(m):
        w = mv_characterizations(m).witnesses.get("b") if m.is_lattice_ordered else None
        raise NotMvEffect(f"{m.name or 'algebra'} is not an MV-effect algebra", w)
    r = rgenerate(m)
    g = phi_preserving_group(r, cap)
    pair = BGPair(r.bool_alg, g, f"B({m.name})" if m.name else "")
    verdict = mv_pair_verdict(pair)
    notes = []
    if not verdict.is_mv_pair:
        notes.append(f"(B(M), G(M)) is not an MV-pair: {verdict}")
        return RepresentationReport(False, m, r, g, verdict, None, None, None, False, notes)
    q = build_quotient_mv(pair, verdict)

    psi = []
    for block in pair.orbits.blocks:
        values = {r.phi(x) for x in block}
        if len(values) != 1:
            notes.append(f"phi not constant on orbit {block}")
        psi.append(r.phi(block[0]))
    iso = validate_morphism(psi, q, m)
    if not iso.is_isomorphism:
        notes.append(f"class -> phi map is not an isomorphism: {iso.witnesses}")
    search = find_isomorphism(q, m)
    if search is None:
        notes.append("no isomorphism found between quotient and M")
    kern = kernel_equality_check(r, g)
    if not kern:
        notes.append("orbit partition differs from phi fibers")
    rdp = riesz_properties(q).rdp
    if not rdp:
        notes.append("quotient lacks the Riesz decomposition property")
    cong = check_congruence(pair.b.as_effect_algebra(), pair.orbits)
    if not cong.is_congruence:
        notes.append(f"orbit relation fails {cong.failed()}")
    ok = not notes
    return RepresentationReport(ok, m, r, g, verdict, q, iso, search, kern, notes)
