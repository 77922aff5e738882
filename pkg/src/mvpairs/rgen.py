"""R-generated Boolean algebras, chain representations and the map phi.

For a finite distributive lattice ``D`` the R-generated Boolean algebra is
realized as the powerset of the join-irreducibles of ``D``; ``d`` embeds as the
set of irreducibles below it. Boolean elements are int bitmasks over atom
positions.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .effect import EffectAlgebra, EAMorphism, NotMvEffect, is_mv_effect, validate_morphism
from .order import BoundedLattice, NotDistributive, bits, is_lattice_embedding, join_irreducibles


class NotComparable(Exception):
    pass


def submasks(top: int) -> list[int]:
    """All submasks of ``top`` in increasing numeric order."""
    out = []
    s = top
    while True:
        out.append(s)
        if s == 0:
            break
        s = (s - 1) & top
    out.reverse()
    return out


@dataclass(frozen=True)
class BooleanAlg:
    atom_count: int
    atom_labels: tuple[str, ...] | None = None

    @property
    def top(self) -> int:
        return (1 << self.atom_count) - 1

    @property
    def size(self) -> int:
        return 1 << self.atom_count

    def elements(self) -> range:
        return range(self.size)

    def atom_label(self, k) -> str:
        return self.atom_labels[k] if self.atom_labels else f"a{k + 1}"

    def join(self, x, y) -> int:
        return x | y

    def meet(self, x, y) -> int:
        return x & y

    def complement(self, x) -> int:
        return self.top & ~x

    def symdiff(self, x, y) -> int:
        return x ^ y

    def leq(self, x, y) -> bool:
        return x & ~y == 0

    def disjoint_join(self, x, y) -> int | None:
        return x | y if x & y == 0 else None

    def diff(self, x, y) -> int | None:
        """``x \\ y``, defined only for ``y <= x``."""
        return x & ~y if y & ~x == 0 else None

    def fmt(self, x: int) -> str:
        return "{" + ",".join(self.atom_label(k) for k in bits(x)) + "}"

    def parse(self, text: str) -> int:
        body = text.strip()
        if not (body.startswith("{") and body.endswith("}")):
            raise ValueError(f"boolean element must look like {{j1,j2}}: {text!r}")
        mask = 0
        for tok in filter(None, (t.strip() for t in body[1:-1].split(","))):
            names = [self.atom_label(k) for k in range(self.atom_count)]
            if tok in names:
                mask |= 1 << names.index(tok)
            elif tok.isdigit() and int(tok) < self.atom_count:
                mask |= 1 << int(tok)
            elif tok[:1] in "aj" and tok[1:].isdigit() and 1 <= int(tok[1:]) <= self.atom_count:
                mask |= 1 << (int(tok[1:]) - 1)  # positional name, 1-based
            else:
                raise ValueError(f"unknown atom {tok!r}")
        return mask

    def interval_algebra(self, top: int, name="") -> tuple[EffectAlgebra, list[int]]:
        """The interval ``[0, top]`` as an effect algebra (disjoint join as sum).

        Returns the algebra and the list of masks indexed by element number.
        """
        elems = submasks(top)
        index = {m: i for i, m in enumerate(elems)}
        k = len(elems)
        table = [[None] * k for _ in range(k)]
        for i, x in enumerate(elems):
            for j, y in enumerate(elems):
                if x & y == 0:
                    table[i][j] = index[x | y]
        labels = [self.fmt(m) for m in elems]
        return EffectAlgebra.from_table(table, 0, index[top], labels, name), elems

    def as_effect_algebra(self, name="") -> EffectAlgebra:
        """Whole algebra as an effect algebra; element index equals the mask."""
        return self.interval_algebra(self.top, name)[0]


def boolean_closure(gens: Sequence[int], top: int) -> set[int]:
    """Boolean subalgebra of the powerset of ``top`` generated by ``gens``."""
    seen = {0, top} | set(gens)
    frontier = list(seen)
    while frontier:
        new = []
        items = list(seen)
        for x in frontier:
            cand = [top & ~x]
            for y in items:
                cand += (x | y, x & y)
            for c in cand:
                if c not in seen:
                    seen.add(c)
                    new.append(c)
                    items.append(c)
        frontier = new
    return seen


@dataclass(frozen=True)
class ChainRep:
    """Ascending chain of base-lattice elements, even length."""

    chain: tuple[int, ...]

    def value(self, r: "RGen") -> int:
        x = 0
        for d in self.chain:
            x ^= r.embed[d]
        return x

    def __len__(self):
        return len(self.chain)


@dataclass(frozen=True, eq=False)
class RGen:
    base: BoundedLattice
    atoms: tuple[int, ...]
    bool_alg: BooleanAlg
    embed: tuple[int, ...]
    algebra: EffectAlgebra | None = None

    @cached_property
    def embed_inv(self) -> dict[int, int]:
        return {m: d for d, m in enumerate(self.embed)}

    def down_closure(self, x: int) -> int:
        out = 0
        for k in bits(x):
            out |= self.embed[self.atoms[k]]
        return out

    def is_embedded(self, x: int) -> bool:
        return x in self.embed_inv

    @cached_property
    def phi_table(self) -> tuple[int, ...]:
        return tuple(_phi_from_chain(self, chain_representation(self, x)) for x in self.bool_alg.elements())

    def phi(self, x: int) -> int:
        return self.phi_table[x]

    def fmt(self, x: int) -> str:
        return self.bool_alg.fmt(x)


def _label(l: BoundedLattice, x: int) -> str:
    return l.poset.label(x)


def rgenerate_lattice(l: BoundedLattice, algebra: EffectAlgebra | None = None) -> RGen:
    """Powerset-of-join-irreducibles realization of the R-generated algebra."""
    if not l.distributive:
        raise NotDistributive(l.distributivity_witness)
    irr = join_irreducibles(l)
    embed = tuple(sum(1 << k for k, j in enumerate(irr) if l.leq(j, d)) for d in range(l.n))
    balg = BooleanAlg(len(irr), tuple(_label(l, j) for j in irr))
    if not is_lattice_embedding(l, embed, balg.top):
        raise AssertionError("Birkhoff map is not a 0,1-lattice embedding")
    if len(boolean_closure(embed, balg.top)) != balg.size:
        raise AssertionError("embedded lattice does not generate the Boolean algebra")
    return RGen(l, tuple(irr), balg, embed, algebra)


def rgenerate(m: EffectAlgebra) -> RGen:
    if not is_mv_effect(m):
        raise NotMvEffect(f"{m.name or 'algebra'} is not an MV-effect algebra")
    return rgenerate_lattice(m.lattice, m)


def chain_representation(r: RGen, x: int) -> ChainRep:
    """Canonical chain: repeatedly take the least embedded element above the
    remainder and continue with the part of it outside the remainder."""
    desc = []
    rest = x
    while rest:
        d = r.down_closure(rest)
        desc.append(r.embed_inv[d])
        rest = d & ~rest
    chain = desc[::-1]
    if len(chain) % 2:
        chain.insert(0, r.base.bottom)
    return ChainRep(_normalize(chain))


def _normalize(chain: list[int]) -> tuple[int, ...]:
    out: list[int] = []
    for d in chain:
        if out and out[-1] == d:
            out.pop()
        else:
            out.append(d)
    return tuple(out)


def _phi_from_chain(r: RGen, rep: ChainRep) -> int:
    m = r.algebra
    if m is None:
        raise ValueError("phi needs an MV-effect algebra, not a bare lattice")
    acc = m.zero
    ch = rep.chain
    for i in range(0, len(ch), 2):
        step = m.minus(ch[i + 1], ch[i])
        nxt = m.plus(acc, step) if step is not None else None
        if nxt is None:
            raise AssertionError(f"phi sum undefined along chain {ch}")
        acc = nxt
    return acc


def phi(r: RGen, x: int) -> int:
    return r.phi(x)


def phi_of_chain(r: RGen, chain: Sequence[int]) -> int:
    """phi evaluated on an arbitrary even-length chain (no canonicalization)."""
    return _phi_from_chain(r, ChainRep(tuple(chain)))


@dataclass(frozen=True)
class IntervalIso:
    """Boolean isomorphism ``[0, source_top] -> [0, target_top]`` inside B(M)."""

    source_top: int
    target_top: int
    mapping: dict

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def inverse(self) -> "IntervalIso":
        return IntervalIso(self.target_top, self.source_top, {v: k for k, v in self.mapping.items()})

    def then(self, other: "IntervalIso") -> "IntervalIso":
        """``other`` after ``self``."""
        if other.source_top != self.target_top:
            raise ValueError("interval isomorphisms do not compose")
        return IntervalIso(self.source_top, other.target_top, {x: other(y) for x, y in self.mapping.items()})

    def is_phi_preserving(self, r: RGen) -> bool:
        return all(r.phi(x) == r.phi(y) for x, y in self.mapping.items())

    def as_morphism(self, r: RGen) -> EAMorphism:
        src, s_elems = r.bool_alg.interval_algebra(self.source_top)
        tgt, t_elems = r.bool_alg.interval_algebra(self.target_top)
        t_index = {m: i for i, m in enumerate(t_elems)}
        return validate_morphism([t_index[self.mapping[m]] for m in s_elems], src, tgt)


def _check_boolean_iso(iso: IntervalIso):
    dom = submasks(iso.source_top)
    if sorted(iso.mapping) != dom or sorted(iso.mapping.values()) != submasks(iso.target_top):
        raise AssertionError("interval map is not a bijection between the intervals")
    for x in dom:
        acc = 0
        for k in bits(x):
            acc |= iso.mapping[1 << k]
        if acc != iso.mapping[x]:
            raise AssertionError(f"interval map does not preserve joins at {x}")


def translate_iso(r: RGen, c: int, d: int) -> IntervalIso:
    """Extend ``x -> (x + d) \\ d`` from ``[0, c - d]`` in M to a Boolean
    isomorphism ``[0, embed(c - d)] -> [0, embed(c) \\ embed(d)]``."""
    m = r.algebra
    if not m.leq(d, c):
        raise NotComparable(f"{m.label(d)} is not below {m.label(c)}")
    e = m.minus(c, d)
    shift = r.embed[d]
    psi0 = {}
    for x in range(m.n):
        if m.leq(x, e):
            psi0[x] = r.embed[m.plus(x, d)] & ~shift
    mapping = {}
    for z in submasks(r.embed[e]):
        y = 0
        for el in chain_representation(r, z).chain:
            y ^= psi0[el]
        mapping[z] = y
    iso = IntervalIso(r.embed[e], r.embed[c] & ~shift, mapping)
    _check_boolean_iso(iso)
    return iso


def twice_iso(r: RGen, c1, d1, c2, d2) -> IntervalIso:
    """``[0, c1 \\ d1] -> [0, c2 \\ d2]`` when ``c1 - d1 = c2 - d2`` in M."""
    m = r.algebra
    if m.minus(c1, d1) is None or m.minus(c1, d1) != m.minus(c2, d2):
        raise ValueError("differences do not match")
    return translate_iso(r, c1, d1).inverse().then(translate_iso(r, c2, d2))


def interval_iso(r: RGen, a: int) -> IntervalIso:
    """Boolean isomorphism ``[0, embed(phi(a))] -> [0, a]``, assembled blockwise
    over the canonical chain of ``a``."""
    m = r.algebra
    ch = chain_representation(r, a).chain
    b_prev = m.zero
    pieces = []
    for i in range(0, len(ch), 2):
        lo, hi = ch[i], ch[i + 1]
        b = m.plus(b_prev, m.minus(hi, lo))
        pieces.append((r.embed[b] & ~r.embed[b_prev], twice_iso(r, b, b_prev, hi, lo)))
        b_prev = b
    top = r.embed[b_prev]
    mapping = {}
    for x in submasks(top):
        y = 0
        for block, psi_j in pieces:
            y |= psi_j(x & block)
        mapping[x] = y
    iso = IntervalIso(top, a, mapping)
    _check_boolean_iso(iso)
    return iso


def iso_between(r: RGen, a: int, b: int) -> IntervalIso:
    """phi-preserving isomorphism ``[0, a] -> [0, b]`` for ``phi(a) = phi(b)``."""
    if r.phi(a) != r.phi(b):
        raise ValueError("phi values differ")
    return interval_iso(r, a).inverse().then(interval_iso(r, b))


def iter_chains(r: RGen, even=True):
    """Every strictly increasing chain of base-lattice elements (used to
    cross-check the canonical chain)."""
    l = r.base
    n = l.n

    def rec(chain):
        if not even or len(chain) % 2 == 0:
            yield tuple(chain)
        last = chain[-1] if chain else None
        for d in range(n):
            if last is None or (d != last and l.leq(last, d)):
                chain.append(d)
                yield from rec(chain)
                chain.pop()

    yield from rec([])
