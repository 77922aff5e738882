"""Finite effect algebras given by partial sum tables.

A sum table is an ``n x n`` grid whose entries are element indices or ``None``
(undefined). All checks are exhaustive and report the lexicographically least
violating tuple under element-index order.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .order import (
    BoundedLattice,
    NotALattice,
    Poset,
    ValidationReport,
    bits,
    lattice_from_poset,
)

UNDEFINED = None


class InvalidEffectAlgebra(Exception):
    def __init__(self, report: ValidationReport):
        self.report = report
        super().__init__("; ".join(str(v) for v in report.violations[:5]))


class NotLatticeOrdered(Exception):
    pass


class NotMvEffect(Exception):
    def __init__(self, msg, witness=None):
        self.witness = witness
        super().__init__(msg)


class MvAxiomViolation(Exception):
    def __init__(self, report: ValidationReport):
        self.report = report
        super().__init__("; ".join(str(v) for v in report.violations[:5]))


class NotACongruence(Exception):
    def __init__(self, check):
        self.check = check
        super().__init__(f"partition is not a congruence: {check.failed()}")


class IllDefinedSum(Exception):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"quotient sum depends on representatives: {witness}")


@dataclass(frozen=True, eq=False)
class EffectAlgebra:
    n: int
    sum: tuple[tuple[int | None, ...], ...]
    zero: int
    one: int
    labels: tuple[str, ...] | None = None
    name: str = ""

    @classmethod
    def from_table(cls, table, zero, one, labels=None, name="") -> "EffectAlgebra":
        n = len(table)
        rows = []
        for row in table:
            if len(row) != n:
                raise ValueError(f"sum table is not square ({len(row)} != {n})")
            for v in row:
                if v is not None and not 0 <= v < n:
                    raise ValueError(f"sum value {v} out of range")
            rows.append(tuple(row))
        if not (0 <= zero < n and 0 <= one < n):
            raise ValueError("zero/one out of range")
        return cls(n, tuple(rows), zero, one, tuple(labels) if labels else None, name)

    @classmethod
    def from_sums(cls, n, zero, one, sums: Iterable[tuple[int, int, int]], labels=None, name=""):
        """Build from ``(i, j, k)`` triples meaning ``i + j = k``; symmetric
        entries are filled in. Contradictory triples raise ``ValueError``."""
        table = [[None] * n for _ in range(n)]
        for i, j, k in sums:
            for a, b in ((i, j), (j, i)):
                if table[a][b] is not None and table[a][b] != k:
                    raise ValueError(f"contradictory sums for ({a}, {b}): {table[a][b]} vs {k}")
                table[a][b] = k
        return cls.from_table(table, zero, one, labels, name)

    def __eq__(self, other):
        if not isinstance(other, EffectAlgebra):
            return NotImplemented
        return (self.n, self.sum, self.zero, self.one) == (other.n, other.sum, other.zero, other.one)

    def __hash__(self):
        return hash((self.n, self.sum, self.zero, self.one))

    def __repr__(self):
        return f"EffectAlgebra({self.name or '?'}, n={self.n})"

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else str(i)

    def index(self, label: str) -> int:
        if self.labels and label in self.labels:
            return self.labels.index(label)
        return int(label)

    def plus(self, a, b) -> int | None:
        return self.sum[a][b]

    def defined(self, a, b) -> bool:
        return self.sum[a][b] is not None

    @cached_property
    def defined_pairs(self) -> list[tuple[int, int, int]]:
        return [(a, b, s) for a in range(self.n) for b, s in enumerate(self.sum[a]) if s is not None]

    @cached_property
    def _prime(self) -> tuple[int, ...]:
        out = []
        for a in range(self.n):
            cs = [b for b in range(self.n) if self.sum[a][b] == self.one]
            out.append(cs[0] if len(cs) == 1 else -1)
        return tuple(out)

    def prime(self, a) -> int:
        return self._prime[a]

    @cached_property
    def _minus(self) -> tuple[dict[int, int], ...]:
        out = [dict() for _ in range(self.n)]
        for a, c, b in self.defined_pairs:
            out[b].setdefault(a, c)
        return tuple(out)

    def minus(self, b, a) -> int | None:
        """``b - a`` (defined iff ``a <= b``)."""
        return self._minus[b].get(a)

    @cached_property
    def poset(self) -> Poset:
        rel = [[False] * self.n for _ in range(self.n)]
        for a, _, b in self.defined_pairs:
            rel[a][b] = True
        return Poset(self.n, tuple(map(tuple, rel)), self.labels)

    def leq(self, a, b) -> bool:
        return self.poset.leq[a][b]

    @cached_property
    def lattice(self) -> BoundedLattice | None:
        try:
            return lattice_from_poset(self.poset)
        except NotALattice:
            return None

    @property
    def is_lattice_ordered(self) -> bool:
        return self.lattice is not None

    def join(self, a, b) -> int:
        return self.lattice.join[a][b]

    def meet(self, a, b) -> int:
        return self.lattice.meet[a][b]

    def with_entry(self, a, b, value, symmetric=True) -> "EffectAlgebra":
        """Copy with one sum entry replaced (fault injection, experiments)."""
        rows = [list(r) for r in self.sum]
        rows[a][b] = value
        if symmetric:
            rows[b][a] = value
        return EffectAlgebra(self.n, tuple(map(tuple, rows)), self.zero, self.one, self.labels, self.name)

    def relabel(self, perm: Sequence[int]) -> "EffectAlgebra":
        """Isomorphic copy in which old element ``i`` becomes ``perm[i]``."""
        n = self.n
        rows = [[None] * n for _ in range(n)]
        for a, b, s in self.defined_pairs:
            rows[perm[a]][perm[b]] = perm[s]
        labels = None
        if self.labels:
            labels = [None] * n
            for i, p in enumerate(perm):
                labels[p] = self.labels[i]
        return EffectAlgebra(n, tuple(map(tuple, rows)), perm[self.zero], perm[self.one],
                             tuple(labels) if labels else None, self.name)


def validate_effect_algebra(e: EffectAlgebra) -> ValidationReport:
    """Check (E1)-(E4) and cancellativity; every violated axiom is listed."""
    rep = ValidationReport()
    n, S = e.n, e.sum
    for a in range(n):
        for b in range(a + 1, n):
            if S[a][b] != S[b][a]:
                rep.add("E1", (a, b), f"{S[a][b]} vs {S[b][a]}")
    for a in range(n):
        for b in range(n):
            ab = S[a][b]
            if ab is None:
                continue
            for c in range(n):
                abc = S[ab][c]
                if abc is None:
                    continue
                bc = S[b][c]
                if bc is None or S[a][bc] is None:
                    rep.add("E2", (a, b, c), "right side undefined")
                elif S[a][bc] != abc:
                    rep.add("E2", (a, b, c), f"{abc} vs {S[a][bc]}")
    for a in range(n):
        cs = [b for b in range(n) if S[a][b] == e.one]
        if len(cs) != 1:
            rep.add("E3", (a,), f"complements {cs}")
    for a in range(n):
        if a != e.zero and S[a][e.one] is not None:
            rep.add("E4", (a,), f"{a} + 1 defined")
    for a in range(n):
        seen = {}
        for b in range(n):
            v = S[a][b]
            if v is None:
                continue
            if v in seen:
                rep.add("cancellativity", (a, seen[v], b))
            else:
                seen[v] = b
    for a in range(n):
        if S[a][e.zero] != a:
            rep.add("zero", (a,), "a + 0 != a")
    return rep


def require_valid(e: EffectAlgebra) -> EffectAlgebra:
    rep = validate_effect_algebra(e)
    if not rep.ok:
        raise InvalidEffectAlgebra(rep)
    return e


@dataclass(frozen=True)
class EffectOrder:
    leq: Poset
    ominus: tuple[tuple[int | None, ...], ...]
    prime: tuple[int, ...]


def derive_order(e: EffectAlgebra) -> EffectOrder:
    om = tuple(tuple(e.minus(b, a) for a in range(e.n)) for b in range(e.n))
    return EffectOrder(e.poset, om, e._prime)


@dataclass(frozen=True)
class NotLattice:
    pair: tuple[int, int]
    kind: str


def lattice_structure(e: EffectAlgebra) -> BoundedLattice | NotLattice:
    try:
        return lattice_from_poset(e.poset)
    except NotALattice as exc:
        return NotLattice(exc.pair, exc.kind)


@dataclass
class MvCharacterization:
    a: bool
    b: bool
    c: bool
    d: bool
    witnesses: dict[str, tuple] = field(default_factory=dict)

    @property
    def all_true(self) -> bool:
        return self.a and self.b and self.c and self.d

    @property
    def all_false(self) -> bool:
        return not (self.a or self.b or self.c or self.d)

    @property
    def agree(self) -> bool:
        return self.all_true or self.all_false


def mv_characterizations(e: EffectAlgebra) -> MvCharacterization:
    """Evaluate the four equivalent MV-effect conditions on a lattice-ordered
    effect algebra. Each verdict carries the least failing pair ``(a, b)``."""
    L = e.lattice
    if L is None:
        raise NotLatticeOrdered(e.name or repr(e))
    n, J, M = e.n, L.join, L.meet
    wit = {}

    def first(cond):
        for a in range(n):
            for b in range(n):
                if not cond(a, b):
                    return (a, b)
        return None

    def cond_a(a, b):
        return e.minus(J[a][b], a) == e.minus(b, M[a][b])

    def cond_b(a, b):
        return M[a][b] != e.zero or e.leq(a, e.prime(b))

    def cond_c(a, b):
        return e.leq(e.minus(a, M[a][b]), e.prime(b))

    def cond_d(a, b):
        for c in bits(e.poset.down[a] & e.poset.down[b]):
            a1, b1 = e.minus(a, c), e.minus(b, c)
            s = e.plus(a1, b1)
            if s is not None and e.plus(s, c) is not None:
                return True
        return False

    verdicts = {}
    for key, cond in (("a", cond_a), ("b", cond_b), ("c", cond_c), ("d", cond_d)):
        w = first(cond)
        verdicts[key] = w is None
        if w is not None:
            wit[key] = w
    return MvCharacterization(**verdicts, witnesses=wit)


def is_mv_effect(e: EffectAlgebra) -> bool:
    return e.is_lattice_ordered and mv_characterizations(e).all_true


@dataclass(frozen=True, eq=False)
class MvAlgebra:
    n: int
    boxplus: tuple[tuple[int, ...], ...]
    neg: tuple[int, ...]
    zero: int
    labels: tuple[str, ...] | None = None

    def __eq__(self, other):
        if not isinstance(other, MvAlgebra):
            return NotImplemented
        return (self.n, self.boxplus, self.neg, self.zero) == (other.n, other.boxplus, other.neg, other.zero)

    __hash__ = None

    def leq(self, x, y) -> bool:
        P, N = self.boxplus, self.neg
        return y == P[x][N[P[x][N[y]]]]


def validate_mv_algebra(m: MvAlgebra) -> ValidationReport:
    rep = ValidationReport()
    P, N, z, r = m.boxplus, m.neg, m.zero, range(m.n)
    top = N[z]
    for x in r:
        if P[x][z] != x:
            rep.add("identity", (x,))
        if N[N[x]] != x:
            rep.add("involution", (x,))
        if P[x][top] != top:
            rep.add("absorption", (x,))
        for y in r:
            if P[x][y] != P[y][x]:
                rep.add("commutativity", (x, y))
            if P[x][N[P[x][N[y]]]] != P[y][N[P[y][N[x]]]]:
                rep.add("lukasiewicz", (x, y))
            for w in r:
                if P[P[x][y]][w] != P[x][P[y][w]]:
                    rep.add("associativity", (x, y, w))
    return rep


def to_mv_algebra(e: EffectAlgebra) -> MvAlgebra:
    """Total sum ``x [+] y = x + (x' ^ y)`` with ``'`` as negation."""
    if not is_mv_effect(e):
        raise NotMvEffect(f"{e.name or 'algebra'} is not an MV-effect algebra")
    n = e.n
    table = []
    for x in range(n):
        xp = e.prime(x)
        table.append(tuple(e.plus(x, e.meet(xp, y)) for y in range(n)))
    m = MvAlgebra(n, tuple(table), e._prime, e.zero, e.labels)
    rep = validate_mv_algebra(m)
    if not rep.ok:
        raise MvAxiomViolation(rep)
    return m


def from_mv_algebra(m: MvAlgebra, name="") -> EffectAlgebra:
    """Restrict the total sum to pairs with ``x <= not y``."""
    rep = validate_mv_algebra(m)
    if not rep.ok:
        raise MvAxiomViolation(rep)
    n = m.n
    table = [[m.boxplus[x][y] if m.leq(x, m.neg[y]) else None for y in range(n)] for x in range(n)]
    e = EffectAlgebra.from_table(table, m.zero, m.neg[m.zero], m.labels, name)
    return require_valid(e)


@dataclass
class RieszVerdict:
    rdp: bool
    rip: bool
    witnesses: dict[str, tuple] = field(default_factory=dict)


def riesz_properties(e: EffectAlgebra) -> RieszVerdict:
    n, P = e.n, e.poset
    wit = {}
    rdp_w = None
    for u in range(n):
        for v1, v2, s in e.defined_pairs:
            if not e.leq(u, s):
                continue
            ok = False
            for u1 in bits(P.down[u] & P.down[v1]):
                u2 = e.minus(u, u1)
                if u2 is not None and e.leq(u2, v2):
                    ok = True
                    break
            if not ok:
                rdp_w = (u, v1, v2)
                break
        if rdp_w:
            break
    if rdp_w:
        wit["rdp"] = rdp_w
    rip_w = None
    for u1 in range(n):
        for u2 in range(n):
            uppers = P.up[u1] & P.up[u2]
            for v1 in bits(uppers):
                for v2 in bits(uppers):
                    if not (uppers & P.down[v1] & P.down[v2]):
                        rip_w = (u1, u2, v1, v2)
                        break
                if rip_w:
                    break
            if rip_w:
                break
        if rip_w:
            break
    if rip_w:
        wit["rip"] = rip_w
    return RieszVerdict(rdp_w is None, rip_w is None, wit)


@dataclass(frozen=True)
class Partition:
    """Equivalence relation as dense block ids, numbered by first occurrence."""

    ids: tuple[int, ...]

    @classmethod
    def from_ids(cls, ids: Sequence) -> "Partition":
        remap = {}
        out = []
        for i in ids:
            if i not in remap:
                remap[i] = len(remap)
            out.append(remap[i])
        return cls(tuple(out))

    @classmethod
    def from_blocks(cls, n, blocks: Iterable[Iterable[int]]) -> "Partition":
        ids = [None] * n
        for k, block in enumerate(blocks):
            for x in block:
                if ids[x] is not None:
                    raise ValueError(f"element {x} occurs in two blocks")
                ids[x] = k
        if None in ids:
            raise ValueError(f"element {ids.index(None)} is in no block")
        return cls.from_ids(ids)

    @classmethod
    def identity(cls, n) -> "Partition":
        return cls(tuple(range(n)))

    @classmethod
    def single(cls, n) -> "Partition":
        return cls((0,) * n)

    @property
    def n(self) -> int:
        return len(self.ids)

    @cached_property
    def blocks(self) -> list[list[int]]:
        out = [[] for _ in range(max(self.ids, default=-1) + 1)]
        for x, b in enumerate(self.ids):
            out[b].append(x)
        return out

    def block_of(self, x) -> list[int]:
        return self.blocks[self.ids[x]]

    def same(self, x, y) -> bool:
        return self.ids[x] == self.ids[y]


@dataclass
class CongruenceCheck:
    c1: bool
    c2: bool
    c5: bool
    c6: bool
    witnesses: dict[str, tuple] = field(default_factory=dict)

    @property
    def is_congruence(self) -> bool:
        return self.c1 and self.c2 and self.c5 and self.c6

    def failed(self) -> list[str]:
        return [k for k in ("c1", "c2", "c5", "c6") if not getattr(self, k)]


def check_congruence(e: EffectAlgebra, p: Partition) -> CongruenceCheck:
    wit = {}
    ids = p.ids
    c1 = p.n == e.n and all(ids[x] == b for b, blk in enumerate(p.blocks) for x in blk)
    if not c1:
        wit["c1"] = (p.n, e.n)
        return CongruenceCheck(False, False, False, False, wit)

    groups = defaultdict(list)
    for a, b, s in e.defined_pairs:
        groups[ids[a], ids[b]].append((a, b, s))

    c2_w = None
    for members in groups.values():
        a1, b1, s1 = members[0]
        for a2, b2, s2 in members:
            if ids[s2] != ids[s1]:
                cand = (a1, b1, a2, b2)
                if c2_w is None or cand < c2_w:
                    c2_w = cand
                break
    if c2_w:
        wit["c2"] = c2_w

    c5_w = None
    for members in groups.values():
        reach = {s for _, _, s in members}
        for _, b, s in members:
            for a in p.block_of(s):
                if a not in reach:
                    cand = (a, b, e.minus(s, b))
                    if c5_w is None or cand < c5_w:
                        c5_w = cand
    if c5_w:
        wit["c5"] = c5_w

    c6_w = None
    for a in range(e.n):
        for b in p.block_of(a):
            if not p.same(e.prime(a), e.prime(b)):
                c6_w = (a, b)
                break
        if c6_w:
            break
    if c6_w:
        wit["c6"] = c6_w
    return CongruenceCheck(True, c2_w is None, c5_w is None, c6_w is None, wit)


def quotient(e: EffectAlgebra, p: Partition, name="") -> EffectAlgebra:
    """``E/~``: classes summed through any pair of summable representatives."""
    chk = check_congruence(e, p)
    if not chk.is_congruence:
        raise NotACongruence(chk)
    ids = p.ids
    k = len(p.blocks)
    table = [[None] * k for _ in range(k)]
    seen = {}
    for a, b, s in e.defined_pairs:
        key = (ids[a], ids[b])
        if key in seen and ids[seen[key][2]] != ids[s]:
            raise IllDefinedSum((seen[key], (a, b, s)))
        seen.setdefault(key, (a, b, s))
        table[ids[a]][ids[b]] = ids[s]
    labels = ["[" + e.label(blk[0]) + "]" for blk in p.blocks]
    q = EffectAlgebra.from_table(table, ids[e.zero], ids[e.one], labels, name or f"{e.name}/~")
    rep = validate_effect_algebra(q)
    if not rep.ok:
        raise AssertionError(f"quotient by a congruence failed re-validation: {rep.violations[:3]}")
    canon = validate_morphism(list(ids), e, q)
    if not (canon.is_morphism and canon.is_full and canon.is_surjective):
        raise AssertionError("canonical projection is not a full surjective morphism")
    return q


@dataclass
class OrderLemma:
    a: bool
    b: bool
    c: bool

    @property
    def equivalent(self) -> bool:
        return self.a == self.b == self.c


def congruence_order_lemma(e: EffectAlgebra, p: Partition, x, y, q: EffectAlgebra | None = None) -> OrderLemma:
    """Evaluate ``[x] <= [y]``, ``exists x1 ~ x: x1 <= y`` and
    ``exists y1 ~ y: x <= y1``. Pass ``q`` to reuse a quotient."""
    if q is None:
        q = quotient(e, p)
    a = q.leq(p.ids[x], p.ids[y])
    b = any(e.leq(x1, y) for x1 in p.block_of(x))
    c = any(e.leq(x, y1) for y1 in p.block_of(y))
    return OrderLemma(a, b, c)


@dataclass
class EAMorphism:
    source: EffectAlgebra
    target: EffectAlgebra
    map: tuple[int, ...]
    is_morphism: bool
    is_full: bool
    is_injective: bool
    is_surjective: bool
    witnesses: dict[str, tuple] = field(default_factory=dict)

    @property
    def is_isomorphism(self) -> bool:
        return self.is_morphism and self.is_full and self.is_injective and self.is_surjective

    def __call__(self, x):
        return self.map[x]


def validate_morphism(f: Sequence[int], source: EffectAlgebra, target: EffectAlgebra) -> EAMorphism:
    f = tuple(f)
    if len(f) != source.n:
        raise ValueError("map must be total on the source")
    wit = {}
    morph_w = None
    if f[source.one] != target.one:
        morph_w = (source.one,)
    else:
        for a, b, s in source.defined_pairs:
            if target.plus(f[a], f[b]) != f[s]:
                morph_w = (a, b)
                break
    if morph_w:
        wit["morphism"] = morph_w

    image = set(f)
    summable = {(f[a], f[b]) for a, b, _ in source.defined_pairs}
    full_w = None
    for a in range(source.n):
        for b in range(source.n):
            s = target.plus(f[a], f[b])
            if s is not None and s in image and (f[a], f[b]) not in summable:
                full_w = (a, b)
                break
        if full_w:
            break
    if full_w:
        wit["full"] = full_w

    inj = len(image) == len(f)
    if not inj:
        first = {}
        for x, y in enumerate(f):
            if y in first:
                wit["injective"] = (first[y], x)
                break
            first[y] = x
    surj = len(image) == target.n
    if not surj:
        wit["surjective"] = (min(set(range(target.n)) - image),)
    return EAMorphism(source, target, f, morph_w is None, full_w is None, inj, surj, wit)


def _signature(e: EffectAlgebra, x: int) -> tuple:
    P = e.poset
    row = sum(v is not None for v in e.sum[x])
    return (
        x == e.zero,
        x == e.one,
        P.rank[x],
        bin(P.down[x]).count("1"),
        bin(P.up[x]).count("1"),
        row,
        e.prime(x) == x,
        e.plus(x, x) is not None,
    )


def find_isomorphism(e1: EffectAlgebra, e2: EffectAlgebra) -> EAMorphism | None:
    """Backtracking search for an effect-algebra isomorphism ``e1 -> e2``.

    Candidates are pruned by an element signature (order rank, up/down set
    sizes, row definedness); each assignment forces complements and sums.
    """
    if e1.n != e2.n:
        return None
    n = e1.n
    sig1 = [_signature(e1, x) for x in range(n)]
    sig2 = [_signature(e2, x) for x in range(n)]
    if sorted(sig1) != sorted(sig2):
        return None
    by_sig = defaultdict(list)
    for y in range(n):
        by_sig[sig2[y]].append(y)

    order = sorted(range(n), key=lambda x: (len(by_sig[sig1[x]]), sig1[x][2], x))

    def assign(m, inv, x, y):
        """Extend ``m`` with ``x -> y`` and everything it forces; False on conflict."""
        stack = [(x, y)]
        while stack:
            x, y = stack.pop()
            if x in m:
                if m[x] != y:
                    return False
                continue
            if y in inv or sig1[x] != sig2[y]:
                return False
            m[x] = y
            inv[y] = x
            stack.append((e1.prime(x), e2.prime(y)))
            for x2, y2 in list(m.items()):
                s1, s2 = e1.plus(x, x2), e2.plus(y, y2)
                if (s1 is None) != (s2 is None):
                    return False
                if s1 is not None:
                    stack.append((s1, s2))
        return True

    def search(m, inv):
        if len(m) == n:
            return m
        x = next(v for v in order if v not in m)
        for y in by_sig[sig1[x]]:
            if y in inv:
                continue
            m2, inv2 = dict(m), dict(inv)
            if assign(m2, inv2, x, y):
                found = search(m2, inv2)
                if found:
                    return found
        return None

    m, inv = {}, {}
    if not assign(m, inv, e1.zero, e2.zero) or not assign(m, inv, e1.one, e2.one):
        return None
    found = search(m, inv)
    if found is None:
        return None
    iso = validate_morphism([found[x] for x in range(n)], e1, e2)
    if not iso.is_isomorphism:
        raise AssertionError("isomorphism search returned a non-isomorphism")
    return iso


def product(e1: EffectAlgebra, e2: EffectAlgebra, name="") -> EffectAlgebra:
    """Direct product; element ``(i, j)`` has index ``i * e2.n + j``."""
    n2 = e2.n
    n = e1.n * n2
    table = [[None] * n for _ in range(n)]
    for a1, b1, s1 in e1.defined_pairs:
        for a2, b2, s2 in e2.defined_pairs:
            table[a1 * n2 + a2][b1 * n2 + b2] = s1 * n2 + s2
    labels = [f"({e1.label(i)},{e2.label(j)})" for i in range(e1.n) for j in range(n2)]
    return EffectAlgebra.from_table(table, e1.zero * n2 + e2.zero, e1.one * n2 + e2.one, labels, name)
