"""Finite posets and bounded lattices.

Elements are dense integer indices ``0..n-1``. Up-sets and down-sets are kept
as Python int bitsets so that bound computations are a couple of ``&``s.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence


class NotALattice(Exception):
    def __init__(self, pair, kind):
        self.pair = pair
        self.kind = kind
        super().__init__(f"elements {pair[0]} and {pair[1]} have no {kind}")


class NoBounds(Exception):
    pass


class NotDistributive(Exception):
    def __init__(self, triple):
        self.triple = triple
        super().__init__(f"distributivity fails at {triple}")


@dataclass
class Violation:
    axiom: str
    witness: tuple
    detail: str = ""

    def __str__(self):
        s = f"{self.axiom}: witness {self.witness}"
        return f"{s} ({self.detail})" if self.detail else s


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def axioms(self) -> list[str]:
        return sorted({v.axiom for v in self.violations})

    def first(self, axiom: str) -> Violation | None:
        for v in self.violations:
            if v.axiom == axiom:
                return v
        return None

    def add(self, axiom, witness, detail=""):
        self.violations.append(Violation(axiom, tuple(witness), detail))

    def __bool__(self):
        return self.ok


def bits(mask: int):
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


@dataclass(frozen=True)
class Poset:
    n: int
    leq: tuple[tuple[bool, ...], ...]
    labels: tuple[str, ...] | None = None

    @classmethod
    def from_relation(cls, n, pairs, labels=None, close=True) -> "Poset":
        """Build from ``(i, j)`` pairs meaning ``i <= j``.

        With ``close`` the reflexive-transitive closure is taken.
        """
        rel = [[False] * n for _ in range(n)]
        for i, j in pairs:
            rel[i][j] = True
        if close:
            for i in range(n):
                rel[i][i] = True
            for k in range(n):
                rk = rel[k]
                for i in range(n):
                    if rel[i][k]:
                        ri = rel[i]
                        for j in range(n):
                            if rk[j]:
                                ri[j] = True
        return cls(n, tuple(tuple(r) for r in rel), tuple(labels) if labels else None)

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else str(i)

    @cached_property
    def up(self) -> tuple[int, ...]:
        return tuple(sum(1 << j for j in range(self.n) if self.leq[i][j]) for i in range(self.n))

    @cached_property
    def down(self) -> tuple[int, ...]:
        return tuple(sum(1 << j for j in range(self.n) if self.leq[j][i]) for i in range(self.n))

    def lt(self, i, j) -> bool:
        return i != j and self.leq[i][j]

    @cached_property
    def covers(self) -> list[tuple[int, int]]:
        """Pairs ``(i, j)`` with ``j`` covering ``i``."""
        out = []
        for i in range(self.n):
            above = self.up[i] & ~(1 << i)
            for j in bits(above):
                between = above & self.down[j] & ~(1 << j)
                if not between:
                    out.append((i, j))
        return out

    @cached_property
    def rank(self) -> tuple[int, ...]:
        """Length of the longest chain from a minimal element."""
        r = [0] * self.n
        order = sorted(range(self.n), key=lambda i: bin(self.down[i]).count("1"))
        for j in order:
            for i in bits(self.down[j] & ~(1 << j)):
                r[j] = max(r[j], r[i] + 1)
        return tuple(r)

    def maximal(self, subset) -> list[int]:
        subset = list(subset)
        mask = sum(1 << i for i in subset)
        return [m for m in sorted(set(subset)) if not (self.up[m] & mask & ~(1 << m))]


def validate_poset(p: Poset) -> ValidationReport:
    rep = ValidationReport()
    n, le = p.n, p.leq
    for i in range(n):
        if not le[i][i]:
            rep.add("reflexivity", (i,))
    for i in range(n):
        for j in range(i + 1, n):
            if le[i][j] and le[j][i]:
                rep.add("antisymmetry", (i, j))
    for i in range(n):
        for j in range(n):
            if not le[i][j]:
                continue
            for k in range(n):
                if le[j][k] and not le[i][k]:
                    rep.add("transitivity", (i, j, k))
    return rep


@dataclass(frozen=True)
class BoundedLattice:
    poset: Poset
    join: tuple[tuple[int, ...], ...]
    meet: tuple[tuple[int, ...], ...]
    bottom: int
    top: int
    distributive: bool
    distributivity_witness: tuple[int, int, int] | None = None

    @property
    def n(self) -> int:
        return self.poset.n

    def leq(self, a, b) -> bool:
        return self.poset.leq[a][b]


def _least(p: Poset, candidates: int) -> int | None:
    for u in bits(candidates):
        if candidates & ~p.up[u] == 0:
            return u
    return None


def _greatest(p: Poset, candidates: int) -> int | None:
    for u in bits(candidates):
        if candidates & ~p.down[u] == 0:
            return u
    return None


def lattice_from_poset(p: Poset) -> BoundedLattice:
    n = p.n
    everything = (1 << n) - 1
    bottom = _least(p, everything)
    top = _greatest(p, everything)
    if bottom is None or top is None:
        raise NoBounds("poset has no least or no greatest element")
    join = [[0] * n for _ in range(n)]
    meet = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            j = _least(p, p.up[a] & p.up[b])
            if j is None:
                raise NotALattice((a, b), "join")
            m = _greatest(p, p.down[a] & p.down[b])
            if m is None:
                raise NotALattice((a, b), "meet")
            join[a][b] = join[b][a] = j
            meet[a][b] = meet[b][a] = m
    witness = None
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if meet[x][join[y][z]] != join[meet[x][y]][meet[x][z]]:
                    witness = (x, y, z)
                    break
            if witness:
                break
        if witness:
            break
    return BoundedLattice(
        p,
        tuple(map(tuple, join)),
        tuple(map(tuple, meet)),
        bottom,
        top,
        witness is None,
        witness,
    )


def join_irreducibles(l: BoundedLattice) -> list[int]:
    """Join-irreducible elements, found by scanning the join table.

    The lattice must be distributive; every element is checked to be the join
    of the irreducibles below it.
    """
    if not l.distributive:
        raise NotDistributive(l.distributivity_witness)
    n = l.n
    reducible = [False] * n
    reducible[l.bottom] = True
    for a in range(n):
        for b in range(n):
            j = l.join[a][b]
            if j != a and j != b:
                reducible[j] = True
    irr = [j for j in range(n) if not reducible[j]]
    for x in range(n):
        acc = l.bottom
        for j in irr:
            if l.leq(j, x):
                acc = l.join[acc][j]
        if acc != x:
            raise AssertionError(f"{x} is not the join of the irreducibles below it")
    return irr


def birkhoff_map(l: BoundedLattice, irr: Sequence[int] | None = None) -> list[int]:
    """``x -> {j in J(l) : j <= x}`` as bitsets over positions in ``irr``."""
    if irr is None:
        irr = join_irreducibles(l)
    return [sum(1 << k for k, j in enumerate(irr) if l.leq(j, x)) for x in range(l.n)]


def is_lattice_embedding(l: BoundedLattice, image: Sequence[int], full: int) -> bool:
    """Check that ``image`` (bitsets) is an injective 0,1-lattice homomorphism
    into the powerset lattice whose top is ``full``."""
    if len(set(image)) != l.n:
        return False
    if image[l.bottom] != 0 or image[l.top] != full:
        return False
    for a in range(l.n):
        for b in range(l.n):
            if image[l.join[a][b]] != image[a] | image[b]:
                return False
            if image[l.meet[a][b]] != image[a] & image[b]:
                return False
    return True


def lattice_laws_hold(l: BoundedLattice) -> bool:
    J, M, r = l.join, l.meet, range(l.n)
    for a in r:
        for b in r:
            if J[a][b] != J[b][a] or M[a][b] != M[b][a]:
                return False
            if J[a][M[a][b]] != a or M[a][J[a][b]] != a:
                return False
            for c in r:
                if J[J[a][b]][c] != J[a][J[b][c]] or M[M[a][b]][c] != M[a][M[b][c]]:
                    return False
    return True
