"""Built-in algebras and BG-pairs, plus small-instance enumerators."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

from .bgpairs import BGPair, Group, full_aut, subgroup_closure, subgroups_up_to_conjugacy
from .effect import (
    EffectAlgebra,
    _signature,
    find_isomorphism,
    is_mv_effect,
    mv_characterizations,
    product,
    riesz_properties,
    validate_effect_algebra,
)
from .rgen import BooleanAlg


class UnknownName(KeyError):
    pass


def luka(n: int) -> EffectAlgebra:
    """Lukasiewicz chain with ``n`` elements ``0, 1/(n-1), ..., 1``."""
    if n < 2:
        raise ValueError("chain needs at least two elements")
    top = n - 1
    sums = [(i, j, i + j) for i in range(n) for j in range(n) if i + j <= top]
    labels = [str(Fraction(i, top)) for i in range(n)]
    return EffectAlgebra.from_sums(n, 0, top, sums, labels, f"luka{n}")


def _bool_label(mask: int, k: int) -> str:
    if mask == 0:
        return "0"
    if mask == (1 << k) - 1:
        return "1"
    return "".join(f"a{i + 1}" for i in range(k) if mask >> i & 1)


def boolean(k: int) -> EffectAlgebra:
    """``2^k`` with element index equal to the atom bitmask."""
    e = BooleanAlg(k).as_effect_algebra(f"boolean{k}")
    labels = tuple(_bool_label(m, k) for m in range(1 << k))
    return EffectAlgebra(e.n, e.sum, e.zero, e.one, labels, e.name)


def mo2() -> EffectAlgebra:
    """Two complementary middle pairs; lattice ordered, not MV."""
    labels = ["0", "a", "a'", "b", "b'", "1"]
    sums = [(0, x, x) for x in range(6)] + [(1, 2, 5), (3, 4, 5)]
    return EffectAlgebra.from_sums(6, 0, 5, sums, labels, "mo2")


def cyclic3_pair() -> BGPair:
    f = (1, 2, 0)  # a1 -> a2 -> a3 -> a1
    return BGPair(BooleanAlg(3), subgroup_closure([f], 3), "cyclic3-nonmvpair")


@dataclass
class CatalogEntry:
    name: str
    kind: str  # "effect-algebra" | "bg-pair"
    params: dict
    expected: dict
    build: Callable = field(repr=False)

    def instance(self):
        return self.build()


def _ea(name, build, params, **expected):
    return CatalogEntry(name, "effect-algebra", params, expected, build)


def _bg(name, build, params, **expected):
    return CatalogEntry(name, "bg-pair", params, expected, build)


def _entries() -> list[CatalogEntry]:
    out = []
    for n in range(2, 7):
        out.append(_ea(f"luka{n}", lambda n=n: luka(n), {"chain": n}, lattice=True, mv=True, rdp=True))
    for k in range(1, 5):
        out.append(_ea(f"boolean{k}", lambda k=k: boolean(k), {"atoms": k}, lattice=True, mv=True, rdp=True))
    out.append(_ea("luka2xluka3", lambda: product(luka(2), luka(3), "luka2xluka3"), {"factors": [2, 3]},
                   lattice=True, mv=True, rdp=True))
    out.append(_ea("luka3xluka3", lambda: product(luka(3), luka(3), "luka3xluka3"), {"factors": [3, 3]},
                   lattice=True, mv=True, rdp=True))
    out.append(_ea("mo2", mo2, {}, lattice=True, mv=False, rdp=False))
    # expected quotients name the first isomorphic catalog entry
    quot = {1: "luka2", 2: "luka3", 3: "luka4", 4: "luka5"}
    triv = {1: "luka2", 2: "boolean2", 3: "boolean3", 4: "boolean4"}
    for n in range(1, 5):
        out.append(_bg(f"boolean{n}-full", lambda n=n: BGPair(BooleanAlg(n), full_aut(n), f"boolean{n}-full"),
                       {"atoms": n, "group": "full"}, mv_pair=True, quotient=quot[n]))
        out.append(_bg(f"boolean{n}-trivial",
                       lambda n=n: BGPair(BooleanAlg(n), Group(n, (tuple(range(n)),)), f"boolean{n}-trivial"),
                       {"atoms": n, "group": "trivial"}, mv_pair=True, quotient=triv[n]))
    out.append(_bg("cyclic3-nonmvpair", cyclic3_pair, {"atoms": 3, "generators": [[1, 2, 0]]},
                   mv_pair=False, quotient=None))
    return out


CATALOG: dict[str, CatalogEntry] = {e.name: e for e in _entries()}


def builtin(name: str) -> CatalogEntry:
    try:
        return CATALOG[name]
    except KeyError:
        raise UnknownName(name) from None


def effect_algebras() -> list[EffectAlgebra]:
    return [e.instance() for e in CATALOG.values() if e.kind == "effect-algebra"]


def bg_pairs() -> list[BGPair]:
    return [e.instance() for e in CATALOG.values() if e.kind == "bg-pair"]


def recompute_expected(entry: CatalogEntry) -> dict:
    from .bgpairs import build_quotient_mv, mv_pair_verdict

    obj = entry.instance()
    if entry.kind == "effect-algebra":
        lat = obj.is_lattice_ordered
        return {"lattice": lat, "mv": lat and mv_characterizations(obj).all_true,
                "rdp": riesz_properties(obj).rdp}
    verdict = mv_pair_verdict(obj)
    quot = None
    if verdict.is_mv_pair:
        q = build_quotient_mv(obj, verdict)
        for cand in CATALOG.values():
            if cand.kind == "effect-algebra":
                c = cand.instance()
                if c.n == q.n and find_isomorphism(q, c) is not None:
                    quot = cand.name
                    break
    return {"mv_pair": verdict.is_mv_pair, "quotient": quot}


def check_catalog() -> dict[str, tuple[dict, dict]]:
    """Entries whose recorded expectations differ from recomputed verdicts."""
    bad = {}
    for entry in CATALOG.values():
        got = recompute_expected(entry)
        if got != entry.expected:
            bad[entry.name] = (entry.expected, got)
    return bad


# -- enumeration -------------------------------------------------------------

EXHAUSTIVE_MAX_N = 6


def _involutions(items: list[int]) -> Iterator[dict[int, int]]:
    if not items:
        yield {}
        return
    first, rest = items[0], items[1:]
    for sub in _involutions(rest):
        yield {first: first, **sub}
    for i, other in enumerate(rest):
        for sub in _involutions(rest[:i] + rest[i + 1:]):
            yield {first: other, other: first, **sub}


_UNSET = -1


def _assoc_ok(T, n) -> bool:
    for x in range(n):
        Tx = T[x]
        for y in range(n):
            s = Tx[y]
            if s is None or s == _UNSET:
                continue
            Ts = T[s]
            for z in range(n):
                t = Ts[z]
                if t is None or t == _UNSET:
                    continue
                u = T[y][z]
                if u == _UNSET:
                    continue
                if u is None:
                    return False
                v = Tx[u]
                if v == _UNSET:
                    continue
                if v != t:
                    return False
    return True


def _labelled_tables(n: int, rng: random.Random | None = None, budget: int | None = None):
    """Yield sum tables of effect algebras on ``0..n-1`` with zero 0, one n-1."""
    one = n - 1
    mids = list(range(1, n - 1))
    invs = list(_involutions(mids))
    if rng:
        rng.shuffle(invs)
    nodes = [0]
    for inv in invs:
        T = [[_UNSET] * n for _ in range(n)]
        for x in range(n):
            T[0][x] = T[x][0] = x
        for x in range(1, n):
            T[one][x] = T[x][one] = None
        for a in mids:
            T[a][inv[a]] = one
        pairs = [(a, b) for a in mids for b in mids if a <= b and inv[a] != b]

        def rec(k):
            nodes[0] += 1
            if budget is not None and nodes[0] > budget:
                return
            if k == len(pairs):
                yield [row[:] for row in T]
                return
            a, b = pairs[k]
            cands = [None] + [c for c in mids if c != a and c != b]
            if rng:
                rng.shuffle(cands)
            for c in cands:
                if c is not None and (c in T[a] or c in T[b]):
                    continue
                T[a][b] = T[b][a] = c
                if _assoc_ok(T, n):
                    yield from rec(k + 1)
                T[a][b] = T[b][a] = _UNSET

        yield from rec(0)


def _iso_key(e: EffectAlgebra) -> tuple:
    return tuple(sorted(_signature(e, x) for x in range(e.n)))


def _dedup(stream, found: dict):
    for e in stream:
        key = _iso_key(e)
        bucket = found.setdefault(key, [])
        if any(find_isomorphism(e, f) is not None for f in bucket):
            continue
        bucket.append(e)
        yield e


def _tables_to_algebras(n, tables, tag):
    for k, T in enumerate(tables):
        e = EffectAlgebra.from_table(T, 0, n - 1, name=f"{tag}{n}")
        if validate_effect_algebra(e).ok:
            yield e


def enumerate_effect_algebras(max_n: int, seed: int = 0, samples: int = 25,
                              budget: int = 200_000) -> Iterator[EffectAlgebra]:
    """Non-isomorphic effect algebras with 2..max_n elements.

    Sizes up to 6 are exhaustive; larger sizes are a seeded random sample of
    at most ``samples`` algebras per size.
    """
    for n in range(2, max_n + 1):
        found: dict = {}
        if n <= EXHAUSTIVE_MAX_N:
            algs = _dedup(_tables_to_algebras(n, _labelled_tables(n), "ea"), found)
            for i, e in enumerate(algs):
                yield _named(e, f"ea{n}_{i}")
        else:
            rng = random.Random(seed * 1000 + n)
            algs = _dedup(_tables_to_algebras(n, _labelled_tables(n, rng, budget), "ea"), found)
            for i, e in enumerate(algs):
                yield _named(e, f"ea{n}_s{seed}_{i}")
                if i + 1 >= samples:
                    break


def _named(e: EffectAlgebra, name: str) -> EffectAlgebra:
    return EffectAlgebra(e.n, e.sum, e.zero, e.one, e.labels, name)


def enumerate_bg_pairs(max_atoms: int) -> Iterator[BGPair]:
    """``(2^n, H)`` for ``1 <= n <= max_atoms`` and ``H`` up to conjugacy."""
    if max_atoms > 4:
        raise ValueError("subgroup enumeration is exhaustive only up to 4 atoms")
    for n in range(1, max_atoms + 1):
        for i, h in enumerate(subgroups_up_to_conjugacy(n)):
            yield BGPair(BooleanAlg(n), h, f"S{n}-sub{i}-order{len(h)}")


def mv_effect_algebras(max_n: int) -> list[EffectAlgebra]:
    return [e for e in enumerate_effect_algebras(max_n) if is_mv_effect(e)]
