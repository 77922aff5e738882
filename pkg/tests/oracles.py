"""Brute-force reference implementations used to derive and freeze test values.

Nothing here imports the library; everything works on raw sum tables
(``T[a][b]`` an index or None), atom-index tuples and bitmasks.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement, permutations, product


def table_of(e):
    return [list(row) for row in e.sum], e.zero, e.one


# -- effect algebras ---------------------------------------------------------

def axiom_failures(T, zero, one) -> set[str]:
    n = len(T)
    bad = set()
    for a in range(n):
        for b in range(n):
            if T[a][b] != T[b][a]:
                bad.add("E1")
    for a, b, c in product(range(n), repeat=3):
        ab = T[a][b]
        bc = T[b][c]
        left = T[ab][c] if ab is not None else None
        right = T[a][bc] if bc is not None else None
        if left is not None and right is None or right is not None and left is None or left != right:
            bad.add("E2")
    for a in range(n):
        if sum(1 for b in range(n) if T[a][b] == one) != 1:
            bad.add("E3")
        if T[a][one] is not None and a != zero:
            bad.add("E4")
    return bad


def leq_table(T):
    n = len(T)
    return [[any(T[a][c] == b for c in range(n)) for b in range(n)] for a in range(n)]


def glb(le, a, b):
    n = len(le)
    lower = [x for x in range(n) if le[x][a] and le[x][b]]
    best = [x for x in lower if all(le[y][x] for y in lower)]
    return best[0] if best else None


def lub(le, a, b):
    n = len(le)
    upper = [x for x in range(n) if le[a][x] and le[b][x]]
    best = [x for x in upper if all(le[x][y] for y in upper)]
    return best[0] if best else None


def is_lattice(T) -> bool:
    le = leq_table(T)
    n = len(T)
    return all(glb(le, a, b) is not None and lub(le, a, b) is not None for a in range(n) for b in range(n))


def prime(T, one, a):
    return next(b for b in range(len(T)) if T[a][b] == one)


def minus(T, b, a):
    """``b - a``: the c with a + c = b, else None."""
    for c in range(len(T)):
        if T[a][c] == b:
            return c
    return None


def mv_conditions(T, zero, one) -> dict[str, bool]:
    """The four MV conditions, evaluated literally."""
    n = len(T)
    le = leq_table(T)
    M = [[glb(le, a, b) for b in range(n)] for a in range(n)]
    J = [[lub(le, a, b) for b in range(n)] for a in range(n)]
    pr = [prime(T, one, a) for a in range(n)]
    pairs = list(product(range(n), repeat=2))
    a_ok = all(minus(T, J[a][b], a) == minus(T, b, M[a][b]) for a, b in pairs)
    b_ok = all(M[a][b] != zero or le[a][pr[b]] for a, b in pairs)
    c_ok = all(le[minus(T, a, M[a][b])][pr[b]] for a, b in pairs)

    def d_pair(a, b):
        for a1, b1, c in product(range(n), repeat=3):
            s = T[a1][b1]
            if s is not None and T[s][c] is not None and T[a1][c] == a and T[b1][c] == b:
                return True
        return False

    d_ok = all(d_pair(a, b) for a, b in pairs)
    return {"a": a_ok, "b": b_ok, "c": c_ok, "d": d_ok}


def rdp(T) -> bool:
    n = len(T)
    le = leq_table(T)
    for u, v1, v2 in product(range(n), repeat=3):
        s = T[v1][v2]
        if s is None or not le[u][s]:
            continue
        if not any(T[u1][u2] == u and le[u1][v1] and le[u2][v2] for u1 in range(n) for u2 in range(n)):
            return False
    return True


def rip(T) -> bool:
    n = len(T)
    le = leq_table(T)
    for u1, u2, v1, v2 in product(range(n), repeat=4):
        if le[u1][v1] and le[u1][v2] and le[u2][v1] and le[u2][v2]:
            if not any(le[u1][x] and le[u2][x] and le[x][v1] and le[x][v2] for x in range(n)):
                return False
    return True


def congruence(T, one, ids) -> dict[str, bool]:
    n = len(T)
    same = lambda x, y: ids[x] == ids[y]
    c2 = all(
        same(T[a1][b1], T[a2][b2])
        for a1, a2, b1, b2 in product(range(n), repeat=4)
        if same(a1, a2) and same(b1, b2) and T[a1][b1] is not None and T[a2][b2] is not None
    )
    c5 = True
    for a, b, c in product(range(n), repeat=3):
        bc = T[b][c]
        if bc is not None and same(a, bc):
            if not any(same(b1, b) and same(c1, c) and T[b1][c1] == a for b1 in range(n) for c1 in range(n)):
                c5 = False
    pr = [prime(T, one, a) for a in range(n)]
    c6 = all(same(pr[a], pr[b]) for a in range(n) for b in range(n) if same(a, b))
    return {"c1": True, "c2": c2, "c5": c5, "c6": c6}


def quotient_sums(T, ids) -> set[tuple[int, int, int]]:
    n = len(T)
    return {(ids[a], ids[b], ids[T[a][b]]) for a in range(n) for b in range(n) if T[a][b] is not None}


def is_isomorphic(T1, z1, o1, T2, z2, o2) -> bool:
    n = len(T1)
    if n != len(T2):
        return False
    for p in permutations(range(n)):
        if p[z1] != z2 or p[o1] != o2:
            continue
        if all((T1[a][b] is None and T2[p[a]][p[b]] is None)
               or (T1[a][b] is not None and T2[p[a]][p[b]] == p[T1[a][b]])
               for a in range(n) for b in range(n)):
            return True
    return False


def all_effect_algebras(n: int) -> list[list[list]]:
    """Every effect algebra on ``0..n-1`` (zero 0, one n-1) up to
    isomorphism, by filling the middle block of the table in all ways."""
    one = n - 1
    mids = list(range(1, n - 1))
    cells = [(a, b) for a in mids for b in mids if a <= b]
    reps = []
    for values in product([None] + list(range(n)), repeat=len(cells)):
        T = [[None] * n for _ in range(n)]
        for x in range(n):
            T[0][x] = T[x][0] = x
        for (a, b), v in zip(cells, values):
            T[a][b] = T[b][a] = v
        if axiom_failures(T, 0, one):
            continue
        if not any(is_isomorphic(T, 0, one, R, 0, one) for R in reps):
            reps.append(T)
    return reps


# -- R-generation and phi ----------------------------------------------------

def join_irreducibles(le) -> list[int]:
    n = len(le)
    out = []
    for j in range(n):
        below = [x for x in range(n) if le[x][j] and x != j]
        if not below:
            continue  # bottom
        covers = [x for x in below if not any(le[x][y] and y != x for y in below)]
        if len(covers) == 1:
            out.append(j)
    return out


def embed(le, irr, d) -> int:
    return sum(1 << k for k, j in enumerate(irr) if le[j][d])


def multichains(le, max_len: int):
    """Every non-decreasing chain of even length up to ``max_len``."""
    n = len(le)
    topo = sorted(range(n), key=lambda x: sum(le[y][x] for y in range(n)))
    for k in range(0, max_len + 1, 2):
        for combo in combinations_with_replacement(topo, k):
            if all(le[combo[i]][combo[i + 1]] for i in range(k - 1)):
                yield combo


def chain_value(le, irr, chain) -> int:
    x = 0
    for d in chain:
        x ^= embed(le, irr, d)
    return x


def phi_of_chain(T, zero, chain):
    acc = zero
    for i in range(0, len(chain), 2):
        step = minus(T, chain[i + 1], chain[i])
        acc = T[acc][step]
    return acc


def phi_by_atoms(T, zero) -> dict[int, int]:
    """phi via additivity: each irreducible j contributes j minus its unique
    lower cover, and phi of a set is the sum of the contributions."""
    le = leq_table(T)
    irr = join_irreducibles(le)
    n = len(T)
    contrib = []
    for j in irr:
        below = [x for x in range(n) if le[x][j] and x != j]
        cover = next(x for x in below if not any(le[x][y] and y != x for y in below))
        contrib.append(minus(T, j, cover))
    out = {}
    for x in range(1 << len(irr)):
        acc = zero
        for k in range(len(irr)):
            if x >> k & 1:
                acc = T[acc][contrib[k]]
        out[x] = acc
    return out


def fraction_phi_chain(values: list[Fraction], chain) -> Fraction:
    """Real-valued phi for a chain of numbers: sum of consecutive gaps."""
    return sum((values[chain[i + 1]] - values[chain[i]] for i in range(0, len(chain), 2)), Fraction(0))


# -- BG-pairs -----------------------------------------------------------------

def act(p, x) -> int:
    out = 0
    for k, img in enumerate(p):
        if x >> k & 1:
            out |= 1 << img
    return out


def phi_preserving(phi: dict[int, int], k: int) -> set[tuple]:
    return {p for p in permutations(range(k)) if all(phi[act(p, x)] == phi[x] for x in range(1 << k))}


def mvp1(k, perms) -> bool:
    for a, b in product(range(1 << k), repeat=2):
        if a & ~b:
            continue
        for f in perms:
            fa = act(f, a)
            if fa & ~b == 0 and not any(act(h, a) == fa and act(h, b) == b for h in perms):
                return False
    return True


def mvp2(k, perms) -> bool:
    for a, b in product(range(1 << k), repeat=2):
        L = {a & act(f, b) for f in perms}
        mx = [m for m in L if not any(y != m and m & ~y == 0 for y in L)]
        if not all(any(x & ~m == 0 for m in mx) for x in L):
            return False
    return True


def lplus(perms, a, b) -> set[int]:
    return {act(g, a) & act(f, b) for f in perms for g in perms}


def orbits(k, perms) -> list[frozenset]:
    seen = {}
    for x in range(1 << k):
        seen.setdefault(frozenset(act(p, x) for p in perms), None)
    return sorted(seen, key=min)


def closure(gens, k) -> set[tuple]:
    ident = tuple(range(k))
    group = {ident}
    frontier = [ident]
    while frontier:
        new = []
        for p in frontier:
            for g in gens:
                q = tuple(g[p[i]] for i in range(k))
                if q not in group:
                    group.add(q)
                    new.append(q)
        frontier = new
    return group
