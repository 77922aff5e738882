"""Property suites over the catalog and the small-instance enumerators."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

from . import catalog
from .bgpairs import (
    BGPair,
    all_subgroups,
    apply,
    build_quotient_mv,
    check_mvp1,
    kernel_equality_check,
    max_transport_check,
    mv_pair_verdict,
    phi_preserving_group,
    phi_swap,
    verify_representation,
)
from .effect import (
    EffectAlgebra,
    check_congruence,
    find_isomorphism,
    from_mv_algebra,
    is_mv_effect,
    mv_characterizations,
    riesz_properties,
    to_mv_algebra,
    validate_effect_algebra,
    validate_morphism,
)
from .order import birkhoff_map, is_lattice_embedding, join_irreducibles, lattice_laws_hold
from .rgen import BooleanAlg, iter_chains, phi_of_chain, rgenerate

PHI_SET = ["luka2", "luka3", "luka4", "luka5", "boolean2", "boolean3", "luka2xluka3"]


@dataclass
class PropertyResult:
    name: str
    ok: bool
    detail: str = ""
    seconds: float = 0.0
    checked: int = 0


@dataclass
class SuiteConfig:
    max_n: int = 6
    seed: int = 0
    max_atoms: int = 3
    max_irreducibles: int = 5
    extra_algebras: list[EffectAlgebra] = field(default_factory=list)


def _algebras(cfg: SuiteConfig) -> list[EffectAlgebra]:
    return catalog.effect_algebras() + list(cfg.extra_algebras)


def prop_axioms(cfg):
    n = 0
    for e in _algebras(cfg):
        rep = validate_effect_algebra(e)
        n += 1
        if not rep.ok:
            return False, f"{e.name}: {rep.violations[0]}", n
    return True, "", n


def prop_birkhoff(cfg):
    n = 0
    for e in _algebras(cfg):
        if validate_effect_algebra(e).ok and e.is_lattice_ordered and e.lattice.distributive and e.n <= 12:
            l = e.lattice
            irr = join_irreducibles(l)
            if not is_lattice_embedding(l, birkhoff_map(l, irr), (1 << len(irr)) - 1):
                return False, f"{e.name}: Birkhoff map is not an embedding", n
            if not lattice_laws_hold(l):
                return False, f"{e.name}: lattice laws fail", n
            n += 1
    return True, "", n


def prop_characterizations(cfg):
    n = 0
    for e in catalog.enumerate_effect_algebras(cfg.max_n, seed=cfg.seed):
        rz = riesz_properties(e)
        if rz.rdp and not rz.rip:
            return False, f"{e.name}: RDP without RIP", n
        if e.is_lattice_ordered:
            ch = mv_characterizations(e)
            if not ch.agree or ch.a != rz.rdp or not rz.rip:
                return False, f"{e.name}: {ch} / {rz}", n
        n += 1
    return True, "", n


def prop_mv_round_trip(cfg):
    n = 0
    for e in _algebras(cfg):
        if validate_effect_algebra(e).ok and is_mv_effect(e):
            back = from_mv_algebra(to_mv_algebra(e), e.name)
            if back != e:
                return False, f"{e.name}: round trip changed the table", n
            n += 1
    return True, "", n


def prop_phi_well_defined(cfg):
    n = 0
    for name in PHI_SET:
        r = rgenerate(catalog.builtin(name).instance())
        for ch in iter_chains(r):
            x = 0
            for d in ch:
                x ^= r.embed[d]
            if phi_of_chain(r, ch) != r.phi(x):
                return False, f"{name}: chain {ch} gives a different phi for {r.fmt(x)}", n
            n += 1
    return True, "", n


def prop_phi_morphism(cfg):
    n = 0
    for name in PHI_SET:
        m = catalog.builtin(name).instance()
        r = rgenerate(m)
        b = r.bool_alg.as_effect_algebra()
        mor = validate_morphism(r.phi_table, b, m)
        if not (mor.is_morphism and mor.is_surjective):
            return False, f"{name}: phi is not a surjective morphism {mor.witnesses}", n
        if any(r.phi(r.embed[x]) != x for x in range(m.n)):
            return False, f"{name}: phi does not fix M", n
        if any(r.phi(z) == m.zero for z in range(1, r.bool_alg.size)):
            return False, f"{name}: phi is not faithful", n
        n += 1
    return True, "", n


def _pairs_up_to(max_atoms) -> Iterable[BGPair]:
    for n in range(1, max_atoms + 1):
        for i, h in enumerate(all_subgroups(n)):
            yield BGPair(BooleanAlg(n), h, f"S{n}-all{i}")


def prop_forward_theorem(cfg):
    n = 0
    for p in _pairs_up_to(cfg.max_atoms):
        v = mv_pair_verdict(p)
        if not v.is_mv_pair:
            continue
        chk = check_congruence(p.b.as_effect_algebra(), p.orbits)
        if not chk.is_congruence:
            return False, f"{p.name}: orbit relation fails {chk.failed()}", n
        q = build_quotient_mv(p, v)
        if not riesz_properties(q).rdp:
            return False, f"{p.name}: quotient lacks RDP", n
        n += 1
    return True, "", n


def prop_charmvp1(cfg):
    n = 0
    for p in catalog.enumerate_bg_pairs(min(cfg.max_atoms + 1, 4)):
        c = check_mvp1(p)
        if not c.consistent:
            return False, f"{p.name}: MVP1 reformulations disagree", n
        n += 1
    return True, "", n


def prop_maxtomax(cfg):
    n = 0
    for p in _pairs_up_to(cfg.max_atoms):
        v = mv_pair_verdict(p)
        if v.is_mv_pair:
            if not max_transport_check(p, v):
                return False, p.name, n
            n += 1
    return True, "", n


def _mv_inputs(cfg):
    out = []
    for e in catalog.effect_algebras():
        if is_mv_effect(e):
            out.append(e)
    out += [e for e in catalog.enumerate_effect_algebras(min(cfg.max_n, 5), seed=cfg.seed) if is_mv_effect(e)]
    return out


def prop_representation(cfg):
    n = 0
    for m in _mv_inputs(cfg):
        if len(join_irreducibles(m.lattice)) > cfg.max_irreducibles:
            continue
        rep = verify_representation(m)
        if not rep.ok:
            return False, f"{m.name}: {rep.notes}", n
        n += 1
    return True, "", n


def prop_kernel(cfg):
    n = 0
    for m in _mv_inputs(cfg):
        if len(join_irreducibles(m.lattice)) > cfg.max_irreducibles:
            continue
        if not kernel_equality_check(rgenerate(m)):
            return False, m.name, n
        n += 1
    return True, "", n


def prop_phi_swap(cfg):
    n = 0
    for name in ("luka3", "luka4", "luka2xluka3", "boolean2"):
        r = rgenerate(catalog.builtin(name).instance())
        g = phi_preserving_group(r)
        for u in r.bool_alg.elements():
            for v in r.bool_alg.elements():
                if r.phi(u) != r.phi(v):
                    continue
                f = phi_swap(r, u, v)
                if f not in g or any(apply(f, apply(f, x)) != x for x in r.bool_alg.elements()):
                    return False, f"{name}: swap {r.fmt(u)} <-> {r.fmt(v)}", n
                n += 1
    return True, "", n


def prop_catalog(cfg):
    bad = catalog.check_catalog()
    return (not bad), (str(bad) if bad else ""), len(catalog.CATALOG)


def prop_iso_symmetry(cfg):
    algs = [e for e in _algebras(cfg) if validate_effect_algebra(e).ok and e.n <= 9]
    n = 0
    for a in algs:
        for b in algs:
            if a.n == b.n:
                if (find_isomorphism(a, b) is None) != (find_isomorphism(b, a) is None):
                    return False, f"{a.name} vs {b.name}", n
                n += 1
    return True, "", n


PROPERTIES: list[tuple[str, Callable]] = [
    ("axioms", prop_axioms),
    ("birkhoff-embedding", prop_birkhoff),
    ("characterization-coherence", prop_characterizations),
    ("mv-round-trip", prop_mv_round_trip),
    ("phi-well-defined", prop_phi_well_defined),
    ("phi-morphism", prop_phi_morphism),
    ("mv-pair-forward", prop_forward_theorem),
    ("charmvp1-agreement", prop_charmvp1),
    ("max-transport", prop_maxtomax),
    ("representation", prop_representation),
    ("kernel-equality", prop_kernel),
    ("phi-swap", prop_phi_swap),
    ("catalog-expectations", prop_catalog),
    ("isomorphism-symmetry", prop_iso_symmetry),
]


def run_suite(cfg: SuiteConfig | None = None, only: Iterable[str] | None = None) -> list[PropertyResult]:
    cfg = cfg or SuiteConfig()
    wanted = set(only) if only else None
    results = []
    for name, fn in PROPERTIES:
        if wanted and name not in wanted:
            continue
        t0 = time.perf_counter()
        try:
            ok, detail, count = fn(cfg)
        except Exception as exc:  # a crashing property is a red property
            ok, detail, count = False, f"{type(exc).__name__}: {exc}", 0
        results.append(PropertyResult(name, ok, detail, time.perf_counter() - t0, count))
    return results
