"""Command-line front end.

Every command builds a :class:`Report`; ``--json`` prints it as sorted JSON
(timings left out so the output is byte-stable), otherwise a short text
summary is printed. Exit codes: 0 ok, 1 verdict or property failure,
2 input error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__, catalog, formats
from .bgpairs import (
    DEFAULT_MAX_ATOMS,
    BGPair,
    CapExceeded,
    build_quotient_mv,
    meet_identity_witness,
    mv_pair_verdict,
    verify_representation,
)
from .dot import representation_dot
from .effect import (
    EffectAlgebra,
    NotMvEffect,
    find_isomorphism,
    is_mv_effect,
    mv_characterizations,
    riesz_properties,
    validate_effect_algebra,
)
from .order import NoBounds, NotALattice, NotDistributive, Poset, lattice_from_poset, validate_poset
from .rgen import chain_representation, rgenerate_lattice
from .suite import SuiteConfig, run_suite

FORMAT_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


@dataclass
class Report:
    command: list[str]
    ok: bool
    verdicts: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    seed: int | None = None
    format_version: int = FORMAT_VERSION
    timings: dict = field(default_factory=dict)

    def to_json(self, timings=False) -> str:
        d = asdict(self)
        if not timings:
            d.pop("timings")
        return json.dumps(d, sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Report":
        d = json.loads(text)
        if d.get("format_version") != FORMAT_VERSION:
            raise ValueError(f"unsupported report format {d.get('format_version')}")
        return cls(**d)

    def to_text(self) -> str:
        lines = [f"{' '.join(self.command)}: {'ok' if self.ok else 'FAILED'}"]
        for k, v in self.verdicts.items():
            lines.append(f"  {k}: {v}")
        for k, v in self.witnesses.items():
            lines.append(f"  witness {k}: {v}")
        for k, v in self.details.items():
            if isinstance(v, list) and v and isinstance(v[0], (list, dict)):
                lines.append(f"  {k}:")
                lines += [f"    {row}" for row in v]
            elif isinstance(v, str) and "\n" in v:
                lines.append(f"  {k}:")
                lines += [f"    {row}" for row in v.rstrip("\n").splitlines()]
            else:
                lines.append(f"  {k}: {v}")
        for k, v in self.timings.items():
            lines.append(f"  time {k}: {v:.3f}s")
        return "\n".join(lines) + "\n"


# -- input -------------------------------------------------------------------

def load_object(ref: str):
    """A file path, or a built-in catalog name when no such file exists."""
    path = Path(ref)
    if path.exists():
        try:
            return formats.load(path).obj
        except formats.ParseError as exc:
            raise InputError(f"{ref}: {exc}") from None
        except ValueError as exc:
            raise InputError(f"{ref}: {exc}") from None
    if ref in catalog.CATALOG:
        return catalog.builtin(ref).instance()
    raise InputError(f"no such file or catalog entry: {ref}")


def _need(obj, kind, ref):
    if not isinstance(obj, kind):
        raise InputError(f"{ref}: expected {kind.__name__}, got {type(obj).__name__}")
    return obj


def _labels(e: EffectAlgebra, w):
    return [e.label(x) for x in w] if w is not None else None


def _bool_witness(p: BGPair, w):
    if w is None:
        return None
    *elems, f = w
    return [p.b.fmt(x) for x in elems] + [" ".join(map(str, f))]


def _catalog_match(q: EffectAlgebra):
    for entry in catalog.CATALOG.values():
        if entry.kind == "effect-algebra":
            c = entry.instance()
            if c.n == q.n and find_isomorphism(q, c) is not None:
                return entry.name
    return None


# -- commands ----------------------------------------------------------------

def cmd_validate(args) -> Report:
    obj = load_object(args.file)
    rep = Report(["validate", args.file], True)
    if isinstance(obj, Poset):
        v = validate_poset(obj)
        rep.verdicts["poset"] = v.ok
        rep.witnesses.update({x.axiom: list(x.witness) for x in v.violations[:5]})
        if v.ok:
            try:
                lat = lattice_from_poset(obj)
                rep.verdicts["lattice"] = True
                rep.verdicts["distributive"] = lat.distributive
            except (NotALattice, NoBounds) as exc:
                rep.verdicts["lattice"] = False
                rep.witnesses["lattice"] = str(exc)
        rep.ok = v.ok and rep.verdicts.get("lattice", False)
    elif isinstance(obj, EffectAlgebra):
        v = validate_effect_algebra(obj)
        rep.verdicts["effect_algebra"] = v.ok
        for axiom in v.axioms():
            rep.witnesses[axiom] = _labels(obj, v.first(axiom).witness)
        if v.ok:
            rep.verdicts["lattice_ordered"] = obj.is_lattice_ordered
            rz = riesz_properties(obj)
            rep.verdicts["rdp"] = rz.rdp
            rep.verdicts["rip"] = rz.rip
            for k, w in sorted(rz.witnesses.items()):
                rep.witnesses[k] = _labels(obj, w)
            if obj.is_lattice_ordered:
                ch = mv_characterizations(obj)
                rep.verdicts["mv"] = ch.all_true
                rep.verdicts["mv_conditions"] = {k: getattr(ch, k) for k in "abcd"}
                for k, w in sorted(ch.witnesses.items()):
                    rep.witnesses[f"mv_{k}"] = _labels(obj, w)
            else:
                rep.verdicts["mv"] = False
        rep.ok = v.ok
    else:
        p = obj
        rep.verdicts["group"] = p.g.is_group()
        rep.details["group_order"] = len(p.g)
        rep.ok = rep.verdicts["group"]
    return rep


def _rgen_of(obj, ref):
    if isinstance(obj, EffectAlgebra):
        if not is_mv_effect(obj):
            raise NotMvEffect(f"{ref} is not an MV-effect algebra")
        return rgenerate_lattice(obj.lattice, obj)
    if isinstance(obj, Poset):
        try:
            return rgenerate_lattice(lattice_from_poset(obj))
        except (NotALattice, NoBounds) as exc:
            raise InputError(f"{ref}: {exc}") from None
    raise InputError(f"{ref}: rgen needs a lattice or an MV-effect algebra")


def _chain_text(r, rep_chain) -> str:
    return " <= ".join(r.base.poset.label(d) for d in rep_chain.chain) or "(empty)"


def cmd_rgen(args) -> Report:
    obj = load_object(args.file)
    r = _rgen_of(obj, args.file)
    rep = Report(["rgen", args.file], True)
    rep.details["join_irreducibles"] = [r.bool_alg.atom_label(k) for k in range(r.bool_alg.atom_count)]
    rep.details["boolean_size"] = r.bool_alg.size
    rep.details["embedding"] = [
        {"element": r.base.poset.label(d), "set": r.fmt(r.embed[d])} for d in range(r.base.n)
    ]
    if r.algebra is not None:
        rep.details["phi"] = [
            {"set": r.fmt(x), "chain": _chain_text(r, chain_representation(r, x)),
             "phi": r.algebra.label(r.phi(x))}
            for x in r.bool_alg.elements()
        ]
    return rep


def cmd_phi(args) -> Report:
    m = _need(load_object(args.file), EffectAlgebra, args.file)
    r = _rgen_of(m, args.file)
    try:
        x = r.bool_alg.parse(args.element)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    ch = chain_representation(r, x)
    rep = Report(["phi", args.file, "--element", args.element], True)
    rep.details["element"] = r.fmt(x)
    rep.details["chain"] = _chain_text(r, ch)
    rep.details["phi"] = m.label(r.phi(x))
    return rep


def cmd_mvpair(args) -> Report:
    p = _need(load_object(args.file), BGPair, args.file)
    v = mv_pair_verdict(p)
    rep = Report(["mvpair", args.file], v.is_mv_pair)
    rep.verdicts.update(mvp1=v.mvp1, mvp2=v.mvp2, mv_pair=v.is_mv_pair,
                        charmvp1_consistent=v.charmvp1.consistent)
    if v.mvp1_witness:
        rep.witnesses["mvp1"] = _bool_witness(p, v.mvp1_witness)
    if v.mvp2_witness:
        rep.witnesses["mvp2"] = [p.b.fmt(x) for x in v.mvp2_witness]
    rep.details["group_order"] = len(p.g)
    if v.is_mv_pair:
        q = build_quotient_mv(p, v)
        rep.details["quotient_size"] = q.n
        rep.details["quotient_matches"] = _catalog_match(q)
        rep.verdicts["quotient_mv"] = is_mv_effect(q)
        w = meet_identity_witness(p, q)
        rep.verdicts["meet_is_max_lplus"] = w is None
    return rep


def cmd_quotient(args) -> Report:
    p = _need(load_object(args.file), BGPair, args.file)
    v = mv_pair_verdict(p)
    rep = Report(["quotient", args.file], v.is_mv_pair)
    rep.verdicts["mv_pair"] = v.is_mv_pair
    if not v.is_mv_pair:
        rep.witnesses["mvp1"] = _bool_witness(p, v.mvp1_witness)
        return rep
    q = build_quotient_mv(p, v)
    rep.details["classes"] = [[p.b.fmt(x) for x in block] for block in p.orbits.blocks]
    rep.details["quotient_matches"] = _catalog_match(q)
    rep.details["algebra"] = formats.dump_effect_algebra(q)
    return rep


def cmd_represent(args) -> Report:
    m = _need(load_object(args.file), EffectAlgebra, args.file)
    cmd = ["represent", args.file]
    if args.max_atoms != DEFAULT_MAX_ATOMS:
        cmd += ["--max-atoms", str(args.max_atoms)]
    t0 = time.perf_counter()
    res = verify_representation(m, args.max_atoms)
    rep = Report(cmd, res.ok)
    rep.timings["represent"] = time.perf_counter() - t0
    rep.verdicts.update(mv_pair=res.verdict.is_mv_pair, kernel_equals_orbits=res.kernel_equal,
                        isomorphic=bool(res.iso and res.iso.is_isomorphism))
    rep.details["join_irreducibles"] = res.join_irreducible_count
    rep.details["group_order"] = len(res.group)
    if res.quotient is not None and res.iso is not None:
        blocks = BGPair(res.rgen.bool_alg, res.group).orbits.blocks
        rep.details["isomorphism"] = [
            {"class": [res.rgen.fmt(x) for x in blocks[c]], "element": m.label(res.iso.map[c])}
            for c in range(res.quotient.n)
        ]
    if res.notes:
        rep.details["notes"] = res.notes
    if args.dot:
        Path(args.dot).write_text(representation_dot(res))
        rep.details["dot"] = args.dot
    return rep


def cmd_suite(args) -> Report:
    extra = [_need(load_object(f), EffectAlgebra, f) for f in args.extra or []]
    cfg = SuiteConfig(max_n=args.max_n, seed=args.seed, extra_algebras=extra)
    if args.max_n < 6:
        cfg.max_atoms = min(cfg.max_atoms, max(1, args.max_n - 1))
        cfg.max_irreducibles = min(cfg.max_irreducibles, args.max_n)
    results = run_suite(cfg, args.only)
    rep = Report(["suite", "--seed", str(args.seed), "--max-n", str(args.max_n)],
                 all(r.ok for r in results), seed=args.seed)
    for r in results:
        rep.verdicts[r.name] = r.ok
        rep.details[f"{r.name}_checked"] = r.checked
        if not r.ok:
            rep.witnesses[r.name] = r.detail
        rep.timings[r.name] = r.seconds
    return rep


def cmd_catalog(args) -> Report:
    if args.action == "list":
        rep = Report(["catalog", "list"], True)
        rep.details["entries"] = [
            {"name": e.name, "kind": e.kind, "expected": e.expected} for e in catalog.CATALOG.values()
        ]
        return rep
    if args.action == "dump":
        if not args.name:
            raise InputError("catalog dump needs a NAME")
        try:
            entry = catalog.builtin(args.name)
        except catalog.UnknownName:
            raise InputError(f"unknown catalog entry {args.name!r}") from None
        text = formats.dump(entry.instance())
        if args.out:
            Path(args.out).write_text(text)
            rep = Report(["catalog", "dump", args.name, args.out], True)
            rep.details["written"] = args.out
        else:
            rep = Report(["catalog", "dump", args.name], True)
            rep.details["text"] = text
        return rep
    if args.action == "regen":
        rep = Report(["catalog", "regen"], True)
        rep.details["expected"] = {e.name: catalog.recompute_expected(e) for e in catalog.CATALOG.values()}
        return rep
    bad = catalog.check_catalog()
    rep = Report(["catalog", "check"], not bad)
    rep.verdicts["entries_match"] = not bad
    for name, (want, got) in bad.items():
        rep.witnesses[name] = {"expected": want, "recomputed": got}
    return rep


# -- driver ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mvpairs", description="Effect algebras, MV-pairs and representations.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, file=True):
        sp = sub.add_parser(name, help=help_)
        if file:
            sp.add_argument("file", help="input file or built-in catalog name")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--timings", action="store_true", help="include timings in the output")
        sp.set_defaults(func=fn)
        return sp

    add("validate", cmd_validate, "validate a lattice, effect algebra or BG-pair file")
    add("rgen", cmd_rgen, "R-generated Boolean algebra with phi table")
    sp = add("phi", cmd_phi, "evaluate phi on one Boolean element")
    sp.add_argument("--element", required=True, help='element as an atom set, e.g. "{a1,a2}"')
    add("mvpair", cmd_mvpair, "MV-pair verdict for a BG-pair file")
    add("quotient", cmd_quotient, "quotient effect algebra of an MV-pair")
    sp = add("represent", cmd_represent, "rebuild an MV-effect algebra from B(M) and G(M)")
    sp.add_argument("--dot", help="write Hasse diagrams to this DOT file")
    sp.add_argument("--max-atoms", type=int, default=DEFAULT_MAX_ATOMS)
    sp = add("suite", cmd_suite, "run the property suites", file=False)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-n", type=int, default=6)
    sp.add_argument("--extra", action="append", help="extra effect-algebra file to include (repeatable)")
    sp.add_argument("--only", action="append", help="run only this property (repeatable)")
    sp = add("catalog", cmd_catalog, "list, dump or check built-in instances", file=False)
    sp.add_argument("action", choices=["list", "dump", "check", "regen"])
    sp.add_argument("name", nargs="?")
    sp.add_argument("out", nargs="?", help="file to write for 'dump'")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        rep = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NotMvEffect, CapExceeded, NotDistributive) as exc:
        rep = Report([args.command, getattr(args, "file", "")], False)
        rep.verdicts["error"] = type(exc).__name__
        rep.witnesses["reason"] = str(exc)
        w = getattr(exc, "witness", None)
        if w is not None:
            obj = load_object(args.file)
            rep.witnesses["mv_b"] = _labels(obj, w)
    if args.json:
        sys.stdout.write(rep.to_json(timings=args.timings))
    else:
        if not args.timings:
            rep.timings = {}
        sys.stdout.write(rep.to_text())
    return EXIT_OK if rep.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
