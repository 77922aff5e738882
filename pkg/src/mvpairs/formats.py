"""Line-oriented text formats for lattices, effect algebras and BG-pairs.

Every file starts with a header naming its kind::

    lattice <name>          effect-algebra <name>       bg-pair <name>
    elements <k>            elements <k>                atoms <n>
    label <i> <text>        zero <i> / one <i>          generator <i0 ... i(n-1)>
    leq <i> <j>             sum <i> <j> <k>
                            label <i> <text>

``#`` starts a comment. Lattice ``leq`` lines are closed reflexively and
transitively; effect-algebra ``sum`` lines are symmetric and absent sums are
undefined.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .bgpairs import BGPair, Group, identity, subgroup_closure
from .effect import EffectAlgebra
from .order import Poset
from .rgen import BooleanAlg


class ParseError(Exception):
    def __init__(self, line: int, msg: str):
        self.line = line
        super().__init__(f"line {line}: {msg}")


@dataclass
class Document:
    kind: str
    name: str
    obj: object


def _ints(lineno, toks, count=None):
    try:
        vals = [int(t) for t in toks]
    except ValueError:
        raise ParseError(lineno, f"expected integers, got {' '.join(toks)!r}") from None
    if count is not None and len(vals) != count:
        raise ParseError(lineno, f"expected {count} integers, got {len(vals)}")
    return vals


def _lines(text):
    for i, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield i, line


def parse(text: str) -> Document:
    lines = list(_lines(text))
    if not lines:
        raise ParseError(1, "empty input")
    lineno, head = lines[0]
    kind, _, name = head.partition(" ")
    name = name.strip()
    body = lines[1:]
    if kind == "lattice":
        return Document(kind, name, _parse_lattice(body, name, lineno))
    if kind == "effect-algebra":
        return Document(kind, name, _parse_effect(body, name, lineno))
    if kind == "bg-pair":
        return Document(kind, name, _parse_bg(body, name, lineno))
    raise ParseError(lineno, f"unknown header {kind!r}")


def load(path) -> Document:
    return parse(Path(path).read_text())


def _need_size(size, lineno):
    if size is None:
        raise ParseError(lineno, "size declaration must come first")
    return size


def _check_index(lineno, size, *idx):
    for i in idx:
        if not 0 <= i < size:
            raise ParseError(lineno, f"index {i} out of range 0..{size - 1}")


def _split(line):
    key, _, rest = line.partition(" ")
    return key, rest.strip()


def _parse_lattice(body, name, head_line) -> Poset:
    n = None
    labels = {}
    pairs = []
    for lineno, line in body:
        key, rest = _split(line)
        if key == "elements":
            (n,) = _ints(lineno, rest.split(), 1)
            if n < 1:
                raise ParseError(lineno, "need at least one element")
        elif key == "label":
            i, _, text = rest.partition(" ")
            (i,) = _ints(lineno, [i], 1)
            _check_index(lineno, _need_size(n, lineno), i)
            labels[i] = text.strip()
        elif key == "leq":
            i, j = _ints(lineno, rest.split(), 2)
            _check_index(lineno, _need_size(n, lineno), i, j)
            pairs.append((i, j))
        else:
            raise ParseError(lineno, f"unknown directive {key!r}")
    if n is None:
        raise ParseError(head_line, "missing 'elements' line")
    lab = [labels.get(i, str(i)) for i in range(n)] if labels else None
    return Poset.from_relation(n, pairs, lab)


def _parse_effect(body, name, head_line) -> EffectAlgebra:
    n = zero = one = None
    labels = {}
    table = None
    for lineno, line in body:
        key, rest = _split(line)
        if key == "elements":
            (n,) = _ints(lineno, rest.split(), 1)
            if n < 1:
                raise ParseError(lineno, "need at least one element")
            table = [[None] * n for _ in range(n)]
        elif key in ("zero", "one"):
            (i,) = _ints(lineno, rest.split(), 1)
            _check_index(lineno, _need_size(n, lineno), i)
            if key == "zero":
                zero = i
            else:
                one = i
        elif key == "label":
            i, _, text = rest.partition(" ")
            (i,) = _ints(lineno, [i], 1)
            _check_index(lineno, _need_size(n, lineno), i)
            labels[i] = text.strip()
        elif key == "sum":
            i, j, k = _ints(lineno, rest.split(), 3)
            _check_index(lineno, _need_size(n, lineno), i, j, k)
            for a, b in ((i, j), (j, i)):
                if table[a][b] is not None and table[a][b] != k:
                    raise ParseError(lineno, f"contradictory sum {i} + {j}: {table[a][b]} vs {k}")
                table[a][b] = k
        else:
            raise ParseError(lineno, f"unknown directive {key!r}")
    if n is None:
        raise ParseError(head_line, "missing 'elements' line")
    if zero is None or one is None:
        raise ParseError(head_line, "missing 'zero' or 'one' line")
    lab = [labels.get(i, str(i)) for i in range(n)] if labels else None
    return EffectAlgebra.from_table(table, zero, one, lab, name)


def _parse_bg(body, name, head_line) -> BGPair:
    n = None
    gens = []
    for lineno, line in body:
        key, rest = _split(line)
        if key == "atoms":
            (n,) = _ints(lineno, rest.split(), 1)
            if n < 0:
                raise ParseError(lineno, "negative atom count")
        elif key == "generator":
            g = _ints(lineno, rest.split(), _need_size(n, lineno))
            if sorted(g) != list(range(n)):
                raise ParseError(lineno, f"generator {g} is not a permutation")
            gens.append(tuple(g))
        else:
            raise ParseError(lineno, f"unknown directive {key!r}")
    if n is None:
        raise ParseError(head_line, "missing 'atoms' line")
    return BGPair(BooleanAlg(n), subgroup_closure(gens, n), name)


def dump_lattice(p: Poset, name="") -> str:
    out = [f"lattice {name or 'unnamed'}", f"elements {p.n}"]
    if p.labels:
        out += [f"label {i} {lab}" for i, lab in enumerate(p.labels)]
    out += [f"leq {i} {j}" for i, j in p.covers]
    return "\n".join(out) + "\n"


def dump_effect_algebra(e: EffectAlgebra) -> str:
    out = [f"effect-algebra {e.name or 'unnamed'}", f"elements {e.n}", f"zero {e.zero}", f"one {e.one}"]
    if e.labels:
        out += [f"label {i} {lab}" for i, lab in enumerate(e.labels)]
    out += [f"sum {a} {b} {s}" for a, b, s in e.defined_pairs if a <= b]
    return "\n".join(out) + "\n"


def generators(g: Group) -> list[tuple]:
    """A small generating set, picked greedily in perm order."""
    gens: list[tuple] = []
    have = {identity(g.n)}
    for p in g.perms:
        if p not in have:
            gens.append(p)
            have = set(subgroup_closure(gens, g.n).perms)
    return gens


def dump_bg_pair(p: BGPair) -> str:
    out = [f"bg-pair {p.name or 'unnamed'}", f"atoms {p.b.atom_count}"]
    out += ["generator " + " ".join(map(str, gen)) for gen in generators(p.g)]
    return "\n".join(out) + "\n"


def dump(obj, name="") -> str:
    if isinstance(obj, EffectAlgebra):
        return dump_effect_algebra(obj)
    if isinstance(obj, BGPair):
        return dump_bg_pair(obj)
    if isinstance(obj, Poset):
        return dump_lattice(obj, name)
    raise TypeError(f"cannot serialize {type(obj).__name__}")
