"""Graphviz DOT export of Hasse diagrams.

Nodes are emitted in ``(rank, index)`` order and edges in sorted order so
that output diffs cleanly between runs.
"""
from __future__ import annotations

from .order import Poset

PALETTE = [
    "#a6cee3", "#b2df8a", "#fb9a99", "#fdbf6f", "#cab2d6", "#ffff99",
    "#1f78b4", "#33a02c", "#e31a1c", "#ff7f00", "#6a3d9a", "#b15928",
]


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _body(p: Poset, labels, prefix: str, colors: dict[int, int] | None, indent: str) -> list[str]:
    out = []
    for i in sorted(range(p.n), key=lambda i: (p.rank[i], i)):
        attrs = [f"label={_q(labels[i] if labels else p.label(i))}"]
        if colors is not None and i in colors:
            attrs.append(f'style=filled fillcolor="{PALETTE[colors[i] % len(PALETTE)]}"')
        out.append(f"{indent}{prefix}{i} [{' '.join(attrs)}];")
    for i, j in sorted(p.covers):
        out.append(f"{indent}{prefix}{i} -> {prefix}{j};")
    return out


def hasse_dot(p: Poset, name="G", labels=None, colors: dict[int, int] | None = None) -> str:
    """Single Hasse diagram; ``colors`` maps element -> palette slot."""
    lines = [f"digraph {_q(name)} {{", "  rankdir=BT;", "  node [shape=box fontsize=10];"]
    lines += _body(p, labels, "n", colors, "  ")
    lines.append("}")
    return "\n".join(lines) + "\n"


def clustered_dot(name: str, parts: list[tuple[str, Poset, list[str] | None, dict[int, int] | None]]) -> str:
    """Several Hasse diagrams side by side, one cluster each."""
    lines = [f"digraph {_q(name)} {{", "  rankdir=BT;", "  node [shape=box fontsize=10];"]
    for k, (title, p, labels, colors) in enumerate(parts):
        lines.append(f"  subgraph cluster_{k} {{")
        lines.append(f"    label={_q(title)};")
        lines += _body(p, labels, f"c{k}_", colors, "    ")
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"


def boolean_poset(atom_count: int) -> Poset:
    size = 1 << atom_count
    rel = tuple(tuple(x & ~y == 0 for y in range(size)) for x in range(size))
    return Poset(size, rel)


def representation_dot(report) -> str:
    """M, B(M) and the quotient, with B(M) colored by phi-fiber and the
    quotient classes colored like the fiber they collapse."""
    m, r, q = report.algebra, report.rgen, report.quotient
    b_labels = [r.fmt(x) for x in r.bool_alg.elements()]
    fiber = {x: r.phi(x) for x in r.bool_alg.elements()}
    parts = [
        (f"M = {m.name or 'M'}", m.poset, [m.label(i) for i in range(m.n)], {i: i for i in range(m.n)}),
        ("B(M), colored by phi", boolean_poset(r.bool_alg.atom_count), b_labels, fiber),
    ]
    if q is not None and report.iso is not None:
        parts.append(("B(M)/~G(M)", q.poset, [q.label(i) for i in range(q.n)],
                      {c: report.iso.map[c] for c in range(q.n)}))
    return clustered_dot(f"represent_{m.name or 'M'}", parts)
