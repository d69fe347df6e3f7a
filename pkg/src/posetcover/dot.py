"""Deterministic DOT export of posets and poset morphisms.

Three graph kinds: the hasse diagram (directed, cover pairs), the covering
graph (undirected, same pairs), and the comparability graph (undirected,
all comparable pairs).  Morphisms render as two clusters joined by dashed
mapping edges.  Nodes and edges are emitted in sorted order so identical
inputs give identical text.
"""

from __future__ import annotations

from .morphisms import PosetMorphism
from .posets import Poset

KINDS = ("comparability", "covering", "hasse")


def _quote(name: str) -> str:
    return '"' + name.replace('"', '\\"') + '"'


def _edge_pairs(p: Poset, kind: str):
    if kind in ("hasse", "covering"):
        return sorted(p.covers)
    if kind == "comparability":
        pairs = []
        order = sorted(p.elements)
        for i, a in enumerate(order):
            for b in order[i + 1:]:
                if p.comparable(a, b):
                    pairs.append(tuple(sorted((a, b))))
        return sorted(pairs)
    raise ValueError(f"unknown graph kind {kind!r}; pick one of {KINDS}")


def export_dot(obj, kind: str = "hasse") -> str:
    if isinstance(obj, Poset):
        return _poset_dot(obj, kind)
    if isinstance(obj, PosetMorphism):
        return _morphism_dot(obj, kind)
    raise TypeError(f"cannot export {type(obj).__name__} as DOT")


def _poset_dot(p: Poset, kind: str) -> str:
    directed = kind == "hasse"
    arrow = "->" if directed else "--"
    lines = [("digraph" if directed else "graph") + " poset {"]
    if directed:
        lines.append("  rankdir=BT;")
    for e in sorted(p.elements):
        lines.append(f"  {_quote(e)};")
    for a, b in _edge_pairs(p, kind):
        lines.append(f"  {_quote(a)} {arrow} {_quote(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _morphism_dot(phi: PosetMorphism, kind: str) -> str:
    directed = kind == "hasse"
    arrow = "->" if directed else "--"
    lines = ["digraph morphism {" if directed else "graph morphism {"]
    if directed:
        lines.append("  rankdir=BT;")

    def cluster(tag, poset):
        lines.append(f"  subgraph cluster_{tag} {{")
        lines.append(f'    label="{tag}";')
        for e in sorted(poset.elements):
            lines.append(f"    {_quote(tag + ':' + e)} [label={_quote(e)}];")
        for a, b in _edge_pairs(poset, kind):
            lines.append(f"    {_quote(tag + ':' + a)} {arrow} {_quote(tag + ':' + b)};")
        lines.append("  }")

    cluster("source", phi.source)
    cluster("target", phi.target)
    for x in sorted(phi.source.elements):
        lines.append(
            f"  {_quote('source:' + x)} {arrow} {_quote('target:' + phi.mapping[x])} [style=dashed];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
