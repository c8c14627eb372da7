"""Graphviz DOT text for Hasse diagrams with tolerance blocks marked.

Cover edges are drawn bottom-up with one rank per height level.  Graphviz
does not allow a node to sit in two clusters, and blocks of a tolerance
overlap, so each block is drawn as a wide band behind its cover edge instead:
T-blocks solid grey, S-blocks dotted black.
"""
from __future__ import annotations

from typing import Optional

from .lattice import Lattice
from .tolerance import BinaryRelation, blocks

T_STYLE = 'color="grey60", style="solid", penwidth=8'
S_STYLE = 'color="black", style="dotted", penwidth=3'


def to_dot(L: Lattice, T: Optional[BinaryRelation] = None,
           S: Optional[BinaryRelation] = None, name: str = "lattice") -> str:
    lines = [f"graph {name} {{", "  rankdir=BT;", '  node [shape=circle, width=0.3, fixedsize=true];']
    levels: dict[int, list[int]] = {}
    for x in range(L.n):
        levels.setdefault(L.rank[x], []).append(x)
    for r in sorted(levels):
        members = " ".join(f"{x};" for x in levels[r])
        lines.append(f"  {{ rank=same; {members} }}")
    for x, y in L.cover_pairs:
        lines.append(f"  {x} -- {y};")
    for label, rel, style in (("T", T, T_STYLE), ("S", S, S_STYLE)):
        if rel is None:
            continue
        for block in blocks(L, rel):
            if len(block) != 2:
                continue
            x, y = block.elements
            lines.append(f'  {x} -- {y} [{style}, constraint=false, tooltip="{label}-block {block}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
