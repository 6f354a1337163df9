"""Text and Graphviz DOT renderings of (double) Satake diagrams."""

from __future__ import annotations

from typing import List

from .double import DoubleSatakeDiagram
from .rootsys import build_root_system
from .sigma import SatakeDiagram


def dynkin_edges(ct) -> List[tuple]:
    """(i, j, bond multiplicity, index of the shorter root or None), i < j."""
    a = build_root_system(ct).cartan
    out = []
    for i in range(len(a)):
        for j in range(i + 1, len(a)):
            if a[i][j]:
                mult = a[i][j] * a[j][i]
                short = None
                if mult > 1:
                    short = j if abs(a[i][j]) > abs(a[j][i]) else i
                out.append((i, j, mult, short))
    return out


def _dot_body(sd: SatakeDiagram, prefix: str, indent: str) -> List[str]:
    lines = []
    black = set(sd.black)
    for i in range(sd.rank):
        style = "style=filled, fillcolor=black, fontcolor=white" if i in black else "style=solid"
        lines.append(f'{indent}{prefix}{i} [label="{i + 1}", shape=circle, {style}];')
    for i, j, mult, short in dynkin_edges(sd.ctype):
        attrs = [] if mult == 1 else [f'label="{mult}"', "penwidth=2"]
        if short is not None:
            attrs.append(f'arrowhead=normal, dir={"forward" if short == j else "back"}')
        extra = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"{indent}{prefix}{i} -- {prefix}{j}{extra};")
    for i, j in sd.arrows:
        lines.append(f'{indent}{prefix}{i} -- {prefix}{j} [style=dashed, label="p", constraint=false];')
    return lines


def satake_to_dot(sd: SatakeDiagram, name: str = "satake") -> str:
    lines = [f"graph {name} {{", "  rankdir=LR;", f'  label="{sd.ctype}";']
    lines += _dot_body(sd, "a", "  ")
    lines.append("}")
    return "\n".join(lines) + "\n"


def double_to_dot(dd: DoubleSatakeDiagram, name: str = "double_satake") -> str:
    """Two copies of the Dynkin diagram, S₁ above S₂, nodes aligned by label."""
    lines = [f"graph {name} {{", "  rankdir=TB;", "  newrank=true;"]
    for k, sd in ((1, dd.s1), (2, dd.s2)):
        lines.append(f"  subgraph cluster_s{k} {{")
        lines.append(f'    label="S{k}";')
        lines += _dot_body(sd, f"s{k}_", "    ")
        lines.append("  }")
    for i in range(dd.ctype.rank):
        lines.append(f"  s1_{i} -- s2_{i} [style=invis];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def satake_to_text(sd: SatakeDiagram) -> str:
    """One line: node marks (● black, ○ white), Dynkin bonds, and arrows."""
    black = set(sd.black)
    nodes = " ".join(f"{'●' if i in black else '○'}{i + 1}" for i in range(sd.rank))
    bonds = " ".join(f"{i + 1}{'-=≡'[m - 1]}{j + 1}" for i, j, m, _ in dynkin_edges(sd.ctype))
    arrows = " ".join(f"{i + 1}↔{j + 1}" for i, j in sd.arrows) or "none"
    return f"{sd.ctype}: {nodes} | bonds {bonds or 'none'} | arrows {arrows}"


def double_to_text(dd: DoubleSatakeDiagram) -> str:
    return f"S1 {satake_to_text(dd.s1)}\nS2 {satake_to_text(dd.s2)}"
