"""Graphviz DOT output for trees, matchings and triples."""

from __future__ import annotations

from .cloning import wreath_rho
from .forest import LEAF, Forest, Tree
from .thompson import Triple


def _tree_nodes(t: Tree, prefix: str, lines: list[str], leaves: list[str]) -> str:
    name = prefix or "r"
    if t == LEAF:
        leaves.append(name)
        lines.append(f'  {name} [shape=point];')
        return name
    lines.append(f'  {name} [shape=point, width=0.08];')
    for i, c in enumerate(t):
        child = _tree_nodes(c, f"{name}_{i}", lines, leaves)
        lines.append(f"  {name} -> {child} [arrowhead=none];")
    return name


def forest_dot(f: Forest, name: str = "forest") -> str:
    lines = [f"digraph {name} {{", "  rankdir=TB;"]
    leaves: list[str] = []
    for idx, t in enumerate(f.trees):
        _tree_nodes(t, f"t{idx}", lines, leaves)
    for k, leaf in enumerate(leaves, 1):
        lines.append(f'  {leaf} [shape=plaintext, label="{k}"];')
    lines.append("  { rank=same; " + " ".join(leaves) + " }")
    lines.append("}")
    return "\n".join(lines) + "\n"


def matching_dot(matching, m: int, name: str = "matching") -> str:
    """The line graph on m vertices with the matched paths drawn bold."""
    bold = {(p[i], p[i + 1]) for p in matching for i in range(len(p) - 1)}
    lines = [f"graph {name} {{", "  rankdir=LR;", "  node [shape=circle];"]
    for v in range(1, m + 1):
        lines.append(f"  v{v} [label=\"{v}\"];")
    for v in range(1, m):
        style = ' [penwidth=4]' if (v, v + 1) in bold else ' [style=dashed]'
        lines.append(f"  v{v} -- v{v + 1}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def triple_dot(t: Triple, name: str = "triple") -> str:
    """Left forest on top, right forest at the bottom, strands labeled by entries.

    Each strand joins right leaf k to left leaf rho(k); the crossings of the
    middle braid are listed in the box label; trivial entries are unlabeled.
    """
    lines = [f"digraph {name} {{", "  rankdir=TB;", "  node [fontsize=10];"]
    top_leaves: list[str] = []
    bottom_leaves: list[str] = []
    for idx, tr in enumerate(t.left.trees):
        _tree_nodes(tr, f"L{idx}", lines, top_leaves)
    for idx, tr in enumerate(t.right.trees):
        _tree_nodes(tr, f"R{idx}", lines, bottom_leaves)
    m = t.middle
    top_label = m.top.word_str() if m.braided else str(m.top)
    lines.append(f'  braid [shape=box, label="{top_label}"];')
    rho = wreath_rho(m)
    for k, leaf in enumerate(bottom_leaves, 1):
        f = m.entries[k - 1]
        entry = "" if f.is_empty() else str(f)
        lines.append(f'  {top_leaves[rho(k) - 1]} -> {leaf} [dir=back, label="{entry}"];')
    lines.append("  { rank=same; " + " ".join(top_leaves) + " }")
    lines.append("  { rank=same; " + " ".join(bottom_leaves) + " }")
    lines.append("}")
    return "\n".join(lines) + "\n"
