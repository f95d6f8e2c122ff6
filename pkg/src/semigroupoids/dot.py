"""Graphviz DOT export.

Two distinct visual artifacts, never conflated: the arrow graph between
objects, and Hasse diagrams of partial orders.
"""
from __future__ import annotations

from .core import FiniteSemigroupoid
from .inverse import InverseSemigroupoid
from .globalization import GlobalizationResult
from .posets import FinitePoset


def _quote(name: str) -> str:
    return '"%s"' % name.replace('"', '\\"')


def semigroupoid_to_dot(sg: FiniteSemigroupoid) -> str:
    lines = ["digraph semigroupoid {"]
    for u in range(sg.n_objects):
        lines.append(f"  {_quote(sg.object_names[u])} [shape=circle];")
    for s in sg.arrows():
        lines.append(
            "  %s -> %s [label=%s];"
            % (
                _quote(sg.object_names[sg.dom[s]]),
                _quote(sg.object_names[sg.cod[s]]),
                _quote(sg.arrow_names[s]),
            )
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def poset_to_dot(poset: FinitePoset, highlight: set[int] | None = None) -> str:
    """Hasse diagram, lower elements below (edges point upward)."""
    highlight = highlight or set()
    lines = ["digraph hasse {", "  rankdir=BT;"]
    for x in poset.elements():
        style = ' style=filled fillcolor="lightblue"' if x in highlight else ""
        lines.append(f"  {_quote(poset.names[x])} [shape=box{style}];")
    for x, y in poset.hasse_edges():
        lines.append(f"  {_quote(poset.names[x])} -> {_quote(poset.names[y])};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def inverse_semigroupoid_to_dot(inv_sg: InverseSemigroupoid) -> str:
    """Arrow graph and the Hasse diagram of the natural order, side by
    side as two clusters."""
    sg = inv_sg.base
    lines = ["digraph inverse_semigroupoid {"]
    lines.append("  subgraph cluster_arrows {")
    lines.append('    label="arrows";')
    for u in range(sg.n_objects):
        lines.append(f"    {_quote('obj:' + sg.object_names[u])} [shape=circle];")
    for s in sg.arrows():
        lines.append(
            "    %s -> %s [label=%s];"
            % (
                _quote("obj:" + sg.object_names[sg.dom[s]]),
                _quote("obj:" + sg.object_names[sg.cod[s]]),
                _quote(sg.arrow_names[s]),
            )
        )
    lines.append("  }")
    lines.append("  subgraph cluster_order {")
    lines.append('    label="natural partial order";')
    lines.append("    rankdir=BT;")
    order = inv_sg.order
    for s in order.elements():
        lines.append(f"    {_quote(order.names[s])} [shape=box];")
    for x, y in order.hasse_edges():
        lines.append(f"    {_quote(order.names[x])} -> {_quote(order.names[y])};")
    lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"


def globalization_to_dot(r: GlobalizationResult) -> str:
    """The order on the enveloping carrier with the embedded copy of the
    original carrier highlighted."""
    if r.order is None:
        raise ValueError("globalization of an unordered action has no order")
    return poset_to_dot(r.order, highlight=set(r.embed))
