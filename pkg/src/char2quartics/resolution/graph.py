"""Incidence graphs of the exceptional configurations and self-intersections."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import networkx as nx

from ..errors import NonIntegralSelfIntersection
from . import ideals as I


@dataclass
class IncidenceGraph:
    nodes: dict                      # label -> {"multiplicity", "self", "kind"}
    edges: set                       # frozensets of two labels
    order: list = dc_field(default_factory=list)   # display order of labels

    def neighbors(self, label):
        return sorted((next(iter(e - {label})) for e in self.edges if label in e),
                      key=self.order.index)

    def to_networkx(self) -> nx.Graph:
        G = nx.Graph()
        # node attributes go through a dict: "self" cannot be a keyword argument
        G.add_nodes_from((lab, {**data, "label": lab}) for lab, data in self.nodes.items())
        G.add_edges_from(tuple(e) for e in self.edges)
        return G

    def fiber_labels(self):
        return [lab for lab in self.order if self.nodes[lab]["kind"] != "horizontal"]

    def to_dot(self, name="fiber"):
        lines = [f"graph {name} {{"]
        for lab in self.order:
            d = self.nodes[lab]
            attrs = []
            if d.get("multiplicity") is not None:
                attrs.append(f"mult={d['multiplicity']}")
            if d.get("self") is not None:
                attrs.append(f"self={d['self']}")
            style = ", style=dashed" if d["kind"] == "horizontal" else ""
            shown = f"{lab} [{', '.join(attrs)}]" if attrs else lab
            lines.append(f'  "{lab}" [label="{shown}"{style}];')
        for a, b in self.sorted_edges():
            style = " [style=dashed]" if "horizontal" in (self.nodes[a]["kind"], self.nodes[b]["kind"]) else ""
            lines.append(f'  "{a}" -- "{b}"{style};')
        lines.append("}")
        return "\n".join(lines)

    def sorted_edges(self):
        pos = {lab: i for i, lab in enumerate(self.order)}
        return sorted((tuple(sorted(e, key=pos.get)) for e in self.edges),
                      key=lambda ab: (pos[ab[0]], pos[ab[1]]))

    def to_dict(self):
        return {"nodes": [{"label": lab, **self.nodes[lab]} for lab in self.order],
                "edges": [list(e) for e in self.sorted_edges()]}

    def text(self):
        lines = []
        for lab in self.order:
            d = self.nodes[lab]
            head = "horizontal" if d["kind"] == "horizontal" else \
                f"mult={d.get('multiplicity')} self={d.get('self')}"
            lines.append(f"{lab}: {head} adjacent={','.join(self.neighbors(lab))}")
        return "\n".join(lines)


def incidence_pairs(tree):
    """Pairs of curve keys sharing a point of the resolved surface.

    A pair is adjacent when, in some chart, the sum of their ideals has a zero
    away from the centers blown up inside that chart.
    """
    adj = set()
    for cid, chart in tree.charts.items():
        present = [c for c in tree.curves if cid in c.reps]
        for a, b in itertools.combinations(present, 2):
            pair = frozenset((a.key, b.key))
            if pair in adj:
                continue
            if I.has_zero_outside(a.reps[cid] + b.reps[cid], chart.centers):
                adj.add(pair)
    return adj


def self_intersections(nodes: dict, edges, fiber_labels):
    """E_i.E_i = -(sum_j m_j adj(i, j)) / m_i over fiber components, exact.

    Adjacent curves are assumed to meet transversally in one point.
    """
    out = {}
    for lab in fiber_labels:
        m = nodes[lab]["multiplicity"]
        s = sum(nodes[o]["multiplicity"] for o in fiber_labels
                if o != lab and frozenset((lab, o)) in edges)
        val = Fraction(-s, m)
        if val.denominator != 1:
            raise NonIntegralSelfIntersection(f"{lab}: -{s}/{m} is not an integer")
        out[lab] = int(val)
    # checksum: the fiber is orthogonal to each of its components
    for lab in fiber_labels:
        tot = nodes[lab]["multiplicity"] * out[lab] + sum(
            nodes[o]["multiplicity"] for o in fiber_labels
            if o != lab and frozenset((lab, o)) in edges)
        if tot != 0:
            raise NonIntegralSelfIntersection(f"orthogonality fails at {lab}")
    return out
