"""Resolution of the pencil surfaces S and S' at their singular points.

S:  T0 (Y^4 + X Z^3) + T1 X^4 = 0, singular at ((0:0:1), (0:1)).  In the chart
Z = 1, T1 = 1 with t = T0/T1 the local equation is t (y^4 + x) + x^4.
S': T0 (U V^2 + W^3) + T1 U^3 = 0, singular at ((0:1:0), (0:1)).  In the
chart V = 1, T1 = 1 the local equation is t (u + w^3) + u^3.
The fiber coordinate is t in both cases.
"""
from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from ..errors import Unsupported
from . import ideals as I
from .engine import DEFAULT_MAX_ROUNDS, BlowupTree, ExcCurve, run_blowups, vanishing_order
from .graph import IncidenceGraph, incidence_pairs, self_intersections as _self_int


@dataclass(frozen=True)
class PencilSetup:
    family: str
    names: tuple
    prefix: str          # letter of the exceptional labels
    fiber_label: str     # strict transform of the bad fibre
    horizontal_label: str

    def root_poly(self):
        a, b, t = (I.var(i) for i in range(3))
        if self.family == "S":
            return t * (b ** 4 + a) + a ** 4
        return t * (a + b ** 3) + a ** 3

    def start_curves(self):
        a, b, t = (I.var(i) for i in range(3))
        # the bad fibre {t = 0} is supported on {a = 0}; the horizontal curve is {a = b = 0}
        return [ExcCurve(self.fiber_label, 0, "fiber", ("root", 0, t), {"root": [a, t]}),
                ExcCurve(self.horizontal_label, 0, "horizontal", ("root", 0, b), {"root": [a, b]})]


SETUPS = {
    "S": PencilSetup("S", ("x", "y", "t"), "E", "E", "H"),
    "Sprime": PencilSetup("Sprime", ("u", "w", "t"), "A", "A", "H'"),
}


def _setup(family):
    key = family.replace("'", "prime").replace("S′", "Sprime")
    if key not in SETUPS:
        raise Unsupported(f"no resolution recipe for {family!r}; use S or Sprime")
    return SETUPS[key]


@dataclass
class Resolution:
    family: str
    tree: BlowupTree
    graph: IncidenceGraph

    @property
    def rounds(self):
        return self.tree.rounds

    def multiplicities(self):
        return {lab: self.graph.nodes[lab]["multiplicity"] for lab in self.graph.fiber_labels()}

    def exceptional_labels(self):
        return [lab for lab in self.graph.order if self.graph.nodes[lab]["kind"] == "exceptional"]

    def trace(self):
        return list(self.tree.trace)

    def text(self):
        head = (f"resolution of {self.family}: {self.rounds} rounds, "
                f"{len(self.exceptional_labels())} exceptional curves")
        return head + "\n" + self.graph.text()

    def to_dict(self):
        return {"family": self.family, "rounds": self.rounds,
                "exceptional_curves": len(self.exceptional_labels()),
                "trace": self.trace(), "graph": self.graph.to_dict(),
                "multiplicities": self.multiplicities()}


def exceptional_multiplicities(tree: BlowupTree) -> dict:
    """Vanishing order of the fiber coordinate along each curve (keyed by curve key)."""
    return {c.key: vanishing_order(tree, c) for c in tree.curves if c.kind != "horizontal"}


def _assign_labels(tree: BlowupTree, setup: PencilSetup, pairs):
    """Subscript 2 goes to the curve of a round nearer the horizontal curve.

    A round with a single curve gets no subscript.  Ties fall back to chart
    order (subscript 1 first).
    """
    G = nx.Graph()
    G.add_nodes_from(c.key for c in tree.curves)
    G.add_edges_from(tuple(p) for p in pairs)
    hkey = next(c.key for c in tree.curves if c.kind == "horizontal")
    dist = nx.single_source_shortest_path_length(G, hkey)
    by_round = {}
    for c in tree.exceptional():
        by_round.setdefault(c.birth, []).append(c)
    order = [next(c for c in tree.curves if c.kind == "fiber")]
    for c in tree.curves:
        if c.kind != "exceptional":
            c.label = c.key
    for rnd in sorted(by_round):
        group = by_round[rnd]
        p = setup.prefix
        if len(group) == 1:
            group[0].label = f"{p}^({rnd})"
        elif len(group) == 2:
            far, near = sorted(group, key=lambda c: (-dist.get(c.key, 10 ** 6), c.key))
            if dist.get(far.key) == dist.get(near.key):
                far, near = group
            far.label, near.label = f"{p}1^({rnd})", f"{p}2^({rnd})"
        else:
            raise Unsupported(f"round {rnd} produced {len(group)} curves")
        order.extend(sorted(group, key=lambda c: c.label))
    order.append(next(c for c in tree.curves if c.kind == "horizontal"))
    return order


def incidence(tree: BlowupTree, setup: PencilSetup | None = None, mults=None) -> IncidenceGraph:
    """Labeled incidence graph with multiplicities (self-intersections not yet filled)."""
    setup = setup or _setup(tree.family)
    pairs = incidence_pairs(tree)
    order = _assign_labels(tree, setup, pairs)
    key2lab = {c.key: c.label for c in tree.curves}
    mults = mults if mults is not None else exceptional_multiplicities(tree)
    nodes = {c.label: {"kind": c.kind, "multiplicity": mults.get(c.key), "self": None,
                       "birth": c.birth} for c in order}
    edges = {frozenset(key2lab[k] for k in p) for p in pairs}
    return IncidenceGraph(nodes, edges, [c.label for c in order])


def self_intersections(graph: IncidenceGraph) -> IncidenceGraph:
    vals = _self_int(graph.nodes, graph.edges, graph.fiber_labels())
    for lab, v in vals.items():
        graph.nodes[lab]["self"] = v
    return graph


def resolve(family: str = "S", max_rounds: int = DEFAULT_MAX_ROUNDS) -> Resolution:
    setup = _setup(family)
    tree = run_blowups(setup.family, setup.root_poly(), setup.names, 2, setup.start_curves(),
                       max_rounds)
    graph = self_intersections(incidence(tree, setup))
    return Resolution(setup.family, tree, graph)

