import networkx as nx
import pytest

from char2quartics.errors import CenterOffSurface, NonIntegralSelfIntersection, StepLimitExceeded, Unsupported
from char2quartics.resolution import ChartSurface, IncidenceGraph, blowup_step, cover_table, resolve
from char2quartics.resolution import ideals as I
from char2quartics.resolution.engine import singular_points
from char2quartics.resolution.graph import self_intersections as raw_self_intersections

# expected dual graphs: two chains meeting in E^(8), E hanging off E1^(4)
S_CHAIN = ["H", "E2^(1)", "E2^(2)", "E2^(3)", "E2^(4)", "E2^(5)", "E2^(6)", "E2^(7)", "E^(8)",
           "E1^(7)", "E1^(6)", "E1^(5)", "E1^(4)", "E1^(3)", "E1^(2)", "E1^(1)"]
S_EDGES = set(zip(S_CHAIN, S_CHAIN[1:])) | {("E", "E1^(4)")}
S_MULTS = dict(zip(
    ["E", "E1^(1)", "E2^(1)", "E1^(2)", "E2^(2)", "E1^(3)", "E2^(3)", "E1^(4)", "E2^(4)",
     "E1^(5)", "E2^(5)", "E1^(6)", "E2^(6)", "E1^(7)", "E2^(7)", "E^(8)"],
    [4, 3, 1, 6, 2, 9, 3, 12, 4, 11, 5, 10, 6, 9, 7, 8]))

SP_CHAIN = ["A1^(1)", "A1^(2)", "A1^(3)", "A1^(4)", "A2^(4)", "A2^(3)", "A2^(2)", "A2^(1)", "H'"]
SP_EDGES = set(zip(SP_CHAIN, SP_CHAIN[1:])) | {("A", "A1^(3)")}
SP_MULTS = dict(zip(["A", "A1^(1)", "A1^(2)", "A1^(3)", "A1^(4)",
                     "A2^(4)", "A2^(3)", "A2^(2)", "A2^(1)"], [3, 2, 4, 6, 5, 4, 3, 2, 1]))


def labeled_graph(edges):
    G = nx.Graph()
    G.add_edges_from(edges)
    nx.set_node_attributes(G, {n: n for n in G}, "label")
    return G


def same_labeled_graph(graph: IncidenceGraph, edges):
    return nx.is_isomorphic(graph.to_networkx(), labeled_graph(edges),
                            node_match=lambda a, b: a["label"] == b["label"]) and \
        {frozenset(e) for e in edges} == set(graph.edges)


# -- single blow-ups ------------------------------------------------------------------

def test_smooth_point_blowup():
    x, y, z = (I.var(i) for i in range(3))
    root = ChartSurface("root", z + x * y, (x, y, z))
    res = blowup_step(root, (0, 0, 0))
    assert res.exponent == 1
    assert len(res.new_curves) == 1
    assert all(singular_points(c) == [] for c in res.children)


def test_center_off_surface():
    x, y, z = (I.var(i) for i in range(3))
    with pytest.raises(CenterOffSurface):
        blowup_step(ChartSurface("root", z + x * y, (x, y, z)), (0, 0, 1))


def test_first_blowup_of_pencil_stays_singular(res_S):
    root = res_S.tree.charts["root"]
    res = blowup_step(ChartSurface("root", root.poly, root.to_root), (0, 0, 0))
    assert res.exponent == 2
    assert sum(len(singular_points(c)) for c in res.children) >= 1


def test_division_exponent_is_center_multiplicity(res_S):
    for ch in res_S.tree.charts.values():
        if ch.exponent is not None:
            parent = res_S.tree.charts[ch.parent]
            g = I.compose(parent.poly, [I.var(j) + I.const(c) for j, c in enumerate(ch.center)])
            assert ch.exponent == I.low_degree(g)


# -- S ---------------------------------------------------------------------------------

def test_s_rounds_and_curves(res_S):
    assert res_S.rounds == 8
    assert len(res_S.exceptional_labels()) == 15


def test_s_multiplicities(res_S):
    assert res_S.multiplicities() == S_MULTS


def test_s_graph(res_S):
    assert same_labeled_graph(res_S.graph, S_EDGES)
    assert res_S.graph.neighbors("H") == ["E2^(1)"]


def test_s_self_intersections(res_S):
    selfs = {lab: res_S.graph.nodes[lab]["self"] for lab in res_S.graph.fiber_labels()}
    assert selfs.pop("E") == -3
    assert set(selfs.values()) == {-2}


def test_s_graph_degrees(res_S):
    assert max(d for _, d in res_S.graph.to_networkx().degree()) <= 3


def test_final_charts_are_smooth(res_S, res_Sprime):
    for res in (res_S, res_Sprime):
        assert all(singular_points(c) == [] for c in res.tree.leaves())


def test_s_trace(res_S):
    trace = res_S.trace()
    assert [t["round"] for t in trace] == list(range(1, 9))
    assert all(t["exponent"] == 2 for t in trace)


# -- S' -----------------------------------------------------------------------------

def test_sprime_multiplicities(res_Sprime):
    assert res_Sprime.rounds == 4
    assert res_Sprime.multiplicities() == SP_MULTS


def test_sprime_graph(res_Sprime):
    assert same_labeled_graph(res_Sprime.graph, SP_EDGES)
    selfs = {res_Sprime.graph.nodes[lab]["self"] for lab in res_Sprime.graph.fiber_labels()}
    assert selfs == {-2}


def test_orthogonality(res_S, res_Sprime):
    for res in (res_S, res_Sprime):
        g = res.graph
        for lab in g.fiber_labels():
            total = g.nodes[lab]["multiplicity"] * g.nodes[lab]["self"] + sum(
                g.nodes[o]["multiplicity"] for o in g.neighbors(lab) if o in g.fiber_labels())
            assert total == 0


# -- errors --------------------------------------------------------------------------

def test_step_limit():
    with pytest.raises(StepLimitExceeded):
        resolve("S", max_rounds=3)


def test_unknown_family():
    with pytest.raises(Unsupported):
        resolve("Z")


def test_non_integral_self_intersection():
    nodes = {"a": {"multiplicity": 2}, "b": {"multiplicity": 3}}
    with pytest.raises(NonIntegralSelfIntersection):
        raw_self_intersections(nodes, {frozenset(("a", "b"))}, ["a", "b"])


# -- output ----------------------------------------------------------------------------

def test_dot_annotations(res_S):
    dot = res_S.graph.to_dot()
    assert '"E" [label="E [mult=4, self=-3]"];' in dot
    assert '"E2^(1)" -- "H" [style=dashed];' in dot


# -- the inseparable cover -------------------------------------------------------------

COVER = {"E": "A1^(2)", "E1^(2)": "A", "E1^(4)": "A1^(3)", "E1^(6)": "A1^(4)",
         "E^(8)": "A2^(4)", "E2^(6)": "A2^(3)", "E2^(4)": "A2^(2)", "E2^(2)": "A2^(1)",
         "H": "H'", "L": "A1^(1)"}


@pytest.fixture(scope="module")
def table(res_S, res_Sprime):
    return cover_table(res_S, res_Sprime)


def test_cover_mapping(table):
    mapped = {k: v for k, v in table.mapping().items() if v is not None}
    assert mapped == COVER


def test_odd_round_curves_are_contracted(table):
    for lab in S_MULTS:
        if lab.startswith(("E1^", "E2^")) and lab[-2] in "1357":
            assert table.row(lab).target is None


def test_cover_degrees(table):
    assert table.row("E").degree == 2
    assert all(table.row(s).degree == 1 for s in COVER if s != "E")
    assert all(table.row(s).injective for s in COVER)


def test_cover_multiplicities(table):
    assert table.row("L").m_source == 4
    assert table.ok()
