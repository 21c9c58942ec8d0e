import math
import random

import networkx as nx
import pytest

from conftest import random_connected_graph
from graphcover.graph import (
    UNREACHABLE,
    GenerationError,
    Graph,
    GraphError,
    complete_graph,
    cycle_graph,
    delta_neighborhood,
    diameter,
    distance,
    distances_from,
    double_star,
    format_edge_list,
    generate_random_geometric,
    induced_subgraph,
    is_connected,
    load_graph,
    nu,
    parse_edge_list,
    path_graph,
    save_graph,
    star_graph,
)


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.nodes())
    h.add_edges_from(g.edges)
    return h


def test_construction_normalizes_edges():
    g = Graph(4, [(2, 1), (1, 2), (0, 3)])
    assert g.edges == ((0, 3), (1, 2))
    assert g.edge_count == 2
    assert g.neighbors(1) == (2,)
    assert g.has_edge(3, 0)


@pytest.mark.parametrize("edges", [[(0, 0)], [(0, 5)], [(-1, 0)]])
def test_bad_edges_rejected(edges):
    with pytest.raises(GraphError):
        Graph(3, edges)


def test_invalid_node_queries():
    g = path_graph(3)
    for bad in (-1, 3, "a", 1.0):
        with pytest.raises(GraphError):
            g.neighbors(bad)
    with pytest.raises(GraphError):
        delta_neighborhood(g, 0, -1)


def test_distances_match_networkx():
    rng = random.Random(3)
    for _ in range(30):
        g = random_connected_graph(rng, rng.randint(2, 20), 0.1)
        ref = dict(nx.all_pairs_shortest_path_length(to_nx(g)))
        for v in g.nodes():
            assert distances_from(g, v) == [ref[v][w] for w in g.nodes()]
        assert diameter(g) == nx.diameter(to_nx(g))


def test_neighborhoods_match_networkx():
    rng = random.Random(4)
    for _ in range(30):
        g = random_connected_graph(rng, rng.randint(1, 15), 0.15)
        h = to_nx(g)
        for v in g.nodes():
            for delta in range(4):
                ref = set(nx.single_source_shortest_path_length(h, v, cutoff=delta))
                assert delta_neighborhood(g, v, delta) == ref
                assert g.neighborhood(v, delta) == ref


def test_disconnected_distances():
    g = Graph(4, [(0, 1), (2, 3)])
    assert not is_connected(g)
    assert distance(g, 0, 3) == UNREACHABLE == math.inf
    assert delta_neighborhood(g, 0, 5) == {0, 1}


def test_connectivity_matches_networkx():
    rng = random.Random(5)
    for _ in range(50):
        n = rng.randint(1, 10)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.25]
        g = Graph(n, edges)
        assert is_connected(g) == nx.is_connected(to_nx(g))


def test_nu_small_fixtures():
    assert nu(path_graph(5), 1) == 1
    assert nu(star_graph(4), 1) == 3
    assert nu(path_graph(5), 0) == 1
    assert nu(complete_graph(5), 1) == 0
    # hub 0 sees its 3 leaves and hub 1; hub 1 sees only hub 0 and its leaf
    assert nu(double_star(3, 1), 1) == 3
    with pytest.raises(GraphError):
        nu(Graph(3), 1)


def test_nu_brute_force():
    rng = random.Random(6)
    for _ in range(20):
        g = random_connected_graph(rng, rng.randint(2, 12), 0.2)
        h = to_nx(g)
        for delta in (0, 1, 2):
            ball = {v: set(nx.single_source_shortest_path_length(h, v, cutoff=delta)) for v in h}
            ref = max(len(ball[u] - ball[v]) for u in h for v in h[u])
            assert nu(g, delta) == ref


def test_induced_subgraph_relabels_in_order():
    g = cycle_graph(6)
    sub, mapping = induced_subgraph(g, [5, 0, 1, 3])
    assert mapping == {0: 0, 1: 1, 3: 2, 5: 3}
    assert set(sub.edges) == {(0, 1), (0, 3)}
    with pytest.raises(GraphError):
        induced_subgraph(g, [])


def test_generators():
    assert path_graph(5).edge_count == 4
    s = star_graph(4)
    assert s.node_count == 5 and len(s.neighbors(0)) == 4
    assert cycle_graph(5).edge_count == 5
    assert complete_graph(5).edge_count == 10
    d = double_star(2, 1)
    assert d.node_count == 5 and d.has_edge(0, 1)


def test_random_geometric_is_deterministic_and_connected():
    a = generate_random_geometric(30, 0.3, seed=11)
    b = generate_random_geometric(30, 0.3, seed=11)
    assert a == b
    assert is_connected(a)
    assert a.node_count == 30


def test_random_geometric_gives_up():
    with pytest.raises(GenerationError):
        generate_random_geometric(40, 0.01, seed=0, retries=3)


def test_edge_list_round_trip(tmp_path):
    rng = random.Random(7)
    g = random_connected_graph(rng, 12)
    path = tmp_path / "g.txt"
    save_graph(g, path, comment="two\nlines")
    assert load_graph(path) == g
    assert path.read_text().startswith("# two\n# lines\np 12\n")


def test_edge_list_without_header_compacts_ids():
    g, mapping = parse_edge_list("e 10 30\ne 30 20\n")
    assert mapping == {10: 0, 20: 1, 30: 2}
    assert set(g.edges) == {(0, 2), (1, 2)}


def test_edge_list_keeps_isolated_nodes():
    g, _ = parse_edge_list(format_edge_list(Graph(4, [(0, 1)])))
    assert g.node_count == 4


@pytest.mark.parametrize("text", ["p 3\np 3\n", "x 1 2\n", "e 1\n", "e a b\n", "p 2\ne 0 2\n", "# only\n"])
def test_edge_list_errors(text):
    with pytest.raises(GraphError):
        parse_edge_list(text)
