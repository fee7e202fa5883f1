"""The oracles are only useful if they are right; check them against each other."""
import networkx as nx

from conftest import random_game
from oracles import (
    diameter_oracle,
    diameter_oracle_np,
    diamonds_oracle,
    diamonds_oracle_np,
    girth_oracle,
    girth_oracle_np,
    scc_oracle,
)


def _digraph(g):
    h = nx.DiGraph()
    h.add_nodes_from(range(g.num_vertices))
    h.add_edges_from(g.edges())
    return h


def test_vectorised_oracles_match_loops(rng):
    for _ in range(60):
        g = random_game(rng, rng.randint(1, 25), max_out=4, self_loop_rate=0.1)
        assert diameter_oracle_np(g) == diameter_oracle(g)
        assert girth_oracle_np(g) == girth_oracle(g)
        assert diamonds_oracle_np(g) == diamonds_oracle(g)


def test_scc_oracle_matches_networkx(rng):
    for _ in range(40):
        g = random_game(rng, rng.randint(1, 40), max_out=2)
        assert scc_oracle(g) == {frozenset(c) for c in nx.strongly_connected_components(_digraph(g))}


def test_distance_oracles_match_networkx(rng):
    for _ in range(30):
        g = random_game(rng, rng.randint(1, 40), self_loop_rate=0.05)
        h = _digraph(g)
        lengths = dict(nx.all_pairs_shortest_path_length(h))
        assert diameter_oracle(g) == max(d for row in lengths.values() for d in row.values())
        loops = [v for v in range(g.num_vertices) if v in g.successors[v]]
        if loops:
            assert girth_oracle(g) == 1
        else:
            shortest = min(len(c) for c in nx.simple_cycles(h, length_bound=g.num_vertices))
            assert girth_oracle(g) == shortest
