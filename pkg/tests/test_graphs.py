import itertools
from functools import reduce

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from paleytype.errors import Inconclusive, TooLarge
from paleytype.graphs import (
    Graph,
    build_paley_type,
    common_neighbor_counts,
    complete_graph,
    crt_index_map,
    crt_isomorphism,
    cycle_graph,
    degree_sequence,
    edge_connectivity,
    is_connected,
    is_eulerian,
    is_r_thin,
    is_regular,
    is_self_complementary_refuted,
    is_strongly_regular,
    is_translation_invariant,
    kronecker_product,
    paley_graph,
    path_graph,
    srg_witness,
    verify_isomorphism,
    vertex_connectivity,
)
from paleytype.numtheory import PrimeSet, euler_phi, quadratic_residues

from conftest import TEST_PRIMESETS

K2xK2 = kronecker_product(complete_graph(2), complete_graph(2))


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.order))
    h.add_edges_from(map(tuple, g.edges()))
    return h


@st.composite
def random_graphs(draw, min_v=1, max_v=12):
    n = draw(st.integers(min_v, max_v))
    bits = draw(st.lists(st.booleans(), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))
    a = np.zeros((n, n), dtype=bool)
    a[np.triu_indices(n, 1)] = bits
    return Graph(a | a.T)


def test_graph_rejects_bad_adjacency():
    with pytest.raises(ValueError):
        Graph(np.array([[0, 1], [0, 0]]))
    with pytest.raises(ValueError):
        Graph(np.eye(2))


def test_graph_is_immutable():
    g = cycle_graph(5)
    with pytest.raises(ValueError):
        g.adjacency[0, 2] = True


def test_paley_5_is_c5():
    assert paley_graph(5) == cycle_graph(5)


def test_paley_type_degrees(gamma):
    assert is_regular(gamma(13)) == 6 and gamma(13).order == 13
    g = gamma(5, 13)
    assert g.order == 65 and is_regular(g) == 12


def test_adjacency_rule(gamma):
    ps = PrimeSet((5, 13))
    qr = quadratic_residues(ps)
    g = gamma(5, 13)
    for a, b in itertools.combinations(range(65), 2):
        assert g.has_edge(a, b) == ((a - b) % 65 in qr)


def test_construction_guard():
    with pytest.raises(TooLarge):
        build_paley_type(PrimeSet((5, 13, 17)), max_vertices=1000)


def test_kronecker_examples():
    assert K2xK2.order == 4
    assert sorted(map(tuple, K2xK2.edges())) == [(0, 3), (1, 2)]
    c = kronecker_product(cycle_graph(5), cycle_graph(5))
    assert c.order == 25 and is_regular(c) == 4


def test_kronecker_matches_networkx():
    g, h = cycle_graph(5), paley_graph(13)
    ours = kronecker_product(g, h)
    theirs = nx.tensor_product(to_nx(g), to_nx(h))
    relabel = {(x, y): x * h.order + y for x, y in theirs.nodes}
    theirs = nx.relabel_nodes(theirs, relabel)
    assert {tuple(e) for e in ours.edges()} == {tuple(sorted(e)) for e in theirs.edges()}


@settings(max_examples=30, deadline=None)
@given(random_graphs(max_v=7), random_graphs(max_v=7))
def test_kronecker_degree_multiplicativity(g, h):
    prod = kronecker_product(g, h)
    dg, dh, dp = degree_sequence(g), degree_sequence(h), degree_sequence(prod)
    for x in range(g.order):
        for y in range(h.order):
            assert dp[x * h.order + y] == dg[x] * dh[y]


@pytest.mark.parametrize("primes", [(13,), (5, 13), (5, 17), (13, 17), (5, 13, 17)])
def test_crt_isomorphism(primes):
    ps = PrimeSet(primes)
    w = crt_isomorphism(ps)
    assert w.verified and w.discrepancies == 0
    if ps.n == 1:
        assert np.array_equal(w.mapping, np.arange(ps.N))


def test_crt_map_independent_recheck(gamma):
    # recompute the product and the pair check from scratch, pair by pair
    ps = PrimeSet((5, 13))
    prod = kronecker_product(paley_graph(5), paley_graph(13))
    m = crt_index_map(ps)
    g = gamma(5, 13)
    assert verify_isomorphism(g, prod, m) == 0
    for u, v in itertools.combinations(range(65), 2):
        assert g.has_edge(u, v) == prod.has_edge(int(m[u]), int(m[v]))
    wrong = m.copy()
    wrong[[0, 1]] = wrong[[1, 0]]
    assert verify_isomorphism(g, prod, wrong) > 0


def test_regularity_examples(gamma):
    assert is_regular(gamma(5, 13)) == 12 and is_eulerian(gamma(5, 13))
    assert is_regular(cycle_graph(5)) == 2
    assert is_regular(K2xK2) == 1
    assert is_regular(path_graph(3)) is None


def test_connectivity_predicate(gamma):
    assert is_connected(gamma(5, 13))
    assert not is_connected(K2xK2)
    assert is_connected(gamma(13))


@pytest.mark.parametrize("primes", TEST_PRIMESETS)
def test_degree_is_qr_count(primes, gamma):
    ps = PrimeSet(primes)
    assert set(degree_sequence(gamma(*primes))) == {len(quadratic_residues(ps))}
    assert is_regular(gamma(*primes)) == euler_phi(ps) // 2**ps.n


def test_vertex_edge_connectivity_examples(gamma):
    c5 = cycle_graph(5)
    assert vertex_connectivity(c5) == edge_connectivity(c5) == 2
    assert vertex_connectivity(gamma(13)) == edge_connectivity(gamma(13)) == 6
    assert vertex_connectivity(gamma(5, 13)) == edge_connectivity(gamma(5, 13)) == 12


def test_connectivity_guard(gamma):
    with pytest.raises(TooLarge):
        vertex_connectivity(gamma(5, 13), max_vertices=64)
    with pytest.raises(TooLarge):
        edge_connectivity(gamma(5, 13, 17))


@settings(max_examples=40, deadline=None)
@given(random_graphs(min_v=2, max_v=10))
def test_connectivity_against_networkx(g):
    h = to_nx(g)
    assert edge_connectivity(g) == nx.edge_connectivity(h)
    assert vertex_connectivity(g) == nx.node_connectivity(h)


def test_r_thin_examples(gamma):
    assert not is_r_thin(cycle_graph(4))
    assert is_r_thin(gamma(5, 13))
    assert is_r_thin(gamma(13))


@pytest.mark.parametrize("primes", TEST_PRIMESETS)
def test_r_thin_all(primes, gamma):
    g = gamma(*primes)
    rows = {g.adjacency[v].tobytes() for v in range(g.order)}
    assert is_r_thin(g) and len(rows) == g.order


def test_strongly_regular_examples(gamma):
    assert is_strongly_regular(gamma(13)) == (2, 3)
    assert is_strongly_regular(cycle_graph(5)) == (0, 1)
    assert is_strongly_regular(gamma(5, 13)) is None
    w = srg_witness(gamma(5, 13))
    cn = common_neighbor_counts(gamma(5, 13))
    assert w is not None
    assert cn[w.first] == w.first_count != w.second_count == cn[w.second]
    assert gamma(5, 13).has_edge(*w.first) == gamma(5, 13).has_edge(*w.second) == w.adjacent
    assert srg_witness(gamma(13)) is None


@pytest.mark.parametrize("primes", [(5, 13), (5, 17), (13, 17), (5, 13, 17)])
def test_product_graphs_not_srg(primes, gamma):
    assert is_strongly_regular(gamma(*primes)) is None


def test_self_complementary_certificates(gamma):
    assert is_self_complementary_refuted(gamma(5, 13))
    assert is_self_complementary_refuted(gamma(13, 17))
    assert is_regular(gamma(13, 17)) == 48 and 220 - 48 == 172
    with pytest.raises(Inconclusive):
        is_self_complementary_refuted(gamma(13))


def test_paley_13_really_is_self_complementary(gamma):
    g = gamma(13)
    # x -> 2x maps edges onto non-edges since 2 is a non-residue mod 13
    m = (2 * np.arange(13)) % 13
    assert verify_isomorphism(g, g.complement(), m) == 0


@pytest.mark.parametrize("primes", [(5,), (13,), (5, 13), (13, 17)])
def test_translation_invariance_exhaustive(primes, gamma):
    assert is_translation_invariant(gamma(*primes))


def test_translation_invariance_sampled(gamma):
    assert is_translation_invariant(gamma(5, 13, 17), shifts=[1, 2, 64, 221, 1104])
    assert not is_translation_invariant(path_graph(4), shifts=[1])


def test_product_of_paley_factors_matches_gamma(gamma):
    prod = reduce(kronecker_product, [paley_graph(5), paley_graph(13), paley_graph(17)])
    assert verify_isomorphism(gamma(5, 13, 17), prod, crt_index_map(PrimeSet((5, 13, 17)))) == 0
