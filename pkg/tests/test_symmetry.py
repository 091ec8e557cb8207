import math

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings

from paleytype.errors import BudgetExceeded, PreconditionFailed, TooLarge, VerificationFailed
from paleytype.graphs import complete_graph, cycle_graph, kronecker_product, paley_graph, path_graph
from paleytype.numtheory import PrimeSet, qr_bitmap
from paleytype.symmetry import (
    AffineMap,
    affine_automorphisms,
    all_automorphisms,
    aut_formula,
    aut_report,
    brute_force_aut_count,
    hammack_assembly,
    hammack_assembly_check,
    preserves_adjacency,
    transitivity_check,
)

from test_graphs import random_graphs, to_nx


def nx_aut_count(g):
    h = to_nx(g)
    return sum(1 for _ in nx.algorithms.isomorphism.GraphMatcher(h, h).isomorphisms_iter())


@pytest.mark.parametrize("primes, count", [((5,), 10), ((13,), 78), ((5, 13), 780)])
def test_affine_family(primes, count):
    ps = PrimeSet(primes)
    maps = affine_automorphisms(ps)
    assert len(maps) == count == aut_formula(ps)
    g = paley_graph(primes[0]) if len(primes) == 1 else None
    if g is not None:
        for m in maps:
            assert preserves_adjacency(g, m.as_array())


def test_affine_c5_is_dihedral():
    maps = affine_automorphisms(PrimeSet((5,)))
    dihedral = {tuple((s * np.arange(5) + t) % 5) for s in (1, 4) for t in range(5)}
    assert {tuple(m.as_array()) for m in maps} == dihedral


def test_affine_large_modulus_sampled():
    ps = PrimeSet((5, 13, 17))
    maps = affine_automorphisms(ps)
    assert len(maps) == 1105 * 96 == aut_formula(ps)


def test_affine_closure():
    ps = PrimeSet((5, 13))
    qr = qr_bitmap(ps)
    maps = affine_automorphisms(ps)
    for a, b in zip(maps[::37], maps[5::41]):
        c = a.compose(b)
        assert qr[c.s]
        assert np.array_equal(c.as_array(), a.as_array()[b.as_array()])


def test_non_residue_multiplier_is_not_automorphism(gamma):
    g = gamma(5, 13)
    assert not preserves_adjacency(g, AffineMap(2, 0, 65).as_array())


@pytest.mark.parametrize(
    "graph, count",
    [
        (cycle_graph(5), 10),
        (paley_graph(13), 78),
        (path_graph(3), 2),
        (cycle_graph(4), 8),
        (complete_graph(5), 120),
        (kronecker_product(complete_graph(2), complete_graph(2)), 8),
    ],
)
def test_brute_force_small(graph, count):
    assert brute_force_aut_count(graph) == count


def test_brute_force_gamma65(gamma):
    assert brute_force_aut_count(gamma(5, 13)) == 780


@settings(max_examples=40, deadline=None)
@given(random_graphs(min_v=1, max_v=8))
def test_brute_force_against_independent_counters(g):
    expected = nx_aut_count(g)
    assert brute_force_aut_count(g) == expected
    assert len(all_automorphisms(g)) == expected


def test_brute_force_budget_and_guard(gamma):
    with pytest.raises(BudgetExceeded):
        brute_force_aut_count(gamma(5, 13), budget=10)
    with pytest.raises(TooLarge):
        brute_force_aut_count(gamma(5, 13, 17))


def test_transitivity_examples(gamma):
    ps = PrimeSet((5, 13))
    tr = transitivity_check(gamma(5, 13), affine_automorphisms(ps))
    assert tr.vertex_transitive and tr.edge_transitive
    k = kronecker_product(complete_graph(2), complete_graph(2))
    assert transitivity_check(k, all_automorphisms(k)).vertex_transitive
    p3 = path_graph(3)
    tr = transitivity_check(p3, all_automorphisms(p3))
    # the reflection swaps the two edges of P3 but no map moves the centre
    assert not tr.vertex_transitive and tr.edge_transitive
    p4 = path_graph(4)
    tr = transitivity_check(p4, all_automorphisms(p4))
    assert not tr.vertex_transitive and not tr.edge_transitive


def test_transitivity_needs_full_family(gamma):
    # translations alone: vertex-transitive, but not edge-transitive on Gamma_65
    only_shifts = [AffineMap(1, t, 65) for t in range(65)]
    tr = transitivity_check(gamma(5, 13), only_shifts)
    assert tr.vertex_transitive and not tr.edge_transitive


def test_hammack_assembly():
    asm = hammack_assembly(PrimeSet((5, 13)))
    assert asm.product_count == 780 and asm.factor_counts == [10, 78]
    assert asm.connected and asm.non_bipartite and asm.r_thin and asm.holds
    assert hammack_assembly_check(PrimeSet((13,)))


def test_hammack_precondition(monkeypatch):
    import paleytype.symmetry as sym

    monkeypatch.setattr(sym, "is_r_thin", lambda g: False)
    with pytest.raises(PreconditionFailed) as info:
        sym.hammack_assembly(PrimeSet((5, 13)))
    assert info.value.hypothesis == "R-thin"


def test_aut_report():
    rep = aut_report(PrimeSet((5, 13)))
    assert rep.formula_count == rep.affine_count == rep.brute_force_count == 780
    assert rep.vertex_transitive and rep.edge_transitive
    rep = aut_report(PrimeSet((13, 17)), max_vertices=100)
    assert rep.brute_force_count is None and rep.affine_count == 221 * 48
