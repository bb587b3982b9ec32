import itertools

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from hglcore import graphs, homsearch as hs


def _g(nxg):
    return graphs.from_networkx(nx.convert_node_labels_to_integers(nxg))


def _brute_homs(G, H):
    for m in itertools.product(range(H.order), repeat=G.order):
        if all(H.has_edge(m[u], m[v]) for u, v in G.edges()):
            yield m


def _brute_chromatic(G):
    for k in range(1, G.order + 1):
        if next(_brute_homs(G, graphs.complete_graph(k)), None) is not None:
            return k
    return 0


def _brute_core(G):
    return all(len(set(m)) == G.order for m in _brute_homs(G, G))


small_graphs = st.builds(
    lambda n, p, seed: _g(nx.gnp_random_graph(n, p, seed=seed)),
    st.integers(1, 6), st.floats(0.2, 0.9), st.integers(0, 10 ** 6),
)


@settings(max_examples=60, deadline=None)
@given(small_graphs, small_graphs)
def test_homomorphism_existence_matches_brute_force(G, H):
    res = hs.find_homomorphism(hs.HomSearchProblem(G, H))
    brute = next(_brute_homs(G, H), None)
    assert res.found == (brute is not None)
    if res.found:
        assert hs.is_homomorphism(G, H, res.mapping)


@settings(max_examples=60, deadline=None)
@given(small_graphs)
def test_chromatic_number_matches_brute_force(G):
    res = hs.chromatic_number(G)
    assert res.value == _brute_chromatic(G)
    assert hs.is_proper_coloring(G, res.coloring)
    assert len(set(res.coloring)) == res.value or G.order == 0


@settings(max_examples=40, deadline=None)
@given(small_graphs)
def test_core_matches_brute_force(G):
    verdict = hs.is_core(G)
    assert verdict.is_core == _brute_core(G)
    if verdict.status == "not-core":
        assert hs.is_homomorphism(G, G, verdict.witness)
        assert len(set(verdict.witness)) < G.order


def test_endomorphism_count_of_small_graphs():
    for G in (graphs.cycle_graph(5), graphs.complete_graph(4), graphs.path_graph(3)):
        status, endos = hs.count_endomorphisms(G)
        assert status == hs.REFUTED
        assert sorted(map(tuple, endos)) == sorted(_brute_homs(G, G))


def test_petersen_core_and_automorphisms():
    G = graphs.petersen_graph()
    status, endos = hs.count_endomorphisms(G)
    assert status == hs.REFUTED and len(endos) == 120
    assert all(len(set(e)) == 10 for e in endos)
    assert hs.is_core(G).status == "core"
    H = _g(nx.petersen_graph())
    assert hs.find_isomorphism(G, H).found


def test_isomorphism_negative():
    assert not hs.find_isomorphism(graphs.cycle_graph(6), _g(nx.disjoint_union(nx.cycle_graph(3), nx.cycle_graph(3)))).found


def test_known_non_core_and_retraction():
    # C6 retracts onto an edge
    G = graphs.cycle_graph(6)
    v = hs.is_core(G)
    assert v.status == "not-core"
    image = sorted(set(v.witness))
    r = hs.retraction_from(G, image, v.witness)
    assert hs.is_homomorphism(G, G, r)
    assert all(r[u] == u for u in set(r))


def test_orbit_pruning_agrees():
    G = graphs.petersen_graph()
    status, endos = hs.count_endomorphisms(G)
    full = hs.is_core(G)
    pruned = hs.is_core(G, generators=endos[:5])
    assert full.status == pruned.status == "core"
    assert len(pruned.checked) <= len(full.checked)


def test_budget_is_reported():
    G = graphs.build_hgl(3, 2)
    res = hs.color_search(G, 3, node_budget=5)
    assert res.status == hs.BUDGET
    with pytest.raises(ValueError):
        hs.HomSearchProblem(G, mode=hs.COLORING, colors=0)
    with pytest.raises(ValueError):
        hs.HomSearchProblem(G, G, node_budget=0)


def test_small_hgl_chromatic():
    res = hs.chromatic_number(graphs.build_hgl(2, 2), exhaustive_from=2)
    assert res.value == 3
    assert [m for m, s, _ in res.refutations if s == hs.REFUTED] == [2]


def test_dsatur_proper(rng):
    for seed in range(20):
        g = nx.gnp_random_graph(15, 0.4, seed=seed)
        G = _g(g)
        assert hs.is_proper_coloring(G, hs.dsatur(G))


def test_clique_number_against_networkx():
    for seed in range(10):
        g = nx.gnp_random_graph(12, 0.5, seed=seed)
        assert hs.clique_number(_g(g)) == max(len(c) for c in nx.find_cliques(g))


def test_coloring_pullback():
    G, H = graphs.cycle_graph(6), graphs.complete_graph(2)
    mapping = [i % 2 for i in range(6)]
    rep = hs.verify_lemma_2_5(G, H, mapping)
    assert rep["pullback_proper"] and rep["bound_holds"] and rep["colors_used_G"] == 2
    with pytest.raises(ValueError):
        hs.verify_lemma_2_5(G, H, [0] * 6)
