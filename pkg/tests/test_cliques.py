from collections import Counter

import networkx as nx
import pytest

from hglcore import cliques, graphs, hermat as hm
from hglcore.gf import field


@pytest.mark.parametrize("q", [2, 3, 4])
def test_clique_census_against_networkx(q):
    """Maximal cliques found by Bron-Kerbosch agree with the direction-vector description."""
    F = field(q)
    G = graphs.build_hgl(q, 2)
    mats = graphs.vertex_matrices(G)
    g = nx.Graph(G.edges())
    g.add_nodes_from(range(G.order))
    through = [Counter() for _ in range(G.order)]
    for c in nx.find_cliques(g):
        for v in c:
            through[v][len(c)] += 1
    for v in range(0, G.order, max(1, G.order // 20)):
        A = mats[v]
        cc = cliques.clique_counts(F, A)
        desc = cliques.cliques_through(F, A)
        if q >= 3:
            assert through[v] == Counter({q: q + 1, q - 1: q * q - q})
        else:
            # q - 1 = 1: the (q-1)-cliques are the vertex alone, never maximal
            assert through[v] == Counter({2: 3})
        assert cc.num_q == q + 1 and cc.num_q_minus_1 == q * q - q
        assert cc.degree == G.degree(v) == q ** 3 - 2 * q * q + 2 * q - 1
        assert Counter(c.kind for c in desc) == Counter({cliques.Q_CLIQUE: q + 1, cliques.Q_MINUS_1_CLIQUE: q * q - q})
        idx = graphs.label_index(G)
        for c in desc:
            members = [idx[hm.encode(F, M)] for M in c.members]
            assert all(G.has_edge(a, b) for a in members for b in members if a != b)


@pytest.mark.parametrize("q,n", [(3, 2), (4, 2), (3, 3), (2, 3)])
def test_det_profiles(q, n, rng):
    F = field(q)
    fixed = set(F.fixed_nonzero())
    for _ in range(8):
        A = hm.random_invertible_hermitian(F, n, rng)
        for c in cliques.cliques_through(F, A):
            prof = cliques.det_profile(F, c)
            if c.kind == cliques.Q_CLIQUE:
                assert len(c) == q and set(prof) == {hm.det(F, A)}
            else:
                assert len(c) == q - 1 and set(prof) == fixed
            assert A in c


def test_maximal_clique_through_pair(rng):
    F = field(3)
    A = hm.random_invertible_hermitian(F, 3, rng)
    for c in cliques.cliques_through(F, A):
        for B in c.members:
            if B != A:
                assert cliques.maximal_clique_through(F, A, B).members == c.members
    with pytest.raises(ValueError):
        cliques.maximal_clique_through(F, A, A)


def test_classification_rule(rng):
    F = field(4)
    A = hm.random_invertible_hermitian(F, 3, rng)
    Ainv = hm.inverse(F, A)
    for _ in range(30):
        x = hm.random_vector(F, 3, rng)
        kind = cliques.classify(F, A, x)
        assert (kind == cliques.Q_CLIQUE) == (hm.form(F, x, Ainv, x) == 0)
    with pytest.raises(ValueError):
        cliques.classify(F, A, (0, 0, 0))


def test_a_orthogonality_symmetric(rng):
    F = field(3)
    A = hm.random_invertible_hermitian(F, 3, rng)
    for _ in range(30):
        x, y = hm.random_vector(F, 3, rng), hm.random_vector(F, 3, rng)
        assert cliques.a_orthogonal(F, A, x, y) == cliques.a_orthogonal(F, A, y, x)


def test_census_requires_invertible():
    with pytest.raises(ValueError):
        cliques.clique_counts(field(2), hm.zeros(2))
    cen = cliques.census(field(3), hm.identity(2))
    assert cen["num_q_cliques"] == 4 and cen["num_q_minus_1_cliques"] == 6
    assert cen["degree"] == cen["formula"]["degree"] == 14
