import itertools

import pytest

from hglcore import hermat as hm, varpolar as vp
from hglcore.gf import field

from conftest import brute_variety_size


@pytest.mark.parametrize("q,n", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_variety_size_matches_enumeration_and_formula(q, n):
    F = field(q)
    for A in hm.hermitian_matrices(F, n):
        r = hm.rank(F, A)
        size = vp.variety_size(F, A)
        assert size == vp.variety_cardinality(n, r, q)
        if (q, n) != (3, 3):
            assert size == brute_variety_size(F, A)


def test_variety_sampled_larger(rng):
    for q, n in [(4, 2), (4, 3), (5, 2)]:
        F = field(q)
        for _ in range(6):
            A = hm.random_hermitian(F, n, rng)
            assert vp.variety_size(F, A) == brute_variety_size(F, A)


def test_cardinality_edge_cases():
    for q in (2, 3, 4, 5):
        for n in (1, 2, 3, 4):
            # the zero form vanishes everywhere
            assert vp.variety_cardinality(n, 0, q) == vp.projective_point_count(n, q)
            # nondegenerate classical counts
            assert vp.variety_cardinality(n, n, q) == (q ** n + (-1) ** (n - 1)) * (q ** (n - 1) - (-1) ** (n - 1)) // (q * q - 1)
    with pytest.raises(ValueError):
        vp.variety_cardinality(2, 3, 2)
    with pytest.raises(ValueError):
        vp.variety_cardinality(2, -1, 2)


def test_projective_points():
    for q, n in [(2, 2), (2, 3), (3, 2), (4, 2)]:
        F = field(q)
        pts = vp.projective_points(F, n)
        assert len(pts) == vp.projective_point_count(n, q) == len(set(pts))
        assert all(hm.normalize_vector(F, p) == p for p in pts)


def test_classical_convention_is_conjugate(rng):
    F = field(3)
    for _ in range(20):
        A = hm.random_hermitian(F, 3, rng)
        lit = set(vp.classical_variety(F, A))
        assert lit == set(vp.variety_points(F, hm.conj_matrix(F, A)))


@pytest.mark.parametrize("q,n", [(2, 2), (2, 3), (2, 4), (3, 3), (3, 4), (2, 5)])
def test_maximal_isotropic_dimension(q, n, rng):
    F = field(q)
    A = hm.random_invertible_hermitian(F, n, rng)
    d = n // 2
    U = vp.isotropic_subspace_search(F, A, d)
    assert U is not None and len(U) == d
    assert hm.vectors_rank(F, U) == d
    assert vp.is_totally_isotropic(F, A, U)
    assert vp.polarization_holds(F, A, U)
    if d + 1 <= n:
        assert vp.isotropic_subspace_search(F, A, d + 1) is None


def test_isotropic_search_rejects():
    F = field(2)
    with pytest.raises(ValueError):
        vp.isotropic_subspace_search(F, hm.zeros(2), 1)
    with pytest.raises(ValueError):
        vp.isotropic_subspace_search(F, hm.identity(2), 3)


def test_total_isotropy_is_polarization(rng):
    F = field(3)
    A = hm.random_invertible_hermitian(F, 4, rng)
    pts = vp.variety_points(F, A)
    for x, y in itertools.islice(itertools.combinations(pts, 2), 200):
        assert vp.is_totally_isotropic(F, A, [x, y]) == vp.polarization_holds(F, A, [x, y])


def _srg_parameters(m, edges):
    adj = [set() for _ in range(m)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    k = {len(a) for a in adj}
    lam = {len(adj[u] & adj[v]) for u, v in edges}
    mu = {len(adj[u] & adj[v]) for u in range(m) for v in range(u + 1, m) if v not in adj[u]}
    return k, lam, mu


def test_polar_graph_is_generalized_quadrangle():
    # collinearity graph of H(3, q^2), a GQ of order (q^2, q)
    q = 2
    F = field(q)
    pg = vp.polar_point_graph(F, hm.identity(4))
    s, t = q * q, q
    assert len(pg.points) == (s + 1) * (s * t + 1)
    k, lam, mu = _srg_parameters(len(pg.points), pg.edges)
    assert k == {s * (t + 1)} and lam == {s - 1} and mu == {t + 1}
    comp = pg.complement_edges()
    assert len(comp) + len(pg.edges) == len(pg.points) * (len(pg.points) - 1) // 2


def test_polar_graph_needs_invertible():
    with pytest.raises(ValueError):
        vp.polar_point_graph(field(2), hm.zeros(3))
