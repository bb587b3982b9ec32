import random

import pytest

from hglcore import cliques, graphs, hermat as hm
from hglcore.constructive import (
    case2_gamma,
    equal_det_walk,
    exhaustive_identity_check,
    is_orthonormal,
    is_unitary,
    isotropic_quadruple_solve,
    orthonormal_complete,
    transport_cliques,
    transport_isotropic,
    transport_pair_nonorthogonal,
    transport_pair_orthogonal,
    verify_lemma_main_identities,
)
from hglcore.constructive import sampling
from hglcore.constructive.identities import order_three_unit
from hglcore.constructive.quadruple import check_solution
from hglcore.gf import field, solve_special_quartic
from hglcore.homsearch import REFUTED, color_search, is_proper_coloring


def _unitary(F, P):
    # P* P = I computed entry by entry, independent of the matrix helpers
    n = len(P)
    for i in range(n):
        for j in range(n):
            s = 0
            for k in range(n):
                s = F.add(s, F.mul(F.conj(P[k][i]), P[k][j]))
            if s != (1 if i == j else 0):
                return False
    return True


def _apply(F, P, x):
    return tuple(
        _sum(F, (F.mul(P[i][k], x[k]) for k in range(len(x)))) for i in range(len(P))
    )


def _sum(F, it):
    s = 0
    for v in it:
        s = F.add(s, v)
    return s


@pytest.mark.parametrize("q,n", [(2, 3), (3, 2), (3, 4), (4, 3), (5, 5)])
def test_orthonormal_completion(q, n, rng):
    F = field(q)
    for _ in range(10):
        basis = orthonormal_complete(F, [], n)
        P = hm.from_columns(basis)
        assert _unitary(F, P)
        k = rng.randrange(1, n)
        part = [tuple(P[r][c] for r in range(n)) for c in range(k)]
        full = orthonormal_complete(F, part, n)
        assert full[:k] == part and is_orthonormal(F, full)
    with pytest.raises(ValueError):
        orthonormal_complete(F, [(1,) + (0,) * (n - 1)] * 2, n)


@pytest.mark.parametrize("q,n", [(2, 2), (2, 4), (3, 3), (4, 2), (4, 4), (5, 3), (7, 3), (8, 2), (9, 3)])
def test_transport_isotropic(q, n, rng):
    F = field(q)
    for _ in range(25):
        x = sampling.random_isotropic(F, n, rng)
        y = sampling.random_isotropic(F, n, rng)
        cert = transport_isotropic(F, x, y)
        assert cert.ok
        assert _unitary(F, cert.P) and _apply(F, cert.P, x) == y
    with pytest.raises(ValueError):
        transport_isotropic(F, (1,) + (0,) * (n - 1), sampling.random_isotropic(F, n, rng))


@pytest.mark.parametrize("q,n", [(2, 4), (3, 4), (4, 5), (5, 4), (3, 6)])
def test_transport_orthogonal_pair(q, n, rng):
    F = field(q)
    seen = set()
    for _ in range(30):
        x1, y1 = sampling.random_orthogonal_pair(F, n, rng)
        x2, y2 = sampling.random_orthogonal_pair(F, n, rng)
        cert = transport_pair_orthogonal(F, x1, y1, x2, y2)
        assert cert.ok and cert.scale != 0
        assert _unitary(F, cert.P)
        assert _apply(F, cert.P, x1) == x2
        assert _apply(F, cert.P, y1) == hm.vec_scale(F, cert.scale, y2)
        seen.update(cert.branch)
    assert {"u2-zero", "u2-nonzero"} & seen


@pytest.mark.parametrize("q,n", [(2, 2), (3, 2), (4, 3), (5, 2), (8, 3), (9, 2)])
def test_transport_nonorthogonal_pair(q, n, rng):
    F = field(q)
    for _ in range(30):
        x1, y1 = sampling.random_nonorthogonal_pair(F, n, rng)
        x2, y2 = sampling.random_nonorthogonal_pair(F, n, rng)
        cert = transport_pair_nonorthogonal(F, x1, y1, x2, y2)
        assert cert.ok
        assert cert.branch == ["even" if q % 2 == 0 else "odd"]
        b = F.div(hm.inner(F, x1, y1), hm.inner(F, x2, y2))
        assert cert.scale == b
        assert _unitary(F, cert.P)
        assert _apply(F, cert.P, x1) == x2
        assert _apply(F, cert.P, y1) == hm.vec_scale(F, b, y2)


@pytest.mark.parametrize("q,n,orth", [(2, 2, False), (3, 3, False), (4, 2, False), (2, 4, True), (3, 4, True)])
def test_transport_cliques(q, n, orth, rng):
    F = field(q)
    for _ in range(15):
        A1 = hm.random_invertible_hermitian(F, n, rng)
        A2 = hm.random_invertible_hermitian(F, n, rng)
        x1, y1 = sampling.random_clique_pair(F, A1, rng, orth)
        x2, y2 = sampling.random_clique_pair(F, A2, rng, orth)
        cert = transport_cliques(F, A1, x1, y1, A2, x2, y2)
        assert cert.ok and cert.branch[0] == ("orthogonal" if orth else "non-orthogonal")
        P = cert.P
        assert hm.congruence(F, P, A1) == A2
        for a, b in ((x1, x2), (y1, y2)):
            img = {hm.congruence(F, P, M) for M in cliques.clique_members(F, A1, a)}
            assert img == set(cliques.clique_members(F, A2, b))


def test_transport_cliques_rejects_mixed(rng):
    F = field(3)
    A = hm.random_invertible_hermitian(F, 4, rng)
    x1, y1 = sampling.random_clique_pair(F, A, rng, True)
    x2, y2 = sampling.random_clique_pair(F, A, rng, False)
    with pytest.raises(ValueError):
        transport_cliques(F, A, x1, y1, A, x2, y2)


@pytest.mark.parametrize("q,n", [(2, 2), (3, 2), (3, 3), (4, 2), (4, 3), (5, 2), (4, 4)])
def test_isotropic_quadruple(q, n, rng):
    F = field(q)
    done = 0
    for _ in range(200):
        xs = [sampling.random_isotropic(F, n, rng) for _ in range(4)]
        if hm.inner(F, xs[0], xs[3]) == 0:
            continue
        sol = isotropic_quadruple_solve(F, *xs)
        # every a1 must work: recheck directly with explicit combinations
        for a1 in F.elements():
            v = hm.lincomb(F, [a1, *sol.coefficients], xs)
            assert hm.inner(F, v, v) == 0 and hm.inner(F, xs[0], v) == 0
        assert check_solution(F, xs, *sol.coefficients)
        done += 1
    assert done > 20


def test_quadruple_rejects():
    F = field(3)
    e1 = (1, 0)
    with pytest.raises(ValueError):
        isotropic_quadruple_solve(F, e1, e1, e1, e1)


def test_case4_identities_sampled(rng):
    F = field(4)
    i = order_three_unit(F)
    assert F.mul(i, F.mul(i, i)) == 1 and i != 1
    sols = solve_special_quartic(F)
    count = 0
    for n in (2, 3):
        for _ in range(40):
            x1 = sampling.random_isotropic(F, n, rng)
            x2 = hm.random_vector(F, n, rng)
            if hm.inner(F, x1, x2) == 0 or hm.inner(F, x2, x2) == 0:
                continue
            a2 = rng.choice(F.nonzero())
            for t in sols:
                rep = verify_lemma_main_identities(F, x1, x2, a2, t)
                assert rep["ok"], rep["checks"]
                assert rep["ww"] == rep["ww_predicted"]
                count += 1
    assert count > 100
    with pytest.raises(ValueError):
        verify_lemma_main_identities(field(3), (1, 0), (0, 1), 1, 1)


def test_case4_identities_exhaustive_slice():
    rep = exhaustive_identity_check(2, a2_values=[1])
    assert rep["ok"] and rep["instances"] > 0 and not rep["failures"]


@pytest.mark.parametrize("q", [3, 4, 5, 7])
def test_case2_graph(q):
    G, meta = case2_gamma(q)
    assert G.order == q * (q - 1)
    assert set(G.degrees()) == {(q - 1) + (q - 2)}
    assert meta["coloring_proper"] and is_proper_coloring(G, meta["coloring"])
    assert meta["colors_used"] == q
    # every vertex lies in exactly one q-clique, and meets every other q-clique once
    for (i, j) in G.labels:
        others = [G.labels[v] for v in G.neighbors(G.labels.index((i, j)))]
        assert sum(1 for (a, b) in others if a == i) == q - 1
        assert sorted(a for (a, b) in others if a != i) == [a for a in range(q - 1) if a != i]
    if q <= 4:
        assert color_search(G, q - 1).status == REFUTED
    with pytest.raises(ValueError):
        case2_gamma(2)


# ---- walks ----------------------------------------------------------------------

def _check_walk_independently(F, cert, A1, A2):
    vs = cert.vertices
    assert vs[0] == A1 and vs[-1] == A2
    for M in vs:
        assert hm.is_hermitian(F, M) and hm.det(F, M) == hm.det(F, A1)
    for a, b in zip(vs, vs[1:]):
        assert hm.rank(F, hm.mat_sub(F, a, b)) == 1


@pytest.mark.parametrize("q,n", [(4, 2), (4, 3), (5, 2), (5, 3), (7, 2), (8, 2), (9, 2), (4, 4)])
def test_equal_det_walk(q, n, rng):
    F = field(q)
    for _ in range(12):
        lam = rng.choice(F.fixed_nonzero())
        A1 = sampling.random_in_class(F, n, lam, rng)
        A2 = sampling.random_in_class(F, n, lam, rng)
        cert = equal_det_walk(F, A1, A2)
        assert cert.ok
        _check_walk_independently(F, cert, A1, A2)


def test_walk_trivial_and_errors(rng):
    F = field(4)
    A = sampling.random_in_class(F, 2, 1, rng)
    cert = equal_det_walk(F, A, A)
    assert cert.ok and cert.length == 0
    B = sampling.random_in_class(F, 2, F.fixed_nonzero()[1], rng)
    with pytest.raises(ValueError):
        equal_det_walk(F, A, B)
    with pytest.raises(ValueError):
        equal_det_walk(field(3), hm.identity(2), hm.identity(2))


def test_walks_inside_class_graph():
    """Every walk stays inside the BFS component of its class graph."""
    q = 4
    F = field(q)
    G = graphs.build_hgl(q, 2)
    mats = graphs.vertex_matrices(G)
    idx = graphs.label_index(G)
    rng = random.Random(7)
    for lam in F.fixed_nonzero():
        H, keep, rep = graphs.det_class_subgraph(G, lam)
        assert rep.connected and rep.vertices == 68
        members = set(keep)
        for _ in range(20):
            i, j = rng.sample(keep, 2)
            cert = equal_det_walk(F, mats[i], mats[j])
            path = [idx[hm.encode(F, M)] for M in cert.vertices]
            assert set(path) <= members
            assert all(G.has_edge(a, b) for a, b in zip(path, path[1:]))


def test_random_in_class(rng):
    for q in (3, 4, 5):
        F = field(q)
        for lam in F.fixed_nonzero():
            A = sampling.random_in_class(F, 3, lam, rng)
            assert hm.is_hermitian(F, A) and hm.det(F, A) == lam
