"""Unitary transporters for isotropic vectors, isotropic pairs and q-clique pairs."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .. import hermat as hm
from ..gf import GF
from .frames import is_unitary, orthonormal_complete


@dataclass
class TransportCertificate:
    P: hm.Matrix
    scale: int = 1
    checks: dict = dc_field(default_factory=dict)
    branch: list[str] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def as_dict(self) -> dict:
        return {
            "P": [list(r) for r in self.P],
            "scale": self.scale,
            "checks": dict(self.checks),
            "branch": list(self.branch),
        }


def minus_one_norm(F: GF, avoid_one: bool = False) -> int:
    """First a (generator order) with N(a) = -1, optionally a != 1."""
    for a in F.norm_preimage(F.neg(1)):
        if not (avoid_one and a == 1):
            return a
    raise ArithmeticError("no element of norm -1")


def _isotropic(F: GF, x: hm.Vector) -> bool:
    return hm.inner(F, x, x) == 0


def _require_isotropic(F: GF, *vecs: hm.Vector) -> None:
    for v in vecs:
        if not any(v):
            raise ValueError("vectors must be nonzero")
        if not _isotropic(F, v):
            raise ValueError("vectors must be isotropic")


# ---- single isotropic vectors ----------------------------------------------

def _unit_partner(F: GF, y: hm.Vector, a: int) -> tuple[hm.Vector, str]:
    """z with z* z = 1 and z* y = a for a nonzero isotropic y."""
    n = len(y)
    zero = [k for k in range(n) if y[k] == 0]
    if zero:
        k = zero[0]
        i0 = next(i for i in range(n) if y[i])
        z = [0] * n
        z[i0] = F.conj(F.div(a, y[i0]))
        z[k] = F.norm_root(F.sub(1, F.norm(z[i0])))
        return tuple(z), "zero-coordinate"
    norms = [F.norm(v) for v in y]
    pair = next(((i, j) for i in range(n) for j in range(i + 1, n) if F.add(norms[i], norms[j]) == 0), None)
    if pair is not None:
        i, j = pair
        c = F.mul(a, F.conj(y[j]))
        zj = F.div(F.trace_root(F.sub(norms[j], 1)), c)
        zi = F.div(F.sub(F.conj(a), F.mul(zj, F.conj(y[j]))), F.conj(y[i]))
        z = [0] * n
        z[i], z[j] = zi, zj
        return tuple(z), "cancelling-pair"
    # every coordinate nonzero and no cancelling pair, so n >= 3
    v = y[2:]
    u = [0] * (n - 2)
    u[0] = F.conj(F.div(a, v[0]))
    uu = hm.inner(F, u, u)
    ratio = F.add(F.div(norms[1], norms[0]), 1)
    z2 = F.norm_root(F.div(F.sub(1, uu), ratio))
    z1 = F.neg(F.mul(z2, F.conj(F.div(y[1], y[0]))))
    return (z1, z2, *u), "generic"


def frame_from_standard(F: GF, y: hm.Vector, a: int) -> tuple[hm.Matrix, str]:
    """Unitary P with P (1, a, 0, ..., 0) = y for isotropic y, N(a) = -1."""
    z, case = _unit_partner(F, y, a)
    assert hm.inner(F, z, z) == 1 and hm.inner(F, z, y) == a
    x1 = hm.vec_sub(F, y, hm.vec_scale(F, a, z))
    cols = orthonormal_complete(F, [x1, z], len(y))
    return hm.from_columns(cols), case


def standard_isotropic(F: GF, n: int, a: int) -> hm.Vector:
    return (1, a) + (0,) * (n - 2)


def transport_isotropic(F: GF, x: hm.Vector, y: hm.Vector) -> TransportCertificate:
    """Unitary P with P x = y for nonzero isotropic x, y."""
    _require_isotropic(F, x, y)
    if len(x) != len(y) or len(x) < 2:
        raise ValueError("vectors must share a dimension n >= 2")
    a = minus_one_norm(F)
    P1, c1 = frame_from_standard(F, y, a)
    P2, c2 = frame_from_standard(F, x, a)
    P = hm.mat_mul(F, P1, hm.star(F, P2))
    cert = TransportCertificate(P, 1, branch=[c1, c2])
    cert.checks = {"unitary": is_unitary(F, P), "image": hm.mat_vec(F, P, x) == tuple(y)}
    return cert


# ---- orthogonal isotropic pairs (n >= 4) ---------------------------------------

def fourbyfour_block(F: GF, a: int, d: int) -> hm.Matrix:
    ca = F.conj(a)
    cd = F.conj(d)
    return (
        (F.sub(F.scalar(2), d), F.conj(F.mul(a, d)), F.neg(ca), 0),
        (F.mul(a, cd), d, 1, 0),
        (0, 0, 0, F.neg(F.mul(ca, ca))),
        (a, F.neg(1), 1, 0),
    )


def unit_trace(F: GF) -> int:
    """First d (generator order) with Tr(d) = 1."""
    return next(d for d in F.nonzero() if F.trace(d) == 1)


def _embed(F: GF, R: hm.Matrix, n: int) -> hm.Matrix:
    return hm.direct_sum(hm.identity(n - len(R)), R)


def _pair_standard_step(F: GF, y2: hm.Vector, a: int) -> tuple[hm.Matrix, int, str]:
    """P, b with P u0 = u0 and P w0 = b y2, u0 = e1 + a e2, w0 = e3 + a e4."""
    n = len(y2)
    u1, u2, u = y2[0], y2[1], tuple(y2[2:])
    if u2 == 0:
        R = transport_isotropic(F, standard_isotropic(F, n - 2, a), u).P
        return _embed(F, R, n), 1, "u2-zero"
    iu2 = F.inv(u2)
    src = (F.conj(a), 1) + (0,) * (n - 4)
    R = transport_isotropic(F, src, hm.vec_scale(F, iu2, u)).P
    Q = hm.direct_sum(fourbyfour_block(F, a, unit_trace(F)), hm.identity(n - 4))
    return hm.mat_mul(F, _embed(F, R, n), Q), iu2, "u2-nonzero"


def _check_pair(F, P, b, x1, y1, x2, y2) -> dict:
    return {
        "unitary": is_unitary(F, P),
        "x_image": hm.mat_vec(F, P, x1) == tuple(x2),
        "y_image": hm.mat_vec(F, P, y1) == hm.vec_scale(F, b, y2),
        "scale_nonzero": b != 0,
    }


def transport_pair_orthogonal(F: GF, x1, y1, x2, y2) -> TransportCertificate:
    """Unitary P and b != 0 with P x1 = x2, P y1 = b y2 for totally isotropic pairs."""
    n = len(x1)
    if n < 4:
        raise ValueError("orthogonal isotropic pairs need n >= 4")
    for x, y in ((x1, y1), (x2, y2)):
        _require_isotropic(F, x, y)
        if hm.inner(F, x, y) != 0:
            raise ValueError("pairs must be orthogonal")
        if hm.vectors_rank(F, [x, y]) != 2:
            raise ValueError("pairs must be linearly independent")
    a = minus_one_norm(F)
    u0 = standard_isotropic(F, n, a)

    def fixed_u0(ya, yb):
        # P u0 = u0, P ya = b yb
        P1, b1, c1 = _pair_standard_step(F, ya, a)
        P2, b2, c2 = _pair_standard_step(F, yb, a)
        return hm.mat_mul(F, P2, hm.star(F, P1)), F.div(b2, b1), [c1, c2]

    def fixed_x(x, ya, yb):
        Q = transport_isotropic(F, x, u0).P
        R, b, br = fixed_u0(hm.mat_vec(F, Q, ya), hm.mat_vec(F, Q, yb))
        return hm.mat_mul(F, hm.star(F, Q), hm.mat_mul(F, R, Q)), b, br

    Q = transport_isotropic(F, x1, x2).P
    R, b, branch = fixed_x(x2, hm.mat_vec(F, Q, y1), y2)
    P = hm.mat_mul(F, R, Q)
    return TransportCertificate(P, b, _check_pair(F, P, b, x1, y1, x2, y2), branch)


# ---- non-orthogonal isotropic pairs --------------------------------------------

def nonorthogonal_frame_vectors(F: GF, x: hm.Vector, y: hm.Vector, a: int) -> tuple[hm.Vector, hm.Vector]:
    """The two orthonormal vectors t1, t2 built from an isotropic pair with x* y != 0."""
    s = hm.inner(F, x, y)
    if F.p != 2:
        half = F.inv(F.scalar(2))
        ca = F.conj(a)
        t1 = hm.lincomb(F, [half, F.inv(s)], [x, y])
        t2 = hm.lincomb(F, [F.mul(ca, half), F.neg(F.div(ca, s))], [x, y])
    else:
        one_a2 = F.add(1, F.mul(a, a))
        tr = F.trace(a)
        t1 = hm.lincomb(F, [F.div(tr, one_a2), F.div(a, F.mul(one_a2, s))], [x, y])
        t2 = hm.lincomb(F, [F.div(F.mul(a, tr), one_a2), F.inv(F.mul(one_a2, s))], [x, y])
    return t1, t2


def transport_pair_nonorthogonal(F: GF, x1, y1, x2, y2) -> TransportCertificate:
    """Unitary P with P x1 = x2 and P y1 = b y2, b = (x1* y1)/(x2* y2)."""
    n = len(x1)
    for x, y in ((x1, y1), (x2, y2)):
        _require_isotropic(F, x, y)
        if hm.inner(F, x, y) == 0:
            raise ValueError("pairs must be non-orthogonal")
        if hm.vectors_rank(F, [x, y]) != 2:
            raise ValueError("pairs must be linearly independent")
    a = minus_one_norm(F, avoid_one=True)
    frames = []
    grams_ok = True
    for x, y in ((x1, y1), (x2, y2)):
        t1, t2 = nonorthogonal_frame_vectors(F, x, y, a)
        grams_ok = grams_ok and hm.inner(F, t1, t1) == 1 == hm.inner(F, t2, t2) and hm.inner(F, t1, t2) == 0
        frames.append(hm.from_columns(orthonormal_complete(F, [t1, t2], n)))
    R1, R2 = frames
    P = hm.mat_mul(F, R2, hm.star(F, R1))
    b = F.div(hm.inner(F, x1, y1), hm.inner(F, x2, y2))
    checks = _check_pair(F, P, b, x1, y1, x2, y2)
    checks["frame_orthonormal"] = grams_ok
    return TransportCertificate(P, b, checks, ["odd" if F.p != 2 else "even"])


# ---- pairs of q-cliques ------------------------------------------------------

def clique_set(F: GF, A: hm.Matrix, x: hm.Vector) -> frozenset:
    from ..cliques import clique_members

    return frozenset(clique_members(F, A, x))


def transport_cliques(F: GF, A1, x1, y1, A2, x2, y2) -> TransportCertificate:
    """Congruence P with P A1 P* = A2 moving the q-cliques of (x1, y1) onto those of (x2, y2)."""
    Q1 = hm.factor_invertible(F, A1)
    Q2 = hm.factor_invertible(F, A2)
    orth = []
    for A, x, y in ((A1, x1, y1), (A2, x2, y2)):
        Ainv = hm.inverse(F, A)
        if hm.form(F, x, Ainv, x) or hm.form(F, y, Ainv, y):
            raise ValueError("directions must span q-cliques")
        if hm.vectors_rank(F, [x, y]) != 2:
            raise ValueError("cliques must be distinct")
        orth.append(hm.form(F, x, Ainv, y) == 0)
    if orth[0] != orth[1]:
        raise ValueError("clique pairs differ in orthogonality")
    Q1inv = hm.inverse(F, Q1)
    Q2inv = hm.inverse(F, Q2)
    z1, w1 = hm.mat_vec(F, Q1inv, x1), hm.mat_vec(F, Q1inv, y1)
    z2, w2 = hm.mat_vec(F, Q2inv, x2), hm.mat_vec(F, Q2inv, y2)
    inner = (transport_pair_orthogonal if orth[0] else transport_pair_nonorthogonal)(F, z1, w1, z2, w2)
    P = hm.mat_mul(F, Q2, hm.mat_mul(F, inner.P, Q1inv))

    def image(S):
        return frozenset(hm.congruence(F, P, M) for M in S)

    checks = {
        "inner_transport": inner.ok,
        "base_image": hm.congruence(F, P, A1) == tuple(A2),
        "x_clique_image": image(clique_set(F, A1, x1)) == clique_set(F, A2, x2),
        "y_clique_image": image(clique_set(F, A1, y1)) == clique_set(F, A2, y2),
    }
    return TransportCertificate(P, inner.scale, checks, ["orthogonal" if orth[0] else "non-orthogonal"] + inner.branch)
