"""Walks between invertible hermitian matrices of equal determinant.

The construction has three layers. `unit_walk` joins I + (lam-1) y1 y1* to
I + (lam-1) y2 y2* for unit vectors y1, y2. `bridge_walk` joins two matrices
of the class through a common invertible neighbour B by moving to the frame
B = P P* and calling `unit_walk` in the class lam / det B. `equal_det_walk`
builds a scaffold A1 = B_0, B_1, ..., B_2m = A2 whose even members lie in the
class and whose odd members are invertible neighbours, then bridges every
even-odd-even triple.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .. import hermat as hm
from ..gf import GF


class WalkError(ArithmeticError):
    pass


@dataclass
class WalkCertificate:
    vertices: list
    det_class: int
    step_kinds: list[str]
    scaffold_length: int = 0
    notes: list[str] = dc_field(default_factory=list)
    checks: dict = dc_field(default_factory=dict)

    @property
    def length(self) -> int:
        return max(len(self.vertices) - 1, 0)

    @property
    def ok(self) -> bool:
        return bool(self.checks) and all(self.checks.values())

    def as_dict(self, F: GF | None = None) -> dict:
        out = {
            "det_class": self.det_class,
            "length": self.length,
            "step_kinds": list(self.step_kinds),
            "scaffold_length": self.scaffold_length,
            "notes": list(self.notes),
            "checks": dict(self.checks),
        }
        out["vertices"] = [[list(r) for r in M] for M in self.vertices]
        return out


def check_walk(F: GF, vertices, lam: int, start, end) -> dict:
    """Recompute every claimed property of a walk from scratch."""
    vs = [tuple(tuple(r) for r in M) for M in vertices]
    return {
        "endpoints": bool(vs) and vs[0] == tuple(start) and vs[-1] == tuple(end),
        "hermitian": all(hm.is_hermitian(F, M) for M in vs),
        "determinants": all(hm.det(F, M) == lam for M in vs),
        "adjacent_steps": all(hm.rank(F, hm.mat_sub(F, a, b)) == 1 for a, b in zip(vs, vs[1:])),
    }


# ---- walk pieces ----------------------------------------------------------------

class _Walk:
    """Vertex list with one label per hop; consecutive repeats are dropped."""

    def __init__(self, start):
        self.vertices = [start]
        self.kinds: list[str] = []

    def add(self, M, kind: str) -> None:
        if M != self.vertices[-1]:
            self.vertices.append(M)
            self.kinds.append(kind)

    def extend(self, other: "_Walk") -> None:
        if other.vertices[0] != self.vertices[-1]:
            raise WalkError("walks do not meet")
        for M, k in zip(other.vertices[1:], other.kinds):
            self.add(M, k)

    def reversed(self) -> "_Walk":
        w = _Walk(self.vertices[-1])
        for M, k in zip(reversed(self.vertices[:-1]), reversed(self.kinds)):
            w.add(M, k)
        return w

    def mapped(self, fn, prefix: str) -> "_Walk":
        w = _Walk(fn(self.vertices[0]))
        for M, k in zip(self.vertices[1:], self.kinds):
            w.add(fn(M), f"{prefix}/{k}")
        return w


def _unit_matrix(F: GF, lam: int, y) -> hm.Matrix:
    n = len(y)
    return hm.mat_add(F, hm.identity(n), hm.rank_one(F, F.sub(lam, 1), y))


def _direct_unit_walk(F: GF, lam: int, y1, y2) -> _Walk:
    """Cases 1 and 2 of the unit-vector step (N(y1* y2) != 1 or y1 y1* = y2 y2*)."""
    A1 = _unit_matrix(F, lam, y1)
    A2 = _unit_matrix(F, lam, y2)
    walk = _Walk(A1)
    if A1 == A2:
        return walk
    s = hm.inner(F, y1, y2)
    Ns = F.norm(s)
    if Ns == 0:
        a1 = F.norm_root(F.neg(lam))
        a2 = F.norm_root(1)
        c = F.norm_root(F.inv(lam))
        b1 = F.mul(a1, c)
        b2 = F.mul(a2, F.conj(F.inv(c)))
        w = hm.lincomb(F, [a1, a2], [y1, y2])
        wp = hm.lincomb(F, [b1, b2], [y1, y2])
        walk.add(hm.mat_add(F, A1, hm.outer(F, w, w)), "unit-orthogonal")
        walk.add(hm.mat_add(F, A2, hm.outer(F, wp, wp)), "unit-orthogonal")
        walk.add(A2, "unit-orthogonal")
        return walk
    if Ns == 1:
        raise WalkError("direct construction needs N(y1* y2) != 1")
    a2 = F.inv(s)
    target = F.mul(lam, F.sub(1, F.norm(a2)))
    a1 = next(
        (a for a in F.elements() if F.norm(F.add(1, a)) == target and F.norm(a) != F.norm(a2)),
        None,
    )
    if a1 is None:
        raise WalkError("no admissible a1")
    mu = F.div(F.sub(lam, 1), F.sub(F.norm(a2), F.norm(a1)))
    w = hm.lincomb(F, [a1, a2], [y1, y2])
    walk.add(hm.mat_add(F, A1, hm.rank_one(F, mu, w)), "unit-generic")
    walk.add(A2, "unit-generic")
    return walk


def _detour_vector(F: GF, y):
    """A unit z with N(z* y) != 1 and N(z_1) != 1, changing two coordinates of y."""
    n = len(y)
    k = next((k for k in range(1, n) if y[k]), None)
    if k is None:
        raise WalkError("vector is a multiple of e1")
    total = F.add(F.norm(y[0]), F.norm(y[k]))
    for v1 in F.elements():
        if F.norm(v1) in (1, total):
            continue
        for v2 in F.norm_preimage(F.sub(total, F.norm(v1))):
            z = list(y)
            z[0], z[k] = v1, v2
            z = tuple(z)
            if hm.inner(F, z, z) == 1 and F.norm(hm.inner(F, z, y)) != 1:
                return z
    raise WalkError("no detour vector")


def _walk_to_e1(F: GF, lam: int, y) -> _Walk:
    n = len(y)
    e1 = hm.unit_vector(n, 0)
    if F.norm(y[0]) != 1:
        return _direct_unit_walk(F, lam, y, e1)
    if _unit_matrix(F, lam, y) == _unit_matrix(F, lam, e1):
        return _Walk(_unit_matrix(F, lam, y))
    z = _detour_vector(F, y)
    w = _direct_unit_walk(F, lam, y, z)
    w.extend(_direct_unit_walk(F, lam, z, e1))
    return w


def unit_walk(F: GF, lam: int, y1, y2) -> _Walk:
    """Walk inside det = lam from I + (lam-1) y1 y1* to I + (lam-1) y2 y2*, y_i* y_i = 1."""
    if hm.inner(F, y1, y1) != 1 or hm.inner(F, y2, y2) != 1:
        raise ValueError("unit vectors required")
    if lam == 1:
        return _Walk(hm.identity(len(y1)))
    if F.norm(hm.inner(F, y1, y2)) != 1 or _unit_matrix(F, lam, y1) == _unit_matrix(F, lam, y2):
        return _direct_unit_walk(F, lam, y1, y2)
    w = _walk_to_e1(F, lam, y1)
    w.extend(_walk_to_e1(F, lam, y2).reversed())
    return w


def bridge_walk(F: GF, lam: int, E1, O, E2) -> _Walk:
    """Walk in det = lam from E1 to E2 when O is an invertible matrix adjacent or equal to both."""
    walk = _Walk(E1)
    if E1 == E2:
        return walk
    if O == E1 or O == E2 or hm.det(F, O) == lam:
        walk.add(O, "scaffold")
        walk.add(E2, "scaffold")
        return walk
    dO = hm.det(F, O)
    if dO == 0:
        raise WalkError("bridge matrix is singular")
    P = hm.factor_invertible(F, O)
    Pinv = hm.inverse(F, P)
    Pinv_star = hm.star(F, Pinv)
    lam_local = F.div(lam, dO)
    c = F.norm_root(F.inv(F.sub(lam_local, 1)))
    ys = []
    for E in (E1, E2):
        D = hm.mat_mul(F, Pinv, hm.mat_mul(F, hm.mat_sub(F, E, O), Pinv_star))
        beta, x = hm.factor_rank_one(F, D)
        xs = hm.vec_scale(F, F.norm_root(beta), x)
        ys.append(hm.vec_scale(F, c, xs))
    local = unit_walk(F, lam_local, ys[0], ys[1])
    mapped = local.mapped(lambda M: hm.congruence(F, P, M), "frame")
    if mapped.vertices[0] != E1 or mapped.vertices[-1] != E2:
        raise WalkError("frame change does not reproduce the endpoints")
    return mapped


def common_neighbour(F: GF, lam: int, B, D):
    """An invertible C adjacent or equal to both B and D (rank(D - B) <= 2)."""
    diff = hm.mat_sub(F, D, B)
    span = hm.rank_one_terms(F, diff)
    if len(span) > 2:
        raise WalkError("matrices are too far apart")
    from ..varpolar import span_vectors

    seen = set()
    for w in span_vectors(F, span):
        if not any(w):
            continue
        w = hm.normalize_vector(F, w)
        if w in seen:
            continue
        seen.add(w)
        for beta in F.fixed_nonzero():
            C = hm.mat_add(F, B, hm.rank_one(F, beta, w))
            if hm.det(F, C) and hm.rank(F, hm.mat_sub(F, D, C)) <= 1:
                return C
    raise WalkError("no common invertible neighbour")


# ---- scaffold ---------------------------------------------------------------

def _weighted(F: GF, terms) -> hm.Matrix:
    n = len(terms[0][1])
    M = hm.zeros(n)
    for c, v in terms:
        M = hm.mat_add(F, M, hm.rank_one(F, c, v))
    return M


def _drop_candidate(F: GF, zs, ys_known, y_new):
    """Index of a z whose removal keeps (other z's, y_known, y_new) a basis."""
    for d in range(len(zs)):
        rest = [z for i, z in enumerate(zs) if i != d]
        if hm.vectors_rank(F, rest + ys_known + [y_new]) == len(y_new):
            return d
    raise WalkError("exchange step failed")


def scaffold(F: GF, A1, A2, lam: int):
    """Matrices B_0..B_2m with rank(B_{i+1} - B_i) <= 1, det B_2i = lam, B_odd invertible."""
    n = len(A1)
    xs = hm.rank_one_terms(F, A1)
    ys = hm.rank_one_terms(F, A2)
    if len(xs) != n or len(ys) != n:
        raise WalkError("endpoint is singular")
    B = [A1]
    labels = []
    zs = list(xs)
    alphas: list[int] = []

    def current():
        return _weighted(F, [(1, z) for z in zs] + list(zip(alphas, ys)))

    for k in range(n - 1):
        y = ys[k]
        Bk = current()
        d = _drop_candidate(F, zs, ys[:k], y)
        keep = [i for i in range(len(zs)) if i != d]
        choice = None
        for piv in keep:
            zp = zs[piv]
            for a in F.fixed_nonzero():
                B1 = hm.mat_add(F, Bk, hm.rank_one(F, a, y))
                if hm.det(F, B1) == 0:
                    continue
                s = hm.form(F, zp, hm.inverse(F, B1), zp)
                if s:
                    choice = (piv, a, B1, s)
                    break
            if choice:
                break
        if choice is None:
            raise WalkError("no admissible alpha")
        piv, a, B1, s = choice
        alphas.append(a)
        eta = F.add(1, F.div(F.sub(F.div(lam, hm.det(F, B1)), 1), s))
        B2 = hm.mat_add(F, B1, hm.rank_one(F, F.sub(eta, 1), zs[piv]))
        B.extend([B1, B2])
        if eta != 0:
            B3 = hm.mat_sub(F, B2, hm.outer(F, zs[d], zs[d]))
            nu = F.div(F.mul(eta, lam), hm.det(F, B3))
            B4 = hm.mat_add(F, B3, hm.rank_one(F, F.sub(nu, eta), zs[piv]))
            B.extend([B3, B4])
            zpiv = hm.vec_scale(F, F.norm_root(nu), zs[piv])
            zs = [zpiv if i == piv else zs[i] for i in keep]
            labels.append(f"round{k + 1}:exchange")
        else:
            zs = [z for i, z in enumerate(zs) if i != piv]
            labels.append(f"round{k + 1}:pivot-vanished")
        if current() != B[-1]:
            raise WalkError("scaffold bookkeeping diverged")
    # last round: fix alpha_n so that sum alpha_i y_i y_i* already has det lam
    prod = 1
    for a in alphas:
        prod = F.mul(prod, a)
    a_last = F.inv(prod)
    Bk = current()
    alphas.append(a_last)
    target = _weighted(F, list(zip(alphas, ys)))
    odd = hm.mat_add(F, Bk, hm.rank_one(F, a_last, ys[-1]))
    if hm.det(F, odd) == 0 and hm.rank(F, hm.mat_sub(F, target, Bk)) <= 1:
        odd = target
        labels.append(f"round{n}:direct")
    elif hm.det(F, odd) == 0:
        odd = common_neighbour(F, lam, Bk, target)
        labels.append(f"round{n}:common-neighbour")
    else:
        labels.append(f"round{n}:closing")
    B.extend([odd, target])
    # tail: turn the alpha weights into ones, one vector at a time
    merged = alphas[0]
    for j in range(n - 1):
        odd = _weighted(F, list(zip([1] * (j + 1) + alphas[j + 1:], ys)))
        merged = F.mul(merged, alphas[j + 1])
        even = _weighted(F, list(zip([1] * (j + 1) + [merged] + alphas[j + 2:], ys)))
        B.extend([odd, even])
    labels.append("tail")
    if B[-1] != A2:
        raise WalkError("scaffold does not end at A2")
    return B, labels


def _scaffold_ok(F: GF, B, lam: int) -> bool:
    for i, M in enumerate(B):
        d = hm.det(F, M)
        if i % 2 == 0 and d != lam:
            return False
        if i % 2 == 1 and d == 0:
            return False
    return all(hm.rank(F, hm.mat_sub(F, a, b)) <= 1 for a, b in zip(B, B[1:]))


def equal_det_walk(F: GF, A1, A2) -> WalkCertificate:
    """Certified walk from A1 to A2 inside the determinant class of A1."""
    if F.q < 4:
        raise ValueError("the construction needs q >= 4")
    A1 = tuple(tuple(r) for r in A1)
    A2 = tuple(tuple(r) for r in A2)
    lam = hm.det(F, A1)
    if lam == 0 or hm.det(F, A2) != lam:
        raise ValueError("endpoints need equal nonzero determinants")
    if A1 == A2:
        cert = WalkCertificate([A1], lam, [], 0)
        cert.checks = check_walk(F, [A1], lam, A1, A2)
        return cert
    B, labels = scaffold(F, A1, A2, lam)
    walk = _Walk(A1)
    for i in range(0, len(B) - 1, 2):
        walk.extend(bridge_walk(F, lam, B[i], B[i + 1], B[i + 2]))
    cert = WalkCertificate(walk.vertices, lam, walk.kinds, len(B) - 1, labels)
    cert.checks = check_walk(F, walk.vertices, lam, A1, A2)
    cert.checks["scaffold"] = _scaffold_ok(F, B, lam)
    return cert
