"""Orthonormal vectors and unitary frames over GF(q^2)."""

from __future__ import annotations

from typing import Sequence

from .. import hermat as hm
from ..gf import GF


def gram(F: GF, vecs: Sequence[hm.Vector]) -> hm.Matrix:
    return tuple(tuple(hm.inner(F, u, v) for v in vecs) for u in vecs)


def is_orthonormal(F: GF, vecs: Sequence[hm.Vector]) -> bool:
    return gram(F, vecs) == hm.identity(len(vecs))


def is_unitary(F: GF, P: hm.Matrix) -> bool:
    return hm.mat_mul(F, hm.star(F, P), P) == hm.identity(len(P))


def _non_isotropic(F: GF, basis: list[hm.Vector]) -> hm.Vector:
    """A vector of span(basis) with y* y != 0."""
    for z in basis:
        if hm.inner(F, z, z):
            return z
    # all basis vectors isotropic: (z_s + c z_t)*(z_s + c z_t) = Tr(c z_s* z_t)
    theta = next(t for t in F.nonzero() if F.trace(t))
    for s, zs in enumerate(basis):
        for zt in basis[s + 1:]:
            w = hm.inner(F, zs, zt)
            if w:
                c = F.div(theta, w)
                y = hm.vec_add(F, zs, hm.vec_scale(F, c, zt))
                assert hm.inner(F, y, y)
                return y
    raise ArithmeticError("subspace is totally isotropic")


def orthonormal_complete(F: GF, X: Sequence[hm.Vector], n: int) -> list[hm.Vector]:
    """Extend orthonormal vectors to an orthonormal basis of GF(q^2)^n.

    Each new vector comes from the kernel of the matrix with rows x_i*: a
    kernel vector y with y* y != 0 is scaled by some a with N(a) = 1/(y* y).
    """
    basis = [tuple(x) for x in X]
    if len(basis) > n or any(len(x) != n for x in basis):
        raise ValueError("vectors do not fit in dimension n")
    if not is_orthonormal(F, basis):
        raise ValueError("input vectors are not orthonormal")
    while len(basis) < n:
        rows = [hm.conj_vec(F, x) for x in basis]
        ker = hm.kernel(F, rows, n) if rows else [hm.unit_vector(n, i) for i in range(n)]
        y = _non_isotropic(F, ker)
        a = F.norm_root(F.inv(hm.inner(F, y, y)))
        basis.append(hm.vec_scale(F, a, y))
    assert is_orthonormal(F, basis)
    return basis
