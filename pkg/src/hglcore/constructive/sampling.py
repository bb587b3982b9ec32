"""Random admissible inputs for the transporters."""

from __future__ import annotations

import random

from .. import hermat as hm
from ..gf import GF


def random_isotropic(F: GF, n: int, rng: random.Random, A: hm.Matrix | None = None) -> hm.Vector:
    """Nonzero x with x* A x = 0 (A = I by default)."""
    while True:
        x = hm.random_vector(F, n, rng)
        v = hm.inner(F, x, x) if A is None else hm.form(F, x, A, x)
        if v == 0:
            return x


def random_nonorthogonal_pair(F: GF, n: int, rng: random.Random):
    """Independent isotropic x, y with x* y != 0."""
    while True:
        x = random_isotropic(F, n, rng)
        y = random_isotropic(F, n, rng)
        if hm.inner(F, x, y) and hm.vectors_rank(F, [x, y]) == 2:
            return x, y


def random_orthogonal_pair(F: GF, n: int, rng: random.Random):
    """Independent x, y spanning a totally isotropic plane (needs n >= 4)."""
    if n < 4:
        raise ValueError("totally isotropic planes need n >= 4")
    while True:
        x = random_isotropic(F, n, rng)
        ker = hm.kernel(F, [hm.conj_vec(F, x)], n)
        for _ in range(64):
            y = hm.lincomb(F, [rng.randrange(F.order) for _ in ker], ker)
            if any(y) and hm.inner(F, y, y) == 0 and hm.vectors_rank(F, [x, y]) == 2:
                return x, y


def random_clique_pair(F: GF, A: hm.Matrix, rng: random.Random, orthogonal: bool):
    """Directions x, y of two distinct q-cliques of A, A-orthogonal or not as requested."""
    n = len(A)
    Q = hm.factor_invertible(F, A)
    pair = random_orthogonal_pair(F, n, rng) if orthogonal else random_nonorthogonal_pair(F, n, rng)
    # x*A^-1 x = (Q^-1 x)*(Q^-1 x), so directions are Q times isotropic vectors
    return tuple(hm.mat_vec(F, Q, v) for v in pair)


def random_in_class(F: GF, n: int, lam: int, rng: random.Random) -> hm.Matrix:
    """Random invertible hermitian matrix with determinant lam."""
    A = hm.random_invertible_hermitian(F, n, rng)
    c = F.norm_root(F.div(lam, hm.det(F, A)))
    D = hm.diag([c] + [1] * (n - 1))
    return hm.congruence(F, D, A)
