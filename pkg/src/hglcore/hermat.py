"""Dense linear algebra over GF(q^2) for small hermitian matrices.

Matrices are tuples of row tuples and vectors are tuples (column vectors).
``star`` is the conjugate transpose, so ``x*`` for a vector is ``star_vec``
read as a row and ``inner(F, x, y)`` is ``x* y``.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterator, Sequence

from .gf import GF

Matrix = tuple[tuple[int, ...], ...]
Vector = tuple[int, ...]


class SingularMatrixError(ValueError):
    pass


# ---- constructors ---------------------------------------------------------

def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zeros(n: int, m: int | None = None) -> Matrix:
    return tuple((0,) * (n if m is None else m) for _ in range(n))


def diag(entries: Sequence[int]) -> Matrix:
    n = len(entries)
    return tuple(tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n))


def from_columns(cols: Sequence[Vector]) -> Matrix:
    return tuple(zip(*cols))


def columns(A: Matrix) -> list[Vector]:
    return [tuple(c) for c in zip(*A)]


def unit_vector(n: int, i: int) -> Vector:
    return tuple(1 if k == i else 0 for k in range(n))


def direct_sum(A: Matrix, B: Matrix) -> Matrix:
    n, m = len(A), len(B)
    top = tuple(tuple(row) + (0,) * m for row in A)
    bottom = tuple((0,) * n + tuple(row) for row in B)
    return top + bottom


# ---- elementwise and products ----------------------------------------------

def mat_add(F: GF, A: Matrix, B: Matrix) -> Matrix:
    add = F.add
    return tuple(tuple(add(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_sub(F: GF, A: Matrix, B: Matrix) -> Matrix:
    sub = F.sub
    return tuple(tuple(sub(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_scale(F: GF, c: int, A: Matrix) -> Matrix:
    mul = F.mul
    return tuple(tuple(mul(c, a) for a in row) for row in A)


def mat_mul(F: GF, A: Matrix, B: Matrix) -> Matrix:
    add, mul = F.add, F.mul
    cols = list(zip(*B))
    out = []
    for row in A:
        new = []
        for col in cols:
            s = 0
            for a, b in zip(row, col):
                if a and b:
                    s = add(s, mul(a, b))
            new.append(s)
        out.append(tuple(new))
    return tuple(out)


def mat_vec(F: GF, A: Matrix, x: Vector) -> Vector:
    add, mul = F.add, F.mul
    out = []
    for row in A:
        s = 0
        for a, b in zip(row, x):
            if a and b:
                s = add(s, mul(a, b))
        out.append(s)
    return tuple(out)


def star(F: GF, A: Matrix) -> Matrix:
    """Conjugate transpose."""
    conj = F.conj
    return tuple(tuple(conj(a) for a in col) for col in zip(*A))


def conj_matrix(F: GF, A: Matrix) -> Matrix:
    conj = F.conj
    return tuple(tuple(conj(a) for a in row) for row in A)


def conj_vec(F: GF, x: Vector) -> Vector:
    return tuple(F.conj(a) for a in x)


def vec_add(F: GF, x: Vector, y: Vector) -> Vector:
    return tuple(F.add(a, b) for a, b in zip(x, y))


def vec_sub(F: GF, x: Vector, y: Vector) -> Vector:
    return tuple(F.sub(a, b) for a, b in zip(x, y))


def vec_scale(F: GF, c: int, x: Vector) -> Vector:
    return tuple(F.mul(c, a) for a in x)


def lincomb(F: GF, coeffs: Sequence[int], vecs: Sequence[Vector]) -> Vector:
    n = len(vecs[0])
    out = [0] * n
    for c, v in zip(coeffs, vecs):
        if c:
            for i, a in enumerate(v):
                if a:
                    out[i] = F.add(out[i], F.mul(c, a))
    return tuple(out)


def inner(F: GF, x: Vector, y: Vector) -> int:
    """x* y = sum conj(x_i) y_i."""
    add, mul, conj = F.add, F.mul, F.conj
    s = 0
    for a, b in zip(x, y):
        if a and b:
            s = add(s, mul(conj(a), b))
    return s


def form(F: GF, x: Vector, A: Matrix, y: Vector) -> int:
    """x* A y."""
    return inner(F, x, mat_vec(F, A, y))


def outer(F: GF, x: Vector, y: Vector) -> Matrix:
    """x y*."""
    mul, conj = F.mul, F.conj
    cy = [conj(b) for b in y]
    return tuple(tuple(mul(a, b) for b in cy) for a in x)


def rank_one(F: GF, lam: int, x: Vector) -> Matrix:
    """lam * x x*."""
    return mat_scale(F, lam, outer(F, x, x))


def is_hermitian(F: GF, A: Matrix) -> bool:
    return star(F, A) == tuple(tuple(r) for r in A)


def is_zero_vec(x: Vector) -> bool:
    return not any(x)


# ---- elimination ----------------------------------------------------------

def _row_echelon(F: GF, rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int], int]:
    """In-place reduced row echelon form; returns (rows, pivot columns, det factor).

    The det factor is the product of pivots times the sign of the row
    permutation, which is the determinant when the matrix is square and of
    full rank.
    """
    add, mul, neg, inv = F.add, F.mul, F.neg, F.inv
    pivots: list[int] = []
    r = 0
    factor = 1
    nrows = len(rows)
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            factor = neg(factor)
        pv = rows[r][c]
        factor = mul(factor, pv)
        ipv = inv(pv)
        rows[r] = [mul(ipv, a) for a in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = neg(rows[i][c])
                rows[i] = [add(a, mul(f, b)) if b else a for a, b in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots, factor


def rank(F: GF, A: Matrix) -> int:
    if not A:
        return 0
    _, pivots, _ = _row_echelon(F, [list(r) for r in A], len(A[0]))
    return len(pivots)


def det(F: GF, A: Matrix) -> int:
    n = len(A)
    if n == 1:
        return A[0][0]
    if n == 2:
        return F.sub(F.mul(A[0][0], A[1][1]), F.mul(A[0][1], A[1][0]))
    _, pivots, factor = _row_echelon(F, [list(r) for r in A], n)
    return factor if len(pivots) == n else 0


def inverse(F: GF, A: Matrix) -> Matrix:
    n = len(A)
    rows = [list(r) + list(e) for r, e in zip(A, identity(n))]
    rows, pivots, _ = _row_echelon(F, rows, n)
    if len(pivots) < n:
        raise SingularMatrixError("matrix is singular")
    return tuple(tuple(r[n:]) for r in rows)


def kernel(F: GF, M: Sequence[Sequence[int]], ncols: int | None = None) -> list[Vector]:
    """Basis of {x : M x = 0}."""
    if ncols is None:
        ncols = len(M[0])
    if not M:
        return [unit_vector(ncols, i) for i in range(ncols)]
    rows, pivots, _ = _row_echelon(F, [list(r) for r in M], ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for r, pc in enumerate(pivots):
            x[pc] = F.neg(rows[r][f])
        basis.append(tuple(x))
    return basis


def solve_coordinates(F: GF, basis: Sequence[Vector], v: Vector) -> list[int] | None:
    """Coefficients c with sum c_i basis_i = v, or None if v is not in the span."""
    k = len(basis)
    rows = [[b[i] for b in basis] + [v[i]] for i in range(len(v))]
    rows, pivots, _ = _row_echelon(F, rows, k + 1)
    if k in pivots:
        return None
    coeffs = [0] * k
    for r, pc in enumerate(pivots):
        coeffs[pc] = rows[r][k]
    return coeffs


def vectors_rank(F: GF, vecs: Sequence[Vector]) -> int:
    if not vecs:
        return 0
    return rank(F, tuple(tuple(v) for v in vecs))


def adjacent(F: GF, A: Matrix, B: Matrix) -> bool:
    """True iff rank(A - B) == 1."""
    if len(A) != len(B):
        raise ValueError("dimension mismatch")
    return rank(F, mat_sub(F, A, B)) == 1


# ---- congruence normal form ----------------------------------------------

def congruence_diagonalize(F: GF, A: Matrix) -> tuple[Matrix, int]:
    """Return (P, r) with A = P diag(1,..,1,0,..,0) P*, r = rank A, P invertible.

    Symmetric elimination keeps E with E A E* = M.  A block whose diagonal
    vanishes gets a nonzero diagonal entry from e_i -> e_i + c e_j with
    Tr(c M_ij) != 0.
    """
    if not is_hermitian(F, A):
        raise ValueError("matrix is not hermitian")
    n = len(A)
    M = [list(r) for r in A]
    E = [list(r) for r in identity(n)]
    add, mul, neg, conj = F.add, F.mul, F.neg, F.conj

    def row_op(target: int, src: int, c: int) -> None:
        # M <- T M T*, E <- T E with T = I + c e_target e_src^T
        M[target] = [add(a, mul(c, b)) for a, b in zip(M[target], M[src])]
        cc = conj(c)
        for row in M:
            row[target] = add(row[target], mul(cc, row[src]))
        E[target] = [add(a, mul(c, b)) for a, b in zip(E[target], E[src])]

    def swap(i: int, j: int) -> None:
        M[i], M[j] = M[j], M[i]
        for row in M:
            row[i], row[j] = row[j], row[i]
        E[i], E[j] = E[j], E[i]

    one_trace = next(t for t in F.nonzero() if F.trace(t) != 0)
    k = 0
    while k < n:
        piv = next((i for i in range(k, n) if M[i][i]), None)
        if piv is None:
            off = next(((i, j) for i in range(k, n) for j in range(k, n) if i != j and M[i][j]), None)
            if off is None:
                break
            i, j = off
            # new diagonal at i is Tr(c M_ij) with conj-scaled row op
            c = F.div(one_trace, M[i][j])
            row_op(i, j, conj(c))
            piv = i
            assert M[i][i] != 0
        if piv != k:
            swap(piv, k)
        pv = F.inv(M[k][k])
        for i in range(k + 1, n):
            if M[i][k]:
                row_op(i, k, neg(mul(M[i][k], pv)))
        k += 1
    r = k
    scales = [F.norm_root(M[i][i]) for i in range(r)] + [1] * (n - r)
    Einv = inverse(F, tuple(tuple(row) for row in E))
    P = mat_mul(F, Einv, diag(scales))
    return P, r


def rank_one_terms(F: GF, A: Matrix) -> list[Vector]:
    """Vectors x_1..x_r with A = sum x_i x_i*."""
    P, r = congruence_diagonalize(F, A)
    return columns(P)[:r]


def factor_invertible(F: GF, A: Matrix) -> Matrix:
    """P with A = P P* for an invertible hermitian A."""
    P, r = congruence_diagonalize(F, A)
    if r != len(A):
        raise SingularMatrixError("matrix is singular")
    return P


def normalize_vector(F: GF, x: Vector) -> Vector:
    """Projective representative: first nonzero coordinate scaled to 1."""
    lead = next((a for a in x if a), None)
    if lead is None:
        raise ValueError("zero vector has no projective point")
    if lead == 1:
        return tuple(x)
    il = F.inv(lead)
    return tuple(F.mul(il, a) for a in x)


def factor_rank_one(F: GF, D: Matrix) -> tuple[int, Vector]:
    """Write a rank-one hermitian D as lam * x x* with x normalized."""
    col = next((c for c in zip(*D) if any(c)), None)
    if col is None:
        raise ValueError("zero matrix")
    x = normalize_vector(F, col)
    i0 = next(i for i, a in enumerate(x) if a)
    lam = D[i0][i0]
    if not F.is_fixed(lam) or rank_one(F, lam, x) != tuple(tuple(r) for r in D):
        raise ValueError("matrix is not a rank-one hermitian matrix")
    return lam, x


# ---- rank-one update calculus ---------------------------------------------

def _require_invertible(F: GF, A: Matrix) -> Matrix:
    try:
        return inverse(F, A)
    except SingularMatrixError:
        raise SingularMatrixError("A must be invertible") from None


def det_rank_one_update(F: GF, A: Matrix, x: Vector, lam: int) -> int:
    """det(A + lam x x*) via (det A)(1 + lam x* A^-1 x)."""
    Ainv = _require_invertible(F, A)
    s = form(F, x, Ainv, x)
    return F.mul(det(F, A), F.add(1, F.mul(lam, s)))


def update_invertible(F: GF, A: Matrix, x: Vector, lam: int) -> bool:
    """Whether A + lam x x* is invertible: lam x* A^-1 x != -1."""
    Ainv = _require_invertible(F, A)
    return F.mul(lam, form(F, x, Ainv, x)) != F.neg(1)


def inverse_rank_one_update(F: GF, A: Matrix, x: Vector, lam: int, Ainv: Matrix | None = None) -> Matrix:
    """(A + lam x x*)^-1 = A^-1 - lam/(1 + lam x*A^-1 x) (A^-1 x)(A^-1 x)*."""
    if Ainv is None:
        Ainv = _require_invertible(F, A)
    u = mat_vec(F, Ainv, x)
    denom = F.add(1, F.mul(lam, inner(F, x, u)))
    if denom == 0:
        raise SingularMatrixError("A + lam x x* is singular")
    c = F.div(lam, denom)
    return mat_sub(F, Ainv, rank_one(F, c, u))


def det_tensor_scale(F: GF, alphas: Sequence[int], xs: Sequence[Vector]) -> tuple[int, int]:
    """Both sides of det(sum a_i x_i x_i*) = det(sum x_i x_i*) * prod a_i."""
    if len(alphas) != len(xs):
        raise ValueError("need one scalar per vector")
    n = len(xs[0])
    if len(xs) != n:
        raise ValueError("need exactly n vectors")
    weighted = zeros(n)
    plain = zeros(n)
    for a, x in zip(alphas, xs):
        xx = outer(F, x, x)
        weighted = mat_add(F, weighted, mat_scale(F, a, xx))
        plain = mat_add(F, plain, xx)
    prod = 1
    for a in alphas:
        prod = F.mul(prod, a)
    return det(F, weighted), F.mul(det(F, plain), prod)


# ---- enumeration, encoding, sampling ----------------------------------------

def hermitian_matrices(F: GF, n: int) -> Iterator[Matrix]:
    """All n x n hermitian matrices, diagonal from the fixed field."""
    fixed = F.fixed_field()
    npairs = n * (n - 1) // 2
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for d in itertools.product(fixed, repeat=n):
        for off in itertools.product(range(F.order), repeat=npairs):
            M = [[0] * n for _ in range(n)]
            for i in range(n):
                M[i][i] = d[i]
            for (i, j), a in zip(pairs, off):
                M[i][j] = a
                M[j][i] = F.conj(a)
            yield tuple(tuple(r) for r in M)


def count_hermitian(q: int, n: int) -> int:
    return q ** (n * n)


def count_invertible_hermitian(q: int, n: int) -> int:
    out = q ** (n * (n - 1) // 2)
    for i in range(1, n + 1):
        out *= q ** i + (-1) ** i
    return out


def _entry_code(F: GF, a: int) -> int:
    return 0 if a == 0 else F.log(a) + 1


def encode(F: GF, A: Matrix) -> bytes:
    """Upper triangle with diagonal, row-major, entries as log index + 1 (0 for zero)."""
    width = 1 if F.order <= 256 else 2
    n = len(A)
    out = bytearray()
    for i in range(n):
        for j in range(i, n):
            out += _entry_code(F, A[i][j]).to_bytes(width, "big")
    return bytes(out)


def decode(F: GF, n: int, data: bytes) -> Matrix:
    width = 1 if F.order <= 256 else 2
    codes = [int.from_bytes(data[k:k + width], "big") for k in range(0, len(data), width)]
    if len(codes) != n * (n + 1) // 2:
        raise ValueError("encoding length does not match n")
    M = [[0] * n for _ in range(n)]
    it = iter(codes)
    for i in range(n):
        for j in range(i, n):
            c = next(it)
            a = 0 if c == 0 else F.exp(c - 1)
            M[i][j] = a
            M[j][i] = F.conj(a)
    A = tuple(tuple(r) for r in M)
    if not is_hermitian(F, A):
        raise ValueError("encoding does not describe a hermitian matrix")
    return A


def random_vector(F: GF, n: int, rng: random.Random, nonzero: bool = True) -> Vector:
    while True:
        x = tuple(rng.randrange(F.order) for _ in range(n))
        if any(x) or not nonzero:
            return x


def random_matrix(F: GF, n: int, rng: random.Random) -> Matrix:
    return tuple(tuple(rng.randrange(F.order) for _ in range(n)) for _ in range(n))


def random_invertible(F: GF, n: int, rng: random.Random) -> Matrix:
    while True:
        P = random_matrix(F, n, rng)
        if det(F, P):
            return P


def random_hermitian(F: GF, n: int, rng: random.Random) -> Matrix:
    fixed = F.fixed_field()
    M = [[0] * n for _ in range(n)]
    for i in range(n):
        M[i][i] = rng.choice(fixed)
        for j in range(i + 1, n):
            a = rng.randrange(F.order)
            M[i][j] = a
            M[j][i] = F.conj(a)
    return tuple(tuple(r) for r in M)


def random_invertible_hermitian(F: GF, n: int, rng: random.Random) -> Matrix:
    while True:
        A = random_hermitian(F, n, rng)
        if det(F, A):
            return A


def random_fixed(F: GF, rng: random.Random, nonzero: bool = False) -> int:
    return rng.choice(F.fixed_nonzero() if nonzero else F.fixed_field())


def congruence(F: GF, P: Matrix, X: Matrix) -> Matrix:
    """P X P*."""
    return mat_mul(F, mat_mul(F, P, X), star(F, P))
