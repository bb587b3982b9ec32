"""Hermitian varieties, totally isotropic subspaces and polar point graphs.

Convention: ``variety_points(F, A)`` returns the projective points with
``x* A x = 0``.  The classical definition writes the form as ``x^T A conj(x)``,
which is the same condition for ``conj(A)``; ``classical_variety`` exposes
that reading explicitly so both can be compared.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import lru_cache

import numpy as np

from . import hermat as hm
from .gf import GF


def variety_cardinality(n: int, r: int, q: int) -> int:
    """Closed-form number of projective points on a rank-r hermitian form in n variables.

    r = 0 (the zero form) is accepted and gives every projective point.
    """
    if not 0 <= r <= n:
        raise ValueError(f"rank must satisfy 0 <= r <= n, got r={r}, n={n}")
    if n < 1:
        raise ValueError("n must be positive")
    num = q ** (2 * n - 1) + (-1) ** r * (q - 1) * q ** (2 * n - r - 1) - 1
    den = q * q - 1
    if num % den:
        raise ArithmeticError(f"closed form not integral for n={n}, r={r}, q={q}")
    return num // den


def projective_point_count(n: int, q: int) -> int:
    return (q ** (2 * n) - 1) // (q * q - 1)


@lru_cache(maxsize=None)
def _projective_array(q: int, n: int) -> np.ndarray:
    """All normalized projective points as rows of an int array, in lexicographic order."""
    order = q * q
    rows = []
    for lead in range(n):
        tail = n - lead - 1
        for rest in itertools.product(range(order), repeat=tail):
            rows.append((0,) * lead + (1,) + rest)
    return np.array(rows, dtype=np.int64).reshape(len(rows), n)


def projective_points(F: GF, n: int) -> list[hm.Vector]:
    return [tuple(int(v) for v in row) for row in _projective_array(F.q, n)]


def form_values(F: GF, A: hm.Matrix, pts: np.ndarray) -> np.ndarray:
    """x* A x for every row x of ``pts`` (vectorized over the table representation)."""
    add, mul, _neg, conj, trace, norm = F.numpy_tables()
    n = len(A)
    out = np.zeros(len(pts), dtype=np.int64)
    for i in range(n):
        a = A[i][i]
        if a:
            out = add[out, mul[a, norm[pts[:, i]]]]
        for j in range(i + 1, n):
            b = A[i][j]
            if b:
                # conj(x_i) b x_j + conj of that = Tr(conj(x_i) b x_j)
                term = mul[conj[pts[:, i]], mul[b, pts[:, j]]]
                out = add[out, trace[term]]
    return out


def variety_mask(F: GF, A: hm.Matrix) -> np.ndarray:
    pts = _projective_array(F.q, len(A))
    return form_values(F, A, pts) == 0


def variety_points(F: GF, A: hm.Matrix) -> list[hm.Vector]:
    """Normalized projective points <x> with x* A x = 0."""
    if not hm.is_hermitian(F, A):
        raise ValueError("matrix is not hermitian")
    pts = _projective_array(F.q, len(A))
    sel = pts[form_values(F, A, pts) == 0]
    return [tuple(int(v) for v in row) for row in sel]


def variety_size(F: GF, A: hm.Matrix) -> int:
    return int(variety_mask(F, A).sum())


def classical_variety(F: GF, A: hm.Matrix) -> list[hm.Vector]:
    """Points with x^T A conj(x) = 0, evaluated literally entry by entry."""
    n = len(A)
    out = []
    for x in projective_points(F, n):
        cx = hm.conj_vec(F, x)
        s = 0
        for i in range(n):
            if x[i]:
                s = F.add(s, F.mul(x[i], _dot(F, A[i], cx)))
        if s == 0:
            out.append(x)
    return out


def _dot(F: GF, row, v) -> int:
    s = 0
    for a, b in zip(row, v):
        if a and b:
            s = F.add(s, F.mul(a, b))
    return s


# ---- totally isotropic subspaces -------------------------------------------

def span_vectors(F: GF, basis: list[hm.Vector]) -> list[hm.Vector]:
    """All vectors of the span (including zero)."""
    n = len(basis[0])
    out = []
    for coeffs in itertools.product(range(F.order), repeat=len(basis)):
        out.append(hm.lincomb(F, coeffs, basis) if any(coeffs) else (0,) * n)
    return out


def is_totally_isotropic(F: GF, A: hm.Matrix, basis: list[hm.Vector]) -> bool:
    """Every nonzero vector of span(basis) satisfies x* A x = 0 (exhaustive check)."""
    return all(hm.form(F, v, A, v) == 0 for v in span_vectors(F, basis) if any(v))


def polarization_holds(F: GF, A: hm.Matrix, basis: list[hm.Vector]) -> bool:
    """x* A y = 0 for all pairs of basis vectors (hence all of the span)."""
    return all(hm.form(F, x, A, y) == 0 for x in basis for y in basis)


def isotropic_subspace_search(F: GF, A: hm.Matrix, d: int) -> list[hm.Vector] | None:
    """Basis of a d-dimensional subspace U with x* A x = 0 on U, or None.

    Depth-first over variety points in increasing index order; a point may
    extend the current partial basis only if it is polar to every chosen point
    and independent of them.  Polar, isotropic generators span a totally
    isotropic subspace, so the search is complete.
    """
    n = len(A)
    if d > n:
        raise ValueError("subspace dimension exceeds n")
    if d < 1:
        raise ValueError("dimension must be at least 1")
    if hm.det(F, A) == 0:
        raise ValueError("A must be invertible")
    pts = variety_points(F, A)
    m = len(pts)
    # polar[i] is the set of later points orthogonal to point i
    Apts = [hm.mat_vec(F, A, p) for p in pts]
    polar = [
        {j for j in range(i + 1, m) if hm.inner(F, pts[i], Apts[j]) == 0}
        for i in range(m)
    ]

    def extend(chosen: list[int], cands: set[int]) -> list[int] | None:
        if len(chosen) == d:
            return chosen
        basis = [pts[c] for c in chosen]
        for j in sorted(cands):
            if basis and hm.vectors_rank(F, basis + [pts[j]]) <= len(basis):
                continue
            found = extend(chosen + [j], cands & polar[j])
            if found is not None:
                return found
        return None

    res = extend([], set(range(m)))
    if res is None:
        return None
    basis = [pts[i] for i in res]
    assert polarization_holds(F, A, basis)
    return basis


# ---- polar point graph -----------------------------------------------------

@dataclass(frozen=True)
class PolarGraph:
    base: hm.Matrix
    points: tuple[hm.Vector, ...]
    edges: tuple[tuple[int, int], ...]
    meta: dict = dc_field(default_factory=dict, compare=False)

    def complement_edges(self) -> tuple[tuple[int, int], ...]:
        es = set(self.edges)
        m = len(self.points)
        return tuple((i, j) for i in range(m) for j in range(i + 1, m) if (i, j) not in es)


def polar_point_graph(F: GF, A: hm.Matrix) -> PolarGraph:
    """Vertices: variety points of A.  Edges: distinct points with x* A y = 0."""
    if hm.det(F, A) == 0:
        raise ValueError("A must be invertible")
    pts = variety_points(F, A)
    Apts = [hm.mat_vec(F, A, p) for p in pts]
    edges = tuple(
        (i, j)
        for i in range(len(pts))
        for j in range(i + 1, len(pts))
        if hm.inner(F, pts[i], Apts[j]) == 0
    )
    return PolarGraph(A, tuple(pts), edges, {"q": F.q, "n": len(A), "family": "polar"})
