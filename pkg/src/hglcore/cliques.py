"""Maximal cliques {A + lam x x*} of the invertible hermitian matrix graph."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from . import hermat as hm
from . import varpolar
from .gf import GF

Q_CLIQUE = "q-clique"
Q_MINUS_1_CLIQUE = "(q-1)-clique"


@dataclass(frozen=True)
class CliqueDescriptor:
    base: hm.Matrix
    direction: hm.Vector
    kind: str
    members: tuple[hm.Matrix, ...]

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, X) -> bool:
        return X in self.members


def clique_members(F: GF, A: hm.Matrix, x: hm.Vector) -> list[hm.Matrix]:
    """{A + lam x x* : lam in the fixed field, invertible}, in fixed-field order."""
    Ainv = hm.inverse(F, A)
    s = hm.form(F, x, Ainv, x)
    xx = hm.outer(F, x, x)
    out = []
    minus_one = F.neg(1)
    for lam in F.fixed_field():
        if F.mul(lam, s) != minus_one:
            out.append(hm.mat_add(F, A, hm.mat_scale(F, lam, xx)) if lam else A)
    return out


def classify(F: GF, A: hm.Matrix, x: hm.Vector) -> str:
    if not any(x):
        raise ValueError("direction vector must be nonzero")
    Ainv = hm.inverse(F, A)
    return Q_CLIQUE if hm.form(F, x, Ainv, x) == 0 else Q_MINUS_1_CLIQUE


def clique_of(F: GF, A: hm.Matrix, x: hm.Vector) -> CliqueDescriptor:
    x = hm.normalize_vector(F, x)
    return CliqueDescriptor(A, x, classify(F, A, x), tuple(clique_members(F, A, x)))


def maximal_clique_through(F: GF, A: hm.Matrix, B: hm.Matrix) -> CliqueDescriptor:
    """The unique maximal clique containing the adjacent pair A, B."""
    if not hm.adjacent(F, A, B):
        raise ValueError("matrices are not adjacent")
    _, x = hm.factor_rank_one(F, hm.mat_sub(F, B, A))
    return clique_of(F, A, x)


def a_orthogonal(F: GF, A: hm.Matrix, x: hm.Vector, y: hm.Vector) -> bool:
    if not any(x) or not any(y):
        raise ValueError("direction vectors must be nonzero")
    return hm.form(F, x, hm.inverse(F, A), y) == 0


def det_profile(F: GF, c: CliqueDescriptor) -> Counter:
    return Counter(hm.det(F, M) for M in c.members)


@dataclass(frozen=True)
class CliqueCounts:
    num_q: int
    num_q_minus_1: int
    degree: int


def clique_counts(F: GF, A: hm.Matrix) -> CliqueCounts:
    """Numbers of q-cliques and (q-1)-cliques through A and the resulting degree.

    The q-cliques correspond to isotropic points of A^-1 in the x* M x
    convention.
    """
    if hm.det(F, A) == 0:
        raise ValueError("A must be invertible")
    n, q = len(A), F.q
    num_q = varpolar.variety_size(F, hm.inverse(F, A))
    total = varpolar.projective_point_count(n, q)
    num_q1 = total - num_q
    return CliqueCounts(num_q, num_q1, num_q * (q - 1) + num_q1 * (q - 2))


def cliques_through(F: GF, A: hm.Matrix) -> list[CliqueDescriptor]:
    """All maximal cliques containing A, one per projective direction."""
    return [clique_of(F, A, x) for x in varpolar.projective_points(F, len(A))]


def census(F: GF, A: hm.Matrix) -> dict:
    """Clique census of one vertex: counts by kind and determinant profiles."""
    cl = cliques_through(F, A)
    counts = clique_counts(F, A)
    profiles = []
    for c in cl:
        prof = det_profile(F, c)
        profiles.append({
            "direction": list(c.direction),
            "kind": c.kind,
            "size": len(c),
            "determinants": sorted(prof.elements()),
        })
    return {
        "q": F.q,
        "n": len(A),
        "num_q_cliques": sum(c.kind == Q_CLIQUE for c in cl),
        "num_q_minus_1_cliques": sum(c.kind == Q_MINUS_1_CLIQUE for c in cl),
        "formula": {"num_q": counts.num_q, "num_q_minus_1": counts.num_q_minus_1, "degree": counts.degree},
        "degree": sum(len(c) - 1 for c in cl),
        "cliques": profiles,
    }
