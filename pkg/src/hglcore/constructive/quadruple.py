"""Coefficients that make a combination of four isotropic vectors isotropic and x1-orthogonal."""

from __future__ import annotations

from dataclasses import dataclass

from .. import hermat as hm
from .. import varpolar
from ..gf import GF


@dataclass
class QuadrupleSolution:
    a2: int
    a3: int
    a4: int
    form: hm.Matrix
    conjugated: bool

    @property
    def coefficients(self) -> tuple[int, int, int]:
        return self.a2, self.a3, self.a4


def quadruple_form(F: GF, xs) -> hm.Matrix:
    """The 2x2 hermitian matrix whose isotropic points give (a2, a3)."""
    x1, x2, x3, x4 = xs

    def ip(i, j):
        return hm.inner(F, xs[i], xs[j])

    d14 = ip(0, 3)
    d41 = ip(3, 0)
    a11 = F.neg(F.trace(F.div(F.mul(ip(0, 1), ip(1, 3)), d14)))
    a22 = F.neg(F.trace(F.div(F.mul(ip(0, 2), ip(2, 3)), d14)))
    a12 = F.sub(
        F.sub(ip(1, 2), F.div(F.mul(ip(3, 2), ip(1, 0)), d41)),
        F.div(F.mul(ip(0, 2), ip(1, 3)), d14),
    )
    a21 = F.sub(
        F.sub(ip(2, 1), F.div(F.mul(ip(2, 3), ip(0, 1)), d14)),
        F.div(F.mul(ip(2, 0), ip(3, 1)), d41),
    )
    return ((a11, a12), (a21, a22))


def combination(F: GF, xs, a1: int, a2: int, a3: int, a4: int) -> hm.Vector:
    return hm.lincomb(F, [a1, a2, a3, a4], list(xs))


def check_solution(F: GF, xs, a2: int, a3: int, a4: int, a1_values=None) -> bool:
    """Recheck isotropy and x1-orthogonality of the combination for every a1."""
    if a1_values is None:
        a1_values = F.elements()
    for a1 in a1_values:
        v = combination(F, xs, a1, a2, a3, a4)
        if hm.inner(F, v, v) or hm.inner(F, xs[0], v):
            return False
    return True


def isotropic_quadruple_solve(F: GF, x1, x2, x3, x4) -> QuadrupleSolution:
    xs = tuple(tuple(v) for v in (x1, x2, x3, x4))
    for v in xs:
        if hm.inner(F, v, v):
            raise ValueError("all four vectors must be isotropic")
    d14 = hm.inner(F, xs[0], xs[3])
    if d14 == 0:
        raise ValueError("x1* x4 must be nonzero")
    A = quadruple_form(F, xs)
    if not hm.is_hermitian(F, A):
        raise ArithmeticError("coefficient matrix is not hermitian")
    for conjugated, M in ((False, A), (True, hm.conj_matrix(F, A))):
        a2, a3 = varpolar.variety_points(F, M)[0]
        num = F.add(F.mul(a2, hm.inner(F, xs[0], xs[1])), F.mul(a3, hm.inner(F, xs[0], xs[2])))
        a4 = F.neg(F.div(num, d14))
        if check_solution(F, xs, a2, a3, a4):
            return QuadrupleSolution(a2, a3, a4, M, conjugated)
    raise ArithmeticError("no variety point of the coefficient form solves the system")
