"""Brute-force oracles shared by the tests.

These deliberately avoid the package's own algorithms: field products come
from sympy polynomial reduction, determinants from the permutation
expansion, ranks from kernel sizes found by enumerating every vector.
"""

import itertools
import math
import random

import pytest
from sympy import GF as SymGF, Poly, symbols

from hglcore import hermat as hm
from hglcore.gf import field

X = symbols("x")


class PolyField:
    """GF(q^2) as polynomials mod the package's modulus, via sympy."""

    def __init__(self, q):
        self.F = field(q)
        self.p = self.F.p
        self.m = self.F.m
        self.dom = SymGF(self.p)
        self.mod = Poly(list(reversed(self.F.modulus)), X, domain=self.dom)

    def to_poly(self, a):
        coeffs = []
        for _ in range(self.m):
            a, r = divmod(a, self.p)
            coeffs.append(r)
        return Poly(list(reversed(coeffs)), X, domain=self.dom)

    def from_poly(self, P):
        coeffs = [int(c) % self.p for c in reversed(P.all_coeffs())]
        return sum(c * self.p ** i for i, c in enumerate(coeffs))

    def add(self, a, b):
        return self.from_poly((self.to_poly(a) + self.to_poly(b)).rem(self.mod))

    def mul(self, a, b):
        return self.from_poly((self.to_poly(a) * self.to_poly(b)).rem(self.mod))

    def pow(self, a, k):
        r = 1
        for _ in range(k):
            r = self.mul(r, a)
        return r


def leibniz_det(F, A):
    n = len(A)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = 1
        for i in range(n):
            term = F.mul(term, A[i][perm[i]])
        total = F.sub(total, term) if inv % 2 else F.add(total, term)
    return total


def brute_kernel_size(F, A):
    n = len(A[0])
    count = 0
    for v in itertools.product(F.elements(), repeat=n):
        if all(_dot(F, row, v) == 0 for row in A):
            count += 1
    return count


def _dot(F, row, v):
    s = 0
    for a, b in zip(row, v):
        s = F.add(s, F.mul(a, b))
    return s


def _hform(F, v, A):
    s = 0
    for i, row in enumerate(A):
        for j, a in enumerate(row):
            s = F.add(s, F.mul(F.mul(F.pow(v[i], F.q), a), v[j]))
    return s


def brute_rank(F, A):
    size = brute_kernel_size(F, A)
    return len(A[0]) - round(math.log(size, F.order))


def brute_variety_size(F, A):
    n = len(A)
    iso = 0
    for v in itertools.product(F.elements(), repeat=n):
        if any(v) and _hform(F, v, A) == 0:
            iso += 1
    return iso // (F.order - 1)


@pytest.fixture
def rng():
    return random.Random(20240611)


# one summary line per acceptance criterion, printed after the run
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
