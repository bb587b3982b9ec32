"""Arithmetic in GF(q^2) with the involution x -> x^q.

Elements are plain ints in ``range(q*q)``: the integer ``sum(c_i * p**i)``
encodes the residue class of ``sum(c_i * X**i)`` modulo the field's defining
polynomial.  So ``0`` and ``1`` are the field's zero and one, and the prime
subfield element ``k`` is just ``k % p``.

Fixed-field values (trace, norm, determinants of hermitian matrices) are
returned as GF(q^2) elements with ``conj(t) == t``; :meth:`GF.as_fixed` is the
checked down-cast.
"""

from __future__ import annotations

from functools import cached_property, lru_cache

# Full add/mul tables up to this field size, log/exp tables up to
# LOG_TABLE_LIMIT, polynomial arithmetic above.
FULL_TABLE_LIMIT = 1024
LOG_TABLE_LIMIT = 1 << 16


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, e)`` with ``q == p**e``; raise ValueError otherwise."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, rest = 0, q
    while rest % p == 0:
        rest //= p
        e += 1
    if rest != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, e


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over F_p: coefficient lists, lowest degree first ----------

def _digits(k: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        k, r = divmod(k, p)
        out.append(r)
    return out


def _undigits(c, p: int) -> int:
    k = 0
    for coef in reversed(c):
        k = k * p + coef
    return k


def _poly_rem(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of a by the monic polynomial b."""
    a = list(a)
    db = len(b) - 1
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] % p
        if c:
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return [x % p for x in a[:db]]


def is_irreducible(poly: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    m = len(poly) - 1
    for d in range(1, m // 2 + 1):
        for low in range(p ** d):
            divisor = _digits(low, p, d) + [1]
            if not any(_poly_rem(poly, divisor, p)):
                return False
    return True


@lru_cache(maxsize=None)
def least_irreducible(p: int, m: int) -> tuple[int, ...]:
    """The monic irreducible of degree m over F_p whose low coefficients,
    read as a base-p integer, are smallest."""
    for low in range(p ** m):
        poly = _digits(low, p, m) + [1]
        if poly[0] and is_irreducible(poly, p):
            return tuple(poly)
    raise ArithmeticError(f"no irreducible polynomial of degree {m} over F_{p}")


class GF:
    """The field with ``q*q`` elements and its involution ``x -> x**q``."""

    def __init__(self, q: int, tables: bool | None = None):
        self.q = q
        self.p, self.e = prime_power(q)
        self.m = 2 * self.e
        self.order = q * q
        self.modulus = least_irreducible(self.p, self.m)
        if tables is None:
            tables = self.order <= LOG_TABLE_LIMIT
        self.tables = tables
        self._full = tables and self.order <= FULL_TABLE_LIMIT
        self.generator = self._find_generator()
        if tables:
            self._build_tables()

    def __repr__(self) -> str:
        return f"GF({self.q}^2, modulus={self.modulus_str()}, generator={self.generator})"

    # ---- construction ---------------------------------------------------

    def _find_generator(self) -> int:
        n = self.order - 1
        cofactors = [n // r for r in prime_factors(n)]
        for g in range(2 if self.order > 2 else 1, self.order):
            if all(self._poly_pow(g, c) != 1 for c in cofactors):
                return g
        raise ArithmeticError("no generator found")

    def _build_tables(self) -> None:
        n = self.order - 1
        exp = [0] * (2 * n)
        log = [-1] * self.order
        x = 1
        for k in range(n):
            exp[k] = x
            log[x] = k
            x = self._poly_mul(x, self.generator)
        exp[n:] = exp[:n]
        self._exp, self._log = exp, log
        if self._full:
            els = range(self.order)
            self._add = [[self._poly_add(a, b) for b in els] for a in els]
            self._mul = [[0] * self.order] + [
                [0] + [exp[log[a] + log[b]] for b in range(1, self.order)]
                for a in range(1, self.order)
            ]
        self._neg = [self._poly_neg(a) for a in range(self.order)]
        self._conj = [0] + [exp[(log[a] * self.q) % n] for a in range(1, self.order)]
        self._trace = [self._poly_add(a, self._conj[a]) for a in range(self.order)]
        self._norm = [0] + [exp[(log[a] * (self.q + 1)) % n] for a in range(1, self.order)]

    # ---- polynomial-basis arithmetic (reference path) ----------------------

    def _poly_add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        p = self.p
        da, db = _digits(a, p, self.m), _digits(b, p, self.m)
        return _undigits([(x + y) % p for x, y in zip(da, db)], p)

    def _poly_neg(self, a: int) -> int:
        if self.p == 2:
            return a
        p = self.p
        return _undigits([(-x) % p for x in _digits(a, p, self.m)], p)

    def _poly_mul(self, a: int, b: int) -> int:
        p, m = self.p, self.m
        da, db = _digits(a, p, m), _digits(b, p, m)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        return _undigits(_poly_rem(prod, list(self.modulus), p), p)

    def _poly_pow(self, a: int, k: int) -> int:
        result = 1
        while k:
            if k & 1:
                result = self._poly_mul(result, a)
            a = self._poly_mul(a, a)
            k >>= 1
        return result

    # ---- field operations ---------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self._full:
            return self._add[a][b]
        return self._poly_add(a, b)

    def neg(self, a: int) -> int:
        if self.tables:
            return self._neg[a]
        return self._poly_neg(a)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self._full:
            return self._mul[a][b]
        if self.tables:
            if a == 0 or b == 0:
                return 0
            return self._exp[self._log[a] + self._log[b]]
        return self._poly_mul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(q^2)")
        if self.tables:
            return self._exp[(-self._log[a]) % (self.order - 1)]
        return self._poly_pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if k == 0 else 0
        if self.tables:
            return self._exp[(self._log[a] * k) % (self.order - 1)]
        if k < 0:
            a, k = self.inv(a), -k
        return self._poly_pow(a, k)

    def conj(self, a: int) -> int:
        if self.tables:
            return self._conj[a]
        return self._poly_pow(a, self.q)

    def trace(self, a: int) -> int:
        if self.tables:
            return self._trace[a]
        return self._poly_add(a, self.conj(a))

    def norm(self, a: int) -> int:
        if self.tables:
            return self._norm[a]
        return self._poly_mul(a, self.conj(a))

    def log(self, a: int) -> int:
        if a == 0:
            raise ValueError("log of zero")
        if self.tables:
            return self._log[a]
        x, k = 1, 0
        while x != a:
            x = self._poly_mul(x, self.generator)
            k += 1
        return k

    def exp(self, k: int) -> int:
        if self.tables:
            return self._exp[k % (self.order - 1)]
        return self._poly_pow(self.generator, k % (self.order - 1))

    # ---- subfield helpers ---------------------------------------------

    def scalar(self, k: int) -> int:
        """The image of the integer k in the prime subfield."""
        return k % self.p

    def is_fixed(self, a: int) -> bool:
        return self.conj(a) == a

    def as_fixed(self, a: int) -> int:
        if not self.is_fixed(a):
            raise ValueError(f"{a} is not in the fixed field GF({self.q})")
        return a

    def elements(self) -> range:
        return range(self.order)

    def nonzero(self) -> list[int]:
        """Nonzero elements in generator order g^0, g^1, ..."""
        return self._nonzero

    def fixed_nonzero(self) -> list[int]:
        """Nonzero fixed-field elements in generator order w^0, w^1, ... with w = g^(q+1)."""
        return self._fixed_nonzero

    def fixed_field(self) -> list[int]:
        return [0] + self._fixed_nonzero

    @cached_property
    def _nonzero(self) -> list[int]:
        return [self.exp(k) for k in range(self.order - 1)]

    @cached_property
    def _fixed_nonzero(self) -> list[int]:
        return [self.exp(k * (self.q + 1)) for k in range(self.q - 1)]

    @cached_property
    def _norm_pre(self) -> dict[int, list[int]]:
        table: dict[int, list[int]] = {}
        for x in [0] + self.nonzero():
            table.setdefault(self.norm(x), []).append(x)
        return table

    @cached_property
    def _trace_pre(self) -> dict[int, list[int]]:
        table: dict[int, list[int]] = {}
        for x in [0] + self.nonzero():
            table.setdefault(self.trace(x), []).append(x)
        return table

    def norm_preimage(self, lam: int) -> list[int]:
        """All x with N(x) = lam, zero first then generator order."""
        return self._norm_pre.get(lam, [])

    def trace_preimage(self, lam: int) -> list[int]:
        return self._trace_pre.get(lam, [])

    def norm_root(self, lam: int) -> int:
        """First x (generator order) with N(x) = lam; lam must be in the fixed field."""
        pre = self.norm_preimage(lam)
        if not pre:
            raise ValueError(f"{lam} is not a norm")
        return pre[0]

    def trace_root(self, lam: int) -> int:
        pre = self.trace_preimage(lam)
        if not pre:
            raise ValueError(f"{lam} is not a trace")
        return pre[0]

    # ---- display ---------------------------------------------------

    def coefficients(self, a: int) -> list[int]:
        return _digits(a, self.p, self.m)

    def poly_str(self, a: int) -> str:
        terms = []
        for i, c in reversed(list(enumerate(self.coefficients(a)))):
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(terms) if terms else "0"

    def modulus_str(self) -> str:
        terms = []
        for i, c in reversed(list(enumerate(self.modulus))):
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(terms)

    def describe(self) -> dict:
        return {
            "q": self.q,
            "p": self.p,
            "e": self.e,
            "modulus": list(self.modulus),
            "modulus_str": self.modulus_str(),
            "generator": self.generator,
            "generator_str": self.poly_str(self.generator),
        }

    def numpy_tables(self):
        """(add, mul, neg, conj, trace, norm) as numpy arrays; small fields only."""
        if not self._full:
            raise ValueError("numpy tables need a field with full tables")
        return self._np_tables

    @cached_property
    def _np_tables(self):
        import numpy as np

        return tuple(
            np.asarray(t, dtype=np.int32)
            for t in (self._add, self._mul, self._neg, self._conj, self._trace, self._norm)
        )


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    """Shared table-backed instance of GF(q^2)."""
    return GF(q)


# ---- named operations ---------------------------------------------------

def conj(F: GF, x: int) -> int:
    return F.conj(x)


def trace(F: GF, x: int) -> int:
    return F.trace(x)


def norm(F: GF, x: int) -> int:
    return F.norm(x)


def zero_trace_witness(F: GF, x: int) -> int | None:
    """Some y with conj(y) - y == x, or None when Tr(x) != 0."""
    if F.trace(x) != 0:
        return None
    theta = next(t for t in F.nonzero() if F.trace(t) != 0)
    # conj(x) = -x, so y = -x*conj(theta)/Tr(theta) works
    y = F.neg(F.div(F.mul(x, F.conj(theta)), F.trace(theta)))
    assert F.sub(F.conj(y), y) == x
    return y


def solve_special_quartic(F: GF) -> list[int]:
    """Nonzero x in GF(16) with Tr(x)^2 + Tr(x) + N(x) = 0."""
    if F.q != 4:
        raise ValueError("the special equation is only defined for q = 4")
    out = []
    for x in F.nonzero():
        t = F.trace(x)
        if F.add(F.add(F.mul(t, t), t), F.norm(x)) == 0:
            out.append(x)
    return sorted(out)


def special_quartic_combinations(F: GF) -> set[int]:
    """{x_j + (Tr(x_j)+1) x_k} over the solutions of the special quartic."""
    sols = solve_special_quartic(F)
    return {F.add(xj, F.mul(F.add(F.trace(xj), 1), xk)) for xj in sols for xk in sols}


def unique_norm_partner(F: GF, a: int, b: int, x: int) -> int | None:
    """The y != x with N(y) = N(x) and N(a+by) = N(a+bx), if it exists.

    Only one candidate is possible, y = (a conj(b))/(conj(a) b) * conj(x);
    it is checked by substitution.
    """
    if a == 0 or b == 0:
        raise ValueError("a and b must be nonzero")
    ratio = F.div(F.mul(a, F.conj(b)), F.mul(F.conj(a), b))
    y = F.mul(ratio, F.conj(x))
    if y == x:
        return None
    if F.norm(y) != F.norm(x):
        return None
    if F.norm(F.add(a, F.mul(b, y))) != F.norm(F.add(a, F.mul(b, x))):
        return None
    return y


def field_table_rows(F: GF) -> list[tuple]:
    """Rows (index, polynomial, conj, trace, norm) for every element."""
    return [(a, F.poly_str(a), F.conj(a), F.trace(a), F.norm(a)) for a in F.elements()]
