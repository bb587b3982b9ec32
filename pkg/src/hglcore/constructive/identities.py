"""Matrix identities behind the q = 4 absorption argument, checked instance by instance."""

from __future__ import annotations

import itertools
from collections import Counter

from .. import hermat as hm
from ..gf import GF, field, solve_special_quartic, special_quartic_combinations


def order_three_unit(F: GF) -> int:
    """The fixed-field element i with i^2 = i + 1 (first in generator order)."""
    if F.q != 4:
        raise ValueError("only defined for q = 4")
    for i in F.fixed_nonzero():
        if i != 1 and F.mul(i, i) == F.add(i, 1):
            return i
    raise ArithmeticError("GF(4) inside GF(16) not found")


def _singular(F: GF, M: hm.Matrix) -> bool:
    return hm.det(F, M) == 0


def scaled_solution(F: GF, x1, x2, a2: int, t: int) -> int:
    """a1 = a2 (x2* x2)/(x2* x1) t."""
    return F.mul(F.mul(a2, F.div(hm.inner(F, x2, x2), hm.inner(F, x2, x1))), t)


def verify_lemma_main_identities(F: GF, x1, x2, a2: int, t: int) -> dict:
    """Build M1..M3 and N1..N3 for one admissible instance and evaluate every claim."""
    if F.q != 4:
        raise ValueError("q must be 4")
    x1, x2 = tuple(x1), tuple(x2)
    if hm.inner(F, x1, x1) != 0 or hm.inner(F, x1, x2) == 0 or hm.inner(F, x2, x2) == 0:
        raise ValueError("need x1* x1 = 0, x1* x2 != 0 and x2* x2 != 0")
    if a2 == 0 or t not in solve_special_quartic(F):
        raise ValueError("need a2 != 0 and t a root of the special quartic")
    n = len(x1)
    I = hm.identity(n)
    i = order_three_unit(F)
    i2 = F.mul(i, i)
    a1 = scaled_solution(F, x1, x2, a2, t)
    w = hm.lincomb(F, [a1, a2], [x1, x2])
    ww = hm.inner(F, w, w)
    predicted = F.mul(F.mul(F.norm(a2), hm.inner(F, x2, x2)), F.add(F.trace(t), 1))
    report = {"a1": a1, "ww": ww, "ww_predicted": predicted}
    checks = {"ww_matches_prediction": ww == predicted, "combination_non_isotropic": ww != 0}
    if ww == 0:
        report["checks"] = checks
        report["ok"] = False
        return report
    eta = F.div(i, ww)
    M = [hm.mat_add(F, I, hm.rank_one(F, F.mul(eta, c), w)) for c in (i2, i, 1)]
    mu = F.mul(F.mul(eta, i2), F.norm(a2))
    base = hm.mat_add(F, I, hm.rank_one(F, mu, x2))
    Na1 = F.norm(a1)
    N = [hm.mat_add(F, base, hm.rank_one(F, F.mul(F.mul(eta, c), Na1), x1)) for c in (i2, i, 1)]
    checks.update({
        "M1_singular": _singular(F, M[0]),
        "M2_invertible": not _singular(F, M[1]),
        "M3_invertible": not _singular(F, M[2]),
        "base_invertible": not _singular(F, base),
        "N1_singular": _singular(F, N[0]),
        "N2_invertible": not _singular(F, N[1]),
        "N3_invertible": not _singular(F, N[2]),
        "N2_adjacent_M3": hm.rank(F, hm.mat_sub(F, N[1], M[2])) == 1,
        "N3_adjacent_M2": hm.rank(F, hm.mat_sub(F, N[2], M[1])) == 1,
    })
    if checks["base_invertible"]:
        s = hm.form(F, x1, hm.inverse(F, base), x1)
        checks["minus_one_identity"] = F.mul(F.mul(F.mul(eta, i2), Na1), s) == F.neg(1)
    report["checks"] = checks
    report["ok"] = all(checks.values())
    return report


def absorbed_scalars(F: GF, x1, x2, a2: int) -> set[int]:
    """The a1 reached in two absorption rounds, compared against all a1 != 0 with w* w != 0."""
    c = F.mul(a2, F.div(hm.inner(F, x2, x2), hm.inner(F, x2, x1)))
    return {F.mul(c, s) for s in special_quartic_combinations(F)}


def nonisotropic_scalars(F: GF, x1, x2, a2: int) -> set[int]:
    out = set()
    for a1 in F.nonzero():
        w = hm.lincomb(F, [a1, a2], [x1, x2])
        if hm.inner(F, w, w):
            out.add(a1)
    return out


def exhaustive_identity_check(n: int = 2, a2_values=None) -> dict:
    """Every admissible (x1, x2, a2, t) over GF(16)^n; returns failure counts."""
    F = field(4)
    sols = solve_special_quartic(F)
    vecs = list(itertools.product(F.elements(), repeat=n))
    iso = [v for v in vecs if any(v) and hm.inner(F, v, v) == 0]
    a2s = list(a2_values) if a2_values is not None else F.nonzero()
    failures = Counter()
    instances = 0
    set_checks = 0
    for x1 in iso:
        for x2 in vecs:
            if hm.inner(F, x1, x2) == 0 or hm.inner(F, x2, x2) == 0:
                continue
            for a2 in a2s:
                set_checks += 1
                reached = absorbed_scalars(F, x1, x2, a2)
                if len(reached) != 11 or reached != nonisotropic_scalars(F, x1, x2, a2):
                    failures["scalar_set"] += 1
                for t in sols:
                    instances += 1
                    rep = verify_lemma_main_identities(F, x1, x2, a2, t)
                    for k, v in rep["checks"].items():
                        if not v:
                            failures[k] += 1
    return {
        "n": n,
        "instances": instances,
        "scalar_set_checks": set_checks,
        "failures": dict(failures),
        "ok": instances > 0 and not failures,
    }
