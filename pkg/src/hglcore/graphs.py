"""Explicit graphs on hermitian matrices, exact spectra and spectral checks."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import hermat as hm
from . import varpolar
from .gf import GF, field

DEFAULT_VERTEX_BUDGET = 10 ** 6
DEFAULT_EDGE_BUDGET = 10 ** 9
EIG_TOL = 1e-9


class BudgetExceeded(RuntimeError):
    def __init__(self, required: int, budget: int, what: str = "vertices"):
        super().__init__(f"{what} required: {required}, budget: {budget}")
        self.required = required
        self.budget = budget


@dataclass(frozen=True)
class GraphHandle:
    """Immutable graph with bitset adjacency rows and optional vertex labels."""

    labels: tuple
    adj: tuple[int, ...]
    meta: dict = dc_field(default_factory=dict, compare=False)

    @property
    def order(self) -> int:
        return len(self.adj)

    def __len__(self) -> int:
        return len(self.adj)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, u: int) -> list[int]:
        row = self.adj[u]
        out = []
        while row:
            low = row & -row
            out.append(low.bit_length() - 1)
            row ^= low
        return out

    def degree(self, u: int) -> int:
        return self.adj[u].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.adj]

    def edge_count(self) -> int:
        return sum(self.degrees()) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.order) for v in self.neighbors(u) if u < v]

    def is_regular(self) -> bool:
        d = self.degrees()
        return len(set(d)) <= 1

    def adjacency_matrix(self, dtype=np.int64) -> np.ndarray:
        n = self.order
        M = np.zeros((n, n), dtype=dtype)
        for u in range(n):
            for v in self.neighbors(u):
                M[u, v] = 1
        return M

    def induced(self, keep: Sequence[int], meta: dict | None = None) -> "GraphHandle":
        keep = list(keep)
        pos = {v: i for i, v in enumerate(keep)}
        rows = []
        for v in keep:
            r = 0
            for w in self.neighbors(v):
                if w in pos:
                    r |= 1 << pos[w]
            rows.append(r)
        labels = tuple(self.labels[v] for v in keep) if self.labels else tuple(keep)
        return GraphHandle(labels, tuple(rows), dict(meta if meta is not None else self.meta))

    def delete_vertex(self, v: int) -> "GraphHandle":
        return self.induced([u for u in range(self.order) if u != v])

    def complement(self) -> "GraphHandle":
        full = (1 << self.order) - 1
        rows = tuple((full ^ r) & ~(1 << u) for u, r in enumerate(self.adj))
        meta = dict(self.meta)
        meta["family"] = f"complement({meta.get('family', '?')})"
        return GraphHandle(self.labels, rows, meta)

    def check(self) -> None:
        for u, r in enumerate(self.adj):
            if r >> u & 1:
                raise ValueError(f"loop at vertex {u}")
            for v in self.neighbors(u):
                if not self.adj[v] >> u & 1:
                    raise ValueError(f"asymmetric edge {u}-{v}")


def from_edges(n: int, edges: Iterable[tuple[int, int]], labels=None, meta: dict | None = None) -> GraphHandle:
    rows = [0] * n
    for u, v in edges:
        if u == v:
            raise ValueError("loops are not allowed")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return GraphHandle(tuple(labels) if labels is not None else tuple(range(n)), tuple(rows), dict(meta or {}))


def from_networkx(g, meta: dict | None = None) -> GraphHandle:
    nodes = sorted(g.nodes())
    pos = {v: i for i, v in enumerate(nodes)}
    return from_edges(len(nodes), ((pos[u], pos[v]) for u, v in g.edges()), nodes, meta)


def complete_graph(m: int) -> GraphHandle:
    return from_edges(m, ((i, j) for i in range(m) for j in range(i + 1, m)), meta={"family": f"K{m}"})


def cycle_graph(m: int) -> GraphHandle:
    return from_edges(m, ((i, (i + 1) % m) for i in range(m)), meta={"family": f"C{m}"})


def path_graph(m: int) -> GraphHandle:
    return from_edges(m, ((i, i + 1) for i in range(m - 1)), meta={"family": f"P{m}"})


def petersen_graph() -> GraphHandle:
    import networkx as nx

    return from_networkx(nx.petersen_graph(), {"family": "petersen"})


# ---- hermitian matrix graphs -----------------------------------------------

def rank_one_matrices(F: GF, n: int) -> list[hm.Matrix]:
    """All lam x x* with lam in F_q nonzero and <x> a projective point."""
    out = []
    for x in varpolar.projective_points(F, n):
        xx = hm.outer(F, x, x)
        for lam in F.fixed_nonzero():
            out.append(hm.mat_scale(F, lam, xx))
    return out


def _matrix_graph(F: GF, mats: list[hm.Matrix], n: int, meta: dict) -> GraphHandle:
    enc = sorted((hm.encode(F, A), A) for A in mats)
    labels = tuple(e for e, _ in enc)
    index = {e: i for i, e in enumerate(labels)}
    steps = rank_one_matrices(F, n)
    rows = []
    for _, A in enc:
        r = 0
        for R in steps:
            j = index.get(hm.encode(F, hm.mat_add(F, A, R)))
            if j is not None:
                r |= 1 << j
        rows.append(r)
    return GraphHandle(labels, tuple(rows), meta)


def build_hgl(q: int, n: int, budget: int = DEFAULT_VERTEX_BUDGET) -> GraphHandle:
    """Invertible n x n hermitian matrices over GF(q^2), edges at rank-one difference."""
    need = hm.count_invertible_hermitian(q, n)
    if need > budget:
        raise BudgetExceeded(need, budget)
    F = field(q)
    mats = [A for A in hm.hermitian_matrices(F, n) if hm.det(F, A)]
    assert len(mats) == need
    return _matrix_graph(F, mats, n, {"q": q, "n": n, "family": "HGL"})


def build_h2(q: int, budget: int = DEFAULT_VERTEX_BUDGET) -> GraphHandle:
    """All 2 x 2 hermitian matrices (singular included), edges at rank-one difference."""
    need = q ** 4
    if need > budget:
        raise BudgetExceeded(need, budget)
    F = field(q)
    return _matrix_graph(F, list(hm.hermitian_matrices(F, 2)), 2, {"q": q, "n": 2, "family": "H2"})


def vertex_matrices(G: GraphHandle) -> list[hm.Matrix]:
    F = field(G.meta["q"])
    return [hm.decode(F, G.meta["n"], e) for e in G.labels]


def label_index(G: GraphHandle) -> dict:
    return {lab: i for i, lab in enumerate(G.labels)}


def h2_parameters(q: int) -> dict:
    """Intersection numbers of the diameter-two distance-regular graph on 2x2 hermitian matrices."""

    Q = Fraction(q)

    def c(i):
        return Q ** (i - 1) * (q ** i - (-1) ** i) / (q + 1)

    def a(i):
        return (Q ** (2 * i) - Q ** (i - 1) * (q ** i - (-1) ** i) - 1) / (q + 1)

    def b(i):
        return (Q ** 4 - Q ** (2 * i)) / (q + 1)

    k = q ** 3 - q ** 2 + q - 1
    r = q - 1
    s = -q * q + q - 1
    mult_r = Fraction((s + 1) * k * (k - s)) / (c(2) * (s - r))
    return {
        "c": [None, c(1), c(2)],
        "a": [a(0), a(1), a(2)],
        "b": [b(0), b(1), None],
        "k": k,
        "r": r,
        "s": s,
        "multiplicities": (1, mult_r, q ** 4 - 1 - mult_r),
    }


def bfs_distances(G: GraphHandle, source: int, allowed: int | None = None) -> list[int]:
    dist = [-1] * G.order
    dist[source] = 0
    dq = deque([source])
    while dq:
        u = dq.popleft()
        for v in G.neighbors(u):
            if dist[v] < 0 and (allowed is None or allowed >> v & 1):
                dist[v] = dist[u] + 1
                dq.append(v)
    return dist


def intersection_numbers(G: GraphHandle) -> dict | None:
    """(c_i, a_i, b_i) if they are constant over all vertex pairs, else None."""
    seen: dict = {}
    for u in range(G.order):
        dist = bfs_distances(G, u)
        for v in range(G.order):
            d = dist[v]
            if d < 0:
                return None
            nb = G.neighbors(v)
            cnt = (sum(dist[w] == d - 1 for w in nb), sum(dist[w] == d for w in nb), sum(dist[w] == d + 1 for w in nb))
            if seen.setdefault(d, cnt) != cnt:
                return None
    diam = max(seen)
    return {
        "diameter": diam,
        "c": [seen[i][0] for i in range(diam + 1)],
        "a": [seen[i][1] for i in range(diam + 1)],
        "b": [seen[i][2] for i in range(diam + 1)],
    }


def is_connected(G: GraphHandle) -> bool:
    return G.order == 0 or min(bfs_distances(G, 0)) >= 0


def components(G: GraphHandle) -> list[list[int]]:
    seen = [False] * G.order
    comps = []
    for s in range(G.order):
        if seen[s]:
            continue
        comp = [v for v, d in enumerate(bfs_distances(G, s)) if d >= 0]
        for v in comp:
            seen[v] = True
        comps.append(comp)
    return comps


# ---- exact spectra ---------------------------------------------------------

def integer_rank(M: list[list[int]]) -> int:
    """Rank over the rationals by fraction-free (Bareiss) elimination."""
    rows = [list(r) for r in M]
    if not rows:
        return 0
    nr, nc = len(rows), len(rows[0])
    r = 0
    prev = 1
    for c in range(nc):
        piv = next((i for i in range(r, nr) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        prow = rows[r]
        for i in range(r + 1, nr):
            ri = rows[i]
            f = ri[c]
            if f:
                rows[i] = [(p * a - f * b) // prev for a, b in zip(ri, prow)]
            else:
                rows[i] = [(p * a) // prev for a in ri]
        prev = p
        r += 1
        if r == nr:
            break
    return r


def exact_nullity(G: GraphHandle, lam: int) -> int:
    n = G.order
    M = [[0] * n for _ in range(n)]
    for u in range(n):
        for v in G.neighbors(u):
            M[u][v] = 1
        M[u][u] = -lam
    return n - integer_rank(M)


@dataclass
class SpectrumReport:
    eigenvalues: list[tuple[int | float, int, bool]]
    certified: bool
    trace_zero: bool | None
    chromatic_bounds: tuple[int | None, int | None] = (None, None)

    def as_dict(self) -> dict:
        return {
            "eigenvalues": [{"value": v, "multiplicity": m, "certified": c} for v, m, c in self.eigenvalues],
            "certified": self.certified,
            "trace_zero": self.trace_zero,
            "chromatic_bounds": list(self.chromatic_bounds),
        }

    def sorted_values(self) -> list[int]:
        """Eigenvalues with multiplicity, descending (only meaningful when certified)."""
        out = []
        for v, m, _ in sorted(self.eigenvalues, key=lambda t: -t[0]):
            out += [v] * m
        return out


def certified_spectrum(G: GraphHandle, candidates: Iterable[int]) -> SpectrumReport:
    """Multiplicity of each integer candidate by exact nullity of A - lam I."""
    eig = []
    total = 0
    for lam in sorted(set(int(c) for c in candidates), reverse=True):
        m = exact_nullity(G, lam)
        if m:
            eig.append((lam, m, True))
            total += m
    certified = total == G.order
    trace_zero = sum(v * m for v, m, _ in eig) == 0 if certified else None
    return SpectrumReport(eig, certified, trace_zero)


def float_spectrum(G: GraphHandle) -> np.ndarray:
    """Eigenvalues in descending order from the symmetric eigensolver."""
    if G.order == 0:
        return np.zeros(0)
    return np.linalg.eigvalsh(G.adjacency_matrix(np.float64))[::-1]


def spectrum_candidates(G: GraphHandle, tol: float = 1e-6) -> list[int]:
    """Integers near floating eigenvalues; the exact check decides."""
    return sorted({int(round(v)) for v in float_spectrum(G) if abs(v - round(v)) < tol})


def interlaces(parent: Sequence[float], child: Sequence[float], tol: float = EIG_TOL) -> bool:
    """lambda_i >= mu_i >= lambda_{i+1} for descending sequences, |child| = |parent| - 1."""
    if len(child) != len(parent) - 1:
        raise ValueError("child must have exactly one fewer eigenvalue")
    return all(parent[i] + tol >= child[i] >= parent[i + 1] - tol for i in range(len(child)))


def interlacing_check(G: GraphHandle, keep: Sequence[int], tol: float = EIG_TOL) -> bool:
    """Interlacing for the induced subgraph on ``keep`` (one vertex fewer than G)."""
    keep = list(keep)
    if len(set(keep)) != len(keep) or len(keep) != G.order - 1 or not all(0 <= v < G.order for v in keep):
        raise ValueError("subgraph must be induced on exactly one vertex fewer")
    return interlaces(float_spectrum(G), float_spectrum(G.induced(keep)), tol)


def deletion_chain(G: GraphHandle, order: Sequence[int], tol: float = EIG_TOL) -> tuple[bool, GraphHandle, list[int]]:
    """Delete vertices one at a time, checking interlacing at each step.

    Returns (all steps interlace, final graph, kept vertex ids of G).
    """
    keep = list(range(G.order))
    cur = G
    ok = True
    parent = float_spectrum(cur)
    for v in order:
        pos = keep.index(v)
        nxt = cur.delete_vertex(pos)
        child = float_spectrum(nxt)
        ok = ok and interlaces(parent, child, tol)
        keep.pop(pos)
        cur, parent = nxt, child
    return ok, cur, keep


def haemers_sum(eigs_desc: Sequence, chi: int):
    """lambda_2 + ... + lambda_chi + lambda_{t-chi+1} (1-based, descending)."""
    t = len(eigs_desc)
    if chi < 2:
        raise ValueError("chi must be at least 2")
    if t <= chi:
        raise ValueError("need more vertices than colors")
    return sum(eigs_desc[1:chi]) + eigs_desc[t - chi]


def haemers_check(eigs_desc: Sequence, chi: int) -> tuple[bool, object]:
    s = haemers_sum(eigs_desc, chi)
    tol = 0 if all(isinstance(v, int) for v in eigs_desc) else EIG_TOL
    return s >= -tol, s


def hoffman_bound(eigs_desc: Sequence[float]) -> float:
    """1 - lambda_max / lambda_min."""
    lmin = eigs_desc[-1]
    if lmin >= 0:
        return 1.0
    return 1 - eigs_desc[0] / lmin


# ---- determinant classes, automorphisms, export ------------------------------

@dataclass
class ConnectivityReport:
    det_value: int
    vertices: int
    components: int
    connected: bool

    def as_dict(self) -> dict:
        return {"det": self.det_value, "vertices": self.vertices, "components": self.components, "connected": self.connected}


def det_class_subgraph(G: GraphHandle, lam: int) -> tuple[GraphHandle, list[int], ConnectivityReport]:
    """Induced subgraph on det^-1(lam); returns (subgraph, vertex ids in G, report)."""
    if lam == 0:
        raise ValueError("determinant class must be nonzero")
    F = field(G.meta["q"])
    keep = [i for i, A in enumerate(vertex_matrices(G)) if hm.det(F, A) == lam]
    H = G.induced(keep, {**G.meta, "family": f"{G.meta.get('family')}-det", "det": lam})
    comps = components(H)
    return H, keep, ConnectivityReport(lam, len(keep), len(comps), len(comps) == 1)


def congruence_between(F: GF, A: hm.Matrix, B: hm.Matrix) -> hm.Matrix:
    """Invertible P with P A P* = B for invertible hermitian A, B."""
    PA = hm.factor_invertible(F, A)
    PB = hm.factor_invertible(F, B)
    return hm.mat_mul(F, PB, hm.inverse(F, PA))


def congruence_permutation(G: GraphHandle, P: hm.Matrix) -> list[int]:
    """Vertex permutation induced by X -> P X P* on a hermitian matrix graph."""
    F = field(G.meta["q"])
    idx = label_index(G)
    return [idx[hm.encode(F, hm.congruence(F, P, X))] for X in vertex_matrices(G)]


def is_automorphism(G: GraphHandle, perm: Sequence[int]) -> bool:
    if sorted(perm) != list(range(G.order)):
        return False
    return all(G.has_edge(perm[u], perm[v]) for u, v in G.edges())


def edge_list_text(G: GraphHandle) -> str:
    lines = [f"p edge {G.order} {G.edge_count()}"]
    lines += [f"{u} {v}" for u, v in G.edges()]
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str, meta: dict | None = None) -> GraphHandle:
    n = None
    edges = []
    for line in text.splitlines():
        parts = line.split()
        if not parts or parts[0] in ("c", "#"):
            continue
        if parts[0] == "p":
            n = int(parts[2])
            continue
        if parts[0] == "e":
            parts = parts[1:]
        edges.append((int(parts[0]), int(parts[1])))
    if n is None:
        n = 1 + max((max(e) for e in edges), default=-1)
    return from_edges(n, edges, meta=meta)
