"""Backtracking search for homomorphisms, isomorphisms, colorings and cores.

Domains are bitsets over target vertices.  Variables are picked by smallest
domain, ties broken by highest source degree, and each assignment filters the
domains of the remaining variables (forward checking).  Every reported
mapping is rechecked against raw adjacency before it leaves this module.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .graphs import GraphHandle, complete_graph, float_spectrum, hoffman_bound

FOUND = "found"
REFUTED = "refuted"
BUDGET = "budget"

HOMOMORPHISM = "homomorphism"
ENDOMORPHISM = "endomorphism"
ISOMORPHISM = "isomorphism"
COLORING = "coloring"


@dataclass
class HomSearchProblem:
    source: GraphHandle
    target: GraphHandle | None = None
    mode: str = HOMOMORPHISM
    colors: int | None = None
    node_budget: int | None = 10 ** 8
    time_budget: float | None = None

    def __post_init__(self):
        if self.mode == ENDOMORPHISM:
            self.target = self.source
        if self.mode == COLORING:
            if not self.colors or self.colors < 1:
                raise ValueError("coloring mode needs a positive number of colors")
            self.target = complete_graph(self.colors)
        if self.target is None:
            raise ValueError("target graph required")
        if self.node_budget is not None and self.node_budget <= 0:
            raise ValueError("node budget must be positive")
        if self.time_budget is not None and self.time_budget <= 0:
            raise ValueError("time budget must be positive")


@dataclass
class HomResult:
    status: str
    mapping: list[int] | None = None
    nodes: int = 0
    notes: dict = dc_field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.status == FOUND


class _Budget(Exception):
    pass


def is_homomorphism(G: GraphHandle, H: GraphHandle, mapping: Sequence[int]) -> bool:
    if len(mapping) != G.order or not all(0 <= t < H.order for t in mapping):
        return False
    return all(H.has_edge(mapping[u], mapping[v]) for u, v in G.edges())


def is_isomorphism(G: GraphHandle, H: GraphHandle, mapping: Sequence[int]) -> bool:
    if G.order != H.order or sorted(mapping) != list(range(H.order)):
        return False
    return is_homomorphism(G, H, mapping) and G.edge_count() == H.edge_count()


def is_proper_coloring(G: GraphHandle, colors: Sequence[int]) -> bool:
    return len(colors) == G.order and all(colors[u] != colors[v] for u, v in G.edges())


def _clique_through(G: GraphHandle, limit: int = 64) -> list[int]:
    """Size of a largest clique containing each vertex (small graphs only)."""
    best = [1] * G.order

    def grow(size: int, cand: int) -> int:
        if not cand:
            return size
        out = size
        while cand:
            if size + cand.bit_count() <= out:
                break
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            out = max(out, grow(size + 1, cand & G.adj[v]))
            if out >= limit:
                break
        return out

    for v in range(G.order):
        best[v] = grow(1, G.adj[v])
    return best


def clique_number(G: GraphHandle) -> int:
    return max(_clique_through(G), default=0)


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def find_homomorphism(p: HomSearchProblem, want_all: bool = False):
    """Search for a homomorphism (or isomorphism / coloring) per the problem mode.

    With ``want_all`` the search enumerates every solution and returns
    (status, list of mappings); status is REFUTED when the enumeration finished.
    """
    G, H = p.source, p.target
    n, m = G.order, H.order
    injective = p.mode == ISOMORPHISM
    coloring = p.mode == COLORING
    full = (1 << m) - 1

    if injective and (n != m or sorted(G.degrees()) != sorted(H.degrees())):
        res = HomResult(REFUTED, None, 0, {"reason": "degree sequences differ"})
        return (res.status, []) if want_all else res

    doms = [full] * n
    if injective:
        hdeg = H.degrees()
        for v in range(n):
            d = G.degree(v)
            doms[v] = sum(1 << t for t in range(m) if hdeg[t] == d)
    elif not coloring and n <= 400 and m <= 400:
        # a vertex on a k-clique needs an image on a k-clique
        cs, ct = _clique_through(G), _clique_through(H)
        for v in range(n):
            doms[v] = sum(1 << t for t in range(m) if ct[t] >= cs[v])
    for v in range(n):
        if G.adj[v] >> v & 1:
            raise ValueError("source has a loop")

    gdeg = G.degrees()
    gadj = G.adj
    hadj = H.adj
    assign = [-1] * n
    state = {"nodes": 0}
    start = time.monotonic()
    solutions: list[list[int]] = []

    def tick():
        state["nodes"] += 1
        if p.node_budget is not None and state["nodes"] > p.node_budget:
            raise _Budget
        if p.time_budget is not None and state["nodes"] & 1023 == 0 and time.monotonic() - start > p.time_budget:
            raise _Budget

    def pick(doms_: list[int]) -> int:
        best, bkey = -1, None
        for v in range(n):
            if assign[v] < 0:
                key = (doms_[v].bit_count(), -gdeg[v])
                if bkey is None or key < bkey:
                    best, bkey = v, key
        return best

    def search(doms_: list[int], depth: int, max_color: int) -> bool:
        if depth == n:
            solutions.append(list(assign))
            return not want_all
        v = pick(doms_)
        dom = doms_[v]
        if coloring:
            # value symmetry: a fresh color is interchangeable with any other fresh color
            dom &= (1 << min(max_color + 2, m)) - 1
        for t in _bits(dom):
            tick()
            assign[v] = t
            new = list(doms_)
            ok = True
            nbr_mask = hadj[t]
            for u in _bits(gadj[v]):
                if assign[u] < 0:
                    d = new[u] & nbr_mask
                    if not d:
                        ok = False
                        break
                    new[u] = d
            if ok and injective:
                bit = ~(1 << t)
                non = (~nbr_mask) & full & bit
                gnb = gadj[v]
                for u in range(n):
                    if assign[u] < 0 and u != v:
                        d = new[u] & bit
                        if not gnb >> u & 1:
                            d &= non
                        if not d:
                            ok = False
                            break
                        new[u] = d
            if ok and search(new, depth + 1, max(max_color, t)):
                return True
            assign[v] = -1
        return False

    try:
        hit = search(doms, 0, -1)
        status = FOUND if hit else REFUTED
    except _Budget:
        status = BUDGET
        hit = False

    check = is_isomorphism if injective else is_homomorphism
    for s in solutions:
        if not check(G, H, s):
            raise AssertionError("search produced an invalid mapping")
    if want_all:
        return (status if status == BUDGET else REFUTED), solutions
    return HomResult(status, solutions[0] if hit else None, state["nodes"])


def count_endomorphisms(G: GraphHandle, node_budget: int | None = 10 ** 8) -> tuple[str, list[list[int]]]:
    return find_homomorphism(HomSearchProblem(G, mode=ENDOMORPHISM, node_budget=node_budget), want_all=True)


def find_isomorphism(G: GraphHandle, H: GraphHandle, node_budget: int | None = 10 ** 7) -> HomResult:
    return find_homomorphism(HomSearchProblem(G, H, mode=ISOMORPHISM, node_budget=node_budget))


# ---- cores -------------------------------------------------------------------

def orbits_from_generators(n: int, generators: Sequence[Sequence[int]]) -> list[list[int]]:
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for g in generators:
        for v, w in enumerate(g):
            ra, rb = find(v), find(w)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


@dataclass
class CoreVerdict:
    status: str  # "core", "not-core", "inconclusive"
    witness: list[int] | None = None
    checked: list[int] = dc_field(default_factory=list)
    nodes: int = 0

    @property
    def is_core(self) -> bool | None:
        return {"core": True, "not-core": False}.get(self.status)


def is_core(G: GraphHandle, generators: Sequence[Sequence[int]] | None = None,
            node_budget: int | None = 10 ** 8) -> CoreVerdict:
    """G is a core iff no vertex v admits a homomorphism G -> G - v.

    A non-surjective endomorphism misses some v; composing with automorphisms
    moves v around its orbit, so one representative per orbit suffices.
    """
    reps = [o[0] for o in orbits_from_generators(G.order, generators)] if generators else list(range(G.order))
    total = 0
    inconclusive = False
    for v in reps:
        keep = [u for u in range(G.order) if u != v]
        H = G.induced(keep)
        res = find_homomorphism(HomSearchProblem(G, H, node_budget=node_budget))
        total += res.nodes
        if res.status == FOUND:
            witness = [keep[t] for t in res.mapping]
            assert is_homomorphism(G, G, witness) and len(set(witness)) < G.order
            return CoreVerdict("not-core", witness, reps, total)
        if res.status == BUDGET:
            inconclusive = True
    return CoreVerdict("inconclusive" if inconclusive else "core", None, reps, total)


def retraction_from(G: GraphHandle, image: Sequence[int], phi: Sequence[int]) -> list[int]:
    """Turn a homomorphism phi: G -> G[image] into a retraction fixing ``image``.

    Needs phi restricted to the image to be a bijection of the image (true
    when the induced subgraph is a core); psi = (phi|image)^-1 o phi.
    """
    image = list(image)
    S = set(image)
    if not all(t in S for t in phi):
        raise ValueError("phi must map into the image")
    if not is_homomorphism(G, G, phi):
        raise ValueError("phi is not a homomorphism")
    restricted = {v: phi[v] for v in image}
    if sorted(restricted.values()) != sorted(image):
        raise ValueError("phi restricted to the image is not a bijection")
    inv = {w: v for v, w in restricted.items()}
    psi = [inv[phi[v]] for v in range(G.order)]
    assert all(psi[v] == v for v in image) and is_homomorphism(G, G, psi)
    return psi


# ---- coloring ----------------------------------------------------------------

def dsatur(G: GraphHandle) -> list[int]:
    """Greedy DSATUR coloring (deterministic tie-breaking by index)."""
    n = G.order
    colors = [-1] * n
    sat: list[set[int]] = [set() for _ in range(n)]
    deg = G.degrees()
    for _ in range(n):
        v = max((u for u in range(n) if colors[u] < 0), key=lambda u: (len(sat[u]), deg[u], -u))
        c = 0
        while c in sat[v]:
            c += 1
        colors[v] = c
        for w in G.neighbors(v):
            sat[w].add(c)
    return colors


def has_odd_cycle(G: GraphHandle) -> bool:
    side = [-1] * G.order
    for s in range(G.order):
        if side[s] >= 0:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for w in G.neighbors(u):
                if side[w] < 0:
                    side[w] = side[u] ^ 1
                    stack.append(w)
                elif side[w] == side[u]:
                    return True
    return False


@dataclass
class ChromaticResult:
    value: int | None
    lower: int
    upper: int
    coloring: list[int]
    lower_reasons: dict
    refutations: list[tuple[int, str, int]]

    def as_dict(self) -> dict:
        return {
            "chromatic_number": self.value,
            "lower": self.lower,
            "upper": self.upper,
            "lower_reasons": self.lower_reasons,
            "refutations": [{"colors": m, "status": s, "nodes": k} for m, s, k in self.refutations],
            "coloring": self.coloring,
        }


def color_search(G: GraphHandle, m: int, node_budget: int | None = 10 ** 8) -> HomResult:
    return find_homomorphism(HomSearchProblem(G, mode=COLORING, colors=m, node_budget=node_budget))


def chromatic_number(G: GraphHandle, node_budget: int | None = 10 ** 8, spectral: bool = True,
                     exhaustive_from: int | None = None) -> ChromaticResult:
    """Exact chromatic number: bounds first, then refute colorings below the best found.

    ``exhaustive_from`` forces explicit search for every color count from that
    value upward, even where a lower bound already rules it out.
    """
    if G.order == 0:
        return ChromaticResult(0, 0, 0, [], {}, [])
    reasons = {"clique": clique_number(G)}
    if has_odd_cycle(G):
        reasons["odd_cycle"] = 3
    if spectral and G.edge_count():
        h = hoffman_bound(list(float_spectrum(G)))
        reasons["hoffman"] = math.ceil(h - 1e-9)
    lower = max(reasons.values())
    best = dsatur(G)
    upper = max(best) + 1
    refutations = []
    start = lower if exhaustive_from is None else min(lower, exhaustive_from)
    m = start
    while m < upper:
        res = color_search(G, m, node_budget)
        refutations.append((m, res.status, res.nodes))
        if res.status == FOUND:
            best, upper = res.mapping, m
            break
        if res.status == BUDGET:
            return ChromaticResult(None, max(lower, m), upper, best, reasons, refutations)
        lower = max(lower, m + 1)
        m += 1
    assert is_proper_coloring(G, best)
    return ChromaticResult(upper, upper, upper, best, reasons, refutations)


def verify_lemma_2_5(G: GraphHandle, H: GraphHandle, mapping: Sequence[int],
                     coloring_H: Sequence[int] | None = None) -> dict:
    """Pull a coloring of H back along a homomorphism G -> H and check it."""
    if not is_homomorphism(G, H, mapping):
        raise ValueError("mapping is not a homomorphism")
    if coloring_H is None:
        coloring_H = dsatur(H)
    if not is_proper_coloring(H, coloring_H):
        raise ValueError("coloring of H is not proper")
    pulled = [coloring_H[mapping[v]] for v in range(G.order)]
    used_H = len(set(coloring_H))
    return {
        "pullback_proper": is_proper_coloring(G, pulled),
        "colors_used_H": used_H,
        "colors_used_G": len(set(pulled)),
        "bound_holds": len(set(pulled)) <= used_H,
    }
