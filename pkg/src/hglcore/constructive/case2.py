"""The graph forced in the second case of the core argument, with its cyclic-shift colouring."""

from __future__ import annotations

from ..graphs import GraphHandle, from_edges


def case2_gamma(q: int) -> tuple[GraphHandle, dict]:
    """q-1 disjoint q-cliques; vertex j of each clique is joined to vertex j of every other.

    Vertices are labelled (i, j) with clique index i and slot j, so the graph
    is the rook graph K_{q-1} x K_q. The colouring (i, j) -> (j - i) mod q is
    returned in the meta data together with its verification.
    """
    if q < 3:
        raise ValueError("q must be at least 3")
    labels = [(i, j) for i in range(q - 1) for j in range(q)]
    index = {v: k for k, v in enumerate(labels)}
    edges = []
    for a, (i, j) in enumerate(labels):
        for b in range(a + 1, len(labels)):
            i2, j2 = labels[b]
            if i == i2 or j == j2:
                edges.append((a, b))
    coloring = {index[(i, j)]: (j - i) % q for (i, j) in labels}
    G = from_edges(len(labels), edges, labels, meta={"kind": "case2", "q": q})
    proper = all(coloring[u] != coloring[v] for u, v in G.edges())
    G.meta.update({
        "coloring": [coloring[k] for k in range(len(labels))],
        "coloring_proper": proper,
        "colors_used": len(set(coloring.values())),
        "arrangement": "slot j of clique i matched to slot j of every other clique",
    })
    return G, G.meta
