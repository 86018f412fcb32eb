"""Brute-force ground truth for cross-validating solvers and constructions.

Everything here is exponential or near-exponential and exists only to check
the real implementations on tiny instances. The mixed-cut search refuses to
run above a hard size limit so it can never dominate a test run silently.
"""

from __future__ import annotations

import itertools
from collections import deque
from typing import Iterable

from .errors import DemandError, QueryError, SizeGuardError
from .graphs import Edge, EdgeSet, Graph, canonical_edge

FourSet = tuple[int, int, int, int]

# Hard ceiling for the subset-enumeration cut search.
MIXED_CUT_MAX_N = 8
MIXED_CUT_MAX_M = 14


def brute_4clique(g: Graph) -> FourSet | None:
    """Find a 4-clique, or None.

    Walks each edge (u, v), then each pair of common neighbors (w, x) with
    w adjacent to x. Returns the witness sorted ascending.
    """
    for u, v in g.edges():
        common = sorted(g.neighbor_set(u) & g.neighbor_set(v))
        for w, x in itertools.combinations(common, 2):
            if g.has_edge(w, x):
                witness = tuple(sorted((u, v, w, x)))
                for p, q in itertools.combinations(witness, 2):
                    assert g.has_edge(p, q)
                return witness  # type: ignore[return-value]
    return None


def brute_4clique_exhaustive(g: Graph) -> FourSet | None:
    """Second, independent enumeration: test every 4-subset of V directly."""
    for quad in itertools.combinations(range(g.n), 4):
        if all(g.has_edge(p, q) for p, q in itertools.combinations(quad, 2)):
            return quad
    return None


def brute_edge_universal(g: Graph, demand: EdgeSet) -> tuple[bool, Edge | None]:
    """Does every demand edge lie inside some 4-clique of g?

    Returns (True, None), or (False, first failing demand edge). The demand
    set must be a subset of E(g).
    """
    graph_edges = set(g.edges())
    for e in demand:
        if e not in graph_edges:
            raise DemandError(f"demand edge {e} not in the graph")
    for u, v in demand:
        common = sorted(g.neighbor_set(u) & g.neighbor_set(v))
        if not any(
            g.has_edge(w, x) for w, x in itertools.combinations(common, 2)
        ):
            return False, (u, v)
    return True, None


def _reachable(n: int, adj: list[set[int]], alive: list[bool], s: int, t: int) -> bool:
    seen = [False] * n
    seen[s] = True
    queue = deque([s])
    while queue:
        u = queue.popleft()
        if u == t:
            return True
        for v in adj[u]:
            if alive[v] and not seen[v]:
                seen[v] = True
                queue.append(v)
    return False


def brute_mixed_cut(
    g: Graph, u: int, v: int, terminals: Iterable[int] | None = None
) -> int:
    """Minimum mixed cut separating u from v, by subset enumeration.

    Cut elements are edges plus removable vertices: every vertex except u, v
    (vertex mode) or every non-terminal vertex (element mode, when `terminals`
    is given). Subsets are tried in order of increasing size, so the first
    disconnecting subset found has minimum cardinality.
    """
    if u == v:
        raise QueryError(f"u and v must differ, got {u}")
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise QueryError(f"vertex out of range: u={u}, v={v}, n={g.n}")
    if g.n > MIXED_CUT_MAX_N or g.m > MIXED_CUT_MAX_M:
        raise SizeGuardError(
            f"instance n={g.n}, m={g.m} exceeds the brute-force limit "
            f"(n <= {MIXED_CUT_MAX_N}, m <= {MIXED_CUT_MAX_M})"
        )
    if terminals is None:
        protected = {u, v}
    else:
        protected = set(terminals)
        if u not in protected or v not in protected:
            raise QueryError("u and v must both be terminals")

    removable = [w for w in range(g.n) if w not in protected]
    elements: list[tuple[str, object]] = [("v", w) for w in removable]
    elements += [("e", e) for e in g.edges()]

    base_adj = [set(g.neighbors(w)) for w in range(g.n)]
    for size in range(len(elements) + 1):
        for subset in itertools.combinations(elements, size):
            alive = [True] * g.n
            adj = [s.copy() for s in base_adj]
            for kind, item in subset:
                if kind == "v":
                    alive[item] = False  # type: ignore[index]
                else:
                    a, b = item  # type: ignore[misc]
                    adj[a].discard(b)
                    adj[b].discard(a)
            if not _reachable(g.n, adj, alive, u, v):
                return size
    raise AssertionError("removing every element must disconnect u from v")


def random_edge_subset(g: Graph, p: float, rng) -> EdgeSet:
    """Independent p-thinning of E(g); used to draw demand sets in tests."""
    return EdgeSet.of(e for e in g.edges() if rng.random() < p)


def all_pairs_brute(g: Graph) -> dict[Edge, int]:
    """brute_mixed_cut over every unordered pair; tiny instances only."""
    return {
        canonical_edge(u, v): brute_mixed_cut(g, u, v)
        for u, v in itertools.combinations(range(g.n), 2)
    }
